#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "granule/parser.hpp"

using namespace granule;

namespace {
const GranuleId g1 = GranuleId::named("g1");
const GranuleId g2 = GranuleId::named("g2");
} // namespace

TEST_CASE("parsing a simple document")
{
    Schema s = parse_schema("granules g1 g2; constraints { Sub(g1,g2); !Disj(g1,g2); }");
    CHECK(s.named().size() == 2);
    CHECK(s.constraints().size() == 2);
    CHECK(s.constraints().count(Constraint::sub(g1, g2)) == 1);
    CHECK(s.constraints().count(Constraint::disj(g1, g2).negated()) == 1);
}

TEST_CASE("sections are order-free and symmetric duplicates collapse")
{
    Schema s = parse_schema("constraints { Disj(b,a); Disj(a,b); } granules a b;");
    CHECK(s.named().size() == 2);
    CHECK(s.constraints().size() == 1);
}

TEST_CASE("bot and top need no declaration")
{
    Schema s = parse_schema("granules g1; constraints { Sub(bot, g1); Disj(bot, top); }");
    CHECK(s.constraints().size() == 2);
}

TEST_CASE("repeated declarations collapse")
{
    Schema s = parse_schema("granules a b; granules b a; constraints { Sub(a, b); }");
    CHECK(s.named().size() == 2);
    CHECK(s == parse_schema("granules a b; constraints { Sub(a, b); }"));
}

TEST_CASE("comments and whitespace are insignificant")
{
    Schema a = parse_schema("granules g1 g2;\n# a comment\nconstraints {\n  Sub(g1, g2); # tail\n}\n");
    Schema b = parse_schema("granules\tg1   g2;constraints{Sub(g1,g2);}");
    CHECK(a == b);
}

TEST_CASE("parse errors carry positions")
{
    CHECK_THROWS_AS(parse_schema("granules bot;"), parse_error);
    CHECK_THROWS_AS(parse_schema("granules top;"), parse_error);
    CHECK_THROWS_AS(parse_schema("constraints { Sub(g1, g2); }"), parse_error); // undeclared
    CHECK_THROWS_AS(parse_schema(""), parse_error);
    CHECK_THROWS_AS(parse_schema("granules g1"), parse_error);          // missing ';'
    CHECK_THROWS_AS(parse_schema("granules g1; constraints { Sub(g1 g1); }"), parse_error);
    CHECK_THROWS_AS(parse_schema("granules g1; constraints { Between(g1, g1); }"), parse_error);
    CHECK_THROWS_AS(parse_schema("granules g1; constraints { Sub(g1, g1) }"), parse_error);
    CHECK_THROWS_AS(parse_schema("granules g$;"), parse_error);

    try {
        parse_schema("granules g1;\nconstraints { Sub(g1, gx); }");
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(e.line() == 2);
        CHECK(std::string(e.what()).find("gx") != std::string::npos);
    }
}

TEST_CASE("query constraints use the same production")
{
    Schema s = parse_schema("granules g1 g2; constraints { Sub(g1, g2); }");
    CHECK(parse_constraint("!Disj( g1 , g2 )", s) == Constraint::disj(g1, g2).negated());
    CHECK(parse_constraint("Sub(bot, top)", s) ==
          Constraint::sub(GranuleId::bottom(), GranuleId::top()));
    CHECK_THROWS_AS(parse_constraint("Sub(g1, g9)", s), error);
    CHECK_THROWS_AS(parse_constraint("Sub(g1, g2); Sub(g2, g1)", s), parse_error);
}

TEST_CASE("print then parse is a fixed point")
{
    std::vector<std::string> docs = {
        "granules g1 g2; constraints { Sub(g1,g2); !Disj(g1,g2); }",
        "constraints { Disj(b,a); } granules a b;",
        "granules x; constraints { }",
        "constraints { Sub(bot, top); }",
    };
    for (const auto& doc : docs) {
        Schema s = parse_schema(doc);
        Schema reparsed = parse_schema(print_schema(s));
        CHECK(reparsed == s);
        CHECK(print_schema(reparsed) == print_schema(s));
    }
}

TEST_CASE("randomized documents round-trip")
{
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 1 + static_cast<int>(rng() % 4);
        std::vector<GranuleId> named;
        for (int i = 1; i <= n; ++i)
            named.push_back(GranuleId::named("g" + std::to_string(i)));
        Schema s(named);
        auto atoms = all_positive_atoms(s.universe());
        for (int k = 0; k < 5; ++k) {
            const Constraint& atom = atoms[rng() % atoms.size()];
            s.add_constraint(rng() % 2 ? atom : atom.negated());
        }
        CHECK(parse_schema(print_schema(s)) == s);
    }
}

TEST_CASE("the parser survives fuzzed input")
{
    std::mt19937 rng(99);
    const std::string alphabet = "granulescotbp12{}();!,#SubDisj \n\t_";
    for (int trial = 0; trial < 2000; ++trial) {
        std::string doc;
        std::size_t len = rng() % 60;
        for (std::size_t i = 0; i < len; ++i)
            doc += alphabet[rng() % alphabet.size()];
        try {
            Schema s = parse_schema(doc);
            (void)s;
        } catch (const parse_error&) {
            // errors are reported values, not crashes
        }
    }
    SUCCEED();
}
