#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "granule/graph.hpp"
#include "granule/semantics.hpp"

using namespace granule;

namespace {
const GranuleId bot = GranuleId::bottom();
const GranuleId top = GranuleId::top();

GranuleId g(int i) { return GranuleId::named("g" + std::to_string(i)); }

std::vector<GranuleId> gs(int n)
{
    std::vector<GranuleId> out;
    for (int i = 1; i <= n; ++i)
        out.push_back(g(i));
    return out;
}

SubPath path(std::vector<GranuleId> vs) { return SubPath{std::move(vs)}; }

std::string describe(const Schema& s)
{
    std::string out = "{";
    for (const auto& c : s.constraints())
        out += " " + to_string(c);
    return out + " }";
}

// All positive schemas over a fixed pair of named granules, built from the
// contingent atoms: exhaustive ground truth for the graph criteria.
std::vector<Schema> two_granule_family()
{
    Schema base(gs(2));
    std::vector<Constraint> atoms;
    for (const auto& atom : all_positive_atoms(base.universe()))
        if (!is_tautology_atom(atom) && !is_unsatisfiable_atom(atom))
            atoms.push_back(atom);
    std::vector<Schema> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << atoms.size()); ++mask) {
        Schema s(gs(2));
        for (std::size_t i = 0; i < atoms.size(); ++i)
            if (mask & (std::size_t{1} << i))
                s.add_constraint(atoms[i]);
        out.push_back(std::move(s));
    }
    return out;
}
} // namespace

TEST_CASE("graph materializes declared and tautology edges")
{
    Schema s(gs(2), {Constraint::sub(g(1), g(2))});
    SmasGraph graph = SmasGraph::build(s);

    CHECK(graph.has_s_edge(g(1), g(2)));
    CHECK_FALSE(graph.has_s_edge(g(2), g(1)));
    for (const auto& v : graph.vertices()) {
        CHECK(graph.has_s_edge(v, v));
        CHECK(graph.has_s_edge(bot, v));
        CHECK(graph.has_s_edge(v, top));
        CHECK(graph.has_d_edge(bot, v));
    }

    Schema one(gs(1));
    SmasGraph graph1 = SmasGraph::build(one);
    std::set<std::pair<GranuleId, GranuleId>> expected = {
        {bot, bot}, {bot, top}, {bot, g(1)}};
    auto actual_list = graph1.d_edges();
    std::set<std::pair<GranuleId, GranuleId>> actual(actual_list.begin(), actual_list.end());
    CHECK(actual == expected);

    // Negative constraints leave the graph untouched.
    Schema neg(gs(2), {Constraint::sub(g(1), g(2)).negated()});
    CHECK(SmasGraph::build(neg).s_edges() == SmasGraph::build(Schema(gs(2))).s_edges());
}

TEST_CASE("sub_star returns shortest reduced paths")
{
    Schema chain(gs(5), {Constraint::sub(g(1), g(2)), Constraint::sub(g(2), g(3)),
                         Constraint::sub(g(3), g(4)), Constraint::sub(g(4), g(5))});
    SmasGraph graph = SmasGraph::build(chain);
    auto p = graph.sub_star(g(1), g(5));
    REQUIRE(p);
    CHECK(p->vertices == std::vector<GranuleId>{g(1), g(2), g(3), g(4), g(5)});
    CHECK(is_reduced(*p));

    CHECK(graph.sub_star(g(1), g(1))->vertices == std::vector<GranuleId>{g(1), g(1)});
    CHECK_FALSE(graph.sub_star(g(5), g(1)).has_value());

    Schema cyclic(gs(4), {Constraint::sub(g(1), g(2)), Constraint::sub(g(2), g(3)),
                          Constraint::sub(g(3), g(2)), Constraint::sub(g(3), g(4))});
    auto q = SmasGraph::build(cyclic).sub_star(g(1), g(4));
    REQUIRE(q);
    CHECK(q->vertices == std::vector<GranuleId>{g(1), g(2), g(3), g(4)});
    CHECK(is_reduced(*q));
}

TEST_CASE("reduce_path removes cycles and collapses equal endpoints")
{
    auto p = reduce_path(path({g(1), g(2), g(3), g(2), g(3), g(4)}));
    CHECK(p.vertices == std::vector<GranuleId>{g(1), g(2), g(3), g(4)});
    CHECK(is_reduced(p));

    CHECK(reduce_path(path({g(1), g(2)})).vertices == std::vector<GranuleId>{g(1), g(2)});
    CHECK(reduce_path(path({g(1), g(9), g(1)})).vertices == std::vector<GranuleId>{g(1), g(1)});
    CHECK_THROWS_AS(reduce_path(path({g(1)})), error);

    CHECK(path({g(1), g(2), g(3)}).step_constraints() ==
          std::vector<Constraint>{Constraint::sub(g(1), g(2)), Constraint::sub(g(2), g(3))});
}

TEST_CASE("protectors on the two-chain disjointness example")
{
    Schema s(gs(8), {Constraint::sub(g(1), g(2)), Constraint::sub(g(2), g(3)),
                     Constraint::sub(g(3), g(4)), Constraint::sub(g(5), g(6)),
                     Constraint::sub(g(6), g(7)), Constraint::sub(g(7), g(8)),
                     Constraint::disj(g(4), g(8))});
    SmasGraph graph = SmasGraph::build(s);
    auto prot = graph.find_protector(g(1), g(5));
    REQUIRE(prot);
    CHECK(prot->first == g(4));
    CHECK(prot->second == g(8));
    CHECK(prot->path1.vertices == std::vector<GranuleId>{g(1), g(2), g(3), g(4)});
    CHECK(prot->path2.vertices == std::vector<GranuleId>{g(5), g(6), g(7), g(8)});
    CHECK(is_reduced(prot->path1));
    CHECK(is_reduced(prot->path2));
}

TEST_CASE("bottom pairs protect themselves; unrelated pairs do not")
{
    Schema s(gs(2), {Constraint::sub(g(1), g(2))});
    SmasGraph graph = SmasGraph::build(s);
    auto prot = graph.find_protector(bot, g(1));
    REQUIRE(prot);
    CHECK(prot->first == bot);
    CHECK(prot->second == g(1));
    CHECK(prot->path1.is_identity());
    CHECK(prot->path2.is_identity());

    CHECK_FALSE(graph.find_protector(g(1), g(2)).has_value());
    CHECK_THROWS_AS(graph.find_protector(g(1), g(1)), error);
}

TEST_CASE("self-disjointness witness on the unsatisfiable example")
{
    Schema s(gs(7), {Constraint::sub(g(1), g(2)), Constraint::sub(g(2), g(3)),
                     Constraint::sub(g(3), g(4)), Constraint::sub(g(1), g(5)),
                     Constraint::sub(g(5), g(6)), Constraint::sub(g(6), g(7)),
                     Constraint::disj(g(4), g(7))});
    SmasGraph graph = SmasGraph::build(s);
    auto w = graph.self_disjoint_witness(g(1));
    REQUIRE(w);
    CHECK(w->apex == g(1));
    CHECK(w->protector.first == g(4));
    CHECK(w->protector.second == g(7));
    CHECK(w->protector.path1.vertices == std::vector<GranuleId>{g(1), g(2), g(3), g(4)});
    CHECK(w->protector.path2.vertices == std::vector<GranuleId>{g(1), g(5), g(6), g(7)});
}

TEST_CASE("witness trimming moves the apex below shared prefixes")
{
    Schema s(gs(4), {Constraint::sub(g(1), g(2)), Constraint::sub(g(2), g(3)),
                     Constraint::sub(g(2), g(4)), Constraint::disj(g(3), g(4))});
    auto w = SmasGraph::build(s).self_disjoint_witness(g(1));
    REQUIRE(w);
    CHECK(w->apex == g(2));
    CHECK(w->protector.path1.vertices == std::vector<GranuleId>{g(2), g(3)});
    CHECK(w->protector.path2.vertices == std::vector<GranuleId>{g(2), g(4)});
}

TEST_CASE("subsumption into bottom witnesses unsatisfiability")
{
    Schema s(gs(1), {Constraint::sub(g(1), bot)});
    auto w = SmasGraph::build(s).self_disjoint_witness(g(1));
    REQUIRE(w);
    CHECK(w->apex == g(1));
    CHECK((w->protector.first == bot || w->protector.second == bot));

    Schema sat(gs(2), {Constraint::sub(g(1), g(2))});
    CHECK_FALSE(SmasGraph::build(sat).self_disjoint_witness(g(1)).has_value());
    CHECK_FALSE(positive_unsat_witness(SmasGraph::build(sat)).has_value());
}

TEST_CASE("graph criteria agree with the oracle on every two-granule schema")
{
    for (const auto& s : two_granule_family()) {
        SmasGraph graph = SmasGraph::build(s);
        bool unsat = positive_unsat_witness(graph).has_value();
        Oracle oracle(s, SemanticsMode::Full);
        CHECK(unsat == !oracle.satisfiable());
        if (unsat)
            continue;
        for (const auto& a : s.universe()) {
            for (const auto& b : s.universe()) {
                INFO(to_string(Constraint::sub(a, b)) + " over " + describe(s));
                auto p = graph.sub_star(a, b);
                CHECK(p.has_value() == oracle.entails(Constraint::sub(a, b)));
                if (p)
                    CHECK(is_reduced(*p));
                if (a < b) {
                    auto prot = graph.find_protector(a, b);
                    CHECK(prot.has_value() == oracle.entails(Constraint::disj(a, b)));
                    if (prot) {
                        CHECK((prot->path1.is_identity() || is_reduced(prot->path1)));
                        CHECK((prot->path2.is_identity() || is_reduced(prot->path2)));
                    }
                }
            }
        }
    }
}

TEST_CASE("graph criteria agree with the oracle on random four-granule schemas")
{
    std::mt19937 rng(1234);
    Schema base(gs(4));
    std::vector<Constraint> atoms;
    for (const auto& atom : all_positive_atoms(base.universe()))
        if (!is_tautology_atom(atom))
            atoms.push_back(atom);
    for (int trial = 0; trial < 100; ++trial) {
        Schema s(gs(4));
        std::size_t count = rng() % 7;
        for (std::size_t k = 0; k < count; ++k)
            s.add_constraint(atoms[rng() % atoms.size()]);
        SmasGraph graph = SmasGraph::build(s);
        Oracle oracle(s, SemanticsMode::Full);
        bool unsat = positive_unsat_witness(graph).has_value();
        CHECK(unsat == !oracle.satisfiable());
        if (unsat)
            continue;
        for (const auto& a : s.universe())
            for (const auto& b : s.universe()) {
                INFO(to_string(Constraint::sub(a, b)) + " over " + describe(s));
                CHECK(graph.sub_star(a, b).has_value() == oracle.entails(Constraint::sub(a, b)));
                if (a < b)
                    CHECK(graph.find_protector(a, b).has_value() ==
                          oracle.entails(Constraint::disj(a, b)));
            }
    }
}

TEST_CASE("DOT export lists vertices and both edge styles")
{
    Schema s(gs(2), {Constraint::sub(g(1), g(2)), Constraint::disj(g(1), g(2))});
    std::string dot = SmasGraph::build(s).to_dot();
    CHECK(dot.find("digraph smas") != std::string::npos);
    CHECK(dot.find("\"g1\" -> \"g2\";") != std::string::npos);
    CHECK(dot.find("\"g1\" -> \"g2\" [dir=none, style=dashed];") != std::string::npos);
}
