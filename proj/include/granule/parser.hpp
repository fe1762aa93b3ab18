// granule/parser.hpp — the .gl constraint DSL.
//
//   document         := (granule_decl | constraint_block)+
//   granule_decl     := "granules" IDENT+ ";"
//   constraint_block := "constraints" "{" (constraint ";")* "}"
//   constraint       := ["!"] ("Sub" | "Disj") "(" term "," term ")"
//   term             := IDENT | "bot" | "top"
//
// Whitespace-insensitive; "#" starts a line comment.  Declarations and
// blocks may appear in any order; named granules must be declared somewhere
// in the document, while bot and top are always available and may not be
// redeclared.  Duplicate constraints collapse after normalization.

#ifndef GRANULE_PARSER_HPP
#define GRANULE_PARSER_HPP

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "core.hpp"

namespace granule {

class parse_error : public error {
public:
    parse_error(std::size_t line, std::size_t column, const std::string& message)
        : error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line), column_(column)
    {
    }

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

namespace dsl {

struct Span {
    std::size_t line = 1;
    std::size_t column = 1;
};

enum class TokenKind : std::uint8_t { Ident, Bang, LParen, RParen, LBrace, RBrace, Comma, Semi, End };

struct Token {
    TokenKind kind;
    std::string text;
    Span span;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next()
    {
        skip_blank();
        Span here{line_, column_};
        if (pos_ >= src_.size())
            return {TokenKind::End, "", here};
        char c = src_[pos_];
        switch (c) {
        case '!': advance(); return {TokenKind::Bang, "!", here};
        case '(': advance(); return {TokenKind::LParen, "(", here};
        case ')': advance(); return {TokenKind::RParen, ")", here};
        case '{': advance(); return {TokenKind::LBrace, "{", here};
        case '}': advance(); return {TokenKind::RBrace, "}", here};
        case ',': advance(); return {TokenKind::Comma, ",", here};
        case ';': advance(); return {TokenKind::Semi, ";", here};
        default: break;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string text;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                text += src_[pos_];
                advance();
            }
            return {TokenKind::Ident, std::move(text), here};
        }
        throw parse_error(line_, column_, std::string("unexpected character '") + c + "'");
    }

private:
    void advance()
    {
        if (src_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    void skip_blank()
    {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n')
                    advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

} // namespace dsl

// A parsed document before universe checks: declarations and constraints
// with their source positions.
struct SchemaDocument {
    std::vector<std::pair<std::string, dsl::Span>> granule_declarations;
    std::vector<std::pair<Constraint, dsl::Span>> constraints;

    Schema to_schema() const
    {
        Schema schema;
        for (const auto& [name, span] : granule_declarations) {
            if (name == kBottomToken || name == kTopToken)
                throw parse_error(span.line, span.column,
                                  "'" + name + "' is reserved and may not be declared");
            schema.add_granule(GranuleId::named(name));
        }
        for (const auto& [c, span] : constraints) {
            for (const GranuleId* g : {&c.left(), &c.right()})
                if (!schema.contains(*g))
                    throw parse_error(span.line, span.column,
                                      "unknown granule '" + g->name() + "'");
            schema.add_constraint(c);
        }
        return schema;
    }
};

namespace dsl {

class Parser {
public:
    explicit Parser(std::string_view src) : lexer_(src) { shift(); }

    SchemaDocument parse_document()
    {
        SchemaDocument doc;
        bool saw_section = false;
        while (current_.kind != TokenKind::End) {
            if (current_.kind != TokenKind::Ident)
                fail("expected 'granules' or 'constraints'");
            if (current_.text == "granules") {
                parse_granule_decl(doc);
            } else if (current_.text == "constraints") {
                parse_constraint_block(doc);
            } else {
                fail("expected 'granules' or 'constraints', got '" + current_.text + "'");
            }
            saw_section = true;
        }
        if (!saw_section)
            fail("empty document");
        return doc;
    }

    Constraint parse_single_constraint()
    {
        Constraint c = parse_constraint();
        if (current_.kind != TokenKind::End)
            fail("trailing input after constraint");
        return c;
    }

private:
    void shift() { current_ = lexer_.next(); }

    [[noreturn]] void fail(const std::string& message)
    {
        throw parse_error(current_.span.line, current_.span.column, message);
    }

    Token expect(TokenKind kind, const char* what)
    {
        if (current_.kind != kind)
            fail(std::string("expected ") + what + ", got '" + current_.text + "'");
        Token t = current_;
        shift();
        return t;
    }

    void parse_granule_decl(SchemaDocument& doc)
    {
        shift(); // granules
        if (current_.kind != TokenKind::Ident)
            fail("expected at least one granule name");
        while (current_.kind == TokenKind::Ident) {
            doc.granule_declarations.push_back({current_.text, current_.span});
            shift();
        }
        expect(TokenKind::Semi, "';'");
    }

    void parse_constraint_block(SchemaDocument& doc)
    {
        shift(); // constraints
        expect(TokenKind::LBrace, "'{'");
        while (current_.kind != TokenKind::RBrace) {
            Span at = current_.span;
            Constraint c = parse_constraint();
            doc.constraints.push_back({std::move(c), at});
            expect(TokenKind::Semi, "';'");
        }
        shift(); // }
    }

    Constraint parse_constraint()
    {
        Sign sign = Sign::Pos;
        if (current_.kind == TokenKind::Bang) {
            sign = Sign::Neg;
            shift();
        }
        Token pred_tok = expect(TokenKind::Ident, "'Sub' or 'Disj'");
        Pred pred;
        if (pred_tok.text == "Sub")
            pred = Pred::Sub;
        else if (pred_tok.text == "Disj")
            pred = Pred::Disj;
        else
            throw parse_error(pred_tok.span.line, pred_tok.span.column,
                              "expected 'Sub' or 'Disj', got '" + pred_tok.text + "'");
        expect(TokenKind::LParen, "'('");
        GranuleId left = parse_granule_term();
        expect(TokenKind::Comma, "','");
        GranuleId right = parse_granule_term();
        expect(TokenKind::RParen, "')'");
        return Constraint(sign, pred, std::move(left), std::move(right));
    }

    GranuleId parse_granule_term()
    {
        Token t = expect(TokenKind::Ident, "granule name");
        if (t.text == kBottomToken)
            return GranuleId::bottom();
        if (t.text == kTopToken)
            return GranuleId::top();
        return GranuleId::named(t.text);
    }

    Lexer lexer_;
    Token current_;
};

} // namespace dsl

inline SchemaDocument parse_document(std::string_view text)
{
    return dsl::Parser(text).parse_document();
}

inline Schema parse_schema(std::string_view text) { return parse_document(text).to_schema(); }

// Query constraints use the same production; granules must exist in the
// schema's universe.
inline Constraint parse_constraint(std::string_view text, const Schema& schema)
{
    Constraint c = dsl::Parser(text).parse_single_constraint();
    for (const GranuleId* g : {&c.left(), &c.right()})
        if (!schema.contains(*g))
            throw error("unknown granule '" + g->name() + "' in query constraint");
    return c;
}

// Canonical printing; parse -> print -> parse is a fixed point.
inline std::string print_schema(const Schema& schema)
{
    std::string out;
    auto named = schema.named();
    if (!named.empty()) {
        out += "granules";
        for (const auto& g : named)
            out += " " + g.name();
        out += ";\n\n";
    }
    out += "constraints {\n";
    for (const auto& c : schema.constraints())
        out += "  " + to_string(c) + ";\n";
    out += "}\n";
    return out;
}

} // namespace granule

#endif // GRANULE_PARSER_HPP
