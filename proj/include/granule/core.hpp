// granule/core.hpp — schema, constraint, WFF and substitution value types.
//
// A schema is a finite universe of granules (always containing the
// distinguished bottom and top granules) together with a finite set of
// signed binary constraints over them.  Constraints are ground by
// construction; WFFs additionally admit granule variables and are grounded
// through substitutions.  Disjointness is symmetric, so Disj atoms are kept
// in a canonical operand order and Disj(a,b) and Disj(b,a) compare equal.
//
// Everything in this header is an immutable value type.

#ifndef GRANULE_CORE_HPP
#define GRANULE_CORE_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace granule {

class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Granules

enum class GranuleKind : std::uint8_t { Bottom, Top, Named };

// Reserved concrete syntax for the distinguished granules.
inline constexpr const char* kBottomToken = "bot";
inline constexpr const char* kTopToken = "top";

class GranuleId {
public:
    static GranuleId bottom() { return GranuleId(GranuleKind::Bottom, kBottomToken); }
    static GranuleId top() { return GranuleId(GranuleKind::Top, kTopToken); }

    static GranuleId named(std::string name)
    {
        if (name.empty())
            throw error("granule name must be non-empty");
        if (name == kBottomToken || name == kTopToken)
            throw error("granule name '" + name + "' is reserved");
        return GranuleId(GranuleKind::Named, std::move(name));
    }

    GranuleKind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    bool is_bottom() const { return kind_ == GranuleKind::Bottom; }
    bool is_top() const { return kind_ == GranuleKind::Top; }
    bool is_named() const { return kind_ == GranuleKind::Named; }

    // Canonical order: Bottom < Top < Named, names lexicographic.
    auto operator<=>(const GranuleId& o) const = default;

private:
    GranuleId(GranuleKind kind, std::string name) : kind_(kind), name_(std::move(name)) {}

    GranuleKind kind_;
    std::string name_;
};

// ---------------------------------------------------------------------------
// Terms and variables

using VarIndex = std::uint32_t;

struct Var {
    VarIndex index;
    auto operator<=>(const Var&) const = default;
};

// A term is either a concrete granule or a granule variable.  Granules sort
// before variables, which keeps the canonical Disj operand order total on
// non-ground atoms as well.
using Term = std::variant<GranuleId, Var>;

inline bool is_ground(const Term& t) { return std::holds_alternative<GranuleId>(t); }

inline std::string to_string(const GranuleId& g) { return g.name(); }

inline std::string to_string(const Term& t)
{
    if (auto* g = std::get_if<GranuleId>(&t))
        return g->name();
    return "?" + std::to_string(std::get<Var>(t).index);
}

// ---------------------------------------------------------------------------
// Atoms, constraints, WFFs

enum class Pred : std::uint8_t { Sub, Disj };
enum class Sign : std::uint8_t { Pos, Neg };

inline Sign flipped(Sign s) { return s == Sign::Pos ? Sign::Neg : Sign::Pos; }

namespace detail {
// Disj operands are stored sorted; Sub operands keep their order.
inline void canonicalize(Pred pred, Term& left, Term& right)
{
    if (pred == Pred::Disj && right < left)
        std::swap(left, right);
}
} // namespace detail

// A ground signed atom.  Normalization (Disj symmetry, no double negation)
// is enforced by construction, so equal constraints compare equal.
class Constraint {
public:
    Constraint(Sign sign, Pred pred, GranuleId left, GranuleId right)
        : sign_(sign), pred_(pred), left_(std::move(left)), right_(std::move(right))
    {
        if (pred_ == Pred::Disj && right_ < left_)
            std::swap(left_, right_);
    }

    static Constraint sub(GranuleId l, GranuleId r)
    {
        return Constraint(Sign::Pos, Pred::Sub, std::move(l), std::move(r));
    }
    static Constraint disj(GranuleId l, GranuleId r)
    {
        return Constraint(Sign::Pos, Pred::Disj, std::move(l), std::move(r));
    }

    Sign sign() const { return sign_; }
    Pred pred() const { return pred_; }
    const GranuleId& left() const { return left_; }
    const GranuleId& right() const { return right_; }
    bool is_positive() const { return sign_ == Sign::Pos; }

    Constraint negated() const { return Constraint(flipped(sign_), pred_, left_, right_); }
    Constraint positive_atom() const { return Constraint(Sign::Pos, pred_, left_, right_); }

    bool mentions(const GranuleId& g) const { return left_ == g || right_ == g; }

    auto operator<=>(const Constraint&) const = default;

private:
    Sign sign_;
    Pred pred_;
    GranuleId left_;
    GranuleId right_;
};

inline Constraint normalize(const Constraint& c) { return c; } // normal by construction
inline Constraint negate(const Constraint& c) { return c.negated(); }

inline std::string to_string(const Constraint& c)
{
    std::string s = c.is_positive() ? "" : "!";
    s += c.pred() == Pred::Sub ? "Sub" : "Disj";
    s += "(" + c.left().name() + ", " + c.right().name() + ")";
    return s;
}

// A signed atom whose operands may contain variables.
class Wff {
public:
    Wff(Sign sign, Pred pred, Term left, Term right)
        : sign_(sign), pred_(pred), left_(std::move(left)), right_(std::move(right))
    {
        detail::canonicalize(pred_, left_, right_);
    }

    static Wff sub(Term l, Term r) { return Wff(Sign::Pos, Pred::Sub, std::move(l), std::move(r)); }
    static Wff disj(Term l, Term r) { return Wff(Sign::Pos, Pred::Disj, std::move(l), std::move(r)); }
    static Wff of(const Constraint& c) { return Wff(c.sign(), c.pred(), c.left(), c.right()); }

    Sign sign() const { return sign_; }
    Pred pred() const { return pred_; }
    const Term& left() const { return left_; }
    const Term& right() const { return right_; }

    bool is_ground() const { return granule::is_ground(left_) && granule::is_ground(right_); }

    Wff negated() const { return Wff(flipped(sign_), pred_, left_, right_); }

    std::optional<Constraint> to_constraint() const
    {
        if (!is_ground())
            return std::nullopt;
        return Constraint(sign_, pred_, std::get<GranuleId>(left_), std::get<GranuleId>(right_));
    }

    std::vector<VarIndex> variables() const
    {
        std::vector<VarIndex> vs;
        if (auto* v = std::get_if<Var>(&left_))
            vs.push_back(v->index);
        if (auto* v = std::get_if<Var>(&right_))
            vs.push_back(v->index);
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        return vs;
    }

    auto operator<=>(const Wff&) const = default;

private:
    Sign sign_;
    Pred pred_;
    Term left_;
    Term right_;
};

inline Wff negate(const Wff& w) { return w.negated(); }

inline std::string to_string(const Wff& w)
{
    std::string s = w.sign() == Sign::Pos ? "" : "!";
    s += w.pred() == Pred::Sub ? "Sub" : "Disj";
    s += "(" + to_string(w.left()) + ", " + to_string(w.right()) + ")";
    return s;
}

// ---------------------------------------------------------------------------
// Substitutions

class Substitution {
public:
    Substitution() = default;
    Substitution(std::initializer_list<std::pair<const VarIndex, Term>> init) : map_(init) {}

    Substitution& bind(VarIndex v, Term t)
    {
        map_.insert_or_assign(v, std::move(t));
        return *this;
    }
    Substitution& bind(VarIndex v, GranuleId g) { return bind(v, Term(std::move(g))); }

    const Term* lookup(VarIndex v) const
    {
        auto it = map_.find(v);
        return it == map_.end() ? nullptr : &it->second;
    }

    bool is_ground() const
    {
        return std::all_of(map_.begin(), map_.end(),
                           [](const auto& kv) { return granule::is_ground(kv.second); });
    }

    bool complete_for(const Wff& w) const
    {
        for (VarIndex v : w.variables())
            if (!lookup(v))
                return false;
        return true;
    }

    const std::map<VarIndex, Term>& entries() const { return map_; }

    auto operator<=>(const Substitution&) const = default;

private:
    std::map<VarIndex, Term> map_;
};

inline Term substitute(const Term& t, const Substitution& s)
{
    if (auto* v = std::get_if<Var>(&t))
        if (const Term* bound = s.lookup(v->index))
            return *bound;
    return t;
}

inline Wff substitute(const Wff& w, const Substitution& s)
{
    return Wff(w.sign(), w.pred(), substitute(w.left(), s), substitute(w.right(), s));
}

// ---------------------------------------------------------------------------
// Schema (SMAS)

class Schema {
public:
    Schema() { universe_ = {GranuleId::bottom(), GranuleId::top()}; }

    explicit Schema(std::vector<GranuleId> named, std::vector<Constraint> constraints = {})
        : Schema()
    {
        for (auto& g : named)
            add_granule(std::move(g));
        for (auto& c : constraints)
            add_constraint(std::move(c));
    }

    void add_granule(GranuleId g) { universe_.insert(std::move(g)); }

    void add_constraint(Constraint c)
    {
        if (!universe_.count(c.left()) || !universe_.count(c.right()))
            throw error("constraint " + to_string(c) + " mentions a granule outside the universe");
        constraints_.insert(std::move(c));
    }

    const std::set<GranuleId>& universe() const { return universe_; }
    const std::set<Constraint>& constraints() const { return constraints_; }

    bool contains(const GranuleId& g) const { return universe_.count(g) != 0; }

    std::vector<GranuleId> named() const
    {
        std::vector<GranuleId> out;
        for (const auto& g : universe_)
            if (g.is_named())
                out.push_back(g);
        return out;
    }

    std::vector<Constraint> positive_constraints() const
    {
        std::vector<Constraint> out;
        for (const auto& c : constraints_)
            if (c.is_positive())
                out.push_back(c);
        return out;
    }

    std::vector<Constraint> negative_constraints() const
    {
        std::vector<Constraint> out;
        for (const auto& c : constraints_)
            if (!c.is_positive())
                out.push_back(c);
        return out;
    }

    // The positive part as a schema over the same universe.
    Schema positive_part() const
    {
        Schema s;
        s.universe_ = universe_;
        for (const auto& c : constraints_)
            if (c.is_positive())
                s.constraints_.insert(c);
        return s;
    }

    Schema with_constraint(const Constraint& c) const
    {
        Schema s = *this;
        s.add_constraint(c);
        return s;
    }

    bool operator==(const Schema&) const = default;

private:
    std::set<GranuleId> universe_;
    std::set<Constraint> constraints_;
};

// All ground positive atoms over a universe, in canonical order: every
// ordered Sub pair, then every unordered Disj pair (self-pairs included).
inline std::vector<Constraint> all_positive_atoms(const std::set<GranuleId>& universe)
{
    std::vector<Constraint> out;
    for (const auto& a : universe)
        for (const auto& b : universe)
            out.push_back(Constraint::sub(a, b));
    for (auto it = universe.begin(); it != universe.end(); ++it)
        for (auto jt = it; jt != universe.end(); ++jt)
            out.push_back(Constraint::disj(*it, *jt));
    return out;
}

inline std::vector<Constraint> all_constraints(const std::set<GranuleId>& universe)
{
    std::vector<Constraint> out;
    for (const auto& atom : all_positive_atoms(universe)) {
        out.push_back(atom);
        out.push_back(atom.negated());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Syntactic classification

enum class SyntacticClass : std::uint8_t { Tautology, Unsatisfiable, Contingent };

inline const char* to_string(SyntacticClass c)
{
    switch (c) {
    case SyntacticClass::Tautology: return "tautology";
    case SyntacticClass::Unsatisfiable: return "unsatisfiable";
    case SyntacticClass::Contingent: return "contingent";
    }
    return "?";
}

inline bool is_tautology_atom(const Constraint& c)
{
    if (c.pred() == Pred::Sub)
        return c.left() == c.right() || c.left().is_bottom() || c.right().is_top();
    return c.left().is_bottom() || c.right().is_bottom();
}

// The unsatisfiable positive atoms of full structures.  Besides subsumption
// into bottom and self-disjointness, disjointness from top can never hold:
// every other granule is nonempty and contained in top.
inline bool is_unsatisfiable_atom(const Constraint& c)
{
    if (c.pred() == Pred::Sub)
        return c.right().is_bottom() && !c.left().is_bottom();
    if (c.left().is_bottom() || c.right().is_bottom())
        return false;
    return c.left() == c.right() || c.left().is_top() || c.right().is_top();
}

inline SyntacticClass classify(const Constraint& c, const std::set<GranuleId>& universe)
{
    if (!universe.count(c.left()) || !universe.count(c.right()))
        throw error("classify: granule outside the universe in " + to_string(c));
    const Constraint atom = c.positive_atom();
    SyntacticClass pos = is_tautology_atom(atom)       ? SyntacticClass::Tautology
                         : is_unsatisfiable_atom(atom) ? SyntacticClass::Unsatisfiable
                                                       : SyntacticClass::Contingent;
    if (c.is_positive())
        return pos;
    switch (pos) {
    case SyntacticClass::Tautology: return SyntacticClass::Unsatisfiable;
    case SyntacticClass::Unsatisfiable: return SyntacticClass::Tautology;
    case SyntacticClass::Contingent: return SyntacticClass::Contingent;
    }
    return SyntacticClass::Contingent;
}

} // namespace granule

#endif // GRANULE_CORE_HPP
