// granule/rules.hpp — the inference rule catalog.
//
// Each rule is a schematic: antecedent WFF shapes over the variables ?1..?3,
// a consequent shape (or FALSE), and an optional not-bottom side condition.
// Rule sets:
//
//   QPos     I1 I2 D1 M1 M2                  quasi-model system
//   SQPos    + T1 T2 T3                      strong quasi-model system
//   SQPosExt + U1 U2                         full-model system, redundant rules kept
//   BPos     I2 M1 I1 T1 T2 T3 U1            full-model system, minimal
//   BFull    BPos + I2sa I2sb M1sa M1sb U1s  swap closure of BPos
//            + C1 C2                         complement pairs
//
// Swapping a rule exchanges one antecedent with the consequent and negates
// both; a FALSE consequent contributes no premise.  The swapped schematics
// below are derived mechanically from the base rules by exactly that
// operation, and a test pins the correspondence.

#ifndef GRANULE_RULES_HPP
#define GRANULE_RULES_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core.hpp"

namespace granule {

enum class RuleId : std::uint8_t {
    I1, I2, M1, T1, T2, T3, U1,   // the minimal full-model system
    D1, M2, U2,                    // quasi-system extras, derivable in BPos
    I2sa, I2sb, M1sa, M1sb, U1s,  // swaps of I2, M1, U1
    C1, C2,                        // complement pairs
    Axiom,                         // leaf marker, not a schematic
};

inline const char* to_string(RuleId r)
{
    switch (r) {
    case RuleId::I1: return "I1";
    case RuleId::I2: return "I2";
    case RuleId::M1: return "M1";
    case RuleId::T1: return "T1";
    case RuleId::T2: return "T2";
    case RuleId::T3: return "T3";
    case RuleId::U1: return "U1";
    case RuleId::D1: return "D1";
    case RuleId::M2: return "M2";
    case RuleId::U2: return "U2";
    case RuleId::I2sa: return "I2-sa";
    case RuleId::I2sb: return "I2-sb";
    case RuleId::M1sa: return "M1-sa";
    case RuleId::M1sb: return "M1-sb";
    case RuleId::U1s: return "U1-s";
    case RuleId::C1: return "C1";
    case RuleId::C2: return "C2";
    case RuleId::Axiom: return "axiom";
    }
    return "?";
}

struct RuleSchematic {
    RuleId id;
    std::vector<Wff> antecedents;
    std::optional<Wff> consequent;       // nullopt = FALSE
    std::vector<VarIndex> not_bottom;    // side conditions ?v != bot

    bool concludes_false() const { return !consequent.has_value(); }
};

namespace detail {
inline Term v(VarIndex i) { return Term(Var{i}); }
inline Term bot() { return Term(GranuleId::bottom()); }
inline Term top() { return Term(GranuleId::top()); }
} // namespace detail

inline const RuleSchematic& schematic_of(RuleId id)
{
    using detail::bot;
    using detail::top;
    using detail::v;
    static const std::array<RuleSchematic, 17> table = {{
        {RuleId::I1, {}, Wff::sub(v(1), v(1)), {}},
        {RuleId::I2, {Wff::sub(v(1), v(2)), Wff::sub(v(2), v(3))}, Wff::sub(v(1), v(3)), {}},
        {RuleId::M1, {Wff::sub(v(1), v(2)), Wff::disj(v(2), v(3))}, Wff::disj(v(1), v(3)), {}},
        {RuleId::T1, {}, Wff::disj(bot(), v(1)), {}},
        {RuleId::T2, {}, Wff::sub(bot(), v(1)), {}},
        {RuleId::T3, {}, Wff::sub(v(1), top()), {}},
        {RuleId::U1, {Wff::disj(v(1), v(1))}, std::nullopt, {1}},
        {RuleId::D1, {Wff::disj(v(1), v(1))}, Wff::disj(v(1), v(2)), {}},
        {RuleId::M2, {Wff::disj(v(1), v(1))}, Wff::sub(v(1), v(2)), {}},
        {RuleId::U2, {Wff::sub(v(1), bot())}, std::nullopt, {1}},
        {RuleId::I2sa, {Wff::sub(v(1), v(2)), Wff::sub(v(1), v(3)).negated()},
         Wff::sub(v(2), v(3)).negated(), {}},
        {RuleId::I2sb, {Wff::sub(v(1), v(3)).negated(), Wff::sub(v(2), v(3))},
         Wff::sub(v(1), v(2)).negated(), {}},
        {RuleId::M1sa, {Wff::sub(v(1), v(2)), Wff::disj(v(1), v(3)).negated()},
         Wff::disj(v(2), v(3)).negated(), {}},
        {RuleId::M1sb, {Wff::disj(v(1), v(3)).negated(), Wff::disj(v(2), v(3))},
         Wff::sub(v(1), v(2)).negated(), {}},
        {RuleId::U1s, {}, Wff::disj(v(1), v(1)).negated(), {1}},
        {RuleId::C1, {Wff::sub(v(1), v(2)), Wff::sub(v(1), v(2)).negated()}, std::nullopt, {}},
        {RuleId::C2, {Wff::disj(v(1), v(2)), Wff::disj(v(1), v(2)).negated()}, std::nullopt, {}},
    }};
    for (const auto& s : table)
        if (s.id == id)
            return s;
    throw error(std::string("no schematic for rule ") + to_string(id));
}

// Apply the swap transformation to a schematic: antecedent i trades places
// with the consequent and both are negated; swapping into FALSE drops the
// would-be not-FALSE premise.
inline RuleSchematic mechanical_swap(const RuleSchematic& r, std::size_t antecedent_index)
{
    if (r.antecedents.empty())
        throw error(std::string("rule ") + to_string(r.id) + " has an empty antecedent set");
    if (antecedent_index >= r.antecedents.size())
        throw error("swap: antecedent index out of range");
    RuleSchematic out;
    out.id = r.id; // caller renames
    out.not_bottom = r.not_bottom;
    for (std::size_t i = 0; i < r.antecedents.size(); ++i) {
        if (i == antecedent_index) {
            if (r.consequent)
                out.antecedents.push_back(r.consequent->negated());
        } else {
            out.antecedents.push_back(r.antecedents[i]);
        }
    }
    out.consequent = r.antecedents[antecedent_index].negated();
    return out;
}

// The named swap of a base rule antecedent, per the swapped-rule catalog.
inline RuleId swap_rule(RuleId base, std::size_t antecedent_index)
{
    switch (base) {
    case RuleId::I2:
        if (antecedent_index == 0)
            return RuleId::I2sb;
        if (antecedent_index == 1)
            return RuleId::I2sa;
        break;
    case RuleId::M1:
        if (antecedent_index == 0)
            return RuleId::M1sb;
        if (antecedent_index == 1)
            return RuleId::M1sa;
        break;
    case RuleId::U1:
        if (antecedent_index == 0)
            return RuleId::U1s;
        break;
    case RuleId::I1:
    case RuleId::T1:
    case RuleId::T2:
    case RuleId::T3:
        throw error(std::string("rule ") + to_string(base) + " has an empty antecedent set");
    default:
        break;
    }
    throw error(std::string("rule ") + to_string(base) + " has no named swap at antecedent " +
                std::to_string(antecedent_index));
}

// ---------------------------------------------------------------------------
// Rule sets

class RuleSet {
public:
    static RuleSet q_pos()
    {
        return RuleSet("QPos", {RuleId::I1, RuleId::I2, RuleId::D1, RuleId::M1, RuleId::M2});
    }
    static RuleSet sq_pos()
    {
        RuleSet rs = q_pos();
        rs.name_ = "SQPos";
        rs.add({RuleId::T1, RuleId::T2, RuleId::T3});
        return rs;
    }
    static RuleSet sq_pos_ext()
    {
        RuleSet rs = sq_pos();
        rs.name_ = "SQPosExt";
        rs.add({RuleId::U1, RuleId::U2});
        return rs;
    }
    static RuleSet b_pos()
    {
        return RuleSet("BPos", {RuleId::I2, RuleId::M1, RuleId::I1, RuleId::T1, RuleId::T2,
                                     RuleId::T3, RuleId::U1});
    }
    static RuleSet b_full()
    {
        RuleSet rs = b_pos();
        rs.name_ = "BFull";
        rs.add({RuleId::I2sa, RuleId::I2sb, RuleId::M1sa, RuleId::M1sb, RuleId::U1s, RuleId::C1,
                RuleId::C2});
        return rs;
    }

    bool contains(RuleId r) const
    {
        return std::find(rules_.begin(), rules_.end(), r) != rules_.end();
    }
    const std::vector<RuleId>& rules() const { return rules_; }
    const std::string& name() const { return name_; }

private:
    RuleSet(std::string name, std::vector<RuleId> rules) : name_(std::move(name)), rules_(std::move(rules)) {}
    void add(std::initializer_list<RuleId> rs) { rules_.insert(rules_.end(), rs); }

    std::string name_;
    std::vector<RuleId> rules_;
};

} // namespace granule

#endif // GRANULE_RULES_HPP
