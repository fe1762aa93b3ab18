// granule/semantics.hpp — models, the brute-force oracle, and the canonical
// (Armstrong) model constructor.
//
// A model is represented by its set of inhabited membership patterns: two
// structures satisfy the same binary constraints whenever their pattern sets
// agree, so element multiplicities never matter here.  Patterns list named
// granules only; bottom and top are implied in full and strong-quasi modes
// and carried as explicit flags in quasi mode.
//
// The oracle enumerates every pattern set over the named granules and is
// deliberately capped at small universes.  It exists to check the graph
// engine, not to replace it.

#ifndef GRANULE_SEMANTICS_HPP
#define GRANULE_SEMANTICS_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core.hpp"
#include "graph.hpp"

namespace granule {

enum class SemanticsMode : std::uint8_t { Full, StrongQuasi, Quasi };

inline const char* to_string(SemanticsMode m)
{
    switch (m) {
    case SemanticsMode::Full: return "full";
    case SemanticsMode::StrongQuasi: return "strong-quasi";
    case SemanticsMode::Quasi: return "quasi";
    }
    return "?";
}

class AtomPattern {
public:
    AtomPattern() = default;
    explicit AtomPattern(std::vector<GranuleId> named, bool has_top = false, bool has_bottom = false)
        : named_(std::move(named)), has_top_(has_top), has_bottom_(has_bottom)
    {
        for (const auto& g : named_)
            if (!g.is_named())
                throw error("pattern members must be named granules; use the top/bottom flags");
        std::sort(named_.begin(), named_.end());
        named_.erase(std::unique(named_.begin(), named_.end()), named_.end());
    }

    const std::vector<GranuleId>& named() const { return named_; }
    bool top_flag() const { return has_top_; }
    bool bottom_flag() const { return has_bottom_; }

    bool has_named(const GranuleId& g) const
    {
        return std::binary_search(named_.begin(), named_.end(), g);
    }

    bool empty() const { return named_.empty() && !has_top_ && !has_bottom_; }

    auto operator<=>(const AtomPattern&) const = default;

private:
    std::vector<GranuleId> named_;
    bool has_top_ = false;
    bool has_bottom_ = false;
};

inline std::string to_string(const AtomPattern& p)
{
    std::string out = "{";
    bool first = true;
    auto append = [&](const std::string& s) {
        if (!first)
            out += ", ";
        first = false;
        out += s;
    };
    if (p.bottom_flag())
        append(kBottomToken);
    for (const auto& g : p.named())
        append(g.name());
    if (p.top_flag())
        append(kTopToken);
    out += "}";
    return out;
}

class AtomModel {
public:
    AtomModel(SemanticsMode mode, std::vector<AtomPattern> inhabited)
        : mode_(mode), inhabited_(std::move(inhabited))
    {
        std::sort(inhabited_.begin(), inhabited_.end());
        inhabited_.erase(std::unique(inhabited_.begin(), inhabited_.end()), inhabited_.end());
    }

    SemanticsMode mode() const { return mode_; }
    const std::vector<AtomPattern>& inhabited() const { return inhabited_; }

    // Membership of a granule in one pattern, under this model's mode.
    bool member(const AtomPattern& p, const GranuleId& g) const
    {
        if (g.is_bottom())
            return mode_ == SemanticsMode::Quasi ? p.bottom_flag() : false;
        if (g.is_top())
            return mode_ == SemanticsMode::Quasi ? p.top_flag() : true;
        return p.has_named(g);
    }

    // Reinterpret under a weaker mode; full patterns gain the implied flags.
    AtomModel widen(SemanticsMode target) const
    {
        if (target == SemanticsMode::Quasi && mode_ != SemanticsMode::Quasi) {
            std::vector<AtomPattern> ps;
            for (const auto& p : inhabited_)
                ps.push_back(AtomPattern(p.named(), /*has_top=*/true, /*has_bottom=*/false));
            return AtomModel(target, std::move(ps));
        }
        return AtomModel(target, inhabited_);
    }

    bool operator==(const AtomModel&) const = default;

private:
    SemanticsMode mode_;
    std::vector<AtomPattern> inhabited_;
};

// One line per inhabited pattern, members sorted, lines sorted.
inline std::string dump_model(const AtomModel& m)
{
    std::string out;
    for (const auto& p : m.inhabited())
        out += to_string(p) + "\n";
    return out;
}

// ---------------------------------------------------------------------------
// Constraint evaluation

inline bool holds(const AtomModel& m, const Constraint& c)
{
    bool result;
    if (c.pred() == Pred::Sub) {
        result = true;
        for (const auto& p : m.inhabited())
            if (m.member(p, c.left()) && !m.member(p, c.right())) {
                result = false;
                break;
            }
    } else {
        result = true;
        for (const auto& p : m.inhabited())
            if (m.member(p, c.left()) && m.member(p, c.right())) {
                result = false;
                break;
            }
    }
    return c.is_positive() ? result : !result;
}

// Mode-specific structural invariants, independent of any constraint set.
inline bool mode_valid(const AtomModel& m, const Schema& s)
{
    switch (m.mode()) {
    case SemanticsMode::Full: {
        if (m.inhabited().empty())
            return false;
        for (const auto& g : s.named()) {
            bool covered = false;
            for (const auto& p : m.inhabited())
                if (p.has_named(g)) {
                    covered = true;
                    break;
                }
            if (!covered)
                return false;
        }
        return true;
    }
    case SemanticsMode::StrongQuasi:
        return true;
    case SemanticsMode::Quasi:
        for (const auto& p : m.inhabited())
            if (p.empty())
                return false; // every element lies in the image of some granule
        return true;
    }
    return false;
}

inline bool is_model(const AtomModel& m, const Schema& s)
{
    if (!mode_valid(m, s))
        return false;
    for (const auto& c : s.constraints()) {
        if (!s.contains(c.left()) || !s.contains(c.right()))
            throw error("constraint over unknown granule: " + to_string(c));
        if (!holds(m, c))
            return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Brute-force oracle
//
// Patterns are encoded as bitmasks over the named granules (plus top/bottom
// flag bits in quasi mode) and a candidate model is a bitmask of inhabited
// patterns.  Enumeration order is the numeric order of those masks.

class Oracle {
public:
    // Exhaustive enumeration is refused beyond this many candidate models.
    static constexpr std::uint64_t kMaxCandidates = std::uint64_t{1} << 16;

    Oracle(const Schema& schema, SemanticsMode mode) : schema_(schema), mode_(mode)
    {
        named_ = schema.named();
        const std::size_t n = named_.size();
        std::size_t atom_bits = n + (mode == SemanticsMode::Quasi ? 2 : 0);
        if (atom_bits >= 16)
            throw error("oracle: universe too large for exhaustive enumeration");
        std::uint32_t pattern_count = (std::uint32_t{1} << atom_bits);
        std::uint32_t first = 0;
        if (mode == SemanticsMode::Quasi)
            first = 1; // a quasi element must lie in some granule
        pattern_masks_.clear();
        for (std::uint32_t p = first; p < pattern_count; ++p)
            pattern_masks_.push_back(p);
        if (pattern_masks_.size() >= 63 ||
            (std::uint64_t{1} << pattern_masks_.size()) > kMaxCandidates)
            throw error("oracle: universe too large for exhaustive enumeration");
        candidate_count_ = std::uint64_t{1} << pattern_masks_.size();
        collect_models();
    }

    bool satisfiable() const { return !model_masks_.empty(); }

    bool entails(const Constraint& c) const
    {
        std::uint64_t bad = compile(c);
        for (std::uint64_t m : model_masks_)
            if (!eval(m, c.is_positive(), bad))
                return false;
        return true;
    }

    std::size_t model_count() const { return model_masks_.size(); }

    std::vector<AtomModel> models() const
    {
        std::vector<AtomModel> out;
        out.reserve(model_masks_.size());
        for (std::uint64_t m : model_masks_)
            out.push_back(materialize(m));
        return out;
    }

private:
    // Bit positions: named granules in canonical order, then top, then bottom.
    std::uint32_t bit_of(const GranuleId& g) const
    {
        if (g.is_top())
            return std::uint32_t{1} << named_.size();
        if (g.is_bottom())
            return std::uint32_t{1} << (named_.size() + 1);
        auto it = std::lower_bound(named_.begin(), named_.end(), g);
        if (it == named_.end() || *it != g)
            throw error("unknown granule '" + g.name() + "'");
        return std::uint32_t{1} << static_cast<std::uint32_t>(it - named_.begin());
    }

    // Pattern-level membership mask for a granule: patterns always contain
    // top and never bottom outside quasi mode.
    std::uint32_t membership(std::uint32_t pattern, const GranuleId& g) const
    {
        if (mode_ != SemanticsMode::Quasi) {
            if (g.is_top())
                return 1;
            if (g.is_bottom())
                return 0;
        }
        return pattern & bit_of(g);
    }

    // Mask of patterns whose inhabitation falsifies the positive atom of c.
    std::uint64_t compile(const Constraint& c) const
    {
        std::uint64_t bad_mask = 0;
        for (std::size_t i = 0; i < pattern_masks_.size(); ++i) {
            bool l = membership(pattern_masks_[i], c.left()) != 0;
            bool r = membership(pattern_masks_[i], c.right()) != 0;
            bool bad = (c.pred() == Pred::Sub) ? (l && !r) : (l && r);
            if (bad)
                bad_mask |= (std::uint64_t{1} << i);
        }
        return bad_mask;
    }

    static bool eval(std::uint64_t model, bool positive, std::uint64_t bad_mask)
    {
        bool pos_holds = (model & bad_mask) == 0;
        return positive ? pos_holds : !pos_holds;
    }

    bool candidate_valid(std::uint64_t model) const
    {
        if (mode_ == SemanticsMode::Full) {
            if (model == 0)
                return false;
            std::uint32_t covered = 0;
            for (std::size_t i = 0; i < pattern_masks_.size(); ++i)
                if (model & (std::uint64_t{1} << i))
                    covered |= pattern_masks_[i];
            std::uint32_t need = (named_.empty() ? 0 : (std::uint32_t{1} << named_.size()) - 1);
            if ((covered & need) != need)
                return false;
        }
        return true;
    }

    void collect_models()
    {
        std::vector<std::pair<std::uint64_t, bool>> compiled; // (bad mask, positive)
        for (const auto& c : schema_.constraints())
            compiled.push_back({compile(c), c.is_positive()});
        for (std::uint64_t m = 0; m < candidate_count_; ++m) {
            if (!candidate_valid(m))
                continue;
            bool ok = true;
            for (std::size_t i = 0; i < compiled.size() && ok; ++i)
                ok = eval(m, compiled[i].second, compiled[i].first);
            if (ok)
                model_masks_.push_back(m);
        }
    }

    AtomModel materialize(std::uint64_t model) const
    {
        std::vector<AtomPattern> patterns;
        for (std::size_t i = 0; i < pattern_masks_.size(); ++i) {
            if (!(model & (std::uint64_t{1} << i)))
                continue;
            std::uint32_t pm = pattern_masks_[i];
            std::vector<GranuleId> members;
            for (std::size_t b = 0; b < named_.size(); ++b)
                if (pm & (std::uint32_t{1} << b))
                    members.push_back(named_[b]);
            bool has_top = mode_ == SemanticsMode::Quasi && (pm & (std::uint32_t{1} << named_.size()));
            bool has_bot = mode_ == SemanticsMode::Quasi && (pm & (std::uint32_t{1} << (named_.size() + 1)));
            patterns.push_back(AtomPattern(std::move(members), has_top, has_bot));
        }
        return AtomModel(mode_, std::move(patterns));
    }

    Schema schema_;
    SemanticsMode mode_;
    std::vector<GranuleId> named_;
    std::vector<std::uint32_t> pattern_masks_;
    std::uint64_t candidate_count_ = 0;
    std::vector<std::uint64_t> model_masks_;
};

inline std::vector<AtomModel> enumerate_models(const Schema& s, SemanticsMode mode)
{
    return Oracle(s, mode).models();
}

inline bool oracle_satisfiable(const Schema& s, SemanticsMode mode = SemanticsMode::Full)
{
    return Oracle(s, mode).satisfiable();
}

inline bool oracle_entails(const Schema& s, const Constraint& c,
                           SemanticsMode mode = SemanticsMode::Full)
{
    return Oracle(s, mode).entails(c);
}

// ---------------------------------------------------------------------------
// Canonical (Armstrong) model
//
// For a satisfiable positive schema the model below satisfies exactly the
// entailed positive constraints: one element per named granule (and one for
// top) inhabiting precisely the granules it provably lies under, plus one
// element per unprotected doublet realizing the non-entailed disjointness.

inline AtomModel canonical_model(const Schema& schema)
{
    for (const auto& c : schema.constraints())
        if (!c.is_positive())
            throw error("canonical_model: schema must contain positive constraints only");
    SmasGraph graph = SmasGraph::build(schema);
    if (positive_unsat_witness(graph))
        throw error("canonical_model: positive constraints are unsatisfiable");

    std::vector<GranuleId> named = schema.named();
    auto up_set = [&](const GranuleId& g) {
        std::vector<GranuleId> ups;
        for (const auto& h : named)
            if (graph.reaches(g, h))
                ups.push_back(h);
        return ups;
    };

    std::vector<AtomPattern> patterns;
    std::vector<std::vector<GranuleId>> up;
    for (const auto& g : named) {
        up.push_back(up_set(g));
        patterns.push_back(AtomPattern(up.back()));
    }
    patterns.push_back(AtomPattern(up_set(GranuleId::top())));
    for (std::size_t i = 0; i < named.size(); ++i) {
        for (std::size_t j = i + 1; j < named.size(); ++j) {
            if (graph.find_protector(named[i], named[j]))
                continue;
            std::vector<GranuleId> merged = up[i];
            merged.insert(merged.end(), up[j].begin(), up[j].end());
            patterns.push_back(AtomPattern(std::move(merged)));
        }
    }
    return AtomModel(SemanticsMode::Full, std::move(patterns));
}

} // namespace granule

#endif // GRANULE_SEMANTICS_HPP
