// granule/engine.hpp — top-level decision procedures.
//
// Positive entailment is decided on the graph (reachability for Sub, the
// protected-pair criterion for Disj) and always ships a proof.  Negative
// constraints are handled through the Armstrong reduction: the schema is
// unsatisfiable iff its positive part is, or some declared negation's atom
// is positively entailed; and a negation !b is entailed iff adding b makes
// the positive part unsatisfiable, or makes it prove some declared
// negation's atom with b essential.  Proofs of negative conclusions are
// produced by contrapositioning the corresponding positive proof at b.
//
// A Reasoner computes everything it caches up front, so a built instance is
// immutable and freely shared across threads.

#ifndef GRANULE_ENGINE_HPP
#define GRANULE_ENGINE_HPP

#include <array>
#include <optional>
#include <vector>

#include "core.hpp"
#include "graph.hpp"
#include "proof.hpp"
#include "rules.hpp"
#include "semantics.hpp"

namespace granule {

// Countermodels and satisfying models are only materialized for universes
// the exhaustive oracle could also handle; larger ones get verdicts only.
inline constexpr std::size_t kModelEmissionCap = 4;

struct Decision {
    bool entailed = false;
    bool vacuous = false; // entailment holds because the schema itself is unsatisfiable
    std::optional<ProofTree> proof;
    std::optional<AtomModel> countermodel;

    static Decision yes(ProofTree p, bool vac = false)
    {
        return Decision{true, vac, std::move(p), std::nullopt};
    }
    static Decision no(std::optional<AtomModel> cm)
    {
        return Decision{false, false, std::nullopt, std::move(cm)};
    }
};

struct SatResult {
    bool satisfiable = false;
    std::optional<AtomModel> model; // a model, when small enough to emit
    std::optional<ProofTree> proof; // FALSE-concluding proof, when unsatisfiable
};

enum class Tri : std::uint8_t { True, False, Unknown };

inline const char* to_string(Tri t)
{
    switch (t) {
    case Tri::True: return "true";
    case Tri::False: return "false";
    case Tri::Unknown: return "unknown";
    }
    return "?";
}

// Three-valued status of <Sub(g1,g2), Sub(g2,g1), Disj(g1,g2)>.
struct StateVector {
    Tri sub12 = Tri::Unknown;
    Tri sub21 = Tri::Unknown;
    Tri disj = Tri::Unknown;

    bool complete() const
    {
        return sub12 != Tri::Unknown && sub21 != Tri::Unknown && disj != Tri::Unknown;
    }
    bool operator==(const StateVector&) const = default;
};

enum class Rcc5Relation : std::uint8_t { DC, PO, EQ, PP, PPI, EQE, PPE, PPIE };

inline const char* to_string(Rcc5Relation r)
{
    switch (r) {
    case Rcc5Relation::DC: return "DC";
    case Rcc5Relation::PO: return "PO";
    case Rcc5Relation::EQ: return "EQ";
    case Rcc5Relation::PP: return "PP";
    case Rcc5Relation::PPI: return "PPI";
    case Rcc5Relation::EQE: return "EQE";
    case Rcc5Relation::PPE: return "PPE";
    case Rcc5Relation::PPIE: return "PPIE";
    }
    return "?";
}

// Rows of the RCC5+ predicate table.
struct Rcc5Row {
    Rcc5Relation relation;
    bool sub12, sub21, disj;
};

inline const std::array<Rcc5Row, 8>& rcc5_table()
{
    static const std::array<Rcc5Row, 8> table = {{
        {Rcc5Relation::DC, false, false, true},
        {Rcc5Relation::PO, false, false, false},
        {Rcc5Relation::EQ, true, true, false},
        {Rcc5Relation::PP, true, false, false},
        {Rcc5Relation::PPI, false, true, false},
        {Rcc5Relation::EQE, true, true, true},
        {Rcc5Relation::PPE, true, false, true},
        {Rcc5Relation::PPIE, false, true, true},
    }};
    return table;
}

// The table rows consistent with a partial state vector; unknown entries
// match either truth value.
inline std::vector<Rcc5Relation> rcc5_classify(const StateVector& v)
{
    auto matches = [](Tri t, bool b) { return t == Tri::Unknown || (t == Tri::True) == b; };
    std::vector<Rcc5Relation> out;
    for (const auto& row : rcc5_table())
        if (matches(v.sub12, row.sub12) && matches(v.sub21, row.sub21) && matches(v.disj, row.disj))
            out.push_back(row.relation);
    return out;
}

// ---------------------------------------------------------------------------

class Reasoner {
public:
    explicit Reasoner(Schema schema)
        : schema_(std::move(schema)), pos_(schema_.positive_part()), graph_(SmasGraph::build(pos_))
    {
        pos_unsat_ = positive_unsat_witness(graph_);
        sat_ = decide_satisfiable();
    }

    const Schema& schema() const { return schema_; }
    const SmasGraph& graph() const { return graph_; }

    const SatResult& check_satisfiable() const { return sat_; }

    // Positive entailment over the positive part; negative constraints never
    // contribute to positive conclusions.
    Decision entails_positive(const Constraint& c) const
    {
        require_over_universe(c);
        if (!c.is_positive())
            throw error("entails_positive: " + to_string(c) + " is not positive");
        if (pos_unsat_)
            return Decision::yes(unsat_proof(pos_, graph_), /*vac=*/true);
        if (auto proof = positive_proof(pos_, graph_, c))
            return Decision::yes(std::move(*proof));
        return Decision::no(emit_model(pos_));
    }

    Decision entails(const Constraint& c) const
    {
        require_over_universe(c);
        if (!sat_.satisfiable)
            return Decision::yes(*sat_.proof, /*vac=*/true);
        if (c.is_positive())
            return entails_positive(c);

        const Constraint beta = c.positive_atom();
        Schema extended = pos_.with_constraint(beta);
        SmasGraph egraph = SmasGraph::build(extended);

        // The positive part plus beta collapses outright.
        if (positive_unsat_witness(egraph)) {
            ProofTree tau = unsat_proof(extended, egraph);
            return Decision::yes(contrapose(tau, beta));
        }
        // Or beta is essential in proving some declared negation's atom.
        for (const auto& nc : schema_.constraints()) {
            if (nc.is_positive())
                continue;
            const Constraint phi = nc.positive_atom();
            if (positive_proof(pos_, graph_, phi))
                continue; // beta superfluous; covered by the branch above if at all
            if (auto tau = positive_proof(extended, egraph, phi))
                return Decision::yes(contrapose(*tau, beta));
        }
        return Decision::no(emit_model(extended));
    }

    // Every entailed ground constraint over the universe, canonical order.
    std::vector<Constraint> closure() const
    {
        std::vector<Constraint> out;
        for (const auto& c : all_constraints(schema_.universe()))
            if (entails(c).entailed)
                out.push_back(c);
        return out;
    }

    StateVector state_vector(const GranuleId& g1, const GranuleId& g2) const
    {
        if (!schema_.contains(g1) || !schema_.contains(g2))
            throw error("state_vector: granule outside the universe");
        return StateVector{tri_of(Constraint::sub(g1, g2)), tri_of(Constraint::sub(g2, g1)),
                           tri_of(Constraint::disj(g1, g2))};
    }

private:
    void require_over_universe(const Constraint& c) const
    {
        if (!schema_.contains(c.left()) || !schema_.contains(c.right()))
            throw error("constraint " + to_string(c) + " mentions a granule outside the universe");
    }

    // Proof of a positive constraint from a satisfiable positive part, if it
    // is entailed at all.
    static std::optional<ProofTree> positive_proof(const Schema& pos, const SmasGraph& graph,
                                                   const Constraint& c)
    {
        if (c.pred() == Pred::Sub) {
            if (auto path = graph.sub_star(c.left(), c.right()))
                return left_linear(*path, pos);
            return std::nullopt;
        }
        if (pos.constraints().count(c) || c.left().is_bottom() || c.right().is_bottom())
            return disjointness_proof(c.left(), c.right(), graph, pos);
        if (c.left() == c.right())
            return std::nullopt; // self-disjointness only holds vacuously
        if (graph.find_protector(c.left(), c.right()))
            return disjointness_proof(c.left(), c.right(), graph, pos);
        return std::nullopt;
    }

    SatResult decide_satisfiable() const
    {
        if (pos_unsat_)
            return SatResult{false, std::nullopt, unsat_proof(pos_, graph_)};
        for (const auto& nc : schema_.constraints()) {
            if (nc.is_positive())
                continue;
            const Constraint phi = nc.positive_atom();
            if (auto proof = positive_proof(pos_, graph_, phi)) {
                RuleId cp = phi.pred() == Pred::Sub ? RuleId::C1 : RuleId::C2;
                Substitution s{{1, Term(phi.left())}, {2, Term(phi.right())}};
                ProofTree falsum = ProofTree::rule(
                    cp, std::move(s), {std::move(*proof), ProofTree::axiom(nc)});
                return SatResult{false, std::nullopt, std::move(falsum)};
            }
        }
        return SatResult{true, emit_model(pos_), std::nullopt};
    }

    std::optional<AtomModel> emit_model(const Schema& pos) const
    {
        if (schema_.named().size() > kModelEmissionCap)
            return std::nullopt;
        return canonical_model(pos);
    }

    Tri tri_of(const Constraint& atom) const
    {
        if (entails(atom).entailed)
            return Tri::True;
        if (entails(atom.negated()).entailed)
            return Tri::False;
        return Tri::Unknown;
    }

    Schema schema_;
    Schema pos_;
    SmasGraph graph_;
    std::optional<SelfDisjointWitness> pos_unsat_;
    SatResult sat_;
};

// One-shot forms of the Reasoner queries.

inline Decision entails_positive(const Schema& s, const Constraint& c)
{
    return Reasoner(s).entails_positive(c);
}

inline SatResult check_satisfiable(const Schema& s) { return Reasoner(s).check_satisfiable(); }

inline Decision entails(const Schema& s, const Constraint& c) { return Reasoner(s).entails(c); }

inline std::vector<Constraint> closure(const Schema& s) { return Reasoner(s).closure(); }

inline StateVector state_vector(const Schema& s, const GranuleId& g1, const GranuleId& g2)
{
    return Reasoner(s).state_vector(g1, g2);
}

} // namespace granule

#endif // GRANULE_ENGINE_HPP
