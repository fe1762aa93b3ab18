// granule/proof.hpp — proof trees over the rule catalog.
//
// A proof tree is a rooted tree of rule instances.  Leaves are either
// axioms (constraints assumed as antecedents) or the artificial TRUE vertex
// under empty-antecedent rules.  Every rule node stores the ground
// substitution that instantiates its schematic, so validation is a direct
// re-instantiation check and never pattern-matches ambiguously.
//
// Constructors build the specific proof shapes the engine emits:
//   left_linear        chains of (I2) along a subsumption path
//   disjointness_proof at most two such chains feeding (M1)
//   unsat_proof        a self-disjointness proof capped by (U1)
//   contrapose         rule swapping along a leaf-to-root path
//
// All of them produce single-use trees on the inputs the engine supplies.

#ifndef GRANULE_PROOF_HPP
#define GRANULE_PROOF_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "core.hpp"
#include "graph.hpp"
#include "rules.hpp"

namespace granule {

inline Constraint instantiate(const Wff& shape, const Substitution& s)
{
    Wff w = substitute(shape, s);
    auto c = w.to_constraint();
    if (!c)
        throw error("substitution does not ground " + to_string(shape));
    return *c;
}

class ProofTree {
public:
    enum class Kind : std::uint8_t { Axiom, True, Rule };

    static ProofTree axiom(Constraint c)
    {
        ProofTree t;
        t.kind_ = Kind::Axiom;
        t.formula_ = std::move(c);
        return t;
    }

    static ProofTree true_leaf()
    {
        ProofTree t;
        t.kind_ = Kind::True;
        return t;
    }

    static ProofTree rule(RuleId id, Substitution subst, std::vector<ProofTree> children)
    {
        const RuleSchematic& schematic = schematic_of(id);
        ProofTree t;
        t.kind_ = Kind::Rule;
        t.rule_ = id;
        t.subst_ = std::move(subst);
        if (schematic.consequent)
            t.formula_ = instantiate(*schematic.consequent, t.subst_);
        if (schematic.antecedents.empty() && children.empty())
            children.push_back(true_leaf());
        t.children_ = std::move(children);
        return t;
    }

    Kind kind() const { return kind_; }
    bool is_axiom() const { return kind_ == Kind::Axiom; }
    bool is_true_leaf() const { return kind_ == Kind::True; }
    bool is_rule() const { return kind_ == Kind::Rule; }

    // The formula this subtree establishes: the axiom itself or the rule
    // consequent; nullopt means FALSE (and TRUE for the artificial leaf).
    const std::optional<Constraint>& consequent() const { return formula_; }
    bool concludes_false() const { return kind_ == Kind::Rule && !formula_; }

    RuleId rule_id() const { return rule_; }
    const Substitution& substitution() const { return subst_; }
    const std::vector<ProofTree>& children() const { return children_; }

    bool operator==(const ProofTree&) const = default;

private:
    Kind kind_ = Kind::True;
    std::optional<Constraint> formula_;
    RuleId rule_ = RuleId::Axiom;
    Substitution subst_;
    std::vector<ProofTree> children_;
};

// Multiset of axiom leaves, sorted.
inline void collect_antecedents(const ProofTree& t, std::vector<Constraint>& out)
{
    if (t.is_axiom()) {
        out.push_back(*t.consequent());
        return;
    }
    for (const auto& c : t.children())
        collect_antecedents(c, out);
}

inline std::vector<Constraint> antecedents(const ProofTree& t)
{
    std::vector<Constraint> out;
    collect_antecedents(t, out);
    std::sort(out.begin(), out.end());
    return out;
}

inline bool single_use(const ProofTree& t)
{
    auto ants = antecedents(t);
    return std::adjacent_find(ants.begin(), ants.end()) == ants.end();
}

// ---------------------------------------------------------------------------
// Validation

struct ValidationResult {
    bool ok = true;
    std::string diagnostic; // path to the offending node when !ok

    explicit operator bool() const { return ok; }
};

namespace detail {

inline ValidationResult invalid(const std::string& path, const std::string& why)
{
    return ValidationResult{false, path + ": " + why};
}

inline ValidationResult validate_node(const ProofTree& t, const RuleSet& rs, const std::string& path)
{
    switch (t.kind()) {
    case ProofTree::Kind::Axiom:
        return {};
    case ProofTree::Kind::True:
        return invalid(path, "TRUE leaf outside an empty-antecedent rule");
    case ProofTree::Kind::Rule:
        break;
    }

    if (t.rule_id() == RuleId::Axiom || !rs.contains(t.rule_id()))
        return invalid(path, std::string("rule ") + to_string(t.rule_id()) + " not in " + rs.name());

    const RuleSchematic& schematic = schematic_of(t.rule_id());
    const Substitution& s = t.substitution();
    if (!s.is_ground())
        return invalid(path, "substitution is not ground");
    for (VarIndex v : schematic.not_bottom) {
        const Term* bound = s.lookup(v);
        if (!bound || !is_ground(*bound))
            return invalid(path, "side-condition variable unbound");
        if (std::get<GranuleId>(*bound).is_bottom())
            return invalid(path, "side condition violated: variable bound to bottom");
    }

    std::vector<Constraint> ants;
    for (const auto& shape : schematic.antecedents) {
        if (!s.complete_for(shape))
            return invalid(path, "substitution incomplete for " + to_string(shape));
        ants.push_back(instantiate(shape, s));
    }
    if (schematic.consequent && !s.complete_for(*schematic.consequent))
        return invalid(path, "substitution incomplete for the consequent");
    for (std::size_t i = 0; i < ants.size(); ++i)
        for (std::size_t j = i + 1; j < ants.size(); ++j)
            if (ants[i] == ants[j])
                return invalid(path, "rule instance repeats antecedent " + to_string(ants[i]));

    // Consequent stored on the node must be the instantiated schematic's.
    if (schematic.consequent) {
        if (!t.consequent() || *t.consequent() != instantiate(*schematic.consequent, s))
            return invalid(path, "stored consequent does not match the rule schematic");
    } else if (t.consequent()) {
        return invalid(path, "rule concludes FALSE but node stores a formula");
    }

    if (ants.empty()) {
        if (t.children().size() != 1 || !t.children().front().is_true_leaf())
            return invalid(path, "empty-antecedent rule must have exactly the TRUE leaf");
        return {};
    }
    if (t.children().size() != ants.size())
        return invalid(path, "child count does not match the antecedent count");

    // Antecedents of one instance are pairwise distinct, so unordered
    // matching of children against them is unambiguous.
    std::vector<bool> used(ants.size(), false);
    for (std::size_t ci = 0; ci < t.children().size(); ++ci) {
        const ProofTree& child = t.children()[ci];
        const std::string child_path = path + "/" + std::to_string(ci);
        if (child.is_true_leaf())
            return invalid(child_path, "TRUE leaf under a rule with antecedents");
        if (!child.consequent())
            return invalid(child_path, "FALSE cannot be an antecedent");
        bool matched = false;
        for (std::size_t ai = 0; ai < ants.size(); ++ai) {
            if (!used[ai] && ants[ai] == *child.consequent()) {
                used[ai] = true;
                matched = true;
                break;
            }
        }
        if (!matched)
            return invalid(child_path, "child proves " + to_string(*child.consequent()) +
                                           ", which is not an antecedent of this instance");
        if (auto r = validate_node(child, rs, child_path); !r)
            return r;
    }
    return {};
}

} // namespace detail

inline ValidationResult validate(const ProofTree& t, const RuleSet& rs)
{
    return detail::validate_node(t, rs, "root");
}

// Label-preserving tree isomorphism, children unordered.
inline bool isomorphic(const ProofTree& a, const ProofTree& b)
{
    if (a.kind() != b.kind() || a.rule_id() != b.rule_id() || a.consequent() != b.consequent())
        return false;
    if (a.children().size() != b.children().size())
        return false;
    std::vector<bool> used(b.children().size(), false);
    for (const auto& ca : a.children()) {
        bool matched = false;
        for (std::size_t j = 0; j < b.children().size(); ++j) {
            if (!used[j] && isomorphic(ca, b.children()[j])) {
                used[j] = true;
                matched = true;
                break;
            }
        }
        if (!matched)
            return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Constructors

namespace detail {

// Proof of one Sub step: the declared constraint as an axiom, or the
// matching tautology rule.
inline ProofTree sub_step_proof(const GranuleId& a, const GranuleId& b, const Schema& schema)
{
    Constraint step = Constraint::sub(a, b);
    if (schema.constraints().count(step))
        return ProofTree::axiom(step);
    if (a == b)
        return ProofTree::rule(RuleId::I1, Substitution{{1, Term(a)}}, {});
    if (a.is_bottom())
        return ProofTree::rule(RuleId::T2, Substitution{{1, Term(b)}}, {});
    if (b.is_top())
        return ProofTree::rule(RuleId::T3, Substitution{{1, Term(a)}}, {});
    throw error("left_linear: step " + to_string(step) + " is neither declared nor a tautology");
}

// Proof of the disjointness edge {h1,h2} itself.
inline ProofTree d_edge_proof(const GranuleId& h1, const GranuleId& h2, const Schema& schema)
{
    Constraint edge = Constraint::disj(h1, h2);
    if (schema.constraints().count(edge))
        return ProofTree::axiom(edge);
    if (h1.is_bottom())
        return ProofTree::rule(RuleId::T1, Substitution{{1, Term(h2)}}, {});
    if (h2.is_bottom())
        return ProofTree::rule(RuleId::T1, Substitution{{1, Term(h1)}}, {});
    throw error("disjointness edge " + to_string(edge) + " is neither declared nor a tautology");
}

} // namespace detail

// Left-linear subsumption proof along a path: d-steps folded with (I2).
inline ProofTree left_linear(const SubPath& path, const Schema& schema)
{
    if (path.length() < 2)
        throw error("left_linear: path must have at least two vertices");
    const auto& v = path.vertices;
    ProofTree acc = detail::sub_step_proof(v[0], v[1], schema);
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        ProofTree step = detail::sub_step_proof(v[i], v[i + 1], schema);
        Substitution s{{1, Term(v[0])}, {2, Term(v[i])}, {3, Term(v[i + 1])}};
        acc = ProofTree::rule(RuleId::I2, std::move(s), {std::move(acc), std::move(step)});
    }
    return acc;
}

namespace detail {

// The protected-pair proof shape: (M1) applications hang the two subsumption
// chains onto the disjointness edge.  Identity paths contribute no step.
inline ProofTree protected_disj_tree(const GranuleId& g1, const GranuleId& g2,
                                     const Protector& prot, const Schema& schema)
{
    ProofTree inner = d_edge_proof(prot.first, prot.second, schema);
    if (!prot.path2.is_identity()) {
        ProofTree chain = left_linear(prot.path2, schema);
        Substitution s{{1, Term(g2)}, {2, Term(prot.second)}, {3, Term(prot.first)}};
        inner = ProofTree::rule(RuleId::M1, std::move(s), {std::move(chain), std::move(inner)});
    }
    if (!prot.path1.is_identity()) {
        ProofTree chain = left_linear(prot.path1, schema);
        Substitution s{{1, Term(g1)}, {2, Term(prot.first)}, {3, Term(g2)}};
        inner = ProofTree::rule(RuleId::M1, std::move(s), {std::move(chain), std::move(inner)});
    }
    return inner;
}

} // namespace detail

// Proof of Disj(g1,g2) from the positive part: the declared constraint, the
// bottom tautology, or a one-/two-path proof over a protector.
inline ProofTree disjointness_proof(const GranuleId& g1, const GranuleId& g2, const SmasGraph& graph,
                                    const Schema& schema)
{
    Constraint goal = Constraint::disj(g1, g2);
    if (schema.constraints().count(goal))
        return ProofTree::axiom(goal);
    if (g1.is_bottom() || g2.is_bottom())
        return detail::d_edge_proof(g1, g2, schema);
    if (g1 == g2)
        throw error("disjointness_proof: " + to_string(goal) + " is not entailed on satisfiable schemas");
    auto prot = graph.find_protector(g1, g2);
    if (!prot)
        throw error("disjointness_proof: " + to_string(goal) + " is not entailed");
    return detail::protected_disj_tree(g1, g2, *prot, schema);
}

// Proof of FALSE from an unsatisfiable positive part; the last step is (U1).
inline ProofTree unsat_proof(const Schema& schema, const SmasGraph& graph)
{
    auto witness = positive_unsat_witness(graph);
    if (!witness)
        throw error("unsat_proof: the positive part is satisfiable");
    ProofTree disj =
        detail::protected_disj_tree(witness->apex, witness->apex, witness->protector, schema);
    return ProofTree::rule(RuleId::U1, Substitution{{1, Term(witness->apex)}}, {std::move(disj)});
}

inline ProofTree unsat_proof(const Schema& schema)
{
    return unsat_proof(schema, SmasGraph::build(schema.positive_part()));
}

// ---------------------------------------------------------------------------
// Contrapositioning

namespace detail {

inline std::size_t count_axiom(const ProofTree& t, const Constraint& c)
{
    if (t.is_axiom())
        return *t.consequent() == c ? 1 : 0;
    std::size_t n = 0;
    for (const auto& child : t.children())
        n += count_axiom(child, c);
    return n;
}

inline bool find_leaf_path(const ProofTree& t, const Constraint& leaf,
                           std::vector<std::pair<const ProofTree*, std::size_t>>& path)
{
    for (std::size_t i = 0; i < t.children().size(); ++i) {
        const ProofTree& child = t.children()[i];
        if (child.is_axiom() && *child.consequent() == leaf) {
            path.push_back({&t, i});
            return true;
        }
        if (child.is_rule() && find_leaf_path(child, leaf, path)) {
            path.push_back({&t, i});
            return true;
        }
    }
    return false;
}

inline std::size_t antecedent_position(const ProofTree& node, const Constraint& formula)
{
    const RuleSchematic& schematic = schematic_of(node.rule_id());
    for (std::size_t i = 0; i < schematic.antecedents.size(); ++i)
        if (instantiate(schematic.antecedents[i], node.substitution()) == formula)
            return i;
    throw error("contrapose: " + to_string(formula) + " is not an antecedent of " +
                std::string(to_string(node.rule_id())));
}

} // namespace detail

// Swap the designated axiom leaf with the root consequent.  Every rule on
// the leaf-to-root path is replaced by its swap; the negated consequent
// enters as a new axiom (omitted when the tree concludes FALSE).  The result
// proves the negated leaf from (antecedents \ {leaf}) u {negated consequent}.
inline ProofTree contrapose(const ProofTree& t, const Constraint& leaf)
{
    std::size_t occurrences = detail::count_axiom(t, leaf);
    if (occurrences == 0)
        throw error("contrapose: " + to_string(leaf) + " is not an antecedent of the proof");
    if (occurrences > 1)
        throw error("contrapose: " + to_string(leaf) + " occurs more than once as an antecedent");

    if (t.is_axiom())
        return ProofTree::axiom(leaf.negated());

    // Path nodes from the leaf's parent up to the root.
    std::vector<std::pair<const ProofTree*, std::size_t>> path;
    if (!detail::find_leaf_path(t, leaf, path))
        throw error("contrapose: leaf not found"); // unreachable after the count check

    // Start with the negated root consequent (absent for FALSE) and wrap the
    // swapped rules around it from the old root downwards; the final wrap,
    // for the rule that owned the leaf, becomes the new root.
    std::optional<ProofTree> grown;
    if (t.consequent())
        grown = ProofTree::axiom(t.consequent()->negated());
    std::reverse(path.begin(), path.end()); // old root first
    for (const auto& [node, child_index] : path) {
        const Constraint& swapped_antecedent = *node->children()[child_index].consequent();
        std::size_t pos = detail::antecedent_position(*node, swapped_antecedent);
        RuleId swapped = swap_rule(node->rule_id(), pos);
        std::vector<ProofTree> children;
        for (std::size_t i = 0; i < node->children().size(); ++i)
            if (i != child_index)
                children.push_back(node->children()[i]);
        if (grown)
            children.push_back(std::move(*grown));
        grown = ProofTree::rule(swapped, node->substitution(), std::move(children));
    }
    return std::move(*grown);
}

// ---------------------------------------------------------------------------
// Rendering

namespace detail {

// Instance labels in post-order, matching the order rules fire.
inline void label_rules(const ProofTree& t, std::vector<const ProofTree*>& order)
{
    for (const auto& c : t.children())
        label_rules(c, order);
    if (t.is_rule())
        order.push_back(&t);
}

inline std::size_t label_of(const ProofTree& t, const std::vector<const ProofTree*>& order)
{
    for (std::size_t i = 0; i < order.size(); ++i)
        if (order[i] == &t)
            return i + 1;
    return 0;
}

inline std::string node_formula(const ProofTree& t)
{
    if (t.is_true_leaf())
        return "TRUE";
    if (!t.consequent())
        return "FALSE";
    return to_string(*t.consequent());
}

inline void render_text_node(const ProofTree& t, const std::vector<const ProofTree*>& order,
                             std::size_t depth, std::string& out)
{
    out.append(depth * 2, ' ');
    out += node_formula(t);
    if (t.is_axiom())
        out += "  [axiom]";
    else if (t.is_rule())
        out += "  [" + std::string(to_string(t.rule_id())) + " d" +
               std::to_string(label_of(t, order)) + "]";
    out += "\n";
    for (const auto& c : t.children())
        render_text_node(c, order, depth + 1, out);
}

inline void render_dot_node(const ProofTree& t, const std::vector<const ProofTree*>& order,
                            std::size_t& next_id, std::string& nodes, std::string& edges)
{
    std::size_t id = next_id++;
    std::string shape = t.is_axiom() ? ", shape=box" : "";
    nodes += "  n" + std::to_string(id) + " [label=\"" + node_formula(t) + "\"" + shape + "];\n";
    std::string label = t.is_rule() ? std::string(to_string(t.rule_id())) + " d" +
                                          std::to_string(label_of(t, order))
                                    : "";
    for (const auto& c : t.children()) {
        std::size_t child_id = next_id;
        render_dot_node(c, order, next_id, nodes, edges);
        edges += "  n" + std::to_string(id) + " -> n" + std::to_string(child_id) + " [label=\"" +
                 label + "\"];\n";
    }
}

} // namespace detail

inline std::string render_text(const ProofTree& t)
{
    std::vector<const ProofTree*> order;
    detail::label_rules(t, order);
    std::string out;
    detail::render_text_node(t, order, 0, out);
    return out;
}

inline std::string render_dot(const ProofTree& t)
{
    std::vector<const ProofTree*> order;
    detail::label_rules(t, order);
    std::string nodes, edges;
    std::size_t next_id = 0;
    detail::render_dot_node(t, order, next_id, nodes, edges);
    return "digraph proof {\n" + nodes + edges + "}\n";
}

} // namespace granule

#endif // GRANULE_PROOF_HPP
