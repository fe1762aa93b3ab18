// granule/graph.hpp — the graph of a schema and its path machinery.
//
// Vertices are the granules of the universe.  Directed subsumption edges
// come from the declared positive Sub constraints plus the tautology
// families (self-loops, bottom-to-anything, anything-to-top); undirected
// disjointness edges come from the declared positive Disj constraints plus
// the bottom-against-anything tautologies.  Negative constraints play no
// role here.
//
// Positive subsumption entailment is reachability over subsumption edges;
// positive disjointness entailment is the protected-pair criterion: both
// granules reach the two ends of some disjointness edge.  Tautology edges
// are materialized so both checks are plain graph queries.

#ifndef GRANULE_GRAPH_HPP
#define GRANULE_GRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "core.hpp"

namespace granule {

// A walk along subsumption edges.  Paths of the paper have at least two
// vertices; a single-vertex path is allowed here as the identity walk, which
// protector searches use for "already there" endpoints.
struct SubPath {
    std::vector<GranuleId> vertices;

    static SubPath identity(GranuleId g) { return SubPath{{std::move(g)}}; }

    std::size_t length() const { return vertices.size(); }
    bool is_identity() const { return vertices.size() == 1; }
    const GranuleId& from() const { return vertices.front(); }
    const GranuleId& to() const { return vertices.back(); }

    // The Sub constraints read off consecutive vertex pairs.
    std::vector<Constraint> step_constraints() const
    {
        std::vector<Constraint> out;
        for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
            out.push_back(Constraint::sub(vertices[i], vertices[i + 1]));
        return out;
    }

    bool operator==(const SubPath&) const = default;
};

// Reduced form: length two, or no repeated granule with bottom absent.
inline bool is_reduced(const SubPath& p)
{
    if (p.length() < 2)
        return false;
    if (p.length() == 2)
        return true;
    std::vector<GranuleId> seen;
    for (const auto& g : p.vertices) {
        if (g.is_bottom())
            return false;
        if (std::find(seen.begin(), seen.end(), g) != seen.end())
            return false;
        seen.push_back(g);
    }
    return true;
}

// Cycle removal: collapse equal endpoints, then cut every internal cycle.
inline SubPath reduce_path(const SubPath& p)
{
    if (p.length() < 2)
        throw error("reduce_path: path must have at least two vertices");
    std::vector<GranuleId> v = p.vertices;
    if (v.size() > 2 && v.front() == v.back())
        return SubPath{{v.front(), v.back()}};
    bool changed = true;
    while (changed && v.size() > 2) {
        changed = false;
        for (std::size_t j1 = 0; j1 < v.size() && !changed; ++j1) {
            for (std::size_t j2 = v.size(); j2-- > j1 + 1 && !changed;) {
                if (v[j1] == v[j2] && !(j1 == 0 && j2 == v.size() - 1)) {
                    v.erase(v.begin() + static_cast<std::ptrdiff_t>(j1) + 1,
                            v.begin() + static_cast<std::ptrdiff_t>(j2) + 1);
                    changed = true;
                }
            }
        }
    }
    return SubPath{std::move(v)};
}

// A disjointness edge {first,second} together with reduced subsumption paths
// leading into its two ends.  For the pair {g1,g2} being protected, path1
// runs from g1 to first and path2 from g2 to second.
struct Protector {
    GranuleId first;
    GranuleId second;
    SubPath path1;
    SubPath path2;
};

// Witness that the positive part is unsatisfiable through some granule: the
// apex granule reaches both ends of a disjointness edge, with the two paths
// sharing no step constraint (the common suffix has been trimmed away, which
// may move the apex below the granule originally asked about).
struct SelfDisjointWitness {
    GranuleId apex;
    Protector protector; // paths run from apex
};

class SmasGraph {
public:
    static SmasGraph build(const Schema& schema)
    {
        SmasGraph g;
        for (const auto& v : schema.universe())
            g.vertices_.push_back(v);
        std::sort(g.vertices_.begin(), g.vertices_.end());
        const std::size_t n = g.vertices_.size();
        g.s_adj_.assign(n, {});
        std::vector<std::vector<bool>> s_seen(n, std::vector<bool>(n, false));
        std::vector<std::vector<bool>> d_seen(n, std::vector<bool>(n, false));

        auto add_s = [&](std::size_t a, std::size_t b) {
            if (!s_seen[a][b]) {
                s_seen[a][b] = true;
                g.s_adj_[a].push_back(b);
            }
        };
        auto add_d = [&](std::size_t a, std::size_t b) {
            if (a > b)
                std::swap(a, b);
            if (!d_seen[a][b]) {
                d_seen[a][b] = true;
                g.d_edges_.push_back({a, b});
            }
        };

        const std::size_t bot = 0, top = 1; // canonical order puts them first
        for (std::size_t i = 0; i < n; ++i) {
            add_s(i, i);
            add_s(bot, i);
            add_s(i, top);
            add_d(bot, i);
        }
        for (const auto& c : schema.constraints()) {
            if (!c.is_positive())
                continue;
            std::size_t a = g.index_of(c.left());
            std::size_t b = g.index_of(c.right());
            if (c.pred() == Pred::Sub)
                add_s(a, b);
            else
                add_d(a, b);
        }
        for (auto& adj : g.s_adj_)
            std::sort(adj.begin(), adj.end());
        std::sort(g.d_edges_.begin(), g.d_edges_.end());
        return g;
    }

    const std::vector<GranuleId>& vertices() const { return vertices_; }

    bool has_s_edge(const GranuleId& a, const GranuleId& b) const
    {
        std::size_t i = index_of(a), j = index_of(b);
        return std::binary_search(s_adj_[i].begin(), s_adj_[i].end(), j);
    }

    bool has_d_edge(const GranuleId& a, const GranuleId& b) const
    {
        std::size_t i = index_of(a), j = index_of(b);
        if (i > j)
            std::swap(i, j);
        return std::binary_search(d_edges_.begin(), d_edges_.end(), std::pair<std::size_t, std::size_t>{i, j});
    }

    std::vector<std::pair<GranuleId, GranuleId>> s_edges() const
    {
        std::vector<std::pair<GranuleId, GranuleId>> out;
        for (std::size_t i = 0; i < s_adj_.size(); ++i)
            for (std::size_t j : s_adj_[i])
                out.push_back({vertices_[i], vertices_[j]});
        return out;
    }

    std::vector<std::pair<GranuleId, GranuleId>> d_edges() const
    {
        std::vector<std::pair<GranuleId, GranuleId>> out;
        for (auto [i, j] : d_edges_)
            out.push_back({vertices_[i], vertices_[j]});
        return out;
    }

    // Shortest reduced subsumption path from g1 to g2, if g2 is reachable.
    // BFS over canonically sorted adjacency; bottom is never used as an
    // interior vertex, so paths stay reduced whenever one exists.
    std::optional<SubPath> sub_star(const GranuleId& g1, const GranuleId& g2) const
    {
        std::size_t src = index_of(g1), dst = index_of(g2);
        if (src == dst)
            return SubPath{{g1, g2}}; // self-loop edge, always present
        return path_from_parents(bfs_parents(src), src, dst);
    }

    bool reaches(const GranuleId& g1, const GranuleId& g2) const
    {
        return sub_star(g1, g2).has_value();
    }

    // The protected-pair test for a doublet.  Deterministic choice: minimal
    // total edge count, ties by the canonical order of the protector pair.
    std::optional<Protector> find_protector(const GranuleId& g1, const GranuleId& g2) const
    {
        if (g1 == g2)
            throw error("find_protector: expects a doublet, got a self-pair");
        return best_protector(index_of(g1), index_of(g2), /*exclude_shared=*/false);
    }

    // Unsatisfiability witness through g: a disjointness edge whose two ends
    // g reaches by constraint-disjoint paths.  Trimming the common suffix may
    // lower the apex from g to a deeper granule.
    std::optional<SelfDisjointWitness> self_disjoint_witness(const GranuleId& g) const
    {
        if (g.is_bottom())
            throw error("self_disjoint_witness: bottom is disjoint from itself vacuously");
        std::size_t gi = index_of(g);
        auto cand = best_protector(gi, gi, /*exclude_shared=*/true);
        if (!cand)
            return std::nullopt;
        return trim_witness(std::move(*cand));
    }

    // DOT rendering: subsumption edges solid and directed, disjointness edges
    // dashed and undirected.
    std::string to_dot() const
    {
        std::string out = "digraph smas {\n";
        for (const auto& v : vertices_)
            out += "  \"" + v.name() + "\";\n";
        for (std::size_t i = 0; i < s_adj_.size(); ++i)
            for (std::size_t j : s_adj_[i])
                out += "  \"" + vertices_[i].name() + "\" -> \"" + vertices_[j].name() + "\";\n";
        for (auto [i, j] : d_edges_)
            out += "  \"" + vertices_[i].name() + "\" -> \"" + vertices_[j].name() +
                   "\" [dir=none, style=dashed];\n";
        out += "}\n";
        return out;
    }

    std::size_t index_of(const GranuleId& g) const
    {
        auto it = std::lower_bound(vertices_.begin(), vertices_.end(), g);
        if (it == vertices_.end() || *it != g)
            throw error("unknown granule '" + g.name() + "'");
        return static_cast<std::size_t>(it - vertices_.begin());
    }

private:
    static constexpr std::size_t kUnreached = static_cast<std::size_t>(-1);

    // Parent array of a BFS that never expands through bottom.
    std::vector<std::size_t> bfs_parents(std::size_t src) const
    {
        std::vector<std::size_t> parent(vertices_.size(), kUnreached);
        parent[src] = src;
        std::deque<std::size_t> queue{src};
        while (!queue.empty()) {
            std::size_t u = queue.front();
            queue.pop_front();
            if (u != src && vertices_[u].is_bottom())
                continue; // bottom can end a path but never continues one
            for (std::size_t v : s_adj_[u]) {
                if (parent[v] == kUnreached && v != src) {
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        return parent;
    }

    std::optional<SubPath> path_from_parents(const std::vector<std::size_t>& parent,
                                             std::size_t src, std::size_t dst) const
    {
        if (src == dst)
            return SubPath::identity(vertices_[src]);
        if (parent[dst] == kUnreached)
            return std::nullopt;
        std::vector<GranuleId> rev;
        for (std::size_t v = dst; v != src; v = parent[v])
            rev.push_back(vertices_[v]);
        rev.push_back(vertices_[src]);
        std::reverse(rev.begin(), rev.end());
        return SubPath{std::move(rev)};
    }

    static std::size_t edge_count(const SubPath& p) { return p.length() - 1; }

    std::optional<Protector> best_protector(std::size_t a, std::size_t b, bool exclude_shared) const
    {
        auto pa = bfs_parents(a);
        auto pb = (a == b) ? pa : bfs_parents(b);
        std::optional<Protector> best;
        std::size_t best_cost = kUnreached;
        auto consider = [&](std::size_t h1, std::size_t h2) {
            if (pa[h1] == kUnreached || pb[h2] == kUnreached)
                return;
            auto p1 = path_from_parents(pa, a, h1);
            auto p2 = path_from_parents(pb, b, h2);
            if (!p1 || !p2)
                return;
            if (exclude_shared && h1 == h2 && vertices_[h1].is_bottom())
                return; // the singleton bottom edge never yields a usable apex
            std::size_t cost = edge_count(*p1) + edge_count(*p2);
            if (cost < best_cost) {
                best_cost = cost;
                best = Protector{vertices_[h1], vertices_[h2], std::move(*p1), std::move(*p2)};
            }
        };
        for (auto [i, j] : d_edges_) {
            consider(i, j);
            if (i != j)
                consider(j, i);
        }
        return best;
    }

    // Make the two witness paths constraint-disjoint: move the apex to the
    // last vertex of path1 that also occurs in path2 and keep the suffixes.
    static SelfDisjointWitness trim_witness(Protector p)
    {
        std::size_t cut1 = 0;
        std::size_t cut2 = 0;
        for (std::size_t i = 0; i < p.path1.vertices.size(); ++i) {
            const auto& v = p.path1.vertices[i];
            auto it = std::find(p.path2.vertices.begin(), p.path2.vertices.end(), v);
            if (it != p.path2.vertices.end()) {
                cut1 = i;
                cut2 = static_cast<std::size_t>(it - p.path2.vertices.begin());
            }
        }
        GranuleId apex = p.path1.vertices[cut1];
        p.path1.vertices.erase(p.path1.vertices.begin(),
                               p.path1.vertices.begin() + static_cast<std::ptrdiff_t>(cut1));
        p.path2.vertices.erase(p.path2.vertices.begin(),
                               p.path2.vertices.begin() + static_cast<std::ptrdiff_t>(cut2));
        return SelfDisjointWitness{std::move(apex), std::move(p)};
    }

    std::vector<GranuleId> vertices_;
    std::vector<std::vector<std::size_t>> s_adj_;
    std::vector<std::pair<std::size_t, std::size_t>> d_edges_;
};

// True iff the positive part of the schema has no full model: some non-bottom
// granule is provably self-disjoint.
inline std::optional<SelfDisjointWitness> positive_unsat_witness(const SmasGraph& g)
{
    for (const auto& v : g.vertices()) {
        if (v.is_bottom())
            continue;
        if (auto w = g.self_disjoint_witness(v))
            return w;
    }
    return std::nullopt;
}

} // namespace granule

#endif // GRANULE_GRAPH_HPP
