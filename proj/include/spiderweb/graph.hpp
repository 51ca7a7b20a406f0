#pragma once

// Rooted trees, spider's webs, exact graph distances and structural validation.
//
// Vertices are dense ids stored level-major: the root is 0, then every vertex of
// level 1, then level 2, ... so that a level is a contiguous id range. Tree edges
// are implied by parent links; every other edge is kept in a sorted global list
// and in per-vertex sorted adjacency rows. Edges joining different levels are
// representable (the validator must be able to report them) but never produced
// by the generators.

#include "spiderweb/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace spiderweb {

using VertexId = std::uint32_t;
using Level = std::uint32_t;

inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();

/// Undirected edge, normalised so that a < b.
struct Edge {
    VertexId a = 0;
    VertexId b = 0;

    constexpr Edge() = default;
    constexpr Edge(VertexId x, VertexId y) noexcept : a(x < y ? x : y), b(x < y ? y : x) {}

    friend constexpr bool operator==(const Edge&, const Edge&) = default;
    friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

class RootedTree {
public:
    RootedTree() : RootedTree(std::vector<VertexId>{kNoVertex}) {}

    /// parent[0] must be kNoVertex; every other parent id must be smaller than the
    /// child id and levels must be non-decreasing in id (level-major storage).
    explicit RootedTree(std::vector<VertexId> parent) : parent_(std::move(parent)) {
        if (parent_.empty()) throw StructuralError("rooted tree needs at least the root");
        if (parent_[0] != kNoVertex) throw StructuralError("vertex 0 must be the root");
        const std::size_t n = parent_.size();
        if (n >= kNoVertex) throw StructuralError("too many vertices");
        level_.assign(n, 0);
        std::vector<VertexId> child_count(n, 0);
        for (std::size_t v = 1; v < n; ++v) {
            const VertexId p = parent_[v];
            if (p == kNoVertex || p >= v) {
                throw StructuralError("vertex " + std::to_string(v) + " has parent " +
                                      (p == kNoVertex ? std::string("none") : std::to_string(p)) +
                                      "; parents must precede children");
            }
            level_[v] = level_[p] + 1;
            if (level_[v] < level_[v - 1]) {
                throw StructuralError("vertex " + std::to_string(v) + " breaks level-major ordering");
            }
            ++child_count[p];
        }
        child_offset_.assign(n + 1, 0);
        for (std::size_t v = 0; v < n; ++v) child_offset_[v + 1] = child_offset_[v] + child_count[v];
        child_ids_.assign(n - 1, 0);
        std::vector<VertexId> fill(child_offset_.begin(), child_offset_.end() - 1);
        for (std::size_t v = 1; v < n; ++v) child_ids_[fill[parent_[v]]++] = static_cast<VertexId>(v);

        const Level depth = level_.back();
        level_offset_.assign(depth + 2, 0);
        for (std::size_t v = 0; v < n; ++v) ++level_offset_[level_[v] + 1];
        std::partial_sum(level_offset_.begin(), level_offset_.end(), level_offset_.begin());
    }

    std::size_t size() const noexcept { return parent_.size(); }
    VertexId root() const noexcept { return 0; }
    VertexId parent(VertexId v) const { return parent_[v]; }
    Level level(VertexId v) const { return level_[v]; }
    Level depth() const noexcept { return level_.back(); }

    std::span<const VertexId> children(VertexId v) const {
        return {child_ids_.data() + child_offset_[v], child_offset_[v + 1] - child_offset_[v]};
    }

    /// First id of level k; level_end(k) is one past its last id.
    VertexId level_begin(Level k) const { return k > depth() ? static_cast<VertexId>(size()) : level_offset_[k]; }
    VertexId level_end(Level k) const { return k > depth() ? static_cast<VertexId>(size()) : level_offset_[k + 1]; }
    std::size_t level_size(Level k) const { return level_end(k) - level_begin(k); }

    /// p^k(v). Requires k <= level(v).
    VertexId ancestor(VertexId v, Level k) const {
        for (; k > 0; --k) v = parent_[v];
        return v;
    }

    /// Last common vertex of the root-to-x and root-to-y tree geodesics.
    VertexId confluent(VertexId x, VertexId y) const {
        while (level_[x] > level_[y]) x = parent_[x];
        while (level_[y] > level_[x]) y = parent_[y];
        while (x != y) {
            x = parent_[x];
            y = parent_[y];
        }
        return x;
    }

    std::uint32_t tree_distance(VertexId x, VertexId y) const {
        const VertexId c = confluent(x, y);
        return level_[x] + level_[y] - 2 * level_[c];
    }

    std::span<const VertexId> parents() const noexcept { return parent_; }
    std::span<const Level> levels() const noexcept { return level_; }

private:
    std::vector<VertexId> parent_;
    std::vector<Level> level_;
    std::vector<std::uint32_t> child_offset_;
    std::vector<VertexId> child_ids_;
    std::vector<VertexId> level_offset_;
};

/// A rooted tree plus extra ("horizontal") edges. Immutable once built.
class SpiderWeb {
public:
    SpiderWeb() = default;

    explicit SpiderWeb(RootedTree tree) : SpiderWeb(std::move(tree), {}) {}

    /// Throws StructuralError on out-of-range ids, self-loops, duplicates, or an
    /// extra edge that repeats a tree edge.
    SpiderWeb(RootedTree tree, std::vector<Edge> horizontal)
        : tree_(std::move(tree)), edges_(std::move(horizontal)) {
        const std::size_t n = tree_.size();
        for (auto& e : edges_) {
            e = Edge(e.a, e.b);
            if (e.b >= n) throw StructuralError("edge endpoint " + std::to_string(e.b) + " out of range");
            if (e.a == e.b) throw StructuralError("self-loop at vertex " + std::to_string(e.a));
            if (tree_.parent(e.b) == e.a) {
                throw StructuralError("edge {" + std::to_string(e.a) + "," + std::to_string(e.b) +
                                      "} duplicates a tree edge");
            }
        }
        std::sort(edges_.begin(), edges_.end());
        const auto dup = std::adjacent_find(edges_.begin(), edges_.end());
        if (dup != edges_.end()) {
            throw StructuralError("duplicate edge {" + std::to_string(dup->a) + "," + std::to_string(dup->b) + "}");
        }
        std::vector<std::uint32_t> degree(n, 0);
        for (const auto& e : edges_) {
            ++degree[e.a];
            ++degree[e.b];
        }
        row_offset_.assign(n + 1, 0);
        for (std::size_t v = 0; v < n; ++v) row_offset_[v + 1] = row_offset_[v] + degree[v];
        row_ids_.assign(row_offset_.back(), 0);
        std::vector<std::uint64_t> fill(row_offset_.begin(), row_offset_.end() - 1);
        for (const auto& e : edges_) {
            row_ids_[fill[e.a]++] = e.b;
            row_ids_[fill[e.b]++] = e.a;
        }
        for (std::size_t v = 0; v < n; ++v) {
            std::sort(row_ids_.begin() + static_cast<std::ptrdiff_t>(row_offset_[v]),
                      row_ids_.begin() + static_cast<std::ptrdiff_t>(row_offset_[v + 1]));
        }
    }

    const RootedTree& tree() const noexcept { return tree_; }
    std::size_t vertex_count() const noexcept { return tree_.size(); }
    std::size_t horizontal_edge_count() const noexcept { return edges_.size(); }
    std::size_t edge_count() const noexcept { return tree_.size() - 1 + edges_.size(); }
    Level level(VertexId v) const { return tree_.level(v); }
    VertexId parent(VertexId v) const { return tree_.parent(v); }

    std::span<const Edge> horizontal_edges() const noexcept { return edges_; }

    std::span<const VertexId> horizontal_neighbors(VertexId v) const {
        return {row_ids_.data() + row_offset_[v], static_cast<std::size_t>(row_offset_[v + 1] - row_offset_[v])};
    }

    bool horizontally_adjacent(VertexId x, VertexId y) const {
        const auto row = horizontal_neighbors(x);
        return std::binary_search(row.begin(), row.end(), y);
    }

    bool adjacent(VertexId x, VertexId y) const {
        if (x == y) return false;
        if ((x != 0 && tree_.parent(x) == y) || (y != 0 && tree_.parent(y) == x)) return true;
        return horizontally_adjacent(x, y);
    }

    std::size_t valence(VertexId v) const {
        return (v == 0 ? 0 : 1) + tree_.children(v).size() + horizontal_neighbors(v).size();
    }

    /// Calls fn(neighbour) for the parent, the children, then horizontal neighbours.
    template <class Fn>
    void for_each_neighbor(VertexId v, Fn&& fn) const {
        if (v != 0) fn(tree_.parent(v));
        for (VertexId c : tree_.children(v)) fn(c);
        for (VertexId h : horizontal_neighbors(v)) fn(h);
    }

    template <class Fn>
    void for_each_tree_neighbor(VertexId v, Fn&& fn) const {
        if (v != 0) fn(tree_.parent(v));
        for (VertexId c : tree_.children(v)) fn(c);
    }

private:
    RootedTree tree_;
    std::vector<Edge> edges_;
    std::vector<std::uint64_t> row_offset_{0, 0};
    std::vector<VertexId> row_ids_;
};

// ---------------------------------------------------------------------------
// Distances

enum class EdgeSet { all, tree_only };

/// Graph distances from one source. kUnreachable only appears for vertices
/// beyond a radius cut-off; on a full search of a valid graph it signals a bug.
struct DistanceField {
    static constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

    VertexId source = 0;
    std::vector<std::uint32_t> dist;

    std::uint32_t operator[](VertexId v) const { return dist[v]; }
    std::size_t size() const noexcept { return dist.size(); }
};

/// Reusable breadth-first search with radius cut-off. Not thread-safe; use one
/// instance per thread.
class BoundedBfs {
public:
    explicit BoundedBfs(const SpiderWeb& g, EdgeSet edges = EdgeSet::all)
        : g_(&g), edges_(edges), stamp_(g.vertex_count(), 0), dist_(g.vertex_count(), 0) {
        queue_.reserve(g.vertex_count());
    }

    /// Visits every vertex within distance `radius` of `source` in BFS order,
    /// calling visit(vertex, distance). Returns the number of vertices visited.
    template <class Visit>
    std::size_t run(VertexId source, std::uint32_t radius, Visit&& visit) {
        if (++epoch_ == 0) {
            std::fill(stamp_.begin(), stamp_.end(), 0);
            epoch_ = 1;
        }
        queue_.clear();
        queue_.push_back(source);
        stamp_[source] = epoch_;
        dist_[source] = 0;
        for (std::size_t head = 0; head < queue_.size(); ++head) {
            const VertexId v = queue_[head];
            const std::uint32_t d = dist_[v];
            visit(v, d);
            if (d == radius) continue;
            auto relax = [&](VertexId u) {
                if (stamp_[u] != epoch_) {
                    stamp_[u] = epoch_;
                    dist_[u] = d + 1;
                    queue_.push_back(u);
                }
            };
            if (edges_ == EdgeSet::all) {
                g_->for_each_neighbor(v, relax);
            } else {
                g_->for_each_tree_neighbor(v, relax);
            }
        }
        return queue_.size();
    }

    /// Distance of v in the most recent run, or kUnreachable if not reached.
    std::uint32_t distance(VertexId v) const {
        return stamp_[v] == epoch_ ? dist_[v] : DistanceField::kUnreachable;
    }

    const SpiderWeb& graph() const noexcept { return *g_; }

private:
    const SpiderWeb* g_;
    EdgeSet edges_;
    std::uint32_t epoch_ = 0;
    std::vector<std::uint32_t> stamp_;
    std::vector<std::uint32_t> dist_;
    std::vector<VertexId> queue_;
};

inline DistanceField bfs_distances(const SpiderWeb& g, VertexId source, EdgeSet edges = EdgeSet::all) {
    if (source >= g.vertex_count()) throw DomainError("source vertex out of range");
    DistanceField field{source, std::vector<std::uint32_t>(g.vertex_count(), DistanceField::kUnreachable)};
    BoundedBfs bfs(g, edges);
    bfs.run(source, DistanceField::kUnreachable - 1, [&](VertexId v, std::uint32_t d) { field.dist[v] = d; });
    return field;
}

/// Closed ball {y : d(y, center) <= r}, sorted by id.
inline std::vector<VertexId> ball(const SpiderWeb& g, VertexId center, std::uint32_t r) {
    if (center >= g.vertex_count()) throw DomainError("center vertex out of range");
    std::vector<VertexId> out;
    BoundedBfs bfs(g);
    bfs.run(center, r, [&](VertexId v, std::uint32_t) { out.push_back(v); });
    std::sort(out.begin(), out.end());
    return out;
}

/// Vertices at distance exactly p from x and at level exactly k, sorted by id.
inline std::vector<VertexId> sphere_slice(const SpiderWeb& g, VertexId x, std::uint32_t p, Level k) {
    if (x >= g.vertex_count()) throw DomainError("vertex out of range");
    std::vector<VertexId> out;
    BoundedBfs bfs(g);
    bfs.run(x, p, [&](VertexId v, std::uint32_t d) {
        if (d == p && g.level(v) == k) out.push_back(v);
    });
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Validation

enum class Rule {
    same_level,             // extra edges must join vertices of equal level
    predecessor_adjacency,  // predecessors of a horizontal edge coincide or are adjacent
};

inline const char* to_string(Rule r) {
    return r == Rule::same_level ? "same_level" : "predecessor_adjacency";
}

struct Violation {
    Rule rule;
    Edge edge;
    Level level = 0;  // level of edge.b
    Level k = 0;      // failing predecessor order (predecessor_adjacency only)

    friend bool operator==(const Violation&, const Violation&) = default;
};

namespace detail {

inline bool predecessors_ok(const SpiderWeb& g, VertexId x, VertexId y) {
    return x == y || g.horizontally_adjacent(x, y);
}

}  // namespace detail

/// Every extra edge violating the spider's web rules, in edge order.
inline std::vector<Violation> validate_spiderweb(const SpiderWeb& g) {
    std::vector<Violation> out;
    for (const Edge& e : g.horizontal_edges()) {
        const Level la = g.level(e.a), lb = g.level(e.b);
        if (la != lb) {
            out.push_back({Rule::same_level, e, lb, 0});
            continue;
        }
        if (la >= 1 && !detail::predecessors_ok(g, g.parent(e.a), g.parent(e.b))) {
            out.push_back({Rule::predecessor_adjacency, e, la, 1});
        }
    }
    return out;
}

/// Quasi-spider's web check with threshold m: for each horizontal edge at level
/// n >= m, the k-th predecessors must coincide or be adjacent for every k in
/// [m, n]. One violation per edge, tagged with the smallest failing k.
inline std::vector<Violation> validate_quasi_spiderweb(const SpiderWeb& g, Level m) {
    if (m < 1) throw DomainError("quasi-spider's web threshold must be >= 1");
    std::vector<Violation> out;
    const RootedTree& t = g.tree();
    for (const Edge& e : g.horizontal_edges()) {
        const Level la = g.level(e.a), lb = g.level(e.b);
        if (la != lb) {
            out.push_back({Rule::same_level, e, lb, 0});
            continue;
        }
        if (la < m) continue;
        VertexId x = t.ancestor(e.a, m), y = t.ancestor(e.b, m);
        for (Level k = m; k <= la && x != y; ++k) {
            if (!g.horizontally_adjacent(x, y)) {
                out.push_back({Rule::predecessor_adjacency, e, la, k});
                break;
            }
            x = t.parent(x);
            y = t.parent(y);
        }
    }
    return out;
}

}  // namespace spiderweb
