#pragma once

// Slow, deliberately simple implementations used to cross-check the fast ones.
// Nothing here shares code with the BFS, geodesic or maximal-operator engines:
// adjacency is rebuilt from the parent array and the edge list.

#include "spiderweb/errors.hpp"
#include "spiderweb/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

namespace spiderweb::reference {

using Adjacency = std::vector<std::vector<VertexId>>;

inline Adjacency adjacency(const SpiderWeb& g, bool with_horizontal = true) {
    Adjacency adj(g.vertex_count());
    const auto parents = g.tree().parents();
    for (VertexId v = 1; v < parents.size(); ++v) {
        adj[v].push_back(parents[v]);
        adj[parents[v]].push_back(v);
    }
    if (with_horizontal) {
        for (const Edge& e : g.horizontal_edges()) {
            adj[e.a].push_back(e.b);
            adj[e.b].push_back(e.a);
        }
    }
    return adj;
}

inline constexpr std::uint32_t kFar = std::numeric_limits<std::uint32_t>::max();

inline std::vector<std::uint32_t> distances(const Adjacency& adj, VertexId s) {
    std::vector<std::uint32_t> d(adj.size(), kFar);
    std::queue<VertexId> q;
    d[s] = 0;
    q.push(s);
    while (!q.empty()) {
        const VertexId v = q.front();
        q.pop();
        for (VertexId u : adj[v]) {
            if (d[u] == kFar) {
                d[u] = d[v] + 1;
                q.push(u);
            }
        }
    }
    return d;
}

/// Full distance matrix, row-major.
inline std::vector<std::uint32_t> all_pairs(const Adjacency& adj) {
    const std::size_t n = adj.size();
    std::vector<std::uint32_t> m(n * n);
    for (VertexId s = 0; s < n; ++s) {
        const auto d = distances(adj, s);
        std::copy(d.begin(), d.end(), m.begin() + static_cast<std::ptrdiff_t>(s * n));
    }
    return m;
}

/// Tree distance through explicit root paths.
inline std::uint32_t tree_distance(const RootedTree& t, VertexId x, VertexId y) {
    auto root_path = [&](VertexId v) {
        std::vector<VertexId> p{v};
        while (v != 0) p.push_back(v = t.parent(v));
        std::reverse(p.begin(), p.end());
        return p;
    };
    const auto px = root_path(x), py = root_path(y);
    std::size_t common = 0;
    while (common < px.size() && common < py.size() && px[common] == py[common]) ++common;
    return static_cast<std::uint32_t>(px.size() + py.size() - 2 * common);
}

/// Twice the exhaustive four-point delta from a distance matrix.
inline std::int64_t four_point_delta_twice(const std::vector<std::uint32_t>& m, std::size_t n) {
    auto d = [&](std::size_t a, std::size_t b) { return static_cast<std::int64_t>(m[a * n + b]); };
    std::int64_t best = 0;
    for (std::size_t w = 0; w < n; ++w)
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                for (std::size_t z = 0; z < n; ++z) {
                    const std::int64_t xy = d(w, x) + d(w, y) - d(x, y);
                    const std::int64_t yz = d(w, y) + d(w, z) - d(y, z);
                    const std::int64_t xz = d(w, x) + d(w, z) - d(x, z);
                    best = std::max(best, std::min(xy, yz) - xz);
                }
    return best;
}

/// #{(x, y) in E x F : d(x, y) <= r} by a double loop over the distance matrix.
inline std::uint64_t pair_count(const std::vector<std::uint32_t>& m, std::size_t n, const std::vector<VertexId>& E,
                                const std::vector<VertexId>& F, std::uint32_t r) {
    std::vector<VertexId> e(E), f(F);
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
    std::uint64_t c = 0;
    for (VertexId x : e)
        for (VertexId y : f) c += m[std::size_t{x} * n + y] <= r;
    return c;
}

/// max over r = 1..r_max of the ball mean, recomputing every ball from the matrix.
/// interior: only radii with level(x) + r <= depth; no such radius gives 0.
inline std::vector<double> maximal_infty(const SpiderWeb& g, const std::vector<std::uint32_t>& m,
                                         const std::vector<double>& f, std::uint32_t r_max, bool interior = false) {
    const std::size_t n = g.vertex_count();
    std::vector<double> out(n, 0.0);
    for (VertexId x = 0; x < n; ++x) {
        for (std::uint32_t r = 1; r <= r_max; ++r) {
            if (interior && g.level(x) + r > g.tree().depth()) break;
            double sum = 0.0;
            std::size_t count = 0;
            for (VertexId y = 0; y < n; ++y) {
                if (m[std::size_t{x} * n + y] <= r) {
                    sum += f[y];
                    ++count;
                }
            }
            out[x] = std::max(out[x], sum / static_cast<double>(count));
        }
    }
    return out;
}

/// sup over lambda in {v (1 - eps)} of lambda^tau #{m > lambda} / sum f^tau, by direct counting.
inline double weak_type_constant(const std::vector<double>& f, const std::vector<double>& m, double tau, double eps) {
    double norm = 0.0;
    for (double v : f) norm += std::pow(v, tau);
    double best = 0.0;
    for (double v : m) {
        if (v <= 0.0) continue;
        const double lambda = v * (1.0 - eps);
        std::size_t count = 0;
        for (double w : m) count += w > lambda;
        best = std::max(best, std::pow(lambda, tau) * static_cast<double>(count) / norm);
    }
    return best;
}

/// Whether `path` is a walk along graph edges.
inline bool is_walk(const Adjacency& adj, const std::vector<VertexId>& path) {
    for (std::size_t i = 1; i < path.size(); ++i) {
        const auto& row = adj[path[i - 1]];
        if (std::find(row.begin(), row.end(), path[i]) == row.end()) return false;
    }
    return true;
}

}  // namespace spiderweb::reference
