#pragma once

// Metric tree with unit edges over a RootedTree, basepoint at the root.

#include "spiderweb/errors.hpp"
#include "spiderweb/graph.hpp"
#include "spiderweb/metric_space.hpp"
#include "spiderweb/rng.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace spiderweb {

/// Point on the edge from parent(edge) to edge, at offset t from the parent
/// (t = 1 is the vertex `edge`). The root is {0, 0}.
struct TreePoint {
    VertexId edge = 0;
    double t = 0.0;
    friend bool operator==(const TreePoint&, const TreePoint&) = default;
};

class MetricTree {
public:
    using point_type = TreePoint;

    explicit MetricTree(RootedTree tree) : tree_(std::move(tree)) {}

    const RootedTree& tree() const noexcept { return tree_; }

    TreePoint basepoint() const { return {0, 0.0}; }

    TreePoint vertex(VertexId v) const {
        if (v >= tree_.size()) throw DomainError("vertex out of range");
        return v == 0 ? TreePoint{0, 0.0} : TreePoint{v, 1.0};
    }

    TreePoint point(VertexId edge, double t) const {
        if (edge == 0 || edge >= tree_.size()) throw DomainError("edge must name a non-root vertex");
        if (!(t >= 0.0 && t <= 1.0)) throw DomainError("edge offset must lie in [0, 1]");
        if (t == 0.0) return vertex(tree_.parent(edge));
        return {edge, t};
    }

    /// Distance from the root.
    double depth(const TreePoint& p) const {
        check(p);
        return p.edge == 0 ? 0.0 : static_cast<double>(tree_.level(p.edge)) - 1.0 + p.t;
    }

    double distance(const TreePoint& p, const TreePoint& q) const {
        check(p);
        check(q);
        if (p.edge == 0) return depth(q);
        if (q.edge == 0) return depth(p);
        if (p.edge == q.edge) return std::fabs(p.t - q.t);
        const VertexId a = tree_.confluent(p.edge, q.edge);
        // An edge above the other: the path enters p's edge from its lower end.
        if (a == p.edge) return depth(q) - tree_.level(p.edge) + (1.0 - p.t);
        if (a == q.edge) return depth(p) - tree_.level(q.edge) + (1.0 - q.t);
        return depth(p) + depth(q) - 2.0 * tree_.level(a);
    }

    TreePoint geodesic_point(const TreePoint& p, const TreePoint& q, double t) const {
        const double d = distance(p, q);
        if (!(t >= -kEpsEqual && t <= d + kEpsEqual)) throw DomainError("geodesic parameter out of range");
        if (t <= 0.0) return p;
        if (t >= d) return q;
        if (p.edge == q.edge && p.edge != 0) return normalize({p.edge, p.t + (q.t > p.t ? t : -t)});
        // The path climbs from p to the meeting depth m, then descends to q.
        const double m = (depth(p) + depth(q) - d) / 2.0;
        const double up = depth(p) - m;
        if (t <= up) return on_root_path(p, depth(p) - t);
        return on_root_path(q, m + (t - up));
    }

    /// All vertices of level n (count is ignored: the sphere is finite and enumerated).
    std::vector<TreePoint> sample_sphere(std::uint32_t n, std::size_t, std::uint64_t) const {
        std::vector<TreePoint> out;
        if (n > tree_.depth()) return out;
        for (VertexId v = tree_.level_begin(n); v < tree_.level_end(n); ++v) out.push_back(vertex(v));
        return out;
    }

    /// count points at depth <= r: a uniformly chosen edge whose upper end is at
    /// depth < r, then a uniform offset along the part of it inside the ball.
    std::vector<TreePoint> sample_ball(double r, std::size_t count, std::uint64_t seed) const {
        if (!(r > 0.0)) throw DomainError("ball radius must be positive");
        const auto top = static_cast<Level>(std::min<double>(std::ceil(r), tree_.depth()));
        const VertexId end = tree_.level_end(top);
        std::vector<TreePoint> out;
        if (end <= 1) return out;
        const CounterStream s(derive_seed(seed, "tree_ball"));
        out.reserve(count);
        for (std::size_t k = 0; k < count; ++k) {
            const auto e = static_cast<VertexId>(1 + s.at(2 * k) % (end - 1));
            const double room = std::min(1.0, r - (tree_.level(e) - 1.0));
            out.push_back(normalize({e, s.unit(2 * k + 1) * room}));
        }
        return out;
    }

    double sphere_size_estimate(std::uint32_t n) const {
        return n > tree_.depth() ? 0.0 : static_cast<double>(tree_.level_size(n));
    }

    std::vector<double> coordinates(const TreePoint& p) const { return {static_cast<double>(p.edge), p.t}; }
    std::string name() const { return "tree"; }

private:
    void check(const TreePoint& p) const {
        if (p.edge >= tree_.size() || !(p.t >= 0.0 && p.t <= 1.0) || (p.edge == 0 && p.t != 0.0)) {
            throw DomainError("invalid tree point");
        }
    }

    TreePoint normalize(TreePoint p) const {
        p.t = std::clamp(p.t, 0.0, 1.0);
        return p.t == 0.0 ? vertex(tree_.parent(p.edge)) : p;
    }

    /// The point at depth s on the path from the root to p (0 <= s <= depth(p)).
    TreePoint on_root_path(const TreePoint& p, double s) const {
        if (s <= 0.0 || p.edge == 0) return basepoint();
        const double lvl = std::ceil(s);
        const Level target = static_cast<Level>(std::min<double>(lvl, tree_.level(p.edge)));
        const VertexId w = tree_.ancestor(p.edge, tree_.level(p.edge) - target);
        return normalize({w, s - static_cast<double>(target) + 1.0});
    }

    RootedTree tree_;
};

}  // namespace spiderweb
