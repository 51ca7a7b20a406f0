#pragma once

// Discretization of a space with a basepoint into a spider's web:
//   1. a greedy 1-separated net of every sphere S_n(o), n = 1..R;
//   2. a tree: each net point hangs from a nearest point of the level above;
//   3. Gamma: same-level pairs within distance theta become horizontal edges;
//   4. completion: every horizontal edge {v, w} adds {p^j(v), p^j(w)} for j >= 1
//      until the predecessors meet.
// plus diagnostics comparing the resulting graph metric with the source metric.

#include "spiderweb/errors.hpp"
#include "spiderweb/graph.hpp"
#include "spiderweb/maximal.hpp"
#include "spiderweb/metric_space.hpp"
#include "spiderweb/poincare_disk.hpp"
#include "spiderweb/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <type_traits>
#include <vector>

namespace spiderweb {

struct DiscretizationConfig {
    std::uint32_t max_radius = 6;
    double theta = 15.0;
    std::uint32_t K = 20;
    bool calibrate_K = false;       // replace K by the least threshold that passes the quasi check
    std::uint32_t oversample = 8;
    std::uint64_t seed = 0;
    bool allow_small_theta = false; // permit theta < 15
    double valence_factor = 10.0;   // valence ceiling = factor * median valence
    bool repair_nets = true;

    void validate() const {
        if (max_radius < 1) throw ConfigurationError("max_radius must be >= 1");
        if (!(theta > 0.0) || !std::isfinite(theta)) throw ConfigurationError("theta must be positive");
        if (theta < 15.0 && !allow_small_theta) {
            throw ConfigurationError("theta below 15 needs the explicit small-theta override");
        }
        if (K < 1) throw ConfigurationError("K must be >= 1");
        if (oversample < 1) throw ConfigurationError("oversample must be >= 1");
        if (!(valence_factor > 0.0)) throw ConfigurationError("valence factor must be positive");
    }
};

inline constexpr double kParentDistanceLimit = 2.0;
inline constexpr double kParentDistanceHardLimit = 2.1;

template <class Point>
struct SphereNets {
    std::vector<std::vector<Point>> levels;  // levels[n] for n = 0..R; levels[0] = {basepoint}
    std::vector<std::size_t> samples;        // sphere samples drawn per level
    std::vector<std::size_t> repairs;        // points inserted into level n by the projection repair
};

/// Greedy pass over `cloud` in order: keep a point iff it is >= 1 from all kept points.
template <MetricSpace S>
std::vector<typename S::point_type> greedy_net(const S& space, const std::vector<typename S::point_type>& cloud) {
    if constexpr (std::is_same_v<S, PoincareDisk>) {
        return disk_greedy_net(space, cloud);
    } else {
        std::vector<typename S::point_type> kept;
        for (const auto& p : cloud) {
            bool near = false;
            for (const auto& k : kept) {
                if (space.distance(p, k) < 1.0) {
                    near = true;
                    break;
                }
            }
            if (!near) kept.push_back(p);
        }
        return kept;
    }
}

/// Sigma_1..Sigma_R. Level n draws ceil(oversample * sphere_size_estimate(n))
/// sphere points (at least one), visits them in sample order rotated to start at
/// index derive_seed(derive_seed(seed, "net_order"), n) mod count, and keeps a greedy
/// net. Angularly ordered samples then give a near-optimal packing of the circle,
/// which keeps counts stable when oversample doubles.
///
/// A finite sample can leave a point x of Sigma_n farther than 2 from Sigma_{n-1}.
/// With `repair`, levels are scanned from R down to 2 and the point at distance
/// n - 1 on the geodesic from o to such an x is added to Sigma_{n-1}; it is 1 from x,
/// and at least 1 from every other point of Sigma_{n-1}, since anything closer
/// would be within 2 of x.
template <MetricSpace S>
SphereNets<typename S::point_type> build_sphere_nets(const S& space, std::uint32_t R, std::uint32_t oversample,
                                                     std::uint64_t seed, bool repair = true) {
    if (R < 1) throw DomainError("max radius must be >= 1");
    if (oversample < 1) throw DomainError("oversample must be >= 1");
    SphereNets<typename S::point_type> nets;
    nets.levels.resize(R + 1);
    nets.samples.assign(R + 1, 0);
    nets.repairs.assign(R + 1, 0);
    nets.levels[0] = {space.basepoint()};
    nets.samples[0] = 1;
    const std::uint64_t order_key = derive_seed(seed, "net_order");
    for (std::uint32_t n = 1; n <= R; ++n) {
        const double estimate = std::max(1.0, space.sphere_size_estimate(n));
        const auto count = static_cast<std::size_t>(std::ceil(oversample * estimate));
        auto cloud = space.sample_sphere(n, count, seed);
        if (!cloud.empty()) {
            const auto start = derive_seed(order_key, std::uint64_t{n}) % cloud.size();
            std::rotate(cloud.begin(), cloud.begin() + static_cast<std::ptrdiff_t>(start), cloud.end());
        }
        nets.samples[n] = cloud.size();
        nets.levels[n] = greedy_net(space, cloud);
    }
    if (repair) {
        const auto o = space.basepoint();
        for (std::uint32_t n = R; n >= 2; --n) {
            auto& upper = nets.levels[n - 1];
            for (const auto& x : nets.levels[n]) {
                double best = std::numeric_limits<double>::infinity();
                for (const auto& y : upper) best = std::min(best, space.distance(x, y));
                if (best > kParentDistanceLimit) {
                    upper.push_back(space.geodesic_point(o, x, static_cast<double>(n - 1)));
                    ++nets.repairs[n - 1];
                }
            }
        }
    }
    return nets;
}

struct LevelStats {
    Level level = 0;
    std::size_t net_size = 0;
    std::size_t samples = 0;
    std::size_t repairs = 0;
    double max_parent_distance = 0.0;
    std::size_t gamma_edges = 0;
    std::size_t completion_edges = 0;
};

struct ValenceStats {
    std::size_t min = 0, max = 0;
    double median = 0.0;
    double ceiling = 0.0;
};

template <class Point>
struct Discretization {
    SpiderWeb web = SpiderWeb(RootedTree(std::vector<VertexId>{kNoVertex}));  // completed spider's web
    std::vector<Point> embedding;    // embedding[v] for every vertex id
    std::vector<Edge> gamma_edges;   // horizontal edges of Gamma, before completion
    std::vector<Edge> completion_edges;
    std::uint32_t K = 0;             // quasi threshold used for the completion
    std::uint32_t minimal_K = 0;     // least threshold passing the quasi check
    double theta = 0.0;
    std::uint32_t max_radius = 0;
    std::vector<LevelStats> levels;
    ValenceStats valence;
    double max_parent_distance = 0.0;
    std::size_t parent_distance_exceedances = 0;  // parents in (2 + eps, 2.1]
    double max_gamma_edge_length = 0.0;
    double min_gamma_edge_length = 0.0;
    double max_completion_edge_length = 0.0;
    double mean_completion_edge_length = 0.0;

    /// Gamma as a graph: the same tree with only its own horizontal edges.
    SpiderWeb gamma() const { return SpiderWeb(web.tree(), gamma_edges); }
};

template <class Point>
struct TreeEmbedding {
    RootedTree tree;
    std::vector<Point> embedding;
    std::vector<double> parent_distance;  // parent_distance[v], 0 for the root
};

/// Parents: a nearest point of the level above, ties to the lowest id. Ids are
/// level-major; within a level, sorted by parent id, then by net order.
/// Throws NetQualityError if some point is farther than 2.1 from its parent.
template <MetricSpace S>
TreeEmbedding<typename S::point_type> build_tree(const S& space,
                                                 const std::vector<std::vector<typename S::point_type>>& nets) {
    using P = typename S::point_type;
    if (nets.empty() || nets[0].size() != 1) throw DomainError("level 0 must hold exactly the basepoint");
    TreeEmbedding<P> out;
    std::vector<VertexId> parent{kNoVertex};
    out.embedding.push_back(nets[0][0]);
    out.parent_distance.push_back(0.0);
    VertexId upper_begin = 0;
    for (std::size_t n = 1; n < nets.size(); ++n) {
        if (nets[n].empty()) throw DomainError("net of level " + std::to_string(n) + " is empty");
        const auto upper_end = static_cast<VertexId>(out.embedding.size());
        struct Item {
            VertexId parent;
            std::size_t index;
            double dist;
        };
        std::vector<Item> items;
        items.reserve(nets[n].size());
        for (std::size_t i = 0; i < nets[n].size(); ++i) {
            VertexId best = upper_begin;
            double best_d = std::numeric_limits<double>::infinity();
            for (VertexId u = upper_begin; u < upper_end; ++u) {
                const double d = space.distance(nets[n][i], out.embedding[u]);
                if (d < best_d) {
                    best_d = d;
                    best = u;
                }
            }
            if (best_d > kParentDistanceHardLimit) {
                throw NetQualityError("point " + std::to_string(i) + " of level " + std::to_string(n) +
                                      " is at distance " + std::to_string(best_d) +
                                      " from the level above; raise the oversample factor");
            }
            items.push_back({best, i, best_d});
        }
        std::sort(items.begin(), items.end(),
                  [](const Item& a, const Item& b) { return a.parent != b.parent ? a.parent < b.parent : a.index < b.index; });
        for (const Item& it : items) {
            parent.push_back(it.parent);
            out.embedding.push_back(nets[n][it.index]);
            out.parent_distance.push_back(it.dist);
        }
        upper_begin = upper_end;
    }
    out.tree = RootedTree(std::move(parent));
    return out;
}

/// Same-level pairs at distance <= theta. Also returns the least pairwise
/// distance seen, which must be >= 1 for a 1-separated net.
template <MetricSpace S>
std::vector<Edge> build_gamma_edges(const S& space, const RootedTree& tree,
                                    const std::vector<typename S::point_type>& embedding, double theta,
                                    double* min_length = nullptr, double* max_length = nullptr) {
    if (!(theta > 0.0)) throw DomainError("theta must be positive");
    std::vector<Edge> edges;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (Level k = 1; k <= tree.depth(); ++k) {
        for (VertexId x = tree.level_begin(k); x < tree.level_end(k); ++x) {
            for (VertexId y = x + 1; y < tree.level_end(k); ++y) {
                const double d = space.distance(embedding[x], embedding[y]);
                if (d < 1.0 - kEpsSphere) {
                    throw ConsistencyError("net points " + std::to_string(x) + " and " + std::to_string(y) +
                                           " are closer than 1");
                }
                if (d <= theta) {
                    edges.emplace_back(x, y);
                    lo = std::min(lo, d);
                    hi = std::max(hi, d);
                }
            }
        }
    }
    if (min_length) *min_length = edges.empty() ? 0.0 : lo;
    if (max_length) *max_length = hi;
    return edges;
}

inline ValenceStats valence_stats(const SpiderWeb& g, double factor) {
    std::vector<std::size_t> v(g.vertex_count());
    for (VertexId x = 0; x < v.size(); ++x) v[x] = g.valence(x);
    ValenceStats s;
    if (v.empty()) return s;
    std::sort(v.begin(), v.end());
    s.min = v.front();
    s.max = v.back();
    const std::size_t h = v.size() / 2;
    s.median = v.size() % 2 ? static_cast<double>(v[h]) : (static_cast<double>(v[h - 1]) + v[h]) / 2.0;
    s.ceiling = factor * std::max(1.0, s.median);
    return s;
}

/// Least m >= 1 for which validate_quasi_spiderweb(g, m) is empty. An edge at
/// level n whose k-th predecessors are apart (neither equal nor adjacent) for
/// some k forces m > k; same-level violations cannot be fixed by any m.
inline Level minimal_quasi_threshold(const SpiderWeb& g) {
    const RootedTree& t = g.tree();
    Level need = 1;
    for (const Edge& e : g.horizontal_edges()) {
        if (g.level(e.a) != g.level(e.b)) throw PreconditionError("horizontal edge joins different levels");
        VertexId x = e.a, y = e.b;
        for (Level k = 1; k <= g.level(e.a); ++k) {
            x = t.parent(x);
            y = t.parent(y);
            if (x == y) break;
            if (!g.horizontally_adjacent(x, y)) need = std::max(need, k + 1);
        }
    }
    return need;
}

struct Completion {
    SpiderWeb web;
    std::vector<Edge> added;  // sorted
};

/// Adds {p^j(v), p^j(w)} for every horizontal edge {v, w} and every j >= 1 with
/// p^j(v) != p^j(w). Requires the quasi check at threshold K to pass.
inline Completion complete_to_spiderweb(const SpiderWeb& gamma, Level K) {
    const auto violations = validate_quasi_spiderweb(gamma, K);
    if (!violations.empty()) {
        const Violation& v = violations.front();
        throw PreconditionError("quasi-spider's web check fails at K = " + std::to_string(K) + ": edge {" +
                                std::to_string(v.edge.a) + ", " + std::to_string(v.edge.b) + "} at level " +
                                std::to_string(v.level) + ", predecessor order " + std::to_string(v.k));
    }
    const RootedTree& t = gamma.tree();
    const auto original = gamma.horizontal_edges();
    // Edges grouped by level; the projected set of level n feeds level n - 1.
    std::vector<std::vector<Edge>> by_level(t.depth() + 1);
    for (const Edge& e : original) by_level[t.level(e.a)].push_back(e);
    std::vector<Edge> added, carried;
    for (Level n = t.depth(); n >= 1; --n) {
        std::vector<Edge> here = by_level[n];
        std::vector<Edge> fresh;
        for (const Edge& e : carried) {
            if (!std::binary_search(by_level[n].begin(), by_level[n].end(), e)) fresh.push_back(e);
        }
        added.insert(added.end(), fresh.begin(), fresh.end());
        here.insert(here.end(), fresh.begin(), fresh.end());
        carried.clear();
        if (n == 1) break;
        for (const Edge& e : here) {
            const VertexId a = t.parent(e.a), b = t.parent(e.b);
            if (a != b) carried.emplace_back(a, b);
        }
        std::sort(carried.begin(), carried.end());
        carried.erase(std::unique(carried.begin(), carried.end()), carried.end());
    }
    std::sort(added.begin(), added.end());
    std::vector<Edge> all(original.begin(), original.end());
    all.insert(all.end(), added.begin(), added.end());
    return {SpiderWeb(t, std::move(all)), std::move(added)};
}

/// The full pipeline. Throws ConfigurationError when the valence ceiling is
/// exceeded and PreconditionError when K (uncalibrated) fails the quasi check.
template <MetricSpace S>
Discretization<typename S::point_type> discretize(const S& space, const DiscretizationConfig& cfg) {
    cfg.validate();
    const auto nets = build_sphere_nets(space, cfg.max_radius, cfg.oversample, cfg.seed, cfg.repair_nets);
    auto te = build_tree(space, nets.levels);

    Discretization<typename S::point_type> d;
    d.theta = cfg.theta;
    d.max_radius = cfg.max_radius;
    d.gamma_edges = build_gamma_edges(space, te.tree, te.embedding, cfg.theta, &d.min_gamma_edge_length,
                                      &d.max_gamma_edge_length);
    const SpiderWeb gamma(te.tree, d.gamma_edges);
    d.valence = valence_stats(gamma, cfg.valence_factor);
    if (static_cast<double>(d.valence.max) > d.valence.ceiling) {
        throw ConfigurationError("max valence " + std::to_string(d.valence.max) + " exceeds ceiling " +
                                 std::to_string(d.valence.ceiling) + "; theta is too large for the net density");
    }
    d.minimal_K = minimal_quasi_threshold(gamma);
    d.K = cfg.calibrate_K ? d.minimal_K : cfg.K;
    Completion c = complete_to_spiderweb(gamma, d.K);
    d.web = std::move(c.web);
    d.completion_edges = std::move(c.added);
    d.embedding = std::move(te.embedding);

    const RootedTree& t = d.web.tree();
    d.levels.resize(t.depth() + 1);
    for (Level n = 0; n <= t.depth(); ++n) {
        LevelStats& s = d.levels[n];
        s.level = n;
        s.net_size = t.level_size(n);
        s.samples = nets.samples[n];
        s.repairs = nets.repairs[n];
    }
    for (VertexId v = 1; v < t.size(); ++v) {
        LevelStats& s = d.levels[t.level(v)];
        s.max_parent_distance = std::max(s.max_parent_distance, te.parent_distance[v]);
        if (te.parent_distance[v] > kParentDistanceLimit + kEpsSphere) ++d.parent_distance_exceedances;
    }
    for (const LevelStats& s : d.levels) d.max_parent_distance = std::max(d.max_parent_distance, s.max_parent_distance);
    for (const Edge& e : d.gamma_edges) ++d.levels[t.level(e.a)].gamma_edges;
    double sum = 0.0;
    for (const Edge& e : d.completion_edges) {
        ++d.levels[t.level(e.a)].completion_edges;
        const double len = space.distance(d.embedding[e.a], d.embedding[e.b]);
        sum += len;
        d.max_completion_edge_length = std::max(d.max_completion_edge_length, len);
    }
    d.mean_completion_edge_length = d.completion_edges.empty() ? 0.0 : sum / d.completion_edges.size();
    return d;
}

// ---------------------------------------------------------------------------
// Diagnostics

struct DeviationRow {
    Level level = 0;  // max level of the pair
    std::size_t pairs = 0;
    double max_abs = 0.0;
    double mean_abs = 0.0;
};

struct RoughIsometryReport {
    double max_abs_deviation = 0.0;   // beta_obs
    double mean_abs_deviation = 0.0;
    double min_signed = 0.0, max_signed = 0.0;  // extremes of d_web - d
    std::size_t pairs = 0;
    std::size_t sources = 0;
    Level interior_level = 0;         // pairs use vertices of level <= this
    std::vector<DeviationRow> rows;   // by max level of the pair
};

/// Vertices of level <= R - margin.
inline std::vector<VertexId> interior_vertices(const SpiderWeb& g, std::uint32_t max_radius, std::uint32_t margin) {
    std::vector<VertexId> out;
    if (margin > max_radius) return out;
    const Level top = std::min<Level>(max_radius - margin, g.tree().depth());
    for (VertexId v = 0; v < g.tree().level_end(top); ++v) out.push_back(v);
    return out;
}

/// Compares d_web with the source metric on `pairs` interior pairs: up to
/// `max_sources` seeded source vertices, each paired with seeded interior targets.
template <MetricSpace S>
RoughIsometryReport rough_isometry_report(const Discretization<typename S::point_type>& d, const S& space,
                                          std::size_t pairs, std::uint64_t seed, std::uint32_t margin,
                                          std::size_t max_sources = 64) {
    if (pairs < 1) throw DomainError("need at least one pair");
    RoughIsometryReport rep;
    const auto interior = interior_vertices(d.web, d.max_radius, margin);
    if (interior.empty()) return rep;
    rep.interior_level = d.web.level(interior.back());
    const CounterStream s(derive_seed(seed, "rough_isometry"));
    std::vector<VertexId> sources(interior);
    seeded_shuffle(sources, derive_seed(seed, "rough_isometry_sources"));
    sources.resize(std::min({sources.size(), max_sources, pairs}));
    rep.sources = sources.size();

    rep.rows.resize(rep.interior_level + 1);
    for (Level k = 0; k < rep.rows.size(); ++k) rep.rows[k].level = k;
    double sum = 0.0;
    rep.min_signed = std::numeric_limits<double>::infinity();
    rep.max_signed = -std::numeric_limits<double>::infinity();
    std::uint64_t draw = 0;
    for (std::size_t i = 0; i < sources.size(); ++i) {
        const VertexId x = sources[i];
        const DistanceField df = bfs_distances(d.web, x);
        const std::size_t share = pairs / sources.size() + (i < pairs % sources.size() ? 1 : 0);
        for (std::size_t j = 0; j < share; ++j) {
            const VertexId y = interior[s.at(draw++) % interior.size()];
            const double dev = static_cast<double>(df[y]) - space.distance(d.embedding[x], d.embedding[y]);
            const double a = std::fabs(dev);
            rep.max_abs_deviation = std::max(rep.max_abs_deviation, a);
            rep.min_signed = std::min(rep.min_signed, dev);
            rep.max_signed = std::max(rep.max_signed, dev);
            sum += a;
            DeviationRow& row = rep.rows[std::max(d.web.level(x), d.web.level(y))];
            ++row.pairs;
            row.max_abs = std::max(row.max_abs, a);
            row.mean_abs += a;
            ++rep.pairs;
        }
    }
    for (DeviationRow& row : rep.rows) {
        if (row.pairs) row.mean_abs /= static_cast<double>(row.pairs);
    }
    rep.mean_abs_deviation = sum / static_cast<double>(rep.pairs);
    return rep;
}

struct GammaComparison {
    std::size_t pairs = 0;
    std::size_t violations = 0;  // pairs breaking d_web <= d_gamma <= d_web + 2K
    std::uint32_t max_gap = 0;   // max of d_gamma - d_web
};

/// Exhaustive check of d_web <= d_gamma <= d_web + 2K over interior pairs.
template <class Point>
GammaComparison compare_gamma_distances(const Discretization<Point>& d, std::uint32_t margin) {
    GammaComparison out;
    const SpiderWeb gamma = d.gamma();
    const auto interior = interior_vertices(d.web, d.max_radius, margin);
    for (VertexId x : interior) {
        const DistanceField a = bfs_distances(d.web, x);
        const DistanceField b = bfs_distances(gamma, x);
        for (VertexId y : interior) {
            ++out.pairs;
            if (b[y] < a[y] || b[y] > a[y] + 2 * d.K) ++out.violations;
            if (b[y] >= a[y]) out.max_gap = std::max(out.max_gap, b[y] - a[y]);
        }
    }
    return out;
}

/// #{v : d(p, embedding(v)) < 2}. Only levels within 2 of d(o, p) can qualify,
/// as embedded vertices lie on their spheres up to kEpsSphere.
template <MetricSpace S>
std::size_t overlap_count(const Discretization<typename S::point_type>& d, const S& space,
                          const typename S::point_type& p) {
    const RootedTree& t = d.web.tree();
    const double r = space.distance(space.basepoint(), p);
    const double lo = std::max(0.0, std::ceil(r - 2.0 - kEpsSphere));
    const double hi = std::min<double>(t.depth(), std::floor(r + 2.0 + kEpsSphere));
    std::size_t count = 0;
    for (auto k = static_cast<Level>(lo); k <= hi; ++k) {
        for (VertexId v = t.level_begin(k); v < t.level_end(k); ++v) {
            if (space.distance(p, d.embedding[v]) < 2.0) ++count;
        }
    }
    return count;
}

struct OverlapReport {
    std::size_t omega = 0;
    std::size_t probes = 0;
};

/// Max overlap count over `probes` points of B_{R-2}(o) drawn with sample_ball.
template <MetricSpace S>
OverlapReport overlap_number(const Discretization<typename S::point_type>& d, const S& space, std::size_t probes,
                             std::uint64_t seed) {
    if (probes < 1) throw DomainError("need at least one probe");
    if (d.max_radius <= 2) throw DomainError("overlap probes need max radius > 2");
    OverlapReport rep;
    for (const auto& p : space.sample_ball(static_cast<double>(d.max_radius) - 2.0, probes, derive_seed(seed, "overlap"))) {
        rep.omega = std::max(rep.omega, overlap_count(d, space, p));
        ++rep.probes;
    }
    return rep;
}

template <class Point>
struct WeightedPoint {
    Point point;
    double weight = 0.0;
};

/// (pi f)(v) = total weight of cloud points at distance < 2 from embedding(v).
template <MetricSpace S>
GraphFunction project_function(const Discretization<typename S::point_type>& d, const S& space,
                               const std::vector<WeightedPoint<typename S::point_type>>& cloud) {
    GraphFunction f{std::vector<double>(d.web.vertex_count(), 0.0), "projection"};
    const RootedTree& t = d.web.tree();
    for (const auto& wp : cloud) {
        if (!(wp.weight >= 0.0) || !std::isfinite(wp.weight)) throw DomainError("cloud weights must be nonnegative");
        const double r = space.distance(space.basepoint(), wp.point);
        const double lo = std::max(0.0, std::ceil(r - 2.0 - kEpsSphere));
        const double hi = std::min<double>(t.depth(), std::floor(r + 2.0 + kEpsSphere));
        for (auto k = static_cast<Level>(lo); k <= hi; ++k) {
            for (VertexId v = t.level_begin(k); v < t.level_end(k); ++v) {
                if (space.distance(wp.point, d.embedding[v]) < 2.0) f.values[v] += wp.weight;
            }
        }
    }
    return f;
}

}  // namespace spiderweb
