#pragma once

// Gromov products, four-point hyperbolicity estimates and standard geodesics
// (ascending, then horizontal, then descending) on spider's webs.

#include "spiderweb/errors.hpp"
#include "spiderweb/graph.hpp"
#include "spiderweb/half_integer.hpp"
#include "spiderweb/rng.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <thread>
#include <vector>

namespace spiderweb {

/// (y, z)_w = (d(w,y) + d(w,z) - d(y,z)) / 2, exact.
inline HalfInteger gromov_product(const SpiderWeb& g, VertexId y, VertexId z, VertexId w) {
    const DistanceField from_w = bfs_distances(g, w);
    const DistanceField from_y = bfs_distances(g, y);
    const std::int64_t twice = std::int64_t{from_w[y]} + from_w[z] - from_y[z];
    return HalfInteger::from_twice(twice);
}

/// Dense distances between a chosen list of vertices (all vertices by default).
class DistanceMatrix {
public:
    explicit DistanceMatrix(const SpiderWeb& g) {
        std::vector<VertexId> all(g.vertex_count());
        for (VertexId v = 0; v < all.size(); ++v) all[v] = v;
        build(g, std::move(all));
    }

    DistanceMatrix(const SpiderWeb& g, std::vector<VertexId> vertices) { build(g, std::move(vertices)); }

    std::size_t size() const noexcept { return vertices_.size(); }
    VertexId vertex(std::size_t i) const { return vertices_[i]; }
    std::uint32_t at(std::size_t i, std::size_t j) const { return d_[i * vertices_.size() + j]; }

private:
    void build(const SpiderWeb& g, std::vector<VertexId> vertices) {
        vertices_ = std::move(vertices);
        const std::size_t m = vertices_.size();
        if (m > 16384) throw SizeError("distance matrix limited to 16384 vertices");
        std::vector<std::uint32_t> index(g.vertex_count(), std::numeric_limits<std::uint32_t>::max());
        for (std::size_t i = 0; i < m; ++i) index[vertices_[i]] = static_cast<std::uint32_t>(i);
        d_.assign(m * m, std::numeric_limits<std::uint16_t>::max());
        BoundedBfs bfs(g);
        for (std::size_t i = 0; i < m; ++i) {
            bfs.run(vertices_[i], DistanceField::kUnreachable - 1, [&](VertexId v, std::uint32_t d) {
                const auto j = index[v];
                if (j != std::numeric_limits<std::uint32_t>::max()) {
                    if (d >= std::numeric_limits<std::uint16_t>::max()) throw SizeError("distance exceeds 16-bit range");
                    d_[i * m + j] = static_cast<std::uint16_t>(d);
                }
            });
        }
    }

    std::vector<VertexId> vertices_;
    std::vector<std::uint16_t> d_;
};

struct Quadruple {
    VertexId x = 0, y = 0, z = 0, w = 0;
    friend bool operator==(const Quadruple&, const Quadruple&) = default;
};

enum class DeltaMode { exhaustive, sampled };

inline const char* to_string(DeltaMode m) { return m == DeltaMode::exhaustive ? "exhaustive" : "sampled"; }

struct DeltaEstimate {
    HalfInteger delta;
    Quadruple witness;
    std::uint64_t quadruples_checked = 0;
    DeltaMode mode = DeltaMode::exhaustive;
    std::size_t landmarks = 0;  // vertices the sampled quadruples were drawn from
};

inline constexpr std::size_t kExhaustiveDeltaLimit = 60;
inline constexpr std::size_t kSampledMatrixLimit = 4096;
inline constexpr std::size_t kSampledLandmarks = 2048;
inline constexpr std::uint64_t kDefaultDeltaSamples = 1'000'000;

namespace detail {

/// Twice the four-point defect min((x,y)_w, (y,z)_w) - (x,z)_w, indices into m.
inline std::int64_t four_point_defect(const DistanceMatrix& m, std::size_t x, std::size_t y, std::size_t z,
                                      std::size_t w) {
    const std::int64_t wx = m.at(w, x), wy = m.at(w, y), wz = m.at(w, z);
    const std::int64_t xy = wx + wy - m.at(x, y);
    const std::int64_t yz = wy + wz - m.at(y, z);
    const std::int64_t xz = wx + wz - m.at(x, z);
    return std::min(xy, yz) - xz;
}

}  // namespace detail

/// Four-point delta of the graph metric.
///
/// Exhaustive mode checks every ordered quadruple (graphs of at most 60 vertices)
/// and returns the exact delta. Sampled mode draws `samples` quadruples from the
/// counter stream derive_seed(seed, "four_point") (value 4i+j, reduced modulo the
/// candidate count, gives coordinate j of quadruple i) and returns a lower bound.
/// Graphs above 4096 vertices sample among 2048 seeded landmark vertices. Chunks
/// run on `threads` threads and merge by (max defect, lowest index), so the result
/// does not depend on the thread count.
inline DeltaEstimate four_point_delta(const SpiderWeb& g, DeltaMode mode,
                                      std::uint64_t samples = kDefaultDeltaSamples, std::uint64_t seed = 0,
                                      unsigned threads = 1) {
    const std::size_t n = g.vertex_count();
    DeltaEstimate est;
    est.mode = mode;
    if (mode == DeltaMode::exhaustive) {
        if (n > kExhaustiveDeltaLimit) {
            throw SizeError("exhaustive four-point delta limited to " + std::to_string(kExhaustiveDeltaLimit) +
                            " vertices (graph has " + std::to_string(n) + ")");
        }
        const DistanceMatrix m(g);
        std::int64_t best = std::numeric_limits<std::int64_t>::min();
        for (std::size_t w = 0; w < n; ++w)
            for (std::size_t x = 0; x < n; ++x)
                for (std::size_t y = 0; y < n; ++y)
                    for (std::size_t z = 0; z < n; ++z) {
                        const std::int64_t d = detail::four_point_defect(m, x, y, z, w);
                        if (d > best) {
                            best = d;
                            est.witness = {static_cast<VertexId>(x), static_cast<VertexId>(y),
                                           static_cast<VertexId>(z), static_cast<VertexId>(w)};
                        }
                    }
        est.delta = HalfInteger::from_twice(std::max<std::int64_t>(best, 0));
        est.quadruples_checked = static_cast<std::uint64_t>(n) * n * n * n;
        est.landmarks = n;
        return est;
    }

    std::vector<VertexId> candidates;
    if (n <= kSampledMatrixLimit) {
        candidates.resize(n);
        for (VertexId v = 0; v < n; ++v) candidates[v] = v;
    } else {
        std::vector<VertexId> all(n);
        for (VertexId v = 0; v < n; ++v) all[v] = v;
        seeded_shuffle(all, derive_seed(seed, "four_point_landmarks"));
        candidates.assign(all.begin(), all.begin() + kSampledLandmarks);
        std::sort(candidates.begin(), candidates.end());
    }
    const DistanceMatrix m(g, candidates);
    const std::size_t c = m.size();
    const CounterStream stream(derive_seed(seed, "four_point"));

    struct Best {
        std::int64_t defect = 0;
        std::uint64_t index = std::numeric_limits<std::uint64_t>::max();
    };
    auto scan = [&](std::uint64_t begin, std::uint64_t end) {
        Best b{std::numeric_limits<std::int64_t>::min(), 0};
        for (std::uint64_t i = begin; i < end; ++i) {
            const std::size_t x = stream.at(4 * i) % c, y = stream.at(4 * i + 1) % c;
            const std::size_t z = stream.at(4 * i + 2) % c, w = stream.at(4 * i + 3) % c;
            const std::int64_t d = detail::four_point_defect(m, x, y, z, w);
            if (d > b.defect) b = {d, i};
        }
        return b;
    };

    threads = std::max(1u, threads);
    std::vector<Best> partial(threads);
    if (threads == 1 || samples < 4096) {
        partial.assign(1, scan(0, samples));
    } else {
        std::vector<std::thread> pool;
        const std::uint64_t chunk = (samples + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const std::uint64_t begin = std::min<std::uint64_t>(samples, t * chunk);
            const std::uint64_t end = std::min<std::uint64_t>(samples, begin + chunk);
            pool.emplace_back([&, t, begin, end] { partial[t] = scan(begin, end); });
        }
        for (auto& th : pool) th.join();
    }
    Best best{std::numeric_limits<std::int64_t>::min(), std::numeric_limits<std::uint64_t>::max()};
    for (const Best& b : partial) {
        if (b.defect > best.defect || (b.defect == best.defect && b.index < best.index)) best = b;
    }
    if (samples > 0) {
        const std::uint64_t i = best.index;
        est.witness = {m.vertex(stream.at(4 * i) % c), m.vertex(stream.at(4 * i + 1) % c),
                       m.vertex(stream.at(4 * i + 2) % c), m.vertex(stream.at(4 * i + 3) % c)};
    }
    est.delta = HalfInteger::from_twice(samples > 0 ? std::max<std::int64_t>(best.defect, 0) : 0);
    est.quadruples_checked = samples;
    est.landmarks = c;
    return est;
}

/// Exact delta for the single base point w (all x, y, z). Up to 256 vertices.
inline DeltaEstimate four_point_delta_fixed_base(const SpiderWeb& g, VertexId w) {
    const std::size_t n = g.vertex_count();
    if (n > 256) throw SizeError("fixed-base four-point delta limited to 256 vertices");
    const DistanceMatrix m(g);
    DeltaEstimate est;
    std::int64_t best = std::numeric_limits<std::int64_t>::min();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z) {
                const std::int64_t d = detail::four_point_defect(m, x, y, z, w);
                if (d > best) {
                    best = d;
                    est.witness = {static_cast<VertexId>(x), static_cast<VertexId>(y), static_cast<VertexId>(z), w};
                }
            }
    est.delta = HalfInteger::from_twice(std::max<std::int64_t>(best, 0));
    est.quadruples_checked = static_cast<std::uint64_t>(n) * n * n;
    est.landmarks = n;
    return est;
}

// ---------------------------------------------------------------------------
// Standard geodesics

struct StandardGeodesic {
    std::vector<VertexId> ascending;   // x, p(x), ..., pi(x)
    std::vector<VertexId> horizontal;  // pi(x), ..., pi(y), all on one level
    std::vector<VertexId> descending;  // pi(y), ..., p(y), y

    std::uint32_t ascending_length() const { return static_cast<std::uint32_t>(ascending.size() - 1); }
    std::uint32_t horizontal_length() const { return static_cast<std::uint32_t>(horizontal.size() - 1); }
    std::uint32_t descending_length() const { return static_cast<std::uint32_t>(descending.size() - 1); }
    std::uint32_t total_length() const { return ascending_length() + horizontal_length() + descending_length(); }

    VertexId first() const { return ascending.front(); }
    VertexId last() const { return descending.back(); }

    /// The whole vertex sequence from first() to last().
    std::vector<VertexId> path() const {
        std::vector<VertexId> out(ascending);
        out.insert(out.end(), horizontal.begin() + 1, horizontal.end());
        out.insert(out.end(), descending.begin() + 1, descending.end());
        return out;
    }
};

/// Breadth-first search from one vertex that also tracks, for every target, the
/// least level reachable by a shortest path (ties between equal-length paths go
/// to the smaller minimum level, then to the first predecessor found). Standard
/// geodesics to any target are then read off in time proportional to their length.
class GeodesicSource {
public:
    GeodesicSource(const SpiderWeb& g, VertexId source)
        : g_(&g),
          source_(source),
          dist_(g.vertex_count(), DistanceField::kUnreachable),
          min_level_(g.vertex_count(), 0),
          via_(g.vertex_count(), kNoVertex) {
        if (source >= g.vertex_count()) throw DomainError("source vertex out of range");
        std::vector<VertexId> queue;
        queue.reserve(g.vertex_count());
        queue.push_back(source);
        dist_[source] = 0;
        min_level_[source] = g.level(source);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const VertexId v = queue[head];
            const std::uint32_t next = dist_[v] + 1;
            g.for_each_neighbor(v, [&](VertexId u) {
                const Level through_v = std::min(min_level_[v], g.level(u));
                if (dist_[u] == DistanceField::kUnreachable) {
                    dist_[u] = next;
                    min_level_[u] = through_v;
                    via_[u] = v;
                    queue.push_back(u);
                } else if (dist_[u] == next && through_v < min_level_[u]) {
                    min_level_[u] = through_v;
                    via_[u] = v;
                }
            });
        }
    }

    VertexId source() const noexcept { return source_; }
    std::uint32_t distance(VertexId y) const { return dist_[y]; }

    /// Least level met by some shortest path from the source to y.
    Level min_level(VertexId y) const { return min_level_[y]; }

    /// Standard geodesic from the source to y. Throws ConsistencyError if the graph
    /// is not a spider's web and the projected path breaks.
    StandardGeodesic to(VertexId y) const {
        const SpiderWeb& g = *g_;
        const RootedTree& t = g.tree();
        if (y >= g.vertex_count()) throw DomainError("target vertex out of range");
        if (dist_[y] == DistanceField::kUnreachable) throw ConsistencyError("target unreachable");
        const Level n = min_level_[y];

        // Shortest path from the source to y through level n.
        std::vector<VertexId> chain;
        chain.reserve(dist_[y] + 1);
        for (VertexId v = y; v != kNoVertex; v = via_[v]) chain.push_back(v);
        std::reverse(chain.begin(), chain.end());

        StandardGeodesic geo;
        const VertexId x = source_;
        geo.ascending.push_back(x);
        for (VertexId v = x; t.level(v) > n;) geo.ascending.push_back(v = t.parent(v));

        VertexId projection = geo.ascending.back();
        geo.horizontal.push_back(projection);
        for (std::size_t i = 1; i < chain.size(); ++i) {
            const VertexId prev = chain[i - 1], cur = chain[i];
            const bool tree_step = (cur != 0 && t.parent(cur) == prev) || (prev != 0 && t.parent(prev) == cur);
            if (tree_step) continue;
            const VertexId next = t.ancestor(cur, t.level(cur) - n);
            if (next == projection) continue;
            if (!g.horizontally_adjacent(projection, next)) {
                throw ConsistencyError("projections " + std::to_string(projection) + " and " + std::to_string(next) +
                                       " are not adjacent; graph is not a spider's web");
            }
            geo.horizontal.push_back(next);
            projection = next;
        }

        std::vector<VertexId> down{y};
        for (VertexId v = y; t.level(v) > n;) down.push_back(v = t.parent(v));
        geo.descending.assign(down.rbegin(), down.rend());
        if (geo.descending.front() != projection) throw ConsistencyError("descending segment does not meet horizontal");
        if (geo.total_length() != dist_[y]) {
            throw ConsistencyError("standard geodesic length " + std::to_string(geo.total_length()) +
                                   " differs from graph distance " + std::to_string(dist_[y]));
        }
        return geo;
    }

private:
    const SpiderWeb* g_;
    VertexId source_;
    std::vector<std::uint32_t> dist_;
    std::vector<Level> min_level_;
    std::vector<VertexId> via_;
};

inline StandardGeodesic standard_geodesic(const SpiderWeb& g, VertexId x, VertexId y) {
    return GeodesicSource(g, x).to(y);
}

struct VertexPair {
    VertexId x = 0, y = 0;
    friend bool operator==(const VertexPair&, const VertexPair&) = default;
};

/// `count` uniform vertex pairs from the stream derive_seed(seed, label):
/// pair i is (value 2i mod n, value 2i+1 mod n).
inline std::vector<VertexPair> sample_pairs(std::size_t n, std::size_t count, std::uint64_t seed,
                                            std::string_view label = "pairs") {
    const CounterStream stream(derive_seed(seed, label));
    std::vector<VertexPair> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = {static_cast<VertexId>(stream.at(2 * i) % n), static_cast<VertexId>(stream.at(2 * i + 1) % n)};
    }
    return out;
}

/// Standard geodesics for a batch of pairs, sharing one search per distinct source.
/// Results are in input order.
inline std::vector<StandardGeodesic> standard_geodesics(const SpiderWeb& g, const std::vector<VertexPair>& pairs) {
    std::vector<std::size_t> order(pairs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pairs[a].x < pairs[b].x; });
    std::vector<StandardGeodesic> out(pairs.size());
    for (std::size_t i = 0; i < order.size();) {
        const VertexId x = pairs[order[i]].x;
        const GeodesicSource src(g, x);
        for (; i < order.size() && pairs[order[i]].x == x; ++i) out[order[i]] = src.to(pairs[order[i]].y);
    }
    return out;
}

struct HorizontalBoundReport {
    HalfInteger delta;
    bool delta_exact = false;           // delta is the exact constant of this graph
    std::uint64_t bound = 0;            // 4 * delta + 1
    std::uint32_t max_horizontal = 0;
    VertexPair worst;
    std::size_t pairs_checked = 0;
    std::vector<VertexPair> exceeding;  // pairs whose horizontal part is longer than bound

    /// A bound exceeded with an exact delta refutes; with an estimated delta
    /// (a lower bound on the infinite graph's constant) it is inconclusive.
    std::size_t hard_failures() const { return delta_exact ? exceeding.size() : 0; }
    std::size_t inconclusive() const { return delta_exact ? 0 : exceeding.size(); }
    const char* verdict() const {
        if (exceeding.empty()) return "pass";
        return delta_exact ? "fail" : "inconclusive";
    }
};

/// Builds standard geodesics for the pairs and compares each horizontal length
/// with 4 * delta + 1. Refuses graphs that are not spider's webs.
inline HorizontalBoundReport horizontal_bound_report(const SpiderWeb& g, HalfInteger delta, bool delta_exact,
                                                     const std::vector<VertexPair>& pairs) {
    if (!validate_spiderweb(g).empty()) throw PreconditionError("horizontal bound needs a valid spider's web");
    if (delta.twice() < 0) throw DomainError("delta must be nonnegative");
    HorizontalBoundReport rep;
    rep.delta = delta;
    rep.delta_exact = delta_exact;
    rep.bound = static_cast<std::uint64_t>(2 * delta.twice() + 1);
    const auto geos = standard_geodesics(g, pairs);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const std::uint32_t h = geos[i].horizontal_length();
        if (h > rep.max_horizontal || i == 0) {
            if (h >= rep.max_horizontal) rep.worst = pairs[i];
            rep.max_horizontal = std::max(rep.max_horizontal, h);
        }
        if (h > rep.bound) rep.exceeding.push_back(pairs[i]);
    }
    rep.pairs_checked = pairs.size();
    return rep;
}

}  // namespace spiderweb
