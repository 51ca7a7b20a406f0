#pragma once

// Centred Hardy-Littlewood maximal operator on finite spider's webs, empirical
// weak-type constants, pair counting and the level-set decomposition.
//
// Radii are integers. Balls of radius < 1 hold only their centre, so the small-radius
// part M_0 f is f itself and the large-radius part M_inf f is the max over r >= 1.

#include "spiderweb/errors.hpp"
#include "spiderweb/graph.hpp"
#include "spiderweb/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace spiderweb {

struct GraphFunction {
    std::vector<double> values;
    std::string label;

    std::size_t size() const noexcept { return values.size(); }
    double operator[](VertexId v) const { return values[v]; }

    /// Throws DomainError unless every value is finite and nonnegative and the
    /// size matches the graph.
    void check(std::size_t vertex_count) const {
        if (values.size() != vertex_count) {
            throw DomainError("function has " + std::to_string(values.size()) + " values for " +
                              std::to_string(vertex_count) + " vertices");
        }
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (!std::isfinite(values[i]) || values[i] < 0.0) {
                throw DomainError("function value at vertex " + std::to_string(i) + " is not finite and nonnegative");
            }
        }
    }

    bool is_zero() const {
        return std::all_of(values.begin(), values.end(), [](double v) { return v == 0.0; });
    }
};

// ---------------------------------------------------------------------------
// Function families

inline GraphFunction constant_function(const SpiderWeb& g, double c) {
    return {std::vector<double>(g.vertex_count(), c), "const:" + std::to_string(c)};
}

inline GraphFunction point_mass(const SpiderWeb& g, VertexId v, double mass = 1.0) {
    if (v >= g.vertex_count()) throw DomainError("point mass vertex out of range");
    GraphFunction f{std::vector<double>(g.vertex_count(), 0.0), "point:" + std::to_string(v)};
    f.values[v] = mass;
    return f;
}

inline GraphFunction ball_indicator(const SpiderWeb& g, VertexId center, std::uint32_t r) {
    GraphFunction f{std::vector<double>(g.vertex_count(), 0.0),
                    "ball:" + std::to_string(center) + ":" + std::to_string(r)};
    for (VertexId v : ball(g, center, r)) f.values[v] = 1.0;
    return f;
}

/// base^(-alpha * level(x)).
inline GraphFunction radial_profile(const SpiderWeb& g, double base, double alpha) {
    if (!(base > 0.0) || !std::isfinite(alpha)) throw DomainError("radial profile needs base > 0 and finite alpha");
    GraphFunction f{std::vector<double>(g.vertex_count()), "radial:" + std::to_string(base) + ":" + std::to_string(alpha)};
    for (VertexId v = 0; v < g.vertex_count(); ++v) f.values[v] = std::pow(base, -alpha * g.level(v));
    return f;
}

/// Uniform values in [0, 1) from the stream derive_seed(seed, "function").
inline GraphFunction random_function(const SpiderWeb& g, std::uint64_t seed) {
    const CounterStream s(derive_seed(seed, "function"));
    GraphFunction f{std::vector<double>(g.vertex_count()), "random:" + std::to_string(seed)};
    for (VertexId v = 0; v < g.vertex_count(); ++v) f.values[v] = s.unit(v);
    return f;
}

enum class FunctionFamily { point_mass, ball, radial };

inline const char* to_string(FunctionFamily f) {
    switch (f) {
        case FunctionFamily::point_mass: return "point_mass";
        case FunctionFamily::ball: return "ball";
        case FunctionFamily::radial: return "radial";
    }
    return "?";
}

inline std::optional<FunctionFamily> parse_function_family(std::string_view s) {
    for (auto f : {FunctionFamily::point_mass, FunctionFamily::ball, FunctionFamily::radial}) {
        if (s == to_string(f)) return f;
    }
    return std::nullopt;
}

/// point_mass: unit mass at the first vertex of every level.
/// ball: indicators of radius 1, 2, 3 around the first vertex of levels 0, depth/2, depth.
/// radial: 2^(-alpha * level) for alpha in {1/2, 1, 2}.
inline std::vector<GraphFunction> function_family(const SpiderWeb& g, FunctionFamily family) {
    const RootedTree& t = g.tree();
    std::vector<GraphFunction> out;
    switch (family) {
        case FunctionFamily::point_mass:
            for (Level k = 0; k <= t.depth(); ++k) out.push_back(point_mass(g, t.level_begin(k)));
            break;
        case FunctionFamily::ball:
            for (Level k : {Level{0}, t.depth() / 2, t.depth()}) {
                for (std::uint32_t r : {1u, 2u, 3u}) out.push_back(ball_indicator(g, t.level_begin(k), r));
            }
            break;
        case FunctionFamily::radial:
            for (double alpha : {0.5, 1.0, 2.0}) out.push_back(radial_profile(g, 2.0, alpha));
            break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Ball averages

/// Whether the ball of radius r around x reaches past the last generated level,
/// where a truncated graph undercounts volume.
inline bool touches_frontier(const SpiderWeb& g, VertexId x, std::uint32_t r) {
    return static_cast<std::uint64_t>(g.level(x)) + r > g.tree().depth();
}

struct BallAverage {
    double value = 0.0;
    std::size_t ball_size = 0;
    bool frontier = false;
};

/// A_r f(x): mean of f over the closed ball of radius r around x.
inline BallAverage average_Ar(const SpiderWeb& g, const GraphFunction& f, VertexId x, std::uint32_t r) {
    if (r < 1) throw DomainError("average radius must be >= 1");
    if (x >= g.vertex_count()) throw DomainError("vertex out of range");
    if (f.size() != g.vertex_count()) throw DomainError("function size does not match graph");
    BallAverage out;
    double sum = 0.0;
    BoundedBfs bfs(g);
    out.ball_size = bfs.run(x, r, [&](VertexId v, std::uint32_t) { sum += f[v]; });
    out.value = sum / static_cast<double>(out.ball_size);
    out.frontier = touches_frontier(g, x, r);
    return out;
}

enum class BallMode {
    full,      // every radius 1..r_max at every vertex
    interior,  // radius r at x only when level(x) + r <= depth; vertices with no admissible radius get 0
};

inline const char* to_string(BallMode m) { return m == BallMode::full ? "full" : "interior"; }

/// M_inf for a fixed graph and radius range. Ball sizes are tabulated once, so
/// repeated applications (function sweeps) cost one search per vertex or, for
/// functions with small support, one search per support vertex.
class MaximalOperator {
public:
    static constexpr std::size_t kSparseSupportLimit = 64;

    MaximalOperator(const SpiderWeb& g, std::uint32_t r_max, BallMode mode = BallMode::full, unsigned threads = 1)
        : g_(&g), r_max_(r_max), mode_(mode), threads_(std::max(1u, threads)) {
        if (r_max < 1) throw DomainError("r_max must be >= 1");
        const std::size_t n = g.vertex_count();
        offset_.resize(n + 1, 0);
        for (VertexId x = 0; x < n; ++x) offset_[x + 1] = offset_[x] + radius_cap(x) + 1;
        ball_size_.assign(offset_[n], 0);
        for_each_vertex_chunk([&](BoundedBfs& bfs, VertexId begin, VertexId end) {
            std::vector<std::uint64_t> count;
            for (VertexId x = begin; x < end; ++x) {
                const std::uint32_t cap = radius_cap(x);
                count.assign(cap + 1, 0);
                bfs.run(x, cap, [&](VertexId, std::uint32_t d) { ++count[d]; });
                std::uint64_t acc = 0;
                for (std::uint32_t r = 0; r <= cap; ++r) ball_size_[offset_[x] + r] = (acc += count[r]);
            }
        });
        for (VertexId x = 0; x < n; ++x) {
            if (radius_cap(x) > 0 && touches_frontier(g, x, radius_cap(x))) ++frontier_vertices_;
        }
    }

    const SpiderWeb& graph() const noexcept { return *g_; }
    std::uint32_t r_max() const noexcept { return r_max_; }
    BallMode mode() const noexcept { return mode_; }

    /// Largest radius used at x.
    std::uint32_t radius_cap(VertexId x) const {
        if (mode_ == BallMode::full) return r_max_;
        const Level depth = g_->tree().depth();
        return std::min<std::uint32_t>(r_max_, depth - g_->level(x));
    }

    /// |B_r(x)| for r <= radius_cap(x).
    std::uint64_t ball_size(VertexId x, std::uint32_t r) const {
        if (r > radius_cap(x)) throw DomainError("radius above the cap of this vertex");
        return ball_size_[offset_[x] + r];
    }

    /// Vertices whose largest ball reaches past the last level (always 0 in interior mode).
    std::size_t frontier_vertices() const noexcept { return frontier_vertices_; }

    GraphFunction apply(const GraphFunction& f) const {
        f.check(g_->vertex_count());
        std::vector<VertexId> support;
        for (VertexId v = 0; v < f.size(); ++v) {
            if (f[v] != 0.0) {
                support.push_back(v);
                if (support.size() > kSparseSupportLimit) break;
            }
        }
        GraphFunction out{std::vector<double>(f.size(), 0.0), "M_inf(" + f.label + ")"};
        if (support.size() <= kSparseSupportLimit) {
            apply_sparse(f, support, out.values);
        } else {
            apply_dense(f, out.values);
        }
        return out;
    }

private:
    template <class Fn>
    void for_each_vertex_chunk(Fn&& fn) const {
        const auto n = static_cast<VertexId>(g_->vertex_count());
        if (threads_ == 1 || n < 1024) {
            BoundedBfs bfs(*g_);
            fn(bfs, VertexId{0}, n);
            return;
        }
        std::vector<std::thread> pool;
        const VertexId chunk = (n + threads_ - 1) / threads_;
        for (unsigned t = 0; t < threads_; ++t) {
            const VertexId begin = std::min(n, t * chunk), end = std::min(n, begin + chunk);
            pool.emplace_back([&, begin, end] {
                BoundedBfs bfs(*g_);
                fn(bfs, begin, end);
            });
        }
        for (auto& th : pool) th.join();
    }

    void apply_dense(const GraphFunction& f, std::vector<double>& out) const {
        for_each_vertex_chunk([&](BoundedBfs& bfs, VertexId begin, VertexId end) {
            std::vector<double> sum;
            for (VertexId x = begin; x < end; ++x) {
                const std::uint32_t cap = radius_cap(x);
                if (cap == 0) continue;
                sum.assign(cap + 1, 0.0);
                bfs.run(x, cap, [&](VertexId v, std::uint32_t d) { sum[d] += f[v]; });
                double acc = sum[0], best = 0.0;
                for (std::uint32_t r = 1; r <= cap; ++r) {
                    acc += sum[r];
                    best = std::max(best, acc / static_cast<double>(ball_size_[offset_[x] + r]));
                }
                out[x] = best;
            }
        });
    }

    // Between consecutive support distances the numerator is constant and the
    // ball grows, so only radii max(1, d(x, y)) for support points y matter.
    void apply_sparse(const GraphFunction& f, const std::vector<VertexId>& support, std::vector<double>& out) const {
        const std::size_t n = g_->vertex_count();
        const std::size_t s = support.size();
        if (s == 0) return;
        std::vector<std::uint32_t> dist(s * n, DistanceField::kUnreachable);
        BoundedBfs bfs(*g_);
        for (std::size_t i = 0; i < s; ++i) {
            bfs.run(support[i], r_max_, [&](VertexId v, std::uint32_t d) { dist[i * n + v] = d; });
        }
        std::vector<std::pair<std::uint32_t, double>> near;
        for (VertexId x = 0; x < n; ++x) {
            const std::uint32_t cap = radius_cap(x);
            if (cap == 0) continue;
            near.clear();
            for (std::size_t i = 0; i < s; ++i) {
                const std::uint32_t d = dist[i * n + x];
                if (d <= cap) near.emplace_back(std::max<std::uint32_t>(1, d), f[support[i]]);
            }
            std::sort(near.begin(), near.end());
            double acc = 0.0, best = 0.0;
            for (std::size_t i = 0; i < near.size(); ++i) {
                acc += near[i].second;
                if (i + 1 < near.size() && near[i + 1].first == near[i].first) continue;
                best = std::max(best, acc / static_cast<double>(ball_size_[offset_[x] + near[i].first]));
            }
            out[x] = best;
        }
    }

    const SpiderWeb* g_;
    std::uint32_t r_max_;
    BallMode mode_;
    unsigned threads_;
    std::vector<std::uint64_t> offset_;
    std::vector<std::uint64_t> ball_size_;
    std::size_t frontier_vertices_ = 0;
};

/// Pointwise max of A_r f over r = 1..r_max (full balls, no interior restriction).
inline GraphFunction maximal_infty(const SpiderWeb& g, const GraphFunction& f, std::uint32_t r_max) {
    return MaximalOperator(g, r_max).apply(f);
}

/// Radii below 1 see only the centre.
inline GraphFunction maximal_zero(const SpiderWeb& g, const GraphFunction& f) {
    f.check(g.vertex_count());
    return {f.values, "M_0(" + f.label + ")"};
}

/// Full maximal function: max(M_0 f, M_inf f).
inline GraphFunction maximal(const SpiderWeb& g, const GraphFunction& f, std::uint32_t r_max) {
    GraphFunction m = maximal_infty(g, f, r_max);
    for (std::size_t i = 0; i < m.size(); ++i) m.values[i] = std::max(m.values[i], f[i]);
    m.label = "M(" + f.label + ")";
    return m;
}

// ---------------------------------------------------------------------------
// Weak-type constants

/// sum |f|^tau with compensated (Neumaier) long double accumulation.
inline long double norm_tau_pow(const GraphFunction& f, double tau) {
    long double sum = 0.0L, comp = 0.0L;
    for (double v : f.values) {
        const long double term = std::pow(static_cast<long double>(std::fabs(v)), static_cast<long double>(tau));
        const long double t = sum + term;
        comp += std::fabs(sum) >= std::fabs(term) ? (sum - t) + term : (term - t) + sum;
        sum = t;
    }
    return sum + comp;
}

struct WeakTypeReport {
    double tau = 1.0;
    double constant = 0.0;
    double worst_lambda = 0.0;
    std::size_t worst_count = 0;  // #{M_inf f > worst_lambda}
    long double norm_tau_pow = 0.0L;
    std::string function_label;
};

/// Relative offset below each distinct value of M_inf f at which the level set is measured.
inline constexpr double kLambdaEpsilon = 0x1.0p-20;

/// Weak-type quotient sup_lambda lambda^tau * #{m > lambda} / ||f||_tau^tau for a
/// precomputed m = M_inf f. Lambda runs over v * (1 - 2^-20) for the distinct
/// positive values v of m; the distribution function is a step function, so this
/// finite sweep attains the supremum up to that offset.
inline WeakTypeReport weak_type_from_maximal(const GraphFunction& f, const GraphFunction& m, double tau) {
    if (!(tau > 0.0) || !std::isfinite(tau)) throw DomainError("tau must be positive");
    if (f.is_zero()) throw DomainError("weak-type constant of the zero function is undefined");
    WeakTypeReport rep;
    rep.tau = tau;
    rep.function_label = f.label;
    rep.norm_tau_pow = norm_tau_pow(f, tau);
    std::vector<double> sorted(m.values);
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = sorted.size(); i > 0;) {
        const double v = sorted[i - 1];
        if (v <= 0.0) break;
        const double lambda = v * (1.0 - kLambdaEpsilon);
        const auto above = static_cast<std::size_t>(sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), lambda));
        const double q = static_cast<double>(std::pow(static_cast<long double>(lambda), tau) * above / rep.norm_tau_pow);
        if (q > rep.constant) {
            rep.constant = q;
            rep.worst_lambda = lambda;
            rep.worst_count = above;
        }
        while (i > 0 && sorted[i - 1] == v) --i;
    }
    return rep;
}

inline WeakTypeReport weak_type_constant(const MaximalOperator& op, const GraphFunction& f, double tau) {
    if (f.size() == op.graph().vertex_count() && f.is_zero()) {
        throw DomainError("weak-type constant of the zero function is undefined");
    }
    return weak_type_from_maximal(f, op.apply(f), tau);
}

inline WeakTypeReport weak_type_constant(const SpiderWeb& g, const GraphFunction& f, double tau, std::uint32_t r_max) {
    return weak_type_constant(MaximalOperator(g, r_max), f, tau);
}

struct FamilySweep {
    std::vector<WeakTypeReport> members;
    std::size_t worst = 0;  // index of the largest constant
    double constant() const { return members.empty() ? 0.0 : members[worst].constant; }
};

inline FamilySweep weak_type_family(const MaximalOperator& op, FunctionFamily family, double tau) {
    FamilySweep sweep;
    for (const GraphFunction& f : function_family(op.graph(), family)) {
        sweep.members.push_back(weak_type_constant(op, f, tau));
        if (sweep.members.back().constant > sweep.members[sweep.worst].constant) sweep.worst = sweep.members.size() - 1;
    }
    return sweep;
}

// ---------------------------------------------------------------------------
// Pair counting

namespace detail {

inline std::vector<VertexId> as_vertex_set(const SpiderWeb& g, std::vector<VertexId> s, const char* name) {
    if (s.empty()) throw DomainError(std::string("vertex set ") + name + " is empty");
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (s.back() >= g.vertex_count()) throw DomainError(std::string("vertex set ") + name + " has an id out of range");
    return s;
}

}  // namespace detail

struct PairCountReport {
    std::uint32_t r = 0;
    std::size_t E_size = 0, F_size = 0;
    std::uint64_t U_r = 0;
    double ratio = 0.0;  // U_r / (b^(r/2) * sqrt(|E| |F|))
};

struct PairCountProfile {
    std::size_t E_size = 0, F_size = 0;
    double b = 2.0;
    std::vector<std::uint64_t> U;  // U[r] for r = 0..r_max

    double ratio(std::uint32_t r) const {
        return static_cast<double>(U[r]) / (std::pow(b, r / 2.0) * std::sqrt(double(E_size) * double(F_size)));
    }
    /// |G_p| = U_p - U_{p-1}: pairs at distance exactly p.
    std::uint64_t shell(std::uint32_t p) const { return p == 0 ? U[0] : U[p] - U[p - 1]; }
    double shell_ratio(std::uint32_t p) const {
        return static_cast<double>(shell(p)) / (std::pow(b, p / 2.0) * std::sqrt(double(E_size) * double(F_size)));
    }
};

/// U_r for r = 0..r_max with one bounded search per vertex of the smaller set.
/// Sets are deduplicated; empty sets are a DomainError.
inline PairCountProfile pair_count_profile(const SpiderWeb& g, std::vector<VertexId> E, std::vector<VertexId> F,
                                           std::uint32_t r_max, double b) {
    E = detail::as_vertex_set(g, std::move(E), "E");
    F = detail::as_vertex_set(g, std::move(F), "F");
    if (!(b >= 1.0)) throw DomainError("b must be >= 1");
    const bool swap = E.size() > F.size();
    const auto& from = swap ? F : E;
    const auto& to = swap ? E : F;
    std::vector<char> member(g.vertex_count(), 0);
    for (VertexId v : to) member[v] = 1;
    std::vector<std::uint64_t> hits(r_max + 1, 0);
    BoundedBfs bfs(g);
    for (VertexId x : from) {
        bfs.run(x, r_max, [&](VertexId v, std::uint32_t d) {
            if (member[v]) ++hits[d];
        });
    }
    PairCountProfile p{E.size(), F.size(), b, std::vector<std::uint64_t>(r_max + 1)};
    std::uint64_t acc = 0;
    for (std::uint32_t r = 0; r <= r_max; ++r) p.U[r] = (acc += hits[r]);
    return p;
}

/// U_r = #{(x, y) in E x F : d(x, y) <= r} and its normalised ratio
/// a^-r U_r / ((sqrt(b) / a)^r sqrt(|E| |F|)).
inline PairCountReport pair_count(const SpiderWeb& g, std::vector<VertexId> E, std::vector<VertexId> F,
                                  std::uint32_t r, double a, double b) {
    if (!(a >= 1.0) || !(a <= b)) throw DomainError("pair count needs 1 <= a <= b");
    const PairCountProfile p = pair_count_profile(g, std::move(E), std::move(F), r, b);
    return {r, p.E_size, p.F_size, p.U[r], p.ratio(r)};
}

struct SliceCount {
    std::size_t count = 0;
    double bound_ratio = 0.0;  // count / b^((p + k - level(x)) / 2)
};

inline SliceCount slice_count_bound(const SpiderWeb& g, VertexId x, std::uint32_t p, Level k, double b) {
    if (x >= g.vertex_count()) throw DomainError("vertex out of range");
    const std::int64_t e = std::int64_t{p} + k - g.level(x);
    if (e < 0) throw DomainError("need p + k >= level(x)");
    if (!(b >= 1.0)) throw DomainError("b must be >= 1");
    const std::size_t count = sphere_slice(g, x, p, k).size();
    return {count, static_cast<double>(count) / std::pow(b, static_cast<double>(e) / 2.0)};
}

// ---------------------------------------------------------------------------
// Level-set decomposition

struct LevelSetDecomposition {
    double a = 2.0;
    std::uint32_t r = 1;
    std::int32_t N = 0;                       // largest n with 2^n <= a^r
    std::vector<VertexId> omega;              // f <= 1/2
    std::vector<std::vector<VertexId>> E;     // E[n] = {2^(n-1) < f <= 2^n}, n = 0..N
    std::vector<VertexId> F;                  // f > a^r / 2
    std::vector<VertexId> uncovered;          // in none of the above
    std::vector<VertexId> domination_failures;

    // Present when tau was given: V[n] = {2^n A_r(1_{E_n}) >= 2^(n beta - 1) alpha}
    // with beta = (2 - tau) / 4 and alpha = a^(-beta r) (1 - 2^-beta).
    std::optional<double> beta, alpha;
    std::vector<std::vector<VertexId>> V;

    bool ok() const { return uncovered.empty() && domination_failures.empty(); }
};

/// Splits vertices by the size of f and checks coverage and the pointwise bound
/// f <= 1/2 [Omega] + sum_n 2^n [E_n] + f [F_r].
inline LevelSetDecomposition levelset_decomposition(const SpiderWeb& g, const GraphFunction& f, std::uint32_t r,
                                                    double a, std::optional<double> tau = std::nullopt) {
    f.check(g.vertex_count());
    if (r < 1) throw DomainError("r must be >= 1");
    if (!(a > 1.0)) throw DomainError("a must be > 1");
    LevelSetDecomposition out;
    out.a = a;
    out.r = r;
    const double top = std::pow(a, static_cast<double>(r));
    out.N = static_cast<std::int32_t>(std::floor(std::log2(top)));
    while (std::ldexp(1.0, out.N + 1) <= top) ++out.N;
    while (std::ldexp(1.0, out.N) > top) --out.N;
    out.E.assign(static_cast<std::size_t>(out.N + 1), {});

    for (VertexId x = 0; x < g.vertex_count(); ++x) {
        const double v = f[x];
        bool covered = false;
        double bound = 0.0;
        if (v <= 0.5) {
            out.omega.push_back(x);
            covered = true;
            bound += 0.5;
        }
        for (std::int32_t n = 0; n <= out.N; ++n) {
            if (std::ldexp(1.0, n - 1) < v && v <= std::ldexp(1.0, n)) {
                out.E[static_cast<std::size_t>(n)].push_back(x);
                covered = true;
                bound += std::ldexp(1.0, n);
            }
        }
        if (v > top / 2.0) {
            out.F.push_back(x);
            covered = true;
            bound += v;
        }
        if (!covered) out.uncovered.push_back(x);
        if (v > bound) out.domination_failures.push_back(x);
    }

    if (tau) {
        if (!(*tau > 0.0 && *tau < 2.0)) throw DomainError("tau must lie in (0, 2) for the V_n sets");
        const double beta = (2.0 - *tau) / 4.0;
        const double alpha = std::pow(a, -beta * r) * (1.0 - std::pow(2.0, -beta));
        out.beta = beta;
        out.alpha = alpha;
        out.V.assign(out.E.size(), {});
        std::vector<char> in_band(g.vertex_count());
        BoundedBfs bfs(g);
        for (std::size_t n = 0; n < out.E.size(); ++n) {
            if (out.E[n].empty()) continue;
            std::fill(in_band.begin(), in_band.end(), 0);
            for (VertexId v : out.E[n]) in_band[v] = 1;
            const double scale = std::ldexp(1.0, static_cast<int>(n));
            const double threshold = std::pow(2.0, static_cast<double>(n) * beta - 1.0) * alpha;
            for (VertexId x = 0; x < g.vertex_count(); ++x) {
                std::size_t hits = 0;
                const std::size_t size = bfs.run(x, r, [&](VertexId v, std::uint32_t) { hits += in_band[v]; });
                if (scale * static_cast<double>(hits) / static_cast<double>(size) >= threshold) out.V[n].push_back(x);
            }
        }
    }
    return out;
}

}  // namespace spiderweb
