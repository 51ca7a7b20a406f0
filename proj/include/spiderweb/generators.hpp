#pragma once

// Seeded constructors for the graph families used in experiments.
//
// Random draws come from counter streams keyed by derive_seed(seed, label):
//   "ab_tree"        successor count of the i-th internal vertex (in id order)
//   "spiderweb_edges" acceptance of the j-th admissible candidate edge
// so graphs are reproducible from (family, parameters, seed) alone.

#include "spiderweb/graph.hpp"
#include "spiderweb/rng.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace spiderweb {

enum class Family { dyadic_web, homogeneous_tree, random_ab_tree, random_spiderweb };

inline std::string_view to_string(Family f) {
    switch (f) {
        case Family::dyadic_web: return "dyadic_web";
        case Family::homogeneous_tree: return "homogeneous_tree";
        case Family::random_ab_tree: return "random_ab_tree";
        case Family::random_spiderweb: return "random_spiderweb";
    }
    return "?";
}

inline std::optional<Family> parse_family(std::string_view s) {
    for (Family f : {Family::dyadic_web, Family::homogeneous_tree, Family::random_ab_tree, Family::random_spiderweb}) {
        if (s == to_string(f)) return f;
    }
    return std::nullopt;
}

struct GeneratorSpec {
    Family family = Family::dyadic_web;
    Level depth = 1;
    std::uint32_t q = 2;
    std::uint32_t a = 2;
    std::uint32_t b = 2;
    double density = 0.0;
    std::uint64_t seed = 0;

    void validate() const {
        if (depth < 1) throw DomainError("depth must be >= 1");
        switch (family) {
            case Family::homogeneous_tree:
                if (q < 2) throw DomainError("homogeneous tree needs q >= 2");
                break;
            case Family::random_spiderweb:
                if (!(density >= 0.0 && density <= 1.0)) throw DomainError("density must lie in [0, 1]");
                [[fallthrough]];
            case Family::random_ab_tree:
                if (a < 2 || a > b) throw DomainError("need 2 <= a <= b");
                break;
            case Family::dyadic_web:
                break;
        }
    }
};

namespace detail {

inline void check_size(long double count) {
    if (count > 2.0e8L) throw SizeError("generator output would exceed 2e8 vertices");
}

}  // namespace detail

/// Binary words of length <= depth. Word w of length L (read as a binary number,
/// first letter most significant) has id 2^L - 1 + w. Extra edges join
/// lexicographic neighbours of equal length, plus the all-0 / all-1 wrap edge.
inline SpiderWeb gen_dyadic_web(Level depth) {
    if (depth < 1) throw DomainError("depth must be >= 1");
    if (depth > 26) throw SizeError("dyadic web depth above 26 is too large");
    const std::size_t n = (std::size_t{1} << (depth + 1)) - 1;
    std::vector<VertexId> parent(n);
    parent[0] = kNoVertex;
    for (std::size_t v = 1; v < n; ++v) parent[v] = static_cast<VertexId>((v - 1) / 2);
    std::vector<Edge> edges;
    for (Level len = 1; len <= depth; ++len) {
        const VertexId first = (VertexId{1} << len) - 1;
        const VertexId count = VertexId{1} << len;
        for (VertexId w = 0; w + 1 < count; ++w) edges.emplace_back(first + w, first + w + 1);
        if (count > 2) edges.emplace_back(first, first + count - 1);
    }
    return SpiderWeb(RootedTree(std::move(parent)), std::move(edges));
}

/// Id of the dyadic-web vertex for a binary word given as a string of '0'/'1'.
inline VertexId dyadic_vertex(std::string_view word) {
    VertexId value = 0;
    for (char c : word) {
        if (c != '0' && c != '1') throw DomainError("dyadic words use letters 0 and 1");
        value = value * 2 + static_cast<VertexId>(c - '0');
    }
    return (VertexId{1} << word.size()) - 1 + value;
}

inline RootedTree homogeneous_rooted_tree(std::uint32_t q, Level depth) {
    if (q < 2) throw DomainError("homogeneous tree needs q >= 2");
    if (depth < 1) throw DomainError("depth must be >= 1");
    long double total = 1, layer = 1;
    for (Level k = 1; k <= depth; ++k) total += (layer *= q);
    detail::check_size(total);
    std::vector<VertexId> parent{kNoVertex};
    parent.reserve(static_cast<std::size_t>(total));
    for (std::size_t v = 0; parent.size() < static_cast<std::size_t>(total); ++v) {
        for (std::uint32_t i = 0; i < q; ++i) parent.push_back(static_cast<VertexId>(v));
    }
    return RootedTree(std::move(parent));
}

/// Rooted tree in which every vertex of level < depth has exactly q successors.
inline SpiderWeb gen_homogeneous_tree(std::uint32_t q, Level depth) {
    return SpiderWeb(homogeneous_rooted_tree(q, depth));
}

inline RootedTree random_ab_rooted_tree(std::uint32_t a, std::uint32_t b, Level depth, std::uint64_t seed) {
    if (a < 2 || a > b) throw DomainError("need 2 <= a <= b");
    if (depth < 1) throw DomainError("depth must be >= 1");
    const CounterStream stream(derive_seed(seed, "ab_tree"));
    std::vector<VertexId> parent{kNoVertex};
    std::size_t level_begin = 0, level_end = 1;
    for (Level k = 0; k < depth; ++k) {
        for (std::size_t v = level_begin; v < level_end; ++v) {
            const std::uint32_t span = b - a + 1;
            // One stream value per internal vertex; the modulo bias is below 2^-58.
            const std::uint32_t count = a + static_cast<std::uint32_t>(stream.at(v) % span);
            for (std::uint32_t i = 0; i < count; ++i) parent.push_back(static_cast<VertexId>(v));
            detail::check_size(static_cast<long double>(parent.size()));
        }
        level_begin = level_end;
        level_end = parent.size();
    }
    return RootedTree(std::move(parent));
}

/// Every vertex of level < depth gets a successor count drawn uniformly from {a..b}.
inline SpiderWeb gen_random_ab_tree(std::uint32_t a, std::uint32_t b, Level depth, std::uint64_t seed) {
    return SpiderWeb(random_ab_rooted_tree(a, b, depth, seed));
}

/// Random spider's web over gen_random_ab_tree(a, b, depth, seed). Levels are
/// processed top-down; the admissible candidates at level k are, in order,
/// sibling pairs (by parent id, then child order) followed by child pairs of every
/// already accepted edge at level k-1 (by edge order). Each candidate is accepted
/// with probability `density`.
inline SpiderWeb gen_random_spiderweb(std::uint32_t a, std::uint32_t b, Level depth, double density,
                                      std::uint64_t seed) {
    if (!(density >= 0.0 && density <= 1.0)) throw DomainError("density must lie in [0, 1]");
    RootedTree tree = random_ab_rooted_tree(a, b, depth, seed);
    const CounterStream stream(derive_seed(seed, "spiderweb_edges"));
    std::uint64_t candidate = 0;
    auto accept = [&] { return stream.unit(candidate++) < density; };

    std::vector<Edge> edges;
    std::vector<Edge> previous;  // accepted edges of the level above
    for (Level k = 1; k <= depth; ++k) {
        std::vector<Edge> current;
        for (VertexId u = tree.level_begin(k - 1); u < tree.level_end(k - 1); ++u) {
            const auto kids = tree.children(u);
            for (std::size_t i = 0; i < kids.size(); ++i) {
                for (std::size_t j = i + 1; j < kids.size(); ++j) {
                    if (accept()) current.emplace_back(kids[i], kids[j]);
                }
            }
        }
        for (const Edge& e : previous) {
            for (VertexId x : tree.children(e.a)) {
                for (VertexId y : tree.children(e.b)) {
                    if (accept()) current.emplace_back(x, y);
                }
            }
        }
        std::sort(current.begin(), current.end());
        edges.insert(edges.end(), current.begin(), current.end());
        previous = std::move(current);
    }
    return SpiderWeb(std::move(tree), std::move(edges));
}

inline SpiderWeb generate(const GeneratorSpec& spec) {
    spec.validate();
    switch (spec.family) {
        case Family::dyadic_web: return gen_dyadic_web(spec.depth);
        case Family::homogeneous_tree: return gen_homogeneous_tree(spec.q, spec.depth);
        case Family::random_ab_tree: return gen_random_ab_tree(spec.a, spec.b, spec.depth, spec.seed);
        case Family::random_spiderweb:
            return gen_random_spiderweb(spec.a, spec.b, spec.depth, spec.density, spec.seed);
    }
    throw DomainError("unknown family");
}

}  // namespace spiderweb
