#include "spiderweb/generators.hpp"
#include "spiderweb/geodesics.hpp"
#include "spiderweb/half_integer.hpp"
#include "spiderweb/reference.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace spiderweb;

namespace {

HalfInteger hi(std::int64_t twice) { return HalfInteger::from_twice(twice); }

}  // namespace

TEST(HalfInteger, ArithmeticAndFormatting) {
    EXPECT_EQ(hi(3).str(), "1.5");
    EXPECT_EQ(hi(4).str(), "2");
    EXPECT_EQ(hi(-1).str(), "-0.5");
    EXPECT_EQ(hi(3) + hi(1), HalfInteger::from_integer(2));
    EXPECT_EQ(HalfInteger::ceil_of(1.2), hi(3));
    EXPECT_EQ(HalfInteger::ceil_of(1.5), hi(3));
    EXPECT_EQ((hi(3) * 4).value(), 6.0);
    EXPECT_LT(hi(1), hi(2));
}

TEST(GromovProduct, IdentityAndTreeConfluent) {
    const SpiderWeb g = gen_random_ab_tree(2, 3, 6, 2);
    EXPECT_EQ(gromov_product(g, 5, 17, 5), hi(0));
    const RootedTree& t = g.tree();
    for (VertexId y = 0; y < g.vertex_count(); y += 9) {
        for (VertexId z = 0; z < g.vertex_count(); z += 13) {
            // Confluent by walking parent links to equal level, then together.
            VertexId a = y, b = z;
            while (t.level(a) > t.level(b)) a = t.parent(a);
            while (t.level(b) > t.level(a)) b = t.parent(b);
            while (a != b) a = t.parent(a), b = t.parent(b);
            EXPECT_EQ(gromov_product(g, y, z, 0), HalfInteger::from_integer(t.level(a)));
        }
    }
}

TEST(GromovProduct, DyadicMatchesDirectRecomputation) {
    const SpiderWeb g = gen_dyadic_web(8);
    const auto adj = reference::adjacency(g);
    const auto trip = sample_pairs(g.vertex_count(), 60, 4);
    for (std::size_t i = 0; i + 1 < trip.size(); i += 2) {
        const VertexId y = trip[i].x, z = trip[i].y, w = trip[i + 1].x;
        const auto dw = reference::distances(adj, w), dy = reference::distances(adj, y);
        const std::int64_t twice = std::int64_t{dw[y]} + dw[z] - dy[z];
        EXPECT_EQ(gromov_product(g, y, z, w), hi(twice));
        EXPECT_GE(twice, 0);
    }
}

TEST(FourPointDelta, TreesAreZero) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const SpiderWeb g = gen_random_ab_tree(2, 3, 3, seed);
        ASSERT_LE(g.vertex_count(), kExhaustiveDeltaLimit);
        const auto e = four_point_delta(g, DeltaMode::exhaustive);
        EXPECT_EQ(e.delta, hi(0));
        EXPECT_EQ(e.mode, DeltaMode::exhaustive);
    }
    const SpiderWeb edge(RootedTree({kNoVertex, 0}));
    EXPECT_EQ(four_point_delta(edge, DeltaMode::exhaustive).delta, hi(0));
}

TEST(FourPointDelta, ExhaustiveMatchesReferenceAndWitness) {
    for (Level depth : {3u, 4u}) {
        const SpiderWeb g = gen_dyadic_web(depth);
        const auto m = reference::all_pairs(reference::adjacency(g));
        const std::size_t n = g.vertex_count();
        const auto e = four_point_delta(g, DeltaMode::exhaustive);
        EXPECT_EQ(e.delta.twice(), reference::four_point_delta_twice(m, n)) << depth;
        // The witness attains the value.
        auto d = [&](VertexId a, VertexId b) { return static_cast<std::int64_t>(m[std::size_t{a} * n + b]); };
        const auto [x, y, z, w] = e.witness;
        const std::int64_t xy = d(w, x) + d(w, y) - d(x, y), yz = d(w, y) + d(w, z) - d(y, z),
                           xz = d(w, x) + d(w, z) - d(x, z);
        EXPECT_EQ(std::max<std::int64_t>(0, std::min(xy, yz) - xz), e.delta.twice());
    }
}

TEST(FourPointDelta, ExhaustiveRefusesLargeGraphs) {
    EXPECT_THROW(four_point_delta(gen_dyadic_web(6), DeltaMode::exhaustive), SizeError);
}

TEST(FourPointDelta, SampledIsLowerBoundAndDeterministic) {
    const SpiderWeb g = gen_dyadic_web(4);
    const auto exact = four_point_delta(g, DeltaMode::exhaustive);
    const auto s1 = four_point_delta(g, DeltaMode::sampled, 20000, 3, 1);
    const auto s4 = four_point_delta(g, DeltaMode::sampled, 20000, 3, 4);
    EXPECT_LE(s1.delta, exact.delta);
    EXPECT_EQ(s1.delta, s4.delta);
    EXPECT_EQ(s1.witness.x, s4.witness.x);
    EXPECT_EQ(s1.quadruples_checked, 20000u);
    const auto big = four_point_delta(gen_dyadic_web(7), DeltaMode::sampled, 100000, 1, 2);
    EXPECT_GE(big.delta, hi(0));
    EXPECT_EQ(big.mode, DeltaMode::sampled);
}

TEST(FourPointDelta, FixedBaseBracketsAllBases) {
    for (Level depth : {3u, 4u}) {
        const SpiderWeb g = gen_dyadic_web(depth);
        const HalfInteger all = four_point_delta(g, DeltaMode::exhaustive).delta;
        for (VertexId w = 0; w < g.vertex_count(); ++w) {
            const HalfInteger fixed = four_point_delta_fixed_base(g, w).delta;
            EXPECT_LE(fixed, all);
            EXPECT_LE(all, fixed * 2 + hi(1)) << "base " << w;
        }
    }
}

TEST(StandardGeodesic, SelfPairIsTrivial) {
    const SpiderWeb g = gen_dyadic_web(5);
    const auto s = standard_geodesic(g, 20, 20);
    EXPECT_EQ(s.total_length(), 0u);
    EXPECT_EQ(s.ascending, std::vector<VertexId>{20});
    EXPECT_EQ(s.horizontal, std::vector<VertexId>{20});
    EXPECT_EQ(s.descending, std::vector<VertexId>{20});
}

TEST(StandardGeodesic, TreePathGoesThroughConfluent) {
    const SpiderWeb g = gen_random_ab_tree(2, 3, 5, 7);
    const auto adj = reference::adjacency(g);
    for (const auto& p : sample_pairs(g.vertex_count(), 200, 1)) {
        const auto s = standard_geodesic(g, p.x, p.y);
        EXPECT_EQ(s.horizontal_length(), 0u);
        EXPECT_EQ(s.horizontal.front(), g.tree().confluent(p.x, p.y));
        EXPECT_EQ(s.total_length(), reference::tree_distance(g.tree(), p.x, p.y));
        EXPECT_TRUE(reference::is_walk(adj, s.path()));
    }
}

TEST(StandardGeodesic, ShapeAndLengthOnDyadicWeb) {
    const SpiderWeb g = gen_dyadic_web(10);
    const auto adj = reference::adjacency(g);
    const auto pairs = sample_pairs(g.vertex_count(), 500, 12);
    const auto geos = standard_geodesics(g, pairs);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& s = geos[i];
        const auto d = reference::distances(adj, pairs[i].x);
        EXPECT_EQ(s.total_length(), d[pairs[i].y]);
        EXPECT_EQ(s.first(), pairs[i].x);
        EXPECT_EQ(s.last(), pairs[i].y);
        for (std::size_t k = 1; k < s.ascending.size(); ++k) EXPECT_EQ(g.level(s.ascending[k]) + 1, g.level(s.ascending[k - 1]));
        for (std::size_t k = 1; k < s.descending.size(); ++k) EXPECT_EQ(g.level(s.descending[k]), g.level(s.descending[k - 1]) + 1);
        for (std::size_t k = 1; k < s.horizontal.size(); ++k) {
            EXPECT_EQ(g.level(s.horizontal[k]), g.level(s.horizontal[0]));
            EXPECT_TRUE(g.horizontally_adjacent(s.horizontal[k - 1], s.horizontal[k]));
        }
        EXPECT_TRUE(reference::is_walk(adj, s.path()));
    }
}

TEST(StandardGeodesic, HorizontalLevelIsMinimumOverShortestPaths) {
    const SpiderWeb g = gen_random_spiderweb(2, 3, 5, 0.6, 31);
    const auto m = reference::all_pairs(reference::adjacency(g));
    const std::size_t n = g.vertex_count();
    for (VertexId x = 0; x < n; x += 5) {
        const GeodesicSource src(g, x);
        for (VertexId y = 0; y < n; y += 3) {
            const auto dxy = m[x * n + y];
            Level least = g.level(x);
            for (VertexId v = 0; v < n; ++v) {
                if (m[x * n + v] + m[v * n + y] == dxy) least = std::min(least, g.level(v));
            }
            EXPECT_EQ(src.min_level(y), least);
            EXPECT_EQ(g.level(src.to(y).horizontal.front()), least);
        }
    }
}

TEST(StandardGeodesic, ExhaustiveOnRandomWebs) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const SpiderWeb g = gen_random_spiderweb(2, 3, 5, 0.3 + 0.15 * static_cast<double>(seed), seed);
        const auto m = reference::all_pairs(reference::adjacency(g));
        const std::size_t n = g.vertex_count();
        for (VertexId x = 0; x < n; ++x) {
            const GeodesicSource src(g, x);
            for (VertexId y = 0; y < n; ++y) ASSERT_EQ(src.to(y).total_length(), m[x * n + y]);
        }
    }
}

TEST(StandardGeodesic, BrokenWebIsDetected) {
    // 5 and 6 joined although their parents 3 and 4 are not; 3-5-6-4 beats the tree.
    const RootedTree t({kNoVertex, 0, 0, 1, 2, 3, 4});
    const SpiderWeb g(t, {{5, 6}});
    EXPECT_THROW(standard_geodesic(g, 3, 4), ConsistencyError);
}

TEST(HorizontalBound, TreeAndDyadicPass) {
    const SpiderWeb t = gen_random_ab_tree(2, 3, 6, 4);
    const auto pairs = sample_pairs(t.vertex_count(), 300, 2);
    const auto r = horizontal_bound_report(t, hi(0), true, pairs);
    EXPECT_EQ(r.max_horizontal, 0u);
    EXPECT_EQ(r.bound, 1u);
    EXPECT_STREQ(r.verdict(), "pass");

    const SpiderWeb d = gen_dyadic_web(8);
    const HalfInteger delta = four_point_delta(d, DeltaMode::sampled, 200000, 8).delta;
    const auto rd = horizontal_bound_report(d, delta, false, sample_pairs(d.vertex_count(), 2000, 8));
    EXPECT_EQ(rd.hard_failures(), 0u);
    EXPECT_LE(rd.max_horizontal, rd.bound);
    EXPECT_EQ(rd.pairs_checked, 2000u);
}

TEST(HorizontalBound, LabelsExceedancesByDeltaKind) {
    // Dyadic web with a deliberately too small delta forces exceedances.
    const SpiderWeb d = gen_dyadic_web(8);
    const auto pairs = sample_pairs(d.vertex_count(), 2000, 3);
    const auto est = horizontal_bound_report(d, hi(0), false, pairs);
    ASSERT_FALSE(est.exceeding.empty());
    EXPECT_STREQ(est.verdict(), "inconclusive");
    EXPECT_EQ(est.hard_failures(), 0u);
    const auto exact = horizontal_bound_report(d, hi(0), true, pairs);
    EXPECT_STREQ(exact.verdict(), "fail");
    EXPECT_EQ(exact.hard_failures(), exact.exceeding.size());
}

TEST(HorizontalBound, RefusesInvalidGraph) {
    const RootedTree t({kNoVertex, 0, 0, 1, 2});
    EXPECT_THROW(horizontal_bound_report(SpiderWeb(t, {{1, 4}}), hi(0), true, {{1, 4}}), PreconditionError);
    EXPECT_THROW(horizontal_bound_report(gen_dyadic_web(3), hi(-2), true, {}), DomainError);
}
