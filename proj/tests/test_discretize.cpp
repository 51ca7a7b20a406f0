#include "spiderweb/discretize.hpp"
#include "spiderweb/generators.hpp"
#include "spiderweb/metric_tree.hpp"
#include "spiderweb/poincare_disk.hpp"
#include "spiderweb/reference.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace spiderweb;

namespace {

DiscretizationConfig tree_config(std::uint32_t R, double theta) {
    DiscretizationConfig cfg;
    cfg.max_radius = R;
    cfg.theta = theta;
    cfg.allow_small_theta = true;
    cfg.oversample = 1;
    cfg.calibrate_K = true;
    return cfg;
}

// Original vertex id of every discretized vertex (tree oracle embeds vertices).
std::vector<VertexId> original_ids(const Discretization<TreePoint>& d) {
    std::vector<VertexId> out;
    for (const TreePoint& p : d.embedding) {
        EXPECT_TRUE(p.edge == 0 || p.t == 1.0);
        out.push_back(p.edge);
    }
    return out;
}

}  // namespace

TEST(Config, Validation) {
    DiscretizationConfig cfg;
    EXPECT_NO_THROW(cfg.validate());
    cfg.theta = 5;
    EXPECT_THROW(cfg.validate(), ConfigurationError);
    cfg.allow_small_theta = true;
    EXPECT_NO_THROW(cfg.validate());
    cfg.K = 0;
    EXPECT_THROW(cfg.validate(), ConfigurationError);
    cfg = {};
    cfg.max_radius = 0;
    EXPECT_THROW(cfg.validate(), ConfigurationError);
}

TEST(SphereNets, DiskLevelOneAndSeparation) {
    const PoincareDisk disk;
    const auto nets = build_sphere_nets(disk, 4, 8, 1);
    ASSERT_EQ(nets.levels.size(), 5u);
    EXPECT_EQ(nets.levels[0].size(), 1u);
    for (std::size_t n = 1; n < nets.levels.size(); ++n) {
        EXPECT_FALSE(nets.levels[n].empty());
        for (std::size_t i = 0; i < nets.levels[n].size(); ++i) {
            EXPECT_NEAR(disk.distance({0, 0}, nets.levels[n][i]), double(n), kEpsSphere);
            for (std::size_t j = i + 1; j < nets.levels[n].size(); ++j)
                EXPECT_GE(disk.distance(nets.levels[n][i], nets.levels[n][j]), 1.0);
        }
    }
}

TEST(SphereNets, GreedyIsMaximalForItsSample) {
    const PoincareDisk disk;
    const auto cloud = disk.sample_sphere(5, 800, 2);
    const auto net = greedy_net(disk, cloud);
    for (const auto& p : cloud) {
        double best = 1e300;
        for (const auto& x : net) best = std::min(best, disk.distance(p, x));
        EXPECT_LT(best, 1.0 + kEpsEqual);
    }
}

TEST(SphereNets, DoublingOversampleIsStable) {
    const PoincareDisk disk;
    const auto a = build_sphere_nets(disk, 6, 8, 3), b = build_sphere_nets(disk, 6, 16, 3);
    for (std::size_t n = 1; n <= 6; ++n) {
        const double x = double(a.levels[n].size()), y = double(b.levels[n].size());
        EXPECT_LE(std::fabs(y - x), 0.1 * x) << n;
    }
}

TEST(SphereNets, TreeRecoversLevels) {
    const MetricTree m(homogeneous_rooted_tree(3, 4));
    const auto nets = build_sphere_nets(m, 4, 1, 5);
    for (Level n = 1; n <= 4; ++n) EXPECT_EQ(nets.levels[n].size(), m.tree().level_size(n));
}

TEST(BuildTree, SingleLevelIsStar) {
    const PoincareDisk disk;
    const auto nets = build_sphere_nets(disk, 1, 8, 1);
    const auto te = build_tree(disk, nets.levels);
    EXPECT_EQ(te.tree.depth(), 1u);
    for (VertexId v = 1; v < te.tree.size(); ++v) EXPECT_EQ(te.tree.parent(v), 0u);
}

TEST(BuildTree, DiskParentsWithinTwo) {
    const PoincareDisk disk;
    const auto nets = build_sphere_nets(disk, 6, 8, 9);
    const auto te = build_tree(disk, nets.levels);
    for (VertexId v = 1; v < te.tree.size(); ++v) {
        EXPECT_LE(te.parent_distance[v], 2.0 + 1e-6);
        EXPECT_NEAR(te.parent_distance[v], disk.distance(te.embedding[v], te.embedding[te.tree.parent(v)]), 1e-12);
        // The parent is a nearest point of the level above.
        const Level k = te.tree.level(v) - 1;
        for (VertexId u = te.tree.level_begin(k); u < te.tree.level_end(k); ++u)
            EXPECT_GE(disk.distance(te.embedding[v], te.embedding[u]), te.parent_distance[v] - 1e-12);
    }
}

TEST(BuildTree, SparseNetIsRejected) {
    // Two far-apart points on level 2 under a single level-1 point.
    const PoincareDisk disk;
    std::vector<std::vector<DiskPoint>> nets{{disk.basepoint()},
                                             {PoincareDisk::polar(1, 0.0)},
                                             {PoincareDisk::polar(2, 0.0), PoincareDisk::polar(2, 3.0)}};
    EXPECT_THROW(build_tree(disk, nets), NetQualityError);
}

TEST(GammaEdges, SmallThetaGivesPureTreeOnDisk) {
    const PoincareDisk disk;
    const auto nets = build_sphere_nets(disk, 4, 8, 1);
    const auto te = build_tree(disk, nets.levels);
    EXPECT_TRUE(build_gamma_edges(disk, te.tree, te.embedding, 0.5).empty());
    double lo = 0, hi = 0;
    const auto e = build_gamma_edges(disk, te.tree, te.embedding, 3.0, &lo, &hi);
    EXPECT_FALSE(e.empty());
    EXPECT_GE(lo, 1.0);
    EXPECT_LE(hi, 3.0);
    for (const Edge& x : e) EXPECT_EQ(te.tree.level(x.a), te.tree.level(x.b));
}

TEST(Completion, AlreadyValidAndSiblingEdges) {
    const SpiderWeb web = gen_dyadic_web(5);
    const auto c = complete_to_spiderweb(web, 1);
    EXPECT_TRUE(c.added.empty());
    const RootedTree t = homogeneous_rooted_tree(2, 3);
    const SpiderWeb sib(t, {{t.children(3)[0], t.children(3)[1]}});
    EXPECT_TRUE(complete_to_spiderweb(sib, 1).added.empty());
}

TEST(Completion, AddsProjectionsAndValidates) {
    const RootedTree t = homogeneous_rooted_tree(2, 5);
    // Cousins at level 5 whose grandparents coincide at level 3.
    const VertexId g3 = t.level_begin(3);
    const VertexId p1 = t.children(g3)[0], p2 = t.children(g3)[1];
    const VertexId x = t.children(p1)[0], y = t.children(p2)[1];
    const SpiderWeb gamma(t, {{x, y}});
    EXPECT_EQ(minimal_quasi_threshold(gamma), 2u);
    EXPECT_THROW(complete_to_spiderweb(gamma, 1), PreconditionError);
    const auto c = complete_to_spiderweb(gamma, 2);
    ASSERT_EQ(c.added.size(), 1u);
    EXPECT_EQ(c.added[0], Edge(p1, p2));
    EXPECT_TRUE(validate_spiderweb(c.web).empty());
}

TEST(Completion, MinimalThresholdIsLeastPassing) {
    const PoincareDisk disk;
    DiscretizationConfig cfg;
    cfg.max_radius = 5;
    cfg.calibrate_K = true;
    const auto d = discretize(disk, cfg);
    const SpiderWeb gamma = d.gamma();
    EXPECT_TRUE(validate_quasi_spiderweb(gamma, d.minimal_K).empty());
    if (d.minimal_K > 1) {
        EXPECT_FALSE(validate_quasi_spiderweb(gamma, d.minimal_K - 1).empty());
    }
    EXPECT_TRUE(validate_spiderweb(d.web).empty());
}

TEST(Discretize, MetricTreeRoundTrip) {
    for (double theta : {0.5, 15.0}) {
        const MetricTree m(random_ab_rooted_tree(2, 3, 6, 4));
        const auto d = discretize(m, tree_config(6, theta));
        const auto ids = original_ids(d);
        ASSERT_EQ(d.web.vertex_count(), m.tree().size());
        for (VertexId v = 1; v < d.web.vertex_count(); ++v) EXPECT_EQ(ids[d.web.parent(v)], m.tree().parent(ids[v]));
        EXPECT_TRUE(validate_spiderweb(d.web).empty());
        EXPECT_LE(d.max_parent_distance, 1.0 + 1e-12);
        if (theta < 1) {
            EXPECT_TRUE(d.gamma_edges.empty());
            for (VertexId x = 0; x < d.web.vertex_count(); x += 7) {
                const auto dist = bfs_distances(d.web, x);
                for (VertexId y = 0; y < d.web.vertex_count(); ++y)
                    EXPECT_EQ(dist[y], reference::tree_distance(m.tree(), ids[x], ids[y]));
            }
            const auto ri = rough_isometry_report(d, m, 2000, 1, 0);
            EXPECT_EQ(ri.max_abs_deviation, 0.0);
            EXPECT_GT(ri.pairs, 0u);
        }
    }
}

TEST(Discretize, DiskPipelineInvariants) {
    const PoincareDisk disk;
    DiscretizationConfig cfg;
    cfg.max_radius = 5;
    cfg.seed = 2;
    const auto d = discretize(disk, cfg);
    const RootedTree& t = d.web.tree();
    EXPECT_TRUE(validate_spiderweb(d.web).empty());
    EXPECT_LE(d.max_parent_distance, 2.0 + 1e-6);
    EXPECT_EQ(d.parent_distance_exceedances, 0u);
    EXPECT_GE(d.min_gamma_edge_length, 1.0);
    EXPECT_LE(d.max_gamma_edge_length, 15.0);
    for (VertexId v = 0; v < t.size(); ++v) {
        EXPECT_EQ(std::lround(disk.distance(disk.basepoint(), d.embedding[v])), long(t.level(v)));
    }
    const auto cmp = compare_gamma_distances(d, 2);
    EXPECT_GT(cmp.pairs, 0u);
    EXPECT_EQ(cmp.violations, 0u);
    EXPECT_LE(d.valence.max, d.valence.ceiling);
}

TEST(Discretize, ValenceCeilingIsEnforced) {
    const PoincareDisk disk;
    DiscretizationConfig cfg;
    cfg.max_radius = 5;
    cfg.valence_factor = 0.5;
    EXPECT_THROW(discretize(disk, cfg), ConfigurationError);
}

TEST(Discretize, UncalibratedSmallKIsRejected) {
    const PoincareDisk disk;
    DiscretizationConfig cfg;
    cfg.max_radius = 5;
    cfg.calibrate_K = true;
    const auto d = discretize(disk, cfg);
    if (d.minimal_K > 1) {
        cfg.calibrate_K = false;
        cfg.K = d.minimal_K - 1;
        EXPECT_THROW(discretize(disk, cfg), PreconditionError);
    }
}

TEST(Diagnostics, RoughIsometrySelfPairsAndDeterminism) {
    const PoincareDisk disk;
    DiscretizationConfig cfg;
    cfg.max_radius = 5;
    const auto d = discretize(disk, cfg);
    const auto a = rough_isometry_report(d, disk, 3000, 7, 1), b = rough_isometry_report(d, disk, 3000, 7, 1);
    EXPECT_EQ(a.max_abs_deviation, b.max_abs_deviation);
    EXPECT_EQ(a.pairs, 3000u);
    EXPECT_LE(a.min_signed, a.max_signed);
    EXPECT_EQ(rough_isometry_report(d, disk, 10, 7, 99).pairs, 0u);
    EXPECT_THROW(rough_isometry_report(d, disk, 0, 7, 1), DomainError);
}

TEST(Diagnostics, OverlapMatchesBruteForceOnTree) {
    const MetricTree m(homogeneous_rooted_tree(2, 6));
    const auto d = discretize(m, tree_config(6, 0.5));
    for (const auto& p : m.sample_ball(4.0, 200, 3)) {
        std::size_t brute = 0;
        for (const auto& x : d.embedding) brute += m.distance(p, x) < 2.0;
        EXPECT_EQ(overlap_count(d, m, p), brute);
    }
    // At a vertex of level 3: itself, its parent and two children (distance 1), and
    // the grandparent, sibling and four grandchildren (distance 2, excluded).
    EXPECT_EQ(overlap_count(d, m, m.vertex(m.tree().level_begin(3))), 4u);
}

TEST(Diagnostics, OverlapStableUnderDoubledProbes) {
    const PoincareDisk disk;
    DiscretizationConfig cfg;
    cfg.max_radius = 5;
    const auto d = discretize(disk, cfg);
    const auto a = overlap_number(d, disk, 1000, 4), b = overlap_number(d, disk, 2000, 4);
    EXPECT_GT(a.omega, 0u);
    EXPECT_LE(a.omega, b.omega);
    EXPECT_LE(b.omega, a.omega + 1);
}

TEST(Diagnostics, ProjectFunction) {
    const PoincareDisk disk;
    DiscretizationConfig cfg;
    cfg.max_radius = 4;
    const auto d = discretize(disk, cfg);
    EXPECT_TRUE(project_function(d, disk, {}).is_zero());

    const VertexId x0 = d.web.tree().level_begin(2) + 1;
    const auto f = project_function(d, disk, {{d.embedding[x0], 1.0}});
    for (VertexId v = 0; v < d.web.vertex_count(); ++v) {
        EXPECT_EQ(f[v], disk.distance(d.embedding[v], d.embedding[x0]) < 2.0 ? 1.0 : 0.0);
    }
    std::vector<WeightedPoint<DiskPoint>> cloud;
    double mass = 0.0;
    const auto pts = disk.sample_ball(2.0, 300, 8);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        cloud.push_back({pts[i], 0.5 + double(i % 3)});
        mass += cloud.back().weight;
    }
    const auto g = project_function(d, disk, cloud);
    std::size_t omega = 0;
    for (const auto& p : cloud) omega = std::max(omega, overlap_count(d, disk, p.point));
    double total = 0.0;
    for (double v : g.values) total += v;
    EXPECT_LE(total, double(omega) * mass + 1e-9);
    EXPECT_THROW(project_function(d, disk, {{d.embedding[0], -1.0}}), DomainError);
}
