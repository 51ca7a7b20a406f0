// Contract suite shared by every metric space backend, plus backend specifics.

#include "spiderweb/generators.hpp"
#include "spiderweb/metric_space.hpp"
#include "spiderweb/metric_tree.hpp"
#include "spiderweb/poincare_disk.hpp"
#include "spiderweb/reference.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace spiderweb;

static_assert(MetricSpace<PoincareDisk>);
static_assert(MetricSpace<MetricTree>);

namespace {

struct DiskCase {
    using Space = PoincareDisk;
    static Space make() { return {}; }
    static constexpr double ball_radius = 6.0;
};

struct TreeCase {
    using Space = MetricTree;
    static Space make() { return MetricTree(random_ab_rooted_tree(2, 3, 7, 13)); }
    static constexpr double ball_radius = 7.0;
};

template <class Case>
class OracleContract : public ::testing::Test {
protected:
    typename Case::Space space = Case::make();
    std::vector<typename Case::Space::point_type> points(std::size_t count, std::uint64_t seed) const {
        return space.sample_ball(Case::ball_radius, count, seed);
    }
};

}  // namespace

using Backends = ::testing::Types<DiskCase, TreeCase>;
TYPED_TEST_SUITE(OracleContract, Backends);

TYPED_TEST(OracleContract, IdentityAndSymmetry) {
    const auto p = this->points(1000, 1), q = this->points(1000, 2);
    for (std::size_t i = 0; i < p.size(); ++i) {
        EXPECT_LE(this->space.distance(p[i], p[i]), kEpsEqual);
        EXPECT_EQ(this->space.distance(p[i], q[i]), this->space.distance(q[i], p[i]));
        if (!(p[i] == q[i])) {
            EXPECT_GT(this->space.distance(p[i], q[i]), kEpsEqual);
        }
    }
}

TYPED_TEST(OracleContract, TriangleInequality) {
    const auto p = this->points(3000, 3);
    for (std::size_t i = 0; i + 2 < p.size(); i += 3) {
        const double xy = this->space.distance(p[i], p[i + 1]), yz = this->space.distance(p[i + 1], p[i + 2]),
                     xz = this->space.distance(p[i], p[i + 2]);
        EXPECT_LE(xz, xy + yz + kEpsTriangle);
    }
}

TYPED_TEST(OracleContract, SphereSamplesHaveTheRightRadius) {
    const auto o = this->space.basepoint();
    for (std::uint32_t n = 1; n <= 6; ++n) {
        const auto s = this->space.sample_sphere(n, 200, 9);
        EXPECT_FALSE(s.empty());
        for (const auto& x : s) EXPECT_NEAR(this->space.distance(o, x), double(n), kEpsSphere);
        EXPECT_EQ(s, this->space.sample_sphere(n, 200, 9));
    }
}

TYPED_TEST(OracleContract, GeodesicAdditivity) {
    const auto p = this->points(1000, 4), q = this->points(1000, 5);
    const CounterStream s(6);
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double d = this->space.distance(p[i], q[i]);
        const double t = s.unit(i) * d;
        const auto z = this->space.geodesic_point(p[i], q[i], t);
        EXPECT_NEAR(this->space.distance(p[i], z), t, 1e-9);
        EXPECT_NEAR(this->space.distance(p[i], z) + this->space.distance(z, q[i]), d, 1e-9);
        EXPECT_EQ(this->space.geodesic_point(p[i], q[i], 0.0), p[i]);
        EXPECT_EQ(this->space.geodesic_point(p[i], q[i], d), q[i]);
    }
    EXPECT_THROW(this->space.geodesic_point(p[0], q[0], -1.0), DomainError);
}

TYPED_TEST(OracleContract, BallSamplesStayInsideAndArePrefixStable) {
    const auto o = this->space.basepoint();
    const auto a = this->space.sample_ball(3.0, 50, 8), b = this->space.sample_ball(3.0, 100, 8);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i], b[i]);
        EXPECT_LE(this->space.distance(o, a[i]), 3.0 + kEpsSphere);
    }
}

// ---------------------------------------------------------------------------
// Disk

TEST(Disk, OriginAndRejectsBoundary) {
    const PoincareDisk disk;
    EXPECT_EQ(disk.distance({0, 0}, {0, 0}), 0.0);
    EXPECT_THROW(PoincareDisk::point(1.0, 0.0), DomainError);
    EXPECT_THROW(PoincareDisk::point(0.6, 0.8), DomainError);
    EXPECT_THROW(disk.distance({0, 0}, {2.0, 0.0}), DomainError);
    EXPECT_NO_THROW(PoincareDisk::point(0.999, 0.0));
}

TEST(Disk, RadialDistanceMatchesLineElementQuadrature) {
    const PoincareDisk disk;
    using boost::math::quadrature::gauss_kronrod;
    for (double r : {0.1, 0.5, 0.9, 0.99}) {
        const double q = gauss_kronrod<double, 61>::integrate([](double t) { return 2.0 / (1.0 - t * t); }, 0.0, r, 10, 1e-14);
        EXPECT_NEAR(disk.distance({0, 0}, {r, 0}), q, 1e-10 * std::max(1.0, q));
    }
    EXPECT_NEAR(disk.distance({0, 0}, {0.5, 0}), std::log(3.0), 1e-12);
}

TEST(Disk, SphereChordsMatchLawOfCosines) {
    const PoincareDisk disk;
    for (std::uint32_t n = 1; n <= 8; ++n) {
        for (double theta : {0.01, 0.3, 1.0, 2.5}) {
            const auto a = PoincareDisk::polar(n, 0.4), b = PoincareDisk::polar(n, 0.4 + theta);
            const double c = std::cosh(n) * std::cosh(n) - std::sinh(n) * std::sinh(n) * std::cos(theta);
            EXPECT_NEAR(disk.distance(a, b), std::acosh(c), 1e-9 * std::max(1.0, std::acosh(c)));
        }
    }
}

TEST(Disk, MidpointOnAxis) {
    const PoincareDisk disk;
    const DiskPoint q{0.8, 0.0};
    const double d = disk.distance({0, 0}, q);
    EXPECT_NEAR(d, std::log(9.0), 1e-12);
    const auto m = disk.geodesic_point({0, 0}, q, d / 2);
    // ln((1 + r)/(1 - r)) = ln 3 gives r = 1/2.
    EXPECT_NEAR(m.u, 0.5, 1e-12);
    EXPECT_NEAR(m.v, 0.0, 1e-15);
}

TEST(Disk, RotationInvariance) {
    const PoincareDisk disk;
    const auto p = disk.sample_ball(5.0, 1000, 11), q = disk.sample_ball(5.0, 1000, 12);
    const CounterStream s(13);
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double a = 2 * std::numbers::pi * s.unit(i), c = std::cos(a), sn = std::sin(a);
        auto rot = [&](DiskPoint x) { return DiskPoint{c * x.u - sn * x.v, sn * x.u + c * x.v}; };
        const double d = disk.distance(p[i], q[i]);
        EXPECT_NEAR(disk.distance(rot(p[i]), rot(q[i])), d, 1e-12 * std::max(1.0, d));
    }
}

TEST(Disk, SphereSamplingEdges) {
    const PoincareDisk disk;
    EXPECT_TRUE(disk.sample_sphere(3, 0, 1).empty());
    EXPECT_THROW(disk.sample_sphere(0, 3, 1), DomainError);
    EXPECT_NE(disk.sample_sphere(3, 10, 1), disk.sample_sphere(3, 10, 2));
}

TEST(Disk, GreedyNetIsSeparatedAndMaximal) {
    const PoincareDisk disk;
    const auto cloud = disk.sample_ball(5.0, 4000, 21);
    const auto net = disk_greedy_net(disk, cloud);
    for (std::size_t i = 0; i < net.size(); ++i)
        for (std::size_t j = i + 1; j < net.size(); ++j) ASSERT_GE(disk.distance(net[i], net[j]), 1.0);
    for (const auto& p : cloud) {
        double best = 1e300;
        for (const auto& x : net) best = std::min(best, disk.distance(p, x));
        ASSERT_LT(best, 1.0 + kEpsEqual);
    }
}

TEST(Disk, NetGrowthIsExponentialWithRateOne) {
    const PoincareDisk disk;
    for (int r = 4; r <= 8; ++r) {
        // Area of B_r is 2 pi (cosh r - 1); sample about 12 points per unit area.
        const auto n = static_cast<std::size_t>(12.0 * 2 * std::numbers::pi * (std::cosh(r) - 1.0));
        const auto net = disk_greedy_net(disk, disk.sample_ball(r, n, 30 + r));
        const double rate = std::log(static_cast<double>(net.size())) / r;
        EXPECT_GE(rate, 0.7) << r;
        EXPECT_LE(rate, 1.3) << r;
    }
}

// ---------------------------------------------------------------------------
// Metric tree

namespace {

// Shortest route between two edge points through explicit endpoint choices.
double tree_point_distance(const RootedTree& t, const TreePoint& p, const TreePoint& q) {
    if (p.edge == q.edge && p.edge != 0) return std::fabs(p.t - q.t);
    using End = std::pair<VertexId, double>;
    auto ends = [&](const TreePoint& x) {
        if (x.edge == 0) return std::vector<End>{End{0, 0.0}};
        return std::vector<End>{End{x.edge, 1.0 - x.t}, End{t.parent(x.edge), x.t}};
    };
    double best = 1e300;
    for (auto [a, da] : ends(p))
        for (auto [b, db] : ends(q)) best = std::min(best, da + reference::tree_distance(t, a, b) + db);
    return best;
}

}  // namespace

TEST(MetricTree, VertexDistancesAreGraphDistances) {
    const MetricTree m(homogeneous_rooted_tree(3, 4));
    for (VertexId a = 0; a < m.tree().size(); a += 3)
        for (VertexId b = 0; b < m.tree().size(); b += 5) {
            EXPECT_EQ(m.distance(m.vertex(a), m.vertex(b)), reference::tree_distance(m.tree(), a, b));
        }
}

TEST(MetricTree, SameEdgeOffsets) {
    const MetricTree m(homogeneous_rooted_tree(2, 3));
    EXPECT_NEAR(m.distance(m.point(5, 0.2), m.point(5, 0.7)), 0.5, kEpsEqual);
    EXPECT_EQ(m.point(5, 0.0), m.vertex(m.tree().parent(5)));
    EXPECT_THROW(m.point(0, 0.5), DomainError);
    EXPECT_THROW(m.point(3, 1.5), DomainError);
    EXPECT_THROW(m.distance({0, 0.5}, {1, 1.0}), DomainError);
}

TEST(MetricTree, EdgePointDistancesMatchEndpointOracle) {
    const MetricTree m(random_ab_rooted_tree(2, 3, 6, 3));
    const auto p = m.sample_ball(6.0, 2000, 1), q = m.sample_ball(6.0, 2000, 2);
    for (std::size_t i = 0; i < p.size(); ++i) {
        EXPECT_NEAR(m.distance(p[i], q[i]), tree_point_distance(m.tree(), p[i], q[i]), 1e-12);
    }
}

TEST(MetricTree, SphereIsTheLevel) {
    const MetricTree m(homogeneous_rooted_tree(3, 4));
    const auto s = m.sample_sphere(2, 1, 0);
    ASSERT_EQ(s.size(), 9u);
    for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(s[i], m.vertex(m.tree().level_begin(2) + VertexId(i)));
    EXPECT_TRUE(m.sample_sphere(5, 10, 0).empty());
    EXPECT_EQ(m.sphere_size_estimate(3), 27.0);
}

TEST(MetricTree, FourPointDeltaIsZero) {
    const MetricTree m(random_ab_rooted_tree(2, 4, 6, 8));
    const auto p = m.sample_ball(6.0, 4000, 5);
    double worst = 0.0;
    for (std::size_t i = 0; i + 3 < p.size(); i += 4) {
        const auto &x = p[i], &y = p[i + 1], &z = p[i + 2], &w = p[i + 3];
        auto g = [&](const TreePoint& a, const TreePoint& b) {
            return 0.5 * (m.distance(w, a) + m.distance(w, b) - m.distance(a, b));
        };
        worst = std::max(worst, std::min(g(x, y), g(y, z)) - g(x, z));
    }
    EXPECT_LE(worst, 1e-12);
}
