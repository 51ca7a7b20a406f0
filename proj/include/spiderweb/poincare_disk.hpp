#pragma once

// Poincare disk model of the hyperbolic plane (curvature -1), basepoint 0.

#include "spiderweb/errors.hpp"
#include "spiderweb/metric_space.hpp"
#include "spiderweb/rng.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

namespace spiderweb {

struct DiskPoint {
    double u = 0.0, v = 0.0;
    friend bool operator==(const DiskPoint&, const DiskPoint&) = default;
};

class PoincareDisk {
public:
    using point_type = DiskPoint;

    /// Points farther than this from the centre are rejected.
    static constexpr double kMaxRadius = 1.0 - 1e-6;

    static DiskPoint point(double u, double v) {
        const DiskPoint p{u, v};
        check(p);
        return p;
    }

    static void check(const DiskPoint& p) {
        if (!std::isfinite(p.u) || !std::isfinite(p.v) || std::hypot(p.u, p.v) > kMaxRadius) {
            throw DomainError("point (" + std::to_string(p.u) + ", " + std::to_string(p.v) +
                              ") is not strictly inside the disk");
        }
    }

    /// Point at hyperbolic distance rho from 0 in direction phi.
    static DiskPoint polar(double rho, double phi) {
        const double r = std::tanh(rho / 2.0);
        return point(r * std::cos(phi), r * std::sin(phi));
    }

    DiskPoint basepoint() const { return {0.0, 0.0}; }

    /// 2 asinh(|p - q| / sqrt((1 - |p|^2)(1 - |q|^2))), the same quantity as
    /// acosh(1 + 2|p - q|^2 / ((1 - |p|^2)(1 - |q|^2))) without the cancellation near 1.
    double distance(const DiskPoint& p, const DiskPoint& q) const {
        check(p);
        check(q);
        const double num = std::hypot(p.u - q.u, p.v - q.v);
        const double den = std::sqrt(conformal_gap(p) * conformal_gap(q));
        return 2.0 * std::asinh(num / den);
    }

    /// Point at arclength t from p towards q: move p to 0 by a Mobius isometry,
    /// step along the radius, and map back.
    DiskPoint geodesic_point(const DiskPoint& p, const DiskPoint& q, double t) const {
        const double d = distance(p, q);
        if (!(t >= -kEpsEqual && t <= d + kEpsEqual)) {
            throw DomainError("geodesic parameter " + std::to_string(t) + " outside [0, " + std::to_string(d) + "]");
        }
        if (t <= 0.0) return p;
        if (t >= d) return q;
        const std::complex<double> cp(p.u, p.v), cq(q.u, q.v);
        const std::complex<double> w = (cq - cp) / (1.0 - std::conj(cp) * cq);
        const std::complex<double> z = std::tanh(t / 2.0) * (w / std::abs(w));
        const std::complex<double> back = (z + cp) / (1.0 + std::conj(cp) * z);
        return {back.real(), back.imag()};
    }

    /// count points on S_n(0): equal angular sectors, one point per sector at a
    /// jittered angle drawn from derive_seed(derive_seed(seed, "disk_sphere"), n).
    std::vector<DiskPoint> sample_sphere(std::uint32_t n, std::size_t count, std::uint64_t seed) const {
        if (n < 1) throw DomainError("sphere radius must be >= 1");
        const CounterStream s(derive_seed(derive_seed(seed, "disk_sphere"), std::uint64_t{n}));
        const double r = std::tanh(n / 2.0);
        std::vector<DiskPoint> out;
        out.reserve(count);
        for (std::size_t k = 0; k < count; ++k) {
            const double phi = 2.0 * std::numbers::pi * (static_cast<double>(k) + s.unit(k)) / static_cast<double>(count);
            out.push_back(point(r * std::cos(phi), r * std::sin(phi)));
        }
        return out;
    }

    /// count points of B_r(0), uniform for hyperbolic area: rho = acosh(1 + w (cosh r - 1)).
    std::vector<DiskPoint> sample_ball(double r, std::size_t count, std::uint64_t seed) const {
        if (!(r > 0.0)) throw DomainError("ball radius must be positive");
        const CounterStream s(derive_seed(seed, "disk_ball"));
        std::vector<DiskPoint> out;
        out.reserve(count);
        for (std::size_t k = 0; k < count; ++k) {
            const double rho = std::acosh(1.0 + s.unit(2 * k) * (std::cosh(r) - 1.0));
            out.push_back(polar(rho, 2.0 * std::numbers::pi * s.unit(2 * k + 1)));
        }
        return out;
    }

    /// 2 pi / theta_1, where theta_1 is the angle between two points of S_n(0) at
    /// distance 1 (hyperbolic law of cosines: cos theta_1 = (cosh^2 n - cosh 1) / sinh^2 n).
    double sphere_size_estimate(std::uint32_t n) const {
        if (n < 1) return 1.0;
        const double c = (std::cosh(n) * std::cosh(n) - std::cosh(1.0)) / (std::sinh(n) * std::sinh(n));
        return 2.0 * std::numbers::pi / std::acos(std::clamp(c, -1.0, 1.0));
    }

    std::vector<double> coordinates(const DiskPoint& p) const { return {p.u, p.v}; }
    std::string name() const { return "disk"; }

    /// Hyperbolic polar coordinates (rho, phi), phi in [0, 2 pi).
    static std::pair<double, double> to_polar(const DiskPoint& p) {
        const double r = std::hypot(p.u, p.v);
        double phi = std::atan2(p.v, p.u);
        if (phi < 0) phi += 2.0 * std::numbers::pi;
        return {2.0 * std::atanh(r), phi};
    }

private:
    static double conformal_gap(const DiskPoint& p) {
        const double r = std::hypot(p.u, p.v);
        return (1.0 - r) * (1.0 + r);
    }
};

/// Greedy 1-separated net of a point cloud in the disk: visit points in order,
/// keep a point iff it is at distance >= 1 from every kept point. Candidates are
/// bucketed by (floor rho, angle); two points closer than 1 differ in rho by
/// less than 1 and, when both have rho >= m, in angle by at most acos(1 - (cosh 1 - 1) / sinh^2 m).
inline std::vector<DiskPoint> disk_greedy_net(const PoincareDisk& disk, const std::vector<DiskPoint>& cloud) {
    struct Kept {
        double phi;
        DiskPoint p;
    };
    std::vector<std::vector<Kept>> shells;  // by floor(rho), sorted by phi
    std::vector<DiskPoint> net;
    const double two_pi = 2.0 * std::numbers::pi;
    for (const DiskPoint& p : cloud) {
        const auto [rho, phi] = PoincareDisk::to_polar(p);
        const auto shell = static_cast<std::size_t>(rho);
        const double m = std::max(0.0, std::floor(rho) - 1.0);
        const double sh = std::sinh(m);
        const double c = sh > 0 ? 1.0 - (std::cosh(1.0) - 1.0) / (sh * sh) : -1.0;
        const double window = c <= -1.0 ? std::numbers::pi : std::acos(c) + 1e-9;
        bool near = false;
        for (std::size_t k = shell == 0 ? 0 : shell - 1; k <= shell + 1 && k < shells.size() && !near; ++k) {
            const auto& row = shells[k];
            auto scan = [&](double lo, double hi) {
                auto it = std::lower_bound(row.begin(), row.end(), lo, [](const Kept& a, double x) { return a.phi < x; });
                for (; it != row.end() && it->phi <= hi && !near; ++it) near = disk.distance(p, it->p) < 1.0;
            };
            if (window >= std::numbers::pi) {
                scan(0.0, two_pi);
            } else {
                scan(std::max(0.0, phi - window), std::min(two_pi, phi + window));
                if (phi - window < 0.0) scan(phi - window + two_pi, two_pi);
                if (phi + window > two_pi) scan(0.0, phi + window - two_pi);
            }
        }
        if (near) continue;
        if (shells.size() <= shell) shells.resize(shell + 1);
        auto& row = shells[shell];
        row.insert(std::upper_bound(row.begin(), row.end(), phi, [](double x, const Kept& a) { return x < a.phi; }),
                   Kept{phi, p});
        net.push_back(p);
    }
    return net;
}

}  // namespace spiderweb
