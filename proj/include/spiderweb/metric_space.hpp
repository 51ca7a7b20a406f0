#pragma once

// Interface the discretizer expects from a continuous (or metric-tree) space.

#include <concepts>
#include <cstdint>
#include <string>
#include <vector>

namespace spiderweb {

inline constexpr double kEpsEqual = 1e-12;
inline constexpr double kEpsSphere = 1e-9;
inline constexpr double kEpsTriangle = 1e-9;

/// A space with a basepoint o, a distance, points on the spheres S_n(o) and
/// geodesics. sample_sphere(n, count, seed) and sample_ball(r, count, seed) must be
/// pure in their arguments, and the first k ball samples must not depend on count.
/// sphere_size_estimate(n) predicts the size of a 1-separated net of S_n(o)
/// and drives the sample budget.
template <class S>
concept MetricSpace = requires(const S& s, const typename S::point_type& p, std::uint32_t n, std::size_t count,
                               std::uint64_t seed, double t) {
    typename S::point_type;
    { s.basepoint() } -> std::convertible_to<typename S::point_type>;
    { s.distance(p, p) } -> std::convertible_to<double>;
    { s.sample_sphere(n, count, seed) } -> std::convertible_to<std::vector<typename S::point_type>>;
    { s.geodesic_point(p, p, t) } -> std::convertible_to<typename S::point_type>;
    { s.sample_ball(t, count, seed) } -> std::convertible_to<std::vector<typename S::point_type>>;
    { s.sphere_size_estimate(n) } -> std::convertible_to<double>;
    { s.coordinates(p) } -> std::convertible_to<std::vector<double>>;
    { s.name() } -> std::convertible_to<std::string>;
};

}  // namespace spiderweb
