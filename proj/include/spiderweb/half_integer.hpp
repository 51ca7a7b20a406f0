#pragma once

#include <compare>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <string>

namespace spiderweb {

/// Exact value in (1/2)Z, stored doubled. Gromov products of integer metrics live here.
class HalfInteger {
public:
    constexpr HalfInteger() = default;

    static constexpr HalfInteger from_twice(std::int64_t twice) noexcept { return HalfInteger(twice); }
    static constexpr HalfInteger from_integer(std::int64_t v) noexcept { return HalfInteger(2 * v); }

    /// Smallest half-integer >= x.
    static HalfInteger ceil_of(double x) { return HalfInteger(static_cast<std::int64_t>(std::ceil(2.0 * x))); }

    constexpr std::int64_t twice() const noexcept { return twice_; }
    constexpr double value() const noexcept { return static_cast<double>(twice_) / 2.0; }

    constexpr HalfInteger operator-(HalfInteger o) const noexcept { return HalfInteger(twice_ - o.twice_); }
    constexpr HalfInteger operator+(HalfInteger o) const noexcept { return HalfInteger(twice_ + o.twice_); }
    constexpr HalfInteger operator*(std::int64_t k) const noexcept { return HalfInteger(twice_ * k); }

    friend constexpr bool operator==(HalfInteger, HalfInteger) = default;
    friend constexpr auto operator<=>(HalfInteger, HalfInteger) = default;

    std::string str() const {
        const std::int64_t whole = twice_ / 2;
        if (twice_ % 2 == 0) return std::to_string(whole);
        return (twice_ < 0 && whole == 0 ? "-" : "") + std::to_string(whole) + ".5";
    }

    friend std::ostream& operator<<(std::ostream& os, HalfInteger h) { return os << h.str(); }

private:
    constexpr explicit HalfInteger(std::int64_t twice) noexcept : twice_(twice) {}
    std::int64_t twice_ = 0;
};

}  // namespace spiderweb
