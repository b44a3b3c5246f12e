#pragma once

#include <cmath>
#include <complex>

namespace halfplane {

/// Two-component value [v0, v1] along (e0, e1): e0 is the vertical t-direction, e1 the
/// horizontal x-direction.
template <class T>
struct Vec2 {
    T v0{};
    T v1{};

    constexpr Vec2& operator+=(const Vec2& o) {
        v0 += o.v0;
        v1 += o.v1;
        return *this;
    }
    constexpr Vec2& operator-=(const Vec2& o) {
        v0 -= o.v0;
        v1 -= o.v1;
        return *this;
    }
    template <class S>
    constexpr Vec2& operator*=(S s) {
        v0 *= s;
        v1 *= s;
        return *this;
    }

    friend constexpr Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
    friend constexpr Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
    friend constexpr Vec2 operator-(Vec2 a) { return Vec2{-a.v0, -a.v1}; }
    template <class S>
    friend constexpr Vec2 operator*(S s, Vec2 a) {
        return a *= s;
    }
    template <class S>
    friend constexpr Vec2 operator*(Vec2 a, S s) {
        return a *= s;
    }
    template <class S>
    friend constexpr Vec2 operator/(Vec2 a, S s) {
        a.v0 /= s;
        a.v1 /= s;
        return a;
    }
    friend constexpr bool operator==(const Vec2&, const Vec2&) = default;
};

using RVec2 = Vec2<double>;
using CVec2 = Vec2<std::complex<double>>;

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }
template <class T>
double magnitude(const Vec2<T>& v) {
    return std::hypot(magnitude(v.v0), magnitude(v.v1));
}

inline bool all_finite(double v) { return std::isfinite(v); }
inline bool all_finite(const std::complex<double>& v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
}
template <class T>
bool all_finite(const Vec2<T>& v) {
    return all_finite(v.v0) && all_finite(v.v1);
}

}  // namespace halfplane
