#pragma once

#include "halfplane/boundary.hpp"
#include "halfplane/config.hpp"
#include "halfplane/error.hpp"
#include "halfplane/log_line.hpp"
#include "halfplane/quadrature.hpp"
#include "halfplane/vec2.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

namespace halfplane {

enum class Sign { Plus, Minus };

namespace detail {

inline double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

inline void require_off_interface(double x) {
    if (x == 0.0 || !std::isfinite(x)) {
        throw Error(ErrorKind::EvaluationOnInterface, "evaluation point must be finite and off x = 0");
    }
}

// Integral of g over the data domain of f; extra breakpoints come from the kernel. Poles on or just
// outside the end of a finite window widen the window so that they are interior.
template <class Data, class G>
quad_value_t<G> integrate_data(const Data& f, const G& g, std::vector<Breakpoint> extra, double kernel_decay,
                               const PVQuadratureScheme& s) {
    using R = quad_value_t<G>;
    if (f.is_zero()) {
        return R{};
    }
    auto [a, b] = f.domain();
    for (const auto& bp : extra) {
        if (bp.pole && std::isfinite(a) && std::isfinite(b)) {
            const double margin = std::max(bp.scale, 0.25 * f.feature_scale());
            if (bp.at <= a && bp.at >= a - margin) {
                a = bp.at - margin;
            }
            if (bp.at >= b && bp.at <= b + margin) {
                b = bp.at + margin;
            }
        }
    }
    if (!(b > a)) {
        return R{};
    }
    auto bps = f.quadrature_breakpoints();
    bps.insert(bps.end(), extra.begin(), extra.end());
    PVQuadratureScheme sc = s;
    sc.tail_exponent_hint = std::min(kernel_decay + f.decay_rate(), 64.0);
    return integrate_detailed(g, a, b, std::move(bps), sc).value;
}

// Panel size next to the origin for kernels of width w.
template <class Data>
double origin_scale(const Data& f, double w) {
    return 0.25 * std::min(w, f.feature_scale());
}

}  // namespace detail

/// (i lambda - T_k)^{-1} f evaluated at x != 0 by the explicit two-term formula.
template <class T>
CVec2 resolvent(double lambda, const BasicBoundaryVectorField<T>& f, double x, const ProblemConfig& cfg,
                const PVQuadratureScheme& s = {}) {
    using C = std::complex<double>;
    if (lambda == 0.0 || !std::isfinite(lambda)) {
        throw Error(ErrorKind::InvalidArgument, "resolvent needs a nonzero real lambda");
    }
    detail::require_off_interface(x);
    const double k = cfg.k();
    const double sl = detail::sgn(lambda);
    const double al = std::abs(lambda);
    const C I(0.0, 1.0);
    const double sc = detail::origin_scale(f, 1.0 / al);
    const std::vector<Breakpoint> bps{Breakpoint{x, sc}, Breakpoint{0.0, sc, std::min(0.0, f.origin_power())}};

    auto conv = [&](double y) {
        const auto v = f(y);
        const double e = std::exp(-al * std::abs(x - y));
        const double sg = detail::sgn(lambda * (x - y));
        return CVec2{e * (-I * C(v.v0) + sg * C(v.v1)), e * (-sg * C(v.v0) - I * C(v.v1))};
    };
    CVec2 u = detail::integrate_data(f, conv, bps, 16.0, s) * C(0.5 * sl);

    auto coupling = [&](double y) {
        const auto v = f(y);
        return std::exp(-al * std::abs(y)) * (-I * C(v.v0) - detail::sgn(lambda * y) * C(v.v1));
    };
    const C J = detail::integrate_data(f, coupling, bps, 16.0, s);
    const C pref = std::exp(-al * std::abs(x)) * k / (2.0 * (1.0 - I * k * sl));
    u.v0 += pref * I * J;
    u.v1 += pref * detail::sgn(lambda * x) * J;
    return u;
}

/// P_t f(x) = (1 + t^2 T_k^2)^{-1} f(x).
template <class T>
Vec2<T> apply_Pt(double t, const BasicBoundaryVectorField<T>& f, double x, const ProblemConfig& cfg,
                 const PVQuadratureScheme& s = {}) {
    if (!(t > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "t must be positive");
    }
    detail::require_off_interface(x);
    const double k = cfg.k();
    const double c = k / (1.0 + k * k);
    const double sx = detail::sgn(x);
    const double sc = detail::origin_scale(f, t);
    auto g = [&](double y) {
        const auto v = f(y);
        const double sy = detail::sgn(y);
        const double ec = std::exp(-std::abs(x - y) / t);
        const double eb = std::exp(-(std::abs(x) + std::abs(y)) / t);
        return Vec2<T>{(ec * v.v0 + c * eb * (-k * v.v0 + sy * v.v1)) / (2.0 * t),
                       (ec * v.v1 + c * sx * eb * (v.v0 + k * sy * v.v1)) / (2.0 * t)};
    };
    return detail::integrate_data(
        f, g, {Breakpoint{x, sc}, Breakpoint{0.0, sc, std::min(0.0, f.origin_power())}}, 16.0, s);
}

/// Q_t f(x) = t T_k (1 + t^2 T_k^2)^{-1} f(x).
template <class T>
Vec2<T> apply_Qt(double t, const BasicBoundaryVectorField<T>& f, double x, const ProblemConfig& cfg,
                 const PVQuadratureScheme& s = {}) {
    if (!(t > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "t must be positive");
    }
    detail::require_off_interface(x);
    const double k = cfg.k();
    const double c = k / (1.0 + k * k);
    const double sx = detail::sgn(x);
    const double sc = detail::origin_scale(f, t);
    auto g = [&](double y) {
        const auto v = f(y);
        const double sy = detail::sgn(y);
        const double sd = detail::sgn(x - y);
        const double ec = std::exp(-std::abs(x - y) / t);
        const double eb = std::exp(-(std::abs(x) + std::abs(y)) / t);
        return Vec2<T>{(-sd * ec * v.v1 - c * eb * (v.v0 + k * sy * v.v1)) / (2.0 * t),
                       (sd * ec * v.v0 - c * sx * eb * (k * v.v0 - sy * v.v1)) / (2.0 * t)};
    };
    return detail::integrate_data(
        f, g, {Breakpoint{x, sc}, Breakpoint{0.0, sc, std::min(0.0, f.origin_power())}}, 16.0, s);
}

/// The Cauchy singular integral E_k f(x) = sgn(T_k) f(x), x != 0.
template <class T>
Vec2<T> apply_Ek(const BasicBoundaryVectorField<T>& f, double x, const ProblemConfig& cfg,
                 const PVQuadratureScheme& s = {}) {
    detail::require_off_interface(x);
    const double k = cfg.k();
    const double c = k / (1.0 + k * k);
    const double sx = detail::sgn(x);
    const double pi = std::numbers::pi;
    auto g = [&](double y) {
        const auto v = f(y);
        const double sy = detail::sgn(y);
        const double d = x - y;
        const double ab = std::abs(x) + std::abs(y);
        return Vec2<T>{(-v.v1 / d - c * (v.v0 + k * sy * v.v1) / ab) / pi,
                       (v.v0 / d - c * sx * (k * v.v0 - sy * v.v1) / ab) / pi};
    };
    const double sc = detail::origin_scale(f, std::abs(x));
    return detail::integrate_data(
        f, g, {Breakpoint{x, sc, 0.0, true}, Breakpoint{0.0, sc, std::min(0.0, f.origin_power())}}, 1.0, s);
}

/// E_k^{+-} f = (f +- E_k f)/2.
template <class T>
Vec2<T> hardy_projection(Sign sign, const BasicBoundaryVectorField<T>& f, double x, const ProblemConfig& cfg,
                         const PVQuadratureScheme& s = {}) {
    const Vec2<T> e = apply_Ek(f, x, cfg, s);
    const Vec2<T> v = f(x);
    return sign == Sign::Plus ? 0.5 * (v + e) : 0.5 * (v - e);
}

/// C_k^+ f(t, x) = e^{-t|T_k|} chi_+(T_k) f(x), t > 0. At x = 0 the second component is the
/// mean of its two one-sided limits.
template <class T>
Vec2<T> cauchy_extension(double t, const BasicBoundaryVectorField<T>& f, double x, const ProblemConfig& cfg,
                         const PVQuadratureScheme& s = {}) {
    if (!(t > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "t must be positive");
    }
    const double k = cfg.k();
    const double c = k / (1.0 + k * k);
    const double sx = detail::sgn(x);
    const double pi = std::numbers::pi;
    auto g = [&](double y) {
        const auto v = f(y);
        const double sy = detail::sgn(y);
        const double d = x - y;
        const double ab = std::abs(x) + std::abs(y);
        const double den = t * t + d * d;
        const double denb = t * t + ab * ab;
        const T plus = v.v0 + k * sy * v.v1;
        const T minus = k * v.v0 - sy * v.v1;
        return Vec2<T>{((t * v.v0 - d * v.v1) / den - c * (t * minus + ab * plus) / denb) / (2.0 * pi),
                       ((t * v.v1 + d * v.v0) / den + c * sx * (t * plus - ab * minus) / denb) / (2.0 * pi)};
    };
    const double sc = detail::origin_scale(f, t);
    return detail::integrate_data(
        f, g, {Breakpoint{x, 0.25 * std::min(t, f.feature_scale())}, Breakpoint{0.0, sc, std::min(0.0, f.origin_power())}},
        1.0, s);
}

/// Double layer potential type operator
/// K f(x) = sgn(x)/pi p.v. int f(y)/(x - y) dy - 1/pi int f(y)/(|x| + |y|) dy, x != 0.
template <class T>
T apply_K(const BasicBoundarySample<T>& f, double x, const PVQuadratureScheme& s = {}) {
    detail::require_off_interface(x);
    const double sx = detail::sgn(x);
    auto g = [&](double y) {
        const T v = f(y);
        return (sx * v / (x - y) - v / (std::abs(x) + std::abs(y))) / std::numbers::pi;
    };
    const double sc = detail::origin_scale(f, std::abs(x));
    return detail::integrate_data(
        f, g, {Breakpoint{x, sc, 0.0, true}, Breakpoint{0.0, sc, std::min(0.0, f.origin_power())}}, 1.0, s);
}

/// Adjoint of K for the real bilinear pairing:
/// K* g(y) = -sgn(y)/pi p.v. int g(x)/(y - x) dx - 1/pi int g(x)/(|x| + |y|) dx.
template <class T>
T apply_K_adjoint(const BasicBoundarySample<T>& g, double y, const PVQuadratureScheme& s = {}) {
    detail::require_off_interface(y);
    auto h = [&](double x) {
        const T v = g(x);
        return (-detail::sgn(x) * v / (y - x) - v / (std::abs(x) + std::abs(y))) / std::numbers::pi;
    };
    const double sc = detail::origin_scale(g, std::abs(y));
    return detail::integrate_data(
        g, h, {Breakpoint{y, sc, 0.0, true}, Breakpoint{0.0, sc, std::min(0.0, g.origin_power())}}, 1.0, s);
}

/// Boundedness range (-1/p, 2 - 1/p) of K_alpha on L_p(R_+).
inline std::pair<double, double> k_alpha_range(double p) {
    check_exponent(p);
    return {-1.0 / p, 2.0 - 1.0 / p};
}

/// K_alpha f(x) = 2/pi p.v. int_0^inf x^alpha y^{1-alpha}/(x^2 - y^2) f(y) dy, x > 0, by direct
/// quadrature. Data are read on (0, inf) only.
template <class T>
T apply_K_alpha(double alpha, const BasicBoundarySample<T>& f, double x, const PVQuadratureScheme& s = {}) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw Error(ErrorKind::DomainError, "K_alpha is evaluated at x > 0");
    }
    if (!(alpha < 2.0)) {
        throw Error(ErrorKind::OutOfBoundednessRange, "K_alpha kernel is not integrable at 0 for alpha >= 2");
    }
    const auto h = f.half_line(+1).with_origin_power(f.origin_power());
    auto g = [&](double y) {
        return (2.0 / std::numbers::pi) * std::pow(x, alpha) * std::pow(y, 1.0 - alpha) / ((x - y) * (x + y)) * h(y);
    };
    const double sc = detail::origin_scale(h, x);
    const double p0 = std::min(0.0, 1.0 - alpha + h.origin_power());
    return detail::integrate_data(h, g, {Breakpoint{x, sc, 0.0, true}, Breakpoint{0.0, sc, p0}}, 1.0 + alpha, s);
}

/// Symbol of the log-line convolution 2/pi p.v. e^{gamma s}/(e^{2s} - 1) * g, with the transform
/// g^(xi) = int g(s) e^{-i xi s} ds: m(xi) = i (1 + z)/(1 - z), z = e^{pi (xi + i gamma)}.
struct MultiplierSymbol {
    double gamma = 1.0;

    std::complex<double> operator()(double xi) const {
        using C = std::complex<double>;
        const C I(0.0, 1.0);
        if (xi <= 0.0) {
            const C z = std::exp(std::numbers::pi * C(xi, gamma));
            return I * (1.0 + z) / (1.0 - z);
        }
        const C w = std::exp(-std::numbers::pi * C(xi, gamma));
        return I * (w + 1.0) / (w - 1.0);
    }
};

inline MultiplierSymbol multiplier_of_Ktilde(double gamma) {
    if (!(gamma > 0.0 && gamma < 2.0)) {
        throw Error(ErrorKind::OutOfBoundednessRange, "K~_gamma is bounded only for gamma in (0, 2)");
    }
    return MultiplierSymbol{gamma};
}

struct LogLineOptions {
    /// Grid step in tau = log x.
    double h = 0.005;
    /// When nonzero, the number of grid points (overrides h).
    std::size_t n = 0;
    /// The window extends until the weighted data have decayed by e^-decay_nepers.
    double decay_nepers = 30.0;
    /// Output below the data is kept down to a decay of e^-trust_nepers and continued as a power
    /// law further left, where e^{-tau/p} would amplify round-off.
    double trust_nepers = 20.0;
    int padding = 4;
    /// Cap on how far (in tau) the window reaches beyond the data, for slowly decaying outputs.
    double max_reach = 300.0;
};

/// c0 f + c1 K_beta f on (0, inf), computed on a log grid by the multiplier route:
/// f -> e^{tau/p} f(e^tau), multiply by c0 + c1 m_{beta + 1/p}, map back.
inline LogLineFunction half_line_affine(double c0, double c1, double beta, const BoundarySample& data, double p,
                                        const LogLineOptions& o = {}) {
    check_exponent(p);
    const auto f = data.half_line(+1).with_origin_power(data.origin_power());
    const double w = 1.0 / p;
    const double gamma = beta + w;
    MultiplierSymbol m{gamma};
    if (c1 != 0.0) {
        m = multiplier_of_Ktilde(gamma);
    }
    const double b0 = f.origin_power();
    if (!(b0 + w > 0.0)) {
        throw Error(ErrorKind::DomainError, "half-line data are not in L_p near the origin");
    }
    if (f.is_zero()) {
        const LogGrid g = LogGrid::spanning(-1.0, 1.0, 8);
        return LogLineFunction(g, std::vector<double>(g.n, 0.0), std::nan(""), std::nan(""));
    }
    const bool algebraic = f.support().kind == SupportKind::AlgebraicDecay;
    if (algebraic && !(f.decay_rate() > w)) {
        throw Error(ErrorKind::DomainError, "half-line data are not in L_p at infinity");
    }
    const double scale = f.feature_scale();
    const double tau_data_hi = algebraic ? std::log(scale) : std::log(f.upper());
    double tau_data_lo = std::log(scale);
    if (!algebraic && f.lower() > 0.0) {
        tau_data_lo = std::min(tau_data_lo, std::log(f.lower()));
    }
    double left_rate = b0 + w;
    double right_rate = algebraic ? f.decay_rate() - w : std::numeric_limits<double>::infinity();
    if (c1 != 0.0) {
        left_rate = std::min(left_rate, gamma);
        right_rate = std::min(right_rate, 2.0 - gamma);
    }
    const double tau_min = std::min(tau_data_lo, tau_data_hi) - std::min(o.decay_nepers / left_rate, o.max_reach);
    const double tau_max =
        tau_data_hi + (std::isfinite(right_rate) ? std::min(o.decay_nepers / right_rate, o.max_reach) : 1.0);
    std::size_t n = o.n;
    if (n == 0) {
        n = static_cast<std::size_t>(std::ceil((tau_max - tau_min) / o.h)) + 1;
    }
    const LogGrid grid = LogGrid::spanning(tau_min, tau_max, n);
    const auto g = to_log_line(f, grid, p);
    std::vector<std::complex<double>> out;
    if (c1 == 0.0) {
        out = g;
        for (auto& v : out) {
            v *= c0;
        }
    } else {
        out = log_line_multiplier_apply(g, grid.h, [&](double xi) { return c0 + c1 * m(xi); }, o.padding);
    }
    double left_power = b0;
    double right_power = algebraic ? -f.decay_rate() : std::nan("");
    if (c1 != 0.0) {
        left_power = std::min(left_power, beta);
        right_power = std::isnan(right_power) ? beta - 2.0 : std::max(right_power, beta - 2.0);
    }
    auto values = from_log_line(out, grid, p);
    const double tau_trust = std::min(tau_data_lo, tau_data_hi) - o.trust_nepers / left_rate;
    std::size_t j0 = 0;
    while (j0 + 8 < grid.n && grid.tau(j0) < tau_trust) {
        ++j0;
    }
    const LogGrid kept{grid.tau(j0), grid.h, grid.n - j0};
    values.erase(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(j0));
    return LogLineFunction(kept, std::move(values), left_power, right_power, w);
}

/// K_alpha f on a log grid by the multiplier route (the default for half-line data).
inline LogLineFunction apply_K_alpha_grid(double alpha, const BoundarySample& f, double p,
                                          const LogLineOptions& o = {}) {
    return half_line_affine(0.0, 1.0, alpha, f, p, o);
}

/// The alpha in (-1/p, 2 - 1/p) with tan(pi alpha / 2) = kk; NotInvertible at the range ends.
inline double range_alpha(double kk, double p) {
    const auto [lo, hi] = k_alpha_range(p);
    if (std::abs(kk + std::tan(std::numbers::pi / (2.0 * p))) < kThresholdTolerance) {
        throw Error(ErrorKind::NotInvertible, "alpha for tan(pi alpha/2) = " + std::to_string(kk) +
                                                  " sits on the end of the boundedness range");
    }
    const double a0 = principal_alpha(kk);
    for (int n = -1; n <= 1; ++n) {
        const double a = a0 + 2.0 * n;
        if (a > lo && a < hi) {
            return a;
        }
    }
    throw Error(ErrorKind::NotInvertible, "no alpha in the boundedness range");
}

struct HalfLineInverse {
    LogLineFunction value;
    /// Index of the K_alpha used in the closed-form inverse.
    double alpha = 0.0;
};

/// (I - k K_0)^{-1} f (sign Minus) or (I + k K_0)^{-1} f (sign Plus) on L_p(R_+) via
/// (I - k K_0)^{-1} = (I + k K_alpha)/(1 + k^2), tan(pi alpha/2) = k, alpha in (-1/p, 2 - 1/p).
/// The Plus case is the same formula with k replaced by -k.
inline HalfLineInverse invert_half_line(Sign sign, double k, const BoundarySample& f, const ProblemConfig& cfg,
                                        const LogLineOptions& o = {}) {
    const double kk = sign == Sign::Minus ? k : -k;
    const double alpha = range_alpha(kk, cfg.p());
    const double norm = 1.0 + k * k;
    if (k == 0.0) {
        return {half_line_affine(1.0, 0.0, alpha, f, cfg.p(), o), alpha};
    }
    return {half_line_affine(1.0 / norm, kk / norm, alpha, f, cfg.p(), o), alpha};
}

/// A function on the line assembled from its two half-line pieces: f(y) = pos(y) for y > 0 and
/// neg_sign * neg(-y) for y < 0.
struct SplitLineFunction {
    LogLineFunction pos;
    LogLineFunction neg;
    double neg_sign = 1.0;

    double operator()(double y) const {
        if (y > 0.0) {
            return pos(y);
        }
        if (y < 0.0) {
            return neg_sign * neg(-y);
        }
        throw Error(ErrorKind::EvaluationOnInterface, "split function evaluated at 0");
    }
};

/// Wraps a split function as boundary data with the given decay and origin exponents
/// (decay_rate = inf means "negligible beyond the sampled window").
inline BoundarySample to_boundary_sample(const SplitLineFunction& f, double decay_rate, double origin_power,
                                         double feature_scale, const std::string& name) {
    SupportHint hint;
    if (std::isfinite(decay_rate)) {
        hint = SupportHint::algebraic(decay_rate);
    } else {
        const double reach = std::max(std::exp(f.pos.grid().tau_end()), std::exp(f.neg.grid().tau_end()));
        hint = SupportHint::exponential(-reach, reach);
    }
    return BoundarySample([f](double y) { return y == 0.0 ? 0.0 : f(y); }, hint, {}, feature_scale, name)
        .with_origin_power(origin_power);
}

/// Samples an evaluator on both half-lines of a log grid.
template <class F>
SplitLineFunction sample_line(const F& f, const LogGrid& grid, double left_power, double right_power) {
    std::vector<double> pos(grid.n);
    std::vector<double> neg(grid.n);
    for (std::size_t j = 0; j < grid.n; ++j) {
        pos[j] = f(grid.x(j));
        neg[j] = f(-grid.x(j));
    }
    return {LogLineFunction(grid, std::move(pos), left_power, right_power),
            LogLineFunction(grid, std::move(neg), left_power, right_power)};
}

}  // namespace halfplane
