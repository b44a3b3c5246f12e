#pragma once

#include "halfplane/error.hpp"
#include "halfplane/vec2.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

namespace halfplane {

enum class PanelRule { GaussLegendre, ClenshawCurtis };

/// Nodes and weights on [-1, 1].
struct PanelNodes {
    std::vector<double> x;
    std::vector<double> w;
};

namespace detail {

inline PanelNodes make_gauss_legendre(int n) {
    PanelNodes r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = z;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) {
                break;
            }
        }
        // recompute derivative at the converged root
        double p0 = 1.0;
        double p1 = z;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (z * p1 - p0) / (z * z - 1.0);
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        r.x[i] = -z;
        r.x[n - 1 - i] = z;
        r.w[i] = w;
        r.w[n - 1 - i] = w;
    }
    if (n % 2 == 1) {
        r.x[n / 2] = 0.0;
    }
    return r;
}

// Clenshaw-Curtis on the n Chebyshev extreme points (n >= 2).
inline PanelNodes make_clenshaw_curtis(int n) {
    const int N = n - 1;
    PanelNodes r;
    r.x.resize(n);
    r.w.assign(n, 0.0);
    for (int j = 0; j <= N; ++j) {
        r.x[j] = -std::cos(std::numbers::pi * j / N);
        double s = 0.0;
        for (int k = 0; k <= N / 2; ++k) {
            const double bk = (k == 0 || 2 * k == N) ? 1.0 : 2.0;
            s += bk / (1.0 - 4.0 * k * k) * std::cos(2.0 * std::numbers::pi * k * j / N);
        }
        const double cj = (j == 0 || j == N) ? 1.0 : 2.0;
        r.w[j] = cj / N * s;
    }
    return r;
}

}  // namespace detail

/// Cached rule; thread-safe.
inline const PanelNodes& panel_nodes(PanelRule rule, int n) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::unique_ptr<PanelNodes>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[{static_cast<int>(rule), n}];
    if (!slot) {
        slot = std::make_unique<PanelNodes>(rule == PanelRule::GaussLegendre ? detail::make_gauss_legendre(n)
                                                                             : detail::make_clenshaw_curtis(n));
    }
    return *slot;
}

/// Configuration of every integral in the library, principal values included.
struct PVQuadratureScheme {
    std::vector<double> excision_radii{0.1, 0.05, 0.025, 0.0125, 0.00625, 0.003125};
    int extrapolation_order = 4;
    PanelRule panel_rule = PanelRule::GaussLegendre;
    int points_per_panel = 16;
    double grading_exponent = 3.0;
    double truncation_radius = 50.0;
    double tail_exponent_hint = 2.0;
    /// Ratio of consecutive panel lengths moving away from a breakpoint.
    double panel_growth = 4.0;
    /// Bisection stops once a panel agrees with its halves to this fraction of the integral of |f|.
    double adaptive_tolerance = 1e-14;
    int max_bisections = 12;

    void validate() const {
        const auto m = excision_radii.size();
        if (extrapolation_order < 1 || m < static_cast<std::size_t>(extrapolation_order) + 1) {
            throw Error(ErrorKind::InvalidArgument, "need at least extrapolation_order + 1 excision radii");
        }
        for (std::size_t i = 0; i < m; ++i) {
            if (!(excision_radii[i] > 0.0) || (i > 0 && !(excision_radii[i] < excision_radii[i - 1]))) {
                throw Error(ErrorKind::InvalidArgument, "excision radii must be positive and decreasing");
            }
        }
        if (points_per_panel < 4) {
            throw Error(ErrorKind::InvalidArgument, "points_per_panel must be >= 4");
        }
        if (!(truncation_radius > 0.0) || !(grading_exponent >= 1.0) || !(panel_growth > 1.0)) {
            throw Error(ErrorKind::InvalidArgument, "invalid truncation radius, grading exponent or growth");
        }
    }

    [[nodiscard]] const PanelNodes& nodes() const { return panel_nodes(panel_rule, points_per_panel); }
};

/// A point where the integrand is not smooth.
/// scale: length of the first panel next to the point.
/// power: local algebraic exponent, f ~ |y - at|^power (negative values get an exact
///        power-substitution panel).
/// pole: simple pole, integrated in the principal-value sense.
struct Breakpoint {
    double at;
    double scale = 0.25;
    double power = 0.0;
    bool pole = false;
};

template <class R>
struct QuadResult {
    R value{};
    double error_estimate = 0.0;
    std::vector<double> level_estimates;  ///< |T(l) - T(l-1)| for each extrapolation level l >= 1
};

template <class F>
using quad_value_t = std::decay_t<std::invoke_result_t<const F&, double>>;

namespace detail {

struct End {
    double scale;
    double power;
};

template <class F>
quad_value_t<F> panel(const F& f, double a, double b, const PanelNodes& r) {
    using R = quad_value_t<F>;
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    R sum{};
    for (std::size_t i = 0; i < r.x.size(); ++i) {
        sum += r.w[i] * f(c + h * r.x[i]);
    }
    return h * sum;
}

// Integral over [e, e + dir*h] of f with f ~ |y - e|^power near e; exact for the pure power.
template <class F>
quad_value_t<F> power_panel(const F& f, double e, double h, int dir, double power, const PanelNodes& r) {
    using R = quad_value_t<F>;
    const double m = 1.0 / (power + 1.0);
    R sum{};
    for (std::size_t i = 0; i < r.x.size(); ++i) {
        const double s = 0.5 * (r.x[i] + 1.0);
        double y = e + dir * h * std::pow(s, m);
        if (y == e) {
            y = std::nextafter(e, dir * std::numeric_limits<double>::infinity());
        }
        sum += (0.5 * r.w[i] * h * m * std::pow(s, m - 1.0)) * f(y);
    }
    return sum;
}

// Bisection until the two halves agree with the whole to tol (absolute) or to rounding.
template <class F>
quad_value_t<F> adapt(const F& f, double a, double b, const quad_value_t<F>& whole, double tol, int depth,
                      const PanelNodes& r) {
    const double m = 0.5 * (a + b);
    const auto left = panel(f, a, m, r);
    const auto right = panel(f, m, b, r);
    const auto both = left + right;
    const double floor = 1e-14 * (magnitude(left) + magnitude(right));
    if (depth <= 0 || magnitude(both - whole) <= std::max(tol, floor) || !(m > a && b > m)) {
        return both;
    }
    return adapt(f, a, m, left, tol, depth - 1, r) + adapt(f, m, b, right, tol, depth - 1, r);
}

// Power panel at e refined by splitting off an eighth next to e.
template <class F>
quad_value_t<F> adapt_power(const F& f, double e, double h, int dir, double power, const quad_value_t<F>& whole,
                            double tol, int depth, const PanelNodes& r) {
    const double h8 = 0.125 * h;
    const auto inner = power_panel(f, e, h8, dir, power, r);
    const double a = dir > 0 ? e + h8 : e - h;
    const double b = dir > 0 ? e + h : e - h8;
    const auto outer = panel(f, a, b, r);
    const auto both = inner + outer;
    const double floor = 1e-14 * (magnitude(inner) + magnitude(outer));
    if (depth <= 0 || magnitude(both - whole) <= std::max(tol, floor)) {
        return both;
    }
    return adapt_power(f, e, h8, dir, power, inner, tol, depth - 1, r) + adapt(f, a, b, outer, tol, depth - 1, r);
}

// Geometric mesh from both ends toward the middle, then adaptive bisection of every panel.
template <class F>
quad_value_t<F> interval(const F& f, double p, double q, End left, End right, const PVQuadratureScheme& s) {
    using R = quad_value_t<F>;
    const double len = q - p;
    if (!(len > 0.0)) {
        return R{};
    }
    const PanelNodes& r = s.nodes();
    const double mid = p + 0.5 * len;
    const double g = s.panel_growth;

    std::vector<double> edges{p};
    for (double x = p, h = std::min(left.scale, 0.5 * len); x + h < mid; h *= g) {
        x += h;
        edges.push_back(x);
    }
    if (edges.size() == 1 && left.power != 0.0) {
        edges.push_back(mid);
    }
    std::vector<double> redges{q};
    for (double y = q, h = std::min(right.scale, 0.5 * len); y - h > mid; h *= g) {
        y -= h;
        redges.push_back(y);
    }
    if (redges.size() == 1 && right.power != 0.0) {
        redges.push_back(mid);
    }
    edges.insert(edges.end(), redges.rbegin(), redges.rend());

    const std::size_t panels = edges.size() - 1;
    std::vector<R> coarse(panels);
    std::vector<int> kind(panels, 0);
    double scale = 0.0;
    for (std::size_t k = 0; k < panels; ++k) {
        const double a = edges[k];
        const double b = edges[k + 1];
        if (!(b > a)) {
            kind[k] = -1;
            continue;
        }
        if (k == 0 && left.power != 0.0) {
            kind[k] = 1;
            coarse[k] = power_panel(f, a, b - a, +1, left.power, r);
        } else if (k + 1 == panels && right.power != 0.0) {
            kind[k] = 2;
            coarse[k] = power_panel(f, b, b - a, -1, right.power, r);
        } else {
            coarse[k] = panel(f, a, b, r);
        }
        scale += magnitude(coarse[k]);
    }
    const double tol = s.adaptive_tolerance * scale;
    R total{};
    for (std::size_t k = 0; k < panels; ++k) {
        const double a = edges[k];
        const double b = edges[k + 1];
        switch (kind[k]) {
        case -1: break;
        case 1: total += adapt_power(f, a, b - a, +1, left.power, coarse[k], tol, s.max_bisections, r); break;
        case 2: total += adapt_power(f, b, b - a, -1, right.power, coarse[k], tol, s.max_bisections, r); break;
        default: total += adapt(f, a, b, coarse[k], tol, s.max_bisections, r); break;
        }
    }
    return total;
}

// Integral over [R, inf) (dir = +1) or (-inf, -R] (dir = -1) after y = dir * R / s.
template <class F>
quad_value_t<F> tail(const F& f, double radius, int dir, double decay, const PVQuadratureScheme& s) {
    if (!(decay > 1.0)) {
        throw Error(ErrorKind::TailTooSlow, "algebraic tail decay rate must exceed 1");
    }
    auto g = [&](double u) {
        using R = quad_value_t<F>;
        if (u <= 0.0) {
            return R{};
        }
        return (radius / (u * u)) * f(dir * radius / u);
    };
    const double power = decay - 2.0;
    return interval(g, 0.0, 1.0, End{1e-6, power < 0.0 ? power : 0.0}, End{0.25, 0.0}, s);
}

template <class R>
void richardson(std::span<const R> values, int order, QuadResult<R>& out) {
    const std::size_t m = values.size();
    const int levels = std::min<int>(order, static_cast<int>(m) - 1);
    std::vector<std::vector<R>> t(m);
    for (std::size_t j = 0; j < m; ++j) {
        t[j].resize(levels + 1);
        t[j][0] = values[j];
        for (int l = 1; l <= levels && static_cast<std::size_t>(l) <= j; ++l) {
            const double factor = std::ldexp(1.0, 2 * l - 1) - 1.0;
            t[j][l] = t[j][l - 1] + (t[j][l - 1] - t[j - 1][l - 1]) * (1.0 / factor);
        }
    }
    const auto& last = t[m - 1];
    out.value = last[levels];
    out.level_estimates.clear();
    for (int l = 1; l <= levels; ++l) {
        out.level_estimates.push_back(magnitude(last[l] - last[l - 1]));
    }
    out.error_estimate = out.level_estimates.empty() ? 0.0 : out.level_estimates.back();
}

// Principal value over [x0 - d, x0 + d] by symmetric excision of radii eps_j and
// Richardson extrapolation in odd powers of eps.
template <class F>
QuadResult<quad_value_t<F>> pv_core(const F& f, double x0, double d, const PVQuadratureScheme& s) {
    using R = quad_value_t<F>;
    auto fold = [&](double u) { return f(x0 + u) + f(x0 - u); };
    const auto& radii = s.excision_radii;
    const double scale = std::min(1.0, 0.5 * d / radii.front());
    const std::size_t m = radii.size();
    const PanelNodes& r = s.nodes();

    std::vector<R> values(m);
    const double e1 = scale * radii.front();
    R acc = interval(fold, e1, d, End{e1, 0.0}, End{0.5 * (d - e1), 0.0}, s);
    values[0] = acc;
    for (std::size_t j = 1; j < m; ++j) {
        acc += panel(fold, scale * radii[j], scale * radii[j - 1], r);
        values[j] = acc;
    }
    QuadResult<R> out;
    richardson<R>(values, s.extrapolation_order, out);
    const auto& est = out.level_estimates;
    if (est.size() >= 2) {
        const double last = est.back();
        const double prev = est[est.size() - 2];
        const double ref = magnitude(out.value) + magnitude(values.front()) + 1e-300;
        if (last > prev && last > 1e-6 * ref) {
            throw Error(ErrorKind::NonConvergent, "principal-value extrapolants diverge");
        }
    }
    return out;
}

}  // namespace detail

/// Composite integral of f over [a, b] (either end may be infinite) with panels graded toward
/// each breakpoint. Poles are taken in the principal-value sense; the returned error estimate
/// is the largest principal-value extrapolation estimate.
template <class F>
QuadResult<quad_value_t<F>> integrate_detailed(const F& f, double a, double b, std::vector<Breakpoint> bps,
                                               const PVQuadratureScheme& s) {
    using R = quad_value_t<F>;
    QuadResult<R> out;
    if (a == b) {
        return out;
    }
    if (a > b) {
        auto r = integrate_detailed(f, b, a, std::move(bps), s);
        r.value = R{} - r.value;
        return r;
    }
    double reach = 0.0;
    for (const auto& bp : bps) {
        if (std::isfinite(bp.at)) {
            reach = std::max(reach, std::abs(bp.at));
        }
    }
    const double radius = std::max(s.truncation_radius, 4.0 * reach);
    const bool left_tail = std::isinf(a);
    const bool right_tail = std::isinf(b);
    const double lo = left_tail ? std::min(-radius, b - radius) : a;
    const double hi = right_tail ? std::max(radius, a + radius) : b;

    const double edge_scale = 0.25 * (hi - lo);
    std::vector<Breakpoint> pts;
    pts.push_back(Breakpoint{lo, left_tail ? 0.25 * radius : edge_scale, 0.0, false});
    pts.push_back(Breakpoint{hi, right_tail ? 0.25 * radius : edge_scale, 0.0, false});
    for (const auto& bp : bps) {
        const double tol = 1e-14 * std::max(1.0, std::abs(bp.at));
        if (!std::isfinite(bp.at) || bp.at < lo - tol || bp.at > hi + tol) {
            continue;
        }
        const bool on_edge = std::abs(bp.at - lo) <= tol || std::abs(bp.at - hi) <= tol;
        if (on_edge && bp.pole) {
            throw Error(ErrorKind::SingularityOnBoundary, "pole at an endpoint of the integration domain");
        }
        pts.push_back(bp);
    }
    std::sort(pts.begin(), pts.end(), [](const Breakpoint& x, const Breakpoint& y) { return x.at < y.at; });
    std::vector<Breakpoint> merged;
    for (const auto& bp : pts) {
        if (!merged.empty() && std::abs(bp.at - merged.back().at) <= 1e-14 * std::max(1.0, std::abs(bp.at))) {
            auto& m = merged.back();
            m.scale = std::min(m.scale, bp.scale);
            m.power = std::min(m.power, bp.power);
            m.pole = m.pole || bp.pole;
            continue;
        }
        merged.push_back(bp);
    }

    const std::size_t n = merged.size();
    std::vector<double> half(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (merged[i].pole) {
            half[i] = 0.5 * std::min(merged[i].at - merged[i - 1].at, merged[i + 1].at - merged[i].at);
            auto pv = detail::pv_core(f, merged[i].at, half[i], s);
            out.value += pv.value;
            if (pv.error_estimate >= out.error_estimate) {
                out.error_estimate = pv.error_estimate;
                out.level_estimates = pv.level_estimates;
            }
        }
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const auto& l = merged[i];
        const auto& r = merged[i + 1];
        const double p = l.at + half[i];
        const double q = r.at - half[i + 1];
        const detail::End le = l.pole ? detail::End{half[i], 0.0} : detail::End{l.scale, l.power};
        const detail::End re = r.pole ? detail::End{half[i + 1], 0.0} : detail::End{r.scale, r.power};
        out.value += detail::interval(f, p, q, le, re, s);
    }
    if (left_tail) {
        out.value += detail::tail(f, -lo, -1, s.tail_exponent_hint, s);
    }
    if (right_tail) {
        out.value += detail::tail(f, hi, +1, s.tail_exponent_hint, s);
    }
    if (!all_finite(out.value)) {
        throw Error(ErrorKind::QuadratureFailure, "non-finite integral");
    }
    return out;
}

template <class F>
quad_value_t<F> integrate(const F& f, double a, double b, std::vector<Breakpoint> bps,
                          const PVQuadratureScheme& s = {}) {
    return integrate_detailed(f, a, b, std::move(bps), s).value;
}

/// Principal value of the integral of f over [a, b] with a simple pole at x0.
/// If x0 lies outside [a, b] the integral is ordinary.
template <class F>
QuadResult<quad_value_t<F>> pv_integral(const F& f, double x0, double a, double b, const PVQuadratureScheme& s = {},
                                        std::vector<Breakpoint> extra = {}) {
    s.validate();
    const double tol = 1e-14 * std::max(1.0, std::abs(x0));
    if (std::abs(x0 - a) <= tol || std::abs(x0 - b) <= tol) {
        throw Error(ErrorKind::SingularityOnBoundary, "principal-value point on the domain boundary");
    }
    if (x0 > a && x0 < b) {
        extra.push_back(Breakpoint{x0, 0.0, 0.0, true});
    }
    return integrate_detailed(f, a, b, std::move(extra), s);
}

/// Integral over [a, b] (b may be +inf) of f with f ~ c |y - endpoint|^power at the
/// endpoint (endpoint = a or b). The mesh is graded algebraically with the scheme's grading
/// exponent and refined until two successive meshes agree.
template <class F>
QuadResult<quad_value_t<F>> graded_integral(const F& f, double endpoint, double power, double a, double b,
                                            const PVQuadratureScheme& s = {}) {
    using R = quad_value_t<F>;
    if (!(power > -1.0)) {
        throw Error(ErrorKind::NonIntegrable, "endpoint exponent must exceed -1");
    }
    const bool at_left = std::abs(endpoint - a) <= 1e-14 * std::max(1.0, std::abs(a));
    if (!at_left && !(std::abs(endpoint - b) <= 1e-14 * std::max(1.0, std::abs(b)))) {
        throw Error(ErrorKind::InvalidArgument, "singular endpoint must be a or b");
    }
    double far = b;
    R tail_part{};
    if (std::isinf(b)) {
        if (!at_left) {
            throw Error(ErrorKind::InvalidArgument, "infinite singular endpoint");
        }
        far = std::max(a + s.truncation_radius, s.truncation_radius);
        tail_part = detail::tail(f, far, +1, s.tail_exponent_hint, s);
    }
    const double e = at_left ? a : far;
    const double len = at_left ? far - a : b - a;
    const int dir = at_left ? +1 : -1;
    const PanelNodes& r = s.nodes();

    auto mesh = [&](int panels) {
        R sum{};
        for (int j = 0; j < panels; ++j) {
            const double u0 = len * std::pow(static_cast<double>(j) / panels, s.grading_exponent);
            const double u1 = len * std::pow(static_cast<double>(j + 1) / panels, s.grading_exponent);
            if (j == 0 && power != 0.0) {
                sum += detail::power_panel(f, e, u1, dir, power, r);
            } else if (dir > 0) {
                sum += detail::panel(f, e + u0, e + u1, r);
            } else {
                sum += detail::panel(f, e - u1, e - u0, r);
            }
        }
        return sum;
    };
    QuadResult<R> out;
    R prev = mesh(4);
    double last_change = std::numeric_limits<double>::infinity();
    for (int panels = 8; panels <= 512; panels *= 2) {
        R cur = mesh(panels);
        const double change = magnitude(cur - prev);
        if (change >= last_change) {
            break;  // rounding floor reached; keep the previous mesh
        }
        out.value = cur + tail_part;
        out.error_estimate = change;
        out.level_estimates.push_back(change);
        last_change = change;
        if (change <= 1e-14 * (magnitude(cur) + 1e-300)) {
            break;
        }
        prev = cur;
    }
    if (!all_finite(out.value)) {
        throw Error(ErrorKind::QuadratureFailure, "non-finite graded integral");
    }
    return out;
}

/// Integral over [a, inf): ordinary panels on [a, R] plus the tail beyond the truncation radius
/// R after the substitution y = R/s, which is exact for decay |y|^-hint.
template <class F>
quad_value_t<F> halfline_tail_integral(const F& f, double a, const PVQuadratureScheme& s = {},
                                       std::vector<Breakpoint> bps = {}) {
    if (!(s.tail_exponent_hint > 1.0)) {
        throw Error(ErrorKind::TailTooSlow, "tail decay hint must exceed 1");
    }
    return integrate(f, a, std::numeric_limits<double>::infinity(), std::move(bps), s);
}

}  // namespace halfplane
