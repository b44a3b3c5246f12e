#pragma once

#include "halfplane/boundary.hpp"
#include "halfplane/config.hpp"
#include "halfplane/error.hpp"
#include "halfplane/operators.hpp"
#include "halfplane/parallel.hpp"
#include "halfplane/quadrature.hpp"
#include "halfplane/vec2.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <locale>
#include <string_view>
#include <type_traits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace halfplane {

/// Band around each threshold inside which the solvers refuse to run.
inline constexpr double kSolverThresholdBand = 1e-6;

inline void check_kernel_alpha(double alpha) {
    if (!(alpha > -2.0 && alpha < 1.0)) {
        throw Error(ErrorKind::DomainError, "kernel index alpha must lie in (-2, 1)");
    }
}

namespace detail {

inline double poisson_kernel_unchecked(double alpha, double t, double x, double y) {
    using C = std::complex<double>;
    const double ax = std::abs(x);
    const C w(ax, t);
    const C wc(ax, -t);
    const C num = std::pow(w, alpha + 1.0) * (y * y - wc * wc);
    const double top = 2.0 * x * t * y + std::pow(std::abs(y), -alpha) * num.imag();
    const double den = (t * t + (x - y) * (x - y)) * (t * t + (x + y) * (x + y));
    return top / (std::numbers::pi * den);
}

inline double axis_kernel_unchecked(double alpha, double t, double y) {
    return std::cos(std::numbers::pi * alpha / 2.0) / std::numbers::pi * std::pow(t, 1.0 + alpha) *
           std::pow(std::abs(y), -alpha) / (t * t + y * y);
}

}  // namespace detail

/// Signed harmonic measure
/// P_a(t,x;y) = (1/pi) [2xty + |y|^{-a} Im{(|x|+it)^{a+1} (y^2 - (|x|-it)^2)}] / ((t^2+(x-y)^2)(t^2+(x+y)^2)).
inline double poisson_kernel(double alpha, double t, double x, double y) {
    check_kernel_alpha(alpha);
    if (!(t > 0.0) || y == 0.0 || !std::isfinite(x) || !std::isfinite(y)) {
        throw Error(ErrorKind::DomainError, "poisson_kernel needs t > 0, finite x and y != 0");
    }
    return detail::poisson_kernel_unchecked(alpha, t, x, y);
}

/// P_a(t,0;y) = cos(pi a/2)/pi t^{1+a} |y|^{-a}/(t^2 + y^2).
inline double axis_kernel(double alpha, double t, double y) {
    check_kernel_alpha(alpha);
    if (!(t > 0.0) || y == 0.0 || !std::isfinite(y)) {
        throw Error(ErrorKind::DomainError, "axis_kernel needs t > 0 and y != 0");
    }
    return detail::axis_kernel_unchecked(alpha, t, y);
}

/// Closed form of I = p.v. int_0^inf (gamma t + beta (y - x))/(t^2 + (y - x)^2) y^{1+a}/(y^2 - z^2) dy
/// from the residue identity
/// 2 (k/pi) z^{-a} I = (k^2-1)/2 (gamma t - beta (x-z))/(t^2+(x-z)^2)
///                   - (k^2+1)/2 (gamma t - beta (x+z))/(t^2+(x+z)^2)
///                   - Re((1-ik)^2 (beta - i gamma) (x+it)^{1+a}/((x+it)^2 - z^2)) z^{-a}.
inline double residue_I(double alpha, double beta, double gamma, double t, double x, double z) {
    using C = std::complex<double>;
    check_kernel_alpha(alpha);
    if (!(t > 0.0) || !(z > 0.0) || !std::isfinite(x)) {
        throw Error(ErrorKind::DomainError, "residue_I needs t > 0, z > 0 and finite x");
    }
    if (std::abs(alpha) < 1e-12) {
        throw Error(ErrorKind::DomainError, "the residue identity degenerates at alpha = 0");
    }
    const double k = k_from_alpha(alpha);
    const double zpow = std::pow(z, -alpha);
    const C w(x, t);
    const double a = 0.5 * (k * k - 1.0) * (gamma * t - beta * (x - z)) / (t * t + (x - z) * (x - z));
    const double b = 0.5 * (k * k + 1.0) * (gamma * t - beta * (x + z)) / (t * t + (x + z) * (x + z));
    const C ik(1.0, -k);
    const double c = (ik * ik * C(beta, -gamma) * std::pow(w, 1.0 + alpha) / (w * w - z * z)).real() * zpow;
    return (a - b - c) / (2.0 * k / std::numbers::pi * zpow);
}

/// Both sides of the quadrant identity
/// (1/pi) int_0^inf s^{2+a}/((4x^2t^2 + (x^2-t^2+s^2)^2)(s^2+y^2)) ds
///   = -1/(2 cos(pi a/2)) |y|^{1+a}/(4x^2t^2 + (x^2-t^2-y^2)^2) + 1/(4xt) Re((1-ik)(t+ix)^{1+a}/((t+ix)^2+y^2)).
inline std::pair<double, double> quadrant_integral_identity(double alpha, double t, double x, double y,
                                                            const PVQuadratureScheme& s = {}) {
    using C = std::complex<double>;
    check_kernel_alpha(alpha);
    if (!(t > 0.0 && x > 0.0 && y > 0.0)) {
        throw Error(ErrorKind::DomainError, "quadrant identity needs t, x, y > 0");
    }
    const double q = 4.0 * x * x * t * t;
    auto f = [&](double sv) {
        const double d = x * x - t * t + sv * sv;
        return std::pow(sv, 2.0 + alpha) / ((q + d * d) * (sv * sv + y * y)) / std::numbers::pi;
    };
    PVQuadratureScheme sc = s;
    sc.tail_exponent_hint = 4.0 - alpha;
    const double scale = 0.25 * std::min({t, x, y});
    const double lhs = integrate(f, 0.0, std::numeric_limits<double>::infinity(),
                                 {Breakpoint{0.0, scale}, Breakpoint{y, scale},
                                  Breakpoint{std::sqrt(std::abs(t * t - x * x)) + scale, scale}},
                                 sc);
    const double k = k_from_alpha(alpha);
    const double d = x * x - t * t - y * y;
    const C w(t, x);
    const double rhs = -0.5 / std::cos(std::numbers::pi * alpha / 2.0) * std::pow(y, 1.0 + alpha) / (q + d * d) +
                       (C(1.0, -k) * std::pow(w, 1.0 + alpha) / (w * w + y * y)).real() / (4.0 * x * t);
    return {lhs, rhs};
}

/// U(t,0) = cos(pi a/2)/pi int t^{1+a} |y|^{-a}/(t^2 + y^2) u(y) dy.
inline double axis_value(double alpha, const BoundarySample& u, double t, const PVQuadratureScheme& s = {}) {
    check_kernel_alpha(alpha);
    if (!(t > 0.0)) {
        throw Error(ErrorKind::DomainError, "t must be positive");
    }
    auto g = [&](double y) { return y == 0.0 ? 0.0 : detail::axis_kernel_unchecked(alpha, t, y) * u(y); };
    const double sc = detail::origin_scale(u, t);
    return detail::integrate_data(u, g, {Breakpoint{0.0, sc, std::min(0.0, -alpha + u.origin_power())}},
                                  2.0 + alpha, s);
}

/// First-quadrant Poisson composition (mirrored for x < 0):
/// U(t,x) = (1/pi) int_0^inf 4xty/(4x^2t^2+(x^2-t^2-y^2)^2) u(y) dy
///        + (1/pi) int_0^inf 4xts/(4x^2t^2+(x^2-t^2+s^2)^2) U(s,0) ds.
template <class Axis>
double quadrant_poisson(const BoundarySample& u, const Axis& axis_values, double t, double x,
                        const PVQuadratureScheme& s = {}) {
    if (!(t > 0.0) || x == 0.0 || !std::isfinite(x)) {
        throw Error(ErrorKind::DomainError, "quadrant_poisson needs t > 0 and x != 0");
    }
    const int side = x > 0.0 ? 1 : -1;
    const double ax = std::abs(x);
    const double q = 4.0 * ax * ax * t * t;
    const auto half = u.half_line(side);
    auto data = [&](double y) {
        const double d = ax * ax - t * t - y * y;
        return 4.0 * ax * t * y / (q + d * d) * half(y) / std::numbers::pi;
    };
    const double peak = std::sqrt(std::abs(ax * ax - t * t));
    const double sc = 0.25 * std::min({t, ax, half.feature_scale()});
    double total = detail::integrate_data(half, data, {Breakpoint{peak, sc}, Breakpoint{0.0, sc}}, 3.0, s);
    auto axis = [&](double sv) {
        const double d = ax * ax - t * t + sv * sv;
        return 4.0 * ax * t * sv / (q + d * d) * axis_values(sv) / std::numbers::pi;
    };
    PVQuadratureScheme sc2 = s;
    sc2.tail_exponent_hint = 3.0;
    total += integrate(axis, 0.0, std::numeric_limits<double>::infinity(),
                       {Breakpoint{0.0, 0.25 * std::min(t, ax)}, Breakpoint{std::max(t, ax), sc}}, sc2);
    return total;
}

struct KernelSample {
    double alpha = 0.0;
    double y = 0.0;
    double value = 0.0;
};

/// P_a(t,x;y) for every alpha and y (the axis formula when x = 0); y = 0 is skipped.
inline std::vector<KernelSample> harmonic_measure_table(const std::vector<double>& alphas, double t, double x,
                                                        const std::vector<double>& ys) {
    std::vector<KernelSample> out;
    for (double a : alphas) {
        check_kernel_alpha(a);
        for (double y : ys) {
            if (y == 0.0) {
                continue;
            }
            out.push_back({a, y, x == 0.0 ? axis_kernel(a, t, y) : poisson_kernel(a, t, x, y)});
        }
    }
    return out;
}

/// Leading exponents of a density assembled from half-line pieces: near 0 and at infinity.
struct DensityExponents {
    double origin = 0.0;
    double decay = 0.0;
};

/// Dirichlet density psi = 2 (I + k K*)^{-1} u, per half-line
/// psi(+-y) = 2/(1+k^2) (u(+-y) + k (2/pi) p.v. int_0^inf y^{1+a} z^{-a}/(y^2 - z^2) u(+-z) dz).
inline BoundarySample psi_from_u(const BoundarySample& u, const ProblemConfig& cfg, const LogLineOptions& o = {}) {
    const double k = cfg.k();
    const double alpha = cfg.alpha();
    if (k == 0.0) {
        return u.scaled(2.0);
    }
    const double beta = 1.0 + alpha;
    const double gamma = beta + 1.0 / cfg.p();
    if (!(gamma > 0.0 && gamma < 2.0)) {
        throw Error(ErrorKind::OutOfBoundednessRange,
                    "psi_from_u needs alpha in (1/q - 2, 1/q) so that K_{1+alpha} is bounded on L_p");
    }
    const double n = 1.0 + k * k;
    auto pos = half_line_affine(2.0 / n, 2.0 * k / n, beta, u.half_line(+1), cfg.p(), o);
    auto neg = half_line_affine(2.0 / n, 2.0 * k / n, beta, u.half_line(-1), cfg.p(), o);
    const double decay = std::min(2.0 - beta, u.decay_rate());
    const double origin = std::min({0.0, beta, u.origin_power()});
    return to_boundary_sample(SplitLineFunction{pos, neg}, decay, origin, u.feature_scale(), "psi");
}

enum class DirichletRoute { Kernel, Psi };

/// U for the Dirichlet problem. The kernel route integrates P_a against u; the psi route extends
/// the density psi by (1/2pi) int [(t - (x-y) k sgn y)/(t^2+(x-y)^2) - k(|x|+|y|)/(t^2+(|x|+|y|)^2)] psi dy.
class DirichletSolution {
public:
    DirichletSolution(BoundarySample u, ProblemConfig cfg, DirichletRoute route = DirichletRoute::Kernel,
                      PVQuadratureScheme scheme = {}, LogLineOptions options = {})
        : u_(std::move(u)), cfg_(cfg), route_(route), scheme_(std::move(scheme)) {
        check_kernel_alpha(cfg_.alpha());
        if (route_ == DirichletRoute::Psi) {
            psi_ = psi_from_u(u_, cfg_, options);
        }
    }

    [[nodiscard]] const ProblemConfig& config() const noexcept { return cfg_; }
    [[nodiscard]] const BoundarySample& data() const noexcept { return u_; }
    [[nodiscard]] DirichletRoute route() const noexcept { return route_; }

    double operator()(double t, double x) const {
        if (!(t > 0.0) || !std::isfinite(x)) {
            throw Error(ErrorKind::DomainError, "U is evaluated at t > 0");
        }
        return route_ == DirichletRoute::Kernel ? kernel_route(t, x) : psi_route(t, x);
    }

    /// U(t, 0) by the axis formula.
    [[nodiscard]] double axis(double t) const { return axis_value(cfg_.alpha(), u_, t, scheme_); }

private:
    double kernel_route(double t, double x) const {
        if (x == 0.0) {
            return axis(t);
        }
        const double alpha = cfg_.alpha();
        auto g = [&](double y) { return y == 0.0 ? 0.0 : detail::poisson_kernel_unchecked(alpha, t, x, y) * u_(y); };
        const double sc = 0.25 * std::min({t, std::abs(x), u_.feature_scale()});
        const double p0 = std::min(0.0, std::min(0.0, -alpha) + u_.origin_power());
        return detail::integrate_data(u_, g, {Breakpoint{x, 0.25 * std::min(t, u_.feature_scale())},
                                              Breakpoint{-x, 0.25 * std::min(t, u_.feature_scale())},
                                              Breakpoint{0.0, sc, p0}},
                                      2.0 + alpha, scheme_);
    }

    double psi_route(double t, double x) const {
        const double k = cfg_.k();
        const double ax = std::abs(x);
        auto g = [&](double y) {
            const double sy = detail::sgn(y);
            const double d = x - y;
            const double b = ax + std::abs(y);
            return ((t - d * k * sy) / (t * t + d * d) - k * b / (t * t + b * b)) * psi_(y) /
                   (2.0 * std::numbers::pi);
        };
        const double sc = 0.25 * std::min({t, psi_.feature_scale()});
        return detail::integrate_data(
            psi_, g, {Breakpoint{x, sc}, Breakpoint{0.0, sc, std::min(0.0, psi_.origin_power())}}, 2.0, scheme_);
    }

    BoundarySample u_;
    ProblemConfig cfg_;
    DirichletRoute route_;
    PVQuadratureScheme scheme_;
    BoundarySample psi_;
};

/// F = C_k^+ h for a boundary field h: the Neumann and regularity solutions.
class GradientSolution {
public:
    GradientSolution(BoundaryVectorField h, ProblemConfig cfg, PVQuadratureScheme scheme = {})
        : h_(std::move(h)), cfg_(cfg), scheme_(std::move(scheme)) {}

    RVec2 operator()(double t, double x) const { return cauchy_extension(t, h_, x, cfg_, scheme_); }

    [[nodiscard]] const BoundaryVectorField& boundary_field() const noexcept { return h_; }
    [[nodiscard]] const ProblemConfig& config() const noexcept { return cfg_; }

private:
    BoundaryVectorField h_;
    ProblemConfig cfg_;
    PVQuadratureScheme scheme_;
};

/// Raises NotInvertible within kSolverThresholdBand of the critical k of the problem. The Dirichlet
/// threshold concerns the LpInf branch only.
inline void require_solvable(Problem problem, double k, double p, Branch branch) {
    if (problem == Problem::Dirichlet && branch == Branch::H1) {
        check_exponent(p);
        return;
    }
    if (at_threshold(problem, k, p, kSolverThresholdBand)) {
        std::ostringstream msg;
        msg << to_string(problem) << " boundary equation is not invertible on L_p at k = " << k << ", p = " << p
            << " (threshold " << threshold(problem, p) << ")";
        throw Error(ErrorKind::NotInvertible, msg.str());
    }
}

namespace detail {

inline DensityExponents split_exponents(const HalfLineInverse& inv, const BoundarySample& data) {
    return {std::min({0.0, inv.alpha, data.origin_power()}), std::min(2.0 - inv.alpha, data.decay_rate())};
}

}  // namespace detail

/// Neumann: psi = 2 (I + kK)^{-1} phi on each half-line, F = C_k^+ (psi, 0).
inline GradientSolution neumann_solution(const BoundarySample& phi, const ProblemConfig& cfg,
                                         const LogLineOptions& o = {}, const PVQuadratureScheme& s = {}) {
    require_solvable(Problem::Neumann, cfg.k(), cfg.p(), cfg.branch());
    const double k = cfg.k();
    auto pos = invert_half_line(Sign::Plus, k, phi.half_line(+1).scaled(2.0), cfg, o);
    auto neg = invert_half_line(Sign::Plus, k, phi.half_line(-1).scaled(2.0), cfg, o);
    const auto e = detail::split_exponents(pos, phi);
    auto psi = to_boundary_sample(SplitLineFunction{pos.value, neg.value}, e.decay, e.origin, phi.feature_scale(),
                                  "neumann-psi");
    return GradientSolution(BoundaryVectorField{psi, BoundarySample::zero()}, cfg, s);
}

/// Regularity: chi = sgn psi = 2 (I - kK)^{-1} (sgn u') on each half-line,
/// F = C_k^+ (-k sgn psi, psi) = C_k^+ (-k chi, sgn chi).
inline GradientSolution regularity_solution(const BoundarySample& u_prime, const ProblemConfig& cfg,
                                            const LogLineOptions& o = {}, const PVQuadratureScheme& s = {}) {
    require_solvable(Problem::Regularity, cfg.k(), cfg.p(), cfg.branch());
    const double k = cfg.k();
    auto pos = invert_half_line(Sign::Minus, k, u_prime.half_line(+1).scaled(2.0), cfg, o);
    auto neg = invert_half_line(Sign::Minus, k, u_prime.half_line(-1).scaled(-2.0), cfg, o);
    const auto e = detail::split_exponents(pos, u_prime);
    const SplitLineFunction chi{pos.value, neg.value};
    auto h0 = to_boundary_sample(chi, e.decay, e.origin, u_prime.feature_scale(), "regularity-h0").scaled(-k);
    const SplitLineFunction psi{pos.value, neg.value, -1.0};
    auto h1 = to_boundary_sample(psi, e.decay, e.origin, u_prime.feature_scale(), "regularity-h1");
    return GradientSolution(BoundaryVectorField{k == 0.0 ? BoundarySample::zero() : h0, h1}, cfg, s);
}

/// Evaluation grid: t levels t0..t1 inclusive (nt >= 1), x nodes at the centers of nx equal cells of
/// [x0, x1]; no node may fall on x = 0.
struct GridSpec {
    double t0 = 0.1;
    double t1 = 1.0;
    std::size_t nt = 10;
    double x0 = -2.0;
    double x1 = 2.0;
    std::size_t nx = 40;

    /// "t0:t1:nt,x0:x1:nx".
    static GridSpec parse(const std::string& text) {
        GridSpec g;
        char c1 = 0;
        char c2 = 0;
        char c3 = 0;
        char c4 = 0;
        char c5 = 0;
        std::istringstream in(text);
        in.imbue(std::locale::classic());
        long nt = 0;
        long nx = 0;
        in >> g.t0 >> c1 >> g.t1 >> c2 >> nt >> c3 >> g.x0 >> c4 >> g.x1 >> c5 >> nx;
        if (!in || c1 != ':' || c2 != ':' || c3 != ',' || c4 != ':' || c5 != ':' || !(in >> std::ws).eof()) {
            throw Error(ErrorKind::InvalidArgument, "grid must read t0:t1:nt,x0:x1:nx, got '" + text + "'");
        }
        if (nt < 1 || nx < 1) {
            throw Error(ErrorKind::InvalidArgument, "grid sizes must be positive");
        }
        g.nt = static_cast<std::size_t>(nt);
        g.nx = static_cast<std::size_t>(nx);
        g.validate();
        return g;
    }

    void validate() const {
        if (!(t0 > 0.0) || !(t1 >= t0) || nt == 0 || (nt > 1 && !(t1 > t0))) {
            throw Error(ErrorKind::InvalidArgument, "grid needs 0 < t0 < t1 (or t0 = t1 with nt = 1)");
        }
        if (!(x1 > x0) || nx == 0) {
            throw Error(ErrorKind::InvalidArgument, "grid needs x0 < x1 and nx >= 1");
        }
        for (double x : x_nodes_unchecked()) {
            if (std::abs(x) <= 1e-14 * (x1 - x0)) {
                throw Error(ErrorKind::InvalidArgument, "grid places a node on x = 0");
            }
        }
    }

    [[nodiscard]] std::vector<double> t_levels() const {
        validate();
        std::vector<double> t(nt);
        for (std::size_t i = 0; i < nt; ++i) {
            t[i] = nt == 1 ? t0 : t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(nt - 1);
        }
        return t;
    }

    [[nodiscard]] std::vector<double> x_nodes() const {
        validate();
        return x_nodes_unchecked();
    }

private:
    [[nodiscard]] std::vector<double> x_nodes_unchecked() const {
        std::vector<double> x(nx);
        const double h = (x1 - x0) / static_cast<double>(nx);
        for (std::size_t j = 0; j < nx; ++j) {
            x[j] = x0 + h * (static_cast<double>(j) + 0.5);
        }
        return x;
    }
};

enum class FieldKind { Potential, Gradient };

constexpr std::string_view to_string(FieldKind k) { return k == FieldKind::Potential ? "potential" : "gradient"; }

/// Values of U (component v0) or F = (F0, F1) on a tensor grid, row-major in t.
struct FieldGrid {
    FieldKind kind = FieldKind::Potential;
    std::vector<double> t;
    std::vector<double> x;
    std::vector<RVec2> values;

    [[nodiscard]] std::size_t components() const noexcept { return kind == FieldKind::Potential ? 1 : 2; }
    [[nodiscard]] const RVec2& at(std::size_t i, std::size_t j) const { return values.at(i * x.size() + j); }
    RVec2& at(std::size_t i, std::size_t j) { return values.at(i * x.size() + j); }

    void validate() const {
        if (values.size() != t.size() * x.size()) {
            throw Error(ErrorKind::InvalidArgument, "field grid size mismatch");
        }
        for (double v : t) {
            if (!(v > 0.0)) {
                throw Error(ErrorKind::InvalidArgument, "field grid t levels must be positive");
            }
        }
        for (double v : x) {
            if (v == 0.0) {
                throw Error(ErrorKind::InvalidArgument, "field grid has a node on x = 0");
            }
        }
    }
};

/// Tabulates a scalar (U) or vector (F) evaluator on the grid, in parallel over nodes.
template <class Eval>
FieldGrid tabulate(const Eval& eval, const std::vector<double>& t, const std::vector<double>& x) {
    FieldGrid g;
    using R = std::decay_t<std::invoke_result_t<const Eval&, double, double>>;
    g.kind = std::is_same_v<R, double> ? FieldKind::Potential : FieldKind::Gradient;
    g.t = t;
    g.x = x;
    g.values.resize(t.size() * x.size());
    parallel_for(g.values.size(), [&](std::size_t n) {
        const double tv = t[n / x.size()];
        const double xv = x[n % x.size()];
        if constexpr (std::is_same_v<R, double>) {
            g.values[n] = RVec2{eval(tv, xv), 0.0};
        } else {
            g.values[n] = eval(tv, xv);
        }
        if (!all_finite(g.values[n])) {
            throw Error(ErrorKind::QuadratureFailure, "non-finite field value");
        }
    });
    return g;
}

inline FieldGrid solve_dirichlet(const BoundarySample& u, const ProblemConfig& cfg, const GridSpec& grid,
                                 DirichletRoute route = DirichletRoute::Kernel) {
    require_solvable(Problem::Dirichlet, cfg.k(), cfg.p(), cfg.branch());
    const DirichletSolution sol(u, cfg, route);
    return tabulate(sol, grid.t_levels(), grid.x_nodes());
}

inline FieldGrid solve_neumann(const BoundarySample& phi, const ProblemConfig& cfg, const GridSpec& grid) {
    const auto sol = neumann_solution(phi, cfg);
    return tabulate(sol, grid.t_levels(), grid.x_nodes());
}

inline FieldGrid solve_regularity(const BoundarySample& u_prime, const ProblemConfig& cfg, const GridSpec& grid) {
    const auto sol = regularity_solution(u_prime, cfg);
    return tabulate(sol, grid.t_levels(), grid.x_nodes());
}

/// Configuration for a problem: thresholds are checked first (NotInvertible), then alpha is placed
/// on the branch. Gradient problems do not use alpha and fall back to the H1 branch when the
/// requested branch is degenerate.
inline ProblemConfig problem_config(Problem problem, double k, double p, Branch branch) {
    require_solvable(problem, k, p, branch);
    if (problem == Problem::Dirichlet) {
        return derive_config(k, p, branch);
    }
    try {
        return derive_config(k, p, branch);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::BranchDegenerate) {
            throw;
        }
        return derive_config(k, p, Branch::H1);
    }
}

/// Solves the problem with boundary datum `data` (u, phi or u' according to the problem).
inline FieldGrid solve(Problem problem, double k, double p, Branch branch, const BoundarySample& data,
                       const GridSpec& grid) {
    const auto cfg = problem_config(problem, k, p, branch);
    switch (problem) {
    case Problem::Dirichlet: return solve_dirichlet(data, cfg, grid);
    case Problem::Neumann: return solve_neumann(data, cfg, grid);
    case Problem::Regularity: return solve_regularity(data, cfg, grid);
    }
    throw Error(ErrorKind::InvalidArgument, "unknown problem");
}

}  // namespace halfplane
