#pragma once

#include "halfplane/boundary.hpp"
#include "halfplane/config.hpp"
#include "halfplane/error.hpp"
#include "halfplane/format.hpp"
#include "halfplane/operators.hpp"
#include "halfplane/parallel.hpp"
#include "halfplane/quadrature.hpp"
#include "halfplane/solver.hpp"
#include "halfplane/vec2.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

namespace halfplane {

using ReportParameters = std::vector<std::pair<std::string, std::string>>;

inline std::pair<std::string, std::string> param(std::string key, double value) {
    return {std::move(key), format_number(value)};
}

inline std::pair<std::string, std::string> param(std::string key, std::string value) {
    return {std::move(key), std::move(value)};
}

/// One check outcome. passed <=> measured_error <= tolerance. Expected-failure entries assert that
/// an error is raised; their measured error is 0 when it was.
struct VerificationReport {
    std::string check_name;
    ReportParameters parameters;
    double measured_error = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    bool expected_failure = false;
    double runtime_ms = 0.0;
    std::string note;
};

inline VerificationReport make_report(std::string name, ReportParameters params, double error, double tolerance,
                                      std::string note = {}) {
    VerificationReport r;
    r.check_name = std::move(name);
    r.parameters = std::move(params);
    r.measured_error = error;
    r.tolerance = tolerance;
    r.passed = error <= tolerance;
    r.note = std::move(note);
    return r;
}

/// Runs f and stamps the elapsed time on the report it returns.
template <class F>
VerificationReport timed(F&& f) {
    const auto start = std::chrono::steady_clock::now();
    VerificationReport r = f();
    r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

/// Entry asserting that `call` raises an Error of the given kind.
template <class F>
VerificationReport expect_error(std::string name, ReportParameters params, ErrorKind kind, F&& call) {
    return timed([&] {
        std::string note = "no error raised";
        bool ok = false;
        try {
            call();
        } catch (const Error& e) {
            ok = e.kind() == kind;
            note = e.what();
        }
        auto r = make_report(name, params, ok ? 0.0 : 1.0, 0.0, note);
        r.expected_failure = true;
        return r;
    });
}

namespace detail {

inline bool same_side(double a, double b, double c) { return (a > 0.0 && b > 0.0 && c > 0.0) || (a < 0.0 && b < 0.0 && c < 0.0); }

inline double relative_spread(const std::vector<double>& v) {
    if (v.size() < 3) {
        return 0.0;
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (std::size_t i = 1; i < v.size(); ++i) {
        const double d = v[i] - v[i - 1];
        lo = std::min(lo, std::abs(d));
        hi = std::max(hi, std::abs(d));
    }
    return hi > 0.0 ? (hi - lo) / hi : 0.0;
}

}  // namespace detail

/// Least-squares slope of log|y| against log x.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw Error(ErrorKind::InvalidArgument, "slope fit needs two or more matching samples");
    }
    double sx = 0.0;
    double sy = 0.0;
    double sxx = 0.0;
    double sxy = 0.0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(std::abs(x[i]));
        const double ly = std::log(std::abs(y[i]));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Max residual of the boundary equation behind a solution, relative to max |data|, at the nodes xs:
/// (psi + k K* psi)/2 = u (Dirichlet), (psi + k K psi)/2 = phi (Neumann) and
/// (chi - k K chi)/2 = sgn(x) u' (regularity, chi = sgn(x) F_1 on the boundary).
inline double boundary_equation_residual(Problem problem, const ProblemConfig& cfg, const BoundarySample& data,
                                         const std::vector<double>& xs) {
    const double k = cfg.k();
    std::vector<double> r(xs.size());
    double scale = 0.0;
    for (double x : xs) {
        scale = std::max(scale, std::abs(data(x)));
    }
    switch (problem) {
    case Problem::Dirichlet: {
        const auto psi = psi_from_u(data, cfg);
        parallel_for(xs.size(), [&](std::size_t i) {
            const double x = xs[i];
            r[i] = 0.5 * (psi(x) + (k == 0.0 ? 0.0 : k * apply_K_adjoint(psi, x))) - data(x);
        });
        break;
    }
    case Problem::Neumann: {
        const auto psi = neumann_solution(data, cfg).boundary_field().f0;
        parallel_for(xs.size(), [&](std::size_t i) {
            const double x = xs[i];
            r[i] = 0.5 * (psi(x) + (k == 0.0 ? 0.0 : k * apply_K(psi, x))) - data(x);
        });
        break;
    }
    case Problem::Regularity: {
        const auto h1 = regularity_solution(data, cfg).boundary_field().f1;
        const BoundarySample chi([h1](double y) { return y < 0.0 ? -h1(y) : h1(y); }, h1.support(), {},
                                 h1.feature_scale(), "chi");
        const auto chi_b = chi.with_origin_power(h1.origin_power());
        parallel_for(xs.size(), [&](std::size_t i) {
            const double x = xs[i];
            const double sx = x < 0.0 ? -1.0 : 1.0;
            r[i] = 0.5 * (chi_b(x) - (k == 0.0 ? 0.0 : k * apply_K(chi_b, x))) - sx * data(x);
        });
        break;
    }
    }
    double worst = 0.0;
    for (double v : r) {
        worst = std::max(worst, std::abs(v));
    }
    return scale > 0.0 ? worst / scale : worst;
}

/// Log-log slope of |U(t, x)| over the given x nodes (decay exponent at large |x|).
template <class U>
double tail_exponent(const U& u, double t, const std::vector<double>& xs) {
    std::vector<double> v(xs.size());
    parallel_for(xs.size(), [&](std::size_t i) { v[i] = u(t, xs[i]); });
    return loglog_slope(xs, v);
}

/// Max 5-point Laplacian residual over interior nodes of the two open quadrants, divided by the max
/// second-difference scale |d_xx U| + |d_tt U|. The grid must be uniform in t and in x.
inline VerificationReport pde_residual(const FieldGrid& g, double tolerance) {
    g.validate();
    if (g.kind != FieldKind::Potential) {
        throw Error(ErrorKind::InvalidArgument, "pde_residual needs a potential grid");
    }
    if (g.t.size() < 3 || g.x.size() < 3 || detail::relative_spread(g.t) > 1e-9 ||
        detail::relative_spread(g.x) > 1e-9) {
        throw Error(ErrorKind::GridTooCoarse, "pde_residual needs a uniform grid with at least 3 nodes per axis");
    }
    const double ht = g.t[1] - g.t[0];
    const double hx = g.x[1] - g.x[0];
    double worst = 0.0;
    double scale = 0.0;
    std::size_t used = 0;
    for (std::size_t i = 1; i + 1 < g.t.size(); ++i) {
        for (std::size_t j = 1; j + 1 < g.x.size(); ++j) {
            if (!detail::same_side(g.x[j - 1], g.x[j], g.x[j + 1])) {
                continue;
            }
            const double c = g.at(i, j).v0;
            const double dxx = (g.at(i, j + 1).v0 - 2.0 * c + g.at(i, j - 1).v0) / (hx * hx);
            const double dtt = (g.at(i + 1, j).v0 - 2.0 * c + g.at(i - 1, j).v0) / (ht * ht);
            worst = std::max(worst, std::abs(dxx + dtt));
            scale = std::max(scale, std::abs(dxx) + std::abs(dtt));
            ++used;
        }
    }
    if (used == 0) {
        throw Error(ErrorKind::GridTooCoarse, "no interior quadrant node");
    }
    const double measured = scale > 0.0 ? worst / scale : worst;
    return make_report("pde-residual", {param("nodes", static_cast<double>(used))}, measured, tolerance);
}

struct ResidualOrder {
    double coarse = 0.0;
    double fine = 0.0;
    double order = 0.0;
};

/// 5-point Laplacian residual of U at fixed centers with steps h and h/2, normalized as in
/// pde_residual; order = log2(coarse / fine).
template <class U>
ResidualOrder laplacian_residual_order(const U& u, const std::vector<std::pair<double, double>>& centers, double h) {
    auto residual = [&](double step) {
        std::vector<std::pair<double, double>> r(centers.size());
        parallel_for(centers.size(), [&](std::size_t n) {
            const auto [t, x] = centers[n];
            if (!(t > step) || !(std::abs(x) > step)) {
                throw Error(ErrorKind::GridTooCoarse, "stencil crosses the boundary or the interface");
            }
            const double c = u(t, x);
            const double dxx = (u(t, x + step) - 2.0 * c + u(t, x - step)) / (step * step);
            const double dtt = (u(t + step, x) - 2.0 * c + u(t - step, x)) / (step * step);
            r[n] = {std::abs(dxx + dtt), std::abs(dxx) + std::abs(dtt)};
        });
        double worst = 0.0;
        double scale = 0.0;
        for (const auto& [a, b] : r) {
            worst = std::max(worst, a);
            scale = std::max(scale, b);
        }
        return scale > 0.0 ? worst / scale : worst;
    };
    ResidualOrder out;
    out.coarse = residual(h);
    out.fine = residual(0.5 * h);
    out.order = std::log2(out.coarse / out.fine);
    return out;
}

struct TransmissionSample {
    double t = 0.0;
    double jump = 0.0;
    double predicted = 0.0;
    double continuity = 0.0;
};

/// d_x U(t,0+) - d_x U(t,0-) against 2k d_t U(t,0): one-sided 3-point stencils at 0, delta, 2 delta;
/// U(t,0) from the axis formula.
inline std::vector<TransmissionSample> transmission_samples(const DirichletSolution& sol,
                                                            const std::vector<double>& ts, double delta) {
    std::vector<TransmissionSample> out(ts.size());
    const double k = sol.config().k();
    parallel_for(ts.size(), [&](std::size_t n) {
        const double t = ts[n];
        if (!(t > delta)) {
            throw Error(ErrorKind::GridTooCoarse, "t must exceed the stencil width");
        }
        const double u0 = sol.axis(t);
        const double right = (-3.0 * u0 + 4.0 * sol(t, delta) - sol(t, 2.0 * delta)) / (2.0 * delta);
        const double left = (3.0 * u0 - 4.0 * sol(t, -delta) + sol(t, -2.0 * delta)) / (2.0 * delta);
        const double dt = (sol.axis(t + delta) - sol.axis(t - delta)) / (2.0 * delta);
        const double cont = std::abs(sol(t, 1e-9) - sol(t, -1e-9));
        out[n] = {t, right - left, 2.0 * k * dt, cont};
    });
    return out;
}

inline VerificationReport transmission_check(const DirichletSolution& sol, const std::vector<double>& ts,
                                             double delta, double tolerance) {
    const auto samples = transmission_samples(sol, ts, delta);
    double worst = 0.0;
    double scale = 0.0;
    double cont = 0.0;
    for (const auto& s : samples) {
        worst = std::max(worst, std::abs(s.jump - s.predicted));
        scale = std::max(scale, std::abs(s.predicted));
        cont = std::max(cont, s.continuity);
    }
    if (scale == 0.0) {
        scale = 1.0;
    }
    const auto& cfg = sol.config();
    return make_report("transmission",
                       {param("k", cfg.k()), param("p", cfg.p()), param("alpha", cfg.alpha()), param("delta", delta)},
                       worst / scale, tolerance, "continuity gap " + format_number(cont));
}

/// Window and breakpoints for L_p norms over x.
struct NormWindow {
    double a = -30.0;
    double b = 30.0;
    std::vector<double> breakpoints{0.0};
    double tolerance = 1e-10;
};

/// (int |g(x)|^p dx)^{1/p} over the window; features of width w are refined around the breakpoints.
template <class G>
double lp_norm(const G& g, double p, const NormWindow& w, double width = 0.25) {
    std::vector<Breakpoint> bps;
    for (double b : w.breakpoints) {
        bps.push_back(Breakpoint{b, 0.25 * width});
    }
    PVQuadratureScheme s;
    s.adaptive_tolerance = w.tolerance;
    const double v = integrate([&](double x) { return std::pow(std::abs(g(x)), p); }, w.a, w.b, bps, s);
    return std::pow(v, 1.0 / p);
}

/// ||U_t - g||_p for each t (the solution evaluator returns the trace quantity at (t, x)).
template <class Eval, class Target>
std::vector<double> trace_norm_sequence(const Eval& eval, const Target& target, double p,
                                        const std::vector<double>& ts, const NormWindow& w = {}) {
    check_exponent(p);
    std::vector<double> out(ts.size());
    for (std::size_t n = 0; n < ts.size(); ++n) {
        const double t = ts[n];
        out[n] = lp_norm([&](double x) { return eval(t, x) - target(x); }, p, w, t);
    }
    return out;
}

enum class NTVariant { Plain, Modified };

struct NTMaxProfile {
    std::vector<double> x0_nodes;
    std::vector<double> nstar_values;
    NTVariant variant = NTVariant::Plain;
    double cone_aperture = 1.0;
    double square_side_factor = 1.0;
    double lp_norm = 0.0;
};

/// N_*(U)(x0) = sup_{|x - x0| < t} |U(t,x)| over grid nodes (plain), or the sup over the cone of
/// t^{-1} ||F||_{L_2(Q(t,x))} with Q(t,x) the square of side t centered at (t,x) (modified, RMS over
/// the nodes in Q). lp_norm is the discrete L_p norm over the x0 nodes.
inline NTMaxProfile nontangential_max(const FieldGrid& g, NTVariant variant, double p = 2.0,
                                      std::size_t min_cone_nodes = 10) {
    g.validate();
    NTMaxProfile out;
    out.variant = variant;
    out.x0_nodes = g.x;
    out.nstar_values.assign(g.x.size(), 0.0);
    auto mag = [&](std::size_t i, std::size_t j) { return magnitude(g.at(i, j)); };
    std::vector<double> node_value(g.values.size());
    for (std::size_t i = 0; i < g.t.size(); ++i) {
        for (std::size_t j = 0; j < g.x.size(); ++j) {
            if (variant == NTVariant::Plain) {
                node_value[i * g.x.size() + j] = mag(i, j);
                continue;
            }
            const double t = g.t[i];
            double sum = 0.0;
            std::size_t count = 0;
            for (std::size_t a = 0; a < g.t.size(); ++a) {
                if (std::abs(g.t[a] - t) > 0.5 * t) {
                    continue;
                }
                for (std::size_t b = 0; b < g.x.size(); ++b) {
                    if (std::abs(g.x[b] - g.x[j]) <= 0.5 * t) {
                        sum += mag(a, b) * mag(a, b);
                        ++count;
                    }
                }
            }
            node_value[i * g.x.size() + j] = count > 0 ? std::sqrt(sum / static_cast<double>(count)) : 0.0;
        }
    }
    std::size_t fewest = std::numeric_limits<std::size_t>::max();
    for (std::size_t c = 0; c < g.x.size(); ++c) {
        const double x0 = g.x[c];
        std::size_t count = 0;
        for (std::size_t i = 0; i < g.t.size(); ++i) {
            for (std::size_t j = 0; j < g.x.size(); ++j) {
                if (std::abs(g.x[j] - x0) < g.t[i]) {
                    out.nstar_values[c] = std::max(out.nstar_values[c], node_value[i * g.x.size() + j]);
                    ++count;
                }
            }
        }
        fewest = std::min(fewest, count);
    }
    if (fewest < min_cone_nodes) {
        throw Error(ErrorKind::GridTooCoarse, "some cone holds fewer than the required grid nodes");
    }
    double acc = 0.0;
    for (std::size_t c = 0; c < g.x.size(); ++c) {
        const double lo = c == 0 ? g.x[0] : 0.5 * (g.x[c - 1] + g.x[c]);
        const double hi = c + 1 == g.x.size() ? g.x[c] : 0.5 * (g.x[c] + g.x[c + 1]);
        acc += std::pow(out.nstar_values[c], p) * (hi - lo);
    }
    out.lp_norm = std::pow(acc, 1.0 / p);
    return out;
}

struct EnergyOptions {
    /// Half-width of the x window [-x_extent, x_extent] and top of the t window.
    double x_extent = 1.0;
    double t_top = 1.0;
    /// Geometric node ratio in t and in |x|.
    double ratio = std::pow(2.0, 1.0 / 9.0);
    /// Smallest nonzero |x| node, relative to the smallest epsilon.
    double x_min_factor = 1.0 / 16.0;
};

struct EnergyFit {
    std::vector<double> epsilons;
    std::vector<double> energies;
    /// Slope of log(E(eps_{i+1}) - E(eps_i)) against log eps_{i+1}: the growth exponent of the energy
    /// added as eps shrinks (positive: convergent, negative: divergent).
    double exponent = 0.0;
};

namespace detail {

// First derivative at node i of samples v on nodes z (nonuniform 3-point formulas).
inline double nonuniform_derivative(const std::vector<double>& z, const std::vector<double>& v, std::size_t i) {
    const std::size_t n = z.size();
    if (i == 0) {
        const double h1 = z[1] - z[0];
        const double h2 = z[2] - z[1];
        return (-(2.0 * h1 + h2) / (h1 * (h1 + h2))) * v[0] + ((h1 + h2) / (h1 * h2)) * v[1] -
               (h1 / (h2 * (h1 + h2))) * v[2];
    }
    if (i + 1 == n) {
        const double h1 = z[n - 2] - z[n - 3];
        const double h2 = z[n - 1] - z[n - 2];
        return (h2 / (h1 * (h1 + h2))) * v[n - 3] - ((h1 + h2) / (h1 * h2)) * v[n - 2] +
               ((2.0 * h2 + h1) / (h2 * (h1 + h2))) * v[n - 1];
    }
    const double h1 = z[i] - z[i - 1];
    const double h2 = z[i + 1] - z[i];
    return -(h2 / (h1 * (h1 + h2))) * v[i - 1] + ((h2 - h1) / (h1 * h2)) * v[i] + (h1 / (h2 * (h1 + h2))) * v[i + 1];
}

inline std::vector<double> geometric_nodes(double lo, double hi, double ratio, const std::vector<double>& extra) {
    std::vector<double> z;
    for (double v = lo; v < hi * (1.0 - 1e-12); v *= ratio) {
        z.push_back(v);
    }
    z.push_back(hi);
    z.insert(z.end(), extra.begin(), extra.end());
    std::sort(z.begin(), z.end());
    std::vector<double> out;
    for (double v : z) {
        if (out.empty() || v > out.back() * (1.0 + 1e-9)) {
            out.push_back(v);
        } else if (std::find(extra.begin(), extra.end(), v) != extra.end()) {
            out.back() = v;
        }
    }
    return out;
}

// Trapezoid weights on nodes z.
inline std::vector<double> trapezoid_weights(const std::vector<double>& z) {
    std::vector<double> w(z.size(), 0.0);
    for (std::size_t i = 0; i + 1 < z.size(); ++i) {
        const double h = z[i + 1] - z[i];
        w[i] += 0.5 * h;
        w[i + 1] += 0.5 * h;
    }
    return w;
}

}  // namespace detail

/// E(eps) = int_eps^{t_top} int_{-x_extent}^{x_extent} |grad U|^2 dx dt with finite-difference gradients
/// on a grid graded toward the origin; U must accept x = 0. Each quadrant is differenced on its own
/// side of the interface (x = 0 enters both as an end node).
template <class U>
EnergyFit energy_scaling(const U& u, std::vector<double> eps, const EnergyOptions& o = {}) {
    if (eps.size() < 3) {
        throw Error(ErrorKind::InvalidArgument, "energy fit needs at least three epsilons");
    }
    std::sort(eps.begin(), eps.end(), std::greater<>());
    if (!(eps.back() > 0.0) || !(eps.front() < o.t_top)) {
        throw Error(ErrorKind::InvalidArgument, "epsilons must lie in (0, t_top)");
    }
    const auto ts = detail::geometric_nodes(eps.back(), o.t_top, o.ratio, eps);
    std::vector<double> xs{0.0};
    for (double v : detail::geometric_nodes(o.x_min_factor * eps.back(), o.x_extent, o.ratio, {})) {
        xs.push_back(v);
    }
    const std::size_t nt = ts.size();
    const std::size_t nx = xs.size();
    // Values on both quadrants; side 0 holds x >= 0, side 1 holds x <= 0 (mirrored).
    std::vector<double> val(2 * nt * nx);
    parallel_for(val.size(), [&](std::size_t n) {
        const std::size_t side = n / (nt * nx);
        const std::size_t i = (n / nx) % nt;
        const std::size_t j = n % nx;
        const double x = side == 0 ? xs[j] : -xs[j];
        if (side == 1 && j == 0) {
            val[n] = std::numeric_limits<double>::quiet_NaN();
            return;
        }
        val[n] = u(ts[i], x);
        if (!std::isfinite(val[n])) {
            throw Error(ErrorKind::QuadratureFailure, "non-finite potential in energy grid");
        }
    });
    for (std::size_t i = 0; i < nt; ++i) {
        val[nt * nx + i * nx] = val[i * nx];
    }
    const auto wx = detail::trapezoid_weights(xs);
    // Row integrals of |grad U|^2 over x, per t node.
    std::vector<double> row(nt, 0.0);
    for (std::size_t side = 0; side < 2; ++side) {
        const double* base = val.data() + side * nt * nx;
        std::vector<double> col(nt);
        std::vector<double> line(nx);
        for (std::size_t i = 0; i < nt; ++i) {
            for (std::size_t j = 0; j < nx; ++j) {
                line[j] = base[i * nx + j];
            }
            for (std::size_t j = 0; j < nx; ++j) {
                for (std::size_t a = 0; a < nt; ++a) {
                    col[a] = base[a * nx + j];
                }
                const double dx = detail::nonuniform_derivative(xs, line, j);
                const double dt = detail::nonuniform_derivative(ts, col, i);
                row[i] += wx[j] * (dx * dx + dt * dt);
            }
        }
    }
    EnergyFit fit;
    fit.epsilons = eps;
    for (double e : eps) {
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < nt; ++i) {
            if (ts[i] < e * (1.0 - 1e-12)) {
                continue;
            }
            acc += 0.5 * (ts[i + 1] - ts[i]) * (row[i] + row[i + 1]);
        }
        fit.energies.push_back(acc);
    }
    std::vector<double> lx;
    std::vector<double> ly;
    for (std::size_t n = 1; n < eps.size(); ++n) {
        const double growth = fit.energies[n] - fit.energies[n - 1];
        if (growth > 0.0) {
            lx.push_back(eps[n]);
            ly.push_back(growth);
        }
    }
    fit.exponent = lx.size() >= 2 ? loglog_slope(lx, ly) : std::numeric_limits<double>::infinity();
    return fit;
}

/// int_0^inf h(u) du for an integrand oscillating with the given period: one quadrature per half
/// period, partial sums accelerated by iterated averaging of the last `window` partial sums.
template <class H>
quad_value_t<H> oscillatory_integral(const H& h, double period, double tolerance = 1e-12, int max_periods = 2000,
                                     std::size_t window = 12) {
    using R = quad_value_t<H>;
    if (!(period > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "period must be positive");
    }
    PVQuadratureScheme s;
    s.adaptive_tolerance = 1e-13;
    std::vector<R> sums;
    R partial{};
    R last{};
    bool have_last = false;
    for (int n = 0; n < max_periods; ++n) {
        partial += integrate(h, 0.5 * period * n, 0.5 * period * (n + 1), {}, s);
        sums.push_back(partial);
        if (sums.size() < window) {
            continue;
        }
        std::vector<R> avg(sums.end() - static_cast<std::ptrdiff_t>(window), sums.end());
        for (std::size_t m = avg.size(); m > 1; --m) {
            for (std::size_t i = 0; i + 1 < m; ++i) {
                avg[i] = 0.5 * (avg[i] + avg[i + 1]);
            }
        }
        const R acc = avg[0];
        if (have_last && magnitude(acc - last) <= tolerance * std::max(magnitude(acc), 1e-300)) {
            return acc;
        }
        last = acc;
        have_last = true;
    }
    throw Error(ErrorKind::OscillatoryNonConvergence, "oscillatory integral did not settle");
}

/// sgn(T_k) f(x) = (2/pi) int_0^inf Q_s f(x) ds/s, computed in log s over [s_min, s_max].
template <class T>
Vec2<T> dunford_sign(const BasicBoundaryVectorField<T>& f, double x, const ProblemConfig& cfg, double s_min = 1e-7,
                     double s_max = 1e9) {
    PVQuadratureScheme s;
    s.adaptive_tolerance = 1e-11;
    auto g = [&](double lu) { return apply_Qt(std::exp(lu), f, x, cfg) * (2.0 / std::numbers::pi); };
    const double feature = std::log(f.feature_scale());
    const double near = std::log(std::max(std::abs(x), 1e-3 * f.feature_scale()));
    return integrate(g, std::log(s_min), std::log(s_max), {Breakpoint{feature, 0.5}, Breakpoint{near, 0.5}}, s);
}

/// e^{-t|T_k|} chi_+(T_k) f(x) = (1/pi) int_0^inf (Q_s cos(t/s) + P_s sin(t/s)) ds/s, evaluated in
/// u = 1/s period by period.
template <class T>
Vec2<T> dunford_cauchy(const BasicBoundaryVectorField<T>& f, double t, double x, const ProblemConfig& cfg,
                       double tolerance = 1e-6) {
    if (!(t > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "t must be positive");
    }
    auto h = [&](double u) {
        if (u == 0.0) {
            return Vec2<T>{};
        }
        const double sv = 1.0 / u;
        return (apply_Qt(sv, f, x, cfg) * std::cos(t * u) + apply_Pt(sv, f, x, cfg) * std::sin(t * u)) *
               (1.0 / (std::numbers::pi * u));
    };
    return oscillatory_integral(h, 2.0 * std::numbers::pi / t, tolerance);
}

/// int_0^inf s^{-2} e^{-x/s} e^{it/s} ds by the oscillatory scheme (u = 1/s).
inline std::complex<double> dunford_scalar(double x, double t) {
    auto h = [&](double u) { return std::exp(std::complex<double>(-x * u, t * u)); };
    return oscillatory_integral(h, 2.0 * std::numbers::pi / t, 1e-14);
}

}  // namespace halfplane
