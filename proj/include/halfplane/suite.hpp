#pragma once

#include "halfplane/verify.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <sstream>

namespace halfplane {

namespace checks {

namespace detail {

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

inline std::vector<double> geomspace(double a, double b, std::size_t n) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = a * std::pow(b / a, static_cast<double>(i) / static_cast<double>(n - 1));
    }
    return out;
}

inline std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return out;
}

inline BoundarySample gaussian_derivative(double c, double w) {
    return BoundarySample(
        [c, w](double y) {
            const double s = (y - c) / w;
            return -2.0 * s / w * std::exp(-s * s);
        },
        SupportHint::exponential(c - 27.0 * w, c + 27.0 * w), {}, w, "gaussian'");
}

// Half-line function as data on the line (zero for y <= 0).
inline BoundarySample half_line_data(const LogLineFunction& v, double origin_power, double decay_rate) {
    return BoundarySample([v](double y) { return y > 0.0 ? v(y) : 0.0; }, SupportHint::algebraic(decay_rate), {},
                          1.0, "half-line")
        .with_origin_power(origin_power);
}

// Dawson's integral D(x) = int_0^x e^{s^2 - x^2} ds.
inline double dawson(double x) {
    PVQuadratureScheme s;
    s.adaptive_tolerance = 1e-15;
    return integrate([x](double v) { return std::exp((v - x) * (v + x)); }, 0.0, x, {}, s);
}

}  // namespace detail

/// k = 0 Dirichlet solution of u = 1/(pi (1 + y^2)) against (1 + t)/(pi ((1 + t)^2 + x^2)) on 200 nodes.
inline VerificationReport classical_limit() {
    return timed([] {
        const auto cfg = derive_config(0.0, 2.0, Branch::H1);
        const GridSpec grid{0.05, 2.0, 10, -5.0, 5.0, 20};
        const auto field = solve_dirichlet(presets::rational(), cfg, grid);
        double worst = 0.0;
        for (std::size_t i = 0; i < field.t.size(); ++i) {
            for (std::size_t j = 0; j < field.x.size(); ++j) {
                const double t = field.t[i];
                const double x = field.x[j];
                const double exact = (1.0 + t) / (std::numbers::pi * ((1.0 + t) * (1.0 + t) + x * x));
                worst = std::max(worst, detail::rel(field.at(i, j).v0, exact));
            }
        }
        return make_report("classical-limit", {param("k", 0.0), param("nodes", 200.0)}, worst, 1e-8);
    });
}

/// P_a(t, 0; y) against cos(pi a/2)/pi t^{1+a} |y|^{-a}/(t^2 + y^2) on 100 (t, y) pairs per alpha.
inline VerificationReport axis_formula(const std::vector<double>& alphas = {-1.5, -0.75, 0.4}) {
    return timed([&] {
        double worst = 0.0;
        const auto ts = detail::geomspace(1e-2, 1e2, 10);
        const auto ys = detail::geomspace(1e-2, 1e2, 10);
        for (double a : alphas) {
            for (std::size_t n = 0; n < ts.size(); ++n) {
                for (std::size_t m = 0; m < ys.size(); ++m) {
                    const double t = ts[n];
                    const double y = (n + m) % 2 == 0 ? ys[m] : -ys[m];
                    const double oracle = std::cos(std::numbers::pi * a / 2.0) / std::numbers::pi *
                                          std::pow(t, 1.0 + a) * std::pow(std::abs(y), -a) / (t * t + y * y);
                    worst = std::max(worst, detail::rel(poisson_kernel(a, t, 0.0, y), oracle));
                }
            }
        }
        return make_report("axis-formula", {param("alphas", static_cast<double>(alphas.size())), param("pairs", 100.0)},
                           worst, 1e-12);
    });
}

/// Relative discrete L_2 error of (I - k K_0) applied to (I - k K_0)^{-1} f on (0, inf), for the three
/// test functions gaussian(1.5, 0.5), gaussian(0, 1) and 1/(pi (1 + y^2)); K_0 is applied by direct
/// quadrature.
inline double inverse_identity_error(double k, double p, const LogLineOptions& o) {
    const auto cfg = derive_config(k, p, Branch::H1);
    const std::array<BoundarySample, 3> fs{presets::gaussian(1.5, 0.5), presets::gaussian(0.0, 1.0),
                                           presets::rational()};
    const auto xs = detail::geomspace(0.05, 8.0, 96);
    const auto w = halfplane::detail::trapezoid_weights(xs);
    double worst = 0.0;
    for (const auto& f : fs) {
        const auto inv = invert_half_line(Sign::Minus, k, f, cfg, o);
        const auto v = detail::half_line_data(inv.value, std::min(f.origin_power(), inv.alpha), 2.0 - inv.alpha);
        std::vector<double> r(xs.size());
        parallel_for(xs.size(), [&](std::size_t i) { r[i] = v(xs[i]) - k * apply_K(v, xs[i]) - f(xs[i]); });
        double num = 0.0;
        double den = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            num += w[i] * r[i] * r[i];
            den += w[i] * f(xs[i]) * f(xs[i]);
        }
        worst = std::max(worst, std::sqrt(num / den));
    }
    return worst;
}

inline VerificationReport inverse_identity(double k, double p, const LogLineOptions& o = {}) {
    return timed([&] {
        return make_report("inverse-identity", {param("k", k), param("p", p), param("h", o.h)},
                           inverse_identity_error(k, p, o), 1e-4);
    });
}

/// Errors at n and 2n log-grid points: passes when the coarse error is below 1e-4 and doubling the
/// resolution at least halves it.
inline VerificationReport inverse_convergence(double k, double p, std::size_t n = 4096) {
    return timed([&] {
        LogLineOptions coarse;
        coarse.n = n;
        LogLineOptions fine;
        fine.n = 2 * n;
        const double e1 = inverse_identity_error(k, p, coarse);
        const double e2 = inverse_identity_error(k, p, fine);
        const double measured = std::max(e1 / 1e-4, 2.0 * e2 / e1);
        return make_report("inverse-convergence", {param("k", k), param("p", p), param("n", static_cast<double>(n))},
                           measured, 1.0,
                           "error " + format_number(e1) + " at n, " + format_number(e2) + " at 2n");
    });
}

/// (1 - k m_{1/p}(xi)) (1 + k m_{alpha + 1/p}(xi)) = 1 + k^2 on [-10, 10], tan(pi alpha/2) = k,
/// alpha in (-1/p, 2 - 1/p).
inline VerificationReport multiplier_identity(double k, double p) {
    return timed([&] {
        const double alpha = range_alpha(k, p);
        const auto m0 = multiplier_of_Ktilde(1.0 / p);
        const auto ma = multiplier_of_Ktilde(alpha + 1.0 / p);
        double worst = 0.0;
        for (double xi : detail::linspace(-10.0, 10.0, 2001)) {
            const auto v = (1.0 - k * m0(xi)) * (1.0 + k * ma(xi));
            worst = std::max(worst, std::abs(v - (1.0 + k * k)));
        }
        return make_report("multiplier-identity", {param("k", k), param("p", p), param("alpha", alpha)}, worst, 1e-12);
    });
}

/// Direct p.v. quadrature of p.v. int_0^inf (gamma t + beta (y - x))/(t^2 + (y - x)^2) y^{1+a}/(y^2 - z^2) dy.
inline double residue_integral_direct(double a, double beta, double gamma, double t, double x, double z) {
    auto f = [&](double y) {
        return (gamma * t + beta * (y - x)) / (t * t + (y - x) * (y - x)) * std::pow(y, 1.0 + a) / ((y - z) * (y + z));
    };
    PVQuadratureScheme s;
    s.tail_exponent_hint = 2.0 - a;
    return integrate(f, 0.0, std::numeric_limits<double>::infinity(),
                     {Breakpoint{z, 0.25 * z, 0.0, true}, Breakpoint{0.0, 0.25 * z, std::min(0.0, 1.0 + a)},
                      Breakpoint{x, 0.25 * t}},
                     s);
}

/// residue_I against direct quadrature on a 3 x 3 x 3 sweep of (alpha, (t, x), z).
inline VerificationReport residue_lemma() {
    return timed([] {
        double worst = 0.0;
        const std::array<double, 3> alphas{-1.4, -0.5, 0.6};
        const std::array<std::pair<double, double>, 3> points{std::pair{1.0, 1.0}, std::pair{0.5, -1.0},
                                                              std::pair{2.0, 0.3}};
        const std::array<double, 3> zs{0.5, 1.0, 2.0};
        for (double a : alphas) {
            for (auto [t, x] : points) {
                for (double z : zs) {
                    const double closed = residue_I(a, 0.7, 0.4, t, x, z);
                    const double direct = residue_integral_direct(a, 0.7, 0.4, t, x, z);
                    worst = std::max(worst, std::abs(closed - direct) / std::max(std::abs(direct), 1e-12));
                }
            }
        }
        return make_report("residue-lemma", {param("beta", 0.7), param("gamma", 0.4), param("cases", 27.0)}, worst,
                           1e-6);
    });
}

/// Both sides of the quadrant s-integral identity on 9 tuples.
inline VerificationReport quadrant_identity() {
    return timed([] {
        double worst = 0.0;
        const std::array<std::array<double, 4>, 9> cases{{{0.5, 1.0, 1.0, 2.0},
                                                          {-1.2, 0.5, 1.0, 1.0},
                                                          {0.0, 1.0, 0.5, 0.7},
                                                          {0.9, 0.3, 2.0, 0.5},
                                                          {-0.7, 2.0, 0.4, 3.0},
                                                          {-1.8, 1.0, 1.0, 0.2},
                                                          {0.4, 1.0, 1.0, 1.0},
                                                          {-1.5, 0.7, 2.5, 1.5},
                                                          {0.75, 4.0, 0.5, 0.3}}};
        for (const auto& c : cases) {
            const auto [lhs, rhs] = quadrant_integral_identity(c[0], c[1], c[2], c[3]);
            worst = std::max(worst, detail::rel(lhs, rhs));
        }
        return make_report("quadrant-identity", {param("cases", 9.0)}, worst, 1e-6);
    });
}

/// Order of the 5-point Laplacian residual of the Dirichlet solution (bump data) under h -> h/2;
/// measured |order - 2|.
inline VerificationReport pde_order(double k, double p, Branch branch) {
    return timed([&] {
        const auto cfg = derive_config(k, p, branch);
        const DirichletSolution sol(presets::bump(0.8, 1.2), cfg);
        const auto r = laplacian_residual_order(sol, {{0.8, 1.0}, {1.2, -0.7}, {0.5, 2.5}, {0.6, -1.8}}, 0.1);
        return make_report("pde-residual-order",
                           {param("k", k), param("p", p), param("branch", std::string(to_string(branch))),
                            param("alpha", cfg.alpha())},
                           std::abs(r.order - 2.0), 0.3,
                           "residual " + format_number(r.coarse) + " -> " + format_number(r.fine));
    });
}

/// Grid residual of a tabulated Dirichlet solution.
inline VerificationReport pde_grid(double k, double p, Branch branch) {
    return timed([&] {
        const auto cfg = derive_config(k, p, branch);
        const auto field = solve_dirichlet(presets::bump(0.8, 1.2), cfg, GridSpec{0.4, 2.0, 65, -3.0, 3.0, 120});
        auto r = pde_residual(field, 1e-2);
        r.parameters = {param("k", k), param("p", p), param("branch", std::string(to_string(branch)))};
        return r;
    });
}

inline VerificationReport transmission(double k, double p, Branch branch) {
    return timed([&] {
        const auto cfg = derive_config(k, p, branch);
        const DirichletSolution sol(presets::bump(0.8, 1.2), cfg);
        auto r = transmission_check(sol, {0.3, 0.6, 1.0}, 1e-3, 1e-3);
        r.parameters.push_back(param("branch", std::string(to_string(branch))));
        return r;
    });
}

/// min P_a(t, x; y) over 200 (t, x) points times 200 y values for each alpha; measured max(0, -min).
inline VerificationReport kernel_positivity(const std::vector<double>& alphas = {-0.9, -0.5, 0.0, 0.5, 0.9}) {
    return timed([&] {
        double lowest = std::numeric_limits<double>::infinity();
        for (double a : alphas) {
            for (double t : detail::geomspace(1e-2, 1e2, 10)) {
                for (double x : detail::linspace(-10.0, 10.0, 20)) {
                    for (double y : detail::linspace(-20.0, 20.0, 200)) {
                        lowest = std::min(lowest, poisson_kernel(a, t, x, y));
                    }
                }
            }
        }
        return make_report("kernel-positivity", {param("alphas", static_cast<double>(alphas.size()))},
                           std::max(0.0, -lowest), 1e-12, "min sample " + format_number(lowest));
    });
}

/// Searches for a negative kernel value at alpha = -1.3.
inline VerificationReport kernel_negative_witness(double alpha = -1.3) {
    return timed([&] {
        double lowest = std::numeric_limits<double>::infinity();
        std::string where;
        for (double t : detail::geomspace(1e-2, 1e1, 7)) {
            for (double x : detail::linspace(-3.0, 3.0, 13)) {
                for (double y : detail::linspace(-4.0, 4.0, 40)) {
                    const double v = poisson_kernel(alpha, t, x, y);
                    if (v < lowest) {
                        lowest = v;
                        where = "(t,x,y) = (" + format_number(t) + ", " + format_number(x) + ", " + format_number(y) + ")";
                    }
                }
            }
        }
        return make_report("kernel-negative-witness", {param("alpha", alpha)}, lowest < 0.0 ? 0.0 : 1.0, 0.0,
                           "min " + format_number(lowest) + " at " + where);
    });
}

/// U(t, 0) for nonnegative bump data at alpha = -1.3: negative, with log-log slope 1 + alpha on
/// [1e-3, 1e-1]; measured |slope - (1 + alpha)|.
inline VerificationReport axis_blowup(double alpha = -1.3) {
    return timed([&] {
        const double k = std::tan(std::numbers::pi * alpha / 2.0);
        const auto cfg = derive_config(k, 2.0, Branch::LpInf);
        const DirichletSolution sol(presets::bump(2.0, 1.0), cfg);
        const auto ts = detail::geomspace(1e-3, 1e-1, 9);
        std::vector<double> us(ts.size());
        parallel_for(ts.size(), [&](std::size_t i) { us[i] = sol.axis(ts[i]); });
        const bool negative = std::all_of(us.begin(), us.end(), [](double v) { return v < 0.0; });
        const double slope = loglog_slope(ts, us);
        return make_report("axis-blowup", {param("alpha", cfg.alpha()), param("k", k)},
                           negative ? std::abs(slope - (1.0 + cfg.alpha())) : std::numeric_limits<double>::infinity(),
                           0.05, "slope " + format_number(slope) + ", U(1e-3, 0) = " + format_number(us.front()));
    });
}

inline const std::vector<double>& energy_epsilons() {
    static const std::vector<double> eps{0.1, 0.05, 0.025, 0.0125};
    return eps;
}

/// Energy over [eps, 1] x [-1, 1] for bump data; alpha in (-1, 1) must stay bounded (exponent >= -0.05).
inline VerificationReport energy_finite(double alpha = 0.4) {
    return timed([&] {
        const double k = std::tan(std::numbers::pi * alpha / 2.0);
        const auto cfg = derive_config(k, 2.0, Branch::H1);
        const DirichletSolution sol(presets::bump(2.0, 1.0), cfg);
        const auto fit = energy_scaling(sol, energy_epsilons());
        return make_report("energy-finite", {param("alpha", alpha), param("k", k)}, std::max(0.0, -fit.exponent),
                           0.05,
                           "exponent " + format_number(fit.exponent) + ", E(eps_min) = " +
                               format_number(fit.energies.back()));
    });
}

/// Energy growth like eps^{2 alpha + 2} for alpha < -1; measured |exponent - (2 alpha + 2)|.
inline VerificationReport energy_divergent(double alpha = -1.3) {
    return timed([&] {
        const double k = std::tan(std::numbers::pi * alpha / 2.0);
        const auto cfg = derive_config(k, 2.0, Branch::LpInf);
        const DirichletSolution sol(presets::bump(2.0, 1.0), cfg);
        const auto fit = energy_scaling(sol, energy_epsilons());
        return make_report("energy-divergent", {param("alpha", cfg.alpha()), param("k", k)},
                           std::abs(fit.exponent - (2.0 * cfg.alpha() + 2.0)), 0.1,
                           "exponent " + format_number(fit.exponent) + ", E(eps_min) = " +
                               format_number(fit.energies.back()));
    });
}

inline const std::vector<double>& trace_ts() {
    static const std::vector<double> ts{1e-1, 3e-2, 1e-2, 3e-3, 1e-3};
    return ts;
}

/// ||U_t - u||_p / ||u||_p for the Dirichlet solution of a bump: monotone in t and below 1e-2 at t = 1e-3.
inline VerificationReport trace_dirichlet(double k = 0.5, double p = 2.0, Branch branch = Branch::LpInf) {
    return timed([&] {
        const auto cfg = problem_config(Problem::Dirichlet, k, p, branch);
        const auto u = presets::bump(0.8, 1.2);
        const DirichletSolution sol(u, cfg);
        NormWindow w{-40.0, 40.0, {-0.4, 0.0, 2.0}, 1e-10};
        const double norm = lp_norm(u, p, w);
        const auto seq = trace_norm_sequence(sol, u, p, trace_ts(), w);
        bool monotone = true;
        for (std::size_t i = 1; i < seq.size(); ++i) {
            monotone = monotone && seq[i] < seq[i - 1];
        }
        std::ostringstream note;
        note << "norms";
        for (double v : seq) {
            note << ' ' << format_number(v / norm);
        }
        return make_report("trace-dirichlet", {param("k", k), param("p", p), param("alpha", cfg.alpha())},
                           monotone ? seq.back() / norm : std::numeric_limits<double>::infinity(), 1e-2, note.str());
    });
}

/// ||(F_0 + k sgn(x) F_1)(t) - phi||_p / ||phi||_p for the Neumann solution of a Gaussian.
inline std::vector<double> neumann_trace_gaps(double k, double p, Branch branch, const std::vector<double>& ts) {
    const auto cfg = problem_config(Problem::Neumann, k, p, branch);
    const auto phi = presets::gaussian(0.7, 0.6);
    const auto sol = neumann_solution(phi, cfg);
    NormWindow w{-12.0, 12.0, {0.0, 0.7}, 1e-10};
    auto eval = [&](double t, double x) {
        const auto f = sol(t, x);
        return f.v0 + k * halfplane::detail::sgn(x) * f.v1;
    };
    auto gaps = trace_norm_sequence(eval, phi, p, ts, w);
    const double norm = lp_norm(phi, p, w);
    for (auto& g : gaps) {
        g /= norm;
    }
    return gaps;
}

/// Neumann trace gap at t = 1e-3. With k = -0.5 the density is bounded at the origin, mirroring the
/// regularity check at k = 0.5.
inline VerificationReport trace_neumann(double k = -0.5, double p = 2.0, Branch branch = Branch::LpInf) {
    return timed([&] {
        const double gap = neumann_trace_gaps(k, p, branch, {1e-3})[0];
        return make_report("trace-neumann", {param("k", k), param("p", p), param("t", 1e-3)}, gap, 1e-2);
    });
}

/// For k > 0 the Neumann density behaves like x^a near the origin, a in (-1/p, 0) with
/// tan(pi a/2) = -k, and the trace gap decays like t^{1/p + a}; measured |rate - (1/p + a)|.
inline VerificationReport trace_neumann_rate(double k = 0.5, double p = 2.0) {
    return timed([&] {
        const auto gaps = neumann_trace_gaps(k, p, Branch::LpInf, {1e-2, 1e-3});
        const double rate = std::log10(gaps[0] / gaps[1]);
        const double predicted = 1.0 / p + range_alpha(-k, p);
        return make_report("trace-neumann-rate", {param("k", k), param("p", p)}, std::abs(rate - predicted), 0.03,
                           "rate " + format_number(rate) + ", predicted " + format_number(predicted) +
                               ", gap at 1e-3 " + format_number(gaps[1]));
    });
}

/// ||F_1(t) - u'||_p / ||u'||_p at t = 1e-3 for the regularity solution.
inline VerificationReport trace_regularity(double k = 0.5, double p = 2.0, Branch branch = Branch::LpInf) {
    return timed([&] {
        const auto cfg = problem_config(Problem::Regularity, k, p, branch);
        const auto du = detail::gaussian_derivative(0.7, 0.6);
        const auto sol = regularity_solution(du, cfg);
        NormWindow w{-12.0, 12.0, {0.0, 0.7}, 1e-10};
        auto eval = [&](double t, double x) { return sol(t, x).v1; };
        const double gap = trace_norm_sequence(eval, du, p, {1e-3}, w)[0];
        return make_report("trace-regularity", {param("k", k), param("p", p), param("t", 1e-3)},
                           gap / lp_norm(du, p, w), 1e-2);
    });
}

/// Threshold of a problem at exponent p.
inline double threshold_k(Problem problem, double p) {
    switch (problem) {
    case Problem::Neumann: return std::tan(std::numbers::pi / (2.0 * p));
    case Problem::Regularity: return -std::tan(std::numbers::pi / (2.0 * p));
    case Problem::Dirichlet: return std::tan(std::numbers::pi / (2.0 * conjugate_exponent(p)));
    }
    return 0.0;
}

/// Builds and evaluates the solution of a problem at one interior point.
inline double solve_probe(Problem problem, double k, double p, Branch branch) {
    const auto cfg = problem_config(problem, k, p, branch);
    switch (problem) {
    case Problem::Dirichlet: return DirichletSolution(presets::bump(0.8, 1.2), cfg)(0.5, 0.7);
    case Problem::Neumann: return magnitude(neumann_solution(presets::gaussian(0.7, 0.6), cfg)(0.5, 0.7));
    case Problem::Regularity:
        return magnitude(regularity_solution(detail::gaussian_derivative(0.7, 0.6), cfg)(0.5, 0.7));
    }
    return 0.0;
}

/// NotInvertible exactly at the threshold (expected failure).
inline VerificationReport threshold_refusal(Problem problem, double p) {
    const double k = threshold_k(problem, p);
    return expect_error("threshold-" + std::string(to_string(problem)), {param("k", k), param("p", p)},
                        ErrorKind::NotInvertible, [&] { (void)solve_probe(problem, k, p, Branch::LpInf); });
}

/// The solver succeeds at threshold +- 0.05 with a finite value.
inline VerificationReport threshold_neighbors(Problem problem, double p) {
    return timed([&] {
        const double k = threshold_k(problem, p);
        double bad = 0.0;
        std::string note;
        for (double dk : {-0.05, 0.05}) {
            try {
                if (!std::isfinite(solve_probe(problem, k + dk, p, Branch::LpInf))) {
                    bad += 1.0;
                    note += "non-finite at k " + format_number(k + dk) + "; ";
                }
            } catch (const Error& e) {
                bad += 1.0;
                note += e.what();
                note += "; ";
            }
        }
        return make_report("threshold-neighbors-" + std::string(to_string(problem)), {param("k", k), param("p", p)},
                           bad, 0.0, note);
    });
}

/// (2/pi) int Q_s ds/s against the closed-form sgn(T_k) on a Gaussian field.
inline VerificationReport dunford_sign_check(double k = 0.5) {
    return timed([&] {
        const auto cfg = derive_config(k, 2.0, Branch::H1);
        const BoundaryVectorField f{presets::gaussian(1.0, 0.7), presets::gaussian(-0.5, 0.8)};
        double worst = 0.0;
        for (double x : {-1.2, 0.4, 1.5}) {
            const auto direct = apply_Ek(f, x, cfg);
            worst = std::max(worst, magnitude(dunford_sign(f, x, cfg) - direct) / magnitude(direct));
        }
        return make_report("dunford-sign", {param("k", k)}, worst, 1e-3);
    });
}

/// k = 0: (2/pi) int Q_s f ds/s for f = (e^{-y^2}, 0) against (0, (2/sqrt(pi)) D(x)), D Dawson's integral.
inline VerificationReport dunford_hilbert() {
    return timed([] {
        const auto cfg = derive_config(0.0, 2.0, Branch::H1);
        const BoundaryVectorField f{presets::gaussian(0.0, 1.0), BoundarySample::zero()};
        double worst = 0.0;
        for (double x : {-2.0, -0.5, 0.3, 1.0, 3.0}) {
            const auto via = dunford_sign(f, x, cfg);
            const double oracle = 2.0 / std::sqrt(std::numbers::pi) * detail::dawson(x);
            worst = std::max(worst, std::hypot(via.v0, via.v1 - oracle) / std::abs(oracle));
        }
        return make_report("dunford-hilbert", {param("k", 0.0)}, worst, 1e-3);
    });
}

inline VerificationReport dunford_scalar_check() {
    return timed([] {
        double worst = 0.0;
        for (auto [x, t] : {std::pair{1.0, 1.0}, std::pair{0.3, 2.0}, std::pair{2.0, 0.5}}) {
            const std::complex<double> oracle(x / (x * x + t * t), t / (x * x + t * t));
            worst = std::max(worst, std::abs(dunford_scalar(x, t) - oracle) / std::abs(oracle));
        }
        return make_report("dunford-scalar", {param("cases", 3.0)}, worst, 1e-10);
    });
}

/// (1/pi) int (Q_s cos(t/s) + P_s sin(t/s)) ds/s against the Cauchy extension.
inline VerificationReport dunford_cauchy_check(double k = 0.5) {
    return timed([&] {
        const auto cfg = derive_config(k, 2.0, Branch::H1);
        const BoundaryVectorField f{presets::gaussian(1.0, 0.7), presets::gaussian(-0.5, 0.8)};
        const auto c = cauchy_extension(0.7, f, 0.9, cfg);
        const auto d = dunford_cauchy(f, 0.7, 0.9, cfg);
        return make_report("dunford-cauchy", {param("k", k), param("t", 0.7), param("x", 0.9)},
                           magnitude(c - d) / magnitude(c), 1e-3);
    });
}

/// The four-curve harmonic measure family at (t, x) = (0.5, 1): alpha = 0 is the classical kernel,
/// curves with alpha in (-1, 1) are nonnegative, alpha = -1.5 changes sign, the axis table obeys the
/// axis formula. Measured: number of violated properties.
inline VerificationReport kernel_table_properties(const std::vector<double>& alphas = {-1.5, -0.75, 0.0, 0.75}) {
    return timed([&] {
        const double t = 0.5;
        const double x = 1.0;
        const auto ys = detail::linspace(-4.0, 4.0, 161);
        const auto rows = harmonic_measure_table(alphas, t, x, ys);
        double violations = rows.size() == alphas.size() * 160 ? 0.0 : 1.0;
        bool negative = false;
        for (const auto& r : rows) {
            if (r.alpha == 0.0) {
                const double classical = t / (std::numbers::pi * (t * t + (x - r.y) * (x - r.y)));
                violations += detail::rel(r.value, classical) > 1e-12 ? 1.0 : 0.0;
            }
            if (r.alpha > -1.0 && r.alpha < 1.0 && r.value < -1e-12) {
                violations += 1.0;
            }
            negative = negative || (r.alpha < -1.0 && r.value < 0.0);
        }
        violations += negative ? 0.0 : 1.0;
        for (const auto& r : harmonic_measure_table(alphas, t, 0.0, {-2.0, 0.5, 3.0})) {
            const double oracle = std::cos(std::numbers::pi * r.alpha / 2.0) / std::numbers::pi *
                                  std::pow(t, 1.0 + r.alpha) * std::pow(std::abs(r.y), -r.alpha) / (t * t + r.y * r.y);
            violations += detail::rel(r.value, oracle) > 1e-12 ? 1.0 : 0.0;
        }
        return make_report("kernel-table", {param("t", t), param("x", x)}, violations, 0.0);
    });
}

/// P_a(t, -x; -y) = P_a(t, x; y) and P_a(lt, lx; ly) = P_a(t, x; y)/l.
inline VerificationReport kernel_symmetries() {
    return timed([] {
        double worst = 0.0;
        for (double a : {-1.7, -1.3, -0.5, 0.2, 0.8}) {
            for (auto [t, x, y] : {std::tuple{0.7, 1.1, -0.4}, std::tuple{2.0, -0.3, 1.5}, std::tuple{0.1, 0.5, 0.6}}) {
                const double base = poisson_kernel(a, t, x, y);
                worst = std::max(worst, detail::rel(poisson_kernel(a, t, -x, -y), base));
                for (double l : {0.5, 3.0}) {
                    worst = std::max(worst, detail::rel(l * poisson_kernel(a, l * t, l * x, l * y), base));
                }
            }
        }
        return make_report("kernel-symmetries", {param("cases", 15.0)}, worst, 1e-12);
    });
}

/// int P_a(t, x; y) dy = 1 for alpha in (-1, 1).
inline VerificationReport kernel_normalization() {
    return timed([] {
        double worst = 0.0;
        for (double a : {-0.9, -0.5, 0.0, 0.5, 0.9}) {
            for (auto [t, x] : {std::pair{0.5, 1.0}, std::pair{1.0, -0.3}}) {
                auto f = [&](double y) { return y == 0.0 ? 0.0 : poisson_kernel(a, t, x, y); };
                PVQuadratureScheme s;
                s.tail_exponent_hint = 2.0 + a;
                const double mass = integrate(f, -std::numeric_limits<double>::infinity(),
                                              std::numeric_limits<double>::infinity(),
                                              {Breakpoint{0.0, 0.01, std::min(0.0, -a)}, Breakpoint{x, 0.1},
                                               Breakpoint{-x, 0.1}},
                                              s);
                worst = std::max(worst, std::abs(mass - 1.0));
            }
        }
        return make_report("kernel-normalization", {param("cases", 10.0)}, worst, 1e-6);
    });
}

/// Kernel and psi routes of the Dirichlet solution agree.
inline VerificationReport dirichlet_two_route(double k, double p = 2.0) {
    return timed([&] {
        const auto cfg = derive_config(k, p, Branch::LpInf);
        const auto u = presets::bump(0.8, 1.2);
        const DirichletSolution a(u, cfg, DirichletRoute::Kernel);
        const DirichletSolution b(u, cfg, DirichletRoute::Psi);
        double worst = 0.0;
        double scale = 0.0;
        for (double t : {0.05, 0.4, 1.5}) {
            for (double x : {-2.3, -0.45, 0.15, 0.9, 4.0}) {
                worst = std::max(worst, std::abs(a(t, x) - b(t, x)));
                scale = std::max(scale, std::abs(a(t, x)));
            }
        }
        return make_report("dirichlet-two-route", {param("k", k), param("p", p), param("alpha", cfg.alpha())},
                           worst / scale, 1e-4);
    });
}

/// The density solves u = (psi + k K* psi)/2.
inline VerificationReport psi_forward(double k, double p = 2.0) {
    return timed([&] {
        const auto cfg = derive_config(k, p, Branch::LpInf);
        const auto u = presets::bump(0.8, 1.2);
        const auto psi = psi_from_u(u, cfg);
        double worst = 0.0;
        for (double x : {-1.5, -0.3, 0.2, 1.1, 3.0}) {
            worst = std::max(worst, std::abs(0.5 * (psi(x) + k * apply_K_adjoint(psi, x)) - u(x)));
        }
        return make_report("psi-forward", {param("k", k), param("p", p)}, worst, 1e-4);
    });
}

/// Dirichlet boundary equation and two-route agreement on a seeded random Gaussian mixture at a
/// seeded k in [-1.5, 1.5], p = 3.
inline VerificationReport random_field(std::uint64_t seed) {
    return timed([&] {
        std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
        const double k = std::uniform_real_distribution<double>(-1.5, 1.5)(rng);
        const double p = 3.0;
        const auto cfg = derive_config(k, p, Branch::LpInf);
        const auto u = presets::gaussian_mixture(seed);
        const double eq = boundary_equation_residual(Problem::Dirichlet, cfg, u, {-2.6, -1.1, -0.2, 0.45, 1.7, 3.2});
        const DirichletSolution a(u, cfg, DirichletRoute::Kernel);
        const DirichletSolution b(u, cfg, DirichletRoute::Psi);
        double worst = 0.0;
        double scale = 0.0;
        for (double t : {0.1, 0.5, 1.5}) {
            for (double x : {-2.1, -0.35, 0.25, 1.3}) {
                worst = std::max(worst, std::abs(a(t, x) - b(t, x)));
                scale = std::max(scale, std::abs(a(t, x)));
            }
        }
        return make_report("random-field",
                           {param("seed", static_cast<double>(seed)), param("k", k), param("p", p)},
                           std::max(eq, worst / scale), 1e-4);
    });
}

/// Quadrant Poisson composition with the axis values reproduces the kernel route.
inline VerificationReport quadrant_poisson_check(double k = 2.0) {
    return timed([&] {
        const auto cfg = derive_config(k, 2.0, Branch::LpInf);
        const auto u = presets::bump(0.8, 1.2);
        const DirichletSolution sol(u, cfg);
        auto axis = [&](double s) { return sol.axis(s); };
        double worst = 0.0;
        for (auto [t, x] : {std::pair{0.5, 1.0}, std::pair{0.2, -0.6}}) {
            worst = std::max(worst, detail::rel(quadrant_poisson(u, axis, t, x), sol(t, x)));
        }
        return make_report("quadrant-poisson", {param("k", k)}, worst, 1e-5);
    });
}

/// Maximum principle for k = 0: sup N_*(U) <= sup |u|.
inline VerificationReport ntmax_maximum_principle() {
    return timed([] {
        const auto cfg = derive_config(0.0, 2.0, Branch::H1);
        const auto u = presets::bump(0.5, 1.0);
        const auto field = solve_dirichlet(u, cfg, GridSpec{0.02, 1.0, 25, -3.0, 3.0, 50});
        const auto prof = nontangential_max(field, NTVariant::Plain, 2.0);
        const double top = *std::max_element(prof.nstar_values.begin(), prof.nstar_values.end());
        return make_report("ntmax-maximum-principle", {param("k", 0.0)}, std::max(0.0, top - 1.0), 1e-9,
                           "max N_* " + format_number(top));
    });
}

/// ||N_*(U)||_p / ||u||_p on two nested grids for a bump; measured relative change.
inline VerificationReport ntmax_bound(double k = 2.0, double p = 2.0) {
    return timed([&] {
        const auto cfg = derive_config(k, p, Branch::LpInf);
        const auto u = presets::bump(0.8, 1.2);
        const DirichletSolution sol(u, cfg);
        const double norm = lp_norm(u, p, NormWindow{-40.0, 40.0, {-0.4, 2.0}, 1e-10});
        auto constant = [&](std::size_t nt, std::size_t nx) {
            const auto grid = GridSpec{0.02, 2.0, nt, -4.0, 4.0, nx};
            const auto field = tabulate(sol, grid.t_levels(), grid.x_nodes());
            return nontangential_max(field, NTVariant::Plain, p).lp_norm / norm;
        };
        const double c1 = constant(25, 40);
        const double c2 = constant(49, 80);
        return make_report("ntmax-bound", {param("k", k), param("p", p)}, detail::rel(c1, c2), 0.05,
                           "C " + format_number(c1) + " -> " + format_number(c2));
    });
}

/// Tail exponent of U(t, x) as x -> inf against alpha - 2.
inline VerificationReport tail_decay(double k = 2.0, double p = 2.0, Branch branch = Branch::H1) {
    return timed([&] {
        const auto cfg = derive_config(k, p, branch);
        const DirichletSolution sol(presets::bump(0.8, 1.2), cfg);
        const double slope = tail_exponent(sol, 1.0, detail::geomspace(200.0, 2000.0, 6));
        return make_report("tail-decay", {param("k", k), param("alpha", cfg.alpha())},
                           std::abs(slope - (cfg.alpha() - 2.0)), 0.02, "slope " + format_number(slope));
    });
}

/// Resolvent (i lambda - T_k)^{-1} combinations reproduce P_t and Q_t.
inline VerificationReport resolvent_identity(double k) {
    return timed([&] {
        const auto cfg = derive_config(k, 2.0, Branch::H1);
        const BoundaryVectorField f{presets::gaussian(1.0, 0.7), presets::gaussian(-0.5, 0.8)};
        double worst = 0.0;
        for (double t : {0.3, 1.5}) {
            for (double x : {-0.8, 0.6}) {
                const auto rm = resolvent(-1.0 / t, f, x, cfg);
                const auto rp = resolvent(1.0 / t, f, x, cfg);
                const std::complex<double> i(0.0, 1.0);
                const CVec2 pt = (rm - rp) * (1.0 / (2.0 * i * t));
                const CVec2 qt = (rm + rp) * (-1.0 / (2.0 * t));
                const auto p = apply_Pt(t, f, x, cfg);
                const auto q = apply_Qt(t, f, x, cfg);
                const double sc = std::max(magnitude(p), magnitude(q));
                worst = std::max(worst, magnitude(pt - CVec2{p.v0, p.v1}) / sc);
                worst = std::max(worst, magnitude(qt - CVec2{q.v0, q.v1}) / sc);
            }
        }
        return make_report("resolvent-identity", {param("k", k)}, worst, 1e-8);
    });
}

/// Curl-free gradient field: d_t F_1 = d_x F_0 for the regularity solution.
inline VerificationReport curl_free(double k = 0.5) {
    return timed([&] {
        const auto cfg = derive_config(k, 2.0, Branch::H1);
        const auto sol = regularity_solution(detail::gaussian_derivative(0.7, 0.6), cfg);
        const double h = 1e-3;
        double worst = 0.0;
        for (auto [t, x] : {std::pair{0.3, 0.5}, std::pair{0.6, -1.1}}) {
            const double dtf1 = (sol(t + h, x).v1 - sol(t - h, x).v1) / (2.0 * h);
            const double dxf0 = (sol(t, x + h).v0 - sol(t, x - h).v0) / (2.0 * h);
            worst = std::max(worst, std::abs(dtf1 - dxf0));
        }
        return make_report("curl-free", {param("k", k)}, worst, 1e-5);
    });
}

}  // namespace checks

struct SweepPoint {
    double k = 0.0;
    double p = 2.0;
};

struct SuiteSpec {
    /// When set, only checks whose name starts with one of these prefixes run.
    std::optional<std::vector<std::string>> only;
    /// Seed of the randomized test field.
    std::uint64_t seed = 1;
};

inline std::vector<SweepPoint> default_sweep() {
    std::vector<SweepPoint> out;
    for (double p : {1.5, 2.0, 3.0}) {
        for (double k : {0.0, 0.5, -0.5, 1.0, -1.0, 2.0}) {
            out.push_back({k, p});
        }
    }
    return out;
}

struct NamedCheck {
    std::string name;
    std::function<VerificationReport()> run;
};

/// The named checks of a sweep: per-config identity, threshold and trace checks plus the fixed
/// kernel, operator and solver invariants. An empty sweep gives an empty list.
inline std::vector<NamedCheck> suite_checks(const std::vector<SweepPoint>& sweep, std::uint64_t seed = 1) {
    std::vector<NamedCheck> out;
    if (sweep.empty()) {
        return out;
    }
    std::set<double> ps;
    for (const auto& s : sweep) {
        ps.insert(s.p);
        if (std::abs(s.k + std::tan(std::numbers::pi / (2.0 * s.p))) < kThresholdTolerance) {
            out.push_back({"multiplier-identity", [s] {
                               return expect_error("multiplier-identity", {param("k", s.k), param("p", s.p)},
                                                   ErrorKind::NotInvertible,
                                                   [&] { (void)checks::multiplier_identity(s.k, s.p); });
                           }});
            continue;
        }
        out.push_back({"multiplier-identity", [s] { return checks::multiplier_identity(s.k, s.p); }});
        if (s.k != 0.0) {
            out.push_back({"inverse-identity", [s] { return checks::inverse_identity(s.k, s.p); }});
        }
    }
    for (double p : ps) {
        for (Problem pr : {Problem::Dirichlet, Problem::Neumann, Problem::Regularity}) {
            out.push_back({"threshold-" + std::string(to_string(pr)), [pr, p] { return checks::threshold_refusal(pr, p); }});
            out.push_back({"threshold-neighbors-" + std::string(to_string(pr)),
                           [pr, p] { return checks::threshold_neighbors(pr, p); }});
        }
    }
    out.push_back({"classical-limit", [] { return checks::classical_limit(); }});
    out.push_back({"axis-formula", [] { return checks::axis_formula(); }});
    out.push_back({"inverse-convergence", [] { return checks::inverse_convergence(1.0, 2.0); }});
    out.push_back({"residue-lemma", [] { return checks::residue_lemma(); }});
    out.push_back({"quadrant-identity", [] { return checks::quadrant_identity(); }});
    out.push_back({"quadrant-poisson", [] { return checks::quadrant_poisson_check(); }});
    for (Branch b : {Branch::H1, Branch::LpInf}) {
        out.push_back({"pde-residual-order", [b] { return checks::pde_order(1.0, 1.5, b); }});
        out.push_back({"pde-residual", [b] { return checks::pde_grid(1.0, 1.5, b); }});
        out.push_back({"transmission", [b] { return checks::transmission(1.0, 1.5, b); }});
    }
    out.push_back({"transmission", [] { return checks::transmission(0.0, 2.0, Branch::H1); }});
    out.push_back({"kernel-positivity", [] { return checks::kernel_positivity(); }});
    out.push_back({"kernel-negative-witness", [] { return checks::kernel_negative_witness(); }});
    out.push_back({"kernel-symmetries", [] { return checks::kernel_symmetries(); }});
    out.push_back({"kernel-normalization", [] { return checks::kernel_normalization(); }});
    out.push_back({"kernel-table", [] { return checks::kernel_table_properties(); }});
    out.push_back({"axis-blowup", [] { return checks::axis_blowup(); }});
    out.push_back({"energy-finite", [] { return checks::energy_finite(); }});
    out.push_back({"energy-divergent", [] { return checks::energy_divergent(); }});
    out.push_back({"trace-dirichlet", [] { return checks::trace_dirichlet(); }});
    out.push_back({"trace-neumann", [] { return checks::trace_neumann(); }});
    out.push_back({"trace-neumann-rate", [] { return checks::trace_neumann_rate(); }});
    out.push_back({"trace-regularity", [] { return checks::trace_regularity(); }});
    out.push_back({"dirichlet-two-route", [] { return checks::dirichlet_two_route(2.0); }});
    out.push_back({"dirichlet-two-route", [] { return checks::dirichlet_two_route(-0.5); }});
    out.push_back({"psi-forward", [] { return checks::psi_forward(0.7); }});
    out.push_back({"random-field", [seed] { return checks::random_field(seed); }});
    out.push_back({"tail-decay", [] { return checks::tail_decay(); }});
    out.push_back({"ntmax-maximum-principle", [] { return checks::ntmax_maximum_principle(); }});
    out.push_back({"ntmax-bound", [] { return checks::ntmax_bound(); }});
    out.push_back({"resolvent-identity", [] { return checks::resolvent_identity(0.7); }});
    out.push_back({"curl-free", [] { return checks::curl_free(); }});
    out.push_back({"dunford-sign", [] { return checks::dunford_sign_check(); }});
    out.push_back({"dunford-hilbert", [] { return checks::dunford_hilbert(); }});
    out.push_back({"dunford-scalar", [] { return checks::dunford_scalar_check(); }});
    out.push_back({"dunford-cauchy", [] { return checks::dunford_cauchy_check(); }});
    return out;
}

/// Runs the selected checks; a check that throws is recorded as a failed report and the sweep goes on.
inline std::vector<VerificationReport> run_suite(const std::vector<SweepPoint>& sweep, const SuiteSpec& spec = {}) {
    std::vector<VerificationReport> out;
    for (const auto& c : suite_checks(sweep, spec.seed)) {
        if (spec.only) {
            const bool wanted = std::any_of(spec.only->begin(), spec.only->end(),
                                            [&](const std::string& s) { return c.name.rfind(s, 0) == 0; });
            if (!wanted) {
                continue;
            }
        }
        try {
            out.push_back(c.run());
        } catch (const std::exception& e) {
            auto r = make_report(c.name, {}, std::numeric_limits<double>::infinity(), 0.0, e.what());
            out.push_back(r);
        }
    }
    return out;
}

/// True iff every check that is not an expected-failure entry passed, and every expected failure
/// was raised.
inline bool suite_passed(const std::vector<VerificationReport>& reports) {
    return std::all_of(reports.begin(), reports.end(), [](const VerificationReport& r) { return r.passed; });
}

}  // namespace halfplane
