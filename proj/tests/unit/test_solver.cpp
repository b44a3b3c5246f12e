#include <catch2/catch_amalgamated.hpp>

#include "halfplane/solver.hpp"

#include <cmath>
#include <limits>
#include <numbers>

using namespace halfplane;
using Catch::Approx;

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();
const double pi = std::numbers::pi;

double classical_poisson(double t, double x, double y) { return t / (pi * (t * t + (x - y) * (x - y))); }

BoundarySample gaussian_derivative(double c, double w) {
    return BoundarySample(
        [c, w](double y) {
            const double s = (y - c) / w;
            return -2.0 * s / w * std::exp(-s * s);
        },
        SupportHint::exponential(c - 27.0 * w, c + 27.0 * w), {}, w, "gaussian'");
}

}  // namespace

TEST_CASE("poisson_kernel closed form", "[solver][kernel]") {
    CHECK(poisson_kernel(0.0, 1.0, 0.3, -0.8) == Approx(classical_poisson(1.0, 0.3, -0.8)).epsilon(1e-12));
    for (double a : {-1.5, -0.75, 0.4}) {
        for (double t : {0.1, 1.0, 3.0}) {
            for (double y : {-2.0, 0.3, 5.0}) {
                const double oracle = std::cos(pi * a / 2.0) / pi * std::pow(t, 1.0 + a) * std::pow(std::abs(y), -a) /
                                      (t * t + y * y);
                CHECK(poisson_kernel(a, t, 0.0, y) == Approx(oracle).epsilon(1e-12));
                CHECK(axis_kernel(a, t, y) == Approx(oracle).epsilon(1e-14));
            }
        }
    }
    for (double a : {-1.3, 0.2}) {
        for (double lambda : {0.5, 2.0, 7.0}) {
            const double base = poisson_kernel(a, 0.7, 1.1, -0.4);
            CHECK(poisson_kernel(a, lambda * 0.7, lambda * 1.1, lambda * -0.4) ==
                  Approx(base / lambda).epsilon(1e-13));
        }
        CHECK(poisson_kernel(a, 0.7, -1.1, 0.4) == Approx(poisson_kernel(a, 0.7, 1.1, -0.4)).epsilon(1e-14));
    }
    CHECK_THROWS_AS(poisson_kernel(1.0, 1.0, 0.0, 1.0), Error);
    CHECK_THROWS_AS(poisson_kernel(0.5, 1.0, 0.0, 0.0), Error);
    CHECK_THROWS_AS(poisson_kernel(0.5, 0.0, 0.0, 1.0), Error);
}

TEST_CASE("poisson_kernel has unit mass for alpha in (-1, 1)", "[solver][kernel][property]") {
    for (double a : {-0.9, -0.5, 0.0, 0.5, 0.9}) {
        for (auto [t, x] : {std::pair{0.5, 1.0}, std::pair{1.0, -0.3}}) {
            auto f = [&](double y) { return y == 0.0 ? 0.0 : poisson_kernel(a, t, x, y); };
            PVQuadratureScheme s;
            s.tail_exponent_hint = 2.0 + a;
            const double mass = integrate(f, -inf, inf,
                                          {Breakpoint{0.0, 0.01, std::min(0.0, -a)}, Breakpoint{x, 0.1},
                                           Breakpoint{-x, 0.1}},
                                          s);
            CHECK(mass == Approx(1.0).epsilon(1e-6));
        }
    }
}

TEST_CASE("residue identity against p.v. quadrature", "[solver][residue]") {
    CHECK(residue_I(0.5, 0.0, 0.0, 1.0, 1.0, 2.0) == 0.0);
    auto direct = [](double a, double beta, double gamma, double t, double x, double z, double kernel_power) {
        auto f = [&](double y) {
            return (gamma * t + beta * (y - x)) / (t * t + (y - x) * (y - x)) * std::pow(y, kernel_power) /
                   ((y - z) * (y + z));
        };
        PVQuadratureScheme s;
        s.tail_exponent_hint = 2.0 - a;
        return integrate(f, 0.0, inf, {Breakpoint{z, 0.25 * z, 0.0, true}, Breakpoint{0.0, 0.25 * z},
                                       Breakpoint{x, 0.25 * t}},
                         s);
    };
    CHECK(residue_I(0.5, 1.0, 0.0, 1.0, 1.0, 2.0) == Approx(direct(0.5, 1.0, 0.0, 1.0, 1.0, 2.0, 1.5)).epsilon(1e-6));
    // alpha -> 0 against the kernel y/(y^2 - z^2).
    CHECK(residue_I(1e-7, 0.7, 0.4, 0.8, 1.3, 0.9) ==
          Approx(direct(0.0, 0.7, 0.4, 0.8, 1.3, 0.9, 1.0)).epsilon(1e-6));
    CHECK_THROWS_AS(residue_I(0.0, 1.0, 1.0, 1.0, 1.0, 1.0), Error);
}

TEST_CASE("quadrant integral identity", "[solver][quadrant]") {
    for (auto [a, t, x, y] : {std::tuple{0.5, 1.0, 1.0, 2.0}, std::tuple{-1.2, 0.5, 1.0, 1.0}}) {
        const auto [lhs, rhs] = quadrant_integral_identity(a, t, x, y);
        CHECK(lhs == Approx(rhs).epsilon(1e-6));
        const auto [l2, r2] = quadrant_integral_identity(a, 2.0 * t, 2.0 * x, 2.0 * y);
        // s -> 2s: the left side scales by 2^{2+a+1-6} = 2^{a-3}.
        CHECK(l2 == Approx(lhs * std::pow(2.0, a - 3.0)).epsilon(1e-10));
        CHECK(r2 == Approx(rhs * std::pow(2.0, a - 3.0)).epsilon(1e-10));
    }
}

TEST_CASE("Dirichlet k = 0 is the Poisson semigroup", "[solver][dirichlet]") {
    const auto cfg = derive_config(0.0, 2.0, Branch::H1);
    const DirichletSolution sol(presets::rational(), cfg);
    CHECK(sol(1.0, 0.0) == Approx(1.0 / (2.0 * pi)).epsilon(1e-12));
    for (double t : {0.01, 0.3, 2.0}) {
        for (double x : {-3.0, -0.2, 0.7, 10.0}) {
            const double exact = (1.0 + t) / (pi * ((1.0 + t) * (1.0 + t) + x * x));
            CHECK(sol(t, x) == Approx(exact).epsilon(1e-10));
        }
    }
}

TEST_CASE("psi density solves the forward boundary equation", "[solver][psi]") {
    const auto u = presets::bump(0.8, 1.2);
    for (auto [k, branch] : {std::pair{0.7, Branch::LpInf}, std::pair{2.0, Branch::LpInf}, std::pair{-0.4, Branch::H1}}) {
        const auto cfg = derive_config(k, 2.0, branch);
        const auto psi = psi_from_u(u, cfg);
        for (double x : {-1.5, -0.3, 0.2, 1.1, 3.0}) {
            const double forward = 0.5 * (psi(x) + k * apply_K_adjoint(psi, x));
            CHECK(forward == Approx(u(x)).margin(1e-4));
        }
        // Dilation covariance.
        const auto psi2 = psi_from_u(u.dilated(2.0), cfg);
        for (double x : {-0.4, 0.3}) {
            CHECK(psi2(x) == Approx(psi(2.0 * x)).margin(1e-6));
        }
    }
    const auto cfg0 = derive_config(0.0, 2.0, Branch::H1);
    CHECK(psi_from_u(u, cfg0)(0.5) == Approx(2.0 * u(0.5)).epsilon(1e-15));
}

TEST_CASE("Dirichlet kernel and psi routes agree", "[solver][dirichlet]") {
    const auto u = presets::bump(0.8, 1.2);
    for (double k : {0.7, 2.0, -0.5}) {
        const auto cfg = derive_config(k, 2.0, Branch::LpInf);
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
        CHECK(worst < 1e-4 * scale);
    }
}

TEST_CASE("Dirichlet solution satisfies the transmission condition", "[solver][dirichlet]") {
    const auto u = presets::bump(0.8, 1.2);
    for (auto [k, branch] : {std::pair{1.0, Branch::H1}, std::pair{2.0, Branch::LpInf}}) {
        const auto cfg = derive_config(k, 2.0, branch);
        const DirichletSolution sol(u, cfg);
        for (double t : {0.3, 1.0}) {
            const double d = 1e-3;
            const double u0 = sol.axis(t);
            const double right = (-3.0 * u0 + 4.0 * sol(t, d) - sol(t, 2.0 * d)) / (2.0 * d);
            const double left = (3.0 * u0 - 4.0 * sol(t, -d) + sol(t, -2.0 * d)) / (2.0 * d);
            const double dt = (sol.axis(t + d) - sol.axis(t - d)) / (2.0 * d);
            CHECK((right - left) == Approx(2.0 * k * dt).epsilon(1e-3));
            CHECK(std::abs(sol(t, 1e-9) - sol(t, -1e-9)) < 1e-8);
        }
    }
}

TEST_CASE("quadrant Poisson composition reproduces the kernel route", "[solver][quadrant]") {
    const auto u = presets::bump(0.8, 1.2);
    for (double k : {1.0, 2.0}) {
        const auto cfg = derive_config(k, 2.0, k > 1.0 ? Branch::LpInf : Branch::H1);
        const DirichletSolution sol(u, cfg);
        auto axis = [&](double s) { return sol.axis(s); };
        for (auto [t, x] : {std::pair{0.5, 1.0}, std::pair{0.2, -0.6}}) {
            CHECK(quadrant_poisson(u, axis, t, x) == Approx(sol(t, x)).epsilon(1e-5));
        }
    }
    auto zero = [](double) { return 0.0; };
    CHECK(quadrant_poisson(BoundarySample::zero(), zero, 0.5, 1.0) == 0.0);
}

TEST_CASE("harmonic measure table", "[solver][kernel]") {
    const auto rows = harmonic_measure_table({-1.5, -0.75, 0.0, 0.75}, 0.5, 1.0, {-4.0, -0.1, 0.0, 0.1, 4.0});
    CHECK(rows.size() == 16);
    bool negative = false;
    for (const auto& r : rows) {
        if (r.alpha == 0.0) {
            CHECK(r.value == Approx(classical_poisson(0.5, 1.0, r.y)).epsilon(1e-12));
        }
        if (r.alpha > -1.0) {
            CHECK(r.value >= 0.0);
        }
        negative = negative || r.value < 0.0;
    }
    CHECK(negative);
    const auto axis = harmonic_measure_table({-0.75}, 0.5, 0.0, {2.0});
    CHECK(axis[0].value == Approx(axis_kernel(-0.75, 0.5, 2.0)).epsilon(1e-15));
}

TEST_CASE("Neumann conormal trace", "[solver][neumann]") {
    const auto phi = presets::gaussian(0.7, 0.6);
    for (auto [k, p] : {std::pair{0.0, 2.0}, std::pair{0.5, 2.0}, std::pair{-0.5, 1.5}}) {
        const auto cfg = derive_config(k, p, Branch::H1);
        const auto sol = neumann_solution(phi, cfg);
        for (double x : {-0.9, 0.4, 1.3}) {
            const auto f = sol(1e-4, x);
            CHECK(f.v0 + k * detail::sgn(x) * f.v1 == Approx(phi(x)).margin(2e-3));
        }
    }
    CHECK_THROWS_AS(neumann_solution(phi, derive_config(1.0, 2.0, Branch::H1)), Error);
}

TEST_CASE("Regularity tangential trace and curl", "[solver][regularity]") {
    const auto du = gaussian_derivative(0.7, 0.6);
    for (auto [k, p] : {std::pair{0.0, 2.0}, std::pair{0.5, 2.0}, std::pair{1.5, 3.0}}) {
        const auto cfg = derive_config(k, p, Branch::H1);
        const auto sol = regularity_solution(du, cfg);
        for (double x : {-0.9, 0.4, 1.3}) {
            CHECK(sol(1e-4, x).v1 == Approx(du(x)).margin(2e-3));
        }
        // curl F = d_t F1 - d_x F0 = 0 away from the interface.
        const double h = 1e-3;
        for (auto [t, x] : {std::pair{0.3, 0.5}, std::pair{0.6, -1.1}}) {
            const double dtf1 = (sol(t + h, x).v1 - sol(t - h, x).v1) / (2.0 * h);
            const double dxf0 = (sol(t, x + h).v0 - sol(t, x - h).v0) / (2.0 * h);
            CHECK(std::abs(dtf1 - dxf0) < 1e-5);
        }
    }
    CHECK_THROWS_AS(regularity_solution(du, derive_config(-1.0, 2.0, Branch::H1)), Error);
}

TEST_CASE("solvers refuse within the threshold band", "[solver][threshold]") {
    const auto u = presets::bump(0.8, 1.2);
    for (double p : {1.5, 2.0, 3.0}) {
        const double q = conjugate_exponent(p);
        const std::array<std::pair<Problem, double>, 3> cases{
            std::pair{Problem::Neumann, std::tan(pi / (2.0 * p))},
            std::pair{Problem::Regularity, -std::tan(pi / (2.0 * p))},
            std::pair{Problem::Dirichlet, std::tan(pi / (2.0 * q))}};
        for (auto [problem, k] : cases) {
            try {
                (void)problem_config(problem, k, p, Branch::LpInf);
                FAIL("expected NotInvertible");
            } catch (const Error& e) {
                CHECK(e.kind() == ErrorKind::NotInvertible);
            }
            CHECK_NOTHROW(problem_config(problem, k + 0.05, p, Branch::LpInf));
            CHECK_NOTHROW(problem_config(problem, k - 0.05, p, Branch::LpInf));
        }
    }
}

TEST_CASE("grid spec parsing and field tabulation", "[solver][grid]") {
    const auto g = GridSpec::parse("0.1:1:4,-2:2:8");
    CHECK(g.t_levels() == std::vector<double>{0.1, 0.4, 0.7, 1.0});
    CHECK(g.x_nodes().front() == Approx(-1.75));
    CHECK_THROWS_AS(GridSpec::parse("0.1:1:4,-2:2:9"), Error);
    CHECK_THROWS_AS(GridSpec::parse("0:1:4,-2:2:8"), Error);
    CHECK_THROWS_AS(GridSpec::parse("0.1:1:4;-2:2:8"), Error);
    const auto f = solve_dirichlet(presets::rational(), derive_config(0.0, 2.0, Branch::H1), g);
    CHECK(f.kind == FieldKind::Potential);
    CHECK(f.values.size() == 32);
    CHECK(f.at(0, 0).v0 == Approx(1.1 / (pi * (1.1 * 1.1 + 1.75 * 1.75))).epsilon(1e-10));
}
