#include <catch2/catch_amalgamated.hpp>

#include "halfplane/operators.hpp"

#include <cmath>
#include <complex>
#include <numbers>

using namespace halfplane;
using Catch::Approx;

namespace {

BoundaryVectorField gaussian_pair() {
    return {presets::gaussian(0.4, 0.8), presets::gaussian(-0.5, 0.6)};
}

double cmax(const CVec2& a) { return std::max(std::abs(a.v0), std::abs(a.v1)); }

// Data on (0, inf) read from a log-line function.
BoundarySample half_line_sample(const LogLineFunction& f, double rate, double origin_power) {
    return BoundarySample([f](double y) { return y > 0.0 ? f(y) : 0.0; }, SupportHint::algebraic(rate), {}, 1.0,
                          "grid")
        .with_origin_power(origin_power);
}

}  // namespace

TEST_CASE("resolvent solves the transmission ODE", "[operators][resolvent]") {
    using C = std::complex<double>;
    const C I(0.0, 1.0);
    const auto f = gaussian_pair();
    for (double k : {0.0, 0.7, -2.0}) {
        const auto cfg = derive_config(k, 2.0, Branch::H1);
        for (double lambda : {1.3, -0.6}) {
            for (double x : {-1.7, -0.3, 0.45, 2.2}) {
                const double h = 1e-3;
                const CVec2 up = resolvent(lambda, f, x + h, cfg);
                const CVec2 um = resolvent(lambda, f, x - h, cfg);
                const CVec2 u = resolvent(lambda, f, x, cfg);
                const auto fx = f(x);
                const CVec2 du = (up - um) / C(2.0 * h);
                CHECK(std::abs(du.v0 - (-I * lambda * u.v1 + fx.v1)) < 1e-5);
                CHECK(std::abs(du.v1 - (I * lambda * u.v0 - fx.v0)) < 1e-5);
            }
            const double e = 1e-9;
            const CVec2 r = resolvent(lambda, f, e, cfg);
            const CVec2 l = resolvent(lambda, f, -e, cfg);
            CHECK(std::abs(r.v0 - l.v0) < 1e-7);
            CHECK(std::abs((r.v1 - l.v1) - 2.0 * k * r.v0) < 1e-7);
            CHECK(cmax(resolvent(lambda, f, 60.0, cfg)) < 1e-12);
        }
    }
    CHECK_THROWS_AS(resolvent(0.0, f, 1.0, derive_config(0.0, 2.0, Branch::H1)), Error);
    CHECK_THROWS_AS(resolvent(1.0, f, 0.0, derive_config(0.0, 2.0, Branch::H1)), Error);
}

TEST_CASE("P_t and Q_t are the resolvent combinations", "[operators][resolvent]") {
    using C = std::complex<double>;
    const C I(0.0, 1.0);
    const auto f = gaussian_pair();
    for (double k : {0.0, 0.7}) {
        const auto cfg = derive_config(k, 2.0, Branch::H1);
        for (double t : {0.3, 2.0}) {
            for (double x : {-0.8, 0.5, 1.9}) {
                const CVec2 rm = resolvent(-1.0 / t, f, x, cfg);
                const CVec2 rp = resolvent(1.0 / t, f, x, cfg);
                const CVec2 p = (rm - rp) / (2.0 * I * t);
                const CVec2 q = (rm + rp) * C(-1.0 / (2.0 * t));
                const auto pt = apply_Pt(t, f, x, cfg);
                const auto qt = apply_Qt(t, f, x, cfg);
                CHECK(std::abs(p.v0 - pt.v0) < 1e-11);
                CHECK(std::abs(p.v1 - pt.v1) < 1e-11);
                CHECK(std::abs(q.v0 - qt.v0) < 1e-11);
                CHECK(std::abs(q.v1 - qt.v1) < 1e-11);
            }
        }
    }
}

TEST_CASE("E_0 of an indicator is the Hilbert transform", "[operators][ek]") {
    const auto cfg = derive_config(0.0, 2.0, Branch::H1);
    const BoundaryVectorField f{presets::indicator(1.0, 2.0), BoundarySample::zero()};
    for (double x : {-3.0, 0.5, 1.5, 2.5, 7.0}) {
        const auto e = apply_Ek(f, x, cfg);
        const double exact = std::log(std::abs((x - 1.0) / (x - 2.0))) / std::numbers::pi;
        CHECK(e.v0 == Approx(0.0).margin(1e-15));
        CHECK(e.v1 == Approx(exact).epsilon(1e-10));
    }
}

TEST_CASE("E_k commutes with dilations", "[operators][ek][property]") {
    const auto f = gaussian_pair();
    for (double k : {0.4, -1.5}) {
        const auto cfg = derive_config(k, 2.0, Branch::H1);
        for (double lambda : {0.5, 3.0}) {
            const BoundaryVectorField g{f.f0.dilated(lambda), f.f1.dilated(lambda)};
            for (double x : {-1.1, 0.3, 0.9}) {
                const auto a = apply_Ek(g, x, cfg);
                const auto b = apply_Ek(f, lambda * x, cfg);
                CHECK(a.v0 == Approx(b.v0).epsilon(1e-9).margin(1e-12));
                CHECK(a.v1 == Approx(b.v1).epsilon(1e-9).margin(1e-12));
            }
        }
    }
}

TEST_CASE("Cauchy extension tends to the Hardy projection", "[operators][cauchy]") {
    const auto f = gaussian_pair();
    const auto cfg = derive_config(0.6, 2.0, Branch::H1);
    for (double x : {-0.7, 0.8}) {
        const auto lim = hardy_projection(Sign::Plus, f, x, cfg);
        const auto c = cauchy_extension(1e-5, f, x, cfg);
        CHECK(std::abs(c.v0 - lim.v0) < 1e-4);
        CHECK(std::abs(c.v1 - lim.v1) < 1e-4);
    }
    const auto plus = hardy_projection(Sign::Plus, f, 0.8, cfg);
    const auto minus = hardy_projection(Sign::Minus, f, 0.8, cfg);
    CHECK((plus + minus).v0 == Approx(f(0.8).v0).epsilon(1e-14));
}

TEST_CASE("K_alpha multiplier symbol", "[operators][multiplier]") {
    // gamma = 1: m(xi) = -i tanh(pi xi / 2).
    const auto m = multiplier_of_Ktilde(1.0);
    for (double xi : {-3.0, -0.4, 0.0, 0.7, 25.0}) {
        const auto v = m(xi);
        CHECK(v.real() == Approx(0.0).margin(1e-15));
        CHECK(v.imag() == Approx(-std::tanh(std::numbers::pi * xi / 2.0)).margin(1e-15));
    }
    CHECK_THROWS_AS(multiplier_of_Ktilde(2.0), Error);
    CHECK_THROWS_AS(multiplier_of_Ktilde(0.0), Error);
    // (1 - k m_{1/p})(1 + k m_{alpha + 1/p}) = 1 + k^2.
    for (auto [p, k] : {std::pair{2.0, 1.0}, std::pair{1.5, 0.5}, std::pair{3.0, -0.7}}) {
        const double alpha = range_alpha(k, p);
        const MultiplierSymbol a{1.0 / p};
        const MultiplierSymbol b{alpha + 1.0 / p};
        for (double xi = -20.0; xi <= 20.0; xi += 0.37) {
            const auto prod = (1.0 - k * a(xi)) * (1.0 + k * b(xi));
            CHECK(std::abs(prod - (1.0 + k * k)) < 1e-12);
        }
    }
}

TEST_CASE("K_alpha by multiplier agrees with direct quadrature", "[operators][multiplier]") {
    const auto f = presets::bump(2.0, 1.0);
    for (double alpha : {-0.3, 0.5, 1.2}) {
        const auto grid = apply_K_alpha_grid(alpha, f, 2.0);
        for (double x : {0.2, 1.3, 2.5, 6.0}) {
            const double direct = apply_K_alpha(alpha, f, x);
            CHECK(grid(x) == Approx(direct).epsilon(1e-6).margin(1e-9));
        }
    }
    CHECK_THROWS_AS(apply_K_alpha_grid(1.6, f, 2.0), Error);
}

TEST_CASE("K on the line mirrors K_0 on each half-line", "[operators][k]") {
    const auto f = presets::bump(2.0, 1.0);
    for (double x : {0.5, 1.7, 4.0}) {
        CHECK(apply_K(f, x) == Approx(apply_K_alpha(0.0, f, x)).epsilon(1e-11));
    }
    // K* is the transpose: int (K f) g = int f (K* g).
    const auto g = presets::gaussian(-0.6, 0.7);
    const auto h = presets::gaussian(0.9, 0.5);
    const BoundarySample kf([&](double y) { return y == 0.0 ? 0.0 : apply_K(h, y); },
                            SupportHint::algebraic(1.0), {}, 0.5, "Kh");
    const BoundarySample ksg([&](double y) { return y == 0.0 ? 0.0 : apply_K_adjoint(g, y); },
                             SupportHint::algebraic(1.0), {}, 0.5, "K*g");
    const double lhs = integrate([&](double y) { return kf(y) * g(y); }, -20.0, 20.0, {Breakpoint{0.0, 0.05}});
    const double rhs = integrate([&](double y) { return h(y) * ksg(y); }, -20.0, 20.0, {Breakpoint{0.0, 0.05}});
    CHECK(lhs == Approx(rhs).epsilon(1e-8));
}

TEST_CASE("half-line inverse round trip", "[operators][inverse]") {
    const auto phi = presets::bump(2.0, 1.0);
    for (auto [sign, k, p] : {std::tuple{Sign::Minus, 0.7, 2.0}, std::tuple{Sign::Plus, 0.7, 2.0},
                              std::tuple{Sign::Minus, -0.5, 1.5}, std::tuple{Sign::Plus, 2.5, 3.0}}) {
        const auto cfg = derive_config(k, p, Branch::H1);
        const auto inv = invert_half_line(sign, k, phi, cfg);
        const double lo = -1.0 / p;
        CHECK(inv.alpha > lo);
        CHECK(inv.alpha < 2.0 + lo);
        const auto psi = half_line_sample(inv.value, 2.0 - inv.alpha, std::min(0.0, inv.alpha));
        const double s = sign == Sign::Minus ? -1.0 : 1.0;
        for (double x : {0.4, 1.5, 2.3, 5.0}) {
            const double back = psi(x) + s * k * apply_K_alpha(0.0, psi, x);
            CHECK(back == Approx(phi(x)).margin(2e-5));
        }
    }
}

TEST_CASE("half-line inverse fails exactly at the threshold", "[operators][inverse]") {
    const auto phi = presets::bump(2.0, 1.0);
    const auto cfg = derive_config(1.0, 2.0, Branch::H1);
    try {
        (void)invert_half_line(Sign::Plus, 1.0, phi, cfg);
        FAIL("expected NotInvertible");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotInvertible);
    }
    CHECK_THROWS_AS(invert_half_line(Sign::Minus, -1.0, phi, derive_config(-1.0, 2.0, Branch::H1)), Error);
    CHECK_NOTHROW(invert_half_line(Sign::Plus, 0.95, phi, derive_config(0.95, 2.0, Branch::H1)));
}
