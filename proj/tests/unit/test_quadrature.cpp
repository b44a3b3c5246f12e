#include <catch2/catch_amalgamated.hpp>

#include "halfplane/quadrature.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <numbers>

using namespace halfplane;
using Catch::Approx;

namespace {
constexpr double inf = std::numeric_limits<double>::infinity();
}

TEST_CASE("panel rules integrate polynomials exactly", "[quadrature]") {
    for (auto rule : {PanelRule::GaussLegendre, PanelRule::ClenshawCurtis}) {
        const auto& r = panel_nodes(rule, 16);
        for (int deg = 0; deg <= 14; ++deg) {
            double s = 0.0;
            for (std::size_t i = 0; i < r.x.size(); ++i) {
                s += r.w[i] * std::pow(r.x[i], deg);
            }
            const double exact = deg % 2 == 1 ? 0.0 : 2.0 / (deg + 1);
            CHECK(s == Approx(exact).margin(1e-14));
        }
    }
}

TEST_CASE("pv_integral examples", "[quadrature][pv]") {
    const PVQuadratureScheme s;
    SECTION("odd integrand about the pole") {
        auto r = pv_integral([](double y) { return 1.0 / (0.0 - y); }, 0.0, -1.0, 1.0, s);
        CHECK(std::abs(r.value) < 1e-14);
    }
    SECTION("pole outside the support") {
        auto r = pv_integral([](double y) { return 1.0 / (4.0 - y); }, 4.0, 1.0, 2.0, s);
        CHECK(r.value == Approx(std::log(1.5)).epsilon(1e-13));
    }
    SECTION("2y/(x^2 - y^2) across the pole") {
        const double x = 2.0;
        auto f = [x](double y) { return y / (x * x - y * y) * 2.0 / std::numbers::pi; };
        auto r = pv_integral(f, x, 1.0, 3.0, s);
        CHECK(r.value == Approx(std::log(3.0 / 5.0) / std::numbers::pi).epsilon(1e-11));
    }
    SECTION("pole on the boundary") {
        CHECK_THROWS_AS(pv_integral([](double y) { return 1.0 / y; }, 0.0, 0.0, 1.0, s), Error);
    }
}

TEST_CASE("pv extrapolation estimates shrink level by level", "[quadrature][pv][property]") {
    const PVQuadratureScheme s;
    // 1/(x - y) * poly(y): the excised value is an odd series in the radius.
    for (double x : {0.3, 0.5, 0.71}) {
        auto f = [x](double y) { return (1.0 + y + 3.0 * y * y - y * y * y * y * y) / (x - y); };
        auto r = pv_integral(f, x, -1.0, 2.0, s);
        REQUIRE(r.level_estimates.size() >= 2);
        for (std::size_t l = 1; l < r.level_estimates.size(); ++l) {
            CHECK((r.level_estimates[l] < r.level_estimates[l - 1] || r.level_estimates[l] < 1e-13));
        }
        // Closed form through the subtraction of the pole.
        auto g = [x](double y) { return 1.0 + y + 3.0 * y * y - y * y * y * y * y; };
        auto smooth = [&](double y) {
            return y == x ? -(1.0 + 6.0 * x - 5.0 * x * x * x * x) : (g(y) - g(x)) / (x - y);
        };
        const double exact = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(smooth, -1.0, 2.0, 15, 1e-15) +
                             g(x) * std::log((x + 1.0) / (2.0 - x));
        CHECK(r.value == Approx(exact).epsilon(1e-12));
    }
}

TEST_CASE("graded_integral examples", "[quadrature]") {
    const PVQuadratureScheme s;
    CHECK(graded_integral([](double y) { return 1.0 / std::sqrt(y); }, 0.0, -0.5, 0.0, 1.0, s).value ==
          Approx(2.0).epsilon(1e-14));
    CHECK(graded_integral([](double y) { return std::pow(y, -0.3) * std::exp(-y); }, 0.0, -0.3, 0.0, inf, s).value ==
          Approx(std::tgamma(0.7)).epsilon(1e-12));
    CHECK(graded_integral([](double) { return 1.0; }, 0.0, 0.0, 0.0, 1.0, s).value == Approx(1.0).epsilon(1e-15));
    // Right endpoint; oracle after u = sqrt(1 - y). Evaluating 1 - y near y = 1 costs digits.
    const double ref = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [](double u) { return 2.0 * std::cos(1.0 - u * u); }, 0.0, 1.0, 10, 1e-15);
    CHECK(graded_integral([](double y) { return std::pow(1.0 - y, -0.5) * std::cos(y); }, 1.0, -0.5, 0.0, 1.0, s)
              .value == Approx(ref).epsilon(1e-11));
    CHECK_THROWS_AS(graded_integral([](double y) { return 1.0 / y; }, 0.0, -1.0, 0.0, 1.0, s), Error);
}

TEST_CASE("halfline_tail_integral examples", "[quadrature]") {
    PVQuadratureScheme s;
    CHECK(halfline_tail_integral([](double y) { return 1.0 / (1.0 + y * y); }, 0.0, s) ==
          Approx(std::numbers::pi / 2.0).epsilon(1e-13));
    s.tail_exponent_hint = 1.4;
    CHECK(halfline_tail_integral([](double y) { return std::pow(y, -1.4); }, 1.0, s) == Approx(2.5).epsilon(1e-12));
    s.tail_exponent_hint = 1.7;
    auto f = [](double y) { return std::pow(y, -1.7) / (1.0 + 1.0 / y); };
    boost::math::quadrature::exp_sinh<double> oracle;
    const double ref = oracle.integrate([&](double u) { return f(1.0 + u); }, 1e-15);
    CHECK(halfline_tail_integral(f, 1.0, s) == Approx(ref).epsilon(1e-8));
    s.tail_exponent_hint = 1.0;
    CHECK_THROWS_AS(halfline_tail_integral(f, 1.0, s), Error);
}

TEST_CASE("integrate handles multi-scale peaks and power singularities", "[quadrature]") {
    const PVQuadratureScheme s;
    for (double t : {1.0, 1e-2, 1e-4}) {
        // Poisson kernel has unit mass.
        auto f = [t](double y) { return t / (std::numbers::pi * (t * t + (0.3 - y) * (0.3 - y))); };
        const double v = integrate(f, -inf, inf, {Breakpoint{0.3, t}}, s);
        CHECK(v == Approx(1.0).epsilon(1e-12));
    }
    auto g = [](double y) { return std::pow(std::abs(y), -0.8) * std::exp(-y * y); };
    const double v = integrate(g, -inf, inf, {Breakpoint{0.0, 1e-4, -0.8}}, s);
    CHECK(v == Approx(std::tgamma(0.1)).epsilon(1e-11));
}
