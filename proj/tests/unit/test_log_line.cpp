#include <catch2/catch_amalgamated.hpp>

#include "halfplane/log_line.hpp"
#include "halfplane/quadrature.hpp"

#include <cmath>
#include <complex>
#include <numbers>

using namespace halfplane;
using cd = std::complex<double>;

namespace {

std::vector<cd> gaussian(const LogGrid& g, double c, double w) {
    std::vector<cd> v(g.n);
    for (std::size_t j = 0; j < g.n; ++j) {
        const double d = (g.tau(j) - c) / w;
        v[j] = std::exp(-d * d);
    }
    return v;
}

double rel_l2(const std::vector<cd>& a, const std::vector<cd>& b) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        num += std::norm(a[j] - b[j]);
        den += std::norm(b[j]);
    }
    return std::sqrt(num / den);
}

// -i tanh(pi xi / 2): the symbol of the gamma = 1 member, written out by hand.
cd tanh_symbol(double xi) { return cd(0.0, -std::tanh(std::numbers::pi * xi / 2.0)); }

}  // namespace

TEST_CASE("trivial symbols", "[log_line]") {
    const auto grid = LogGrid::spanning(-20.0, 20.0, 512);
    const auto g = gaussian(grid, 1.0, 2.0);
    const auto same = log_line_multiplier_apply(g, grid.h, [](double) { return cd(1.0); });
    CHECK(rel_l2(same, g) < 1e-14);
    const auto zero = log_line_multiplier_apply(g, grid.h, [](double) { return cd(0.0); });
    for (const auto& v : zero) {
        CHECK(v == cd(0.0));
    }
}

TEST_CASE("window leak is detected", "[log_line]") {
    const auto grid = LogGrid::spanning(-5.0, 5.0, 128);
    const auto g = gaussian(grid, 0.0, 3.0);
    CHECK_THROWS_AS(log_line_multiplier_apply(g, grid.h, tanh_symbol), Error);
}

TEST_CASE("periodic multiplier composition is multiplicative", "[log_line][property]") {
    const auto grid = LogGrid::spanning(-30.0, 30.0, 1024);
    const auto g = gaussian(grid, -2.0, 1.5);
    auto m1 = [](double xi) { return cd(1.0, 0.3 * xi) / (1.0 + xi * xi); };
    auto m2 = [](double xi) { return cd(std::cos(xi), std::tanh(xi)); };
    const auto two_steps = log_line_multiplier_apply(log_line_multiplier_apply(g, grid.h, m1, 1), grid.h, m2, 1, 1.0);
    const auto one_step = log_line_multiplier_apply(g, grid.h, [&](double xi) { return m1(xi) * m2(xi); }, 1);
    CHECK(rel_l2(two_steps, one_step) < 1e-10);
}

TEST_CASE("tanh symbol matches the direct principal-value convolution", "[log_line]") {
    // (2/pi) p.v. int e^{s} / (e^{2s} - 1) g(tau - s) ds with g a centered Gaussian.
    const auto grid = LogGrid::spanning(-40.0, 40.0, 4096);
    const auto g = gaussian(grid, 0.0, 1.0);
    const auto fast = log_line_multiplier_apply(g, grid.h, tanh_symbol);
    PVQuadratureScheme s;
    std::vector<cd> direct(grid.n);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t j = 0; j < grid.n; j += 37) {
        const double tau = grid.tau(j);
        if (std::abs(tau) > 12.0) {
            continue;
        }
        auto f = [tau](double u) {
            const double d = tau - u;
            return 2.0 / std::numbers::pi * std::exp(u) / std::expm1(2.0 * u) * std::exp(-d * d);
        };
        const double v = pv_integral(f, 0.0, tau - 12.0 - std::abs(tau), tau + 12.0 + std::abs(tau), s,
                                     {Breakpoint{tau, 0.5}})
                             .value;
        num += std::norm(fast[j] - v);
        den += v * v;
    }
    CHECK(std::sqrt(num / den) < 1e-6);
}

TEST_CASE("log-line function round trip", "[log_line]") {
    const auto grid = LogGrid::spanning(-30.0, 10.0, 2048);
    auto f = [](double x) { return x * std::exp(-x * x); };
    const auto g = to_log_line(f, grid, 2.0);
    const LogLineFunction back(grid, from_log_line(g, grid, 2.0), 1.0, std::nan(""));
    for (double x : {1e-14, 1e-6, 0.3, 1.0, 2.0, 1e5}) {
        CHECK(back(x) == Catch::Approx(f(x)).epsilon(1e-6).margin(1e-300));
    }
}
