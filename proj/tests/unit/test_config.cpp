#include <catch2/catch_amalgamated.hpp>

#include "halfplane/config.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace halfplane;
using Catch::Approx;

TEST_CASE("derive_config picks alpha on the requested branch", "[config]") {
    SECTION("k = 0, p = 2, H1") {
        const auto cfg = derive_config(0.0, 2.0, Branch::H1);
        CHECK(cfg.alpha() == 0.0);
        CHECK(cfg.q() == Approx(2.0).epsilon(1e-15));
    }
    SECTION("k = 1, p = 2, H1") {
        const auto cfg = derive_config(1.0, 2.0, Branch::H1);
        CHECK(cfg.alpha() == Approx(0.5).epsilon(1e-15));
    }
    SECTION("k = 1, p = 2, LpInf sits on the interval endpoint") {
        // Scan tan(pi a / 2) over the open interval (-3/2, 1/2): k = 1 is never attained inside.
        double closest = 1e300;
        for (int i = 1; i < 200000; ++i) {
            const double a = -1.5 + 2.0 * i / 200000.0;
            closest = std::min(closest, std::abs(std::tan(std::numbers::pi * a / 2.0) - 1.0));
        }
        CHECK(closest > 1e-6);
        try {
            (void)derive_config(1.0, 2.0, Branch::LpInf);
            FAIL("expected BranchDegenerate");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::BranchDegenerate);
        }
    }
    SECTION("LpInf for k beyond the Dirichlet critical value goes below -1") {
        const auto cfg = derive_config(2.0, 2.0, Branch::LpInf);
        CHECK(cfg.alpha() == Approx(principal_alpha(2.0) - 2.0).epsilon(1e-15));
        CHECK(cfg.alpha() > -1.5);
        CHECK(cfg.alpha() < -1.0);
    }
    SECTION("invalid exponents") {
        for (double p : {1.0, 0.5, -2.0, std::numeric_limits<double>::infinity()}) {
            try {
                (void)derive_config(0.3, p, Branch::H1);
                FAIL("expected InvalidExponent");
            } catch (const Error& e) {
                CHECK(e.kind() == ErrorKind::InvalidExponent);
            }
        }
    }
}

TEST_CASE("config invariants over random parameters", "[config][property]") {
    std::mt19937_64 rng(20261019);
    std::uniform_real_distribution<double> kdist(-6.0, 6.0);
    std::uniform_real_distribution<double> pdist(1.05, 8.0);
    for (int trial = 0; trial < 2000; ++trial) {
        const double k = kdist(rng);
        const double p = pdist(rng);
        const auto h1 = derive_config(k, p, Branch::H1);
        CHECK(1.0 / h1.p() + 1.0 / h1.q() == Approx(1.0).epsilon(1e-15));
        CHECK(std::abs(k_from_alpha(h1.alpha()) - k) <= 1e-14 * std::max(1.0, std::abs(k)));
        CHECK(h1.alpha() > -1.0);
        CHECK(h1.alpha() < 1.0);
        if (at_threshold(Problem::Dirichlet, k, p, 1e-9)) {
            continue;
        }
        const auto lp = derive_config(k, p, Branch::LpInf);
        const auto [lo, hi] = lp.branch_interval();
        CHECK(lp.alpha() > lo);
        CHECK(lp.alpha() < hi);
        CHECK(std::abs(k_from_alpha(lp.alpha()) - k) <= 1e-14 * std::max(1.0, std::abs(k)));
        const double diff = std::abs(lp.alpha() - h1.alpha());
        CHECK((diff == 0.0 || diff == Approx(2.0).epsilon(1e-15)));
    }
}

TEST_CASE("classify follows the one-sided and two-sided statements", "[config]") {
    SECTION("Dirichlet k = 2, p = 2") {
        const auto r = classify(Problem::Dirichlet, 2.0, 2.0);
        CHECK(r[0].sense == Sense::H1);
        CHECK(r[0].status == Status::Fails);
        CHECK(r[1].status == Status::WellPosed);
        CHECK(r[0].threshold_value == Approx(1.0));
    }
    SECTION("Neumann k = 0, p = 3") {
        const auto r = classify(Problem::Neumann, 0.0, 3.0);
        CHECK(r[0].status == Status::Unknown);
        CHECK(r[1].status == Status::WellPosed);
    }
    SECTION("Regularity k = -1, p = 2") {
        const auto r = classify(Problem::Regularity, -1.0, 2.0);
        CHECK(r[0].status == Status::Threshold);
        CHECK(r[1].status == Status::Threshold);
    }
    SECTION("Regularity fails below, unknown above") {
        CHECK(classify(Problem::Regularity, -1.5, 2.0)[0].status == Status::Fails);
        CHECK(classify(Problem::Regularity, -0.5, 2.0)[0].status == Status::Unknown);
    }
    SECTION("Dirichlet threshold at p = 4 is tan(3 pi / 8)") {
        CHECK(threshold(Problem::Dirichlet, 4.0) == Approx(std::tan(3.0 * std::numbers::pi / 8.0)));
    }
    SECTION("H1 sense never reports WellPosed") {
        for (double k = -3.0; k <= 3.0; k += 0.1) {
            for (auto pr : {Problem::Dirichlet, Problem::Regularity, Problem::Neumann}) {
                CHECK(classify(pr, k, 2.5)[0].status != Status::WellPosed);
            }
        }
    }
    SECTION("invalid exponent") {
        CHECK_THROWS_AS(classify(Problem::Neumann, 0.0, 1.0), Error);
    }
}

TEST_CASE("Dirichlet threshold at p equals Neumann threshold at q", "[config][property]") {
    for (double p : {1.2, 1.5, 2.0, 3.0, 4.5, 10.0}) {
        const double q = conjugate_exponent(p);
        CHECK(threshold(Problem::Dirichlet, p) == Approx(threshold(Problem::Neumann, q)).epsilon(1e-14));
    }
}
