#pragma once

#include "halfplane/error.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>

namespace halfplane {

/// Which solution of k = tan(pi alpha / 2) is used.
/// H1 is the energy (Lax-Milgram) solution, alpha in (-1, 1).
/// LpInf is the boundary-equation solution, alpha in (1/q - 2, 1/q).
enum class Branch { H1, LpInf };

enum class Problem { Dirichlet, Regularity, Neumann };

enum class Sense { H1, LpInf };

enum class Status { WellPosed, Fails, Threshold, Unknown };

/// Band used to decide that k sits exactly on a critical value.
inline constexpr double kThresholdTolerance = 1e-12;

/// Accretivity constant of A_k: the symmetric part is the identity.
inline constexpr double kAccretivity = 1.0;

constexpr std::string_view to_string(Branch b) { return b == Branch::H1 ? "h1" : "lpinf"; }

constexpr std::string_view to_string(Problem p) {
    switch (p) {
    case Problem::Dirichlet: return "dirichlet";
    case Problem::Regularity: return "regularity";
    case Problem::Neumann: return "neumann";
    }
    return "?";
}

constexpr std::string_view to_string(Sense s) { return s == Sense::H1 ? "h1" : "lpinf"; }

constexpr std::string_view to_string(Status s) {
    switch (s) {
    case Status::WellPosed: return "WellPosed";
    case Status::Fails: return "Fails";
    case Status::Threshold: return "Threshold";
    case Status::Unknown: return "Unknown";
    }
    return "?";
}

inline void check_exponent(double p) {
    if (!(p > 1.0) || !std::isfinite(p)) {
        throw Error(ErrorKind::InvalidExponent, "p must lie in (1, inf), got " + std::to_string(p));
    }
}

/// Dual exponent q with 1/p + 1/q = 1.
inline double conjugate_exponent(double p) {
    check_exponent(p);
    return p / (p - 1.0);
}

/// tan(pi alpha / 2), reduced modulo the period 2 first so that alpha and alpha - 2n
/// give bit-identical results.
inline double k_from_alpha(double alpha) {
    const double reduced = alpha - 2.0 * std::round(alpha / 2.0);
    return std::tan(std::numbers::pi * reduced / 2.0);
}

/// The solution of k = tan(pi alpha / 2) in (-1, 1).
inline double principal_alpha(double k) { return 2.0 / std::numbers::pi * std::atan(k); }

/// Immutable parameter set (k, p, q, alpha, branch). alpha is stored so the branch is fixed.
class ProblemConfig {
public:
    static ProblemConfig derive(double k, double p, Branch branch) {
        check_exponent(p);
        if (!std::isfinite(k)) {
            throw Error(ErrorKind::InvalidArgument, "k must be finite");
        }
        const double q = conjugate_exponent(p);
        const double a0 = principal_alpha(k);
        if (branch == Branch::H1) {
            return ProblemConfig(k, p, q, a0, branch);
        }
        // The LpInf interval has length 2 = period of tan(pi a / 2); both open endpoints map
        // to k = tan(pi / (2q)).
        const double critical = std::tan(std::numbers::pi / (2.0 * q));
        if (std::abs(k - critical) < kThresholdTolerance) {
            throw Error(ErrorKind::BranchDegenerate,
                        "k = tan(pi/(2q)) puts alpha on the endpoint of (1/q - 2, 1/q)");
        }
        const double lo = 1.0 / q - 2.0;
        const double hi = 1.0 / q;
        for (int n = -2; n <= 2; ++n) {
            const double a = a0 + 2.0 * n;
            if (a > lo && a < hi) {
                return ProblemConfig(k, p, q, a, branch);
            }
        }
        throw Error(ErrorKind::BranchDegenerate, "no alpha in (1/q - 2, 1/q) solves k = tan(pi alpha/2)");
    }

    [[nodiscard]] double k() const noexcept { return k_; }
    [[nodiscard]] double p() const noexcept { return p_; }
    [[nodiscard]] double q() const noexcept { return q_; }
    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] Branch branch() const noexcept { return branch_; }

    /// Open interval the stored alpha belongs to.
    [[nodiscard]] std::pair<double, double> branch_interval() const noexcept {
        if (branch_ == Branch::H1) {
            return {-1.0, 1.0};
        }
        return {1.0 / q_ - 2.0, 1.0 / q_};
    }

    /// Same k and p on the other branch (may throw BranchDegenerate).
    [[nodiscard]] ProblemConfig with_branch(Branch b) const { return derive(k_, p_, b); }

private:
    ProblemConfig(double k, double p, double q, double alpha, Branch branch)
        : k_(k), p_(p), q_(q), alpha_(alpha), branch_(branch) {}

    double k_;
    double p_;
    double q_;
    double alpha_;
    Branch branch_;
};

inline ProblemConfig derive_config(double k, double p, Branch branch) {
    return ProblemConfig::derive(k, p, branch);
}

/// Critical k of each problem: tan(pi/(2q)) (Dirichlet), -tan(pi/(2p)) (regularity),
/// tan(pi/(2p)) (Neumann). The same values serve both senses.
inline double threshold(Problem problem, double p) {
    const double q = conjugate_exponent(p);
    switch (problem) {
    case Problem::Dirichlet: return std::tan(std::numbers::pi / (2.0 * q));
    case Problem::Regularity: return -std::tan(std::numbers::pi / (2.0 * p));
    case Problem::Neumann: return std::tan(std::numbers::pi / (2.0 * p));
    }
    return 0.0;
}

struct WellposednessReport {
    Problem problem;
    Sense sense;
    Status status;
    double threshold_value;
};

inline bool at_threshold(Problem problem, double k, double p, double band = kThresholdTolerance) {
    return std::abs(k - threshold(problem, p)) < band;
}

/// Classification in both senses: element 0 is the H1 sense, element 1 the LpInf sense.
/// The H1 statement is one-sided (failure beyond the critical value); the other side is Unknown.
inline std::array<WellposednessReport, 2> classify(Problem problem, double k, double p) {
    const double thr = threshold(problem, p);
    const bool equal = std::abs(k - thr) < kThresholdTolerance;

    Status h1 = Status::Unknown;
    if (equal) {
        h1 = Status::Threshold;
    } else {
        const bool beyond = problem == Problem::Regularity ? k < thr : k > thr;
        h1 = beyond ? Status::Fails : Status::Unknown;
    }
    const Status lp = equal ? Status::Threshold : Status::WellPosed;
    return {WellposednessReport{problem, Sense::H1, h1, thr},
            WellposednessReport{problem, Sense::LpInf, lp, thr}};
}

}  // namespace halfplane
