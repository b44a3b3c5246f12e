#include "halfplane/halfplane.hpp"

#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <string>
#include <vector>

using namespace halfplane;

namespace {

struct Criterion {
    int id;
    std::string title;
    std::function<std::vector<VerificationReport>()> run;
};

/// Runs one criterion; any exception counts as a failure.
bool report(const Criterion& c) {
    std::vector<VerificationReport> parts;
    std::string failure;
    try {
        parts = c.run();
    } catch (const std::exception& e) {
        failure = e.what();
    }
    bool ok = failure.empty() && !parts.empty();
    const VerificationReport* worst = nullptr;
    double worst_ratio = -1.0;
    double total_ms = 0.0;
    for (const auto& r : parts) {
        ok = ok && r.passed;
        total_ms += r.runtime_ms;
        const double ratio = !r.passed ? std::numeric_limits<double>::infinity()
                             : r.tolerance > 0.0 ? r.measured_error / r.tolerance
                                                 : 0.0;
        if (ratio > worst_ratio) {
            worst_ratio = ratio;
            worst = &r;
        }
    }
    const std::string worst_name =
        worst == nullptr ? "none"
                         : worst->check_name + " [" + parameter_text(worst->parameters) +
                               "] err=" + format_number(worst->measured_error) + " tol=" + format_number(worst->tolerance);
    std::printf("%-4s criterion %2d  %-34s %zu checks, %.1f s; worst: %s%s\n", ok ? "PASS" : "FAIL", c.id,
                c.title.c_str(), parts.size(), total_ms / 1000.0, worst_name.c_str(),
                failure.empty() ? "" : (" exception: " + failure).c_str());
    if (!ok) {
        for (const auto& r : parts) {
            if (!r.passed) {
                std::printf("       failed: %s [%s] err=%s tol=%s %s\n", r.check_name.c_str(),
                            parameter_text(r.parameters).c_str(), format_number(r.measured_error).c_str(),
                            format_number(r.tolerance).c_str(), r.note.c_str());
            }
        }
    }
    std::fflush(stdout);
    return ok;
}

}  // namespace

int main() {
    using namespace checks;
    const std::vector<double> ps{1.5, 2.0, 3.0};
    const std::vector<Problem> problems{Problem::Dirichlet, Problem::Neumann, Problem::Regularity};

    const std::vector<Criterion> criteria{
        {1, "classical limit", [] { return std::vector{classical_limit()}; }},
        {2, "axis formula", [] { return std::vector{axis_formula()}; }},
        {3, "operator inverse",
         [] {
             return std::vector{inverse_convergence(1.0, 2.0), inverse_identity(0.5, 1.5), inverse_identity(-0.7, 3.0),
                                inverse_identity(2.0, 2.0)};
         }},
        {4, "multiplier identity",
         [] { return std::vector{multiplier_identity(1.0, 2.0), multiplier_identity(0.5, 1.5), multiplier_identity(-0.7, 3.0)}; }},
        {5, "residue lemma", [] { return std::vector{residue_lemma()}; }},
        {6, "quadrant identity", [] { return std::vector{quadrant_identity()}; }},
        {7, "PDE certification",
         [] {
             std::vector<VerificationReport> out;
             for (Branch b : {Branch::H1, Branch::LpInf}) {
                 out.push_back(pde_order(1.0, 1.5, b));
                 out.push_back(transmission(1.0, 1.5, b));
             }
             return out;
         }},
        {8, "signed harmonic measure dichotomy",
         [] { return std::vector{kernel_positivity(), kernel_negative_witness(-1.3), axis_blowup(-1.3)}; }},
        {9, "energy dichotomy", [] { return std::vector{energy_finite(0.4), energy_divergent(-1.3)}; }},
        {10, "trace convergence", [] { return std::vector{trace_dirichlet(), trace_neumann(), trace_regularity()}; }},
        {11, "threshold behavior",
         [&] {
             std::vector<VerificationReport> out;
             for (double p : ps) {
                 for (Problem pr : problems) {
                     out.push_back(threshold_refusal(pr, p));
                     out.push_back(threshold_neighbors(pr, p));
                 }
             }
             return out;
         }},
        {12, "Dunford reconstruction", [] { return std::vector{dunford_sign_check(), dunford_hilbert(), dunford_scalar_check()}; }},
        {13, "figure reproduction",
         [] {
             return std::vector{kernel_table_properties(), axis_formula({-1.5, -0.75, 0.0, 0.75}),
                                kernel_positivity({-0.75, 0.0, 0.75}), kernel_negative_witness(-1.5)};
         }},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        failed += report(c) ? 0 : 1;
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
    return failed == 0 ? 0 : 1;
}
