#pragma once

#include "halfplane/error.hpp"

#include <fftw3.h>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <mutex>
#include <numbers>
#include <vector>

namespace halfplane {

/// Uniform grid tau_j = tau0 + j h on the log-line, x_j = e^{tau_j}.
struct LogGrid {
    double tau0 = -40.0;
    double h = 0.02;
    std::size_t n = 4096;

    [[nodiscard]] double tau(std::size_t j) const { return tau0 + h * static_cast<double>(j); }
    [[nodiscard]] double x(std::size_t j) const { return std::exp(tau(j)); }
    [[nodiscard]] double tau_end() const { return tau(n - 1); }

    static LogGrid spanning(double tau_min, double tau_max, std::size_t n) {
        if (n < 8 || !(tau_max > tau_min)) {
            throw Error(ErrorKind::InvalidArgument, "log grid needs n >= 8 and tau_max > tau_min");
        }
        return LogGrid{tau_min, (tau_max - tau_min) / static_cast<double>(n - 1), n};
    }
};

using Symbol = std::function<std::complex<double>(double)>;

namespace detail {

inline std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

// In-place complex DFT of the given sign on v.
inline void dft(std::vector<std::complex<double>>& v, int sign) {
    auto* data = reinterpret_cast<fftw_complex*>(v.data());
    fftw_plan plan;
    {
        std::lock_guard lock(fftw_planner_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(v.size()), data, data, sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
}

}  // namespace detail

/// Discrete realization of the Fourier multiplier with symbol m on uniformly sampled g:
/// (m(D) g)^(xi) = m(xi) g^(xi), with g^(xi) = int g(tau) e^{-i xi tau} dtau.
/// The samples are zero-padded to `padding` times their length before the transform; padding 1
/// gives the periodic realization, for which composition is exactly multiplicative.
inline std::vector<std::complex<double>> log_line_multiplier_apply(const std::vector<std::complex<double>>& g,
                                                                   double h, const Symbol& m, int padding = 4,
                                                                   double leak_tolerance = 1e-10) {
    const std::size_t n = g.size();
    if (n < 2 || !(h > 0.0) || padding < 1) {
        throw Error(ErrorKind::InvalidArgument, "multiplier needs at least two samples, h > 0, padding >= 1");
    }
    double peak = 0.0;
    for (const auto& v : g) {
        peak = std::max(peak, std::abs(v));
    }
    if (peak == 0.0) {
        return std::vector<std::complex<double>>(n);
    }
    const double edge = std::max(std::abs(g.front()), std::abs(g.back()));
    if (edge > leak_tolerance * peak) {
        throw Error(ErrorKind::WindowLeak, "samples do not decay at the ends of the log-line window");
    }
    const std::size_t big = n * static_cast<std::size_t>(padding);
    std::vector<std::complex<double>> w(big);
    std::copy(g.begin(), g.end(), w.begin());
    detail::dft(w, FFTW_FORWARD);
    const double dxi = 2.0 * std::numbers::pi / (static_cast<double>(big) * h);
    for (std::size_t j = 0; j < big; ++j) {
        const auto sj = static_cast<std::ptrdiff_t>(j);
        const auto half = static_cast<std::ptrdiff_t>(big / 2);
        std::complex<double> sym;
        if (big % 2 == 0 && sj == half) {
            sym = 0.5 * (m(dxi * static_cast<double>(half)) + m(-dxi * static_cast<double>(half)));
        } else {
            sym = m(dxi * static_cast<double>(sj <= half ? sj : sj - static_cast<std::ptrdiff_t>(big)));
        }
        w[j] *= sym;
    }
    detail::dft(w, FFTW_BACKWARD);
    std::vector<std::complex<double>> out(n);
    const double scale = 1.0 / static_cast<double>(big);
    for (std::size_t j = 0; j < n; ++j) {
        out[j] = w[j] * scale;
    }
    return out;
}

/// Real-valued function on (0, inf) stored as samples F_j = f(e^{tau_j}) and evaluated by a cubic
/// B-spline in tau of the weighted samples e^{weight tau_j} F_j. Outside the window it continues as
/// a power law |x|^power from the last sample (or vanishes when the exponent is NaN).
class LogLineFunction {
public:
    LogLineFunction() = default;

    LogLineFunction(LogGrid grid, std::vector<double> values, double left_power, double right_power,
                    double weight = 0.0)
        : grid_(grid),
          values_(std::move(values)),
          left_power_(left_power),
          right_power_(right_power),
          weight_(weight) {
        if (values_.size() != grid_.n) {
            throw Error(ErrorKind::InvalidArgument, "sample count does not match the log grid");
        }
        std::vector<double> w(values_.size());
        for (std::size_t j = 0; j < w.size(); ++j) {
            w[j] = std::exp(weight_ * grid_.tau(j)) * values_[j];
        }
        spline_ = std::make_shared<boost::math::interpolators::cardinal_cubic_b_spline<double>>(
            w.begin(), w.end(), grid_.tau0, grid_.h);
    }

    [[nodiscard]] const LogGrid& grid() const noexcept { return grid_; }
    [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }

    double operator()(double x) const {
        if (!(x > 0.0)) {
            throw Error(ErrorKind::DomainError, "half-line function evaluated at x <= 0");
        }
        const double tau = std::log(x);
        if (tau < grid_.tau0) {
            return std::isnan(left_power_) ? 0.0 : values_.front() * std::exp(left_power_ * (tau - grid_.tau0));
        }
        if (tau > grid_.tau_end()) {
            return std::isnan(right_power_) ? 0.0
                                            : values_.back() * std::exp(right_power_ * (tau - grid_.tau_end()));
        }
        return std::exp(-weight_ * tau) * (*spline_)(tau);
    }

private:
    LogGrid grid_;
    std::vector<double> values_;
    double left_power_ = std::nan("");
    double right_power_ = std::nan("");
    double weight_ = 0.0;
    std::shared_ptr<boost::math::interpolators::cardinal_cubic_b_spline<double>> spline_;
};

/// Samples of g(tau) = e^{tau/p} f(e^tau): the L_p(R_+) to L_p(R) isometry.
template <class F>
std::vector<std::complex<double>> to_log_line(const F& f, const LogGrid& grid, double p) {
    std::vector<std::complex<double>> g(grid.n);
    for (std::size_t j = 0; j < grid.n; ++j) {
        g[j] = std::exp(grid.tau(j) / p) * f(grid.x(j));
    }
    return g;
}

/// Inverse of to_log_line: f(x_j) = e^{-tau_j/p} g_j (real parts).
inline std::vector<double> from_log_line(const std::vector<std::complex<double>>& g, const LogGrid& grid, double p) {
    std::vector<double> f(grid.n);
    for (std::size_t j = 0; j < grid.n; ++j) {
        f[j] = std::exp(-grid.tau(j) / p) * g[j].real();
    }
    return f;
}

}  // namespace halfplane
