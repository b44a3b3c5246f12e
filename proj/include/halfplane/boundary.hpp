#pragma once

#include "halfplane/error.hpp"
#include "halfplane/quadrature.hpp"
#include "halfplane/vec2.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace halfplane {

enum class SupportKind { Compact, AlgebraicDecay, ExponentialDecay };

/// Where the data live. For ExponentialDecay, [a, b] is a window outside which the data are
/// negligible in double precision; for AlgebraicDecay, |f(y)| ~ |y|^-rate.
struct SupportHint {
    SupportKind kind = SupportKind::ExponentialDecay;
    double a = -std::numeric_limits<double>::infinity();
    double b = std::numeric_limits<double>::infinity();
    double rate = 0.0;

    static SupportHint compact(double a, double b) { return {SupportKind::Compact, a, b, 0.0}; }
    static SupportHint exponential(double a, double b) { return {SupportKind::ExponentialDecay, a, b, 0.0}; }
    static SupportHint algebraic(double rate) {
        return {SupportKind::AlgebraicDecay, -std::numeric_limits<double>::infinity(),
                std::numeric_limits<double>::infinity(), rate};
    }
};

enum class Smoothness { Smooth, PiecewiseSmooth };

/// Scalar boundary function carried as an evaluator plus the metadata the quadrature needs.
template <class T = double>
class BasicBoundarySample {
public:
    using value_type = T;
    using Evaluator = std::function<T(double)>;

    BasicBoundarySample() : BasicBoundarySample(zero()) {}

    BasicBoundarySample(Evaluator f, SupportHint support, std::vector<double> breakpoints = {},
                        double feature_scale = 1.0, std::string name = "custom")
        : f_(std::move(f)),
          support_(support),
          breakpoints_(std::move(breakpoints)),
          feature_scale_(feature_scale),
          name_(std::move(name)),
          cache_(std::make_shared<Cache>()) {
        if (!f_) {
            throw Error(ErrorKind::InvalidArgument, "boundary sample needs an evaluator");
        }
        if (!(feature_scale_ > 0.0)) {
            throw Error(ErrorKind::InvalidArgument, "feature scale must be positive");
        }
        if (support_.kind == SupportKind::AlgebraicDecay && !(support_.rate > 0.0)) {
            throw Error(ErrorKind::InvalidArgument, "algebraic decay rate must be positive");
        }
        if (support_.kind != SupportKind::AlgebraicDecay && !(support_.b >= support_.a)) {
            throw Error(ErrorKind::InvalidArgument, "support window must satisfy a <= b");
        }
        std::sort(breakpoints_.begin(), breakpoints_.end());
    }

    static BasicBoundarySample zero() {
        BasicBoundarySample s([](double) { return T{}; }, SupportHint::compact(0.0, 0.0), {}, 1.0, "zero");
        s.zero_ = true;
        return s;
    }

    T operator()(double y) const { return f_(y); }

    [[nodiscard]] bool is_zero() const noexcept { return zero_; }
    [[nodiscard]] const SupportHint& support() const noexcept { return support_; }
    [[nodiscard]] const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
    [[nodiscard]] Smoothness smoothness() const noexcept {
        return breakpoints_.empty() ? Smoothness::Smooth : Smoothness::PiecewiseSmooth;
    }
    [[nodiscard]] double feature_scale() const noexcept { return feature_scale_; }
    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] const Evaluator& evaluator() const noexcept { return f_; }

    /// Integration limits (infinite for algebraic decay).
    [[nodiscard]] double lower() const noexcept { return support_.a; }
    [[nodiscard]] double upper() const noexcept { return support_.b; }
    /// Decay exponent at infinity; infinite for compact or exponentially decaying data.
    [[nodiscard]] double decay_rate() const noexcept {
        return support_.kind == SupportKind::AlgebraicDecay ? support_.rate : std::numeric_limits<double>::infinity();
    }

    [[nodiscard]] std::pair<double, double> domain() const noexcept { return {support_.a, support_.b}; }

    /// Leading exponent b of the data at the origin, |f(y)| ~ |y|^b as y -> 0 (0 for data that
    /// are bounded and nonzero there).
    [[nodiscard]] double origin_power() const noexcept { return origin_power_; }
    [[nodiscard]] BasicBoundarySample with_origin_power(double b) const {
        BasicBoundarySample out = *this;
        out.origin_power_ = b;
        return out;
    }

    /// Breakpoints for integrals against these data: declared kinks/jumps plus finite support ends.
    /// The origin is left to the caller, who knows the kernel's own exponent there.
    [[nodiscard]] std::vector<Breakpoint> quadrature_breakpoints() const {
        std::vector<Breakpoint> out;
        const double sc = 0.25 * feature_scale_;
        for (double b : breakpoints_) {
            if (b != 0.0) {
                out.push_back(Breakpoint{b, sc});
            }
        }
        if (support_.kind != SupportKind::AlgebraicDecay) {
            out.push_back(Breakpoint{support_.a, sc});
            out.push_back(Breakpoint{support_.b, sc});
        }
        return out;
    }

    /// y -> c f(y) with the same metadata.
    [[nodiscard]] BasicBoundarySample scaled(double c) const {
        auto f = f_;
        BasicBoundarySample out([f, c](double y) { return c * f(y); }, support_, breakpoints_, feature_scale_, name_);
        out.zero_ = zero_ || c == 0.0;
        out.origin_power_ = origin_power_;
        return out;
    }

    /// y -> f(lambda y).
    [[nodiscard]] BasicBoundarySample dilated(double lambda) const {
        if (!(lambda > 0.0)) {
            throw Error(ErrorKind::InvalidArgument, "dilation factor must be positive");
        }
        auto f = f_;
        SupportHint s = support_;
        if (s.kind != SupportKind::AlgebraicDecay) {
            s.a /= lambda;
            s.b /= lambda;
        }
        std::vector<double> bps;
        for (double b : breakpoints_) {
            bps.push_back(b / lambda);
        }
        BasicBoundarySample out([f, lambda](double y) { return f(lambda * y); }, s, bps, feature_scale_ / lambda,
                                name_ + "-dilated");
        out.zero_ = zero_;
        out.origin_power_ = origin_power_;
        return out;
    }

    /// The half-line piece y -> f(side * y), y > 0, as data on (0, inf).
    [[nodiscard]] BasicBoundarySample half_line(int side) const {
        auto f = f_;
        SupportHint s = support_;
        if (s.kind != SupportKind::AlgebraicDecay) {
            const double a = side > 0 ? s.a : -s.b;
            const double b = side > 0 ? s.b : -s.a;
            s.a = std::max(a, 0.0);
            s.b = std::max(b, 0.0);
        } else {
            s.a = 0.0;
        }
        std::vector<double> bps;
        for (double b : breakpoints_) {
            if (side * b > 0.0) {
                bps.push_back(side * b);
            }
        }
        BasicBoundarySample out([f, side](double y) { return f(side * y); }, s, bps, feature_scale_,
                                name_ + (side > 0 ? "+" : "-"));
        out.zero_ = zero_ || (s.kind != SupportKind::AlgebraicDecay && !(s.b > s.a));
        out.origin_power_ = origin_power_;
        return out;
    }

    /// Graded sample grid: log-spaced cell centers on each side of 0 from 1e-8 times the feature
    /// scale out to the support end (1e3 feature scales for algebraic data), never touching 0 or a
    /// breakpoint. Cached.
    [[nodiscard]] const std::pair<std::vector<double>, std::vector<T>>& samples(std::size_t per_side = 400) const {
        std::lock_guard lock(cache_->mutex);
        if (cache_->per_side != per_side) {
            std::vector<double> nodes;
            const double lo = std::log(1e-8 * feature_scale_);
            double reach = 1e3 * feature_scale_;
            if (support_.kind != SupportKind::AlgebraicDecay) {
                reach = std::max({std::abs(support_.a), std::abs(support_.b), feature_scale_});
            }
            const double hi = std::log(reach);
            const double step = (hi - lo) / static_cast<double>(per_side);
            for (int side : {-1, 1}) {
                for (std::size_t j = 0; j < per_side; ++j) {
                    const double y = side * std::exp(lo + (static_cast<double>(j) + 0.5) * step);
                    if (support_.kind != SupportKind::AlgebraicDecay && (y < support_.a || y > support_.b)) {
                        continue;
                    }
                    const bool on_break = std::any_of(breakpoints_.begin(), breakpoints_.end(),
                                                      [y](double b) { return y == b; });
                    if (!on_break) {
                        nodes.push_back(y);
                    }
                }
            }
            std::sort(nodes.begin(), nodes.end());
            std::vector<T> values;
            values.reserve(nodes.size());
            for (double y : nodes) {
                const T v = f_(y);
                if (!all_finite(v)) {
                    throw Error(ErrorKind::DomainError, name_ + " is not finite at a grid node");
                }
                values.push_back(v);
            }
            cache_->data = {std::move(nodes), std::move(values)};
            cache_->per_side = per_side;
        }
        return cache_->data;
    }

private:
    struct Cache {
        std::mutex mutex;
        std::size_t per_side = 0;
        std::pair<std::vector<double>, std::vector<T>> data;
    };

    Evaluator f_;
    SupportHint support_;
    std::vector<double> breakpoints_;
    double feature_scale_ = 1.0;
    std::string name_;
    bool zero_ = false;
    double origin_power_ = 0.0;
    std::shared_ptr<Cache> cache_;
};

using BoundarySample = BasicBoundarySample<double>;

/// f0 e0 + f1 e1 on the boundary line.
template <class T = double>
struct BasicBoundaryVectorField {
    BasicBoundarySample<T> f0 = BasicBoundarySample<T>::zero();
    BasicBoundarySample<T> f1 = BasicBoundarySample<T>::zero();

    Vec2<T> operator()(double y) const { return {f0(y), f1(y)}; }

    /// Union of the two integration domains.
    [[nodiscard]] std::pair<double, double> domain() const {
        if (f0.is_zero()) {
            return {f1.lower(), f1.upper()};
        }
        if (f1.is_zero()) {
            return {f0.lower(), f0.upper()};
        }
        return {std::min(f0.lower(), f1.lower()), std::max(f0.upper(), f1.upper())};
    }
    [[nodiscard]] double decay_rate() const {
        double r = std::numeric_limits<double>::infinity();
        if (!f0.is_zero()) {
            r = std::min(r, f0.decay_rate());
        }
        if (!f1.is_zero()) {
            r = std::min(r, f1.decay_rate());
        }
        return r;
    }
    [[nodiscard]] double feature_scale() const {
        double s = std::numeric_limits<double>::infinity();
        if (!f0.is_zero()) {
            s = std::min(s, f0.feature_scale());
        }
        if (!f1.is_zero()) {
            s = std::min(s, f1.feature_scale());
        }
        return std::isfinite(s) ? s : 1.0;
    }
    [[nodiscard]] bool is_zero() const { return f0.is_zero() && f1.is_zero(); }
    [[nodiscard]] double origin_power() const {
        double b = std::numeric_limits<double>::infinity();
        if (!f0.is_zero()) {
            b = std::min(b, f0.origin_power());
        }
        if (!f1.is_zero()) {
            b = std::min(b, f1.origin_power());
        }
        return std::isfinite(b) ? b : 0.0;
    }
    [[nodiscard]] std::vector<Breakpoint> quadrature_breakpoints() const {
        std::vector<Breakpoint> out;
        for (const auto* c : {&f0, &f1}) {
            if (!c->is_zero()) {
                auto b = c->quadrature_breakpoints();
                out.insert(out.end(), b.begin(), b.end());
            }
        }
        return out;
    }
};

using BoundaryVectorField = BasicBoundaryVectorField<double>;

namespace presets {

inline BoundarySample gaussian(double center = 0.0, double width = 1.0) {
    return BoundarySample(
        [center, width](double y) {
            const double s = (y - center) / width;
            return std::exp(-s * s);
        },
        SupportHint::exponential(center - 27.0 * width, center + 27.0 * width), {}, width, "gaussian");
}

/// C-infinity bump e * exp(-1/(1 - s^2)), s = (y - center)/radius; peak value 1.
inline BoundarySample bump(double center = 0.0, double radius = 1.0) {
    return BoundarySample(
        [center, radius](double y) {
            const double s = (y - center) / radius;
            return std::abs(s) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - s * s)) : 0.0;
        },
        SupportHint::compact(center - radius, center + radius), {}, radius, "bump");
}

inline BoundarySample indicator(double a = 1.0, double b = 2.0) {
    return BoundarySample([a, b](double y) { return (y >= a && y <= b) ? 1.0 : 0.0; }, SupportHint::compact(a, b),
                          {a, b}, b - a, "indicator");
}

/// 1/(pi (1 + y^2)).
inline BoundarySample rational() {
    return BoundarySample([](double y) { return 1.0 / (std::numbers::pi * (1.0 + y * y)); },
                          SupportHint::algebraic(2.0), {}, 1.0, "rational");
}

inline BoundarySample hat(double center = 0.0, double radius = 1.0) {
    return BoundarySample([center, radius](double y) { return std::max(0.0, 1.0 - std::abs(y - center) / radius); },
                          SupportHint::compact(center - radius, center + radius), {center}, radius, "hat");
}

/// Sum of three Gaussians with centers in [-2, 2], widths in [0.4, 1.2] and amplitudes in [-1, 1]
/// drawn from a generator seeded with `seed`.
inline BoundarySample gaussian_mixture(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> center(-2.0, 2.0);
    std::uniform_real_distribution<double> width(0.4, 1.2);
    std::uniform_real_distribution<double> amplitude(-1.0, 1.0);
    std::array<std::array<double, 3>, 3> terms{};
    double lo = HUGE_VAL;
    double hi = -HUGE_VAL;
    double narrow = HUGE_VAL;
    for (auto& term : terms) {
        term = {center(rng), width(rng), amplitude(rng)};
        lo = std::min(lo, term[0] - 27.0 * term[1]);
        hi = std::max(hi, term[0] + 27.0 * term[1]);
        narrow = std::min(narrow, term[1]);
    }
    return BoundarySample(
        [terms](double y) {
            double v = 0.0;
            for (const auto& [c, w, a] : terms) {
                const double s = (y - c) / w;
                v += a * std::exp(-s * s);
            }
            return v;
        },
        SupportHint::exponential(lo, hi), {}, narrow, "gaussian-mixture");
}

inline BoundarySample by_name(const std::string& name) {
    if (name == "gaussian") {
        return gaussian();
    }
    if (name == "bump") {
        return bump();
    }
    if (name == "indicator") {
        return indicator();
    }
    if (name == "rational") {
        return rational();
    }
    if (name == "hat") {
        return hat();
    }
    throw Error(ErrorKind::InvalidArgument, "unknown preset '" + name + "'");
}

}  // namespace presets

}  // namespace halfplane
