#pragma once

#include "halfplane/config.hpp"
#include "halfplane/error.hpp"
#include "halfplane/format.hpp"
#include "halfplane/operators.hpp"
#include "halfplane/solver.hpp"
#include "halfplane/verify.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <complex>
#include <cstdio>
#include <cmath>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace halfplane {

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) {
        out.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

}  // namespace detail

/// Header t,x,U (potential) or t,x,F0,F1 (gradient); one row per node, t-major.
inline void write_field_csv(std::ostream& out, const FieldGrid& g) {
    g.validate();
    const bool potential = g.kind == FieldKind::Potential;
    out << (potential ? "t,x,U\n" : "t,x,F0,F1\n");
    for (std::size_t i = 0; i < g.t.size(); ++i) {
        for (std::size_t j = 0; j < g.x.size(); ++j) {
            const auto& v = g.at(i, j);
            out << format_number(g.t[i]) << ',' << format_number(g.x[j]) << ',' << format_number(v.v0);
            if (!potential) {
                out << ',' << format_number(v.v1);
            }
            out << '\n';
        }
    }
}

/// Inverse of write_field_csv.
inline FieldGrid read_field_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw Error(ErrorKind::InvalidArgument, "empty field CSV");
    }
    FieldGrid g;
    if (line == "t,x,U") {
        g.kind = FieldKind::Potential;
    } else if (line == "t,x,F0,F1") {
        g.kind = FieldKind::Gradient;
    } else {
        throw Error(ErrorKind::InvalidArgument, "unknown field CSV header '" + line + "'");
    }
    const std::size_t cols = g.kind == FieldKind::Potential ? 3 : 4;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        const auto cells = detail::split_csv_line(line);
        if (cells.size() != cols) {
            throw Error(ErrorKind::InvalidArgument, "field CSV row with " + std::to_string(cells.size()) + " cells");
        }
        const double t = parse_number(cells[0]);
        const double x = parse_number(cells[1]);
        if (g.t.empty() || g.t.back() != t) {
            g.t.push_back(t);
        }
        if (g.t.size() == 1) {
            g.x.push_back(x);
        } else if (x != g.x[(g.values.size()) % g.x.size()]) {
            throw Error(ErrorKind::InvalidArgument, "field CSV rows do not form a tensor grid");
        }
        g.values.push_back({parse_number(cells[2]), cols == 4 ? parse_number(cells[3]) : 0.0});
    }
    g.validate();
    return g;
}

inline void write_kernel_table_csv(std::ostream& out, const std::vector<KernelSample>& rows) {
    out << "alpha,y,P\n";
    for (const auto& r : rows) {
        out << format_number(r.alpha) << ',' << format_number(r.y) << ',' << format_number(r.value) << '\n';
    }
}

inline nlohmann::json to_json(const std::vector<KernelSample>& rows) {
    auto arr = nlohmann::json::array();
    for (const auto& r : rows) {
        arr.push_back({{"alpha", r.alpha}, {"y", r.y}, {"P", r.value}});
    }
    return arr;
}

struct SpectrumRow {
    double xi = 0.0;
    std::complex<double> m;
    double identity_residual = 0.0;
};

/// m_gamma on a xi grid with the residual of (1 - k m_{1/p})(1 + k m_{alpha + 1/p}) = 1 + k^2.
inline std::vector<SpectrumRow> spectrum_table(double gamma, double k, double p, const std::vector<double>& xis) {
    const auto m = multiplier_of_Ktilde(gamma);
    std::vector<SpectrumRow> out;
    std::optional<std::pair<MultiplierSymbol, MultiplierSymbol>> pair;
    if (std::abs(k + std::tan(std::numbers::pi / (2.0 * p))) >= kThresholdTolerance) {
        pair = std::pair{multiplier_of_Ktilde(1.0 / p), multiplier_of_Ktilde(range_alpha(k, p) + 1.0 / p)};
    }
    for (double xi : xis) {
        SpectrumRow r{xi, m(xi), std::nan("")};
        if (pair) {
            r.identity_residual =
                std::abs((1.0 - k * pair->first(xi)) * (1.0 + k * pair->second(xi)) - (1.0 + k * k));
        }
        out.push_back(r);
    }
    return out;
}

inline void write_spectrum_csv(std::ostream& out, const std::vector<SpectrumRow>& rows) {
    out << "xi,re_m,im_m,identity_residual\n";
    for (const auto& r : rows) {
        out << format_number(r.xi) << ',' << format_number(r.m.real()) << ',' << format_number(r.m.imag()) << ','
            << format_number(r.identity_residual) << '\n';
    }
}

inline nlohmann::json to_json(const std::vector<SpectrumRow>& rows) {
    auto arr = nlohmann::json::array();
    for (const auto& r : rows) {
        arr.push_back({{"xi", r.xi},
                       {"re_m", r.m.real()},
                       {"im_m", r.m.imag()},
                       {"identity_residual", std::isnan(r.identity_residual) ? nlohmann::json() : nlohmann::json(r.identity_residual)}});
    }
    return arr;
}

inline nlohmann::json to_json(const FieldGrid& g) {
    nlohmann::json j;
    j["kind"] = std::string(to_string(g.kind));
    j["t"] = g.t;
    j["x"] = g.x;
    auto v0 = nlohmann::json::array();
    auto v1 = nlohmann::json::array();
    for (const auto& v : g.values) {
        v0.push_back(v.v0);
        v1.push_back(v.v1);
    }
    if (g.kind == FieldKind::Potential) {
        j["U"] = v0;
    } else {
        j["F0"] = v0;
        j["F1"] = v1;
    }
    return j;
}

inline nlohmann::json to_json(const ProblemConfig& cfg) {
    return {{"k", cfg.k()},
            {"p", cfg.p()},
            {"q", cfg.q()},
            {"alpha", cfg.alpha()},
            {"branch", std::string(to_string(cfg.branch()))}};
}

inline nlohmann::json to_json(const WellposednessReport& r) {
    return {{"problem", std::string(to_string(r.problem))},
            {"sense", std::string(to_string(r.sense))},
            {"status", std::string(to_string(r.status))},
            {"threshold", r.threshold_value}};
}

inline nlohmann::json to_json(const VerificationReport& r) {
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [k, v] : r.parameters) {
        params[k] = v;
    }
    auto num = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(format_number(v)); };
    return {{"check_name", r.check_name},
            {"parameters", params},
            {"measured_error", num(r.measured_error)},
            {"tolerance", num(r.tolerance)},
            {"passed", r.passed},
            {"expected_failure", r.expected_failure},
            {"runtime_ms", r.runtime_ms},
            {"note", r.note}};
}

inline nlohmann::json to_json(const std::vector<VerificationReport>& reports) {
    auto arr = nlohmann::json::array();
    for (const auto& r : reports) {
        arr.push_back(to_json(r));
    }
    return arr;
}

inline std::string parameter_text(const ReportParameters& params) {
    std::string out;
    for (const auto& [k, v] : params) {
        out += (out.empty() ? "" : " ") + k + "=" + v;
    }
    return out;
}

inline void write_reports_csv(std::ostream& out, const std::vector<VerificationReport>& reports) {
    out << "check_name,parameters,measured_error,tolerance,passed,expected_failure,runtime_ms\n";
    for (const auto& r : reports) {
        out << r.check_name << ',' << parameter_text(r.parameters) << ',' << format_number(r.measured_error) << ','
            << format_number(r.tolerance) << ',' << (r.passed ? "true" : "false") << ','
            << (r.expected_failure ? "true" : "false") << ',' << format_number(r.runtime_ms) << '\n';
    }
}

/// Human-readable table, one line per check.
inline void write_summary(std::ostream& out, const std::vector<VerificationReport>& reports) {
    std::size_t passed = 0;
    for (const auto& r : reports) {
        passed += r.passed ? 1 : 0;
        char line[512];
        std::snprintf(line, sizeof(line), "%-4s %-30s err=%-11.3e tol=%-9.2e %s%s", r.passed ? "ok" : "FAIL",
                      r.check_name.c_str(), r.measured_error, r.tolerance, parameter_text(r.parameters).c_str(),
                      r.expected_failure ? " [expected failure]" : "");
        out << line << '\n';
    }
    out << passed << '/' << reports.size() << " checks passed\n";
}

struct SvgCurve {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

/// Self-contained line plot: one polyline per curve, axes with tick labels and a legend.
inline void write_svg_plot(std::ostream& out, const std::vector<SvgCurve>& curves, const std::string& title,
                           const std::string& xlabel, const std::string& ylabel) {
    constexpr double W = 720.0;
    constexpr double H = 480.0;
    constexpr double L = 70.0;
    constexpr double R = 170.0;
    constexpr double T = 40.0;
    constexpr double B = 50.0;
    double x0 = std::numeric_limits<double>::infinity();
    double x1 = -x0;
    double y0 = x0;
    double y1 = -x0;
    for (const auto& c : curves) {
        for (std::size_t i = 0; i < c.x.size(); ++i) {
            if (!std::isfinite(c.y[i])) {
                continue;
            }
            x0 = std::min(x0, c.x[i]);
            x1 = std::max(x1, c.x[i]);
            y0 = std::min(y0, c.y[i]);
            y1 = std::max(y1, c.y[i]);
        }
    }
    if (!(x1 > x0)) {
        x0 -= 1.0;
        x1 += 1.0;
    }
    if (!(y1 > y0)) {
        y0 -= 1.0;
        y1 += 1.0;
    }
    const double pad = 0.05 * (y1 - y0);
    y0 -= pad;
    y1 += pad;
    auto px = [&](double v) { return L + (v - x0) / (x1 - x0) * (W - L - R); };
    auto py = [&](double v) { return H - B - (v - y0) / (y1 - y0) * (H - T - B); };
    static constexpr std::array<const char*, 8> colors{"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                                       "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};
    char buf[256];
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
        << ' ' << H << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << W / 2.0 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">"
        << title << "</text>\n";
    out << "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
    std::snprintf(buf, sizeof(buf), "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\"/>\n", L, T, W - L - R,
                  H - T - B);
    out << buf;
    if (y0 < 0.0 && y1 > 0.0) {
        std::snprintf(buf, sizeof(buf), "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"#999\"/>\n",
                      L, py(0.0), W - R, py(0.0));
        out << buf;
    }
    out << "</g>\n<g font-family=\"sans-serif\" font-size=\"11\">\n";
    for (int i = 0; i <= 4; ++i) {
        const double xv = x0 + (x1 - x0) * i / 4.0;
        const double yv = y0 + (y1 - y0) * i / 4.0;
        std::snprintf(buf, sizeof(buf), "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"middle\">%.3g</text>\n", px(xv),
                      H - B + 16.0, xv);
        out << buf;
        std::snprintf(buf, sizeof(buf), "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"end\">%.3g</text>\n", L - 6.0,
                      py(yv) + 4.0, yv);
        out << buf;
    }
    out << "<text x=\"" << (L + W - R) / 2.0 << "\" y=\"" << H - 12.0 << "\" text-anchor=\"middle\">" << xlabel
        << "</text>\n";
    out << "<text x=\"16\" y=\"" << (T + H - B) / 2.0 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << (T + H - B) / 2.0 << ")\">" << ylabel << "</text>\n</g>\n";
    for (std::size_t c = 0; c < curves.size(); ++c) {
        const char* color = colors[c % colors.size()];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.6\" points=\"";
        bool first = true;
        for (std::size_t i = 0; i < curves[c].x.size(); ++i) {
            if (!std::isfinite(curves[c].y[i])) {
                continue;
            }
            const double yv = std::clamp(curves[c].y[i], y0, y1);
            std::snprintf(buf, sizeof(buf), "%s%.2f,%.2f", first ? "" : " ", px(curves[c].x[i]), py(yv));
            out << buf;
            first = false;
        }
        out << "\"/>\n";
        const double ly = T + 18.0 + 20.0 * static_cast<double>(c);
        std::snprintf(buf, sizeof(buf),
                      "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"%s\" stroke-width=\"2\"/>\n",
                      W - R + 14.0, ly, W - R + 40.0, ly, color);
        out << buf;
        out << "<text x=\"" << W - R + 46.0 << "\" y=\"" << ly + 4.0
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << curves[c].label << "</text>\n";
    }
    out << "</svg>\n";
}

/// One curve per alpha of a harmonic measure table.
inline std::vector<SvgCurve> kernel_curves(const std::vector<KernelSample>& rows) {
    std::vector<SvgCurve> curves;
    for (const auto& r : rows) {
        const std::string label = "alpha = " + format_number(r.alpha);
        if (curves.empty() || curves.back().label != label) {
            curves.push_back({label, {}, {}});
        }
        curves.back().x.push_back(r.y);
        curves.back().y.push_back(r.value);
    }
    return curves;
}

/// One profile per t level: U (potential) or |F| (gradient) against x.
inline std::vector<SvgCurve> field_curves(const FieldGrid& g) {
    std::vector<SvgCurve> curves;
    for (std::size_t i = 0; i < g.t.size(); ++i) {
        SvgCurve c{"t = " + format_number(g.t[i]), g.x, {}};
        for (std::size_t j = 0; j < g.x.size(); ++j) {
            c.y.push_back(g.kind == FieldKind::Potential ? g.at(i, j).v0 : magnitude(g.at(i, j)));
        }
        curves.push_back(std::move(c));
    }
    return curves;
}

}  // namespace halfplane
