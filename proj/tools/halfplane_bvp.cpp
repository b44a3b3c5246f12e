#include "halfplane/halfplane.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace halfplane;
using nlohmann::json;

namespace {

enum class Format { Csv, Json, Svg };

struct Options {
    std::string problem = "dirichlet";
    double k = 0.0;
    double p = 2.0;
    std::string branch = "lpinf";
    std::vector<double> alphas{-1.5, -0.75, 0.0, 0.75};
    double t = 0.5;
    double x = 1.0;
    std::string preset = "gaussian";
    std::string grid = "0.1:1:10,-2:2:40";
    std::string format = "csv";
    std::string out;
    std::string cfg;
    std::vector<std::string> only;
    std::uint64_t seed = 1;
    double gamma = 1.0;
    std::string xi = "-10:10:401";
    std::vector<SweepPoint> sweep;
};

struct Flags {
    CLI::Option* problem = nullptr;
    CLI::Option* k = nullptr;
    CLI::Option* p = nullptr;
    CLI::Option* branch = nullptr;
    CLI::Option* alphas = nullptr;
    CLI::Option* t = nullptr;
    CLI::Option* x = nullptr;
    CLI::Option* preset = nullptr;
    CLI::Option* grid = nullptr;
    CLI::Option* format = nullptr;
    CLI::Option* out = nullptr;
    CLI::Option* only = nullptr;
    CLI::Option* seed = nullptr;
    CLI::Option* gamma = nullptr;
    CLI::Option* xi = nullptr;
};

/// Values from the configuration file fill every option not given on the command line.
void apply_config_file(Options& o, const Flags& f) {
    if (o.cfg.empty()) {
        return;
    }
    std::ifstream in(o.cfg);
    if (!in) {
        throw Error(ErrorKind::InvalidArgument, "cannot open configuration file '" + o.cfg + "'");
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::InvalidArgument, "configuration file: " + std::string(e.what()));
    }
    if (!j.is_object()) {
        throw Error(ErrorKind::InvalidArgument, "configuration file must hold a JSON object");
    }
    try {
        auto take = [&](const char* key, CLI::Option* flag, auto& target) {
            if (j.contains(key) && flag->count() == 0) {
                j.at(key).get_to(target);
            }
        };
        take("problem", f.problem, o.problem);
        take("k", f.k, o.k);
        take("p", f.p, o.p);
        take("branch", f.branch, o.branch);
        take("alpha_list", f.alphas, o.alphas);
        take("t", f.t, o.t);
        take("x", f.x, o.x);
        take("preset", f.preset, o.preset);
        take("grid", f.grid, o.grid);
        take("format", f.format, o.format);
        take("out", f.out, o.out);
        take("only", f.only, o.only);
        take("seed", f.seed, o.seed);
        take("gamma", f.gamma, o.gamma);
        take("xi", f.xi, o.xi);
        if (j.contains("sweep")) {
            for (const auto& s : j.at("sweep")) {
                o.sweep.push_back({s.at("k").get<double>(), s.at("p").get<double>()});
            }
        }
    } catch (const json::exception& e) {
        throw Error(ErrorKind::InvalidArgument, "configuration file: " + std::string(e.what()));
    }
}

Problem parse_problem(const std::string& s) {
    if (s == "dirichlet") {
        return Problem::Dirichlet;
    }
    if (s == "neumann") {
        return Problem::Neumann;
    }
    if (s == "regularity") {
        return Problem::Regularity;
    }
    throw Error(ErrorKind::InvalidArgument, "unknown problem '" + s + "'");
}

Branch parse_branch(const std::string& s) {
    if (s == "h1") {
        return Branch::H1;
    }
    if (s == "lpinf") {
        return Branch::LpInf;
    }
    throw Error(ErrorKind::InvalidArgument, "unknown branch '" + s + "'");
}

Format parse_format(const std::string& s) {
    if (s == "csv") {
        return Format::Csv;
    }
    if (s == "json") {
        return Format::Json;
    }
    if (s == "svg") {
        return Format::Svg;
    }
    throw Error(ErrorKind::InvalidArgument, "unknown format '" + s + "'");
}

/// "a:b:n" as n evenly spaced values.
std::vector<double> parse_range(const std::string& text) {
    std::istringstream in(text);
    in.imbue(std::locale::classic());
    double a = 0.0;
    double b = 0.0;
    long n = 0;
    char c1 = 0;
    char c2 = 0;
    in >> a >> c1 >> b >> c2 >> n;
    if (!in || c1 != ':' || c2 != ':' || !(in >> std::ws).eof() || n < 2 || !(b > a)) {
        throw Error(ErrorKind::InvalidArgument, "range must read a:b:n with a < b and n >= 2, got '" + text + "'");
    }
    return checks::detail::linspace(a, b, static_cast<std::size_t>(n));
}

/// Runs `write` against the output file, or stdout when no path is set.
template <class Write>
void emit(const std::string& path, const Write& write) {
    if (path.empty()) {
        write(std::cout);
        return;
    }
    std::ofstream file(path);
    if (!file) {
        throw Error(ErrorKind::InvalidArgument, "cannot write '" + path + "'");
    }
    write(file);
}

void reject_svg(Format f, const char* command) {
    if (f == Format::Svg) {
        throw Error(ErrorKind::InvalidArgument, std::string("svg output is not available for ") + command);
    }
}

int cmd_kernel_table(const Options& o) {
    const auto format = parse_format(o.format);
    std::vector<double> ys;
    for (double y : checks::detail::linspace(-4.0, 4.0, 801)) {
        if (std::abs(y) > 1e-12) {
            ys.push_back(y);
        }
    }
    const auto rows = harmonic_measure_table(o.alphas, o.t, o.x, ys);
    emit(o.out, [&](std::ostream& out) {
        if (format == Format::Csv) {
            write_kernel_table_csv(out, rows);
        } else if (format == Format::Json) {
            out << json{{"t", o.t}, {"x", o.x}, {"samples", to_json(rows)}}.dump(2) << '\n';
        } else {
            write_svg_plot(out, kernel_curves(rows),
                           "P_alpha(" + format_number(o.t) + ", " + format_number(o.x) + "; y)", "y", "P");
        }
    });
    return 0;
}

json solve_metadata(const Options& o, Problem problem, Branch branch, const ProblemConfig& cfg, const FieldGrid& g,
                    const BoundarySample& data) {
    json reports = json::array();
    json notes = json::array();
    for (const auto& r : classify(problem, o.k, o.p)) {
        reports.push_back(to_json(r));
        if (r.status == Status::Fails) {
            notes.push_back(std::string(to_string(problem)) + " problem fails in the " + std::string(to_string(r.sense)) +
                            " sense: k = " + format_number(o.k) + " is beyond the critical value " +
                            format_number(r.threshold_value));
        }
    }
    std::vector<double> xs;
    const std::size_t stride = std::max<std::size_t>(1, g.x.size() / 9);
    for (std::size_t j = 0; j < g.x.size(); j += stride) {
        xs.push_back(g.x[j]);
    }
    const double residual = boundary_equation_residual(problem, cfg, data, xs);
    return {{"problem", std::string(to_string(problem))},
            {"requested_branch", std::string(to_string(branch))},
            {"config", to_json(cfg)},
            {"preset", o.preset},
            {"grid", o.grid},
            {"kind", std::string(to_string(g.kind))},
            {"classification", reports},
            {"notes", notes},
            {"residual", residual},
            {"residual_nodes", xs.size()}};
}

int cmd_solve(const Options& o, bool seeded) {
    const auto format = parse_format(o.format);
    const auto problem = parse_problem(o.problem);
    const auto branch = parse_branch(o.branch);
    const auto grid = GridSpec::parse(o.grid);
    const auto data = seeded ? presets::gaussian_mixture(o.seed) : presets::by_name(o.preset);
    const auto cfg = problem_config(problem, o.k, o.p, branch);
    const auto field = solve(problem, o.k, o.p, branch, data, grid);
    auto meta = solve_metadata(o, problem, branch, cfg, field, data);
    if (seeded) {
        meta["preset"] = "gaussian-mixture";
        meta["seed"] = o.seed;
    }
    if (format == Format::Json) {
        emit(o.out, [&](std::ostream& out) { out << json{{"metadata", meta}, {"field", to_json(field)}}.dump(2) << '\n'; });
        return 0;
    }
    emit(o.out, [&](std::ostream& out) {
        if (format == Format::Csv) {
            write_field_csv(out, field);
        } else {
            write_svg_plot(out, field_curves(field), std::string(to_string(problem)) + " solution, k = " + format_number(o.k),
                           "x", field.kind == FieldKind::Potential ? "U" : "|F|");
        }
    });
    if (o.out.empty()) {
        std::cerr << meta.dump(2) << '\n';
    } else {
        emit(std::filesystem::path(o.out).replace_extension(".meta.json").string(),
             [&](std::ostream& out) { out << meta.dump(2) << '\n'; });
    }
    return 0;
}

int cmd_classify(const Options& o, bool k_given) {
    const auto format = parse_format(o.format);
    reject_svg(format, "classify");
    check_exponent(o.p);
    std::vector<double> ks;
    if (k_given) {
        ks.push_back(o.k);
    } else {
        for (int i = -40; i <= 40; ++i) {
            ks.push_back(i / 20.0);
        }
        for (Problem pr : {Problem::Dirichlet, Problem::Neumann, Problem::Regularity}) {
            const double thr = threshold(pr, o.p);
            if (std::abs(thr) <= 2.0) {
                ks.push_back(thr);
            }
        }
        std::sort(ks.begin(), ks.end());
        ks.erase(std::unique(ks.begin(), ks.end(), [](double a, double b) { return std::abs(a - b) < kThresholdTolerance; }),
                 ks.end());
    }
    json rows = json::array();
    std::ostringstream csv;
    csv << "k,p,problem,sense,status,threshold\n";
    for (double k : ks) {
        for (Problem pr : {Problem::Dirichlet, Problem::Neumann, Problem::Regularity}) {
            for (const auto& r : classify(pr, k, o.p)) {
                csv << format_number(k) << ',' << format_number(o.p) << ',' << to_string(r.problem) << ','
                    << to_string(r.sense) << ',' << to_string(r.status) << ',' << format_number(r.threshold_value)
                    << '\n';
                auto j = to_json(r);
                j["k"] = k;
                j["p"] = o.p;
                rows.push_back(j);
            }
        }
    }
    emit(o.out, [&](std::ostream& out) {
        if (format == Format::Csv) {
            out << csv.str();
        } else {
            out << rows.dump(2) << '\n';
        }
    });
    return 0;
}

int cmd_verify(const Options& o, bool sweep_flags) {
    const auto format = parse_format(o.format);
    reject_svg(format, "verify");
    std::vector<SweepPoint> sweep = o.sweep;
    if (sweep_flags) {
        sweep.push_back({o.k, o.p});
    }
    if (sweep.empty()) {
        sweep = default_sweep();
    }
    SuiteSpec spec;
    if (!o.only.empty()) {
        spec.only = o.only;
    }
    spec.seed = o.seed;
    const auto reports = run_suite(sweep, spec);
    write_summary(std::cout, reports);
    const std::string path = o.out.empty() ? (format == Format::Csv ? "halfplane_report.csv" : "halfplane_report.json") : o.out;
    emit(path, [&](std::ostream& out) {
        if (format == Format::Csv) {
            write_reports_csv(out, reports);
        } else {
            out << to_json(reports).dump(2) << '\n';
        }
    });
    std::cout << "report written to " << path << '\n';
    if (reports.empty()) {
        std::cerr << "no checks selected\n";
        return 1;
    }
    if (!suite_passed(reports)) {
        std::cerr << "failing checks:\n";
        for (const auto& r : reports) {
            if (!r.passed) {
                std::cerr << "  " << r.check_name << ' ' << parameter_text(r.parameters)
                          << (r.note.empty() ? "" : " (" + r.note + ")") << '\n';
            }
        }
        return 1;
    }
    return 0;
}

int cmd_spectrum(const Options& o) {
    const auto format = parse_format(o.format);
    reject_svg(format, "spectrum");
    check_exponent(o.p);
    const auto rows = spectrum_table(o.gamma, o.k, o.p, parse_range(o.xi));
    double peak = 0.0;
    double at = 0.0;
    for (const auto& r : rows) {
        if (std::abs(r.m) > peak) {
            peak = std::abs(r.m);
            at = r.xi;
        }
    }
    if (peak > 10.0) {
        std::cerr << "warning: |m| reaches " << format_number(peak) << " at xi = " << format_number(at)
                  << " (pole approach as gamma nears 0 or 2)\n";
    }
    emit(o.out, [&](std::ostream& out) {
        if (format == Format::Csv) {
            write_spectrum_csv(out, rows);
        } else {
            out << json{{"gamma", o.gamma}, {"k", o.k}, {"p", o.p}, {"rows", to_json(rows)}}.dump(2) << '\n';
        }
    });
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Oblique derivative and Dirichlet problems in the upper half plane"};
    app.require_subcommand(1, 1);
    app.fallthrough();
    Options o;
    Flags f;
    f.problem = app.add_option("--problem", o.problem, "dirichlet, neumann or regularity")
                    ->check(CLI::IsMember({"dirichlet", "neumann", "regularity"}));
    f.k = app.add_option("--k", o.k, "Obliqueness coefficient");
    f.p = app.add_option("--p", o.p, "Lebesgue exponent, p > 1");
    f.branch = app.add_option("--branch", o.branch, "h1 or lpinf")->check(CLI::IsMember({"h1", "lpinf"}));
    f.alphas = app.add_option("--alpha-list,--alpha", o.alphas, "Kernel exponents for kernel-table")->delimiter(',');
    f.t = app.add_option("--t", o.t, "Height of the kernel-table evaluation point");
    f.x = app.add_option("--x", o.x, "Abscissa of the kernel-table evaluation point");
    f.preset = app.add_option("--preset", o.preset, "Boundary datum")
                   ->check(CLI::IsMember({"gaussian", "bump", "indicator", "rational", "hat"}));
    f.grid = app.add_option("--grid", o.grid, "Output grid t0:t1:nt,x0:x1:nx");
    f.format = app.add_option("--format", o.format, "csv, json or svg")->check(CLI::IsMember({"csv", "json", "svg"}));
    f.out = app.add_option("--out", o.out, "Output path (stdout when omitted, except verify)");
    app.add_option("--cfg", o.cfg, "JSON configuration file; flags take precedence");
    f.only = app.add_option("--only", o.only, "Run only checks whose name starts with CHECK")->delimiter(',');
    f.seed = app.add_option("--seed", o.seed, "Seed of the randomized test field");
    f.gamma = app.add_option("--gamma", o.gamma, "Multiplier exponent for spectrum, in (0, 2)");
    f.xi = app.add_option("--xi", o.xi, "Frequency grid a:b:n for spectrum");

    auto* kernel = app.add_subcommand("kernel-table", "Tabulate the signed harmonic measures");
    auto* solve_cmd = app.add_subcommand("solve", "Solve a boundary value problem on a grid");
    auto* classify_cmd = app.add_subcommand("classify", "Tabulate well-posedness over k");
    auto* verify = app.add_subcommand("verify", "Run the verification suite");
    auto* spectrum = app.add_subcommand("spectrum", "Tabulate the multiplier of the Mellin convolution operator");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        apply_config_file(o, f);
        if (kernel->parsed()) {
            return cmd_kernel_table(o);
        }
        if (solve_cmd->parsed()) {
            return cmd_solve(o, f.seed->count() > 0 && f.preset->count() == 0);
        }
        if (classify_cmd->parsed()) {
            return cmd_classify(o, f.k->count() > 0);
        }
        if (verify->parsed()) {
            return cmd_verify(o, f.k->count() > 0 || f.p->count() > 0);
        }
        if (spectrum->parsed()) {
            return cmd_spectrum(o);
        }
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::NotInvertible) {
            std::cerr << "error: not well posed at the threshold (" << e.what() << ")\n";
        } else {
            std::cerr << "error: " << e.what() << '\n';
        }
        return e.is_configuration_error() ? 2 : 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 2;
}
