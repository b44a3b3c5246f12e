#include <catch2/catch_amalgamated.hpp>

#include "halfplane/halfplane.hpp"

#include <cmath>
#include <cstring>
#include <numbers>
#include <sstream>

using namespace halfplane;
using Catch::Approx;

TEST_CASE("number formatting round-trips", "[io][format]") {
    for (double v : {0.1, -1.0 / 3.0, 1e-300, 6.02214076e23, 0.0, -0.0, 5e-324}) {
        const double back = parse_number(format_number(v));
        CHECK(std::memcmp(&back, &v, sizeof v) == 0);
    }
    CHECK(format_number(0.1) == "0.1");
    CHECK(std::isnan(parse_number("nan")));
    CHECK(parse_number("-inf") == -HUGE_VAL);
    CHECK_THROWS_AS(parse_number("1,5"), Error);
    CHECK_THROWS_AS(parse_number(""), Error);
}

TEST_CASE("field CSV round-trips bit for bit", "[io][csv]") {
    const auto potential = solve(Problem::Dirichlet, 0.5, 2.0, Branch::H1, presets::bump(0.8, 1.2),
                                 GridSpec::parse("0.1:1:3,-2:2:4"));
    const auto gradient = solve(Problem::Neumann, 0.5, 2.0, Branch::H1, presets::gaussian(0.7, 0.6),
                                GridSpec::parse("0.2:1:2,-1:1:2"));
    for (const auto* g : {&potential, &gradient}) {
        std::stringstream s;
        write_field_csv(s, *g);
        const auto back = read_field_csv(s);
        CHECK(back.kind == g->kind);
        CHECK(back.t == g->t);
        CHECK(back.x == g->x);
        REQUIRE(back.values.size() == g->values.size());
        for (std::size_t i = 0; i < back.values.size(); ++i) {
            CHECK(back.values[i].v0 == g->values[i].v0);
            CHECK(back.values[i].v1 == g->values[i].v1);
        }
    }
    std::stringstream bad("t,x,V\n0.1,1,2\n");
    CHECK_THROWS_AS(read_field_csv(bad), Error);
    std::stringstream ragged("t,x,U\n0.1,1\n");
    CHECK_THROWS_AS(read_field_csv(ragged), Error);
}

TEST_CASE("spectrum table", "[io][spectrum]") {
    const auto rows = spectrum_table(1.0, 1.0, 2.0, {-3.0, -0.5, 0.0, 0.5, 3.0});
    for (const auto& r : rows) {
        CHECK(std::abs(r.m.real()) < 1e-15);
        CHECK(r.m.imag() == Approx(-std::tanh(std::numbers::pi * r.xi / 2.0)).margin(1e-15));
        CHECK(r.identity_residual < 1e-12);
    }
    CHECK_THROWS_AS(spectrum_table(2.0, 1.0, 2.0, {0.0}), Error);
    const auto near = spectrum_table(0.01, 1.0, 2.0, {0.0, 5.0});
    CHECK(std::abs(near[0].m) > 50.0);
    CHECK(std::abs(near[1].m) < 2.0);
    std::stringstream s;
    write_spectrum_csv(s, rows);
    CHECK(s.str().rfind("xi,re_m,im_m,identity_residual\n", 0) == 0);
}

TEST_CASE("kernel table CSV and SVG", "[io][svg]") {
    const auto rows = harmonic_measure_table({-1.5, -0.75, 0.0, 0.75}, 0.5, 1.0, {-1.0, 0.5, 2.0});
    std::stringstream csv;
    write_kernel_table_csv(csv, rows);
    std::string line;
    std::size_t lines = 0;
    while (std::getline(csv, line)) {
        ++lines;
    }
    CHECK(lines == 13);
    std::stringstream svg;
    write_svg_plot(svg, kernel_curves(rows), "P", "y", "P");
    const std::string text = svg.str();
    std::size_t polylines = 0;
    for (auto pos = text.find("<polyline"); pos != std::string::npos; pos = text.find("<polyline", pos + 1)) {
        ++polylines;
    }
    CHECK(polylines == 4);
    CHECK(text.find("alpha = -0.75") != std::string::npos);
    CHECK(text.find("href") == std::string::npos);
}

TEST_CASE("report serialization", "[io][json]") {
    auto r = make_report("demo", {param("k", 0.5)}, 1e-9, 1e-8);
    const auto j = to_json(std::vector<VerificationReport>{r});
    CHECK(j[0]["check_name"] == "demo");
    CHECK(j[0]["parameters"]["k"] == "0.5");
    CHECK(j[0]["passed"] == true);
    const auto inf = to_json(make_report("x", {}, HUGE_VAL, 0.0));
    CHECK(inf["measured_error"] == "inf");
    std::stringstream s;
    write_summary(s, {r});
    CHECK(s.str().find("1/1 checks passed") != std::string::npos);
}
