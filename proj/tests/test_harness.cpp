#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cdg/cases.hpp"
#include "cdg/config.hpp"

using namespace cdg;
namespace fs = std::filesystem;

namespace {

const std::string kOut = "harness_out";

int count_lines(const std::string& text, char first) {
    std::istringstream in(text);
    std::string line;
    int n = 0;
    while (std::getline(in, line))
        if (!line.empty() && line[0] == first) ++n;
    return n;
}

int count_data_rows(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int n = 0;
    bool past_header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!past_header) { // column header row
            past_header = true;
            continue;
        }
        ++n;
    }
    return n;
}

int columns_of_row(const std::string& text, int row) {
    std::istringstream in(text);
    std::string line;
    bool past_header = false;
    int seen = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!past_header) {
            past_header = true;
            continue;
        }
        if (seen++ == row) {
            int commas = 0;
            for (char ch : line)
                if (ch == ',') ++commas;
            return commas + 1;
        }
    }
    return -1;
}

} // namespace

TEST_CASE("key-value store: parsing, comments, typed access, strictness") {
    Config c = Config::from_string(
        "# leading comment\n"
        "alpha = 3.5   # trailing comment\n"
        "\n"
        "  beta=7\n"
        "name = some_value\n"
        "flag = true\n");
    CHECK(c.get_double("alpha", 0) == doctest::Approx(3.5));
    CHECK(c.get_int("beta", 0) == 7);
    CHECK(c.get_string("name", "") == "some_value");
    CHECK(c.get_bool("flag", false) == true);
    CHECK_NOTHROW(c.finish());

    // fallbacks for absent keys
    CHECK(c.get_double("absent", 2.25) == 2.25);
    CHECK(c.get_bool("absent2", true) == true);

    // unconsumed key -> finish() names it
    Config d = Config::from_string("mystery_key = 1\n");
    try {
        d.finish();
        CHECK(false);
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("mystery_key") != std::string::npos);
    }

    CHECK_THROWS_AS(Config::from_string("no equals sign here\n"), ConfigError);
    CHECK_THROWS_AS(Config::from_string("a = 1\na = 2\n"), ConfigError);
    CHECK_THROWS_AS(Config::from_string("= 3\n"), ConfigError);
    CHECK_THROWS_AS(Config::from_string("empty =\n"), ConfigError);

    Config bad = Config::from_string("x = notanumber\nb = maybe\n");
    CHECK_THROWS_AS(bad.get_double("x", 0), ConfigError);
    CHECK_THROWS_AS(bad.get_bool("b", false), ConfigError);

    // set() inserts or overrides
    Config e = Config::from_string("k = 1\n");
    e.set("k", "4");
    e.set("fresh", "8");
    CHECK(e.get_int("k", 0) == 4);
    CHECK(e.get_int("fresh", 0) == 8);
    CHECK_NOTHROW(e.finish());
}

TEST_CASE("per-case defaults carry the published parameterizations") {
    const CaseConfig acc = CaseConfig::defaults(CaseName::accuracy);
    CHECK(acc.xlo == 0.0);
    CHECK(acc.xhi == 2.0);
    CHECK(acc.periodic_x);
    CHECK(acc.t_end == 2.0);
    CHECK(acc.gamma() == doctest::Approx(5.0 / 3.0).epsilon(1e-14));
    CHECK(acc.prandtl == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(acc.viscosity.value == doctest::Approx(1e-5));
    CHECK(!acc.limiter);
    CHECK(acc.nx == 40);
    CHECK(acc.reference_cells == 1280);
    CHECK(acc.reference_degree == 3);

    const CaseConfig cou = CaseConfig::defaults(CaseName::couette);
    CHECK(cou.nx == 5);
    CHECK(cou.xhi == 5.0);
    CHECK(cou.gamma() == doctest::Approx(5.0 / 3.0).epsilon(1e-14));
    CHECK(cou.prandtl == doctest::Approx(0.72));
    CHECK(cou.viscosity.value == doctest::Approx(0.1));
    CHECK(cou.wall_speed == doctest::Approx(0.1));
    CHECK(cou.steady);
    CHECK(cou.steady_tol == doctest::Approx(1e-10));

    const CaseConfig sh = CaseConfig::defaults(CaseName::shock_structure);
    CHECK(sh.nx == 160); // dx = 1/800 on [-0.1, 0.1]
    CHECK((sh.xhi - sh.xlo) / sh.nx == doctest::Approx(1.0 / 800).epsilon(1e-14));
    CHECK(sh.mach == doctest::Approx(1.5));
    CHECK(sh.viscosity.mu_ref == doctest::Approx(0.0005));
    CHECK(sh.viscosity.exponent == doctest::Approx(0.8));
    CHECK(sh.viscosity.t_ref == doctest::Approx(0.53333333333333333).epsilon(1e-12));
    CHECK(sh.limiter);

    const CaseConfig sod = CaseConfig::defaults(CaseName::sod);
    CHECK(sod.nx == 200);
    CHECK(sod.gamma() == doctest::Approx(1.4).epsilon(1e-14));
    CHECK(sod.theta == doctest::Approx(0.5));
    CHECK(sod.t_end == doctest::Approx(0.2));
    CHECK(sod.viscosity.kind == ViscosityLaw::Kind::power_law);
    CHECK(sod.viscosity.exponent == doctest::Approx(0.5)); // mu = value * sqrt(T)
    CHECK(sod.reference_cells == 1200);
    CHECK(sod.reference_degree == 2);

    const CaseConfig bl = CaseConfig::defaults(CaseName::boundary_layer);
    CHECK(bl.nx == 160);
    CHECK(bl.ny == 40);
    CHECK(bl.xlo == -1.0);
    CHECK(bl.xhi == 3.0);
    CHECK(bl.yhi == 1.0);
    CHECK(bl.gamma() == doctest::Approx(1.4).epsilon(1e-14));
    CHECK(bl.prandtl == 1.0);
    CHECK(bl.mach == doctest::Approx(0.2));
    CHECK(!bl.limiter);
    // free-stream pressure from the acoustic scaling: 1 / (gamma M^2)
    const double lam_inf = 0.5 * bl.gamma() * bl.mach * bl.mach;
    CHECK(1.0 / (2.0 * lam_inf) == doctest::Approx(17.857142857142858).epsilon(1e-12));
}

TEST_CASE("isothermal wall settings derived from (gamma, eckert)") {
    // gamma = 5/3 rows match the published 6-digit settings exactly
    CaseConfig c = CaseConfig::defaults(CaseName::couette);
    c.eckert = 10;
    ShearWalls w = shear_flow_walls(c);
    CHECK(w.t_bottom == doctest::Approx(1.19960).epsilon(1e-12));
    CHECK(w.t_top == doctest::Approx(1.20040).epsilon(1e-12));

    c.eckert = 50;
    w = shear_flow_walls(c);
    CHECK(w.t_bottom == doctest::Approx(1.19992).epsilon(1e-12));
    CHECK(w.t_top == doctest::Approx(1.20008).epsilon(1e-12));

    // gamma = 7/5 rows reproduce the published values to their print precision
    c.internal_dof = 3;
    c.eckert = 50;
    w = shear_flow_walls(c);
    CHECK(w.t_bottom == doctest::Approx(1.42851).epsilon(5e-6));
    CHECK(w.t_top == doctest::Approx(1.42863).epsilon(5e-6));

    c.eckert = 10;
    w = shear_flow_walls(c);
    CHECK(w.t_bottom == doctest::Approx(1.42829).epsilon(5e-6));
    CHECK(w.t_top == doctest::Approx(1.42886).epsilon(5e-6));

    // walls bracket the midline temperature symmetrically
    CHECK(0.5 * (w.t_bottom + w.t_top) == doctest::Approx(2.0 / 1.4).epsilon(1e-14));
}

TEST_CASE("case selection and overrides from config text") {
    Config c = Config::from_string(
        "case = couette\n"
        "degree = 1\n"
        "cells_x = 10\n"
        "gamma = 1.4\n"
        "eckert = 50\n"
        "prandtl = 1.0\n");
    CaseConfig cfg = CaseConfig::from_config(c);
    CHECK_NOTHROW(c.finish());
    CHECK(cfg.name == CaseName::couette);
    CHECK(cfg.degree == 1);
    CHECK(cfg.nx == 10);
    CHECK(cfg.internal_dof == 3); // gamma 1.4 under the two-axis closure
    CHECK(cfg.gamma() == doctest::Approx(1.4).epsilon(1e-12));
    CHECK(cfg.eckert == 50.0);
    CHECK(cfg.prandtl == 1.0);

    // invalid settings are rejected with ConfigError
    Config bad1 = Config::from_string("case = accuracy\ndegree = 5\n");
    CHECK_THROWS_AS(CaseConfig::from_config(bad1), ConfigError);
    Config bad2 = Config::from_string("case = accuracy\ngamma = 1.9\n");
    CHECK_THROWS_AS(CaseConfig::from_config(bad2), ConfigError);
    Config bad3 = Config::from_string("case = accuracy\ntheta = 1.5\n");
    CHECK_THROWS_AS(CaseConfig::from_config(bad3), ConfigError);
    Config bad4 = Config::from_string("case = sod\ngamma = 1.4\ninternal_dof = 2\n");
    CHECK_THROWS_AS(CaseConfig::from_config(bad4), ConfigError);
    Config bad5 = Config::from_string("case = nosuch\n");
    CHECK_THROWS_AS(CaseConfig::from_config(bad5), ConfigError);

    // unknown keys are errors once the case has consumed its settings
    Config bad6 = Config::from_string("case = sod\nnot_a_key = 3\n");
    CaseConfig sod = CaseConfig::from_config(bad6);
    CHECK_THROWS_AS(bad6.finish(), ConfigError);
}

TEST_CASE("config echo round-trips through the parser") {
    for (CaseName n : {CaseName::accuracy, CaseName::couette, CaseName::shock_structure,
                       CaseName::sod, CaseName::boundary_layer}) {
        const CaseConfig cfg = CaseConfig::defaults(n);
        const std::string echo1 = cfg.echo();
        Config c = Config::from_string(echo1);
        const CaseConfig back = CaseConfig::from_config(c);
        CHECK_NOTHROW(c.finish()); // every echoed key is a recognized key
        CHECK(back.echo() == echo1);
    }
}

TEST_CASE("error norms: exact match, constant offset, projection order") {
    MeshAxis ax(0, 2, 16, true);
    Field1D f(ax, false, 2, 3);
    f.project([](double, double* W) { W[0] = 0.75; W[1] = 0; W[2] = 1; }, 5);

    ScalarFn rho = [](double, const double* W) { return W[0]; };

    // equal field and reference -> zero
    NormPair z = error_norms(f, rho, [](double) { return 0.75; });
    CHECK(z.l1 <= 1e-15);
    CHECK(z.linf <= 1e-15);

    // constant offset c -> L1 = c * |domain|, Linf = c
    NormPair off = error_norms(f, rho, [](double) { return 0.5; });
    CHECK(off.l1 == doctest::Approx(0.25 * 2.0).epsilon(1e-13));
    CHECK(off.linf == doctest::Approx(0.25).epsilon(1e-13));

    // projected sine converges at order k+1 = 3
    auto sine_err = [&](int n) {
        MeshAxis a(0, 2, n, true);
        Field1D g(a, false, 2, 3);
        g.project([](double x, double* W) {
            W[0] = std::sin(3.14159265358979323846 * x);
            W[1] = 0;
            W[2] = 1;
        }, 6);
        return error_norms(g, rho,
                           [](double x) { return std::sin(3.14159265358979323846 * x); }, 8)
            .l1;
    };
    const double e16 = sine_err(16), e32 = sine_err(32);
    const double order = std::log2(e16 / e32);
    CHECK(order == doctest::Approx(3.0).epsilon(0.07));
}

TEST_CASE("profile files: row counts, column sets, header echo") {
    fs::remove_all(kOut);

    // tiny smooth-wave run
    CaseConfig acc = CaseConfig::defaults(CaseName::accuracy);
    acc.degree = 1;
    acc.nx = 8;
    acc.t_end = 0.05;
    RunResult r = run_case(acc, kOut);
    REQUIRE(r.files.size() == 1);
    std::ifstream in(r.files[0]);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    CHECK(count_data_rows(text) == 8);     // one row per cell
    CHECK(columns_of_row(text, 0) == 5);   // x,rho,u,p,T
    CHECK(count_lines(text, '#') >= 10);   // config echo block present
    CHECK(text.find("case = accuracy") != std::string::npos);
    CHECK(text.find("viscosity = 1e-05") != std::string::npos);

    // conservation on the periodic domain across the run
    const double mass = r.field1().conserved_total(0);
    CHECK(mass == doctest::Approx(2.0).epsilon(1e-12)); // integral of 1 + a sin(pi x)
}

TEST_CASE("plane shear flow reaches the analytic temperature ratio") {
    CaseConfig cou = CaseConfig::defaults(CaseName::couette);
    cou.degree = 2;
    cou.steady_tol = 1e-9;
    RunResult r = run_case(cou, kOut);
    CHECK(r.residual <= 1e-9);

    const NormPair e = run_error(r, kOut);
    CHECK(e.l1 <= 1e-3);  // five cells already resolve the quadratic profile
    CHECK(e.linf <= 1e-3);

    // profile file gains the transverse velocity and ratio columns
    std::ifstream in(r.files[0]);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(columns_of_row(ss.str(), 0) == 7);
    CHECK(count_data_rows(ss.str()) == 5);
}

TEST_CASE("shock-tube run stays physical and tracks the jump") {
    CaseConfig sod = CaseConfig::defaults(CaseName::sod);
    sod.degree = 1;
    sod.nx = 50;
    sod.t_end = 0.05;
    RunResult r = run_case(sod, "");
    CHECK(r.files.empty()); // no output dir -> no files
    const Field1D& f = r.field1();
    double rho_min = 1e9, rho_max = -1e9;
    for (int cell = 0; cell < f.count(); ++cell) {
        const double rho = f.mean(cell, 0);
        rho_min = std::min(rho_min, rho);
        rho_max = std::max(rho_max, rho);
    }
    CHECK(rho_min >= 0.1);
    CHECK(rho_max <= 1.05);
    // end states undisturbed at this early time
    CHECK(f.mean(0, 0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(f.mean(f.count() - 1, 0) == doctest::Approx(0.125).epsilon(1e-9));
}

TEST_CASE("steady wave run marches and reports its residual") {
    CaseConfig sh = CaseConfig::defaults(CaseName::shock_structure);
    sh.degree = 1;
    sh.nx = 40;
    sh.steady_tol = 1e-4;
    sh.time_cap = 0.2;
    RunResult r = run_case(sh, "");
    CHECK(r.steps > 0);
    CHECK(r.t > 0);
    CHECK(std::isfinite(r.residual));
    // the interior develops a smooth transition between the two states
    const Field1D& f = r.field1();
    CHECK(f.mean(0, 0) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(f.mean(f.count() - 1, 0) == doctest::Approx(1.7142857142857142).epsilon(1e-2));
}

TEST_CASE("two-axis flat-plate run produces a slowed near-wall column") {
    CaseConfig bl = CaseConfig::defaults(CaseName::boundary_layer);
    bl.degree = 1;
    bl.nx = 20;
    bl.ny = 8;
    bl.steady_tol = 1e-9; // unreachable; stop on the time cap
    bl.time_cap = 0.4;
    RunResult r = run_case(bl, kOut);
    REQUIRE(r.primal2.has_value());
    const Field2D& f = r.field2();
    // row counts: nx * ny data rows, 7 columns
    std::ifstream in(r.files[0]);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(count_data_rows(ss.str()) == 20 * 8);
    CHECK(columns_of_row(ss.str(), 0) == 7);
    // near-wall retardation above the plate, free stream preserved at the top
    const int ix_plate = f.nx * 3 / 4; // x mid-plate
    double W[4];
    f.eval_all(ix_plate, 0, 0.0, -1.0, W); // bottom face
    const double u_wallside = W[1] / W[0];
    f.eval_all(ix_plate, f.ny - 1, 0.0, 0.0, W);
    const double u_top = W[1] / W[0];
    CHECK(u_wallside < 0.9);
    CHECK(u_top == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("convergence study: table shape, cached reference reuse") {
    // analytic-reference study at trivial cost
    CaseConfig cou = CaseConfig::defaults(CaseName::couette);
    cou.degree = 1;
    cou.steady_tol = 1e-8;
    ConvergenceStudy s = convergence_study(cou, {5, 10}, "");
    REQUIRE(s.rows.size() == 2);
    CHECK(s.variable == "temperature_ratio");
    CHECK(s.rows[0].n == 5);
    CHECK(s.rows[1].n == 10);
    CHECK(s.rows[1].l1 < s.rows[0].l1);
    CHECK(s.rows[1].l1_order > 1.0);
    CHECK(s.table.find("order") != std::string::npos);
    CHECK(count_lines(s.table, '#') == 2);

    // refined-self-reference study exercises the cache
    CaseConfig acc = CaseConfig::defaults(CaseName::accuracy);
    acc.degree = 1;
    acc.t_end = 0.5;
    acc.reference_cells = 80;
    acc.reference_degree = 2;
    ConvergenceStudy a1 = convergence_study(acc, {10, 20}, kOut);
    REQUIRE(a1.rows.size() == 2);
    CHECK(a1.rows[1].l1 < a1.rows[0].l1);
    CHECK(a1.rows[1].l1_order > 1.5);

    // the reference landed in the cache...
    bool cached = false;
    for (const auto& entry : fs::directory_iterator(kOut))
        if (entry.path().filename().string().rfind("ref_accuracy_", 0) == 0) cached = true;
    CHECK(cached);

    // ... and a second study reproduces identical numbers from it
    ConvergenceStudy a2 = convergence_study(acc, {10, 20}, kOut);
    CHECK(a2.rows[0].l1 == doctest::Approx(a1.rows[0].l1).epsilon(1e-14));
    CHECK(a2.rows[1].linf == doctest::Approx(a1.rows[1].linf).epsilon(1e-14));
}

TEST_CASE("synthetic order arithmetic lands on the exponent") {
    // orders computed from e_N = C N^{-p} recover p to near machine precision
    const double p = 2.718, C = 0.37;
    const double e10 = C * std::pow(10.0, -p), e20 = C * std::pow(20.0, -p);
    const double order = std::log(e10 / e20) / std::log(2.0);
    CHECK(order == doctest::Approx(p).epsilon(1e-12));
}
