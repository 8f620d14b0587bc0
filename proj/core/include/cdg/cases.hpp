#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cdg/config.hpp"
#include "cdg/oracles.hpp"
#include "cdg/solver.hpp"

namespace cdg {

enum class CaseName { accuracy, couette, shock_structure, sod, boundary_layer };

CaseName parse_case_name(const std::string& s); // throws ConfigError on bad names
std::string case_label(CaseName n);

// Complete parameterization of one benchmark run. defaults(name) fills the
// published setup for that flow; apply() layers file / command-line overrides
// on top (consuming recognized keys — call Config::finish() afterwards so
// leftovers are rejected); echo() renders the effective settings as the
// `key = value` block embedded in every output header.
struct CaseConfig {
    CaseName name = CaseName::accuracy;
    int degree = 2;
    int nx = 0, ny = 0;

    // gas model
    int internal_dof = 2;
    double prandtl = 2.0 / 3.0;
    bool pr_correction = true;
    ViscosityLaw viscosity = ViscosityLaw::dynamic(1e-5);

    // domain (y used by the 2D case only)
    double xlo = 0, xhi = 1, ylo = 0, yhi = 0;
    bool periodic_x = false;

    // time marching: fixed horizon or steady march with a residual tolerance
    double t_end = 0;
    bool steady = false;
    double steady_tol = 1e-10;
    double time_cap = 1e9; // steady marches stop at this time regardless
    long max_steps = 100000000;

    // scheme controls
    bool limiter = false;
    double tvb_m = 0;
    double theta = 0.9;   // dt = theta * dtau
    bool h43 = false;     // h^(4/3) convective step bound
    bool h43_auto = true; // pick h43 from (case, degree) unless overridden
    int quad_pts = 0;     // 0 = degree + 2 points

    // per-case physics knobs
    double mach = 0;        // upstream / free-stream Mach number
    double eckert = 0;      // dissipation number of the plane shear flow
    double wall_speed = 0;  // moving-wall speed
    double rho_amp = 0.2;   // smooth-wave density amplitude
    bool full_mesh = false; // large plate mesh instead of the reduced default

    // reporting
    bool report_dual = false; // norms/profiles on the staggered field instead
    int reference_cells = 0;  // refined self-reference resolution
    int reference_degree = 0; // ... and its polynomial degree

    static CaseConfig defaults(CaseName n);
    // defaults(name) for the `case` key in c, then every recognized override
    static CaseConfig from_config(Config& c);

    void apply(Config& c);
    std::string echo() const; // effective settings, one `key = value` per line
    int dim() const { return name == CaseName::boundary_layer ? 2 : 1; }
    GasModel gas() const;
    double gamma() const;
};

// isothermal wall settings of the plane shear flow, derived from
// (gamma, eckert, wall_speed): the two wall temperatures bracket the
// acoustic-scaled midline temperature 2/gamma symmetrically with
// dT = wall_speed^2 / (cp * eckert), the hotter wall being the moving one.
struct ShearWalls {
    double t_bottom = 0, t_top = 0; // wall temperatures
    double lam_bottom = 0, lam_top = 0;
    double dT = 0;
};
ShearWalls shear_flow_walls(const CaseConfig& cfg);

struct RunResult {
    CaseConfig cfg;
    GasModel model;
    double t = 0;
    long steps = 0;
    double residual = 0; // final mean-drift rate per unit time
    double seconds = 0;
    // meshes are heap-held so the fields' axis pointers survive copies/moves
    std::shared_ptr<Mesh1D> mesh1;
    std::shared_ptr<Mesh2D> mesh2;
    std::optional<Field1D> primal1, dual1;
    std::optional<Field2D> primal2, dual2;
    std::vector<std::string> files; // outputs written, in order

    const Field1D& field1() const; // reporting field per cfg.report_dual
    const Field2D& field2() const;
};

// Build, initialize, and advance one benchmark; write the profile CSV when
// out_dir is nonempty. Solver errors surface with the case name attached.
RunResult run_case(const CaseConfig& cfg, const std::string& out_dir = "");

// profile CSV (header comments = config echo; columns per case family)
std::string write_profile(RunResult& res, const std::string& out_dir);
void write_profile_csv(std::ostream& os, const RunResult& res);

struct NormPair {
    double l1 = 0, linf = 0;
};

// scalar extracted from the solution at a point; W is the conserved state
using ScalarFn = std::function<double(double, const double*)>;

// L1 by Gauss quadrature of |value(x,W) - reference(x)| over every interior
// cell, Linf as the max over the same points.
NormPair error_norms(const Field1D& f, const ScalarFn& value,
                     const std::function<double(double)>& reference, int npts = 8);

// the scalar each benchmark reports errors on (density, temperature ratio, ...)
ScalarFn case_error_variable(const CaseConfig& cfg, const GasModel& m, std::string* label);

// the matching reference profile: analytic solution, steady-wave integration,
// or a refined self-run (cached under cache_dir keyed by a config hash)
std::function<double(double)> case_reference(const CaseConfig& cfg,
                                             const std::string& cache_dir);

// errors of a finished run against its case reference
NormPair run_error(const RunResult& res, const std::string& cache_dir);

struct ConvergenceRow {
    int n = 0;
    double l1 = 0, l1_order = 0, linf = 0, linf_order = 0; // order 0 = first row
};

struct ConvergenceStudy {
    std::vector<ConvergenceRow> rows;
    std::string variable;
    std::string table; // formatted plain-text table (N, L1, order, Linf, order)
};

// run `base` at each cell count against the shared case reference;
// orders via log2(e_N / e_2N). Profiles are written when out_dir is nonempty.
ConvergenceStudy convergence_study(const CaseConfig& base, const std::vector<int>& cells,
                                   const std::string& out_dir);

// text save/load of 1D modal data for reference caching (17 digits round-trip)
void save_field_1d(const std::string& path, const Field1D& f, const std::string& header);
bool load_field_1d(const std::string& path, Field1D& f, const std::string& header);

std::string format_sig(double v); // >= 12 significant digits
uint64_t config_hash(const std::string& text);

} // namespace cdg
