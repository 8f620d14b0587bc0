#include "cdg/cases.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "cdg/quadrature.hpp"

namespace cdg {

namespace {
constexpr double kPi = 3.14159265358979323846;
} // namespace

CaseName parse_case_name(const std::string& s) {
    if (s == "accuracy") return CaseName::accuracy;
    if (s == "couette") return CaseName::couette;
    if (s == "shock_structure") return CaseName::shock_structure;
    if (s == "sod") return CaseName::sod;
    if (s == "boundary_layer") return CaseName::boundary_layer;
    throw ConfigError("unknown case: " + s +
                      " (expected accuracy, couette, shock_structure, sod, boundary_layer)");
}

std::string case_label(CaseName n) {
    switch (n) {
        case CaseName::accuracy: return "accuracy";
        case CaseName::couette: return "couette";
        case CaseName::shock_structure: return "shock_structure";
        case CaseName::sod: return "sod";
        case CaseName::boundary_layer: return "boundary_layer";
    }
    return "?";
}

std::string format_sig(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

uint64_t config_hash(const std::string& text) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

CaseConfig CaseConfig::defaults(CaseName n) {
    CaseConfig c;
    c.name = n;
    switch (n) {
        case CaseName::accuracy:
            c.degree = 2;
            c.nx = 40;
            c.internal_dof = 2; // gamma = 5/3
            c.prandtl = 2.0 / 3.0;
            c.viscosity = ViscosityLaw::dynamic(1e-5);
            c.xlo = 0;
            c.xhi = 2;
            c.periodic_x = true;
            c.t_end = 2;
            c.rho_amp = 0.2;
            c.reference_cells = 1280;
            c.reference_degree = 3;
            break;
        case CaseName::couette:
            c.degree = 2;
            c.nx = 5;
            c.internal_dof = 1; // two-axis closure, gamma = 5/3
            c.prandtl = 0.72;
            c.viscosity = ViscosityLaw::dynamic(0.1);
            c.xlo = 0;
            c.xhi = 5;
            c.steady = true;
            c.steady_tol = 1e-10;
            c.time_cap = 50000;
            c.wall_speed = 0.1;
            c.eckert = 10;
            c.mach = 0.1;
            break;
        case CaseName::shock_structure:
            c.degree = 2;
            c.nx = 160; // dx = 1/800
            c.internal_dof = 2;
            c.prandtl = 2.0 / 3.0;
            c.mach = 1.5;
            // reference temperature of the power law = upstream temperature
            c.viscosity = ViscosityLaw::power(0.0005, 2.0 / ((5.0 / 3.0) * 1.5 * 1.5), 0.8);
            c.xlo = -0.1;
            c.xhi = 0.1;
            c.limiter = true;
            c.steady = true;
            c.steady_tol = 1e-8;
            c.time_cap = 2.0;
            break;
        case CaseName::sod:
            c.degree = 2;
            c.nx = 200; // dx = 1/200
            c.internal_dof = 4; // gamma = 7/5
            c.prandtl = 2.0 / 3.0;
            // kinematic nu = value / (rho sqrt(lambda)) i.e. mu = value * sqrt(T)
            c.viscosity = ViscosityLaw::power(0.0005, 1.0, 0.5);
            c.xlo = -0.5;
            c.xhi = 0.5;
            c.t_end = 0.2;
            c.limiter = true;
            c.theta = 0.5;
            c.reference_cells = 1200;
            c.reference_degree = 2;
            break;
        case CaseName::boundary_layer:
            c.degree = 2;
            c.nx = 160;
            c.ny = 40;
            c.internal_dof = 3; // gamma = 7/5
            c.prandtl = 1.0;
            c.viscosity = ViscosityLaw::kinematic(3e-4);
            c.xlo = -1;
            c.xhi = 3;
            c.ylo = 0;
            c.yhi = 1;
            c.mach = 0.2;
            c.steady = true;
            c.steady_tol = 1e-7;
            c.time_cap = 40;
            break;
    }
    return c;
}

GasModel CaseConfig::gas() const {
    const int closure_dim =
        (name == CaseName::couette || name == CaseName::boundary_layer) ? 2 : 1;
    GasModel m = GasModel::make(closure_dim, internal_dof, prandtl, viscosity);
    m.pr_correction = pr_correction;
    return m;
}

double CaseConfig::gamma() const { return gas().gamma; }

void CaseConfig::apply(Config& c) {
    if (c.has("case")) {
        const CaseName n = parse_case_name(c.get_string("case", ""));
        if (n != name)
            throw ConfigError("config case `" + case_label(n) +
                              "` conflicts with selected case `" + case_label(name) + "`");
    }
    degree = c.get_int("degree", degree);
    if (degree < 1 || degree > 3) throw ConfigError("degree must be 1, 2, or 3");
    nx = c.get_int("cells_x", nx);
    ny = c.get_int("cells_y", ny);
    xlo = c.get_double("xlo", xlo);
    xhi = c.get_double("xhi", xhi);
    ylo = c.get_double("ylo", ylo);
    yhi = c.get_double("yhi", yhi);
    if (!(xhi > xlo)) throw ConfigError("domain needs xhi > xlo");

    internal_dof = c.get_int("internal_dof", internal_dof);
    if (c.has("gamma")) {
        const double g = c.get_double("gamma", 0);
        const int closure_dim =
            (name == CaseName::couette || name == CaseName::boundary_layer) ? 2 : 1;
        const double kreal =
            closure_dim == 1 ? (3.0 - g) / (g - 1.0) : (4.0 - 2.0 * g) / (g - 1.0);
        const int k = static_cast<int>(std::lround(kreal));
        if (!(g > 1) || std::abs(kreal - k) > 1e-6 || k < 0)
            throw ConfigError("gamma = " + format_sig(g) +
                              " has no integer internal degrees of freedom");
        if (c.has("internal_dof") && k != internal_dof)
            throw ConfigError("gamma and internal_dof are inconsistent");
        internal_dof = k;
    }
    prandtl = c.get_double("prandtl", prandtl);
    pr_correction = c.get_bool("pr_correction", pr_correction);

    if (c.has("viscosity_law")) {
        const std::string law = c.get_string("viscosity_law", "");
        if (law == "dynamic")
            viscosity = ViscosityLaw::dynamic(viscosity.value);
        else if (law == "kinematic")
            viscosity = ViscosityLaw::kinematic(viscosity.value);
        else if (law == "power")
            viscosity = ViscosityLaw::power(viscosity.mu_ref, viscosity.t_ref,
                                            viscosity.exponent);
        else
            throw ConfigError("viscosity_law must be dynamic, kinematic, or power");
    }
    if (c.has("viscosity")) {
        const double v = c.get_double("viscosity", 0);
        if (!(v > 0)) throw ConfigError("viscosity must be positive");
        if (viscosity.kind == ViscosityLaw::Kind::power_law)
            viscosity.mu_ref = v;
        else
            viscosity.value = v;
    }
    viscosity.t_ref = c.get_double("viscosity_t_ref", viscosity.t_ref);
    viscosity.exponent = c.get_double("viscosity_exponent", viscosity.exponent);

    t_end = c.get_double("t_end", t_end);
    steady = c.get_bool("steady", steady);
    steady_tol = c.get_double("steady_tol", steady_tol);
    time_cap = c.get_double("time_cap", time_cap);
    max_steps = c.get_int("max_steps", static_cast<int>(std::min<long>(max_steps, 2000000000)));

    limiter = c.get_bool("limiter", limiter);
    tvb_m = c.get_double("tvb_m", tvb_m);
    theta = c.get_double("theta", theta);
    if (!(theta > 0) || theta > 1) throw ConfigError("theta must lie in (0, 1]");
    if (c.has("h43")) {
        h43 = c.get_bool("h43", h43);
        h43_auto = false;
    }
    quad_pts = c.get_int("quad_pts", quad_pts);

    mach = c.get_double("mach", mach);
    eckert = c.get_double("eckert", eckert);
    wall_speed = c.get_double("wall_speed", wall_speed);
    rho_amp = c.get_double("rho_amp", rho_amp);
    full_mesh = c.get_bool("full_mesh", full_mesh);
    report_dual = c.get_bool("report_dual", report_dual);
    reference_cells = c.get_int("reference_cells", reference_cells);
    reference_degree = c.get_int("reference_degree", reference_degree);
}

CaseConfig CaseConfig::from_config(Config& c) {
    if (!c.has("case")) throw ConfigError("config must name a case (`case = ...`)");
    CaseConfig cfg = defaults(parse_case_name(c.get_string("case", "")));
    // re-mark as unread so apply() both validates and consumes it
    c.set("case", case_label(cfg.name));
    cfg.apply(c);
    return cfg;
}

namespace {

// effective values used by the marcher, resolved once up front
CaseConfig resolved(const CaseConfig& cfg0) {
    CaseConfig cfg = cfg0;
    if (cfg.h43_auto) {
        cfg.h43 = (cfg.name == CaseName::accuracy && cfg.degree == 3);
        cfg.h43_auto = false;
    }
    if (cfg.name == CaseName::boundary_layer && cfg.full_mesh &&
        cfg.nx == 160 && cfg.ny == 40) {
        cfg.nx = 480;
        cfg.ny = 120;
    }
    if (cfg.name == CaseName::shock_structure &&
        cfg.viscosity.kind == ViscosityLaw::Kind::power_law) {
        // power-law reference pinned at the inflow temperature by definition
        const double g = cfg.gamma();
        cfg.viscosity.t_ref = 2.0 / (g * cfg.mach * cfg.mach);
    }
    return cfg;
}

} // namespace

std::string CaseConfig::echo() const {
    const CaseConfig c = resolved(*this);
    std::ostringstream os;
    auto put = [&os](const std::string& k, const std::string& v) {
        os << k << " = " << v << "\n";
    };
    auto putd = [&](const std::string& k, double v) { put(k, format_sig(v)); };
    auto putb = [&](const std::string& k, bool v) { put(k, v ? "true" : "false"); };
    put("case", case_label(c.name));
    put("degree", std::to_string(c.degree));
    put("cells_x", std::to_string(c.nx));
    if (c.dim() == 2) put("cells_y", std::to_string(c.ny));
    putd("xlo", c.xlo);
    putd("xhi", c.xhi);
    if (c.dim() == 2) {
        putd("ylo", c.ylo);
        putd("yhi", c.yhi);
    }
    put("internal_dof", std::to_string(c.internal_dof));
    putd("gamma", c.gamma());
    putd("prandtl", c.prandtl);
    putb("pr_correction", c.pr_correction);
    switch (c.viscosity.kind) {
        case ViscosityLaw::Kind::constant_dynamic:
            put("viscosity_law", "dynamic");
            putd("viscosity", c.viscosity.value);
            break;
        case ViscosityLaw::Kind::constant_kinematic:
            put("viscosity_law", "kinematic");
            putd("viscosity", c.viscosity.value);
            break;
        case ViscosityLaw::Kind::power_law:
            put("viscosity_law", "power");
            putd("viscosity", c.viscosity.mu_ref);
            putd("viscosity_t_ref", c.viscosity.t_ref);
            putd("viscosity_exponent", c.viscosity.exponent);
            break;
    }
    if (c.steady) {
        putb("steady", true);
        putd("steady_tol", c.steady_tol);
        putd("time_cap", c.time_cap);
    } else {
        putd("t_end", c.t_end);
    }
    putb("limiter", c.limiter);
    if (c.limiter) putd("tvb_m", c.tvb_m);
    putd("theta", c.theta);
    putb("h43", c.h43);
    put("quad_pts", std::to_string(c.quad_pts > 0 ? c.quad_pts : c.degree + 2));
    if (c.name == CaseName::shock_structure || c.name == CaseName::couette ||
        c.name == CaseName::boundary_layer)
        putd("mach", c.mach);
    if (c.name == CaseName::couette) {
        putd("eckert", c.eckert);
        putd("wall_speed", c.wall_speed);
    }
    if (c.name == CaseName::accuracy) putd("rho_amp", c.rho_amp);
    if (c.name == CaseName::boundary_layer) putb("full_mesh", c.full_mesh);
    putb("report_dual", c.report_dual);
    if (c.reference_cells > 0) {
        put("reference_cells", std::to_string(c.reference_cells));
        put("reference_degree", std::to_string(c.reference_degree));
    }
    return os.str();
}

ShearWalls shear_flow_walls(const CaseConfig& cfg) {
    const double g = cfg.gamma();
    const double cp = g / (2.0 * (g - 1.0)); // R = 1/2
    ShearWalls w;
    w.dT = cfg.wall_speed * cfg.wall_speed / (cp * cfg.eckert);
    const double t_mid = 2.0 / g;
    w.t_bottom = t_mid - 0.5 * w.dT;
    w.t_top = t_mid + 0.5 * w.dT;
    w.lam_bottom = 1.0 / w.t_bottom;
    w.lam_top = 1.0 / w.t_top;
    return w;
}

const Field1D& RunResult::field1() const {
    if (!primal1) throw std::runtime_error("no 1D solution stored");
    return cfg.report_dual ? *dual1 : *primal1;
}

const Field2D& RunResult::field2() const {
    if (!primal2) throw std::runtime_error("no 2D solution stored");
    return cfg.report_dual ? *dual2 : *primal2;
}

namespace {

template <typename Solver>
void march(Solver& s, const CaseConfig& cfg, RunResult& res) {
    if (cfg.steady) {
        long n = 0;
        while (n < cfg.max_steps && s.t < cfg.time_cap && s.last_residual >= cfg.steady_tol) {
            s.step(cfg.time_cap - s.t);
            ++n;
        }
    } else {
        if (!(cfg.t_end > 0)) throw ConfigError("t_end must be positive");
        s.advance_to(cfg.t_end);
    }
    res.t = s.t;
    res.steps = s.nsteps;
    res.residual = s.last_residual;
}

void run_case_1d(const CaseConfig& cfg, RunResult& res) {
    const GasModel m = cfg.gas();
    res.model = m;
    res.mesh1 = std::make_shared<Mesh1D>();
    res.mesh1->x = MeshAxis(cfg.xlo, cfg.xhi, cfg.nx, cfg.name == CaseName::accuracy);

    SolverOptions opt;
    opt.k = cfg.degree;
    opt.theta = cfg.theta;
    opt.limiter = cfg.limiter;
    opt.tvb_m = cfg.tvb_m;
    opt.h43 = cfg.h43;
    opt.mode = cfg.name == CaseName::couette ? FluxMode::reduced_y : FluxMode::ns1d;
    opt.quad_pts = cfg.quad_pts;

    BoundarySpec1D bc;
    switch (cfg.name) {
        case CaseName::accuracy:
            bc.lo.kind = bc.hi.kind = BcKind::periodic;
            break;
        case CaseName::couette: {
            const ShearWalls w = shear_flow_walls(cfg);
            bc.lo.kind = BcKind::noslip_isothermal;
            bc.lo.wall_lam = w.lam_bottom;
            bc.lo.wall_speed = 0;
            bc.hi.kind = BcKind::noslip_isothermal;
            bc.hi.wall_lam = w.lam_top;
            bc.hi.wall_speed = cfg.wall_speed;
            bc.normal_comp = 2;
            bc.tangential_comp = 1;
            break;
        }
        case CaseName::shock_structure: {
            const double g = m.gamma, M = cfg.mach;
            const double p_up = 1.0 / (g * M * M);
            const double r_dn = (g + 1.0) * M * M / (2.0 + (g - 1.0) * M * M);
            const double u_dn = 1.0 / r_dn;
            const double p_dn = p_up * (2.0 * g * M * M - (g - 1.0)) / (g + 1.0);
            const StateVec<3> wl = conserved_1d(1.0, 1.0, p_up, m);
            const StateVec<3> wr = conserved_1d(r_dn, u_dn, p_dn, m);
            bc.lo.kind = bc.hi.kind = BcKind::farfield;
            for (int q = 0; q < 3; ++q) {
                bc.lo.state[q] = wl[q];
                bc.hi.state[q] = wr[q];
            }
            break;
        }
        case CaseName::sod: {
            const StateVec<3> wl = conserved_1d(1.0, 0.0, 1.0, m);
            const StateVec<3> wr = conserved_1d(0.125, 0.0, 0.1, m);
            bc.lo.kind = bc.hi.kind = BcKind::farfield;
            for (int q = 0; q < 3; ++q) {
                bc.lo.state[q] = wl[q];
                bc.hi.state[q] = wr[q];
            }
            break;
        }
        case CaseName::boundary_layer: throw ConfigError("not a 1D case");
    }

    Solver1D s(*res.mesh1, m, bc, opt);

    switch (cfg.name) {
        case CaseName::accuracy:
            s.init([&](double x, double* W) {
                const StateVec<3> w =
                    conserved_1d(1.0 + cfg.rho_amp * std::sin(kPi * x), 1.0, 1.0, m);
                for (int q = 0; q < 3; ++q) W[q] = w[q];
            });
            break;
        case CaseName::couette: {
            const double p0 = 1.0 / m.gamma; // unit sound speed at rho = 1
            s.init([&](double, double* W) {
                const StateVec<4> w = conserved_2d(1.0, cfg.wall_speed, 0.0, p0, m);
                for (int q = 0; q < 4; ++q) W[q] = w[q];
            });
            break;
        }
        case CaseName::shock_structure:
        case CaseName::sod:
            s.init([&](double x, double* W) {
                const double* side = x <= 0 ? bc.lo.state.data() : bc.hi.state.data();
                for (int q = 0; q < 3; ++q) W[q] = side[q];
            });
            break;
        case CaseName::boundary_layer: break;
    }

    march(s, cfg, res);
    res.primal1 = std::move(s.U);
    res.dual1 = std::move(s.V);
    res.primal1->ax = &res.mesh1->x;
    res.dual1->ax = &res.mesh1->x;
}

void run_case_2d(const CaseConfig& cfg, RunResult& res) {
    const GasModel m = cfg.gas();
    res.model = m;
    res.mesh2 = std::make_shared<Mesh2D>();
    res.mesh2->x = MeshAxis(cfg.xlo, cfg.xhi, cfg.nx, false);
    res.mesh2->y = MeshAxis(cfg.ylo, cfg.yhi, cfg.ny, false);

    SolverOptions opt;
    opt.k = cfg.degree;
    opt.theta = cfg.theta;
    opt.limiter = cfg.limiter;
    opt.tvb_m = cfg.tvb_m;
    opt.h43 = cfg.h43;
    opt.quad_pts = cfg.quad_pts;

    const double g = m.gamma;
    const double lam_inf = 0.5 * g * cfg.mach * cfg.mach;
    const double p_inf = 1.0 / (2.0 * lam_inf);
    const StateVec<4> w_inf = conserved_2d(1.0, 1.0, 0.0, p_inf, m);

    BoundarySpec2D bc;
    bc.xlo.kind = BcKind::nonreflective;
    bc.xlo.state = w_inf;
    bc.xhi.kind = BcKind::extrapolate;
    bc.yhi.kind = BcKind::nonreflective;
    bc.yhi.state = w_inf;
    bc.yhi.tangential_from_interior = true; // outflow sheds the grown layer
    bc.ylo.kind = BcKind::noslip_adiabatic;
    bc.ylo_left.kind = BcKind::mirror;
    bc.ylo_split = true;
    bc.ylo_split_x = 0.0; // plate leading edge

    Solver2D s(*res.mesh2, m, bc, opt);
    s.init([&](double, double, double* W) {
        for (int q = 0; q < 4; ++q) W[q] = w_inf[q];
    });

    march(s, cfg, res);
    res.primal2 = std::move(s.U);
    res.dual2 = std::move(s.V);
    res.primal2->mesh = res.mesh2.get();
    res.dual2->mesh = res.mesh2.get();
}

} // namespace

RunResult run_case(const CaseConfig& cfg0, const std::string& out_dir) {
    const CaseConfig cfg = resolved(cfg0);
    RunResult res;
    res.cfg = cfg;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        if (cfg.dim() == 1)
            run_case_1d(cfg, res);
        else
            run_case_2d(cfg, res);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw std::runtime_error(case_label(cfg.name) + ": " + e.what());
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!out_dir.empty()) write_profile(res, out_dir);
    return res;
}

namespace {

void echo_header(std::ostream& os, const RunResult& res) {
    std::istringstream lines(res.cfg.echo());
    std::string line;
    while (std::getline(lines, line)) os << "# " << line << "\n";
    os << "# t = " << format_sig(res.t) << "\n";
    os << "# steps = " << res.steps << "\n";
    if (res.cfg.steady) os << "# residual = " << format_sig(res.residual) << "\n";
}

} // namespace

void write_profile_csv(std::ostream& os, const RunResult& res) {
    os << std::setprecision(14);
    echo_header(os, res);
    const GasModel& m = res.model;
    if (res.cfg.dim() == 1) {
        const Field1D& f = res.field1();
        const bool shear = res.cfg.name == CaseName::couette;
        ShearWalls walls{};
        if (shear) walls = shear_flow_walls(res.cfg);
        os << (shear ? "x,rho,u,p,T,v,t_ratio" : "x,rho,u,p,T") << "\n";
        double W[4];
        for (int cell = 0; cell < f.count(); ++cell) {
            const double x = f.center(cell);
            f.eval_all(cell, 0.0, W);
            if (shear) {
                const Primitive pr = primitives_from_conserved_2d(W, m);
                const double ratio = (pr.T - walls.t_bottom) / (walls.t_top - walls.t_bottom);
                os << format_sig(x) << ',' << format_sig(pr.rho) << ',' << format_sig(pr.U)
                   << ',' << format_sig(pr.p) << ',' << format_sig(pr.T) << ','
                   << format_sig(pr.V) << ',' << format_sig(ratio) << "\n";
            } else {
                const Primitive pr = primitives_from_conserved_1d(W, m);
                os << format_sig(x) << ',' << format_sig(pr.rho) << ',' << format_sig(pr.U)
                   << ',' << format_sig(pr.p) << ',' << format_sig(pr.T) << "\n";
            }
        }
    } else {
        const Field2D& f = res.field2();
        const Mesh2D& mesh = *res.mesh2;
        os << "x,y,rho,u,v,p,T\n";
        double W[4];
        for (int ix = 0; ix < f.nx; ++ix)
            for (int iy = 0; iy < f.ny; ++iy) {
                const double x =
                    f.dual ? mesh.x.dual_center(ix) : mesh.x.primal_center(ix);
                const double y =
                    f.dual ? mesh.y.dual_center(iy) : mesh.y.primal_center(iy);
                f.eval_all(ix, iy, 0.0, 0.0, W);
                const Primitive pr = primitives_from_conserved_2d(W, m);
                os << format_sig(x) << ',' << format_sig(y) << ',' << format_sig(pr.rho)
                   << ',' << format_sig(pr.U) << ',' << format_sig(pr.V) << ','
                   << format_sig(pr.p) << ',' << format_sig(pr.T) << "\n";
            }
    }
}

std::string write_profile(RunResult& res, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    std::string name = case_label(res.cfg.name) + "_p" + std::to_string(res.cfg.degree) +
                       "_n" + std::to_string(res.cfg.nx);
    if (res.cfg.dim() == 2) name += "x" + std::to_string(res.cfg.ny);
    const std::string path = (fs::path(out_dir) / (name + ".csv")).string();
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_profile_csv(out, res);
    res.files.push_back(path);
    return path;
}

NormPair error_norms(const Field1D& f, const ScalarFn& value,
                     const std::function<double(double)>& reference, int npts) {
    const QuadratureRule& q = gauss_legendre(npts);
    NormPair n;
    double W[4];
    for (int cell = 0; cell < f.count(); ++cell) {
        // dual end cells straddle a bounded boundary; integrate only the
        // interior part of the cell
        const double s0 = (f.dual && f.ax->dual_end_lo(cell)) ? 0.0 : -1.0;
        const double s1 = (f.dual && f.ax->dual_end_hi(cell)) ? 0.0 : 1.0;
        const double xc = f.center(cell), w2 = 0.25 * (s1 - s0) * f.width(cell);
        const double sm = 0.5 * (s0 + s1);
        for (int i = 0; i < q.n(); ++i) {
            const double s = sm + 0.5 * (s1 - s0) * q.nodes[i];
            const double x = xc + 0.5 * f.width(cell) * s;
            f.eval_all(cell, s, W);
            const double d = std::abs(value(x, W) - reference(x));
            n.l1 += w2 * q.weights[i] * d;
            n.linf = std::max(n.linf, d);
        }
    }
    return n;
}

ScalarFn case_error_variable(const CaseConfig& cfg, const GasModel& m, std::string* label) {
    switch (cfg.name) {
        case CaseName::accuracy:
        case CaseName::sod:
            if (label) *label = "density";
            return [](double, const double* W) { return W[0]; };
        case CaseName::couette: {
            if (label) *label = "temperature_ratio";
            const ShearWalls w = shear_flow_walls(cfg);
            const GasModel gm = m;
            return [w, gm](double, const double* W) {
                const Primitive pr = primitives_from_conserved_2d(W, gm);
                return (pr.T - w.t_bottom) / (w.t_top - w.t_bottom);
            };
        }
        case CaseName::shock_structure:
            if (label) *label = "velocity";
            return [](double, const double* W) { return W[1] / W[0]; };
        case CaseName::boundary_layer: break;
    }
    throw ConfigError("no scalar error variable for case " + case_label(cfg.name));
}

void save_field_1d(const std::string& path, const Field1D& f, const std::string& header) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    std::istringstream lines(header);
    std::string line;
    while (std::getline(lines, line)) out << "# " << line << "\n";
    out << f.count() << ' ' << f.k << ' ' << f.nc << ' ' << (f.dual ? 1 : 0) << "\n";
    out << std::setprecision(17);
    for (int cell = 0; cell < f.count(); ++cell) {
        for (int q = 0; q < f.nc; ++q) {
            for (int mo = 0; mo < f.nm; ++mo) out << f.coeff(cell, q)[mo] << ' ';
        }
        out << "\n";
    }
}

bool load_field_1d(const std::string& path, Field1D& f, const std::string&) {
    std::ifstream in(path);
    if (!in) return false;
    std::string line;
    while (in.peek() == '#') std::getline(in, line);
    int count = 0, k = 0, nc = 0, dual = 0;
    if (!(in >> count >> k >> nc >> dual)) return false;
    if (count != f.count() || k != f.k || nc != f.nc || dual != (f.dual ? 1 : 0))
        return false;
    for (int cell = 0; cell < count; ++cell)
        for (int q = 0; q < nc; ++q)
            for (int mo = 0; mo < f.nm; ++mo)
                if (!(in >> f.coeff(cell, q)[mo])) return false;
    return true;
}

namespace {

// the refined self-run configuration whose solution serves as reference
CaseConfig reference_config(const CaseConfig& cfg) {
    CaseConfig ref = cfg;
    ref.degree = cfg.reference_degree;
    ref.nx = cfg.reference_cells;
    ref.h43_auto = true;
    ref.quad_pts = 0;
    ref.report_dual = false;
    return ref;
}

} // namespace

std::function<double(double)> case_reference(const CaseConfig& cfg,
                                             const std::string& cache_dir) {
    switch (cfg.name) {
        case CaseName::couette: {
            const double H = cfg.xhi - cfg.xlo;
            const double pr = cfg.prandtl, ec = cfg.eckert;
            return [H, pr, ec](double y) { return couette_exact(y, H, pr, ec); };
        }
        case CaseName::shock_structure: {
            auto prof = std::make_shared<ShockStructure>(shock_structure_reference(
                cfg.mach, cfg.gamma(), cfg.prandtl, cfg.viscosity.mu_ref,
                cfg.viscosity.exponent));
            return [prof](double x) { return prof->U_at(x); };
        }
        case CaseName::accuracy:
        case CaseName::sod: {
            const CaseConfig ref = resolved(reference_config(cfg));
            if (ref.reference_cells <= 0 || ref.nx <= 0 || ref.degree < 1)
                throw ConfigError("reference resolution is not set");
            namespace fs = std::filesystem;
            std::string dir = cache_dir;
            if (dir.empty()) dir = (fs::temp_directory_path() / "cdgflow-cache").string();
            fs::create_directories(dir);
            const std::string echo = ref.echo();
            char hex[20];
            std::snprintf(hex, sizeof hex, "%016llx",
                          static_cast<unsigned long long>(config_hash(echo)));
            const std::string path =
                (fs::path(dir) / ("ref_" + case_label(ref.name) + "_" + hex + ".txt"))
                    .string();

            auto mesh = std::make_shared<Mesh1D>();
            mesh->x = MeshAxis(ref.xlo, ref.xhi, ref.nx, ref.name == CaseName::accuracy);
            auto field = std::make_shared<Field1D>(mesh->x, false, ref.degree, 3);
            if (!load_field_1d(path, *field, echo)) {
                RunResult rr = run_case(ref);
                save_field_1d(path, rr.field1(), echo);
                *field = rr.field1();
                field->ax = &mesh->x;
            }
            const GasModel m = ref.gas();
            ScalarFn var = case_error_variable(ref, m, nullptr);
            const bool periodic = mesh->x.periodic;
            const double lo = ref.xlo, len = ref.xhi - ref.xlo;
            return [mesh, field, var, periodic, lo, len](double x) {
                if (periodic) // seam-straddling query points fold back in
                    x = lo + std::fmod(std::fmod(x - lo, len) + len, len);
                double W[4];
                field->eval_global(x, W);
                return var(x, W);
            };
        }
        case CaseName::boundary_layer: break;
    }
    throw ConfigError("no 1D reference profile for case " + case_label(cfg.name));
}

NormPair run_error(const RunResult& res, const std::string& cache_dir) {
    const ScalarFn var = case_error_variable(res.cfg, res.model, nullptr);
    const auto ref = case_reference(res.cfg, cache_dir);
    return error_norms(res.field1(), var, ref, res.cfg.degree + 3);
}

ConvergenceStudy convergence_study(const CaseConfig& base, const std::vector<int>& cells,
                                   const std::string& out_dir) {
    if (cells.empty()) throw ConfigError("convergence study needs at least one cell count");
    ConvergenceStudy study;
    const GasModel m = base.gas();
    const ScalarFn var = case_error_variable(base, m, &study.variable);
    const auto ref = case_reference(base, out_dir);

    for (size_t i = 0; i < cells.size(); ++i) {
        CaseConfig cfg = base;
        cfg.nx = cells[i];
        RunResult res = run_case(cfg, out_dir);
        const NormPair e = error_norms(res.field1(), var, ref, cfg.degree + 3);
        ConvergenceRow row;
        row.n = cells[i];
        row.l1 = e.l1;
        row.linf = e.linf;
        if (i > 0) {
            const double r = std::log(static_cast<double>(cells[i]) / cells[i - 1]);
            row.l1_order = std::log(study.rows[i - 1].l1 / e.l1) / r;
            row.linf_order = std::log(study.rows[i - 1].linf / e.linf) / r;
        }
        study.rows.push_back(row);
    }

    std::ostringstream os;
    os << "# case = " << case_label(base.name) << ", degree = " << base.degree
       << ", variable = " << study.variable << "\n";
    os << "# " << std::left << std::setw(6) << "N" << std::setw(22) << "L1" << std::setw(18)
       << "order" << std::setw(22) << "Linf" << std::setw(18) << "order" << "\n";
    for (size_t i = 0; i < study.rows.size(); ++i) {
        const ConvergenceRow& r = study.rows[i];
        os << "  " << std::left << std::setw(6) << r.n << std::setw(22) << format_sig(r.l1)
           << std::setw(18) << (i == 0 ? std::string("-") : format_sig(r.l1_order))
           << std::setw(22) << format_sig(r.linf) << std::setw(18)
           << (i == 0 ? std::string("-") : format_sig(r.linf_order)) << "\n";
    }
    study.table = os.str();
    return study;
}

} // namespace cdg
