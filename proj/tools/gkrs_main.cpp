// Command-line front end: build soliton profiles from JSON configs, run the
// verification suites, and emit machine-readable reports (JSON + CSV).

#include "CLI11.hpp"

#include <Eigen/Dense>

#include <filesystem>
#include <iostream>
#include <random>

#include "gkrs/analysis.hpp"
#include "gkrs/ansatz.hpp"
#include "gkrs/curvature.hpp"
#include "gkrs/io.hpp"
#include "gkrs/numeric.hpp"
#include "gkrs/profiles.hpp"
#include "gkrs/toric.hpp"

namespace fs = std::filesystem;
using gkrs::io::json;
using namespace gkrs;

namespace {

struct Grids {
    int xi1 = 200, xi2 = 200, t = 41;
    double xi2_max = 20.0;
    int samples = 100, ode_points = 50;
    double r_max = 1e4;
    int radial_steps = 24;
};

struct RunConfig {
    profiles::SolitonParams params;
    Grids grids;
    std::map<std::string, double> tol;
    uint64_t seed = 1;
};

void reject_unknown(const json& j, std::initializer_list<const char*> allowed,
                    const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed) ok |= it.key() == k;
        if (!ok) throw std::runtime_error("config: unknown key \"" + it.key() + "\" in " + where);
    }
}

RunConfig parse_config(const fs::path& path) {
    json j = json::parse(io::read_text(path));
    reject_unknown(j,
                   {"schema", "family", "ell", "dims", "alpha", "a", "scale", "gauge",
                    "bundle_degree", "grids", "tolerances", "seed"},
                   "top level");
    if (j.at("schema").get<std::string>() != "gkrs-config/1")
        throw std::runtime_error("config: unsupported schema");
    RunConfig rc;
    auto fam = profiles::family_from_name(j.at("family").get<std::string>());
    if (!fam) throw std::runtime_error("config: unknown family");
    rc.params.family = *fam;
    rc.params.partition.ell = j.at("ell").get<int>();
    rc.params.partition.dims = j.value("dims", std::vector<int>{});
    rc.params.alpha = j.at("alpha").get<std::vector<double>>();
    rc.params.a = j.at("a").get<double>();
    rc.params.scale = j.value("scale", 1.0);
    std::string gauge = j.value("gauge", std::string("c1"));
    if (gauge != "c1" && gauge != "q1") throw std::runtime_error("config: gauge must be c1 or q1");
    rc.params.gauge =
        gauge == "c1" ? profiles::Gauge::UnitExpCoeff : profiles::Gauge::UnitQAtFirstNode;
    rc.params.bundle_degree = j.value("bundle_degree", rc.params.partition.dimension());
    if (j.contains("grids")) {
        const json& g = j["grids"];
        reject_unknown(
            g, {"xi1", "xi2", "xi2_max", "t", "samples", "ode_points", "r_max", "radial_steps"},
            "grids");
        rc.grids.xi1 = g.value("xi1", rc.grids.xi1);
        rc.grids.xi2 = g.value("xi2", rc.grids.xi2);
        rc.grids.t = g.value("t", rc.grids.t);
        rc.grids.xi2_max = g.value("xi2_max", rc.grids.xi2_max);
        rc.grids.samples = g.value("samples", rc.grids.samples);
        rc.grids.ode_points = g.value("ode_points", rc.grids.ode_points);
        rc.grids.r_max = g.value("r_max", rc.grids.r_max);
        rc.grids.radial_steps = g.value("radial_steps", rc.grids.radial_steps);
    }
    rc.tol = {{"ode", 1e-10}, {"ma", 1e-6},   {"boundary", 1e-3},
              {"eigen", 1e-8}, {"compat", 1e-8}, {"legendre", 1e-6},
              {"soliton1d", 1e-8}, {"flat", 1e-6}, {"ricci_flat", 1e-5},
              {"curvature", 1e-4}, {"growth", 0.1}};
    if (j.contains("tolerances")) {
        for (auto it = j["tolerances"].begin(); it != j["tolerances"].end(); ++it) {
            if (!rc.tol.count(it.key()))
                throw std::runtime_error("config: unknown tolerance \"" + it.key() + "\"");
            rc.tol[it.key()] = it.value().get<double>();
        }
    }
    rc.seed = j.value("seed", static_cast<uint64_t>(1));
    return rc;
}

profiles::ProfileSet build_fibred(const profiles::SolitonParams& p) {
    if (p.family == profiles::Family::CaoType) return profiles::build_cao_profile(p);
    if (p.family == profiles::Family::TaubNUTType) return profiles::build_taubnut_profile(p);
    throw std::runtime_error("this command needs a cao or taubnut family config");
}

struct CommonArgs {
    std::string config;
    std::string out = ".";
    unsigned workers = numeric::default_workers();
    uint64_t seed = 0;  // 0: take the config's seed
    std::vector<std::string> tol_overrides;
};

void apply_overrides(RunConfig& rc, const CommonArgs& args) {
    if (args.seed != 0) rc.seed = args.seed;
    for (const auto& kv : args.tol_overrides) {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("--tol-override expects KEY=VAL, got " + kv);
        std::string key = kv.substr(0, eq);
        if (!rc.tol.count(key)) throw std::runtime_error("unknown tolerance key " + key);
        rc.tol[key] = std::stod(kv.substr(eq + 1));
    }
}

json check_entry(const std::string& name, bool pass, double worst, const std::string& detail = "") {
    json e;
    e["name"] = name;
    e["pass"] = pass;
    e["worst"] = worst;
    if (!detail.empty()) e["detail"] = detail;
    return e;
}

// persistent verification battery, shared by `verify` and `report`
json run_verification(const profiles::ProfileSet& ps, const RunConfig& rc) {
    json rep;
    rep["schema"] = "gkrs-verify/1";
    rep["family"] = profiles::family_name(ps.family);
    json checks = json::array();
    std::mt19937_64 rng(rc.seed);
    const int l = ps.ell();
    auto sol = ansatz::killing_and_soliton_data(ps);

    {  // separated first-order identity for the stored coefficients
        double worst = 0.0;
        for (int j = 0; j < l; ++j)
            for (int i = 0; i < rc.grids.ode_points; ++i) {
                double t = ps.domain[j].at((i + 0.5) / rc.grids.ode_points);
                double rhs = ps.q(t) * ps.pc(t);
                double lhs = ps.F[j].derivative_at(t, 1) + 2.0 * ps.a * ps.F[j](t);
                worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));
            }
        checks.push_back(check_entry("ode_residual", worst < rc.tol.at("ode"), worst));
    }

    ansatz::SolitonPotential pot(ps);
    {  // Monge-Ampere residual constancy
        std::vector<Eigen::VectorXd> pts;
        for (int s = 0; s < rc.grids.samples; ++s)
            pts.push_back(pot.nu_of(ansatz::sample_interior(ps, rng)));
        Eigen::VectorXd b(ps.n()), c2 = Eigen::VectorXd::Constant(ps.n(), 2.0);
        for (int i = 0; i < ps.n(); ++i) b(i) = sol.b[i];
        auto st = toric::ma_residual_stats(pot, b, c2, pts);
        checks.push_back(
            check_entry("ma_constancy", st.stddev < rc.tol.at("ma"), st.stddev,
                        "mean " + io::format_double(st.mean)));
    }

    if (ps.partition.dim_sum() == 0) {  // compatibility triple on the chart
        double worst = 0.0;
        for (int s = 0; s < 20; ++s) {
            auto p = ansatz::sample_interior(ps, rng);
            auto ct = ansatz::chart_tensors(ps, p);
            Eigen::MatrixXd I = Eigen::MatrixXd::Identity(2 * l, 2 * l);
            worst = std::max(worst, (ct.J * ct.J + I).norm());
            worst = std::max(worst, (ct.J.transpose() * ct.g * ct.J - ct.g).norm() / ct.g.norm());
            worst = std::max(worst, (ct.g * ct.J - ct.omega).norm() / ct.omega.norm());
            // closedness of omega: mixed partials of sigma_r agree by symmetry
            for (int r = 1; r <= l; ++r)
                for (int i = 0; i < l; ++i)
                    for (int k = i + 1; k < l; ++k) {
                        auto dS = [&](int wrt, int at) {
                            double h = 1e-5 * (1.0 + std::abs(p.xi[wrt]));
                            auto xi = p.xi;
                            xi[wrt] += h;
                            auto up = symfun::elem_symmetric(xi);
                            xi[wrt] -= 2 * h;
                            auto dn = symfun::elem_symmetric(xi);
                            return (up.reduced[at][r - 1] - dn.reduced[at][r - 1]) / (2 * h);
                        };
                        double d1 = dS(k, i), d2 = dS(i, k);
                        worst = std::max(worst, std::abs(d1 - d2) / (1.0 + std::abs(d1)));
                    }
        }
        checks.push_back(check_entry("compatibility_triple", worst < rc.tol.at("compat"), worst));
    } else {  // momentum-angle complex structure squares to -Id
        double worst = 0.0;
        for (int s = 0; s < 10; ++s) {
            auto p = ansatz::sample_interior(ps, rng);
            Eigen::MatrixXd J = ansatz::complex_structure_at(ps, p);
            Eigen::MatrixXd I = Eigen::MatrixXd::Identity(J.rows(), J.cols());
            worst = std::max(worst, (J * J + I).norm());
        }
        checks.push_back(check_entry("complex_structure", worst < rc.tol.at("compat"), worst));
    }

    {  // hamiltonian 2-form eigenvalues
        double worst = 0.0;
        for (int s = 0; s < 20; ++s) {
            auto p = ansatz::sample_interior(ps, rng);
            auto hf = ansatz::hamiltonian_form_at(ps, p);
            std::vector<double> expect = p.xi;
            for (const auto& [eta, mult] : ps.eta_multiplicity)
                for (int m = 0; m < mult; ++m) expect.push_back(eta);
            std::sort(expect.begin(), expect.end());
            for (size_t i = 0; i < expect.size(); ++i)
                worst = std::max(worst, std::abs(hf.eigenvalues[i] - expect[i]));
        }
        checks.push_back(check_entry("hamiltonian_eigenvalues", worst < rc.tol.at("eigen"), worst));
    }

    {  // Legendre consistency: finite-difference Hessian of the value
        double worst = 0.0;
        for (int s = 0; s < 3; ++s) {
            auto p = ansatz::sample_interior(ps, rng, 0.25);
            Eigen::VectorXd nu = pot.nu_of(p);
            potential::NumericPotential num(ps.n(), [&](const Eigen::VectorXd& x) {
                return pot.value(x);
            });
            Eigen::MatrixXd Hfd = num.hessian(nu);
            Eigen::MatrixXd Han = pot.hessian(nu);
            worst = std::max(worst, (Hfd - Han).norm() / (1.0 + Han.norm()));
        }
        checks.push_back(check_entry("legendre_consistency", worst < rc.tol.at("legendre"), worst));
    }

    {  // per-interval soliton identity
        double worst = 0.0;
        for (int j = 0; j < l; ++j) {
            double base = ansatz::ricci_soliton_residual_1d(ps, j, ps.domain[j].at(0.45), 0.0);
            for (int i = 0; i < 20; ++i) {
                double t = ps.domain[j].at(0.1 + 0.8 * (i + 0.5) / 20.0);
                double v = ansatz::ricci_soliton_residual_1d(ps, j, t, 0.0);
                worst = std::max(worst, std::abs(v - base));
            }
        }
        checks.push_back(check_entry("soliton_identity_1d", worst < rc.tol.at("soliton1d"), worst));
    }

    if (ps.a > 0.0) {  // soliton vector escapes the forbidden region
        auto poly = toric::DelzantPolyhedron::standard_cone(ps.n());
        Eigen::VectorXd b(ps.n());
        for (int i = 0; i < ps.n(); ++i) b(i) = sol.b[i];
        auto fr = toric::forbidden_region_check(poly, b);
        checks.push_back(check_entry("forbidden_region", !fr.forbidden, fr.forbidden ? 1.0 : 0.0));
    }

    {  // boundary certificates, one per facet of the momentum cone
        auto poly = toric::DelzantPolyhedron::standard_cone(ps.n());
        std::mt19937_64 rng2(rc.seed + 17);
        Eigen::VectorXd start = pot.nu_of(ansatz::sample_interior(ps, rng2, 0.35));
        bool deg_ok = true, slope_ok = true;
        double worst_deg = 0.0, worst_slope = 0.0;
        for (int facet = 0; facet < ps.n(); ++facet) {
            auto bl =
                toric::boundary_condition_check(pot, poly, facet, start, 12, rc.tol.at("boundary"));
            deg_ok &= bl.pass_degeneracy;
            slope_ok &= bl.pass_slope;
            worst_deg = std::max(worst_deg, bl.degeneracy_limit);
            worst_slope = std::max(worst_slope,
                                   std::abs(bl.normal_slope_limit - bl.expected_slope));
        }
        checks.push_back(check_entry("boundary_degeneracy", deg_ok, worst_deg));
        checks.push_back(check_entry("boundary_normal_slope", slope_ok, worst_slope));
    }

    if (ps.a == 0.0) {  // flat / Ricci-flat limits
        std::mt19937_64 rng3(rc.seed + 29);
        double worst = 0.0;
        for (int s = 0; s < 5; ++s) {
            auto p = ansatz::sample_interior(ps, rng3, 0.2);
            Eigen::VectorXd nu = pot.nu_of(p);
            Eigen::VectorXd b0 = Eigen::VectorXd::Zero(ps.n());
            auto cr = curvature::curvature_from_potential(pot, nu, b0);
            worst = std::max(worst, ps.flat ? cr.riemann_norm : cr.ricci_norm);
        }
        checks.push_back(check_entry(ps.flat ? "flat_riemann_norm" : "ricci_flat_norm",
                                     worst < rc.tol.at(ps.flat ? "flat" : "ricci_flat"), worst));
        rep["curvature_flag"] = ps.flat ? "flat" : (ps.ricci_flat ? "ricci_flat" : "none");
    }

    {  // Killing field growth along the unbounded rays
        std::vector<Eigen::VectorXd> vecs;
        std::vector<std::string> names;
        ansatz::SolitonPotential potl(ps);
        for (int r = 0; r < l; ++r) {
            vecs.push_back(potl.sigma_linear().row(r).transpose());
            names.push_back("K" + std::to_string(r + 1));
        }
        for (int i = 0; i < ps.n(); ++i) {
            Eigen::VectorXd e = Eigen::VectorXd::Zero(ps.n());
            e(i) = 1.0;
            vecs.push_back(e);
            names.push_back("X" + std::to_string(i + 1));
        }
        bool all = true;
        double worst = 0.0;
        json growth = json::array();
        for (int j = 0; j < l; ++j) {
            if (ps.domain[j].bounded()) continue;
            auto gcs = toric::killing_norm_growth_check(ps, vecs, names, j, 200.0, 20, 1.05);
            for (const auto& gc : gcs) {
                all &= gc.pass;
                worst = std::max(worst, gc.exponent);
                growth.push_back({{"ray", j}, {"field", gc.name}, {"exponent", gc.exponent}});
            }
        }
        rep["killing_growth"] = growth;
        checks.push_back(check_entry("killing_norm_growth", all, worst));
    }

    bool all = true;
    for (const auto& c : checks) all &= c.at("pass").get<bool>();
    rep["checks"] = checks;
    rep["all_pass"] = all;
    return rep;
}

int cmd_build(const CommonArgs& args) {
    RunConfig rc = parse_config(args.config);
    apply_overrides(rc, args);
    fs::create_directories(args.out);
    if (rc.params.family == profiles::Family::CalabiBundle ||
        rc.params.family == profiles::Family::Cigar) {
        auto cp = profiles::build_calabi_profile(rc.params);
        io::write_text(fs::path(args.out) / "profile.json", io::calabi_to_json(cp).dump(2) + "\n");
        json adm;
        adm["schema"] = "gkrs-admissibility/1";
        adm["checks"] = json::array();
        double theta0 = cp.blow_down || cp.cigar ? cp(cp.alpha + 1e-12) : cp(cp.alpha);
        adm["checks"].push_back(check_entry("theta_vanishes_at_alpha", std::abs(theta0) < 1e-9,
                                            std::abs(theta0)));
        adm["theta_prime_at_alpha"] = cp.theta_prime_at_alpha();
        adm["all_pass"] = adm["checks"][0]["pass"].get<bool>();
        io::write_text(fs::path(args.out) / "admissibility.json", adm.dump(2) + "\n");
        std::cout << adm.dump(2) << "\n";
        return adm["all_pass"].get<bool>() ? 0 : 1;
    }
    auto ps = build_fibred(rc.params);
    io::write_text(fs::path(args.out) / "profile.json", io::profile_to_json(ps).dump(2) + "\n");
    io::write_text(fs::path(args.out) / "polyhedron.txt",
                   toric::polyhedron_to_record(toric::DelzantPolyhedron::standard_cone(ps.n())));
    auto rep = profiles::check_admissibility(ps);
    json adm;
    adm["schema"] = "gkrs-admissibility/1";
    adm["flags"] = {{"flat", ps.flat},
                    {"ricci_flat", ps.ricci_flat},
                    {"incomplete_expected", ps.incomplete_expected}};
    json checks = json::array();
    for (const auto& c : rep.checks) checks.push_back(check_entry(c.name, c.pass, c.worst, c.detail));
    adm["checks"] = checks;
    adm["q_roots_per_gap"] = rep.q_roots_per_gap;
    adm["all_pass"] = rep.all_pass();
    io::write_text(fs::path(args.out) / "admissibility.json", adm.dump(2) + "\n");
    std::cout << adm.dump(2) << "\n";
    return rep.all_pass() ? 0 : 1;
}

int cmd_verify(const CommonArgs& args) {
    RunConfig rc = parse_config(args.config);
    apply_overrides(rc, args);
    fs::path profile_path = fs::path(args.out) / "profile.json";
    if (!fs::exists(profile_path)) {
        std::cerr << "verify: missing profile record " << profile_path << "\n";
        return 2;
    }
    auto ps = io::profile_from_json(json::parse(io::read_text(profile_path)));
    json rep = run_verification(ps, rc);
    io::write_text(fs::path(args.out) / "verify.json", rep.dump(2) + "\n");
    std::cout << rep.dump(2) << "\n";
    return rep["all_pass"].get<bool>() ? 0 : 1;
}

int cmd_curvature(const CommonArgs& args) {
    RunConfig rc = parse_config(args.config);
    apply_overrides(rc, args);
    fs::create_directories(args.out);
    auto ps = build_fibred(rc.params);
    ansatz::SolitonPotential pot(ps);
    auto sol = ansatz::killing_and_soliton_data(ps);
    Eigen::VectorXd b(ps.n());
    for (int i = 0; i < ps.n(); ++i) b(i) = sol.b[i];
    std::mt19937_64 rng(rc.seed);
    const int count = std::min(rc.grids.samples, 50);
    io::CsvWriter csv([&] {
        std::vector<std::string> h;
        for (int i = 0; i < ps.n(); ++i) h.push_back("mu" + std::to_string(i + 1));
        h.insert(h.end(), {"scal", "ricci_min_eig", "soliton_residual", "riemann_norm",
                           "scal_closed", "scal_gap"});
        return h;
    }());
    double max_gap = 0.0, max_res = 0.0, max_ricci = 0.0, max_riem = 0.0;
    const bool closed_form_2d = ps.ell() == 2 && ps.partition.dim_sum() == 0;
    for (int s = 0; s < count; ++s) {
        auto p = ansatz::sample_interior(ps, rng, 0.15);
        Eigen::VectorXd nu = pot.nu_of(p);
        auto cr = curvature::curvature_from_potential(pot, nu, b);
        double scal_closed = std::numeric_limits<double>::quiet_NaN(), gap = 0.0;
        if (closed_form_2d) {
            auto d = curvature::ambi_closed_forms_2d(ps.F[0], ps.F[1], p.xi[0], p.xi[1]);
            scal_closed = d.scal;
            gap = std::abs(cr.scal - d.scal);
            max_gap = std::max(max_gap, gap);
        }
        std::vector<double> row(nu.data(), nu.data() + ps.n());
        row.insert(row.end(), {cr.scal,
                               *std::min_element(cr.ricci_eigenvalues.begin(),
                                                 cr.ricci_eigenvalues.end()),
                               cr.soliton_residual_norm, cr.riemann_norm, scal_closed, gap});
        csv.row(row);
        max_res = std::max(max_res, cr.soliton_residual_norm);
        max_ricci = std::max(max_ricci, cr.ricci_norm);
        max_riem = std::max(max_riem, cr.riemann_norm);
    }
    io::write_text(fs::path(args.out) / "curvature.csv", csv.str());
    json sum;
    sum["schema"] = "gkrs-curvature/1";
    sum["samples"] = count;
    sum["max_soliton_residual"] = max_res;
    sum["max_scal_gap_closed_vs_fd"] = closed_form_2d ? json(max_gap) : json();
    sum["ricci_norm_max"] = max_ricci;
    sum["riemann_norm_max"] = max_riem;
    if (ps.a == 0.0) sum["flat"] = ps.flat;
    bool pass = max_res < 10 * rc.tol.at("curvature") &&
                (!closed_form_2d || max_gap < rc.tol.at("curvature"));
    sum["pass"] = pass;
    io::write_text(fs::path(args.out) / "curvature_summary.json", sum.dump(2) + "\n");
    std::cout << sum.dump(2) << "\n";
    return pass ? 0 : 1;
}

int cmd_scan(const CommonArgs& args) {
    RunConfig rc = parse_config(args.config);
    apply_overrides(rc, args);
    fs::create_directories(args.out);
    auto ps = build_fibred(rc.params);
    curvature::GridSpec grid{rc.grids.xi1, rc.grids.xi2, rc.grids.xi2_max, rc.grids.t};
    auto rep = curvature::positivity_scan_2d(ps, grid, args.workers, true);
    io::CsvWriter csv({"xi1", "xi2", "scal", "kappa_I", "lambda", "ric_bound", "f_min",
                       "fbar_min", "fs_min"});
    for (const auto& r : rep.rows) csv.row(r);
    io::write_text(fs::path(args.out) / "scan.csv", csv.str());
    auto cc = curvature::CaoCurvature2D::from_profile(ps);
    auto ext = curvature::scal_extremum_2d(cc, grid.xi2_max);
    json sum;
    sum["schema"] = "gkrs-scan/1";
    sum["grid"] = {{"xi1", grid.xi1_count},
                   {"xi2", grid.xi2_count},
                   {"xi2_max", grid.xi2_max},
                   {"t", grid.t_count}};
    sum["minima"] = {{"ric_bound", rep.min_ric_bound}, {"f", rep.min_f},       {"fs", rep.min_fs},
                     {"fbar", rep.min_fbar},           {"kappa_I", rep.min_kappa}};
    sum["argmin"] = {{"ric_bound", rep.argmin_ric_bound},
                     {"f", rep.argmin_f},
                     {"fs", rep.argmin_fs},
                     {"fbar", rep.argmin_fbar},
                     {"kappa_I", rep.argmin_kappa}};
    sum["sectional_min"] = rep.min_fs;
    sum["scal_max"] = {{"grid_value", rep.max_scal},
                       {"grid_argmax", rep.argmax_scal},
                       {"refined_value", ext.value},
                       {"refined_argmax", {ext.xi1, ext.xi2}},
                       {"expected", ext.expected},
                       {"argmax_error", ext.argmax_error}};
    sum["all_positive"] = rep.all_positive;
    io::write_text(fs::path(args.out) / "scan_summary.json", sum.dump(2) + "\n");
    std::cout << sum.dump(2) << "\n";
    return rep.all_positive ? 0 : 1;
}

int cmd_volume(const CommonArgs& args) {
    RunConfig rc = parse_config(args.config);
    apply_overrides(rc, args);
    fs::create_directories(args.out);
    auto ps = build_fibred(rc.params);
    auto gf = analysis::volume_growth_fit(ps, rc.grids.r_max, rc.grids.radial_steps);
    io::CsvWriter csv({"r", "volume"});
    for (size_t k = 0; k < gf.radii.size(); ++k)
        csv.row(std::array<double, 2>{gf.radii[k], gf.values[k]});
    io::write_text(fs::path(args.out) / "volume.csv", csv.str());
    double expected = ps.family == profiles::Family::CaoType ? ps.n() : 2 * ps.n() - 1;
    json sum;
    sum["schema"] = "gkrs-volume/1";
    sum["exponent"] = gf.exponent;
    sum["expected"] = expected;
    sum["r_squared"] = gf.r_squared;
    bool pass = std::abs(gf.exponent - expected) < rc.tol.at("growth");
    json rays = json::array();
    for (int j = 0; j < ps.ell(); ++j) {
        if (ps.domain[j].bounded()) continue;
        auto dp = analysis::distance_proxy(ps, j, rc.grids.r_max);
        rays.push_back({{"ray", j},
                        {"exponent", dp.fit.exponent},
                        {"asserted", dp.asserted},
                        {"pass", dp.pass}});
        pass &= dp.pass;
    }
    sum["distance_rays"] = rays;
    sum["pass"] = pass;
    io::write_text(fs::path(args.out) / "volume_summary.json", sum.dump(2) + "\n");
    std::cout << sum.dump(2) << "\n";
    return pass ? 0 : 1;
}

int cmd_report(const CommonArgs& args) {
    RunConfig rc = parse_config(args.config);
    apply_overrides(rc, args);
    fs::create_directories(args.out);
    auto ps = build_fibred(rc.params);
    io::write_text(fs::path(args.out) / "profile.json", io::profile_to_json(ps).dump(2) + "\n");
    json rep;
    rep["schema"] = "gkrs-report/1";
    rep["profile"] = io::profile_to_json(ps);
    auto adm = profiles::check_admissibility(ps);
    rep["admissibility_pass"] = adm.all_pass();
    rep["verify"] = run_verification(ps, rc);
    std::vector<double> avals;
    for (int i = 0; i <= 24; ++i) avals.push_back(0.01 * std::pow(1000.0, i / 24.0));
    auto ratio = analysis::soliton_ratio_curve(avals);
    rep["soliton_ratio"] = {{"strictly_increasing", ratio.strictly_increasing},
                            {"small_a", ratio.ratio_at_small_a},
                            {"large_a", ratio.ratio_at_large_a}};
    for (const char* f : {"scan_summary.json", "volume_summary.json", "curvature_summary.json"}) {
        fs::path p = fs::path(args.out) / f;
        if (fs::exists(p)) rep[f] = json::parse(io::read_text(p));
    }
    bool pass = rep["verify"]["all_pass"].get<bool>() && adm.all_pass();
    rep["all_pass"] = pass;
    io::write_text(fs::path(args.out) / "report.json", rep.dump(2) + "\n");
    std::cout << rep.dump(2) << "\n";
    return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"explicit steady soliton metrics: construction and verification"};
    app.require_subcommand(1);
    CommonArgs args;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", args.config, "JSON run configuration")->required();
        sub->add_option("--out", args.out, "output directory");
        sub->add_option("--workers", args.workers, "worker threads for scans");
        sub->add_option("--seed", args.seed, "override the config RNG seed");
        sub->add_option("--tol-override", args.tol_overrides, "KEY=VAL tolerance override");
    };
    auto* build = app.add_subcommand("build", "construct a profile and check admissibility");
    auto* verify = app.add_subcommand("verify", "run the verification battery on a built profile");
    auto* curv = app.add_subcommand("curvature", "numerical curvature samples");
    auto* scan = app.add_subcommand("scan", "curvature positivity scan (2D family)");
    auto* vol = app.add_subcommand("volume", "volume growth and distance proxies");
    auto* report = app.add_subcommand("report", "combined verification report");
    for (auto* s : {build, verify, curv, scan, vol, report}) add_common(s);

    CLI11_PARSE(app, argc, argv);
    try {
        if (build->parsed()) return cmd_build(args);
        if (verify->parsed()) return cmd_verify(args);
        if (curv->parsed()) return cmd_curvature(args);
        if (scan->parsed()) return cmd_scan(args);
        if (vol->parsed()) return cmd_volume(args);
        if (report->parsed()) return cmd_report(args);
    } catch (const profiles::InvalidParams& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
