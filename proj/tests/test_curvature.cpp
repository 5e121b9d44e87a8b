#include "doctest.h"

#include <cmath>
#include <random>

#include "gkrs/ansatz.hpp"
#include "gkrs/curvature.hpp"

using namespace gkrs;
using namespace gkrs::curvature;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

profiles::SolitonParams cao2d(double a) {
    profiles::SolitonParams p;
    p.family = profiles::Family::CaoType;
    p.partition = {2, {0, 0}};
    p.alpha = {0.0, 1.0};
    p.a = a;
    return p;
}

profiles::SolitonParams taubnut2d(double a) {
    profiles::SolitonParams p;
    p.family = profiles::Family::TaubNUTType;
    p.partition = {2, {0}};
    p.alpha = {0.0, 1.0};
    p.a = a;
    return p;
}

ansatz::ChartPoint pt2d(double x1, double x2) {
    return ansatz::ChartPoint{{x1, x2}, {0.0, 0.0}, {{}, {}}};
}

}  // namespace

TEST_CASE("flat potential has vanishing Riemann tensor") {
    auto u = potential::GuilleminPotential::standard_cone(2);
    VectorXd b = VectorXd::Zero(2);
    for (auto [m1, m2] : {std::pair{0.5, 2.0}, {1.5, 0.7}}) {
        VectorXd mu(2);
        mu << m1, m2;
        auto rep = curvature_from_potential(u, mu, b);
        CHECK(rep.riemann_norm < 1e-6);
        CHECK(std::abs(rep.scal) < 1e-6);
        CHECK(rep.soliton_residual_norm < 1e-6);
    }
}

TEST_CASE("closed-form ambi quantities at the reference point") {
    auto ps = profiles::build_cao_profile(cao2d(1.0));
    auto d = ambi_closed_forms_2d(ps.F[0], ps.F[1], 0.5, 2.0);
    CHECK(d.B == doctest::Approx(0.34956380228270817).epsilon(1e-12));
    CHECK(d.scal == doctest::Approx(0.9321701394205552).epsilon(1e-12));
    CHECK(d.scal == doctest::Approx(-4.0 * d.B / (0.5 - 2.0)).epsilon(1e-12));
    // stable evaluator agrees with the closed forms here
    auto cc = CaoCurvature2D::from_profile(ps);
    auto ds = cc.eval(0.5, 2.0);
    CHECK(ds.scal == doctest::Approx(d.scal).epsilon(1e-12));
    CHECK(ds.kappa_I == doctest::Approx(d.kappa_I).epsilon(1e-10));
    CHECK(ds.lambda == doctest::Approx(d.lambda).epsilon(1e-10));
}

TEST_CASE("series and closed-form branches agree across the switchover") {
    CaoCurvature2D cc(1.0, 1.0);
    // 2 a x = 4 at x = 2
    for (double x : {1.9999, 2.0001, 0.5, 3.0}) {
        double E = std::expm1(2.0 * x);
        CHECK(cc.scaled_lambda(x) ==
              doctest::Approx((E + 2.0) / x - E / (x * x)).epsilon(1e-11));
        CHECK(cc.scaled_kappa_I(x) ==
              doctest::Approx(4.0 * E / x + 12.0 * E / (x * x * x) -
                              12.0 * (E + 2.0) / (x * x))
                  .epsilon(1e-9));
        CHECK(cc.scaled_ric_bound(x) ==
              doctest::Approx(E / (x * x) - 2.0 / x).epsilon(1e-11));
    }
    // both eval branches against the general closed forms, including a = 4
    for (double a : {1.0, 4.0}) {
        profiles::SolitonParams prm = cao2d(a);
        auto psa = profiles::build_cao_profile(prm);
        CaoCurvature2D cca(a, psa.F[0].exp_coeff());
        double xsw = 2.0 / a;  // the branch switch sits at 2 a x = 4
        for (double x : {0.999 * xsw, 1.001 * xsw, 0.3 * xsw, 2.5 * xsw}) {
            double x1 = 0.5, x2 = 0.5 + x;
            auto dg = ambi_closed_forms_2d(psa.F[0], psa.F[1], x1, x2);
            auto ds2 = cca.eval(x1, x2);
            CHECK(ds2.scal == doctest::Approx(dg.scal).epsilon(1e-9));
            CHECK(ds2.kappa_I == doctest::Approx(dg.kappa_I).epsilon(1e-8).scale(1e-3));
            CHECK(ds2.lambda == doctest::Approx(dg.lambda).epsilon(1e-8).scale(1e-3));
        }
    }
    // no overflow at extreme separations: values underflow gracefully to >= 0
    {
        CaoCurvature2D big(8.0, 1.0);
        auto d8 = big.eval(0.5, 100.0);
        CHECK(std::isfinite(d8.scal));
        CHECK(d8.scal >= 0.0);
        CHECK(std::isfinite(d8.kappa_I));
    }
    // the tiny-gap regime is finite, smooth and has the right leading orders
    double x = 1e-6;
    CHECK(cc.scaled_kappa_I(x) == doctest::Approx((8.0 / 15.0) * x * x).epsilon(1e-3));
    CHECK(cc.scaled_lambda(x) == doctest::Approx((2.0 / 3.0) * x).epsilon(1e-3));
    CHECK(cc.scaled_ric_bound(x) == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(cc.scaled_fs_const(x) == doctest::Approx(1.0 / 3.0).epsilon(1e-3));
}

TEST_CASE("scalar curvature: maximum and flat limit") {
    {
        CaoCurvature2D cc(1.0, 1.0);
        auto se = scal_extremum_2d(cc, 20.0);
        CHECK(se.expected == doctest::Approx(4.0 * (1.0 - std::exp(-2.0))).epsilon(1e-14));
        CHECK(se.value == doctest::Approx(se.expected).epsilon(1e-9));
        CHECK(se.argmax_error < 1e-6);
        CHECK(se.xi1 == doctest::Approx(0.0).epsilon(1e-6).scale(1.0));
        CHECK(se.xi2 == doctest::Approx(1.0).epsilon(1e-6));
    }
    {
        // a -> 0: all curvature quantities vanish
        auto ps = profiles::build_cao_profile(cao2d(1e-5));
        auto d = ambi_closed_forms_2d(ps.F[0], ps.F[1], 0.5, 2.0);
        CHECK(std::abs(d.scal) < 1e-4);
        CHECK(std::abs(d.kappa_I) < 1e-4);
        CHECK(std::abs(d.lambda) < 1e-4);
    }
}

TEST_CASE("Taub-NUT closed forms vs finite differences, and Ricci flatness") {
    {
        auto ps = profiles::build_taubnut_profile(taubnut2d(0.0));
        ansatz::SolitonPotential pot(ps);
        VectorXd b = VectorXd::Zero(2);
        std::mt19937_64 rng(3);
        for (int s = 0; s < 5; ++s) {
            auto p = ansatz::sample_interior(ps, rng, 0.2);
            auto rep = curvature_from_potential(pot, pot.nu_of(p), b);
            CHECK(rep.ricci_norm < 1e-5);
            CHECK(rep.riemann_norm > 1e-3);  // Ricci-flat but not flat
        }
    }
    {
        auto ps = profiles::build_taubnut_profile(taubnut2d(1.0));
        ansatz::SolitonPotential pot(ps);
        auto sol = ansatz::killing_and_soliton_data(ps);
        VectorXd b(2);
        b << sol.b[0], sol.b[1];
        for (auto [x1, x2] : {std::pair{-0.8, 1.9}, {-2.0, 3.5}}) {
            auto p = pt2d(x1, x2);
            auto rep = curvature_from_potential(pot, pot.nu_of(p), b);
            auto d = ambi_closed_forms_2d(ps.F[0], ps.F[1], x1, x2);
            CHECK(std::abs(rep.scal - d.scal) < 1e-4 * (1.0 + std::abs(d.scal)));
            CHECK(rep.soliton_residual_norm < 1e-4);
        }
    }
}

TEST_CASE("Cao 2D: finite-difference curvature against closed forms") {
    auto ps = profiles::build_cao_profile(cao2d(1.0));
    ansatz::SolitonPotential pot(ps);
    auto sol = ansatz::killing_and_soliton_data(ps);
    VectorXd b(2);
    b << sol.b[0], sol.b[1];
    auto cc = CaoCurvature2D::from_profile(ps);
    for (auto [x1, x2] : {std::pair{0.5, 2.0}, {0.3, 1.4}, {0.75, 4.0}}) {
        auto rep = curvature_from_potential(pot, pot.nu_of(pt2d(x1, x2)), b, 200, 7);
        auto d = cc.eval(x1, x2);
        CHECK(std::abs(rep.scal - d.scal) < 1e-4 * (1.0 + std::abs(d.scal)));
        CHECK(rep.soliton_residual_norm < 1e-4);
        // scal equals the trace of the Ricci eigenvalues
        double tr = 0.0;
        for (double ev : rep.ricci_eigenvalues) tr += ev;
        CHECK(tr == doctest::Approx(rep.scal).epsilon(1e-6));
        // Ricci eigenvalue floor: min eig >= scal/4 - lambda (dim-4 bound)
        double floor = d.scal / 4.0 - d.lambda;
        double mineig = *std::min_element(rep.ricci_eigenvalues.begin(),
                                          rep.ricci_eigenvalues.end());
        CHECK(mineig >= floor - 1e-6);
        // sampled sectional curvature stays positive and above the f_s floor
        CHECK(rep.sectional_min > 0.0);
    }
    // scal at the reference point pins the closed-form value
    auto rep = curvature_from_potential(pot, pot.nu_of(pt2d(0.5, 2.0)), b);
    CHECK(rep.scal == doctest::Approx(0.9321701394205552).epsilon(1e-4));
}

TEST_CASE("sectional-curvature function identities") {
    auto ps = profiles::build_cao_profile(cao2d(1.0));
    auto cc = CaoCurvature2D::from_profile(ps);
    for (auto [x1, x2] : {std::pair{0.5, 2.0}, {0.2, 1.1}, {0.9, 8.0}}) {
        auto d = cc.eval(x1, x2);
        // f_s(0,0) = (scal - kappa_I)/24 >= a^3 e^{-2a}/3 > 0
        double f00 = sectional_function(d, 0.0, 0.0);
        CHECK(f00 == doctest::Approx(d.fs_const).epsilon(1e-12));
        CHECK(f00 + 1e-15 >= std::exp(-2.0) / 3.0 * std::exp(-2.0 * (x2 - 1.0)) * 0.99);
        CHECK(f00 > 0.0);
        // f(1) = f(-1) + 2 lambda
        double f1 = holomorphic_sectional_function(d, 1.0);
        double fm1 = holomorphic_sectional_function(d, -1.0);
        CHECK(f1 == doctest::Approx(fm1 + 2.0 * d.lambda).epsilon(1e-10));
        // stable f(-1) evaluator agrees with the quadratic
        double fm1_stable = std::exp(-2.0 * x2) * cc.scaled_f_minus1(x2 - x1);
        CHECK(fm1 == doctest::Approx(fm1_stable).epsilon(1e-8));
    }
    {
        AmbiData2D flat{};  // all-zero data
        CHECK(sectional_function(flat, 0.3, -0.9) == 0.0);
    }
}

TEST_CASE("critical point analysis") {
    auto ps = profiles::build_cao_profile(cao2d(1.0));
    auto cc = CaoCurvature2D::from_profile(ps);
    {
        auto d = cc.eval(0.5, 2.0);
        auto rep = critical_point_analysis_2d(d);
        CHECK(rep.t_star_fbar_bracketed);
        CHECK(rep.t_star_fbar > -1.0);
        CHECK(rep.t_star_fbar <= 0.0);
        CHECK(rep.fbar_at_t_star > 0.0);
        CHECK(rep.fs_origin > 0.0);
        CHECK_FALSE(rep.degenerate_gradient_line);
        // closed-form cross-check: 2 e^{2a xi2} fbar(t*) = h(x)/(e^{2ax} - 1)
        double x = 1.5;
        double lhs = 2.0 * std::exp(2.0 * 2.0) * rep.fbar_at_t_star;
        double rhs = cc.h_series(x) / std::expm1(2.0 * x);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
    }
    {
        // paper-pinned value at x = 1, a = 1:
        // 2 e^{2a xi2} fbar(t*) = (e^2 - 1) - 4 e^2/(e^2 - 1)
        auto d = cc.eval(0.0, 1.0);
        auto rep = critical_point_analysis_2d(d);
        double expect = (std::exp(2.0) - 1.0) - 4.0 * std::exp(2.0) / (std::exp(2.0) - 1.0);
        CHECK(2.0 * std::exp(2.0) * rep.fbar_at_t_star == doctest::Approx(expect).epsilon(1e-10));
        CHECK(expect == doctest::Approx(1.7629855279319875).epsilon(1e-12));
    }
    {
        // synthetic degenerate data: kappa_I scal = 16 lambda^2
        AmbiData2D d{};
        d.scal = 4.0;
        d.kappa_I = 1.0;
        d.lambda = 0.5;
        d.lambda_raw = 0.5;
        d.fs_const = (d.scal - d.kappa_I) / 24.0;
        auto rep = critical_point_analysis_2d(d);
        CHECK(rep.degenerate_gradient_line);
    }
}

TEST_CASE("positivity scan on a compact grid") {
    auto ps = profiles::build_cao_profile(cao2d(1.0));
    GridSpec grid{60, 60, 20.0, 21};
    auto rep = positivity_scan_2d(ps, grid, 2, true);
    CHECK(rep.all_positive);
    CHECK(rep.min_ric_bound > 0.0);
    CHECK(rep.min_f > 0.0);
    CHECK(rep.min_fs > 0.0);
    CHECK(rep.min_fbar > 0.0);
    CHECK(rep.min_kappa >= 0.0);
    // kappa_I vanishes only as the gap closes: its argmin sits at the smallest x
    double xmin = 1e9;
    for (const auto& r : rep.rows) xmin = std::min(xmin, r[1] - r[0]);
    CHECK(rep.argmin_kappa[1] - rep.argmin_kappa[0] == doctest::Approx(xmin));
    CHECK(rep.rows.size() == 60u * 60u);
    // deterministic parallel reduction: same result with 1 worker
    auto rep1 = positivity_scan_2d(ps, grid, 1, false);
    CHECK(rep1.min_fs == rep.min_fs);
    CHECK(rep1.max_scal == rep.max_scal);
}

TEST_CASE("series coefficient checks") {
    auto rep = series_coefficient_checks(1.0, 60);
    for (const auto& c : rep.checks) {
        INFO(c.name, " max gap ", c.max_series_vs_closed);
        CHECK(c.sign_ok);
        CHECK(c.match_ok);
    }
    CHECK(rep.all_ok());
    // h-series boundary factors: zero exactly at k = 0, positive for k >= 1
    CHECK(rep.checks[0].name == "h_series");
    CHECK_THROWS(series_coefficient_checks(1.0, 61));
}

TEST_CASE("soliton residual for a fibred three-dimensional configuration") {
    profiles::SolitonParams p;
    p.family = profiles::Family::CaoType;
    p.partition = {2, {1, 0}};  // n = 3
    p.alpha = {0.0, 1.0};
    p.a = 1.0;
    auto ps = profiles::build_cao_profile(p);
    ansatz::SolitonPotential pot(ps);
    auto sol = ansatz::killing_and_soliton_data(ps);
    VectorXd b(3);
    for (int i = 0; i < 3; ++i) b(i) = sol.b[i];
    std::mt19937_64 rng(17);
    for (int s = 0; s < 3; ++s) {
        auto pt = ansatz::sample_interior(ps, rng, 0.25);
        auto rep = curvature_from_potential(pot, pot.nu_of(pt), b);
        CHECK(rep.soliton_residual_norm < 1e-4);
        double tr = 0.0;
        for (double ev : rep.ricci_eigenvalues) tr += ev;
        CHECK(tr == doctest::Approx(rep.scal).epsilon(1e-6));
        CHECK(rep.scal > 0.0);
    }
}
