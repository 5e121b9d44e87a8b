#include "doctest.h"

#include <cmath>
#include <random>

#include "gkrs/ansatz.hpp"
#include "gkrs/numeric.hpp"
#include "gkrs/potential.hpp"

using namespace gkrs;
using namespace gkrs::ansatz;
using profiles::Family;
using profiles::Gauge;
using profiles::SolitonParams;

namespace {

SolitonParams cao2d(double a) {
    SolitonParams p;
    p.family = Family::CaoType;
    p.partition = {2, {0, 0}};
    p.alpha = {0.0, 1.0};
    p.a = a;
    return p;
}

SolitonParams taubnut2d(double a) {
    SolitonParams p;
    p.family = Family::TaubNUTType;
    p.partition = {2, {0}};
    p.alpha = {0.0, 1.0};
    p.a = a;
    return p;
}

SolitonParams cao_n2_bundle(double a) {  // ell = 1, d = (1)
    SolitonParams p;
    p.family = Family::CaoType;
    p.partition = {1, {1}};
    p.alpha = {0.0};
    p.a = a;
    return p;
}

ChartPoint pt2d(double x1, double x2) {
    ChartPoint p;
    p.xi = {x1, x2};
    p.angles = {0.0, 0.0};
    p.base_momenta = {{}, {}};
    return p;
}

double F_closed(double a, double t) {
    return (1.0 - std::exp(-2.0 * a)) * t - (1.0 - std::exp(-2.0 * a * t));
}

}  // namespace

TEST_CASE("metric blocks at reference points") {
    {
        // flat: diag((xi1 - xi2)/(xi1(xi1-1)), (xi2 - xi1)/(xi2(xi2-1)))
        auto ps = profiles::build_cao_profile(cao2d(0.0));
        auto mb = metric_at(ps, pt2d(0.4, 2.5));
        CHECK(mb.fiber_xi_block(0) ==
              doctest::Approx((0.4 - 2.5) / (0.4 * (0.4 - 1.0))).epsilon(1e-12));
        CHECK(mb.fiber_xi_block(1) ==
              doctest::Approx((2.5 - 0.4) / (2.5 * (2.5 - 1.0))).epsilon(1e-12));
        CHECK(mb.fiber_xi_block(0) > 0.0);
        CHECK(mb.fiber_xi_block(1) > 0.0);
    }
    {
        auto ps = profiles::build_cao_profile(cao2d(1.0));
        auto mb = metric_at(ps, pt2d(0.5, 2.0));
        CHECK(mb.fiber_xi_block(0) == doctest::Approx((0.5 - 2.0) / F_closed(1.0, 0.5)));
        CHECK(mb.fiber_xi_block(1) == doctest::Approx((2.0 - 0.5) / F_closed(1.0, 2.0)));
        CHECK(mb.fiber_xi_block(0) == doctest::Approx(7.5079509032313565).epsilon(1e-9));
        CHECK(mb.fiber_xi_block(1) == doctest::Approx(2.0062995869868647).epsilon(1e-9));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(mb.fiber_angle_block);
        CHECK(es.eigenvalues().minCoeff() > 0.0);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eh(mb.potential_hessian);
        CHECK(eh.eigenvalues().minCoeff() > 0.0);
    }
    {
        // Taub-NUT a = 0 at (-1, 2): (-3)/(-1) = 3 and 3/(2-1) = 3
        auto ps = profiles::build_taubnut_profile(taubnut2d(0.0));
        auto mb = metric_at(ps, pt2d(-1.0, 2.0));
        CHECK(mb.fiber_xi_block(0) == doctest::Approx(3.0));
        CHECK(mb.fiber_xi_block(1) == doctest::Approx(3.0));
    }
    {
        auto ps = profiles::build_cao_profile(cao2d(1.0));
        CHECK_THROWS_AS(metric_at(ps, pt2d(0.9, 0.9)), DegeneratePoint);
    }
}

TEST_CASE("chart tensors: J^2 = -Id, compatibility, and the stated J coefficient") {
    std::mt19937_64 rng(21);
    for (double a : {0.0, 1.0}) {
        auto ps = profiles::build_cao_profile(cao2d(a));
        for (int rep = 0; rep < 100; ++rep) {
            auto p = sample_interior(ps, rng);
            auto ct = chart_tensors(ps, p);
            Eigen::MatrixXd I = Eigen::MatrixXd::Identity(4, 4);
            CHECK((ct.J * ct.J + I).norm() < 1e-10);
            CHECK((ct.J.transpose() * ct.g * ct.J - ct.g).norm() < 1e-10 * ct.g.norm());
            CHECK((ct.g * ct.J - ct.omega).norm() < 1e-10 * (1.0 + ct.omega.norm()));
        }
        // J(dxi_j) lands on the theta-span with coefficient F_j/(p_c Delta_j)
        auto ct = chart_tensors(ps, pt2d(0.3, 1.7));
        double coeff0 = ps.theta(0, 0.3) / (0.3 - 1.7);
        CHECK(ct.J(0, 2) == doctest::Approx(coeff0 * 1.0));  // sigma_0 component
        CHECK(ct.J(0, 3) == doctest::Approx(coeff0 * 1.7));  // sigma_1(hat xi_1) = xi_2
    }
}

TEST_CASE("hamiltonian 2-form eigenvalues") {
    {
        auto ps = profiles::build_cao_profile(cao2d(1.0));
        auto hf = hamiltonian_form_at(ps, pt2d(0.5, 2.0));
        REQUIRE(hf.eigenvalues.size() == 2);
        CHECK(hf.eigenvalues[0] == doctest::Approx(0.5).epsilon(1e-8));
        CHECK(hf.eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-8));
    }
    {
        // ell = 1, d = 1: eigenvalues {xi, 0} with eta_1 = alpha_1 = 0
        auto ps = profiles::build_cao_profile(cao_n2_bundle(1.0));
        ChartPoint p;
        p.xi = {3.0};
        p.angles = {0.0};
        p.base_momenta = {{0.4}};
        auto hf = hamiltonian_form_at(ps, p);
        REQUIRE(hf.eigenvalues.size() == 2);
        CHECK(hf.eigenvalues[0] == doctest::Approx(0.0).epsilon(1e-10).scale(1.0));
        CHECK(hf.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-8));
    }
    {
        // affine reparametrization: eigenvalues of (p phi + q omega) omega^{-1}
        auto ps = profiles::build_cao_profile(cao2d(1.0));
        auto ev = hamiltonian_form_eigenvalues_affine(ps, pt2d(0.5, 2.0), 3.0, -1.0);
        CHECK(ev[0] == doctest::Approx(3.0 * 0.5 - 1.0).epsilon(1e-8));
        CHECK(ev[1] == doctest::Approx(3.0 * 2.0 - 1.0).epsilon(1e-8));
    }
}

TEST_CASE("moment map labels and limits") {
    auto ps = profiles::build_cao_profile(cao2d(1.0));
    {
        auto mu = moment_map(ps, pt2d(0.5, 2.0));
        double q0 = ps.q(0.0), q1 = ps.q(1.0);
        // plug-in oracle: L_1 = -(2/q(0)) pnc(0), L_2 = -(2/q(1)) pnc(1)
        CHECK(mu.mu(0) == doctest::Approx(-(2.0 / q0) * (0.0 - 0.5) * (0.0 - 2.0)).epsilon(1e-12));
        CHECK(mu.mu(1) == doctest::Approx(-(2.0 / q1) * (1.0 - 0.5) * (1.0 - 2.0)).epsilon(1e-12));
        CHECK(mu.mu(0) == doctest::Approx(1.7615941559557646).epsilon(1e-7));
        CHECK(mu.mu(1) == doctest::Approx(1.6835182627834084).epsilon(1e-7));
    }
    {
        // standard momenta relation: mu_1 = -(2/F'(0)) sigma_2 exactly, and
        // mu_2 - (2/F'(1)) (sigma_1 - sigma_2) constant in the point
        double f0p = ps.F[0].derivative_at(0.0, 1), f1p = ps.F[0].derivative_at(1.0, 1);
        double gap0 = 0.0;
        bool first = true;
        for (auto [x1, x2] : {std::pair{0.3, 1.4}, {0.6, 2.2}, {0.9, 5.0}}) {
            auto mu = moment_map(ps, pt2d(x1, x2));
            double s1 = x1 + x2, s2 = x1 * x2;
            CHECK(mu.mu(0) == doctest::Approx(-(2.0 / f0p) * s2).epsilon(1e-11));
            double gap = mu.mu(1) - (2.0 / f1p) * (s1 - s2);
            if (first) {
                gap0 = gap;
                first = false;
            } else {
                CHECK(gap == doctest::Approx(gap0).epsilon(1e-10));
            }
        }
    }
    {
        // boundary limit xi_1 -> alpha_1 kills the first label
        auto mu = moment_map(ps, pt2d(1e-9, 2.0));
        CHECK(std::abs(mu.mu(0)) < 1e-7);
    }
}

TEST_CASE("momentum inversion round trip") {
    std::mt19937_64 rng(31);
    std::vector<SolitonParams> cfgs{cao2d(1.0), cao2d(0.0), taubnut2d(1.0), cao_n2_bundle(1.0)};
    {
        SolitonParams p;
        p.family = Family::CaoType;
        p.partition = {2, {1, 0}};
        p.alpha = {0.0, 1.0};
        p.a = 1.0;
        cfgs.push_back(p);
    }
    for (const auto& cfg : cfgs) {
        auto ps = cfg.family == Family::CaoType ? profiles::build_cao_profile(cfg)
                                                : profiles::build_taubnut_profile(cfg);
        SolitonPotential pot(ps);
        for (int rep = 0; rep < 20; ++rep) {
            auto p = sample_interior(ps, rng);
            auto nu = pot.nu_of(p);
            CHECK(nu.minCoeff() > 0.0);
            auto back = pot.chart_of(nu);
            for (int j = 0; j < ps.ell(); ++j)
                CHECK(back.xi[j] == doctest::Approx(p.xi[j]).epsilon(1e-9));
            for (int j = 0; j < ps.ell(); ++j)
                for (size_t k = 0; k < p.base_momenta[j].size(); ++k)
                    CHECK(back.base_momenta[j][k] ==
                          doctest::Approx(p.base_momenta[j][k]).epsilon(1e-9));
        }
    }
}

TEST_CASE("potential Hessian matches a finite-difference Hessian of the value") {
    std::mt19937_64 rng(41);
    for (const auto& cfg : {cao2d(1.0), taubnut2d(1.0), cao_n2_bundle(1.0)}) {
        auto ps = cfg.family == Family::CaoType ? profiles::build_cao_profile(cfg)
                                                : profiles::build_taubnut_profile(cfg);
        SolitonPotential pot(ps);
        auto p = sample_interior(ps, rng, 0.3);
        Eigen::VectorXd nu = pot.nu_of(p);
        potential::NumericPotential num(ps.n(),
                                        [&](const Eigen::VectorXd& x) { return pot.value(x); });
        Eigen::MatrixXd Hfd = num.hessian(nu);
        Eigen::MatrixXd Han = pot.hessian(nu);
        CHECK((Hfd - Han).norm() < 1e-6 * (1.0 + Han.norm()));
        Eigen::VectorXd gfd = num.gradient(nu);
        Eigen::VectorXd gan = pot.gradient(nu);
        CHECK((gfd - gan).norm() < 1e-8 * (1.0 + gan.norm()));
    }
}

TEST_CASE("flat symplectic potential has the Guillemin Hessian") {
    auto ps = profiles::build_cao_profile(cao2d(0.0));
    SolitonPotential pot(ps);
    auto g0 = potential::GuilleminPotential::standard_cone(2);
    std::mt19937_64 rng(43);
    for (int rep = 0; rep < 5; ++rep) {
        auto p = sample_interior(ps, rng, 0.2);
        Eigen::VectorXd nu = pot.nu_of(p);
        CHECK((pot.hessian(nu) - g0.hessian(nu)).norm() < 1e-6 * g0.hessian(nu).norm());
    }
}

TEST_CASE("fibre potential has the simplex-log boundary structure") {
    // u - 1/2 sum nu_i log nu_i extends continuously toward the facet: its
    // values along a geometric approach sequence are Cauchy
    auto ps = profiles::build_cao_profile(cao2d(1.0));
    SolitonPotential pot(ps);
    std::vector<double> gaps;
    for (int k = 2; k <= 9; ++k) {
        double x1 = std::pow(2.0, -k);  // xi_1 -> alpha_1 = 0
        auto p = pt2d(x1, 2.0);
        Eigen::VectorXd nu = pot.nu_of(p);
        double u = pot.value_chart(p);
        double guill = 0.0;
        for (int i = 0; i < 2; ++i) guill += 0.5 * nu(i) * std::log(nu(i));
        gaps.push_back(u - guill);
    }
    double d1 = std::abs(gaps[1] - gaps[0]);
    double dlast = std::abs(gaps.back() - gaps[gaps.size() - 2]);
    CHECK(dlast < 0.25 * d1 + 1e-9);
}

TEST_CASE("soliton 1d identity: constancy per interval") {
    std::vector<SolitonParams> cfgs{cao2d(1.0), cao2d(0.0), taubnut2d(1.0), cao_n2_bundle(1.0)};
    for (const auto& cfg : cfgs) {
        auto ps = cfg.family == Family::CaoType ? profiles::build_cao_profile(cfg)
                                                : profiles::build_taubnut_profile(cfg);
        for (int j = 0; j < ps.ell(); ++j) {
            double base = ricci_soliton_residual_1d(ps, j, ps.domain[j].at(0.37), 0.0);
            for (int i = 0; i < 20; ++i) {
                double t = ps.domain[j].at(0.1 + 0.8 * (i + 0.5) / 20.0);
                double v = ricci_soliton_residual_1d(ps, j, t, 0.0);
                CHECK(std::abs(v - base) < 1e-8 * (1.0 + std::abs(base)));
            }
            // with b_j = base the residual vanishes at any interior point
            CHECK(std::abs(ricci_soliton_residual_1d(ps, j, ps.domain[j].at(0.61), base)) < 1e-8);
        }
    }
}

TEST_CASE("soliton vector data") {
    {
        auto ps = profiles::build_cao_profile(cao2d(1.0));
        auto sol = killing_and_soliton_data(ps);
        CHECK(sol.killing_coefficient == doctest::Approx(2.0));
        double a = 1.0;
        double l1 = a * (std::exp(-2.0 * a) + 2.0 * a - 1.0);
        double l2 = a * (1.0 - std::exp(-2.0 * a) * (1.0 + 2.0 * a));
        REQUIRE(sol.b.size() == 2);
        CHECK(sol.b[0] == doctest::Approx(l1).epsilon(1e-12));
        CHECK(sol.b[1] == doctest::Approx(l2).epsilon(1e-12));
        CHECK(sol.b[0] == doctest::Approx(1.1353352832366128).epsilon(1e-12));
        CHECK(sol.b[1] == doctest::Approx(0.5939941502901619).epsilon(1e-12));
    }
    {
        auto ps = profiles::build_taubnut_profile(taubnut2d(1.0));
        auto sol = killing_and_soliton_data(ps);
        double a = 1.0;
        CHECK(sol.b[0] == doctest::Approx(-a).epsilon(1e-12));
        CHECK(sol.b[1] == doctest::Approx(a * (1.0 + 2.0 * a)).epsilon(1e-12));
    }
    {
        auto ps = profiles::build_cao_profile(cao2d(0.0));
        auto sol = killing_and_soliton_data(ps);
        CHECK(sol.b[0] == 0.0);
        CHECK(sol.b[1] == 0.0);
    }
    {
        // <b, nu> is the soliton potential 2a sigma_1 in the gauge vanishing
        // at the cone vertex, i.e. 2a (sigma_1 - sum alpha_j)
        auto ps = profiles::build_cao_profile(cao2d(1.0));
        SolitonPotential pot(ps);
        auto sol = killing_and_soliton_data(ps);
        std::mt19937_64 rng(5);
        for (int rep = 0; rep < 10; ++rep) {
            auto p = sample_interior(ps, rng);
            auto nu = pot.nu_of(p);
            double f = sol.b[0] * nu(0) + sol.b[1] * nu(1);
            CHECK(f == doctest::Approx(2.0 * (p.xi[0] + p.xi[1] - 1.0)).epsilon(1e-10));
        }
    }
}

TEST_CASE("holomorphic coordinates: Taub-NUT at a = 0 closed forms") {
    auto ps = profiles::build_taubnut_profile(taubnut2d(0.0));
    for (auto [x1, x2] : {std::pair{-1.0, 2.0}, {-0.3, 1.5}, {-4.0, 6.0}}) {
        auto h = holomorphic_coordinates_2d(ps, pt2d(x1, x2));
        double z1 = -std::exp(2.0) * std::exp(-(x1 + x2)) * x1;
        double z2 = std::exp(x1 + x2) * (x2 - 1.0);
        double H = 0.5 * ((x1 - 1.0) * (x1 - 1.0) + x2 * x2);
        CHECK(h.z1_sq == doctest::Approx(z1).epsilon(1e-9));
        CHECK(h.z2_sq == doctest::Approx(z2).epsilon(1e-9));
        CHECK(h.H == doctest::Approx(H).epsilon(1e-9));
    }
}

TEST_CASE("holomorphic coordinates: gradient of H recovers the momenta") {
    // solve (dv/dxi)^T p = dH/dxi by finite differences; p must equal mu
    for (const auto& cfg : {cao2d(1.0), taubnut2d(1.0), taubnut2d(0.0)}) {
        auto ps = cfg.family == Family::CaoType ? profiles::build_cao_profile(cfg)
                                                : profiles::build_taubnut_profile(cfg);
        SolitonPotential pot(ps);
        for (auto [x1, x2] : {std::pair{0.45, 1.8}, {0.7, 3.0}}) {
            if (ps.family == Family::TaubNUTType) x1 = -x1;
            const double h = 1e-5;
            auto eval = [&](double y1, double y2) {
                return holomorphic_coordinates_2d(ps, pt2d(y1, y2));
            };
            Eigen::MatrixXd Jv(2, 2);
            Eigen::VectorXd dH(2);
            {
                auto up = eval(x1 + h, x2), dn = eval(x1 - h, x2);
                Jv(0, 0) = (up.v1 - dn.v1) / (2 * h);
                Jv(1, 0) = (up.v2 - dn.v2) / (2 * h);
                dH(0) = (up.H - dn.H) / (2 * h);
            }
            {
                auto up = eval(x1, x2 + h), dn = eval(x1, x2 - h);
                Jv(0, 1) = (up.v1 - dn.v1) / (2 * h);
                Jv(1, 1) = (up.v2 - dn.v2) / (2 * h);
                dH(1) = (up.H - dn.H) / (2 * h);
            }
            Eigen::VectorXd p = Jv.transpose().partialPivLu().solve(dH);
            auto nu = pot.nu_of(pt2d(x1, x2));
            CHECK(p(0) == doctest::Approx(nu(0)).epsilon(1e-5));
            CHECK(p(1) == doctest::Approx(nu(1)).epsilon(1e-5));
        }
    }
}

TEST_CASE("holomorphic coordinates: pluriharmonicity by finite differences") {
    // On the exact chart (theta_r = dt_r), dv o J = sum_r B_r(xi) dt_r with
    // B_r = sum_j v_{,j} (F_j/(p_c Delta_j)) sigma_{r-1}(hat xi_j); the
    // function v is pluriharmonic iff every B_r is constant.
    for (const auto& cfg : {cao2d(1.0), taubnut2d(1.0)}) {
        auto ps = cfg.family == Family::CaoType ? profiles::build_cao_profile(cfg)
                                                : profiles::build_taubnut_profile(cfg);
        double x1 = ps.family == Family::TaubNUTType ? -0.8 : 0.55;
        double x2 = 2.1;
        const double h = 1e-4;
        auto v_of = [&](double y1, double y2, int which) {
            auto hc = holomorphic_coordinates_2d(ps, pt2d(y1, y2));
            return which == 0 ? hc.v1 : hc.v2;
        };
        for (int which : {0, 1}) {
            auto B = [&](int r, double y1, double y2) {
                double v1 = (v_of(y1 + h, y2, which) - v_of(y1 - h, y2, which)) / (2 * h);
                double v2 = (v_of(y1, y2 + h, which) - v_of(y1, y2 - h, which)) / (2 * h);
                double s1 = r == 0 ? 1.0 : y2;
                double s2 = r == 0 ? 1.0 : y1;
                return v1 * ps.theta(0, y1) / (y1 - y2) * s1 +
                       v2 * ps.theta(1, y2) / (y2 - y1) * s2;
            };
            for (int r : {0, 1}) {
                double base = B(r, x1, x2);
                for (auto [d1, d2] : {std::pair{0.08, 0.0}, {0.0, 0.2}, {-0.1, 0.35}})
                    CHECK(B(r, x1 + d1, x2 + d2) ==
                          doctest::Approx(base).epsilon(1e-6).scale(1.0));
            }
        }
    }
}

TEST_CASE("holomorphic coordinates reject unsupported configurations") {
    auto ps = profiles::build_cao_profile(cao_n2_bundle(1.0));
    ChartPoint p;
    p.xi = {2.0};
    p.angles = {0.0};
    p.base_momenta = {{0.3}};
    CHECK_THROWS(holomorphic_coordinates_2d(ps, p));
}

TEST_CASE("momentum-angle complex structure squares to -Id (fibred base)") {
    auto ps = profiles::build_cao_profile(cao_n2_bundle(1.0));
    ChartPoint p;
    p.xi = {1.7};
    p.angles = {0.0};
    p.base_momenta = {{0.35}};
    Eigen::MatrixXd J = complex_structure_at(ps, p);
    REQUIRE(J.rows() == 4);
    Eigen::MatrixXd I = Eigen::MatrixXd::Identity(4, 4);
    CHECK((J * J + I).norm() < 1e-10);
}
