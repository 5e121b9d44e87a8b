#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "gkrs/potential.hpp"
#include "gkrs/profiles.hpp"

// Curvature of toric metrics: finite-difference Riemann/Ricci/scalar data from
// a symplectic potential, closed-form scalar/conformal-scalar/traceless-Ricci
// quantities of the 2-dimensional orthotoric metrics, the sectional-curvature
// function, positivity scans and the supporting power-series identities.

namespace gkrs::curvature {

using potential::Mat;
using potential::ToricPotential;
using potential::Vec;

struct CurvatureReport {
    Vec point;
    double scal = 0.0;
    std::vector<double> ricci_eigenvalues;
    double soliton_residual_norm = 0.0;  // |Ric - 1/2 L_{grad f} g|_g, f = <b, mu>
    double riemann_norm = 0.0;
    double ricci_norm = 0.0;
    double sectional_min = 0.0;          // sampled over 2-planes when requested
    Mat sectional_min_plane;             // 2 columns spanning the minimizing plane
};

CurvatureReport curvature_from_potential(const ToricPotential& U, const Vec& mu, const Vec& b,
                                         int plane_samples = 0, unsigned seed = 1);

struct AmbiData2D {
    double scal = 0.0;
    double kappa_I = 0.0;
    double lambda = 0.0;      // |.| branch used in sectional scans
    double lambda_raw = 0.0;  // signed value of the closed-form expression
    double A = 0.0, B = 0.0, x = 0.0;
    double a = 0.0;           // soliton rate when known (exponential profiles)
    double fs_const = 0.0;    // (scal - kappa_I) / 24, evaluated stably
};

// general orthotoric surface: closed forms in F_1, F_2 and their derivatives
AmbiData2D ambi_closed_forms_2d(const symfun::ExpPoly& F1, const symfun::ExpPoly& F2, double xi1,
                                double xi2);

// Stable evaluator for the one-exponential family F = c ((1-e^{-2a}) t - 1 + e^{-2at}):
// all quantities are assembled from series below a gap threshold, where the
// closed forms cancel catastrophically, and from closed forms above it.
class CaoCurvature2D {
public:
    CaoCurvature2D(double a, double unit_scale);
    static CaoCurvature2D from_profile(const profiles::ProfileSet& ps);

    AmbiData2D eval(double xi1, double xi2) const;
    // e^{2 a xi2}-weighted values as functions of the gap x = xi2 - xi1 > 0
    double scaled_scal(double x) const;
    double scaled_lambda(double x) const;
    double scaled_kappa_I(double x) const;
    double scaled_ric_bound(double x) const;  // scal/4 - lambda
    double scaled_fs_const(double x) const;   // (scal - kappa_I)/24
    double scaled_f_minus1(double x) const;
    // h(x) = 2 (e^{2ax} - 1) e^{2a xi2} fbar(t*), an entire series
    double h_series(double x) const;

    double rate() const { return a_; }
    double unit_scale() const { return c_; }

private:
    double a_ = 1.0, c_ = 1.0;
    bool use_series(double x) const { return 2.0 * a_ * x <= 4.0; }
};

// f_s(t1, t2) = t1^2 scal/8 + t1 t2 lambda + t2^2 kappa_I/8 + (scal - kappa_I)/24
double sectional_function(const AmbiData2D& d, double t1, double t2);
// holomorphic restriction f(t) = f_s(1, t)
double holomorphic_sectional_function(const AmbiData2D& d, double t);
// fbar(t) = (scal/8) t^2 + lambda t + (scal + 2 kappa_I)/24
double boundary_sectional_function(const AmbiData2D& d, double t);

struct GridSpec {
    int xi1_count = 200;
    int xi2_count = 200;
    double xi2_max = 20.0;
    int t_count = 41;
};

struct ScanReport {
    GridSpec grid;
    double min_ric_bound = 0.0, min_f = 0.0, min_fs = 0.0, min_fbar = 0.0, min_kappa = 0.0;
    std::array<double, 2> argmin_ric_bound{}, argmin_f{}, argmin_fs{}, argmin_fbar{},
        argmin_kappa{};
    double max_scal = 0.0;
    std::array<double, 2> argmax_scal{};
    bool all_positive = false;  // strict, except kappa_I which must be nonnegative
    // per xi-point rows in grid order: xi1, xi2, scal, kappa_I, lambda,
    // ric_bound, min_t f, min_t fbar, min_{t1,t2} f_s
    std::vector<std::array<double, 9>> rows;
};

ScanReport positivity_scan_2d(const profiles::ProfileSet& ps, const GridSpec& grid,
                              unsigned workers = 1, bool keep_rows = false);

struct ScalExtremum {
    double xi1 = 0.0, xi2 = 0.0, value = 0.0;
    double expected = 0.0;  // 4 a^2 (1 - e^{-2a}) at unit scale
    int refinements = 0;
    double argmax_error = 0.0;  // distance of the final argmax from (alpha_1, alpha_2)
};

// iteratively refined grid search for the scalar-curvature maximum over the
// closed gap domain
ScalExtremum scal_extremum_2d(const CaoCurvature2D& cc, double xi2_max = 20.0, int grid = 33,
                              int refinements = 40);

struct SeriesCheck {
    std::string name;
    bool sign_ok = false;
    double max_series_vs_closed = 0.0;  // worst relative gap over the sample x's
    bool match_ok = false;
};

struct SeriesReport {
    std::vector<SeriesCheck> checks;
    bool all_ok() const;
};

SeriesReport series_coefficient_checks(double a, int K,
                                       std::span<const double> x_samples = {});

struct CriticalPointReport {
    bool f_constant = false;        // kappa_I = 0 branch
    bool f_has_interior_critical = false;
    double t_star_f = 0.0;
    double f_at_t_star = 0.0;
    double t_star_fbar = 0.0;
    bool t_star_fbar_bracketed = false;  // -1 < t* <= 0
    double fbar_at_t_star = 0.0;
    bool degenerate_gradient_line = false;  // kappa_I scal = 16 lambda^2
    double degeneracy_gap = 0.0;
    double fs_origin = 0.0;  // f_s(0,0)
};

CriticalPointReport critical_point_analysis_2d(const AmbiData2D& d);

}  // namespace gkrs::curvature
