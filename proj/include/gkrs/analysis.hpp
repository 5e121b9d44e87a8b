#pragma once

#include <span>
#include <string>
#include <vector>

#include "gkrs/profiles.hpp"

// Asymptotics: volume growth of the fibred metrics against the eigenvalue
// cut, distance proxies along coordinate rays, and the soliton-vector
// component ratio curve of the 2-dimensional family.

namespace gkrs::analysis {

struct GrowthFit {
    std::vector<double> radii;
    std::vector<double> values;
    double exponent = 0.0;
    double r_squared = 0.0;
};

// |det V(xi)| * |prod_j p_c(xi_j)| evaluated pointwise
double volume_measure(const profiles::ProfileSet& ps, std::span<const double> xi);

// integral of volume_measure over the family's truncated cell at cut r,
// through exact per-variable polynomial antiderivatives
double volume_cell_integral_exact(const profiles::ProfileSet& ps, double r);
// same by nested adaptive quadrature (the agreement oracle)
double volume_cell_integral_quadrature(const profiles::ProfileSet& ps, double r);

GrowthFit volume_growth_fit(const profiles::ProfileSet& ps, double r_max, int steps = 24);

struct DistanceProxy {
    GrowthFit fit;             // ray length against the unbounded coordinate
    bool asserted = false;     // exponent window applies only to a > 0 families
    bool pass = true;
    int ray_index = 0;
};

DistanceProxy distance_proxy(const profiles::ProfileSet& ps, int ray_index, double t_max,
                             int steps = 24);

struct RatioCurve {
    std::vector<double> a_values;
    std::vector<double> ratios;
    bool strictly_increasing = false;
    double ratio_at_small_a = 0.0;  // a = 1e-3 probe
    double ratio_at_large_a = 0.0;
};

// lambda_1 / lambda_2 = (e^{-2a} - 1 + 2a) / (1 - e^{-2a}(1 + 2a))
double soliton_component_ratio(double a);
RatioCurve soliton_ratio_curve(std::span<const double> a_values);

}  // namespace gkrs::analysis
