#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gkrs/ansatz.hpp"
#include "gkrs/potential.hpp"
#include "gkrs/profiles.hpp"

// Labelled polyhedra, recession/dual cones, the volume-form normalization
// constant, the real Monge-Ampere residual of the soliton equation, Legendre
// transforms and boundary-condition certificates.

namespace gkrs::toric {

using potential::Mat;
using potential::ToricPotential;
using potential::Vec;

struct AffineLabel {
    Vec normal;
    double offset = 0.0;
    double operator()(const Vec& x) const { return normal.dot(x) + offset; }
};

struct DelzantPolyhedron {
    std::vector<AffineLabel> labels;
    int dim = 0;
    std::optional<std::vector<Mat>> lattice_bases;  // optional, one per recorded vertex

    static DelzantPolyhedron standard_cone(int n);
    // interior certificate: a strictly feasible point (Chebyshev-style search)
    Vec interior_point() const;
};

// generators plus an explicit lineality basis; cone = cone(rays) + span(lineality)
struct Cone {
    std::vector<Vec> rays;
    std::vector<Vec> lineality;
    // rays plus +-lineality, normalized, as a plain generator list
    std::vector<Vec> generator_list() const;
};

// extreme-ray description of {x : <n_j, x> >= 0} by double description
Cone cone_from_inequalities(const std::vector<Vec>& normals, int dim);

struct RecessionData {
    Cone recession;               // C(Sigma), generator form
    std::vector<Vec> dual_generators;  // C*(Sigma) = cone of the label linear parts
};
RecessionData recession_and_dual_cone(const DelzantPolyhedron& poly);

struct ForbiddenRegionResult {
    bool forbidden = false;  // b in -C*(Sigma)
    Vec witness;             // x in C(Sigma): <b, x> > 0 when allowed, argmax otherwise
};
ForbiddenRegionResult forbidden_region_check(const DelzantPolyhedron& poly, const Vec& b);

struct InconsistentLabels : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// unique c with <dL_j, c> = 2 for all labels; throws InconsistentLabels
Vec calabi_yau_constant(const DelzantPolyhedron& poly);

// log det Hess U + <c, grad U> - <b, mu>
double ma_residual(const ToricPotential& U, const Vec& b, const Vec& c, const Vec& mu);

struct MaResidualStats {
    double mean = 0.0;
    double stddev = 0.0;
    double min = 0.0, max = 0.0;
    int samples = 0;
};
MaResidualStats ma_residual_stats(const ToricPotential& U, const Vec& b, const Vec& c,
                                  const std::vector<Vec>& points);

struct LegendreEval {
    Vec dual;              // y = grad u(x)
    double dual_value;     // H(y) = <x, y> - u(x)
    double pair_residual;  // H(y) + u(x) - <x, y> (0 by construction here)
    Vec round_trip;        // x recovered from y by Newton on grad u
    double round_trip_error;
};
LegendreEval legendre_transform(const ToricPotential& u, const Vec& x);

struct BoundaryLimit {
    std::vector<double> label_values;   // L_j along the approach sequence
    std::vector<double> degeneracy;     // |H dL_j| / L_j
    std::vector<double> normal_slope;   // d(H(dL_j,dL_j)) along dL_j
    double degeneracy_limit = 0.0;      // extrapolated; finite when (i) holds
    double normal_slope_limit = 0.0;    // extrapolated; 2 <dL_j, dL_j> when (ii) holds
    double expected_slope = 0.0;
    double convergence_order = 0.0;
    bool pass_degeneracy = false;
    bool pass_slope = false;
};
BoundaryLimit boundary_condition_check(const ToricPotential& U, const DelzantPolyhedron& poly,
                                       int facet, const Vec& interior_start, int steps = 12,
                                       double slope_tol = 1e-3);

struct GrowthCheck {
    std::string name;
    double exponent = 0.0;
    double r_squared = 0.0;
    bool pass = false;
};

// norm growth of the given torus generators (components in the standard-cone
// basis) along a coordinate ray, fitted against the ray length
std::vector<GrowthCheck> killing_norm_growth_check(const profiles::ProfileSet& ps,
                                                   const std::vector<Vec>& vectors,
                                                   const std::vector<std::string>& names,
                                                   int ray_index, double t_max, int steps = 24,
                                                   double max_exponent = 1.05);

// plain-text record: "n1 n2 ... ; offset" per label, optional lattice block
std::string polyhedron_to_record(const DelzantPolyhedron& poly);
DelzantPolyhedron polyhedron_from_record(const std::string& text);

}  // namespace gkrs::toric
