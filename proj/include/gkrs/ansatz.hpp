#pragma once

#include <random>
#include <span>
#include <vector>

#include "gkrs/potential.hpp"
#include "gkrs/profiles.hpp"

// Evaluation of the fibred toric ansatz on the dense chart: metric blocks,
// complex structure, the order-ell hamiltonian 2-form, momentum map,
// symplectic potential, the separated soliton identity, the soliton vector
// field, and the explicit 2-dimensional holomorphic coordinates.

namespace gkrs::ansatz {

using potential::Mat;
using potential::Vec;

struct ChartPoint {
    std::vector<double> xi;
    std::vector<double> angles;
    // base_momenta[j] has d_j entries strictly inside the standard simplex
    std::vector<std::vector<double>> base_momenta;
};

struct MomentumPoint {
    Vec mu;  // standard-cone coordinates, all positive in the interior
};

struct DegeneratePoint : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Symplectic potential of a built profile in standard-cone momentum
// coordinates, with closed-form gradient and Hessian (value needs one layer
// of quadrature per fiber variable).
class SolitonPotential final : public potential::ToricPotential {
public:
    explicit SolitonPotential(profiles::ProfileSet ps);

    int dim() const override { return n_; }
    double value(const Vec& nu) const override;
    Vec gradient(const Vec& nu) const override;
    Mat hessian(const Vec& nu) const override;

    // chart-parametrized evaluations (no inversion step)
    Vec nu_of(const ChartPoint& p) const;
    ChartPoint chart_of(const Vec& nu) const;
    double value_chart(const ChartPoint& p) const;
    Vec gradient_chart(const ChartPoint& p) const;
    Mat hessian_chart(const ChartPoint& p) const;

    const profiles::ProfileSet& profile() const { return ps_; }
    // labels L_j at a fiber point
    std::vector<double> label_values(std::span<const double> xi) const;
    // sigma as affine functions of nu: sigma = S_lin * nu + s_off
    const Mat& sigma_linear() const { return sigma_lin_; }
    const Vec& sigma_offset() const { return sigma_off_; }
    const std::vector<int>& block_start() const { return nu_start_; }
    const std::vector<int>& dims_padded() const { return d_; }

private:
    profiles::ProfileSet ps_;
    int l_ = 0, n_ = 0;
    std::vector<int> d_;          // dims padded to length l
    std::vector<double> Cj_;      // 2 (d_j + 1) / q(alpha_j)
    std::vector<Vec> vj_;         // label linear parts in sigma coordinates
    std::vector<double> off_;     // label offsets
    std::vector<int> nu_start_;   // nu block offsets (size l+1)
    Mat A_, Ainv_;                // nu = A m + beta over m = (sigma, w)
    Vec beta_;
    Mat sigma_lin_;
    Vec sigma_off_;

    Vec grad_m(std::span<const double> xi,
               const std::vector<std::vector<double>>& mucheck) const;
    Mat hess_m(std::span<const double> xi,
               const std::vector<std::vector<double>>& mucheck) const;
};

struct MetricBlocks {
    Vec fiber_xi_block;          // p_c(xi_j) Delta(xi_j) / F_j(xi_j)
    Mat fiber_angle_block;       // S diag(F_j / (p_c Delta)) S^T over the theta basis
    std::vector<double> base_factors;  // eps_a p_nc(eta_a), one per d_a > 0 factor
    Mat potential_hessian;       // Hess U at nu(p)
};

MetricBlocks metric_at(const profiles::ProfileSet& ps, const ChartPoint& p);

// tangent-basis tensors on (d/dxi, d/dt) for configurations with a trivial
// base (all d_j = 0, so theta_r = dt_r on the chart)
struct ChartTensors {
    Mat g, omega, J;
};
ChartTensors chart_tensors(const profiles::ProfileSet& ps, const ChartPoint& p);

// pure orthotoric: 2l x 2l chart map; otherwise the momentum-angle 2n x 2n map
Mat complex_structure_at(const profiles::ProfileSet& ps, const ChartPoint& p);

struct HamiltonianFormData {
    Mat endomorphism;                 // omega^{-1} phi on the fiber tangent space
    std::vector<double> eigenvalues;  // as complex endomorphism: xi's then eta's
};
HamiltonianFormData hamiltonian_form_at(const profiles::ProfileSet& ps, const ChartPoint& p);
// eigenvalues of (p phi + q omega) o omega^{-1}
std::vector<double> hamiltonian_form_eigenvalues_affine(const profiles::ProfileSet& ps,
                                                        const ChartPoint& p, double scale,
                                                        double shift);

MomentumPoint moment_map(const profiles::ProfileSet& ps, const ChartPoint& p);

double symplectic_potential(const profiles::ProfileSet& ps, const MomentumPoint& mu);

// value of -1/2 log|F_j(t)| + 1/2 int_mid^t q p_c / F_j - (a t + b_j); the
// soliton identity makes it vanish for the right b_j, and makes it constant
// in t for any b_j.
double ricci_soliton_residual_1d(const profiles::ProfileSet& ps, int j, double t, double b_j);

struct SolitonVectorData {
    double killing_coefficient = 0.0;  // f = coefficient * sigma_1
    std::vector<double> b;             // components in the standard-cone basis
    std::vector<double> b_block;       // one value per fiber factor j
};
SolitonVectorData killing_and_soliton_data(const profiles::ProfileSet& ps);

struct Holo2D {
    double v1 = 0, v2 = 0, H = 0;
    double z1_sq = 0, z2_sq = 0;
};
Holo2D holomorphic_coordinates_2d(const profiles::ProfileSet& ps, const ChartPoint& p);

// deterministic interior sample (u in (0,1)^k via the given engine)
ChartPoint sample_interior(const profiles::ProfileSet& ps, std::mt19937_64& rng,
                           double margin = 0.05);

}  // namespace gkrs::ansatz
