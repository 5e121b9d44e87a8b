#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "gkrs/symfun.hpp"

// Profile functions F_j, q, p_c for the four soliton families, together with
// the sign/admissibility bookkeeping they must satisfy.

namespace gkrs::profiles {

enum class Family { CaoType, TaubNUTType, CalabiBundle, Cigar };
enum class Gauge { UnitExpCoeff, UnitQAtFirstNode };  // c = 1 vs |q(alpha_1)| = 1

std::string family_name(Family f);
std::optional<Family> family_from_name(const std::string& s);

struct Partition {
    int ell = 1;
    std::vector<int> dims;  // d_1.. (ell entries Cao type, ell-1 entries Taub-NUT type)

    int dim_sum() const;
    // total complex dimension n = ell + sum d_j
    int dimension() const { return ell + dim_sum(); }
};

struct InvalidParams : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SolitonParams {
    Family family = Family::CaoType;
    Partition partition;
    double a = 1.0;
    std::vector<double> alpha;  // strictly increasing, one per ell
    double scale = 1.0;
    Gauge gauge = Gauge::UnitExpCoeff;
    int bundle_degree = 1;  // CalabiBundle only

    void validate() const;  // throws InvalidParams
};

struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    bool bounded() const { return std::isfinite(lo) && std::isfinite(hi); }
    // reference point used as integration base and sampling anchor
    double mid() const;
    // point at parameter s in (0,1), unbounded ends mapped geometrically
    double at(double s, double span = 8.0) const;
};

// (node, order) pairs at which an F_j vanishes, used for deflated evaluation
struct ZeroOrder {
    double node = 0.0;
    int order = 0;
};

class ProfileSet {
public:
    Family family = Family::CaoType;
    Partition partition;
    double a = 0.0;
    double scale = 1.0;
    Gauge gauge = Gauge::UnitExpCoeff;
    std::vector<double> alpha;
    std::vector<symfun::ExpPoly> F;   // F_1..F_ell
    symfun::Polynomial q;
    symfun::Polynomial pc;
    std::vector<int> epsilon;         // sign vector
    std::vector<Interval> domain;     // per xi_j
    std::vector<std::pair<double, int>> eta_multiplicity;  // (alpha_j, d_j) with d_j > 0
    std::vector<std::vector<ZeroOrder>> zero_orders;       // per F_j
    bool flat = false;
    bool ricci_flat = false;
    bool incomplete_expected = false;

    int ell() const { return partition.ell; }
    int n() const { return partition.dimension(); }

    // Theta_j = F_j / p_c with removable singularities handled by a local
    // series branch inside |t - node| < kNearNodeRadius.
    double theta(int j, double t) const;
    double theta_derivative(int j, double t) const;
    // F_j via the same near-node series branch (cancellation-free near nodes)
    double f_stable(int j, double t) const;

    static constexpr double kNearNodeRadius = 1e-3;
    static constexpr int kSeriesTerms = 6;
};

ProfileSet build_cao_profile(const SolitonParams& params);
ProfileSet build_taubnut_profile(const SolitonParams& params);

// One-variable profile of the rank-one bundle construction and its blow-down,
// evaluated through the stable integral form.
class CalabiProfile {
public:
    double a = 0.0;
    double alpha = 0.0;
    int n = 1;
    int r = 1;
    double prefactor = 2.0;        // see notes(); both conventions are reported
    bool blow_down = false;        // alpha = 0 case on the blown-down total space
    bool cigar = false;            // n = 1

    double operator()(double xi) const;
    double derivative(double xi) const;
    double theta_prime_at_alpha() const;
    std::string notes() const;
};

CalabiProfile build_calabi_profile(const SolitonParams& params);

struct AdmissibilityCheck {
    std::string name;
    bool pass = false;
    double worst = 0.0;
    std::string detail;
};

struct AdmissibilityReport {
    std::vector<AdmissibilityCheck> checks;
    std::vector<int> q_roots_per_gap;  // gaps (alpha_i, alpha_{i+1})
    bool all_pass() const;
};

AdmissibilityReport check_admissibility(const ProfileSet& ps, int samples_per_interval = 200);

// Roots of q inside (lo, hi): sign changes on a fine grid refined by bisection.
std::vector<double> q_roots_in(const symfun::Polynomial& q, double lo, double hi,
                               int grid = 10000);

}  // namespace gkrs::profiles
