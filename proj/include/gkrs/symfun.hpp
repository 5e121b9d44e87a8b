#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Polynomial and symmetric-function algebra, Hermite interpolation,
// exponential-polynomials and adaptive quadrature. Everything here is a pure
// function over immutable values; dense monomial coefficients are adequate at
// the degrees this library ever sees (<= ~16).

namespace gkrs::symfun {

class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<double> ascending_coeffs);
    static Polynomial zero() { return Polynomial(); }
    static Polynomial constant(double c);
    static Polynomial monomial(int degree, double c = 1.0);
    // prod_k (t - roots[k])^{mult[k]}  (mult omitted -> all ones)
    static Polynomial from_roots(std::span<const double> roots);
    static Polynomial from_roots(std::span<const double> roots, std::span<const int> mult);

    // degree of the zero polynomial is -1
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<double>& coeffs() const { return coeffs_; }
    double coeff(int k) const { return k >= 0 && k < (int)coeffs_.size() ? coeffs_[k] : 0.0; }
    double leading() const { return coeffs_.empty() ? 0.0 : coeffs_.back(); }

    double operator()(double t) const;
    double derivative_at(double t, int order = 1) const;
    Polynomial derivative() const;
    Polynomial antiderivative() const;          // constant term 0
    double integrate(double lo, double hi) const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial scaled(double s) const;
    Polynomial operator-() const { return scaled(-1.0); }

    // synthetic division by (t - alpha); returns (quotient, remainder)
    std::pair<Polynomial, double> deflate(double alpha) const;
    // Taylor coefficients around t0, orders 0..count-1
    std::vector<double> taylor(double t0, int count) const;

    double coeff_norm() const;                  // max-abs coefficient

private:
    std::vector<double> coeffs_;                // ascending degree, trimmed
    void trim();
};

// P(t) + c * exp(-rate * t).  rate = 0 collapses to the pure polynomial with
// the constant absorbed.
class ExpPoly {
public:
    ExpPoly() = default;
    ExpPoly(Polynomial poly, double exp_coeff, double rate);

    const Polynomial& poly() const { return poly_; }
    double exp_coeff() const { return c_; }
    double rate() const { return rate_; }
    bool pure_polynomial() const { return c_ == 0.0; }

    double operator()(double t) const;
    double derivative_at(double t, int order = 1) const;
    ExpPoly derivative() const;
    ExpPoly scaled(double s) const { return ExpPoly(poly_.scaled(s), s * c_, rate_); }
    // Taylor coefficients around t0, orders 0..count-1
    std::vector<double> taylor(double t0, int count) const;

private:
    Polynomial poly_;
    double c_ = 0.0;
    double rate_ = 0.0;
};

struct SymmetricData {
    std::vector<double> xi;                       // xi_1..xi_l as given
    std::vector<double> sigma;                    // sigma_1..sigma_l
    // reduced[j][r-1] = sigma_{r-1}(xi with entry j removed), r = 1..l
    std::vector<std::vector<double>> reduced;
    std::vector<double> delta;                    // Delta(xi_j) = prod_{i!=j}(xi_j - xi_i)
    bool degenerate = false;                      // coincident entries

    int ell() const { return static_cast<int>(xi.size()); }
    double sigma_r(int r) const { return r == 0 ? 1.0 : sigma.at(r - 1); }
};

SymmetricData elem_symmetric(std::span<const double> xi);

struct DegenerateInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// sum_j alpha_j^{l-r} / Delta(alpha_j) - delta_{r,1},  1 <= r <= l
double vandermonde_identity_residual(std::span<const double> alpha, int r);
// sum_j xi_j^l / Delta(xi_j) - sigma_1
double vandermonde_sigma1_residual(std::span<const double> xi);

struct HermiteNode {
    double node = 0.0;
    std::vector<double> values;                   // values[m] = P^{(m)}(node), m = 0..d
};

struct SingularSystem : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Unique P with deg P <= n-1 (n = total number of conditions) matching the
// prescribed derivative values at each node. Solved through the confluent
// Vandermonde system with partial pivoting.
Polynomial hermite_interpolate(std::span<const HermiteNode> nodes);

struct NotDivisible : std::runtime_error {
    explicit NotDivisible(double rnorm)
        : std::runtime_error("polynomial division leaves remainder of norm " +
                             std::to_string(rnorm)),
          remainder_norm(rnorm) {}
    double remainder_norm;
};

// Quotient of an exact division; throws NotDivisible if the remainder exceeds
// tol * |num| in coefficient norm.
Polynomial poly_divide_exact(const Polynomial& num, const Polynomial& den, double tol = 1e-10);

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    bool converged = false;
};

struct QuadratureError : std::runtime_error {
    QuadratureError(const std::string& what, double best)
        : std::runtime_error(what), best_estimate(best) {}
    double best_estimate;
};

inline constexpr double kQuadratureTol = 1e-12;
inline constexpr int kQuadratureMaxDepth = 40;

QuadratureResult try_quadrature(const std::function<double(double)>& f, double lo, double hi,
                                double tol = kQuadratureTol);
// Throwing variant used by library code.
double quadrature(const std::function<double(double)>& f, double lo, double hi,
                  double tol = kQuadratureTol);

struct SimplePole {
    double position = 0.0;
    double residue = 0.0;
};

// Cauchy principal value of integrate(f) where f has the listed simple poles
// inside (lo, hi). `smooth` must evaluate f(t) - sum_k residue_k/(t - pos_k)
// stably, including at the pole positions themselves.
double pv_quadrature(const std::function<double(double)>& smooth, double lo, double hi,
                     std::span<const SimplePole> poles, double tol = kQuadratureTol);

}  // namespace gkrs::symfun
