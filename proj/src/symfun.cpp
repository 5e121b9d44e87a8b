#include "gkrs/symfun.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>

namespace gkrs::symfun {

namespace {
constexpr double kTrimTol = 0.0;  // exact zeros only; callers manage noise
}

Polynomial::Polynomial(std::vector<double> ascending_coeffs) : coeffs_(std::move(ascending_coeffs)) {
    trim();
}

void Polynomial::trim() {
    while (!coeffs_.empty() && std::abs(coeffs_.back()) <= kTrimTol) coeffs_.pop_back();
}

Polynomial Polynomial::constant(double c) {
    return Polynomial(std::vector<double>{c});
}

Polynomial Polynomial::monomial(int degree, double c) {
    std::vector<double> v(degree + 1, 0.0);
    v.back() = c;
    return Polynomial(std::move(v));
}

Polynomial Polynomial::from_roots(std::span<const double> roots) {
    std::vector<int> mult(roots.size(), 1);
    return from_roots(roots, mult);
}

Polynomial Polynomial::from_roots(std::span<const double> roots, std::span<const int> mult) {
    std::vector<double> c{1.0};
    for (size_t k = 0; k < roots.size(); ++k) {
        for (int m = 0; m < mult[k]; ++m) {
            std::vector<double> next(c.size() + 1, 0.0);
            for (size_t i = 0; i < c.size(); ++i) {
                next[i + 1] += c[i];
                next[i] -= roots[k] * c[i];
            }
            c = std::move(next);
        }
    }
    return Polynomial(std::move(c));
}

double Polynomial::operator()(double t) const {
    double acc = 0.0;
    for (size_t i = coeffs_.size(); i-- > 0;) acc = acc * t + coeffs_[i];
    return acc;
}

double Polynomial::derivative_at(double t, int order) const {
    if (order == 0) return (*this)(t);
    // coefficient shift: (d/dt)^m sum c_i t^i = sum_{i>=m} c_i i!/(i-m)! t^{i-m}
    double acc = 0.0;
    for (size_t i = coeffs_.size(); i-- > static_cast<size_t>(order);) {
        double fall = 1.0;
        for (int k = 0; k < order; ++k) fall *= static_cast<double>(i - k);
        acc = acc * t + coeffs_[i] * fall;
        if (i == static_cast<size_t>(order)) break;
    }
    if (static_cast<int>(coeffs_.size()) <= order) return 0.0;
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() <= 1) return Polynomial();
    std::vector<double> d(coeffs_.size() - 1);
    for (size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<double>(i);
    return Polynomial(std::move(d));
}

Polynomial Polynomial::antiderivative() const {
    if (coeffs_.empty()) return Polynomial();
    std::vector<double> a(coeffs_.size() + 1, 0.0);
    for (size_t i = 0; i < coeffs_.size(); ++i) a[i + 1] = coeffs_[i] / static_cast<double>(i + 1);
    return Polynomial(std::move(a));
}

double Polynomial::integrate(double lo, double hi) const {
    Polynomial a = antiderivative();
    return a(hi) - a(lo);
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    std::vector<double> c(std::max(coeffs_.size(), o.coeffs_.size()), 0.0);
    for (size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
    for (size_t i = 0; i < o.coeffs_.size(); ++i) c[i] += o.coeffs_[i];
    return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    return *this + o.scaled(-1.0);
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (coeffs_.empty() || o.coeffs_.empty()) return Polynomial();
    std::vector<double> c(coeffs_.size() + o.coeffs_.size() - 1, 0.0);
    for (size_t i = 0; i < coeffs_.size(); ++i)
        for (size_t j = 0; j < o.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * o.coeffs_[j];
    return Polynomial(std::move(c));
}

Polynomial Polynomial::scaled(double s) const {
    std::vector<double> c = coeffs_;
    for (double& x : c) x *= s;
    return Polynomial(std::move(c));
}

std::pair<Polynomial, double> Polynomial::deflate(double alpha) const {
    if (coeffs_.empty()) return {Polynomial(), 0.0};
    std::vector<double> q(coeffs_.size() - 1, 0.0);
    double carry = coeffs_.back();
    for (size_t i = coeffs_.size() - 1; i-- > 0;) {
        q[i] = carry;
        carry = coeffs_[i] + alpha * carry;
    }
    return {Polynomial(std::move(q)), carry};
}

std::vector<double> Polynomial::taylor(double t0, int count) const {
    std::vector<double> out(count, 0.0);
    double fact = 1.0;
    for (int m = 0; m < count; ++m) {
        if (m > 0) fact *= m;
        out[m] = derivative_at(t0, m) / fact;
    }
    return out;
}

double Polynomial::coeff_norm() const {
    double n = 0.0;
    for (double c : coeffs_) n = std::max(n, std::abs(c));
    return n;
}

ExpPoly::ExpPoly(Polynomial poly, double exp_coeff, double rate)
    : poly_(std::move(poly)), c_(exp_coeff), rate_(rate) {
    if (rate_ == 0.0 && c_ != 0.0) {
        // absorb the constant into the polynomial part
        poly_ = poly_ + Polynomial::constant(c_);
        c_ = 0.0;
    }
}

double ExpPoly::operator()(double t) const {
    double v = poly_(t);
    if (c_ != 0.0) v += c_ * std::exp(-rate_ * t);
    return v;
}

double ExpPoly::derivative_at(double t, int order) const {
    double v = poly_.derivative_at(t, order);
    if (c_ != 0.0) {
        double p = 1.0;
        for (int k = 0; k < order; ++k) p *= -rate_;
        v += c_ * p * std::exp(-rate_ * t);
    }
    return v;
}

ExpPoly ExpPoly::derivative() const {
    return ExpPoly(poly_.derivative(), -rate_ * c_, rate_);
}

std::vector<double> ExpPoly::taylor(double t0, int count) const {
    std::vector<double> out = poly_.taylor(t0, count);
    if (c_ != 0.0) {
        double term = c_ * std::exp(-rate_ * t0);
        for (int m = 0; m < count; ++m) {
            out[m] += term;
            term *= -rate_ / static_cast<double>(m + 1);
        }
    }
    return out;
}

SymmetricData elem_symmetric(std::span<const double> xi) {
    const int l = static_cast<int>(xi.size());
    SymmetricData sd;
    sd.xi.assign(xi.begin(), xi.end());
    Polynomial pnc = Polynomial::from_roots(xi);  // prod (t - xi_j)
    sd.sigma.resize(l);
    for (int r = 1; r <= l; ++r) sd.sigma[r - 1] = ((r % 2) ? -1.0 : 1.0) * pnc.coeff(l - r);

    sd.reduced.assign(l, std::vector<double>(l, 0.0));
    sd.delta.assign(l, 1.0);
    for (int j = 0; j < l; ++j) {
        std::vector<double> others;
        others.reserve(l - 1);
        for (int i = 0; i < l; ++i)
            if (i != j) others.push_back(xi[i]);
        Polynomial pj = Polynomial::from_roots(others);  // degree l-1
        for (int r = 1; r <= l; ++r) {
            int s = r - 1;  // sigma_{r-1}(hat xi_j)
            sd.reduced[j][r - 1] = (s == 0) ? 1.0 : ((s % 2) ? -1.0 : 1.0) * pj.coeff(l - 1 - s);
        }
        double d = 1.0;
        for (double o : others) d *= (xi[j] - o);
        sd.delta[j] = d;
        if (d == 0.0) sd.degenerate = true;
    }
    for (int i = 0; i < l && !sd.degenerate; ++i)
        for (int j = i + 1; j < l; ++j)
            if (xi[i] == xi[j]) sd.degenerate = true;
    return sd;
}

double vandermonde_identity_residual(std::span<const double> alpha, int r) {
    const int l = static_cast<int>(alpha.size());
    if (r < 1 || r > l) throw std::invalid_argument("vandermonde residual: r out of range");
    SymmetricData sd = elem_symmetric(alpha);
    if (sd.degenerate) throw DegenerateInput("vandermonde residual: coincident nodes");
    double acc = 0.0;
    for (int j = 0; j < l; ++j) acc += std::pow(alpha[j], l - r) / sd.delta[j];
    return acc - (r == 1 ? 1.0 : 0.0);
}

double vandermonde_sigma1_residual(std::span<const double> xi) {
    const int l = static_cast<int>(xi.size());
    SymmetricData sd = elem_symmetric(xi);
    if (sd.degenerate) throw DegenerateInput("vandermonde residual: coincident nodes");
    double acc = 0.0;
    for (int j = 0; j < l; ++j) acc += std::pow(xi[j], l) / sd.delta[j];
    return acc - sd.sigma[0];
}

Polynomial hermite_interpolate(std::span<const HermiteNode> nodes) {
    int n = 0;
    for (const auto& nd : nodes) n += static_cast<int>(nd.values.size());
    if (n == 0) return Polynomial();
    for (size_t i = 0; i < nodes.size(); ++i)
        for (size_t j = i + 1; j < nodes.size(); ++j)
            if (nodes[i].node == nodes[j].node)
                throw SingularSystem("hermite interpolation: coincident nodes");

    Eigen::MatrixXd M(n, n);
    Eigen::VectorXd rhs(n);
    int row = 0;
    for (const auto& nd : nodes) {
        for (int m = 0; m < static_cast<int>(nd.values.size()); ++m, ++row) {
            for (int i = 0; i < n; ++i) {
                if (i < m) {
                    M(row, i) = 0.0;
                    continue;
                }
                double fall = 1.0;
                for (int k = 0; k < m; ++k) fall *= static_cast<double>(i - k);
                M(row, i) = fall * std::pow(nd.node, i - m);
            }
            rhs(row) = nd.values[m];
        }
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(M);
    Eigen::VectorXd sol = lu.solve(rhs);
    if (!((M * sol - rhs).norm() <= 1e-8 * (1.0 + rhs.norm())))
        throw SingularSystem("hermite interpolation: singular confluent Vandermonde system");
    std::vector<double> coeffs(sol.data(), sol.data() + n);
    return Polynomial(std::move(coeffs));
}

Polynomial poly_divide_exact(const Polynomial& num, const Polynomial& den, double tol) {
    if (den.is_zero()) throw std::invalid_argument("poly_divide_exact: zero divisor");
    if (num.is_zero()) return Polynomial();
    std::vector<double> rem = num.coeffs();
    const auto& d = den.coeffs();
    const int dn = num.degree(), dd = den.degree();
    if (dn < dd) {
        double rn = num.coeff_norm();
        if (rn > tol * std::max(1.0, num.coeff_norm())) throw NotDivisible(rn);
        return Polynomial();
    }
    std::vector<double> q(dn - dd + 1, 0.0);
    for (int k = dn - dd; k >= 0; --k) {
        double f = rem[k + dd] / d[dd];
        q[k] = f;
        for (int i = 0; i <= dd; ++i) rem[k + i] -= f * d[i];
    }
    double rnorm = 0.0;
    for (int i = 0; i < dd; ++i) rnorm = std::max(rnorm, std::abs(rem[i]));
    if (rnorm > tol * std::max(1.0, num.coeff_norm())) throw NotDivisible(rnorm);
    return Polynomial(std::move(q));
}

namespace {

// Gauss 7 / Kronrod 15 nodes and weights on [-1,1].
struct GK15 {
    static constexpr std::array<double, 8> xk = {
        0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
        0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
    static constexpr std::array<double, 8> wk = {
        0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
        0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
    static constexpr std::array<double, 4> wg = {
        0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};
};

struct PanelEstimate {
    double k15, err;
};

PanelEstimate gk15_panel(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * GK15::xk[i]);
        fv[14 - i] = f(c + h * GK15::xk[i]);
    }
    fv[7] = f(c);
    double k15 = GK15::wk[7] * fv[7];
    double g7 = GK15::wg[3] * fv[7];
    for (int i = 0; i < 7; ++i) k15 += GK15::wk[i] * (fv[i] + fv[14 - i]);
    for (int i = 0; i < 3; ++i) g7 += GK15::wg[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
    k15 *= h;
    g7 *= h;
    double diff = std::abs(k15 - g7);
    double err = diff * std::sqrt(std::max(diff * 200.0, 1e-300));
    return {k15, std::min(err, diff * 200.0)};
}

void gk15_adapt(const std::function<double(double)>& f, double a, double b, double tol, int depth,
                double& value, double& errsum, bool& ok) {
    PanelEstimate e = gk15_panel(f, a, b);
    if (e.err <= tol || depth >= kQuadratureMaxDepth) {
        value += e.k15;
        errsum += e.err;
        if (e.err > tol) ok = false;
        return;
    }
    double m = 0.5 * (a + b);
    gk15_adapt(f, a, m, 0.5 * tol, depth + 1, value, errsum, ok);
    gk15_adapt(f, m, b, 0.5 * tol, depth + 1, value, errsum, ok);
}

}  // namespace

QuadratureResult try_quadrature(const std::function<double(double)>& f, double lo, double hi,
                                double tol) {
    if (lo == hi) return {0.0, 0.0, true};
    double sign = 1.0;
    if (lo > hi) {
        std::swap(lo, hi);
        sign = -1.0;
    }
    double value = 0.0, err = 0.0;
    bool ok = true;
    gk15_adapt(f, lo, hi, tol, 0, value, err, ok);
    return {sign * value, err, ok};
}

double quadrature(const std::function<double(double)>& f, double lo, double hi, double tol) {
    QuadratureResult r = try_quadrature(f, lo, hi, tol);
    if (!r.converged)
        throw QuadratureError("quadrature failed to converge (error estimate " +
                                  std::to_string(r.error) + ")",
                              r.value);
    return r.value;
}

double pv_quadrature(const std::function<double(double)>& smooth, double lo, double hi,
                     std::span<const SimplePole> poles, double tol) {
    double v = quadrature(smooth, lo, hi, tol);
    for (const auto& p : poles)
        v += p.residue * (std::log(std::abs(hi - p.position)) - std::log(std::abs(lo - p.position)));
    return v;
}

}  // namespace gkrs::symfun
