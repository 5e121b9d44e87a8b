#include "gkrs/ansatz.hpp"

#include <algorithm>
#include <cmath>

#include "gkrs/numeric.hpp"
#include "gkrs/symfun.hpp"

namespace gkrs::ansatz {

using profiles::ProfileSet;
using symfun::ExpPoly;
using symfun::Polynomial;
using symfun::SymmetricData;

namespace {

// S[r][j] = sigma_{r-1}(xi hat j) = d sigma_r / d xi_j
Mat sigma_jacobian(const SymmetricData& sd) {
    const int l = sd.ell();
    Mat S(l, l);
    for (int r = 1; r <= l; ++r)
        for (int j = 0; j < l; ++j) S(r - 1, j) = sd.reduced[j][r - 1];
    return S;
}

double pow_int(double x, int k) {
    double v = 1.0;
    for (int i = 0; i < k; ++i) v *= x;
    return v;
}

}  // namespace

SolitonPotential::SolitonPotential(ProfileSet ps) : ps_(std::move(ps)) {
    l_ = ps_.ell();
    n_ = ps_.n();
    d_ = ps_.partition.dims;
    d_.resize(l_, 0);

    Cj_.resize(l_);
    vj_.resize(l_);
    off_.resize(l_);
    nu_start_.assign(l_ + 1, 0);
    for (int j = 0; j < l_; ++j) {
        double qa = ps_.q(ps_.alpha[j]);
        if (qa == 0.0) throw std::runtime_error("SolitonPotential: q vanishes at a node");
        Cj_[j] = 2.0 * (d_[j] + 1) / qa;
        Vec v(l_);
        for (int r = 1; r <= l_; ++r)
            v(r - 1) = Cj_[j] * ((r % 2) ? 1.0 : -1.0) * pow_int(ps_.alpha[j], l_ - r);
        vj_[j] = v;
        off_[j] = -Cj_[j] * pow_int(ps_.alpha[j], l_);
        nu_start_[j + 1] = nu_start_[j] + d_[j] + 1;
    }

    // nu = A m + beta over m = (sigma_1..sigma_l, w-blocks)
    A_ = Mat::Zero(n_, n_);
    beta_ = Vec::Zero(n_);
    int w_at = l_;
    for (int j = 0; j < l_; ++j) {
        int row0 = nu_start_[j];
        for (int r = 0; r < l_; ++r) A_(row0, r) = vj_[j](r);
        beta_(row0) = off_[j];
        for (int k = 0; k < d_[j]; ++k) {
            A_(row0, w_at + k) = -1.0;
            A_(row0 + 1 + k, w_at + k) = 1.0;
        }
        w_at += d_[j];
    }
    Ainv_ = A_.inverse();
    sigma_lin_ = Ainv_.topRows(l_);
    sigma_off_ = -sigma_lin_ * beta_;
}

std::vector<double> SolitonPotential::label_values(std::span<const double> xi) const {
    std::vector<double> L(l_);
    for (int j = 0; j < l_; ++j) {
        double pnc = 1.0;
        for (int i = 0; i < l_; ++i) pnc *= (ps_.alpha[j] - xi[i]);
        L[j] = -Cj_[j] * pnc;
    }
    return L;
}

Vec SolitonPotential::nu_of(const ChartPoint& p) const {
    auto L = label_values(p.xi);
    Vec nu(n_);
    for (int j = 0; j < l_; ++j) {
        double rest = 1.0;
        for (int k = 0; k < d_[j]; ++k) {
            double m = p.base_momenta.at(j).at(k);
            nu(nu_start_[j] + 1 + k) = L[j] * m;
            rest -= m;
        }
        nu(nu_start_[j]) = L[j] * rest;
    }
    return nu;
}

ChartPoint SolitonPotential::chart_of(const Vec& nu) const {
    ChartPoint p;
    p.angles.assign(l_, 0.0);
    p.base_momenta.resize(l_);
    std::vector<double> L(l_);
    for (int j = 0; j < l_; ++j) {
        double Lj = 0.0;
        for (int k = 0; k <= d_[j]; ++k) Lj += nu(nu_start_[j] + k);
        if (!(Lj > 0.0)) throw DegeneratePoint("chart_of: point outside the momentum cone");
        L[j] = Lj;
        p.base_momenta[j].resize(d_[j]);
        for (int k = 0; k < d_[j]; ++k) p.base_momenta[j][k] = nu(nu_start_[j] + 1 + k) / Lj;
    }

    // Vieta seed: p_nc is monic of degree l with known values at the alpha's
    std::vector<double> target(l_);
    for (int j = 0; j < l_; ++j) target[j] = -L[j] / Cj_[j];  // p_nc(alpha_j)
    Polynomial pnc = Polynomial::from_roots(ps_.alpha);
    for (int j = 0; j < l_; ++j) {
        std::vector<double> others;
        for (int k = 0; k < l_; ++k)
            if (k != j) others.push_back(ps_.alpha[k]);
        Polynomial lag = Polynomial::from_roots(others);
        double den = lag(ps_.alpha[j]);
        pnc = pnc + lag.scaled(target[j] / den);
    }
    std::vector<double> xi(l_);
    for (int j = 0; j < l_; ++j) {
        const auto& dom = ps_.domain[j];
        double lo = dom.lo, hi = dom.hi;
        if (!std::isfinite(lo)) {
            lo = hi - 1.0;
            while (pnc(lo) * pnc(hi - 1e-12) > 0.0 && std::isfinite(lo)) lo = hi - 2.0 * (hi - lo);
        }
        if (!std::isfinite(hi)) {
            hi = lo + 1.0;
            while (pnc(hi) * pnc(lo + 1e-12) > 0.0 && std::isfinite(hi)) hi = lo + 2.0 * (hi - lo);
        }
        double a = lo, b = hi, fa = pnc(a);
        for (int it = 0; it < 200 && b - a > 1e-15 * (1.0 + std::abs(a)); ++it) {
            double m = 0.5 * (a + b), fm = pnc(m);
            if (fa * fm <= 0.0) b = m;
            else { a = m; fa = fm; }
        }
        xi[j] = 0.5 * (a + b);
    }

    // damped Newton on L_j(sigma(xi)) = L_j
    for (int it = 0; it < 50; ++it) {
        SymmetricData sd = symfun::elem_symmetric(xi);
        Mat S = sigma_jacobian(sd);
        auto Lx = label_values(xi);
        Vec res(l_);
        for (int j = 0; j < l_; ++j) res(j) = Lx[j] - L[j];
        if (res.lpNorm<Eigen::Infinity>() < 1e-12 * (1.0 + std::abs(L[0]))) break;
        Mat Jac(l_, l_);
        for (int j = 0; j < l_; ++j)
            for (int i = 0; i < l_; ++i) Jac(j, i) = vj_[j].dot(S.col(i));
        Vec step = Jac.partialPivLu().solve(res);
        double damp = 1.0;
        for (int h = 0; h < 30; ++h) {
            bool inside = true;
            std::vector<double> trial(l_);
            for (int j = 0; j < l_; ++j) {
                trial[j] = xi[j] - damp * step(j);
                if (!(trial[j] > ps_.domain[j].lo && trial[j] < ps_.domain[j].hi)) inside = false;
            }
            if (inside) { xi = trial; break; }
            damp *= 0.5;
        }
    }
    p.xi = xi;
    return p;
}

Vec SolitonPotential::grad_m(std::span<const double> xi,
                             const std::vector<std::vector<double>>& mucheck) const {
    Vec g = Vec::Zero(n_);
    // d u / d sigma_r = (-1)^{r+1} sum_j int_mid^{xi_j} t^{l-r} / Theta_j dt
    for (int r = 1; r <= l_; ++r) {
        double acc = 0.0;
        for (int j = 0; j < l_; ++j) {
            double mid = ps_.domain[j].mid();
            acc += symfun::quadrature(
                [&](double t) { return pow_int(t, l_ - r) / ps_.theta(j, t); }, mid, xi[j]);
        }
        g(r - 1) = ((r % 2) ? 1.0 : -1.0) * acc;
    }
    int w_at = l_;
    for (int j = 0; j < l_; ++j) {
        if (d_[j] == 0) continue;
        const auto& m = mucheck.at(j);
        double m0 = 1.0;
        for (double mk : m) m0 -= mk;
        // simplex potential u-check, its gradient and "u - <m, grad u>"
        double ucheck = 0.5 * m0 * std::log(m0);
        double pairing = 0.0;
        for (int k = 0; k < d_[j]; ++k) {
            ucheck += 0.5 * m[k] * std::log(m[k]);
            double gk = 0.5 * (std::log(m[k]) - std::log(m0));
            g(w_at + k) = gk;
            pairing += m[k] * gk;
        }
        double legendre_gap = ucheck - pairing;  // = 1/2 log m0
        for (int r = 0; r < l_; ++r) g(r) += vj_[j](r) * legendre_gap;
        w_at += d_[j];
    }
    return g;
}

Mat SolitonPotential::hess_m(std::span<const double> xi,
                             const std::vector<std::vector<double>>& mucheck) const {
    Mat H = Mat::Zero(n_, n_);
    SymmetricData sd = symfun::elem_symmetric(xi);
    if (sd.degenerate) throw DegeneratePoint("hess_m: coincident eigenvalues");
    for (int r = 1; r <= l_; ++r)
        for (int s = r; s <= l_; ++s) {
            double acc = 0.0;
            for (int j = 0; j < l_; ++j)
                acc += pow_int(xi[j], 2 * l_ - r - s) /
                       (ps_.theta(j, xi[j]) * sd.delta[j]);
            double v = (((r + s) % 2) ? -1.0 : 1.0) * acc;
            H(r - 1, s - 1) = v;
            H(s - 1, r - 1) = v;
        }
    auto L = label_values(xi);
    int w_at = l_;
    for (int j = 0; j < l_; ++j) {
        if (d_[j] == 0) continue;
        const auto& m = mucheck.at(j);
        double m0 = 1.0;
        for (double mk : m) m0 -= mk;
        Mat Hu(d_[j], d_[j]);
        for (int k = 0; k < d_[j]; ++k)
            for (int t = 0; t < d_[j]; ++t)
                Hu(k, t) = 0.5 * ((k == t ? 1.0 / m[k] : 0.0) + 1.0 / m0);
        Vec mv(d_[j]);
        for (int k = 0; k < d_[j]; ++k) mv(k) = m[k];
        Vec Hm = Hu * mv;
        double mHm = mv.dot(Hm);
        // sigma-sigma, sigma-w and w-w blocks of L_j ucheck(w / L_j)
        for (int r = 0; r < l_; ++r)
            for (int s = 0; s < l_; ++s) H(r, s) += vj_[j](r) * vj_[j](s) * mHm / L[j];
        for (int r = 0; r < l_; ++r)
            for (int k = 0; k < d_[j]; ++k) {
                double v = -vj_[j](r) * Hm(k) / L[j];
                H(r, w_at + k) += v;
                H(w_at + k, r) += v;
            }
        for (int k = 0; k < d_[j]; ++k)
            for (int t = 0; t < d_[j]; ++t) H(w_at + k, w_at + t) += Hu(k, t) / L[j];
        w_at += d_[j];
    }
    return H;
}

double SolitonPotential::value_chart(const ChartPoint& p) const {
    // u(sigma) with the polynomial p_nc frozen at this point's sigma
    Polynomial pnc = Polynomial::from_roots(p.xi);
    double u = 0.0;
    for (int j = 0; j < l_; ++j) {
        double mid = ps_.domain[j].mid();
        u -= symfun::quadrature([&](double t) { return pnc(t) / ps_.theta(j, t); }, mid, p.xi[j]);
    }
    auto L = label_values(p.xi);
    for (int j = 0; j < l_; ++j) {
        if (d_[j] == 0) continue;
        const auto& m = p.base_momenta.at(j);
        double m0 = 1.0, ucheck = 0.0;
        for (double mk : m) {
            ucheck += 0.5 * mk * std::log(mk);
            m0 -= mk;
        }
        ucheck += 0.5 * m0 * std::log(m0);
        u += L[j] * ucheck;
    }
    return u;
}

Vec SolitonPotential::gradient_chart(const ChartPoint& p) const {
    return Ainv_.transpose() * grad_m(p.xi, p.base_momenta);
}

Mat SolitonPotential::hessian_chart(const ChartPoint& p) const {
    return Ainv_.transpose() * hess_m(p.xi, p.base_momenta) * Ainv_;
}

double SolitonPotential::value(const Vec& nu) const { return value_chart(chart_of(nu)); }
Vec SolitonPotential::gradient(const Vec& nu) const { return gradient_chart(chart_of(nu)); }
Mat SolitonPotential::hessian(const Vec& nu) const { return hessian_chart(chart_of(nu)); }

MetricBlocks metric_at(const ProfileSet& ps, const ChartPoint& p) {
    const int l = ps.ell();
    SymmetricData sd = symfun::elem_symmetric(p.xi);
    if (sd.degenerate)
        throw DegeneratePoint("metric_at: coincident eigenvalues xi_i = xi_j");
    MetricBlocks mb;
    mb.fiber_xi_block = Vec(l);
    for (int j = 0; j < l; ++j) mb.fiber_xi_block(j) = sd.delta[j] / ps.theta(j, p.xi[j]);
    Mat S = sigma_jacobian(sd);
    Mat D = Mat::Zero(l, l);
    for (int j = 0; j < l; ++j) D(j, j) = ps.theta(j, p.xi[j]) / sd.delta[j];
    mb.fiber_angle_block = S * D * S.transpose();
    for (size_t a = 0; a < ps.eta_multiplicity.size(); ++a) {
        double eta = ps.eta_multiplicity[a].first;
        double pnc = 1.0;
        for (int i = 0; i < l; ++i) pnc *= (eta - p.xi[i]);
        // the sign attached to this eta in the profile's epsilon list
        int idx = 0;
        for (int j = 0; j < l; ++j)
            if (ps.alpha[j] == eta) idx = j;
        mb.base_factors.push_back(ps.epsilon[idx] * pnc);
    }
    SolitonPotential pot(ps);
    mb.potential_hessian = pot.hessian_chart(p);
    return mb;
}

ChartTensors chart_tensors(const ProfileSet& ps, const ChartPoint& p) {
    const int l = ps.ell();
    if (ps.partition.dim_sum() != 0)
        throw std::invalid_argument("chart_tensors: requires a trivial base (all d_j = 0)");
    SymmetricData sd = symfun::elem_symmetric(p.xi);
    if (sd.degenerate) throw DegeneratePoint("chart_tensors: coincident eigenvalues");
    Mat S = sigma_jacobian(sd);
    ChartTensors ct;
    ct.g = Mat::Zero(2 * l, 2 * l);
    ct.omega = Mat::Zero(2 * l, 2 * l);
    ct.J = Mat::Zero(2 * l, 2 * l);
    Mat G = Mat::Zero(l, l);
    for (int j = 0; j < l; ++j) {
        double th = ps.theta(j, p.xi[j]);
        ct.g(j, j) = sd.delta[j] / th;
        G += (th / sd.delta[j]) * S.col(j) * S.col(j).transpose();
    }
    ct.g.block(l, l, l, l) = G;
    ct.omega.block(0, l, l, l) = S.transpose();
    ct.omega.block(l, 0, l, l) = -S;
    // d xi_j (J X): theta-block row; d t_r (J X): xi-block row
    for (int j = 0; j < l; ++j) {
        double th = ps.theta(j, p.xi[j]);
        for (int r = 0; r < l; ++r) ct.J(j, l + r) = (th / sd.delta[j]) * S(r, j);
    }
    for (int r = 1; r <= l; ++r)
        for (int j = 0; j < l; ++j)
            ct.J(l + r - 1, j) =
                ((r % 2) ? -1.0 : 1.0) * pow_int(p.xi[j], l - r) / ps.theta(j, p.xi[j]);
    return ct;
}

Mat complex_structure_at(const ProfileSet& ps, const ChartPoint& p) {
    if (ps.partition.dim_sum() == 0) return chart_tensors(ps, p).J;
    // momentum-angle representation from the potential Hessian
    SolitonPotential pot(ps);
    Mat H = pot.hessian_chart(p);
    const int n = ps.n();
    Mat J = Mat::Zero(2 * n, 2 * n);
    J.block(0, n, n, n) = -H.inverse();
    J.block(n, 0, n, n) = H;
    return J;
}

namespace {

// fiber blocks of omega and of (scale phi + shift omega) on (d/dxi, d/dt)
std::pair<Mat, Mat> fiber_two_forms(const ProfileSet& ps, const ChartPoint& p, double scale,
                                    double shift) {
    const int l = ps.ell();
    SymmetricData sd = symfun::elem_symmetric(p.xi);
    if (sd.degenerate) throw DegeneratePoint("hamiltonian form: coincident eigenvalues");
    Mat S = sigma_jacobian(sd);
    Mat B(l, l);  // B(j, r-1) = phi(d/dxi_j, d/dt_r) = sigma_r dsigma_1/dxi_j - dsigma_{r+1}/dxi_j
    for (int j = 0; j < l; ++j)
        for (int r = 1; r <= l; ++r) {
            double ds_next = (r + 1 <= l) ? S(r, j) : 0.0;
            B(j, r - 1) = sd.sigma_r(r) * S(0, j) - ds_next;
        }
    Mat omega = Mat::Zero(2 * l, 2 * l), phi = Mat::Zero(2 * l, 2 * l);
    omega.block(0, l, l, l) = S.transpose();
    omega.block(l, 0, l, l) = -S;
    Mat top = scale * B + shift * S.transpose();
    phi.block(0, l, l, l) = top;
    phi.block(l, 0, l, l) = -top.transpose();
    return {omega, phi};
}

}  // namespace

std::vector<double> hamiltonian_form_eigenvalues_affine(const ProfileSet& ps, const ChartPoint& p,
                                                        double scale, double shift) {
    const int l = ps.ell();
    auto [omega, phi] = fiber_two_forms(ps, p, scale, shift);
    Mat E = omega.partialPivLu().solve(phi);
    Eigen::EigenSolver<Mat> es(E);
    std::vector<double> ev;
    for (int i = 0; i < 2 * l; ++i) ev.push_back(es.eigenvalues()(i).real());
    std::sort(ev.begin(), ev.end());
    // the real endomorphism carries each complex eigenvalue twice
    std::vector<double> vals;
    for (int i = 0; i < l; ++i) vals.push_back(0.5 * (ev[2 * i] + ev[2 * i + 1]));
    for (const auto& [eta, mult] : ps.eta_multiplicity)
        for (int m = 0; m < mult; ++m) vals.push_back(scale * eta + shift);
    std::sort(vals.begin(), vals.end());
    return vals;
}

HamiltonianFormData hamiltonian_form_at(const ProfileSet& ps, const ChartPoint& p) {
    auto [omega, phi] = fiber_two_forms(ps, p, 1.0, 0.0);
    HamiltonianFormData out;
    out.endomorphism = omega.partialPivLu().solve(phi);
    out.eigenvalues = hamiltonian_form_eigenvalues_affine(ps, p, 1.0, 0.0);
    return out;
}

MomentumPoint moment_map(const ProfileSet& ps, const ChartPoint& p) {
    SolitonPotential pot(ps);
    return MomentumPoint{pot.nu_of(p)};
}

double symplectic_potential(const ProfileSet& ps, const MomentumPoint& mu) {
    SolitonPotential pot(ps);
    return pot.value(mu.mu);
}

double ricci_soliton_residual_1d(const ProfileSet& ps, int j, double t, double b_j) {
    double mid = ps.domain.at(j).mid();
    double integral = symfun::quadrature(
        [&](double x) { return ps.q(x) / ps.theta(j, x); }, mid, t, 1e-12);
    double lhs = -0.5 * std::log(std::abs(ps.f_stable(j, t))) + 0.5 * integral;
    return lhs - (ps.a * t + b_j);
}

SolitonVectorData killing_and_soliton_data(const ProfileSet& ps) {
    const int l = ps.ell();
    std::vector<int> d = ps.partition.dims;
    d.resize(l, 0);
    SolitonVectorData out;
    out.killing_coefficient = 2.0 * ps.a;
    out.b_block.resize(l);
    for (int j = 0; j < l; ++j) {
        double delta = 1.0;
        for (int k = 0; k < l; ++k)
            if (k != j) delta *= (ps.alpha[j] - ps.alpha[k]);
        out.b_block[j] = ps.a * ps.q(ps.alpha[j]) / ((d[j] + 1) * delta);
    }
    for (int j = 0; j < l; ++j)
        for (int k = 0; k <= d[j]; ++k) out.b.push_back(out.b_block[j]);
    return out;
}

namespace {

// Laurent data of r / F at a simple zero beta of F; coefficient c_{-1} is the
// residue, c_0.. are the smooth part.
struct LocalRatio {
    double residue = 0.0;
    std::vector<double> smooth;  // ascending powers of (t - beta)
};

LocalRatio local_ratio(const Polynomial& r, const ExpPoly& F, double beta, int terms) {
    auto fr = r.taylor(beta, terms + 1);
    auto ff = F.taylor(beta, terms + 2);
    // F = s (f1 + f2 s + ...)
    std::vector<double> den(ff.begin() + 1, ff.end());
    std::vector<double> q(terms + 1, 0.0);
    for (int m = 0; m <= terms; ++m) {
        double acc = fr[m];
        for (int i = 0; i < m; ++i) acc -= q[i] * den[m - i];
        q[m] = acc / den[0];
    }
    LocalRatio lr;
    lr.residue = q[0];
    lr.smooth.assign(q.begin() + 1, q.end());
    return lr;
}

// integral of r / F_j from lo to hi in the principal-value sense across the
// simple zeros of F_j
double profile_ratio_integral(const ProfileSet& ps, int j, const Polynomial& r, double lo,
                              double hi) {
    const ExpPoly& F = ps.F.at(j);
    double a = std::min(lo, hi), b = std::max(lo, hi);
    struct NodeData {
        double beta;
        LocalRatio lr;
    };
    std::vector<NodeData> nodes;
    std::vector<symfun::SimplePole> poles;
    for (const auto& z : ps.zero_orders.at(j)) {
        if (z.order != 1) continue;  // only simple zeros occur in the 2D use
        if (z.node <= a - ProfileSet::kNearNodeRadius || z.node >= b + ProfileSet::kNearNodeRadius)
            continue;
        NodeData nd{z.node, local_ratio(r, F, z.node, ProfileSet::kSeriesTerms)};
        if (z.node > a && z.node < b && nd.lr.residue != 0.0)
            poles.push_back({z.node, nd.lr.residue});
        nodes.push_back(std::move(nd));
    }
    // integrand with every pole term subtracted; near a node the Laurent
    // series already carries the subtraction
    auto smooth = [&](double t) {
        const NodeData* near = nullptr;
        for (const auto& nd : nodes)
            if (std::abs(t - nd.beta) < ProfileSet::kNearNodeRadius) near = &nd;
        double v;
        if (near) {
            double s = t - near->beta;
            double acc = 0.0;
            for (int m = static_cast<int>(near->lr.smooth.size()) - 1; m >= 0; --m)
                acc = acc * s + near->lr.smooth[m];
            v = acc;
            for (const auto& pl : poles)
                if (pl.position != near->beta) v -= pl.residue / (t - pl.position);
            // a treated node just outside (a, b) is not in `poles`; restore its term
            bool subtracted = false;
            for (const auto& pl : poles) subtracted |= pl.position == near->beta;
            if (!subtracted && near->lr.residue != 0.0 && s != 0.0)
                v += near->lr.residue / s;
        } else {
            v = r(t) / F(t);
            for (const auto& pl : poles) v -= pl.residue / (t - pl.position);
        }
        return v;
    };
    double val = symfun::pv_quadrature(smooth, a, b, poles, 1e-12);
    return (lo <= hi) ? val : -val;
}

}  // namespace

Holo2D holomorphic_coordinates_2d(const ProfileSet& ps, const ChartPoint& p) {
    if (ps.ell() != 2 || ps.partition.dim_sum() != 0)
        throw std::invalid_argument(
            "holomorphic_coordinates_2d: only the 2-dimensional orthotoric families are "
            "supported");
    const double a1 = ps.alpha[0], a2 = ps.alpha[1];
    Polynomial r1({-a2, 1.0});             // t - alpha_2
    Polynomial r2({-a1, 1.0});             // t - alpha_1
    Polynomial rH = r1 * r2;               // (t - alpha_1)(t - alpha_2)
    const double f1p = ps.F[0].derivative_at(a1, 1);
    const double f2p = ps.F[1].derivative_at(a2, 1);

    Holo2D h;
    h.v1 = -0.5 * f1p * (profile_ratio_integral(ps, 0, r1, a2, p.xi[0]) +
                         profile_ratio_integral(ps, 1, r1, a2, p.xi[1]));
    h.v2 = 0.5 * f2p * (profile_ratio_integral(ps, 0, r2, a1, p.xi[0]) +
                        profile_ratio_integral(ps, 1, r2, a1, p.xi[1]));
    double hlo1 = (ps.family == profiles::Family::TaubNUTType) ? a2 : ps.domain[0].mid();
    double hlo2 = (ps.family == profiles::Family::TaubNUTType) ? a1 : ps.domain[1].mid();
    h.H = profile_ratio_integral(ps, 0, rH, hlo1, p.xi[0]) +
          profile_ratio_integral(ps, 1, rH, hlo2, p.xi[1]);
    h.z1_sq = std::exp(2.0 * h.v1);
    h.z2_sq = std::exp(2.0 * h.v2);
    return h;
}

ChartPoint sample_interior(const ProfileSet& ps, std::mt19937_64& rng, double margin) {
    std::uniform_real_distribution<double> U(margin, 1.0 - margin);
    ChartPoint p;
    p.xi.resize(ps.ell());
    p.angles.assign(ps.ell(), 0.0);
    for (int j = 0; j < ps.ell(); ++j) p.xi[j] = ps.domain[j].at(U(rng));
    std::vector<int> d = ps.partition.dims;
    d.resize(ps.ell(), 0);
    p.base_momenta.resize(ps.ell());
    for (int j = 0; j < ps.ell(); ++j) {
        p.base_momenta[j].resize(d[j]);
        if (d[j] == 0) continue;
        double total = 0.0;
        for (int k = 0; k < d[j]; ++k) {
            p.base_momenta[j][k] = U(rng);
            total += p.base_momenta[j][k];
        }
        // renormalize into the open simplex
        double cap = U(rng) * (1.0 - margin) + margin * 0.5;
        for (int k = 0; k < d[j]; ++k) p.base_momenta[j][k] *= cap / std::max(total, 1e-300);
    }
    return p;
}

}  // namespace gkrs::ansatz
