#include "gkrs/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "gkrs/numeric.hpp"

namespace gkrs::curvature {

namespace {

// multi-index tensors over the 2n momentum-angle coordinates; only the first
// n (momentum) directions carry derivatives
struct MetricData {
    Mat G, Ginv;
    std::vector<Mat> dG;  // dG[a] = d G / d mu_a, a < n
};

Mat metric_matrix(const ToricPotential& U, const Vec& mu) {
    const int n = U.dim();
    Mat H = U.hessian(mu);
    Mat G = Mat::Zero(2 * n, 2 * n);
    G.topLeftCorner(n, n) = H;
    G.bottomRightCorner(n, n) = H.inverse();
    return G;
}

MetricData metric_data(const ToricPotential& U, const Vec& mu) {
    const int n = U.dim();
    MetricData md;
    Mat H = U.hessian(mu);
    Mat Hinv = H.inverse();
    md.G = Mat::Zero(2 * n, 2 * n);
    md.G.topLeftCorner(n, n) = H;
    md.G.bottomRightCorner(n, n) = Hinv;
    md.Ginv = Mat::Zero(2 * n, 2 * n);
    md.Ginv.topLeftCorner(n, n) = Hinv;
    md.Ginv.bottomRightCorner(n, n) = H;
    md.dG.assign(n, Mat::Zero(2 * n, 2 * n));
    for (int a = 0; a < n; ++a) {
        double h = 1e-3 * (1.0 + std::abs(mu(a)));
        double h2 = 0.5 * h;
        auto Hat = [&](double off) {
            Vec m = mu;
            m(a) += off;
            return U.hessian(m);
        };
        Mat d_h = (-Hat(2 * h) + 8.0 * Hat(h) - 8.0 * Hat(-h) + Hat(-2 * h)) / (12 * h);
        Mat d_h2 = (-Hat(2 * h2) + 8.0 * Hat(h2) - 8.0 * Hat(-h2) + Hat(-2 * h2)) / (12 * h2);
        Mat dH = (16.0 * d_h2 - d_h) / 15.0;
        Mat dHinv = -Hinv * dH * Hinv;
        md.dG[a].topLeftCorner(n, n) = dH;
        md.dG[a].bottomRightCorner(n, n) = dHinv;
    }
    return md;
}

// all Christoffel symbols Gamma^k_{ij} at mu
std::vector<Mat> christoffel(const ToricPotential& U, const Vec& mu) {
    const int n = U.dim();
    const int N = 2 * n;
    MetricData md = metric_data(U, mu);
    auto dg = [&](int a, int i, int j) { return a < n ? md.dG[a](i, j) : 0.0; };
    std::vector<Mat> Gamma(N, Mat::Zero(N, N));
    for (int k = 0; k < N; ++k)
        for (int i = 0; i < N; ++i)
            for (int j = i; j < N; ++j) {
                double acc = 0.0;
                for (int l = 0; l < N; ++l)
                    acc += md.Ginv(k, l) * (dg(i, l, j) + dg(j, l, i) - dg(l, i, j));
                Gamma[k](i, j) = Gamma[k](j, i) = 0.5 * acc;
            }
    return Gamma;
}

}  // namespace

CurvatureReport curvature_from_potential(const ToricPotential& U, const Vec& mu, const Vec& b,
                                         int plane_samples, unsigned seed) {
    const int n = U.dim();
    const int N = 2 * n;
    CurvatureReport rep;
    rep.point = mu;
    MetricData md = metric_data(U, mu);
    {
        Eigen::SelfAdjointEigenSolver<Mat> es(md.G.topLeftCorner(n, n));
        if (!(es.eigenvalues().minCoeff() > 0.0))
            throw std::runtime_error("curvature_from_potential: Hessian not positive definite");
        double cond = es.eigenvalues().maxCoeff() / es.eigenvalues().minCoeff();
        if (cond > 1e12)
            throw std::runtime_error("curvature_from_potential: Hessian too ill-conditioned");
    }

    std::vector<Mat> Gamma = christoffel(U, mu);
    // dGamma[a][k](i,j) = d_a Gamma^k_{ij}; only momentum directions matter
    std::vector<std::vector<Mat>> dGamma(n, std::vector<Mat>(N, Mat::Zero(N, N)));
    for (int a = 0; a < n; ++a) {
        double h = 1e-3 * (1.0 + std::abs(mu(a)));
        double h2 = 0.5 * h;
        std::array<std::vector<Mat>, 4> at;  // +-h, +-h/2
        std::array<double, 4> offs{h, -h, h2, -h2};
        for (int s = 0; s < 4; ++s) {
            Vec m = mu;
            m(a) += offs[s];
            at[s] = christoffel(U, m);
        }
        for (int k = 0; k < N; ++k) {
            Mat dh = (at[0][k] - at[1][k]) / (2 * h);
            Mat dh2 = (at[2][k] - at[3][k]) / (2 * h2);
            dGamma[a][k] = (4.0 * dh2 - dh) / 3.0;  // Richardson for the 2nd-order stencil
        }
    }
    auto dGam = [&](int a, int k, int i, int j) { return a < n ? dGamma[a][k](i, j) : 0.0; };

    // R^r_{s i j} = d_i Gamma^r_{js} - d_j Gamma^r_{is} + Gamma^r_{il} Gamma^l_{js}
    //            - Gamma^r_{jl} Gamma^l_{is}
    std::vector<double> Rm(N * N * N * N, 0.0);
    auto idx = [N](int r, int s, int i, int j) { return ((r * N + s) * N + i) * N + j; };
    for (int r = 0; r < N; ++r)
        for (int s = 0; s < N; ++s)
            for (int i = 0; i < N; ++i)
                for (int j = 0; j < N; ++j) {
                    double v = dGam(i, r, j, s) - dGam(j, r, i, s);
                    for (int l = 0; l < N; ++l)
                        v += Gamma[r](i, l) * Gamma[l](j, s) - Gamma[r](j, l) * Gamma[l](i, s);
                    Rm[idx(r, s, i, j)] = v;
                }

    Mat Ric = Mat::Zero(N, N);
    for (int s = 0; s < N; ++s)
        for (int j = 0; j < N; ++j) {
            double v = 0.0;
            for (int i = 0; i < N; ++i) v += Rm[idx(i, s, i, j)];
            Ric(s, j) = v;
        }
    Ric = 0.5 * (Ric + Ric.transpose()).eval();
    rep.scal = (md.Ginv * Ric).trace();

    // lowered tensor and its metric norm
    std::vector<double> Rlow(N * N * N * N, 0.0);
    for (int r = 0; r < N; ++r)
        for (int s = 0; s < N; ++s)
            for (int i = 0; i < N; ++i)
                for (int j = 0; j < N; ++j) {
                    double v = 0.0;
                    for (int l = 0; l < N; ++l) v += md.G(r, l) * Rm[idx(l, s, i, j)];
                    Rlow[idx(r, s, i, j)] = v;
                }
    double rm2 = 0.0;
    for (int r = 0; r < N; ++r)
        for (int s = 0; s < N; ++s)
            for (int i = 0; i < N; ++i)
                for (int j = 0; j < N; ++j) {
                    // contract all four slots with Ginv
                    double v = 0.0;
                    for (int rp = 0; rp < N; ++rp)
                        for (int sp = 0; sp < N; ++sp)
                            for (int ip = 0; ip < N; ++ip)
                                for (int jp = 0; jp < N; ++jp)
                                    v += md.Ginv(r, rp) * md.Ginv(s, sp) * md.Ginv(i, ip) *
                                         md.Ginv(j, jp) * Rlow[idx(rp, sp, ip, jp)];
                    rm2 += v * Rlow[idx(r, s, i, j)];
                }
    rep.riemann_norm = std::sqrt(std::max(0.0, rm2));
    rep.ricci_norm = std::sqrt(std::max(0.0, (md.Ginv * Ric * md.Ginv * Ric).trace()));

    // soliton residual Ric_{ij} + Gamma^k_{ij} btilde_k with btilde = (b, 0)
    Mat res = Ric;
    for (int k = 0; k < n; ++k) res += b(k) * Gamma[k];
    rep.soliton_residual_norm = std::sqrt(std::max(0.0, (md.Ginv * res * md.Ginv * res).trace()));

    Eigen::GeneralizedSelfAdjointEigenSolver<Mat> ges(Ric, md.G);
    rep.ricci_eigenvalues.assign(ges.eigenvalues().data(), ges.eigenvalues().data() + N);

    if (plane_samples > 0) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> g(0.0, 1.0);
        double best = std::numeric_limits<double>::infinity();
        Mat best_plane = Mat::Zero(N, 2);
        for (int s = 0; s < plane_samples; ++s) {
            Vec X(N), Y(N);
            for (int i = 0; i < N; ++i) {
                X(i) = g(rng);
                Y(i) = g(rng);
            }
            X /= std::sqrt(X.dot(md.G * X));
            Y -= (X.dot(md.G * Y)) * X;
            double ny = std::sqrt(Y.dot(md.G * Y));
            if (ny < 1e-12) continue;
            Y /= ny;
            double K = 0.0;
            for (int r = 0; r < N; ++r)
                for (int ss = 0; ss < N; ++ss)
                    for (int i = 0; i < N; ++i)
                        for (int j = 0; j < N; ++j)
                            K += Rlow[idx(r, ss, i, j)] * X(r) * Y(ss) * X(i) * Y(j);
            if (K < best) {
                best = K;
                best_plane.col(0) = X;
                best_plane.col(1) = Y;
            }
        }
        rep.sectional_min = best;
        rep.sectional_min_plane = best_plane;
    }
    return rep;
}

AmbiData2D ambi_closed_forms_2d(const symfun::ExpPoly& F1, const symfun::ExpPoly& F2, double xi1,
                                double xi2) {
    if (xi1 == xi2) throw std::invalid_argument("ambi_closed_forms_2d: coincident eigenvalues");
    const double x12 = xi1 - xi2;
    AmbiData2D d;
    double f1 = F1(xi1), f2 = F2(xi2);
    double f1p = F1.derivative_at(xi1, 1), f2p = F2.derivative_at(xi2, 1);
    double f1pp = F1.derivative_at(xi1, 2), f2pp = F2.derivative_at(xi2, 2);
    d.scal = -(f1pp - f2pp) / x12;
    d.kappa_I = d.scal + 6.0 * (f1p + f2p) / (x12 * x12) - 12.0 * (f1 - f2) / (x12 * x12 * x12);
    d.lambda_raw = -0.25 * (f1pp + f2pp) / x12 + 0.5 * (f1p - f2p) / (x12 * x12);
    d.lambda = std::abs(d.lambda_raw);
    d.x = xi2 - xi1;
    d.fs_const = (d.scal - d.kappa_I) / 24.0;
    if (F1.rate() == F2.rate() && F1.rate() > 0.0) {
        d.a = 0.5 * F1.rate();
        d.A = std::exp(-F1.rate() * xi1) + std::exp(-F1.rate() * xi2);
        d.B = std::exp(-F1.rate() * xi1) - std::exp(-F1.rate() * xi2);
    }
    return d;
}

CaoCurvature2D::CaoCurvature2D(double a, double unit_scale) : a_(a), c_(unit_scale) {
    if (!(a_ > 0.0)) throw std::invalid_argument("CaoCurvature2D: needs a > 0");
}

CaoCurvature2D CaoCurvature2D::from_profile(const profiles::ProfileSet& ps) {
    if (ps.family != profiles::Family::CaoType || ps.ell() != 2 || ps.partition.dim_sum() != 0)
        throw std::invalid_argument("CaoCurvature2D: needs the 2-dimensional orthotoric family");
    if (ps.alpha[0] != 0.0 || ps.alpha[1] != 1.0)
        throw std::invalid_argument("CaoCurvature2D: closed forms assume alpha = (0, 1)");
    return CaoCurvature2D(ps.a, ps.F[0].exp_coeff());
}

double CaoCurvature2D::scaled_scal(double x) const {
    return c_ * 4.0 * a_ * a_ * std::expm1(2.0 * a_ * x) / x;
}

double CaoCurvature2D::scaled_lambda(double x) const {
    const double a = a_;
    if (use_series(x)) {
        // sum_{m>=1} a^2 (2a)^{m+1} (m/(m+2)) x^m / (m+1)!
        double term = a * a * 4.0 * a * a * x / 2.0;  // m = 1 base before the m/(m+2) factor
        double acc = 0.0;
        for (int m = 1; m <= 64; ++m) {
            acc += term * (static_cast<double>(m) / (m + 2));
            term *= 2.0 * a * x / (m + 2);
        }
        return c_ * acc;
    }
    double E = std::expm1(2.0 * a * x);
    return c_ * (a * a * (E + 2.0) / x - a * E / (x * x));
}

double CaoCurvature2D::scaled_kappa_I(double x) const {
    const double a = a_;
    if (use_series(x)) {
        // sum_{k>=2} [k(k-1)/((k+3)(k+2))] (2a)^{k+3} x^k / (k+1)!
        double term = std::pow(2.0 * a, 5) * x * x / 6.0;  // k = 2 base
        double acc = 0.0;
        for (int k = 2; k <= 66; ++k) {
            acc += term * (static_cast<double>(k) * (k - 1)) / ((k + 3.0) * (k + 2.0));
            term *= 2.0 * a * x / (k + 2);
        }
        return c_ * acc;
    }
    double E = std::expm1(2.0 * a * x);
    return c_ * (4.0 * a * a * E / x + 12.0 * E / (x * x * x) - 12.0 * a * (E + 2.0) / (x * x));
}

double CaoCurvature2D::scaled_ric_bound(double x) const {
    const double a = a_;
    if (use_series(x)) {
        // sum_{m>=0} a (2a)^{m+2} x^m / (m+2)!
        double term = a * 4.0 * a * a / 2.0;
        double acc = 0.0;
        for (int m = 0; m <= 64; ++m) {
            acc += term;
            term *= 2.0 * a * x / (m + 3);
        }
        return c_ * acc;
    }
    double E = std::expm1(2.0 * a * x);
    return c_ * (a * E / (x * x) - 2.0 * a * a / x);
}

double CaoCurvature2D::scaled_fs_const(double x) const {
    const double a = a_;
    if (use_series(x)) {
        // sum_{k>=3} a^k 2^{k-2} (1 - 2/k) x^{k-3} / (k-1)!
        double term = a * a * a * 2.0 / 2.0;  // k = 3: a^3 2^1 / 2!
        double acc = 0.0;
        for (int k = 3; k <= 66; ++k) {
            acc += term * (1.0 - 2.0 / k);
            term *= 2.0 * a * x / k;
        }
        return c_ * acc;
    }
    double E = std::expm1(2.0 * a * x);
    return c_ * (a * (E + 2.0) / (2.0 * x * x) - E / (2.0 * x * x * x));
}

double CaoCurvature2D::scaled_f_minus1(double x) const {
    const double a = a_;
    if (use_series(x)) {
        // sum_{k>=3} (2a)^k x^{k-3} / k!
        double term = 8.0 * a * a * a / 6.0;  // k = 3
        double acc = 0.0;
        for (int k = 3; k <= 66; ++k) {
            acc += term;
            term *= 2.0 * a * x / (k + 1);
        }
        return c_ * acc;
    }
    double E = std::expm1(2.0 * a * x);
    return c_ * (E / (x * x * x) - 2.0 * a / (x * x) - 2.0 * a * a / x);
}

double CaoCurvature2D::h_series(double x) const {
    const double a = a_;
    // sum_{k>=0} (2^{k+3} a^{k+3} / (k+3)!) (2^{k+3} - 2 - (k+3)(k+2)) x^k
    double term = 8.0 * a * a * a / 6.0;  // 2^3 a^3 / 3!
    double two_pow = 8.0;                 // 2^{k+3}
    double acc = 0.0;
    for (int k = 0; k <= 70; ++k) {
        acc += term * (two_pow - 2.0 - (k + 3.0) * (k + 2.0));
        term *= 2.0 * a * x / (k + 4);
        two_pow *= 2.0;
    }
    return c_ * acc;
}

AmbiData2D CaoCurvature2D::eval(double xi1, double xi2) const {
    AmbiData2D d;
    const double x = xi2 - xi1;
    if (!(x > 0.0)) throw std::invalid_argument("CaoCurvature2D: needs xi2 > xi1");
    const double a = a_;
    d.x = x;
    d.a = a;
    d.A = std::exp(-2.0 * a * xi1) + std::exp(-2.0 * a * xi2);
    d.B = std::exp(-2.0 * a * xi1) - std::exp(-2.0 * a * xi2);
    if (use_series(x)) {
        const double w = std::exp(-2.0 * a * xi2);
        d.scal = w * scaled_scal(x);
        d.kappa_I = w * scaled_kappa_I(x);
        d.lambda_raw = w * scaled_lambda(x);
        d.fs_const = w * scaled_fs_const(x);
    } else {
        // wide gap: the raw closed forms neither cancel nor overflow
        d.scal = c_ * 4.0 * a * a * d.B / x;
        d.kappa_I = d.scal - c_ * 12.0 / (x * x) * (a * d.A - d.B / x);
        d.lambda_raw = c_ * (a * a * d.A / x - a * d.B / (x * x));
        d.fs_const = (d.scal - d.kappa_I) / 24.0;
    }
    d.lambda = std::abs(d.lambda_raw);
    return d;
}

double sectional_function(const AmbiData2D& d, double t1, double t2) {
    return t1 * t1 * d.scal / 8.0 + t1 * t2 * d.lambda + t2 * t2 * d.kappa_I / 8.0 + d.fs_const;
}

double holomorphic_sectional_function(const AmbiData2D& d, double t) {
    return sectional_function(d, 1.0, t);
}

double boundary_sectional_function(const AmbiData2D& d, double t) {
    return d.scal / 8.0 * t * t + d.lambda * t + (d.scal + 2.0 * d.kappa_I) / 24.0;
}

ScanReport positivity_scan_2d(const profiles::ProfileSet& ps, const GridSpec& grid,
                              unsigned workers, bool keep_rows) {
    CaoCurvature2D cc = CaoCurvature2D::from_profile(ps);
    ScanReport rep;
    rep.grid = grid;
    const int n1 = grid.xi1_count, n2 = grid.xi2_count, nt = grid.t_count;
    std::vector<double> xi1s(n1), xi2s(n2), ts(nt);
    for (int i = 0; i < n1; ++i) xi1s[i] = static_cast<double>(i + 1) / (n1 + 1);
    // geometric offsets toward the cone point, endpoint included
    const double delta = (grid.xi2_max - 1.0) / (10.0 * n2);
    const double rho = std::pow((grid.xi2_max - 1.0) / delta, 1.0 / (n2 - 1));
    for (int i = 0; i < n2; ++i) xi2s[i] = 1.0 + delta * std::pow(rho, i);
    xi2s[n2 - 1] = grid.xi2_max;
    for (int i = 0; i < nt; ++i) ts[i] = -1.0 + 2.0 * i / (nt - 1);

    struct Acc {
        double v = std::numeric_limits<double>::infinity();
        std::array<double, 2> at{};
        void fold(double val, double x1, double x2) {
            if (val < v) {
                v = val;
                at = {x1, x2};
            }
        }
    };
    std::vector<std::array<double, 9>> rows(static_cast<size_t>(n1) * n2);
    numeric::parallel_for(static_cast<size_t>(n1) * n2, workers, [&](size_t cell) {
        int i = static_cast<int>(cell / n2), j = static_cast<int>(cell % n2);
        AmbiData2D d = cc.eval(xi1s[i], xi2s[j]);
        double fmin = std::numeric_limits<double>::infinity();
        double fbarmin = fmin, fsmin = fmin;
        for (double t : ts) {
            fmin = std::min(fmin, holomorphic_sectional_function(d, t));
            fbarmin = std::min(fbarmin, boundary_sectional_function(d, t));
        }
        for (double t1 : ts)
            for (double t2 : ts) fsmin = std::min(fsmin, sectional_function(d, t1, t2));
        rows[cell] = {xi1s[i], xi2s[j],           d.scal, d.kappa_I, d.lambda,
                      d.scal / 4.0 - d.lambda, fmin,   fbarmin,   fsmin};
    });
    Acc ric, f, fs, fbar, kap;
    Acc scal_max;  // folded with negated values
    for (size_t cell = 0; cell < rows.size(); ++cell) {
        const auto& r = rows[cell];
        ric.fold(r[5], r[0], r[1]);
        kap.fold(r[3], r[0], r[1]);
        f.fold(r[6], r[0], r[1]);
        fbar.fold(r[7], r[0], r[1]);
        fs.fold(r[8], r[0], r[1]);
        scal_max.fold(-r[2], r[0], r[1]);
    }
    rep.min_ric_bound = ric.v;
    rep.argmin_ric_bound = ric.at;
    rep.min_kappa = kap.v;
    rep.argmin_kappa = kap.at;
    rep.min_f = f.v;
    rep.argmin_f = f.at;
    rep.min_fbar = fbar.v;
    rep.argmin_fbar = fbar.at;
    rep.min_fs = fs.v;
    rep.argmin_fs = fs.at;
    rep.max_scal = -scal_max.v;
    rep.argmax_scal = scal_max.at;
    rep.all_positive = rep.min_ric_bound > 0.0 && rep.min_f > 0.0 && rep.min_fs > 0.0 &&
                       rep.min_fbar > 0.0 && rep.min_kappa >= 0.0;
    if (keep_rows) rep.rows = std::move(rows);
    return rep;
}

ScalExtremum scal_extremum_2d(const CaoCurvature2D& cc, double xi2_max, int grid,
                              int refinements) {
    ScalExtremum se;
    se.expected = cc.unit_scale() * 4.0 * cc.rate() * cc.rate() * (-std::expm1(-2.0 * cc.rate()));
    double lo1 = 0.0, hi1 = 1.0, lo2 = 1.0, hi2 = xi2_max;
    double b1 = 0.0, b2 = 1.0, bv = -std::numeric_limits<double>::infinity();
    for (int r = 0; r < refinements; ++r) {
        for (int i = 0; i < grid; ++i)
            for (int j = 0; j < grid; ++j) {
                double x1 = lo1 + (hi1 - lo1) * i / (grid - 1);
                double x2 = lo2 + (hi2 - lo2) * j / (grid - 1);
                double v = (x2 > x1) ? cc.eval(x1, x2).scal
                                     : -std::numeric_limits<double>::infinity();
                if (v > bv) {
                    bv = v;
                    b1 = x1;
                    b2 = x2;
                }
            }
        double w1 = (hi1 - lo1) / (grid - 1), w2 = (hi2 - lo2) / (grid - 1);
        lo1 = std::max(0.0, b1 - w1);
        hi1 = std::min(1.0, b1 + w1);
        lo2 = std::max(1.0, b2 - w2);
        hi2 = std::min(xi2_max, b2 + w2);
        se.refinements = r + 1;
        if (w1 < 1e-13 && w2 < 1e-13) break;
    }
    se.xi1 = b1;
    se.xi2 = b2;
    se.value = bv;
    se.argmax_error = std::hypot(b1 - 0.0, b2 - 1.0);
    return se;
}

bool SeriesReport::all_ok() const {
    for (const auto& c : checks)
        if (!c.sign_ok || !c.match_ok) return false;
    return true;
}

SeriesReport series_coefficient_checks(double a, int K, std::span<const double> x_samples) {
    if (K > 60) throw std::invalid_argument("series_coefficient_checks: K must be <= 60");
    if (!(a > 0.0)) throw std::invalid_argument("series_coefficient_checks: needs a > 0");
    std::vector<double> xs(x_samples.begin(), x_samples.end());
    if (xs.empty()) xs = {0.5, 1.0, 2.0, 5.0};
    SeriesReport rep;

    auto E = [a](double x) { return std::expm1(2.0 * a * x); };
    auto relgap = [](double s, double c) { return std::abs(s - c) / (1.0 + std::abs(c)); };

    {  // h(x): factor 2^{k+3} - 2 - (k+3)(k+2), zero at k = 0, positive after
        SeriesCheck c{"h_series", true, 0.0, true};
        __int128 two_pow = 8;
        for (int k = 0; k <= K; ++k) {
            __int128 factor = two_pow - 2 - static_cast<__int128>(k + 3) * (k + 2);
            if (k == 0 ? factor != 0 : factor <= 0) c.sign_ok = false;
            two_pow *= 2;
        }
        for (double x : xs) {
            double term = 8.0 * a * a * a / 6.0, tp = 8.0, acc = 0.0;
            for (int k = 0; k <= K; ++k) {
                acc += term * (tp - 2.0 - (k + 3.0) * (k + 2.0));
                term *= 2.0 * a * x / (k + 4);
                tp *= 2.0;
            }
            double e = E(x);
            double closed = (e * e) / (x * x * x) - 4.0 * a * a * (e + 1.0) / x;
            c.max_series_vs_closed = std::max(c.max_series_vs_closed, relgap(acc, closed));
        }
        c.match_ok = c.max_series_vs_closed < 1e-8;
        rep.checks.push_back(c);
    }

    {  // kappa_I series: factor k(k-1), zero at k = 0, 1, positive after
        SeriesCheck c{"kappa_I_series", true, 0.0, true};
        for (int k = 0; k <= K; ++k) {
            long long f = static_cast<long long>(k) * (k - 1);
            if ((k <= 1) ? f != 0 : f <= 0) c.sign_ok = false;
        }
        for (double x : xs) {
            double term = std::pow(2.0 * a, 4) * x / 2.0;  // k = 1 base of (2a)^{k+3} x^k/(k+1)!
            // walk from k = 1 so the recurrence stays factorial-exact
            double acc = 0.0;
            for (int k = 1; k <= K; ++k) {
                if (k >= 2) acc += term * (static_cast<double>(k) * (k - 1)) / ((k + 3.0) * (k + 2.0));
                term *= 2.0 * a * x / (k + 2);
            }
            double e = E(x);
            double closed =
                4.0 * a * a * e / x + 12.0 * e / (x * x * x) - 12.0 * a * (e + 2.0) / (x * x);
            c.max_series_vs_closed = std::max(c.max_series_vs_closed, relgap(acc, closed));
        }
        c.match_ok = c.max_series_vs_closed < 1e-8;
        rep.checks.push_back(c);
    }

    {  // f(-1): an all-positive-coefficient series sum_{k>=3} (2a)^k x^{k-3}/k!
        SeriesCheck c{"f_minus_one_series", true, 0.0, true};
        for (double x : xs) {
            double term = 8.0 * a * a * a / 6.0, acc = 0.0;
            for (int k = 3; k <= K; ++k) {
                acc += term * std::pow(x, k - 3);
                term *= 2.0 * a / (k + 1);
            }
            double e = E(x);
            double closed = e / (x * x * x) - 2.0 * a / (x * x) - 2.0 * a * a / x;
            c.max_series_vs_closed = std::max(c.max_series_vs_closed, relgap(acc, closed));
        }
        c.match_ok = c.max_series_vs_closed < 1e-8;
        rep.checks.push_back(c);
    }

    {  // (scal - kappa_I)/24: factor (1 - 2/k), zero at k = 2, positive after
        SeriesCheck c{"fs_const_series", true, 0.0, true};
        for (int k = 2; k <= K; ++k) {
            double f = 1.0 - 2.0 / k;
            if ((k == 2) ? f != 0.0 : f <= 0.0) c.sign_ok = false;
        }
        for (double x : xs) {
            double term = a * a * a * 2.0 / 2.0, acc = 0.0;
            for (int k = 3; k <= K; ++k) {
                acc += term * (1.0 - 2.0 / k) * std::pow(x, k - 3);
                term *= 2.0 * a / k;
            }
            double e = E(x);
            double closed = a * (e + 2.0) / (2.0 * x * x) - e / (2.0 * x * x * x);
            c.max_series_vs_closed = std::max(c.max_series_vs_closed, relgap(acc, closed));
        }
        c.match_ok = c.max_series_vs_closed < 1e-8;
        rep.checks.push_back(c);
    }

    {  // critical-value bound: factor (1 - 1/(k+3)) positive; terms (2a)^{k+3} x^k/(k+2)!
        SeriesCheck c{"f_critical_bound_series", true, 0.0, true};
        for (int k = 0; k <= K; ++k)
            if (!(1.0 - 1.0 / (k + 3.0) > 0.0)) c.sign_ok = false;
        for (double x : xs) {
            double term = std::pow(2.0 * a, 3) / 2.0, acc = 0.0;
            for (int k = 0; k <= K; ++k) {
                acc += term * (1.0 - 1.0 / (k + 3.0)) * std::pow(x, k);
                term *= 2.0 * a / (k + 3);
            }
            double e = E(x);
            double closed =
                2.0 * a * (e + 1.0) / (x * x) - 2.0 * a * a / x - e / (x * x * x);
            c.max_series_vs_closed = std::max(c.max_series_vs_closed, relgap(acc, closed));
        }
        c.match_ok = c.max_series_vs_closed < 1e-8;
        rep.checks.push_back(c);
    }
    return rep;
}

CriticalPointReport critical_point_analysis_2d(const AmbiData2D& d) {
    CriticalPointReport rep;
    rep.fs_origin = d.fs_const;
    rep.degeneracy_gap = d.kappa_I * d.scal - 16.0 * d.lambda * d.lambda;
    rep.degenerate_gradient_line =
        std::abs(rep.degeneracy_gap) <= 1e-12 * (1.0 + std::abs(d.kappa_I * d.scal));
    if (d.kappa_I == 0.0) {
        rep.f_constant = true;  // f''(t) = kappa_I/4 = 0
    } else {
        rep.t_star_f = -4.0 * d.lambda / d.kappa_I;
        rep.f_has_interior_critical = std::abs(rep.t_star_f) <= 1.0;
        rep.f_at_t_star = holomorphic_sectional_function(d, rep.t_star_f);
    }
    if (d.scal != 0.0) {
        rep.t_star_fbar = -4.0 * d.lambda / d.scal;
        rep.t_star_fbar_bracketed = rep.t_star_fbar > -1.0 && rep.t_star_fbar <= 0.0;
        rep.fbar_at_t_star = boundary_sectional_function(d, rep.t_star_fbar);
    }
    return rep;
}

}  // namespace gkrs::curvature
