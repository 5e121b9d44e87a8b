#include "gkrs/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gkrs/numeric.hpp"
#include "gkrs/symfun.hpp"

namespace gkrs::analysis {

using profiles::Family;
using profiles::ProfileSet;
using symfun::Polynomial;

double volume_measure(const ProfileSet& ps, std::span<const double> xi) {
    const int l = ps.ell();
    double vdm = 1.0;
    for (int i = 0; i < l; ++i)
        for (int j = i + 1; j < l; ++j) vdm *= (xi[j] - xi[i]);
    double pcs = 1.0;
    for (int j = 0; j < l; ++j) pcs *= ps.pc(xi[j]);
    return std::abs(vdm * pcs);
}

namespace {

// integration cell at cut r: bounded gaps between consecutive alphas plus the
// unbounded coordinates truncated at +-r
std::vector<std::pair<double, double>> cell_at(const ProfileSet& ps, double r) {
    std::vector<std::pair<double, double>> box(ps.ell());
    for (int j = 0; j < ps.ell(); ++j) {
        const auto& dom = ps.domain[j];
        box[j] = {std::isfinite(dom.lo) ? dom.lo : -r, std::isfinite(dom.hi) ? dom.hi : r};
    }
    return box;
}

void permutations(int l, std::vector<int>& perm, std::vector<bool>& used, int sign,
                  const std::function<void(const std::vector<int>&, int)>& emit) {
    if (static_cast<int>(perm.size()) == l) {
        emit(perm, sign);
        return;
    }
    for (int k = 0; k < l; ++k) {
        if (used[k]) continue;
        int inversions = 0;
        for (int q : perm)
            if (q > k) ++inversions;
        used[k] = true;
        perm.push_back(k);
        permutations(l, perm, used, sign * ((inversions % 2) ? -1 : 1), emit);
        perm.pop_back();
        used[k] = false;
    }
}

double cell_sign(const ProfileSet& ps, const std::vector<std::pair<double, double>>& box) {
    std::vector<double> mid(ps.ell());
    for (int j = 0; j < ps.ell(); ++j) mid[j] = 0.5 * (box[j].first + box[j].second);
    const int l = ps.ell();
    double vdm = 1.0;
    for (int i = 0; i < l; ++i)
        for (int j = i + 1; j < l; ++j) vdm *= (mid[j] - mid[i]);
    double pcs = 1.0;
    for (int j = 0; j < l; ++j) pcs *= ps.pc(mid[j]);
    return (vdm * pcs) >= 0.0 ? 1.0 : -1.0;
}

}  // namespace

double volume_cell_integral_exact(const ProfileSet& ps, double r) {
    const int l = ps.ell();
    auto box = cell_at(ps, r);
    // det V * prod p_c = sum_pi sign(pi) prod_j xi_j^{pi(j)} p_c(xi_j): each
    // factor integrates in closed form, so the cell integral splits per term
    std::vector<std::vector<double>> moments(l);  // moments[j][k] = int xi^k p_c over box_j
    Polynomial pc = ps.pc;
    for (int j = 0; j < l; ++j) {
        moments[j].resize(l);
        for (int k = 0; k < l; ++k) {
            Polynomial ik = Polynomial::monomial(k) * pc;
            moments[j][k] = ik.integrate(box[j].first, box[j].second);
        }
    }
    double total = 0.0;
    std::vector<int> perm;
    std::vector<bool> used(l, false);
    permutations(l, perm, used, 1, [&](const std::vector<int>& p, int sign) {
        double prod = sign;
        for (int j = 0; j < l; ++j) prod *= moments[j][p[j]];
        total += prod;
    });
    return cell_sign(ps, box) * total;
}

double volume_cell_integral_quadrature(const ProfileSet& ps, double r) {
    const int l = ps.ell();
    auto box = cell_at(ps, r);
    const double tol = 1e-12 * std::pow(1.0 + r, ps.n() + 1);
    std::vector<double> xi(l, 0.0);
    std::function<double(int)> nest = [&](int depth) -> double {
        if (depth == l) return volume_measure(ps, xi);
        return symfun::quadrature(
            [&](double t) {
                xi[depth] = t;
                return nest(depth + 1);
            },
            box[depth].first, box[depth].second, tol);
    };
    return nest(0);
}

GrowthFit volume_growth_fit(const ProfileSet& ps, double r_max, int steps) {
    GrowthFit gf;
    double r0 = 0.0;
    for (double al : ps.alpha) r0 = std::max(r0, std::abs(al));
    r0 = std::max(2.0 * (r0 + 1.0), 4.0);
    for (int k = 0; k < steps; ++k) {
        double r = r0 * std::pow(r_max / r0, static_cast<double>(k) / (steps - 1));
        gf.radii.push_back(r);
        gf.values.push_back(volume_cell_integral_exact(ps, r));
    }
    std::vector<double> lx, ly;
    for (size_t k = 0; k < gf.radii.size(); ++k)
        if (gf.radii[k] >= r_max / 10.0 && gf.values[k] > 0.0) {
            lx.push_back(std::log(gf.radii[k]));
            ly.push_back(std::log(gf.values[k]));
        }
    auto fit = numeric::linear_fit(lx, ly);
    gf.exponent = fit.slope;
    gf.r_squared = fit.r_squared;
    return gf;
}

DistanceProxy distance_proxy(const ProfileSet& ps, int ray_index, double t_max, int steps) {
    DistanceProxy dp;
    dp.ray_index = ray_index;
    const int l = ps.ell();
    std::vector<double> xi0(l);
    for (int j = 0; j < l; ++j) xi0[j] = ps.domain[j].mid();
    const auto& dom = ps.domain.at(ray_index);
    const bool to_minus = !std::isfinite(dom.lo);
    if (std::isfinite(dom.lo) && std::isfinite(dom.hi))
        throw std::invalid_argument("distance_proxy: ray must follow an unbounded coordinate");

    double start = xi0[ray_index];
    double length = 0.0, prev = start;
    for (int k = 1; k <= steps; ++k) {
        double mag = std::pow(t_max, static_cast<double>(k) / steps);
        double t = to_minus ? (dom.hi - mag) : (dom.lo + mag);
        if (to_minus ? (t >= prev) : (t <= prev)) continue;
        length += std::abs(symfun::quadrature(
            [&](double s) {
                std::vector<double> xi = xi0;
                xi[ray_index] = s;
                auto sd = symfun::elem_symmetric(xi);
                return std::sqrt(std::abs(sd.delta[ray_index] / ps.theta(ray_index, s)));
            },
            prev, t, 1e-10));
        prev = t;
        dp.fit.radii.push_back(std::abs(t));
        dp.fit.values.push_back(std::abs(length));
    }
    std::vector<double> lx, ly;
    double top = dp.fit.radii.back();
    for (size_t k = 0; k < dp.fit.radii.size(); ++k)
        if (dp.fit.radii[k] >= top / 10.0) {
            lx.push_back(std::log(dp.fit.radii[k]));
            ly.push_back(std::log(dp.fit.values[k]));
        }
    auto fit = numeric::linear_fit(lx, ly);
    dp.fit.exponent = fit.slope;
    dp.fit.r_squared = fit.r_squared;
    dp.asserted = ps.a > 0.0;
    dp.pass = !dp.asserted || (fit.slope >= 0.9 && fit.slope <= 1.1);
    return dp;
}

double soliton_component_ratio(double a) {
    double num = std::expm1(-2.0 * a) + 2.0 * a;         // e^{-2a} - 1 + 2a
    double den = -std::expm1(-2.0 * a) - 2.0 * a * std::exp(-2.0 * a);
    return num / den;
}

RatioCurve soliton_ratio_curve(std::span<const double> a_values) {
    RatioCurve rc;
    rc.a_values.assign(a_values.begin(), a_values.end());
    for (double a : rc.a_values) rc.ratios.push_back(soliton_component_ratio(a));
    rc.strictly_increasing = true;
    for (size_t i = 1; i < rc.ratios.size(); ++i)
        if (!(rc.ratios[i] > rc.ratios[i - 1])) rc.strictly_increasing = false;
    rc.ratio_at_small_a = soliton_component_ratio(1e-3);
    rc.ratio_at_large_a = soliton_component_ratio(rc.a_values.empty() ? 10.0 : rc.a_values.back());
    return rc;
}

}  // namespace gkrs::analysis
