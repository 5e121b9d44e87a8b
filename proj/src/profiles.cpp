#include "gkrs/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gkrs::profiles {

using symfun::ExpPoly;
using symfun::Polynomial;

std::string family_name(Family f) {
    switch (f) {
        case Family::CaoType: return "cao";
        case Family::TaubNUTType: return "taubnut";
        case Family::CalabiBundle: return "calabi";
        case Family::Cigar: return "cigar";
    }
    return "?";
}

std::optional<Family> family_from_name(const std::string& s) {
    if (s == "cao") return Family::CaoType;
    if (s == "taubnut") return Family::TaubNUTType;
    if (s == "calabi") return Family::CalabiBundle;
    if (s == "cigar") return Family::Cigar;
    return std::nullopt;
}

int Partition::dim_sum() const {
    int s = 0;
    for (int d : dims) s += d;
    return s;
}

void SolitonParams::validate() const {
    if (partition.ell < 1) throw InvalidParams("ell must be >= 1");
    for (int d : partition.dims)
        if (d < 0) throw InvalidParams("dims must be nonnegative");
    if (!(scale > 0.0)) throw InvalidParams("scale must be positive");
    const int want_alpha = partition.ell;
    if (static_cast<int>(alpha.size()) != want_alpha)
        throw InvalidParams("alpha must have exactly ell entries");
    for (size_t i = 1; i < alpha.size(); ++i)
        if (!(alpha[i - 1] < alpha[i])) throw InvalidParams("alpha must be strictly increasing");
    switch (family) {
        case Family::CaoType:
            if (static_cast<int>(partition.dims.size()) != partition.ell)
                throw InvalidParams("Cao type needs dims of length ell");
            break;
        case Family::TaubNUTType:
            if (partition.ell < 2) throw InvalidParams("Taub-NUT type needs ell >= 2");
            if (static_cast<int>(partition.dims.size()) != partition.ell - 1)
                throw InvalidParams("Taub-NUT type needs dims of length ell-1");
            break;
        case Family::CalabiBundle:
            if (partition.ell != 1) throw InvalidParams("bundle profile needs ell = 1");
            if (!(alpha[0] >= 0.0)) throw InvalidParams("bundle profile needs alpha >= 0");
            break;
        case Family::Cigar:
            if (partition.ell != 1 || partition.dimension() != 1)
                throw InvalidParams("cigar is the n = 1 case");
            break;
    }
}

double Interval::mid() const {
    if (bounded()) return 0.5 * (lo + hi);
    if (std::isfinite(lo)) return lo + 1.0;
    if (std::isfinite(hi)) return hi - 1.0;
    return 0.0;
}

double Interval::at(double s, double span) const {
    if (bounded()) return lo + s * (hi - lo);
    if (std::isfinite(lo)) return lo + span * s / (1.0 - 0.999 * s);
    return hi - span * (1.0 - s) / (1.0 - 0.999 * (1.0 - s));
}

namespace {

std::vector<Interval> cao_domain(const std::vector<double>& alpha) {
    std::vector<Interval> dom(alpha.size());
    for (size_t j = 0; j + 1 < alpha.size(); ++j) dom[j] = {alpha[j], alpha[j + 1]};
    dom.back() = {alpha.back(), std::numeric_limits<double>::infinity()};
    return dom;
}

std::vector<Interval> taubnut_domain(const std::vector<double>& alpha) {
    const size_t l = alpha.size();
    std::vector<Interval> dom(l);
    dom[0] = {-std::numeric_limits<double>::infinity(), alpha[0]};
    for (size_t j = 1; j + 1 < l; ++j) dom[j] = {alpha[j - 1], alpha[j]};
    dom[l - 1] = {alpha[l - 1], std::numeric_limits<double>::infinity()};
    return dom;
}

// required sign of F_j * p_c on interval j: (-1)^{ell - (j+1)} for 0-based j
double required_interval_sign(int ell, int j) {
    return ((ell - (j + 1)) % 2) ? -1.0 : 1.0;
}

}  // namespace

double ProfileSet::f_stable(int j, double t) const {
    const ExpPoly& Fj = F.at(j);
    for (const auto& z : zero_orders.at(j)) {
        double s = t - z.node;
        if (std::abs(s) < kNearNodeRadius) {
            auto tay = Fj.taylor(z.node, z.order + kSeriesTerms);
            double acc = 0.0;
            for (int m = z.order + kSeriesTerms - 1; m >= z.order; --m) acc = acc * s + tay[m];
            double p = 1.0;
            for (int k = 0; k < z.order; ++k) p *= s;
            return p * acc;
        }
    }
    return Fj(t);
}

namespace {

// near-node decomposition Theta = s^p A(s) / R(t) with s = t - node: A is the
// deflated series of F, R the remaining p_c factors
struct NodeBranch {
    double s = 0.0;
    int p = 0;
    double A = 0.0, Aprime = 0.0;
    double R = 1.0, Rlog = 0.0;  // Rlog = R'/R
};

std::optional<NodeBranch> node_branch(const ProfileSet& ps, int j, double t) {
    const symfun::ExpPoly& Fj = ps.F.at(j);
    for (const auto& z : ps.zero_orders.at(j)) {
        double s = t - z.node;
        if (std::abs(s) >= ProfileSet::kNearNodeRadius) continue;
        int k = -1;
        for (size_t i = 0; i < ps.alpha.size(); ++i)
            if (ps.alpha[i] == z.node) k = static_cast<int>(i);
        // the p_c multiplicity at alpha_k is d_k (zero past the dims list,
        // which is where the Taub-NUT F_ell node alpha_ell lands)
        int pc_order = (k >= 0 && k < static_cast<int>(ps.partition.dims.size()))
                           ? ps.partition.dims[k]
                           : 0;
        NodeBranch nb;
        nb.s = s;
        nb.p = z.order - pc_order;
        auto tay = Fj.taylor(z.node, z.order + ProfileSet::kSeriesTerms);
        for (int m = z.order + ProfileSet::kSeriesTerms - 1; m >= z.order; --m)
            nb.A = nb.A * s + tay[m];
        for (int m = z.order + ProfileSet::kSeriesTerms - 1; m > z.order; --m)
            nb.Aprime = nb.Aprime * s + (m - z.order) * tay[m];
        for (size_t i = 0; i < ps.alpha.size(); ++i) {
            int di = (i < ps.partition.dims.size()) ? ps.partition.dims[i] : 0;
            if (static_cast<int>(i) == k || di == 0) continue;
            nb.R *= std::pow(t - ps.alpha[i], di);
            nb.Rlog += di / (t - ps.alpha[i]);
        }
        return nb;
    }
    return std::nullopt;
}

double pow_i(double x, int k) {
    double v = 1.0;
    for (int i = 0; i < k; ++i) v *= x;
    return v;
}

}  // namespace

double ProfileSet::theta(int j, double t) const {
    if (auto nb = node_branch(*this, j, t)) return pow_i(nb->s, nb->p) * nb->A / nb->R;
    return F.at(j)(t) / pc(t);
}

double ProfileSet::theta_derivative(int j, double t) const {
    if (auto nb = node_branch(*this, j, t)) {
        // d/dt [s^p A / R] = s^{p-1} (p A + s A') / R - s^p A R'/R^2
        double head = pow_i(nb->s, nb->p - 1) * (nb->p * nb->A + nb->s * nb->Aprime) / nb->R;
        return head - pow_i(nb->s, nb->p) * nb->A * nb->Rlog / nb->R;
    }
    double th = theta(j, t);
    return (F[j].derivative_at(t, 1) - th * pc.derivative_at(t, 1)) / pc(t);
}

ProfileSet build_cao_profile(const SolitonParams& params) {
    params.validate();
    if (params.family != Family::CaoType)
        throw InvalidParams("build_cao_profile expects the Cao type family");
    const int l = params.partition.ell;
    const auto& al = params.alpha;
    const auto& d = params.partition.dims;
    const double a = params.a;

    ProfileSet ps;
    ps.family = params.family;
    ps.partition = params.partition;
    ps.a = a;
    ps.scale = params.scale;
    ps.gauge = params.gauge;
    ps.alpha = al;
    ps.domain = cao_domain(al);
    ps.incomplete_expected = a < 0.0;

    std::vector<int> dmult(d.begin(), d.end());
    ps.pc = Polynomial::from_roots(al, dmult);
    for (int j = 0; j < l; ++j) {
        ps.epsilon.push_back(((l - (j + 1) + 1) % 2) ? -1 : 1);
        if (d[j] > 0) ps.eta_multiplicity.emplace_back(al[j], d[j]);
    }

    std::vector<int> orders(l);
    for (int j = 0; j < l; ++j) orders[j] = d[j] + 1;

    if (a == 0.0) {
        Polynomial Fpoly = Polynomial::from_roots(al, orders).scaled(params.scale);
        ps.F.assign(l, ExpPoly(Fpoly, 0.0, 0.0));
        ps.q = poly_divide_exact(Fpoly.derivative(), ps.pc, 1e-9);
        ps.flat = true;
    } else {
        // F = P + c e^{-2at}, each alpha_j a zero of order d_j + 1; with the
        // exponential coefficient pinned to 1 this determines P uniquely.
        std::vector<symfun::HermiteNode> nodes(l);
        for (int j = 0; j < l; ++j) {
            nodes[j].node = al[j];
            nodes[j].values.resize(d[j] + 1);
            double e = std::exp(-2.0 * a * al[j]);
            double pw = 1.0;
            for (int m = 0; m <= d[j]; ++m) {
                nodes[j].values[m] = -pw * e;
                pw *= -2.0 * a;
            }
        }
        Polynomial P = symfun::hermite_interpolate(nodes);
        Polynomial rhs = P.derivative() + P.scaled(2.0 * a);
        Polynomial q = poly_divide_exact(rhs, ps.pc, 1e-9);

        // global sign so that -eps_j q(alpha_j) > 0; the first node decides
        double want = -static_cast<double>(ps.epsilon[0]);
        double have = q(al[0]) > 0 ? 1.0 : -1.0;
        double flip = (want == have) ? 1.0 : -1.0;
        double lam = flip * params.scale;
        if (params.gauge == Gauge::UnitQAtFirstNode) lam /= std::abs(q(al[0]));
        P = P.scaled(lam);
        q = q.scaled(lam);
        ps.F.assign(l, ExpPoly(P, lam, 2.0 * a));
        ps.q = q;

        for (int j = 0; j < l; ++j) {
            double s = -static_cast<double>(ps.epsilon[j]) * ps.q(al[j]);
            if (!(s > 0.0))
                throw std::runtime_error(
                    "Cao profile: sign conditions unsatisfiable at node " + std::to_string(j) +
                    " (construction bug)");
        }
    }
    ps.zero_orders.assign(l, {});
    for (int j = 0; j < l; ++j)
        for (int k = 0; k < l; ++k) ps.zero_orders[j].push_back({al[k], orders[k]});
    return ps;
}

ProfileSet build_taubnut_profile(const SolitonParams& params) {
    params.validate();
    if (params.family != Family::TaubNUTType)
        throw InvalidParams("build_taubnut_profile expects the Taub-NUT type family");
    const int l = params.partition.ell;
    const auto& al = params.alpha;
    const auto& d = params.partition.dims;  // length l-1
    const double a = params.a;

    ProfileSet ps;
    ps.family = params.family;
    ps.partition = params.partition;
    ps.a = a;
    ps.scale = params.scale;
    ps.gauge = params.gauge;
    ps.alpha = al;
    ps.domain = taubnut_domain(al);
    ps.incomplete_expected = a < 0.0;
    ps.ricci_flat = a == 0.0;

    std::vector<double> base_nodes(al.begin(), al.end() - 1);
    std::vector<int> dmult(d.begin(), d.end());
    ps.pc = Polynomial::from_roots(base_nodes, dmult);
    std::vector<int> orders(l - 1);
    for (int j = 0; j < l - 1; ++j) orders[j] = d[j] + 1;
    Polynomial P = Polynomial::from_roots(base_nodes, orders).scaled(params.scale);

    ps.q = poly_divide_exact(P.derivative() + P.scaled(2.0 * a), ps.pc, 1e-9);
    const double c = -std::exp(2.0 * a * al.back()) * P(al.back());
    for (int j = 0; j < l - 1; ++j) ps.F.emplace_back(P, 0.0, 2.0 * a);
    ps.F.emplace_back(P, c, 2.0 * a);

    for (int j = 0; j < l - 1; ++j) {
        ps.epsilon.push_back(((l - (j + 1)) % 2) ? -1 : 1);
        if (d[j] > 0) ps.eta_multiplicity.emplace_back(al[j], d[j]);
    }
    ps.epsilon.push_back(-1);

    ps.zero_orders.assign(l, {});
    for (int j = 0; j < l - 1; ++j)
        for (int k = 0; k < l - 1; ++k) ps.zero_orders[j].push_back({al[k], orders[k]});
    ps.zero_orders[l - 1].push_back({al.back(), 1});
    return ps;
}

double CalabiProfile::operator()(double xi) const {
    if (cigar) return (a == 0.0) ? 2.0 * (xi - alpha)
                                 : (1.0 - std::exp(-2.0 * a * (xi - alpha))) / a;
    if (a == 0.0) {
        // prefactor/ xi^{n-1} * (xi^n - alpha^n)/n
        return prefactor / std::pow(xi, n - 1) *
               (std::pow(xi, n) - std::pow(alpha, n)) / static_cast<double>(n);
    }
    // prefactor * e^{-2 a xi} xi^{1-n} * int_alpha^xi e^{2 a x} x^{n-1} dx,
    // integrated against the shifted exponent to avoid overflow
    double v = symfun::quadrature(
        [&](double x) { return std::exp(2.0 * a * (x - xi)) * std::pow(x, n - 1); }, alpha, xi,
        1e-14 * (1.0 + std::abs(xi)));
    return prefactor * v / std::pow(xi, n - 1);
}

double CalabiProfile::derivative(double xi) const {
    if (cigar) return a == 0.0 ? 2.0 : 2.0 * std::exp(-2.0 * a * (xi - alpha));
    // Theta' = prefactor - (2a + (n-1)/xi) Theta, from the defining first-order ODE
    return prefactor - (2.0 * a + (n - 1) / xi) * (*this)(xi);
}

double CalabiProfile::theta_prime_at_alpha() const {
    if (cigar) return 2.0;
    if (alpha == 0.0) {
        // blow-down: Theta ~ (prefactor/n) xi near 0
        return prefactor / static_cast<double>(n);
    }
    return prefactor;  // Theta(alpha) = 0 makes the ODE collapse at alpha
}

std::string CalabiProfile::notes() const {
    std::ostringstream os;
    os << "prefactor=" << prefactor << " (convention A); convention B would use "
       << 2.0 * n / static_cast<double>(r)
       << "; boundary derivative at alpha reported, not asserted, in the blow-down case";
    return os.str();
}

CalabiProfile build_calabi_profile(const SolitonParams& params) {
    params.validate();
    CalabiProfile cp;
    cp.a = params.a;
    cp.alpha = params.alpha[0];
    cp.n = params.partition.dimension();
    cp.prefactor = 2.0;
    if (params.family == Family::Cigar) {
        cp.cigar = true;
        cp.r = 1;
        return cp;
    }
    if (params.family != Family::CalabiBundle)
        throw InvalidParams("build_calabi_profile expects the bundle or cigar family");
    if (cp.alpha > 0.0) {
        // smooth bundle case: the second boundary condition forces r = n
        if (params.bundle_degree != cp.n)
            throw InvalidParams(
                "bundle profile obstruction: a smooth solution needs bundle degree r = n");
        cp.r = params.bundle_degree;
    } else {
        cp.blow_down = true;
        cp.r = 1;
    }
    return cp;
}

std::vector<double> q_roots_in(const Polynomial& q, double lo, double hi, int grid) {
    std::vector<double> roots;
    double prev_t = lo, prev_v = q(lo);
    for (int i = 1; i <= grid; ++i) {
        double t = lo + (hi - lo) * i / grid;
        double v = q(t);
        if (prev_v == 0.0) roots.push_back(prev_t);
        if (prev_v * v < 0.0) {
            double x0 = prev_t, x1 = t, f0 = prev_v;
            for (int it = 0; it < 200; ++it) {
                double xm = 0.5 * (x0 + x1), fm = q(xm);
                if (fm == 0.0) { x0 = x1 = xm; break; }
                if (f0 * fm < 0) x1 = xm; else { x0 = xm; f0 = fm; }
            }
            roots.push_back(0.5 * (x0 + x1));
        }
        prev_t = t;
        prev_v = v;
    }
    return roots;
}

bool AdmissibilityReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

AdmissibilityReport check_admissibility(const ProfileSet& ps, int samples_per_interval) {
    AdmissibilityReport rep;
    const int l = ps.ell();

    {  // sign of F_j p_c on interval j
        AdmissibilityCheck c{"interval_sign", true, std::numeric_limits<double>::infinity(), ""};
        for (int j = 0; j < l; ++j) {
            double want = required_interval_sign(l, j);
            for (int i = 1; i < samples_per_interval; ++i) {
                double t = ps.domain[j].at(static_cast<double>(i) / samples_per_interval);
                double v = want * ps.f_stable(j, t) * ps.pc(t);
                c.worst = std::min(c.worst, v);
                if (!(v > 0.0)) {
                    c.pass = false;
                    c.detail = "violated on interval " + std::to_string(j + 1);
                }
            }
        }
        rep.checks.push_back(std::move(c));
    }

    {  // eps_a p_nc(eta_a) > 0 on sampled xi tuples
        AdmissibilityCheck c{"base_factor_sign", true, std::numeric_limits<double>::infinity(), ""};
        const int tuples = 50;
        for (int s = 0; s < tuples; ++s) {
            std::vector<double> xi(l);
            for (int j = 0; j < l; ++j) {
                double u = (s + 1) * 0.6180339887498949 + 0.21 * j;  // golden-ratio spread
                u -= std::floor(u);
                xi[j] = ps.domain[j].at(0.02 + 0.96 * u);
            }
            for (int jn = 0; jn < static_cast<int>(ps.epsilon.size()); ++jn) {
                if (jn >= static_cast<int>(ps.alpha.size())) continue;
                double pnc = 1.0;
                for (int i = 0; i < l; ++i) pnc *= (ps.alpha[jn] - xi[i]);
                double v = ps.epsilon[jn] * pnc;
                c.worst = std::min(c.worst, v);
                if (!(v > 0.0)) {
                    c.pass = false;
                    c.detail = "violated for node " + std::to_string(jn + 1);
                }
            }
        }
        rep.checks.push_back(std::move(c));
    }

    {  // boundary relations Theta_j(alpha_i) = 0 and (d_i+1) Theta_j'(alpha_i) = q(alpha_i)
        AdmissibilityCheck c{"boundary_relations", true, 0.0, ""};
        std::vector<int> d = ps.partition.dims;
        d.resize(l, 0);
        for (int j = 0; j < l; ++j) {
            for (const auto& z : ps.zero_orders[j]) {
                int i = -1;
                for (int k = 0; k < l; ++k)
                    if (ps.alpha[k] == z.node) i = k;
                if (i < 0) continue;
                double th0 = ps.theta(j, z.node);
                double rel = std::abs(th0);
                double slope = (d[i] + 1) * ps.theta_derivative(j, z.node) - ps.q(z.node);
                rel = std::max(rel, std::abs(slope) / (1.0 + std::abs(ps.q(z.node))));
                c.worst = std::max(c.worst, rel);
                if (rel > 1e-7) {
                    c.pass = false;
                    c.detail = "boundary relation fails at node " + std::to_string(i + 1);
                }
            }
        }
        rep.checks.push_back(std::move(c));
    }

    {  // q root structure in the gaps
        AdmissibilityCheck c{"q_gap_roots", true, 0.0, ""};
        for (int i = 0; i + 1 < l; ++i) {
            auto roots = q_roots_in(ps.q, ps.alpha[i], ps.alpha[i + 1]);
            rep.q_roots_per_gap.push_back(static_cast<int>(roots.size()));
            if (ps.family == Family::CaoType && ps.a != 0.0) {
                bool simple =
                    roots.size() == 1 && std::abs(ps.q.derivative_at(roots[0], 1)) > 1e-8;
                if (!simple) {
                    c.pass = false;
                    c.detail = "gap " + std::to_string(i + 1) + " has " +
                               std::to_string(roots.size()) + " roots";
                }
            }
        }
        rep.checks.push_back(std::move(c));
    }
    return rep;
}

}  // namespace gkrs::profiles
