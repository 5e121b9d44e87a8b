#include "gkrs/toric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gkrs/numeric.hpp"

namespace gkrs::toric {

namespace {
constexpr double kRayTol = 1e-9;

Vec normalized_ray(const Vec& r) {
    double m = r.lpNorm<Eigen::Infinity>();
    return m > 0 ? Vec(r / m) : r;
}

bool same_ray(const Vec& a, const Vec& b) {
    return (normalized_ray(a) - normalized_ray(b)).lpNorm<Eigen::Infinity>() < 1e-7;
}
}  // namespace

DelzantPolyhedron DelzantPolyhedron::standard_cone(int n) {
    DelzantPolyhedron p;
    p.dim = n;
    for (int i = 0; i < n; ++i) {
        Vec e = Vec::Zero(n);
        e(i) = 1.0;
        p.labels.push_back({e, 0.0});
    }
    return p;
}

Vec DelzantPolyhedron::interior_point() const {
    // maximize the minimum label by a crude coordinate search; adequate as a
    // strictly-feasible certificate at these sizes
    Vec x = Vec::Zero(dim);
    auto score = [&](const Vec& y) {
        double s = std::numeric_limits<double>::infinity();
        for (const auto& L : labels) s = std::min(s, L(y));
        return s;
    };
    double step = 1.0;
    for (int round = 0; round < 200; ++round) {
        bool improved = false;
        for (int i = 0; i < dim; ++i) {
            for (double sgn : {1.0, -1.0}) {
                Vec y = x;
                y(i) += sgn * step;
                if (score(y) > score(x)) {
                    x = y;
                    improved = true;
                }
            }
        }
        if (!improved) step *= 0.5;
        if (step < 1e-6) break;
    }
    if (!(score(x) > 0.0))
        throw std::runtime_error("DelzantPolyhedron: no interior point found");
    return x;
}

std::vector<Vec> Cone::generator_list() const {
    std::vector<Vec> out;
    for (const auto& r : rays) out.push_back(normalized_ray(r));
    for (const auto& l : lineality) {
        out.push_back(normalized_ray(l));
        out.push_back(normalized_ray(-l));
    }
    return out;
}

Cone cone_from_inequalities(const std::vector<Vec>& normals, int dim) {
    // double description with explicit lineality handling; processed
    // inequalities are kept for the algebraic adjacency test
    Cone c;
    for (int i = 0; i < dim; ++i) {
        Vec e = Vec::Zero(dim);
        e(i) = 1.0;
        c.lineality.push_back(e);
    }
    std::vector<Vec> done;
    struct Ray {
        Vec v;
        std::vector<int> tight;  // sorted indices into `done`
    };
    std::vector<Ray> rays;

    auto tight_rank = [&](const std::vector<int>& idx) {
        if (idx.empty()) return 0;
        Mat A(static_cast<int>(idx.size()), dim);
        for (size_t i = 0; i < idx.size(); ++i) A.row(static_cast<int>(i)) = done[idx[i]].transpose();
        return static_cast<int>(A.colPivHouseholderQr().rank());
    };

    for (const Vec& nraw : normals) {
        Vec n = normalized_ray(nraw);
        // reduce the lineality space if it sticks out of the halfspace boundary
        int pivot = -1;
        double best = kRayTol;
        for (size_t i = 0; i < c.lineality.size(); ++i)
            if (std::abs(n.dot(c.lineality[i])) > best) {
                best = std::abs(n.dot(c.lineality[i]));
                pivot = static_cast<int>(i);
            }
        if (pivot >= 0) {
            Vec l = c.lineality[pivot];
            if (n.dot(l) < 0) l = -l;
            c.lineality.erase(c.lineality.begin() + pivot);
            double nl = n.dot(l);
            for (auto& m : c.lineality) m -= (n.dot(m) / nl) * l;
            for (auto& r : rays) {
                r.v -= (n.dot(r.v) / nl) * l;
                r.tight.push_back(static_cast<int>(done.size()));
            }
            Ray nr{l, {}};
            // the pivot direction was in every previous boundary hyperplane
            for (int i = 0; i < static_cast<int>(done.size()); ++i) nr.tight.push_back(i);
            rays.push_back(std::move(nr));
            done.push_back(n);
            continue;
        }
        // classic ray split
        std::vector<Ray> plus, zero, minus;
        for (auto& r : rays) {
            double s = n.dot(r.v);
            if (s > kRayTol) plus.push_back(r);
            else if (s < -kRayTol) minus.push_back(r);
            else {
                Ray z = r;
                z.tight.push_back(static_cast<int>(done.size()));
                zero.push_back(std::move(z));
            }
        }
        const int pointed_dim = dim - static_cast<int>(c.lineality.size());
        std::vector<Ray> next = plus;
        for (auto& z : zero) next.push_back(z);
        for (const auto& p : plus)
            for (const auto& m : minus) {
                std::vector<int> common;
                std::set_intersection(p.tight.begin(), p.tight.end(), m.tight.begin(),
                                      m.tight.end(), std::back_inserter(common));
                // extreme in the quotient iff the common tight set pins a 2-face
                if (rays.size() > 2 && tight_rank(common) < pointed_dim - 2) continue;
                Vec comb = normalized_ray(n.dot(p.v) * m.v - n.dot(m.v) * p.v);
                Ray nr{comb, common};
                nr.tight.push_back(static_cast<int>(done.size()));
                std::sort(nr.tight.begin(), nr.tight.end());
                bool dup = false;
                for (const auto& r : next) dup |= same_ray(r.v, nr.v);
                if (!dup) next.push_back(std::move(nr));
            }
        rays = std::move(next);
        done.push_back(n);
    }
    for (const auto& r : rays) c.rays.push_back(normalized_ray(r.v));
    return c;
}

RecessionData recession_and_dual_cone(const DelzantPolyhedron& poly) {
    RecessionData rd;
    std::vector<Vec> normals;
    for (const auto& L : poly.labels) normals.push_back(L.normal);
    rd.recession = cone_from_inequalities(normals, poly.dim);
    // dedupe label normals up to positive scaling
    for (const auto& n : normals) {
        bool dup = false;
        for (const auto& g : rd.dual_generators) dup |= same_ray(g, n);
        if (!dup) rd.dual_generators.push_back(normalized_ray(n));
    }
    return rd;
}

ForbiddenRegionResult forbidden_region_check(const DelzantPolyhedron& poly, const Vec& b) {
    RecessionData rd = recession_and_dual_cone(poly);
    auto gens = rd.recession.generator_list();
    if (gens.empty()) throw std::runtime_error("forbidden_region_check: degenerate cone");
    ForbiddenRegionResult out;
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& g : gens) {
        double s = b.dot(g);
        if (s > best) {
            best = s;
            out.witness = g;
        }
    }
    // b in -C* iff <b, x> <= 0 for every x in C
    out.forbidden = best <= kRayTol;
    return out;
}

Vec calabi_yau_constant(const DelzantPolyhedron& poly) {
    const int n = poly.dim;
    const int d = static_cast<int>(poly.labels.size());
    Mat M(d, n);
    Vec rhs = Vec::Constant(d, 2.0);
    for (int j = 0; j < d; ++j) M.row(j) = poly.labels[j].normal.transpose();
    Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.rank() < n)
        throw InconsistentLabels("volume normalization constant underdetermined: labels do not span");
    Vec c = svd.solve(rhs);
    double res = (M * c - rhs).lpNorm<Eigen::Infinity>();
    if (res > 1e-8)
        throw InconsistentLabels(
            "volume normalization constant inconsistent (best residual " + std::to_string(res) +
            "); no toric soliton potential can exist for these labels");
    return c;
}

double ma_residual(const ToricPotential& U, const Vec& b, const Vec& c, const Vec& mu) {
    Mat H = U.hessian(mu);
    Eigen::SelfAdjointEigenSolver<Mat> es(H);
    double logdet = 0.0;
    for (int i = 0; i < H.rows(); ++i) {
        double ev = es.eigenvalues()(i);
        if (!(ev > 0.0))
            throw std::runtime_error("ma_residual: Hessian not positive definite (eigenvalue " +
                                     std::to_string(ev) + ")");
        logdet += std::log(ev);
    }
    return logdet + c.dot(U.gradient(mu)) - b.dot(mu);
}

MaResidualStats ma_residual_stats(const ToricPotential& U, const Vec& b, const Vec& c,
                                  const std::vector<Vec>& points) {
    MaResidualStats st;
    st.samples = static_cast<int>(points.size());
    if (points.empty()) return st;
    std::vector<double> vals;
    vals.reserve(points.size());
    for (const auto& p : points) vals.push_back(ma_residual(U, b, c, p));
    st.min = *std::min_element(vals.begin(), vals.end());
    st.max = *std::max_element(vals.begin(), vals.end());
    for (double v : vals) st.mean += v;
    st.mean /= vals.size();
    for (double v : vals) st.stddev += (v - st.mean) * (v - st.mean);
    st.stddev = std::sqrt(st.stddev / vals.size());
    return st;
}

LegendreEval legendre_transform(const ToricPotential& u, const Vec& x) {
    LegendreEval le;
    le.dual = u.gradient(x);
    le.dual_value = x.dot(le.dual) - u.value(x);
    le.pair_residual = le.dual_value + u.value(x) - x.dot(le.dual);
    // invert grad u by Newton from a nearby seed
    Vec z = x * 1.05 + Vec::Constant(x.size(), 1e-3);
    for (int it = 0; it < 60; ++it) {
        Vec g = u.gradient(z) - le.dual;
        if (g.lpNorm<Eigen::Infinity>() < 1e-12) break;
        Mat H = u.hessian(z);
        Vec step = H.partialPivLu().solve(g);
        double damp = 1.0;
        for (int h = 0; h < 40; ++h) {
            Vec trial = z - damp * step;
            bool ok = true;
            try {
                (void)u.gradient(trial);
            } catch (...) {
                ok = false;
            }
            if (ok) {
                z = trial;
                break;
            }
            damp *= 0.5;
        }
    }
    le.round_trip = z;
    le.round_trip_error = (z - x).lpNorm<Eigen::Infinity>();
    return le;
}

BoundaryLimit boundary_condition_check(const ToricPotential& U, const DelzantPolyhedron& poly,
                                       int facet, const Vec& interior_start, int steps,
                                       double slope_tol) {
    const AffineLabel& L = poly.labels.at(facet);
    BoundaryLimit bl;
    bl.expected_slope = 2.0 * L.normal.squaredNorm();
    const double L0 = L(interior_start);
    if (!(L0 > 0.0))
        throw std::domain_error("boundary_condition_check: start point not interior");
    Vec dir = L.normal / L.normal.squaredNorm();
    for (int k = 1; k <= steps; ++k) {
        double target = L0 * std::pow(0.5, k);
        Vec x = interior_start + (target - L0) * dir;
        for (const auto& lab : poly.labels)
            if (&lab != &L && !(lab(x) > 0.0))
                throw std::domain_error("boundary_condition_check: sequence leaves the polyhedron");
        Mat Hinv = U.hessian(x).inverse();
        bl.label_values.push_back(target);
        bl.degeneracy.push_back((Hinv * L.normal).norm() / target);
        double h = 0.05 * target;
        auto W = [&](double s) {
            Vec y = x + s * L.normal;
            Mat Hi = U.hessian(y).inverse();
            return L.normal.dot(Hi * L.normal);
        };
        bl.normal_slope.push_back((W(h) - W(-h)) / (2.0 * h));
    }
    auto extrapolate = [](const std::vector<double>& v) {
        size_t k = v.size();
        if (k < 2) return v.empty() ? 0.0 : v.back();
        return v[k - 1] + (v[k - 1] - v[k - 2]);  // first-order Richardson, ratio 2
    };
    bl.degeneracy_limit = extrapolate(bl.degeneracy);
    bl.normal_slope_limit = extrapolate(bl.normal_slope);
    if (bl.normal_slope.size() >= 3) {
        size_t k = bl.normal_slope.size();
        double d1 = bl.normal_slope[k - 2] - bl.normal_slope[k - 3];
        double d2 = bl.normal_slope[k - 1] - bl.normal_slope[k - 2];
        if (d2 != 0.0 && d1 / d2 > 0.0) bl.convergence_order = std::log2(std::abs(d1 / d2));
    }
    bl.pass_degeneracy = std::isfinite(bl.degeneracy_limit) &&
                         std::abs(bl.degeneracy.back() - bl.degeneracy_limit) <
                             0.2 * (1.0 + std::abs(bl.degeneracy_limit));
    bl.pass_slope =
        std::abs(bl.normal_slope_limit - bl.expected_slope) < slope_tol * (1.0 + bl.expected_slope);
    return bl;
}

std::vector<GrowthCheck> killing_norm_growth_check(const profiles::ProfileSet& ps,
                                                   const std::vector<Vec>& vectors,
                                                   const std::vector<std::string>& names,
                                                   int ray_index, double t_max, int steps,
                                                   double max_exponent) {
    ansatz::SolitonPotential pot(ps);
    const int l = ps.ell();
    std::vector<double> xi0(l);
    for (int j = 0; j < l; ++j) xi0[j] = ps.domain[j].mid();
    const auto& dom = ps.domain[ray_index];
    const bool to_minus = !std::isfinite(dom.lo);
    double start = xi0[ray_index];

    std::vector<double> lengths, log_len;
    std::vector<std::vector<double>> log_norms(vectors.size());
    double length = 0.0, prev = start;
    for (int k = 1; k <= steps; ++k) {
        double t = start + (to_minus ? -1.0 : 1.0) *
                                (std::pow(t_max / std::max(1.0, std::abs(start)), double(k) / steps) *
                                 std::abs(start == 0.0 ? 1.0 : start));
        if (!to_minus && std::isfinite(dom.hi)) t = std::min(t, dom.hi - 1e-6);
        // arc length of the coordinate ray between consecutive samples
        ansatz::ChartPoint p;
        p.xi = xi0;
        p.angles.assign(l, 0.0);
        p.base_momenta.resize(l);
        std::vector<int> d = ps.partition.dims;
        d.resize(l, 0);
        for (int j = 0; j < l; ++j) p.base_momenta[j].assign(d[j], 1.0 / (2.0 * (d[j] + 1)));
        length += symfun::quadrature(
            [&](double s) {
                std::vector<double> xi = xi0;
                xi[ray_index] = s;
                auto sd = symfun::elem_symmetric(xi);
                return std::sqrt(std::abs(sd.delta[ray_index] / ps.theta(ray_index, s)));
            },
            prev, t, 1e-10);
        prev = t;
        p.xi[ray_index] = t;
        Mat Hinv = pot.hessian_chart(p).inverse();
        lengths.push_back(std::abs(length));
        log_len.push_back(std::log(std::abs(length)));
        for (size_t v = 0; v < vectors.size(); ++v)
            log_norms[v].push_back(0.5 * std::log(vectors[v].dot(Hinv * vectors[v])));
    }
    // top decade of ray length
    double cut = *std::max_element(lengths.begin(), lengths.end()) / 10.0;
    std::vector<GrowthCheck> out;
    for (size_t v = 0; v < vectors.size(); ++v) {
        std::vector<double> xs, ys;
        for (size_t k = 0; k < lengths.size(); ++k)
            if (lengths[k] >= cut) {
                xs.push_back(log_len[k]);
                ys.push_back(log_norms[v][k]);
            }
        auto fit = numeric::linear_fit(xs, ys);
        GrowthCheck gc;
        gc.name = v < names.size() ? names[v] : ("v" + std::to_string(v));
        gc.exponent = fit.slope;
        gc.r_squared = fit.r_squared;
        gc.pass = fit.slope <= max_exponent;
        out.push_back(gc);
    }
    return out;
}

std::string polyhedron_to_record(const DelzantPolyhedron& poly) {
    std::ostringstream os;
    os.precision(17);
    os << "delzant 1\n" << "dim " << poly.dim << "\n";
    for (const auto& L : poly.labels) {
        for (int i = 0; i < L.normal.size(); ++i) os << L.normal(i) << (i + 1 < L.normal.size() ? " " : "");
        os << " ; " << L.offset << "\n";
    }
    if (poly.lattice_bases) {
        os << "lattice " << poly.lattice_bases->size() << "\n";
        for (const auto& B : *poly.lattice_bases) {
            for (int r = 0; r < B.rows(); ++r) {
                for (int cix = 0; cix < B.cols(); ++cix) os << B(r, cix) << (cix + 1 < B.cols() ? " " : "");
                os << "\n";
            }
        }
    }
    return os.str();
}

DelzantPolyhedron polyhedron_from_record(const std::string& text) {
    std::istringstream is(text);
    std::string tag;
    int version = 0;
    is >> tag >> version;
    if (tag != "delzant" || version != 1)
        throw std::runtime_error("polyhedron record: unknown header");
    DelzantPolyhedron poly;
    is >> tag >> poly.dim;
    if (tag != "dim") throw std::runtime_error("polyhedron record: missing dim");
    std::string line;
    std::getline(is, line);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line.rfind("lattice", 0) == 0) {
            int count = std::stoi(line.substr(7));
            std::vector<Mat> bases;
            for (int b = 0; b < count; ++b) {
                Mat B(poly.dim, poly.dim);
                for (int r = 0; r < poly.dim; ++r)
                    for (int c = 0; c < poly.dim; ++c) is >> B(r, c);
                bases.push_back(B);
            }
            poly.lattice_bases = std::move(bases);
            break;
        }
        std::istringstream ls(line);
        std::vector<double> nums;
        std::string tok;
        double off = 0.0;
        bool after_sep = false;
        while (ls >> tok) {
            if (tok == ";") {
                after_sep = true;
                continue;
            }
            if (after_sep) off = std::stod(tok);
            else nums.push_back(std::stod(tok));
        }
        if (static_cast<int>(nums.size()) != poly.dim)
            throw std::runtime_error("polyhedron record: bad label line");
        Vec n(poly.dim);
        for (int i = 0; i < poly.dim; ++i) n(i) = nums[i];
        poly.labels.push_back({n, off});
    }
    return poly;
}

}  // namespace gkrs::toric
