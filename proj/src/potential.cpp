#include "gkrs/potential.hpp"

#include <cmath>
#include <stdexcept>

#include "gkrs/numeric.hpp"

namespace gkrs::potential {

GuilleminPotential::GuilleminPotential(std::vector<Vec> normals, std::vector<double> offsets)
    : normals_(std::move(normals)), offsets_(std::move(offsets)) {
    if (normals_.size() != offsets_.size())
        throw std::invalid_argument("GuilleminPotential: label size mismatch");
}

GuilleminPotential GuilleminPotential::standard_cone(int n) {
    std::vector<Vec> normals;
    std::vector<double> offsets(n, 0.0);
    for (int i = 0; i < n; ++i) {
        Vec e = Vec::Zero(n);
        e(i) = 1.0;
        normals.push_back(e);
    }
    return GuilleminPotential(std::move(normals), std::move(offsets));
}

double GuilleminPotential::value(const Vec& x) const {
    double v = 0.0;
    for (size_t j = 0; j < normals_.size(); ++j) {
        double L = normals_[j].dot(x) + offsets_[j];
        if (!(L > 0.0)) throw std::domain_error("GuilleminPotential: point outside polyhedron");
        v += 0.5 * L * std::log(L);
    }
    return v;
}

Vec GuilleminPotential::gradient(const Vec& x) const {
    Vec g = Vec::Zero(x.size());
    for (size_t j = 0; j < normals_.size(); ++j) {
        double L = normals_[j].dot(x) + offsets_[j];
        if (!(L > 0.0)) throw std::domain_error("GuilleminPotential: point outside polyhedron");
        g += 0.5 * (std::log(L) + 1.0) * normals_[j];
    }
    return g;
}

Mat GuilleminPotential::hessian(const Vec& x) const {
    Mat h = Mat::Zero(x.size(), x.size());
    for (size_t j = 0; j < normals_.size(); ++j) {
        double L = normals_[j].dot(x) + offsets_[j];
        if (!(L > 0.0)) throw std::domain_error("GuilleminPotential: point outside polyhedron");
        h += (0.5 / L) * normals_[j] * normals_[j].transpose();
    }
    return h;
}

NumericPotential::NumericPotential(int n, std::function<double(const Vec&)> f, double step)
    : n_(n), f_(std::move(f)), h_(step) {}

Vec NumericPotential::gradient(const Vec& x) const {
    Vec g(n_);
    for (int i = 0; i < n_; ++i) {
        double hi = h_ * (1.0 + std::abs(x(i)));
        g(i) = numeric::deriv(
            [&](double t) {
                Vec y = x;
                y(i) = t;
                return f_(y);
            },
            x(i), hi);
    }
    return g;
}

Mat NumericPotential::hessian(const Vec& x) const {
    Mat h(n_, n_);
    for (int i = 0; i < n_; ++i) {
        double hi = h_ * (1.0 + std::abs(x(i)));
        h(i, i) = numeric::deriv2(
            [&](double t) {
                Vec y = x;
                y(i) = t;
                return f_(y);
            },
            x(i), hi);
        for (int j = i + 1; j < n_; ++j) {
            double hj = h_ * (1.0 + std::abs(x(j)));
            // d^2/didj via nested Richardson first derivatives
            double v = numeric::deriv(
                [&](double s) {
                    Vec y = x;
                    y(j) = s;
                    return numeric::deriv(
                        [&](double t) {
                            Vec z = y;
                            z(i) = t;
                            return f_(z);
                        },
                        y(i), hi);
                },
                x(j), hj);
            h(i, j) = h(j, i) = v;
        }
    }
    return h;
}

PerturbedPotential::PerturbedPotential(std::shared_ptr<const ToricPotential> base,
                                       std::function<double(const Vec&)> bump, double step)
    : base_(std::move(base)), bump_deriv_(base_->dim(), bump, step), bump_(std::move(bump)) {}

Vec PerturbedPotential::gradient(const Vec& x) const {
    return base_->gradient(x) + bump_deriv_.gradient(x);
}

Mat PerturbedPotential::hessian(const Vec& x) const {
    return base_->hessian(x) + bump_deriv_.hessian(x);
}

}  // namespace gkrs::potential
