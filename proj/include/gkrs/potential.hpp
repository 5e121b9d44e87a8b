#pragma once

#include <Eigen/Dense>

#include <functional>
#include <memory>

// Symplectic potentials on (an affine chart of) a momentum polyhedron. The
// toric metric they encode is g = Hess(U) dmu^2 + Hess(U)^{-1} dt^2; all
// downstream residuals and curvature evaluations consume this interface.

namespace gkrs::potential {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

class ToricPotential {
public:
    virtual ~ToricPotential() = default;
    virtual int dim() const = 0;
    virtual double value(const Vec& x) const = 0;
    virtual Vec gradient(const Vec& x) const = 0;
    virtual Mat hessian(const Vec& x) const = 0;
};

// u0 = 1/2 sum_j L_j log L_j over affine labels L_j(x) = <n_j, x> + off_j.
class GuilleminPotential final : public ToricPotential {
public:
    GuilleminPotential(std::vector<Vec> normals, std::vector<double> offsets);
    static GuilleminPotential standard_cone(int n);

    int dim() const override { return static_cast<int>(normals_.empty() ? 0 : normals_[0].size()); }
    double value(const Vec& x) const override;
    Vec gradient(const Vec& x) const override;
    Mat hessian(const Vec& x) const override;

private:
    std::vector<Vec> normals_;
    std::vector<double> offsets_;
};

// Arbitrary callable with derivatives from Richardson-paired central stencils.
// The default step balances stencil truncation against ~1e-12 noise in
// quadrature-backed values.
class NumericPotential final : public ToricPotential {
public:
    NumericPotential(int n, std::function<double(const Vec&)> f, double step = 2e-3);

    int dim() const override { return n_; }
    double value(const Vec& x) const override { return f_(x); }
    Vec gradient(const Vec& x) const override;
    Mat hessian(const Vec& x) const override;

private:
    int n_;
    std::function<double(const Vec&)> f_;
    double h_;
};

// value/gradient shared, Hessian replaced (for constructed-failure tests)
class PerturbedPotential final : public ToricPotential {
public:
    PerturbedPotential(std::shared_ptr<const ToricPotential> base,
                       std::function<double(const Vec&)> bump, double step = 2e-3);

    int dim() const override { return base_->dim(); }
    double value(const Vec& x) const override { return base_->value(x) + bump_(x); }
    Vec gradient(const Vec& x) const override;
    Mat hessian(const Vec& x) const override;

private:
    std::shared_ptr<const ToricPotential> base_;
    NumericPotential bump_deriv_;
    std::function<double(const Vec&)> bump_;
};

}  // namespace gkrs::potential
