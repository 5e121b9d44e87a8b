#pragma once

#include <functional>
#include <span>
#include <vector>

// Finite-difference stencils, a join-based parallel for, and a log-log fit.

namespace gkrs::numeric {

// 4th-order central first derivative, Richardson-paired over h and h/2.
double deriv(const std::function<double(double)>& f, double x, double h);
// 4th-order central second derivative with the same pairing.
double deriv2(const std::function<double(double)>& f, double x, double h);

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

FitResult linear_fit(std::span<const double> x, std::span<const double> y);

// f(i) for i in [0, count); grid order is preserved by construction because
// workers write disjoint index ranges.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& f);

unsigned default_workers();

}  // namespace gkrs::numeric
