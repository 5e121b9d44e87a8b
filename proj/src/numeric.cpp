#include "gkrs/numeric.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace gkrs::numeric {

namespace {

double d1_stencil(const std::function<double(double)>& f, double x, double h) {
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

double d2_stencil(const std::function<double(double)>& f, double x, double h) {
    return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) /
           (12 * h * h);
}

}  // namespace

double deriv(const std::function<double(double)>& f, double x, double h) {
    double dh = d1_stencil(f, x, h);
    double dh2 = d1_stencil(f, x, 0.5 * h);
    return (16.0 * dh2 - dh) / 15.0;
}

double deriv2(const std::function<double(double)>& f, double x, double h) {
    double dh = d2_stencil(f, x, h);
    double dh2 = d2_stencil(f, x, 0.5 * h);
    return (16.0 * dh2 - dh) / 15.0;
}

FitResult linear_fit(std::span<const double> x, std::span<const double> y) {
    FitResult r;
    const std::size_t n = x.size();
    if (n < 2) return r;
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
        syy += y[i] * y[i];
    }
    double den = n * sxx - sx * sx;
    if (den == 0) return r;
    r.slope = (n * sxy - sx * sy) / den;
    r.intercept = (sy - r.slope * sx) / n;
    double sst = syy - sy * sy / n;
    double ssr = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double e = y[i] - (r.slope * x[i] + r.intercept);
        ssr += e * e;
    }
    r.r_squared = sst > 0 ? 1.0 - ssr / sst : 1.0;
    return r;
}

void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& f) {
    if (count == 0) return;
    workers = std::max(1u, std::min<unsigned>(workers, count));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    constexpr std::size_t kChunk = 64;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t begin = next.fetch_add(kChunk);
                if (begin >= count) return;
                std::size_t end = std::min(begin + kChunk, count);
                for (std::size_t i = begin; i < end; ++i) f(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

unsigned default_workers() {
    unsigned h = std::thread::hardware_concurrency();
    return h ? h : 1;
}

}  // namespace gkrs::numeric
