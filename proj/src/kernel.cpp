#include "rhls/kernel.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "grid_data.hpp"
#include "rhls/special.hpp"

namespace rhls {

namespace {

// 2F1(-lambda/2, (2 - N - lambda)/2; N/2; t^2), convergent for t < 1; used for t <= 1/2.
double mean_series(int N, double lambda, double t)
{
    const double a = -0.5 * lambda;
    const double b = 0.5 * (2.0 - N - lambda);
    const double c = 0.5 * N;
    const double x = t * t;
    double term = 1.0, sum = 1.0;
    for (int k = 0; k < 400; ++k) {
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * x;
        sum += term;
        if (term == 0.0 || std::abs(term) < 1e-17 * std::abs(sum))
            break;
    }
    return sum;
}

// Direct angular integral with dyadic panels refined toward phi = 0, where the
// integrand has its near-singular layer of width ~ (1 - t).
double mean_graded(int N, double lambda, double t)
{
    using boost::math::quadrature::gauss;
    using std::numbers::pi;
    const double half = 0.5 * lambda;
    const int p = N - 2;
    auto f = [&](double phi) {
        const double sh = std::sin(0.5 * phi);
        const double d2 = (1.0 - t) * (1.0 - t) + 4.0 * t * sh * sh;
        const double w = p == 0 ? 1.0 : std::pow(std::sin(phi), p);
        return std::pow(d2, half) * w;
    };
    const double stop = std::max(0.25 * (1.0 - t), 1e-13);
    double hi = pi, sum = 0.0;
    while (0.5 * hi > stop) {
        sum += gauss<double, 20>::integrate(f, 0.5 * hi, hi);
        hi *= 0.5;
    }
    sum += gauss<double, 20>::integrate(f, 0.0, hi);
    return sum / wallis_integral(N);
}

}  // namespace

double sphere_mean_profile(int N, double lambda, double t)
{
    if (N < 1 || !(lambda > 0.0))
        throw std::invalid_argument("sphere_mean_profile: need N >= 1 and lambda > 0");
    if (!(t >= 0.0 && t <= 1.0))
        throw std::invalid_argument("sphere_mean_profile: t must lie in [0, 1]");
    if (N == 1)
        return 0.5 * (std::pow(1.0 + t, lambda) + std::pow(1.0 - t, lambda));
    // Even lambda: the series terminates and is exact on [0, 1].
    const bool even = lambda == 2.0 * std::round(0.5 * lambda);
    if (t <= 0.5 || even)
        return mean_series(N, lambda, t);
    if (N == 3) {
        const double e = lambda + 2.0;
        return (std::pow(1.0 + t, e) - std::pow(1.0 - t, e)) / (2.0 * t * e);
    }
    return mean_graded(N, lambda, t);
}

double sphere_mean_kernel(int N, double lambda, double r, double s)
{
    if (!(r >= 0.0) || !(s >= 0.0))
        throw std::invalid_argument("sphere_mean_kernel: radii must be nonnegative");
    const double hi = std::max(r, s), lo = std::min(r, s);
    if (hi == 0.0)
        return 0.0;
    return std::pow(hi, lambda) * sphere_mean_profile(N, lambda, lo / hi);
}

double angular_kernel(int N, double lambda, double r, double s)
{
    const double a = sphere_area(N);
    return a * a * sphere_mean_kernel(N, lambda, r, s);
}

KernelMatrix::KernelMatrix(std::size_t n, double lambda, std::vector<double> entries)
    : n_(n), lambda_(lambda), a_(std::move(entries))
{
    if (a_.size() != n_ * n_)
        throw std::invalid_argument("KernelMatrix: entry count mismatch");
}

void KernelMatrix::apply(const double* x, double* out) const
{
    for (std::size_t i = 0; i < n_; ++i) {
        const double* r = row(i);
        double s = 0.0;
        for (std::size_t j = 0; j < n_; ++j)
            s += r[j] * x[j];
        out[i] = s;
    }
}

namespace {

std::shared_ptr<const KernelMatrix> build_kernel(const RadialGrid& grid, double lambda)
{
    const int N = grid.dim();
    const std::size_t K = grid.size();
    const auto& c = grid.centers();
    std::vector<double> a(K * K);
    const std::size_t G0 = grid.geometric_begin();
    for (std::size_t i = 0; i < std::min(G0, K); ++i)
        for (std::size_t j = i; j < K; ++j)
            a[i * K + j] = a[j * K + i] = sphere_mean_kernel(N, lambda, c[i], c[j]);
    if (G0 < K) {
        // Geometric block: m(c_i, c_j) = c_max^lambda g(ratio^{-|i-j|}).
        const double lr = std::log(grid.geometric_ratio());
        std::vector<double> g(K - G0);
        for (std::size_t d = 0; d < g.size(); ++d)
            g[d] = sphere_mean_profile(N, lambda, std::exp(-lr * static_cast<double>(d)));
        std::vector<double> cl(K);
        for (std::size_t j = G0; j < K; ++j)
            cl[j] = std::pow(c[j], lambda);
        for (std::size_t i = G0; i < K; ++i)
            for (std::size_t j = i; j < K; ++j)
                a[i * K + j] = a[j * K + i] = cl[j] * g[j - i];
    }
    return std::make_shared<const KernelMatrix>(K, lambda, std::move(a));
}

}  // namespace

std::shared_ptr<const KernelMatrix> kernel_matrix(const RadialGrid& grid, double lambda)
{
    if (!(lambda > 0.0))
        throw std::invalid_argument("kernel_matrix: lambda must be positive");
    auto& d = *grid.data_;
    std::lock_guard<std::mutex> lock(d.kernel_mutex);
    auto it = d.kernels.find(lambda);
    if (it != d.kernels.end())
        return it->second;
    auto k = build_kernel(grid, lambda);
    d.kernels.emplace(lambda, k);
    return k;
}

}  // namespace rhls
