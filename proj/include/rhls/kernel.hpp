#pragma once
#include <cstddef>
#include <memory>
#include <vector>

#include "rhls/grid.hpp"

namespace rhls {

/// Normalised sphere mean g(t) = average of |e - t y|^lambda over unit vectors y, 0 <= t <= 1.
/// Closed forms for N = 1 and N = 3; hypergeometric series for t <= 1/2; graded
/// Gauss-Legendre panels in the polar angle otherwise.
double sphere_mean_profile(int N, double lambda, double t);

/// Average of |x - y|^lambda over |x| = r, |y| = s. Homogeneous of degree lambda.
double sphere_mean_kernel(int N, double lambda, double r, double s);

/// k_{N,lambda}(r, s) = |S^{N-1}|^2 times the sphere mean; for N = 1 this is
/// 2(|r - s|^lambda + (r + s)^lambda).
double angular_kernel(int N, double lambda, double r, double s);

/// Dense symmetric matrix of sphere means m(c_i, c_j) over grid centres.
class KernelMatrix {
public:
    KernelMatrix(std::size_t n, double lambda, std::vector<double> entries);

    std::size_t size() const { return n_; }
    double lambda() const { return lambda_; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
    const double* row(std::size_t i) const { return a_.data() + i * n_; }

    /// out = M x.
    void apply(const double* x, double* out) const;

private:
    std::size_t n_;
    double lambda_;
    std::vector<double> a_;
};

/// Kernel matrix for (grid, lambda), built once and cached on the grid.
std::shared_ptr<const KernelMatrix> kernel_matrix(const RadialGrid& grid, double lambda);

}  // namespace rhls
