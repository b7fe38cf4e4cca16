#pragma once
#include <cstddef>

#include "rhls/params.hpp"
#include "rhls/profile.hpp"

namespace rhls {

/// Porous-medium range q > 1: I (int rho^q)^{(alpha-2)/q} >= C (int rho)^alpha with
/// alpha = (q(2N+lambda) - 2N)/(N(q-1)) > 2 + lambda/N.
struct PMParams {
    int N = 1;
    double lambda = 2.0;
    double q = 2.0;
    double alpha = 6.0;

    PMParams(int N, double lambda, double q);
};

/// I (int rho^q)^{(alpha-2)/q} / (int rho)^alpha; invariant under scaling and dilation.
double pm_quotient(const RadialProfile& f, const PMParams& p);

struct PMOptions {
    std::size_t cells = 400;
    double r_max = 6.0;     ///< uniform grid on [0, r_max]; the start is a unit Gaussian
    double tol = 1e-10;
    int max_iter = 20000;
    double damping = 0.5;
};

struct PMReport {
    double estimate_C = 0.0;
    RadialProfile profile;
    double support_radius = 0.0;  ///< outer edge of the last cell with rho > 0
    std::size_t support_cells = 0;
    int iterations = 0;
    bool converged = false;
    double final_residual = 0.0;
};

/// Fixed point of rho = (C1 - C2 int |x-y|^lambda rho(y) dy)_+^{1/(q-1)} with mass 1 and
/// int rho^q pinned to its starting value through the multiplier of that constraint.
PMReport pm_minimize(const PMParams& p, const PMOptions& opts = {});

/// int rho log rho + (N/lambda) log(I_lambda[rho] / C_trial) for a unit-mass profile (q = 1).
double log_deficit(const RadialProfile& f, const Params& p, double C_trial);

/// I_lambda[rho] exp((lambda/N) int rho log rho): log_deficit vanishes at C_trial equal to this.
double log_quotient(const RadialProfile& f, const Params& p);

struct LogSobOptions {
    std::size_t cells = 1024;
    double tol = 1e-10;
    int max_iter = 20000;
    double damping = 0.5;
};

struct LogSobReport {
    double estimate_C = 0.0;  ///< upper bound on the optimal constant
    RadialProfile profile;
    int iterations = 0;
    bool converged = false;
    double final_residual = 0.0;
};

/// Fixed point of rho proportional to exp(-(2N/lambda) W / I), W = int |x-y|^lambda rho(y) dy,
/// with the entropy pinned through its multiplier; the estimate is log_quotient at the limit.
LogSobReport logsob_estimate(const Params& p, const LogSobOptions& opts = {});

}  // namespace rhls
