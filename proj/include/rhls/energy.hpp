#pragma once
#include <optional>

#include "rhls/params.hpp"
#include "rhls/profile.hpp"

namespace rhls {

/// F = -(1/(1-q)) int rho^q + (1/(2 lambda)) I[rho] + (M/lambda) int |x|^lambda rho.
double free_energy_relaxed(const RelaxedMeasure& m, const Params& p);
double free_energy(const RadialProfile& f, const Params& p);

struct Rescale {
    double ell_star = 1.0;    ///< optimal dilation of the mass-normalised density
    double min_energy = 0.0;  ///< -kappa_star Q^{-N(1-q)/(lambda - N(1-q))}
};

/// Optimal dilation of f / ||f||_1 and the energy it attains.
Rescale optimal_rescale(const RadialProfile& f, const Params& p);
/// Same for a relaxed measure; the point mass stays at the origin.
Rescale optimal_rescale(const RelaxedMeasure& m, const Params& p);

/// Normalises total mass to 1 and dilates by ell (resampled on the same grid).
RelaxedMeasure normalize_and_dilate(const RelaxedMeasure& m, double ell);

/// |I + 2MJ - 2N int rho^q| / (2N int rho^q).
double virial_residual(const RelaxedMeasure& m, const Params& p);

struct EnergyReport {
    double free_energy = 0.0;
    double rescale_ell = 1.0;
    double min_energy = 0.0;
    std::optional<double> lower_bound;   ///< -kappa_star C^{-N(1-q)/(lambda-N(1-q))} when C is given
    double virial_residual = 0.0;
};

EnergyReport energy_report(const RelaxedMeasure& m, const Params& p, std::optional<double> C_value);

/// Positive K with G[mu] >= I[mu]/(4 lambda) - K for probability measures, given any
/// C_value not exceeding the sharp constant: K = max_X (1/(1-q))(X/C)^p - X/(4 lambda),
/// p = N(1-q)/lambda, attained at the returned argmax.
struct Coercivity {
    double constant = 0.0;
    double argmax = 0.0;
};
Coercivity coercivity(const Params& p, double C_value);
double coercivity_constant(const Params& p, double C_value);

/// G = (1/(2 lambda)) (I + 2MJ) - (1/(1-q)) int rho^q (equals the relaxed free energy).
double g_functional(const RelaxedMeasure& m, const Params& p);

struct MomentBound {
    double lhs = 0.0;   ///< I[mu]
    double rhs = 0.0;   ///< 2^{1-(lambda-1)_+} mu(B_r(a)) (int |y-a|^lambda dmu - 2^{(lambda-1)_+} r^lambda)
    bool holds = false;
};

/// Evaluates both sides for mu = m / total mass, with the shift a placed on a fixed axis.
MomentBound moment_bound_check(const RelaxedMeasure& m, const Params& p, double a, double r,
                               double tol = 1e-10);

}  // namespace rhls
