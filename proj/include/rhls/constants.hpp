#pragma once
#include <optional>

#include "rhls/profile.hpp"

namespace rhls {

/// alpha = (2N - q(2N+lambda)) / (N(1-q)); q = 1 is rejected.
double alpha_exponent(int N, double lambda, double q);

struct Thresholds {
    double q_admissible = 0.0;                ///< N/(N+lambda)
    double q_conformal = 0.0;                 ///< 2N/(2N+lambda)
    std::optional<double> q_concentration;    ///< 1 - 2/N, N >= 3
    double q_mccann = 0.0;                    ///< 1 - 1/N
    std::optional<double> q_bar;              ///< from sup_ratio_A, lambda >= 2
    double q_explicit_bound = 0.0;            ///< 2N(1-2^-lambda)/(2N(1-2^-lambda)+lambda)
};

/// All thresholds; q_bar is computed numerically only when `with_qbar` is set.
Thresholds thresholds(int N, double lambda, bool with_qbar = true);

/// Sharp constant on the conformal line q = 2N/(2N+lambda).
double conformal_constant(int N, double lambda);

/// Sharp constant for lambda = 2, N/(N+2) < q < 1 (direct Gamma expression).
double lambda2_constant(int N, double q);

/// Relative tolerance used to decide whether q sits on a special family.
inline constexpr double kFamilyTolerance = 1e-9;

/// Conformal constant on the conformal line, lambda = 2 constant for lambda = 2, else nothing.
std::optional<double> closed_form_constant(int N, double lambda, double q);

struct CarlsonLevin {
    double constant = 0.0;
    AnalyticProfile optimizer;   ///< (1 + r^lambda)^{-1/(1-q)}
};

/// Sharp constant of the interpolation of int rho^q between mass and lambda-moment.
CarlsonLevin carlson_levin(int N, double lambda, double q);

/// mass^{1-N(1-q)/(lambda q)} moment^{N(1-q)/(lambda q)} / lq^{1/q}.
double carlson_levin_quotient(double mass, double moment, double lq, int N, double lambda, double q);

/// Same quotient for a radial function given in closed form, by half-line quadrature.
double carlson_levin_quotient(const AnalyticProfile& f, int N, double lambda, double q);

/// Ball-pair ratio: int_{B_R x B_S} |x-y|^lambda / (|B_R| int_{B_S}|x|^lambda + |B_S| int_{B_R}|y|^lambda).
double ratio_F(int N, double lambda, double R, double S);

struct SupSearch {
    double value = 0.0;         ///< computed sup of F
    double argmax_t = 0.0;      ///< t = S/R at the sup (0 means the t -> 0 limit)
    double limit_at_zero = 1.0; ///< analytic t -> 0 limit
    double value_at_one = 0.0;  ///< F(1, 1)
    int evaluations = 0;
    bool interior = false;      ///< maximum strictly inside (0, 1)
};

/// A_{N,lambda} = sup F by coarse scan, golden-section refinement and endpoint checks.
SupSearch sup_ratio_A(int N, double lambda);

/// q-bar from a given A value.
double qbar_from_A(int N, double lambda, double A);
/// q-bar curve; exact N/(N+2) at lambda = 2; computes A otherwise (meaningful for lambda > 2).
double qbar_curve(int N, double lambda);
/// B_{N,lambda} = ((N+lambda)/(2N)) (2N/(N+2))^{lambda/2}.
double B_lower_bound(int N, double lambda);
/// 2N(1-2^-lambda)/(2N(1-2^-lambda)+lambda).
double explicit_qbar_bound(int N, double lambda);

/// kappa_star = (lambda - N(1-q))/((1-q)lambda) (2N)^{N(1-q)/(lambda - N(1-q))}.
double kappa_star(int N, double lambda, double q);

/// Parameters where the measure-valued minimizer is unique:
/// ((q >= 1-1/N and lambda >= 1) or 2 <= lambda <= 4) and q > N/(N+lambda).
bool uniqueness_region(int N, double lambda, double q);

}  // namespace rhls
