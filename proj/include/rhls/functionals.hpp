#pragma once
#include <vector>

#include "rhls/params.hpp"
#include "rhls/profile.hpp"

namespace rhls {

struct Moments {
    double mass = 0.0;           ///< int rho + M
    double lambda_moment = 0.0;  ///< int |x|^lambda rho
    double lq_integral = 0.0;    ///< int rho^q
};

double mass(const RadialProfile& f);
double lambda_moment(const RadialProfile& f, double lambda);
double lq_integral(const RadialProfile& f, double q);
/// int rho log rho (cells with rho = 0 contribute 0).
double entropy(const RadialProfile& f);

Moments moments(const RelaxedMeasure& m, const Params& p);

/// I_lambda[f] = sum_ij m(c_i, c_j) w_i w_j f_i f_j. Accepts signed profiles.
double interaction_energy(const RadialProfile& f, double lambda);
/// Symmetric bilinear form B(f, g) with I[f] = B(f, f). Grids must coincide.
double bilinear_interaction(const RadialProfile& f, const RadialProfile& g, double lambda);
/// I_lambda[rho] + 2 M int |x|^lambda rho.
double relaxed_interaction(const RelaxedMeasure& m, double lambda);

/// Potential (W_lambda * (rho + M delta))(r) with W_lambda = |x|^lambda / lambda, at arbitrary radii.
std::vector<double> potential(const RadialProfile& f, double M, double lambda,
                              const std::vector<double>& at);
/// Same potential at the grid centres, using the cached kernel matrix.
std::vector<double> potential_at_centers(const RadialProfile& f, double M, double lambda);

/// Q[rho, M] = (I + 2MJ) / (mass^alpha (int rho^q)^{(2-alpha)/q}); requires 0 < q < 1.
/// Throws DegenerateError when int rho^q = 0.
double quotient(const RelaxedMeasure& m, const Params& p);

}  // namespace rhls
