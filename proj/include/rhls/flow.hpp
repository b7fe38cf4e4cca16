#pragma once
#include <string>
#include <vector>

#include "rhls/params.hpp"
#include "rhls/profile.hpp"

namespace rhls {

/// Which drift drives the flow: the self-interaction W_lambda * rho with W_lambda = |x|^lambda / lambda,
/// or the fixed external potential V(x) = |x|^2 / 2 + |x|^lambda / lambda of the toy model.
enum class Drift { interaction, toy };

struct FlowRecord {
    double time = 0.0;
    double mass = 0.0;
    double free_energy = 0.0;
    double innermost_mass = 0.0;
    double dissipation = 0.0;  ///< discrete int rho |d_r mu|^2 at this state
};

struct FlowState {
    double time = 0.0;
    RadialProfile profile;
    std::vector<FlowRecord> history;
    double innermost_mass = 0.0;
    bool failed = false;
    std::string message;
};

/// Discrete free energy -1/(1-q) int rho^q + (1/(2 lambda)) I_lambda[rho] (interaction)
/// or -1/(1-q) int rho^q + int rho V (toy).
double flow_free_energy(const RadialProfile& f, const Params& p, Drift drift = Drift::interaction);

/// d/dr of the drift potential at the cell edges (size() + 1 values, zero at r = 0).
std::vector<double> drift_velocity(const RadialProfile& f, double lambda, Drift drift = Drift::interaction);

/// Fresh state at time 0 with one history record.
FlowState initial_state(const RadialProfile& init, const Params& p, Drift drift = Drift::interaction);

/// One backward-Euler step of length dt: conservative fluxes -area * rho_upwind * d_r mu with
/// mu = -(q/(1-q)) rho^{q-1} + potential; the entropy part is implicit (Newton in log rho),
/// the interaction potential explicit. Throws NumericalError when the solve fails.
FlowState step(const FlowState& s, const Params& p, double dt, Drift drift = Drift::interaction);

struct FlowOptions {
    double dt_initial = 1e-3;
    double dt_max = 0.5;
    double dt_min = 1e-12;
    std::size_t max_steps = 200000;
    double energy_slack = 1e-12;  ///< allowed energy increase per step
    Drift drift = Drift::interaction;
};

/// Integrates to t_end with adaptive dt. Steps that fail or raise the energy beyond the
/// slack are retried with half the step; a collapse of dt is reported in the state.
FlowState run(const RadialProfile& init, const Params& p, double t_end, const FlowOptions& opts = {});

/// Stationary solution for lambda = 2 with the given mass:
/// rho = (C + b r^2)^{-1/(1-q)}, b = (1-q) m / (2q), C fixed by the mass.
AnalyticProfile stationary_profile_lambda2(const Params& p, double mass);

/// L1 distance between two profiles on the same grid.
double l1_distance(const RadialProfile& a, const RadialProfile& b);

/// Pointwise relative residual of rho = ((1-q)/q (C + W_lambda * rho))^{-1/(1-q)} on the cells
/// holding the first `mass_fraction` of the mass, with C fitted at the densest cell.
double stationary_residual(const RadialProfile& f, const Params& p, double mass_fraction = 0.99);

/// u_h = (h + ((1-q)/q) V)^{-1/(1-q)}. Requires lambda > 2, N >= 3, 1 - lambda/N < q < 1 - 2/N.
AnalyticProfile toy_profile(double h, const Params& p);
/// Mass of u_h; `second_rule` selects the independent quadrature.
double toy_mass(double h, const Params& p, bool second_rule = false);
double toy_critical_mass(const Params& p);
/// h with toy_mass(h) = mass (mass < toy_critical_mass).
double toy_fit_h(const Params& p, double mass);

struct ToyResult {
    FlowState state;
    std::string verdict;  ///< "relaxing", "concentrating" or "undetermined"
    double critical_mass = 0.0;
    double fitted_h = 0.0;   ///< relaxing only
    double l1_error = 0.0;   ///< L1 distance to u_h (relaxing) or of the bulk to u_0 (otherwise)
    double innermost_growth = 0.0;  ///< final / initial innermost-cell mass
};

/// Runs the external-potential flow from init rescaled to mass_target and classifies the outcome.
ToyResult toy_run(const RadialProfile& init, const Params& p, double mass_target, double t_end,
                  const FlowOptions& opts = {});

}  // namespace rhls
