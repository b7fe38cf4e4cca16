#pragma once
#include <optional>
#include <string>
#include <vector>

#include "rhls/params.hpp"
#include "rhls/profile.hpp"

namespace rhls {

enum class Classification { case1_bounded, case2_unbounded_no_dirac, case3_dirac, boundary_undetermined };

std::string to_string(Classification c);

/// Minimiser of M -> (A + M)/(B + M)^alpha on [0, inf): 0 if alpha A <= B, else (alpha A - B)/(1 - alpha).
/// For alpha <= 0 the minimiser is M = 0.
double optimal_dirac_mass(double A, double B, double alpha);

/// Default grid: 16 linear cells near 0 then geometric cells. The outer radius makes the
/// power-law tail of both the lambda-moment and int rho^q fall below ~1e-8.
RadialGrid default_grid(const Params& p, std::size_t cells = 2048, std::optional<double> r_max = std::nullopt);

struct ElDiagnostics {
    double residual = 0.0;       ///< sup |rho_hat - rho| / sup rho before blending
    std::size_t capped_cells = 0;  ///< cells where the bracket was <= 0 (concentration pressure)
};

/// One damped Euler-Lagrange step: invert the stationarity relation for rho, blend with
/// weight `damping`, update M by optimal_dirac_mass, renormalise total mass to 1.
/// If `pin_lq` is positive a Lagrange multiplier for int rho^q = pin_lq fixes the dilation.
RelaxedMeasure el_iterate(const RelaxedMeasure& m, const Params& p, double damping,
                          ElDiagnostics* diag = nullptr, double pin_lq = 0.0);

struct ClassificationResult {
    Classification classification = Classification::boundary_undetermined;
    double test_quantity = 0.0;            ///< int rho - (alpha/2) I / J
    std::optional<double> predicted_rho0;  ///< case 1
    std::optional<double> predicted_dirac; ///< case 3
};

/// Trichotomy by the sign of T with relative band delta = 1e-6; `origin_exponent` (if known)
/// resolves the boundary band into case 2 when M = 0 and the profile is unbounded.
ClassificationResult classify_minimizer(const RelaxedMeasure& m, const Params& p,
                                        std::optional<double> origin_exponent = std::nullopt);

/// Least-squares slope of log f against log r over the innermost decade (starting at the
/// first geometric cell when the grid has one). Throws NumericalError with < 8 usable cells.
double fit_origin_exponent(const RadialProfile& f);

enum class InitKind { carlson, dirac, file };

struct MinimizeOptions {
    std::size_t cells = 2048;
    std::optional<double> r_max;
    double tol = 1e-10;
    int max_iter = 10000;
    double damping = 0.5;
    InitKind init = InitKind::carlson;
    std::optional<RelaxedMeasure> init_measure;  ///< used with InitKind::file (resampled onto the grid)
    bool second_run = true;                 ///< extra run started with M = 0.5 when 0 < alpha < 1
};

struct MinimizerReport {
    double estimate_C = 0.0;
    RelaxedMeasure measure;
    Classification classification = Classification::boundary_undetermined;
    double test_quantity = 0.0;
    std::optional<double> predicted_rho0;
    std::optional<double> predicted_dirac;
    double virial_residual = 0.0;
    std::optional<double> origin_exponent;
    int iterations = 0;
    bool converged = false;
    double final_residual = 0.0;
    std::size_t capped_cells = 0;
    double final_damping = 0.0;
    std::string start;   ///< which initialisation produced the reported measure
};

/// Damped EL fixed point from the Carlson-Levin shape (plus a Dirac-seeded run when
/// 0 < alpha < 1); q <= N/(N+lambda) throws DegenerateError.
MinimizerReport minimize_relaxed(const Params& p, const MinimizeOptions& opts = {});

struct ExchangeProbe {
    std::vector<double> epsilons;
    std::vector<double> quotients;
    std::vector<double> delta_q;   ///< Q(eps) - Q0
    std::vector<double> gain;      ///< change of int rho^q
    std::vector<double> cost;      ///< change of I + 2MJ
    double base_quotient = 0.0;
    double gain_exponent = 0.0;    ///< fitted; expected N(1-q)
    double cost_exponent = 0.0;    ///< fitted; expected min(2, lambda)
    bool exchange_lowers = false;  ///< delta_q < 0 at the smallest epsilon
    bool predicts_no_dirac = false;///< min(2, lambda) > N(1-q)
};

/// Moves tau of the point mass into the spread bump eps^{-N} tau sigma(x/eps) and tracks Q.
ExchangeProbe dirac_exchange_probe(const RelaxedMeasure& m, const Params& p, const AnalyticProfile& sigma,
                                   const std::vector<double>& epsilons, double tau);

/// J(rho_R) / (int rho_R^q)^{1/q} for rho_R = |x|^{-(N+lambda)} on 1 <= |x| <= R at q = N/(N+lambda).
std::vector<double> degenerate_quotient_curve(int N, double lambda, const std::vector<double>& R_list);

}  // namespace rhls
