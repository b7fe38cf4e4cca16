#pragma once

namespace rhls {

/// Parameter triple (N, lambda, q) of the interaction-energy inequality.
/// alpha is the homogeneity exponent of the mass factor; it is NaN for q = 1.
struct Params {
    int N = 1;
    double lambda = 2.0;
    double q = 0.5;
    double alpha = 0.0;

    /// Validates N >= 1, lambda > 0, q > 0 and fills alpha.
    Params(int N, double lambda, double q);

    bool has_alpha() const { return q != 1.0; }
    /// Exponent of the L^q factor: (2 - alpha)/q = lambda/(N(1-q)).
    double lq_exponent() const;
    /// N/(N+lambda): inequality degenerate at and below this value.
    double q_admissible() const { return N / (N + lambda); }
    /// 2N/(2N+lambda): alpha = 0 here.
    double q_conformal() const { return 2.0 * N / (2.0 * N + lambda); }
};

}  // namespace rhls
