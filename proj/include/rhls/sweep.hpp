#pragma once
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace rhls {

struct Range {
    double min = 0.0;
    double max = 0.0;
    int steps = 2;

    double at(int k) const { return min + (max - min) * k / (steps - 1); }
};

enum class SweepMode { analytic_regions, minimize_classify };

struct SweepSpec {
    int N = 4;
    Range lambda{0.5, 8.0, 32};
    Range q{0.05, 0.95, 32};
    SweepMode mode = SweepMode::analytic_regions;
    std::size_t cells = 512;  ///< minimize_classify only
    int max_iter = 2000;      ///< minimize_classify only

    /// steps >= 2, lambda range inside (0, inf), q range inside (0, 1).
    void validate() const;
};

/// Threshold predicates at one (N, lambda, q).
struct RegionLabels {
    bool admissible = false;           ///< q > N/(N+lambda)
    bool on_admissible_line = false;
    bool above_conformal = false;      ///< q > 2N/(2N+lambda) (alpha < 0)
    bool on_conformal_line = false;
    std::optional<double> q_bar;       ///< lambda >= 2 only
    bool above_qbar = false;           ///< no Dirac mass for the relaxed minimizer
    bool on_qbar_curve = false;
    double q_explicit = 0.0;           ///< explicit upper bound for q-bar
    bool above_explicit = false;
    bool uniqueness = false;
    bool concentration_window = false; ///< N >= 3 and q < 1 - 2/N
};

/// Labels at (N, lambda, q); q_bar is taken from the argument when given (lambda >= 2).
RegionLabels region_labels(int N, double lambda, double q, std::optional<double> q_bar);
/// Same, computing q_bar when lambda >= 2.
RegionLabels region_labels(int N, double lambda, double q);

struct SweepPoint {
    double lambda = 0.0;
    double q = 0.0;
    RegionLabels labels;
    std::string classification;  ///< minimize_classify: MinimizerReport classification
    double estimate_C = 0.0;
    double dirac_mass = 0.0;
    bool converged = false;
    std::string error;           ///< per-point failure; the sweep continues
};

/// Worker count: RHLS_THREADS when set (>= 1), else hardware concurrency.
unsigned worker_count();

/// Evaluates every grid point (lambda-major order) on a worker pool; results keep input order.
std::vector<SweepPoint> sweep_region(const SweepSpec& spec, unsigned threads = 0);

void write_sweep_csv(std::ostream& os, const SweepSpec& spec, const std::vector<SweepPoint>& pts);
/// Region map: shaded cells per point plus the threshold curves.
void write_sweep_svg(std::ostream& os, const SweepSpec& spec, const std::vector<SweepPoint>& pts);

}  // namespace rhls
