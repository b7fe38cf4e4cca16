#include "rhls/minimize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rhls/constants.hpp"
#include "rhls/energy.hpp"
#include "rhls/error.hpp"
#include "rhls/functionals.hpp"
#include "rhls/kernel.hpp"

namespace rhls {

std::string to_string(Classification c)
{
    switch (c) {
    case Classification::case1_bounded: return "case1_bounded";
    case Classification::case2_unbounded_no_dirac: return "case2_unbounded_no_dirac";
    case Classification::case3_dirac: return "case3_dirac";
    case Classification::boundary_undetermined: return "boundary_undetermined";
    }
    return "unknown";
}

double optimal_dirac_mass(double A, double B, double alpha)
{
    if (!(A > 0.0) || !(B > 0.0))
        throw std::invalid_argument("optimal_dirac_mass: A and B must be positive");
    if (!(alpha < 1.0))
        throw std::invalid_argument("optimal_dirac_mass: requires alpha < 1");
    if (alpha <= 0.0 || alpha * A <= B)
        return 0.0;
    return (alpha * A - B) / (1.0 - alpha);
}

RadialGrid default_grid(const Params& p, std::size_t cells, std::optional<double> r_max)
{
    double R;
    if (r_max) {
        R = *r_max;
    } else {
        // Tail of rho ~ r^{-lambda/(1-q)}: both J and int rho^q decay like R^e.
        const double e = p.N - p.lambda * p.q / (1.0 - p.q);
        R = e < 0.0 ? std::pow(10.0, 8.0 / -e) : 1e8;
        R = std::clamp(R, 10.0, 1e8);
    }
    const double r_inner = std::min(1e-6 * R, 1e-4);
    return RadialGrid::geometric(p.N, R, cells, r_inner);
}

namespace {

// Measure together with the quantities one EL step needs; one kernel product per state.
struct Evaluated {
    RelaxedMeasure m;
    std::vector<double> conv;  // sum_j m_ij w_j rho_j
    double rho_mass = 0.0, I = 0.0, J = 0.0, S = 0.0, Q = 0.0;
};

Evaluated evaluate(const RelaxedMeasure& m, const Params& p)
{
    Evaluated e{m, {}, 0, 0, 0, 0, 0};
    const auto& f = m.profile();
    const auto& w = f.grid().volumes();
    const auto& c = f.grid().centers();
    const std::size_t K = f.size();
    const auto k = kernel_matrix(f.grid(), p.lambda);
    std::vector<double> wf(K);
    for (std::size_t i = 0; i < K; ++i)
        wf[i] = w[i] * f[i];
    e.conv.resize(K);
    k->apply(wf.data(), e.conv.data());
    for (std::size_t i = 0; i < K; ++i) {
        e.rho_mass += wf[i];
        e.I += wf[i] * e.conv[i];
        e.J += wf[i] * std::pow(c[i], p.lambda);
        if (f[i] > 0.0)
            e.S += w[i] * std::pow(f[i], p.q);
    }
    if (!(e.S > 0.0))
        throw DegenerateError("minimize: profile vanished");
    const double total = e.rho_mass + m.dirac_mass();
    const double D = e.I + 2.0 * m.dirac_mass() * e.J;
    e.Q = D * std::exp(-p.alpha * std::log(total) - p.lq_exponent() * std::log(e.S));
    return e;
}

// One damped step. With pin_lq > 0 the dilation is fixed through the Lagrange multiplier of
// the constraint int rho^q = pin_lq (mass is fixed by homogeneity): the stationarity relation
// becomes rho^{q-1} = (X + nu (2-alpha)/m) / ((2-alpha)/S (1 + nu)), X = 2 W/D - alpha/m,
// and nu is chosen so that the blended, renormalised iterate meets the constraint.
RelaxedMeasure step_from(const Evaluated& e, const Params& p, double theta, ElDiagnostics* diag, double pin_lq)
{
    const auto& f = e.m.profile();
    const auto& c = f.grid().centers();
    const auto& w = f.grid().volumes();
    const std::size_t K = f.size();
    const double M = e.m.dirac_mass();
    const double total = e.rho_mass + M;
    const double D = e.I + 2.0 * M * e.J;
    const double b = (2.0 - p.alpha) / e.S;
    const double shift = (2.0 - p.alpha) / total;
    const double expo = -1.0 / (1.0 - p.q);
    const double fmax = *std::max_element(f.values().begin(), f.values().end());
    const double cap = 10.0 * fmax;
    std::vector<double> X(K);
    for (std::size_t i = 0; i < K; ++i)
        X[i] = 2.0 * (e.conv[i] + M * std::pow(c[i], p.lambda)) / D - p.alpha / total;

    std::vector<double> hat(K), next(K);
    std::size_t capped = 0;
    auto build = [&](double nu) {
        capped = 0;
        for (std::size_t i = 0; i < K; ++i) {
            const double br = (X[i] + nu * shift) / (b * (1.0 + nu));
            double v = br > 0.0 ? std::pow(br, expo) : cap;
            if (v >= cap) {
                v = cap;
                ++capped;
            }
            hat[i] = std::max(v, 1e-300);
            next[i] = (1.0 - theta) * f[i] + theta * hat[i];
        }
    };
    // int rho^q of the blended iterate after renormalising total mass (M held fixed).
    auto lq_after = [&](double nu) {
        build(nu);
        double m = M, s = 0.0;
        for (std::size_t i = 0; i < K; ++i)
            m += w[i] * next[i];
        for (std::size_t i = 0; i < K; ++i)
            s += w[i] * std::pow(next[i] / m, p.q);
        return s;
    };

    double nu = 0.0;
    bool pinned = false;
    if (pin_lq > 0.0) {
        double x0 = 0.0, x1 = 1e-4;
        double g0 = std::log(lq_after(x0) / pin_lq), g1 = std::log(lq_after(x1) / pin_lq);
        for (int k = 0; k < 60 && std::isfinite(g1); ++k) {
            if (std::abs(g1) < 1e-14) {
                pinned = true;
                break;
            }
            if (g1 == g0)
                break;
            double x2 = x1 - g1 * (x1 - x0) / (g1 - g0);
            x2 = std::clamp(x2, 0.5 * (x1 - 1.0), x1 + 1.0);
            x0 = x1; g0 = g1;
            x1 = x2; g1 = std::log(lq_after(x1) / pin_lq);
        }
        if (pinned && std::isfinite(x1))
            nu = x1;
        else
            pinned = false;
    }
    build(nu);

    if (diag) {
        double diff = 0.0;
        for (std::size_t i = 0; i < K; ++i)
            diff = std::max(diff, std::abs(hat[i] - f[i]));
        diag->residual = diff / fmax;
        diag->capped_cells = capped;
    }
    RadialProfile g(f.grid(), std::move(next));
    double Mn = 0.0;
    if (p.alpha > 0.0) {
        const double A = interaction_energy(g, p.lambda) / (2.0 * lambda_moment(g, p.lambda));
        Mn = optimal_dirac_mass(A, mass(g), p.alpha);
    }
    RelaxedMeasure out = normalize_and_dilate(RelaxedMeasure(g, Mn), 1.0);
    if (pin_lq > 0.0 && !pinned) {
        // Fallback: explicit dilation by resampling.
        const double S = lq_integral(out.profile(), p.q);
        out = normalize_and_dilate(out, std::pow(pin_lq / S, 1.0 / (p.N * (1.0 - p.q))));
    }
    if (diag && M != Mn)
        diag->residual = std::max(diag->residual, std::abs(Mn - M) / std::max(fmax, 1.0));
    return out;
}

void check_admissible(const Params& p)
{
    if (!(p.q < 1.0))
        throw std::invalid_argument("minimize: requires q < 1 (use the porous-medium/logarithmic tools)");
    if (p.q <= p.q_admissible() * (1.0 + 1e-12))
        throw DegenerateError("inequality degenerate: C = 0 for q <= N/(N+lambda)");
}

}  // namespace

RelaxedMeasure el_iterate(const RelaxedMeasure& m, const Params& p, double damping, ElDiagnostics* diag,
                          double pin_lq)
{
    if (!(damping > 0.0 && damping <= 1.0))
        throw std::invalid_argument("el_iterate: damping must lie in (0, 1]");
    if (!(p.q > 0.0 && p.q < 1.0))
        throw std::invalid_argument("el_iterate: requires 0 < q < 1");
    const Evaluated e = evaluate(m, p);
    return step_from(e, p, damping, diag, pin_lq);
}

ClassificationResult classify_minimizer(const RelaxedMeasure& m, const Params& p,
                                        std::optional<double> origin_exponent)
{
    const auto& f = m.profile();
    const double rho = mass(f);
    const double I = interaction_energy(f, p.lambda);
    const double J = lambda_moment(f, p.lambda);
    const double S = lq_integral(f, p.q);
    if (!(rho > 0.0) || !(J > 0.0) || !(S > 0.0))
        throw DegenerateError("classify_minimizer: density part vanishes");
    ClassificationResult r;
    r.test_quantity = rho - 0.5 * p.alpha * I / J;
    const double delta = 1e-6 * rho;
    if (r.test_quantity > delta) {
        r.classification = Classification::case1_bounded;
        const double base = (2.0 - p.alpha) * I * rho / (S * (2.0 * J * rho - p.alpha * I));
        r.predicted_rho0 = std::pow(base, 1.0 / (1.0 - p.q));
    } else if (r.test_quantity < -delta) {
        r.classification = Classification::case3_dirac;
        r.predicted_dirac = (p.alpha * I - 2.0 * J * rho) / (2.0 * (1.0 - p.alpha) * J);
    } else {
        r.classification = Classification::boundary_undetermined;
        // Unbounded when the origin slope is a sizeable fraction of -2/(1-q).
        if (m.dirac_mass() == 0.0 && origin_exponent && *origin_exponent < -0.5 / (1.0 - p.q))
            r.classification = Classification::case2_unbounded_no_dirac;
    }
    return r;
}

double fit_origin_exponent(const RadialProfile& f)
{
    const auto& c = f.grid().centers();
    const std::size_t K = f.size();
    std::size_t start = f.grid().geometric_begin();
    if (start >= K)
        start = 0;
    const double r0 = c[start];
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (std::size_t i = start; i < K && c[i] <= 10.0 * r0 * (1.0 + 1e-12); ++i) {
        if (!(f[i] > 0.0))
            continue;
        const double x = std::log(c[i]), y = std::log(f[i]);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++n;
    }
    if (n < 8)
        throw NumericalError("fit_origin_exponent: fewer than 8 usable cells in the innermost decade");
    const double dn = static_cast<double>(n);
    return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

namespace {

struct RunResult {
    RelaxedMeasure m;
    int iterations = 0;
    bool converged = false;
    double residual = 0.0;
    std::size_t capped = 0;
    double theta = 0.0;
    double Q = 0.0;
};

RunResult run_fixed_point(const RelaxedMeasure& init, const Params& p, const MinimizeOptions& o)
{
    Evaluated cur = evaluate(normalize_and_dilate(init, 1.0), p);
    const double pin = cur.S;
    double theta = o.damping;
    int streak = 0;
    RunResult r{cur.m};
    // Stagnation guard: stop when Q has not moved by 1e-13 (relative) over a window.
    constexpr int window = 300;
    double Q_window = cur.Q;
    for (int it = 1; it <= o.max_iter; ++it) {
        if (it % window == 0) {
            if (Q_window - cur.Q <= 1e-13 * cur.Q)
                break;
            Q_window = cur.Q;
        }
        ElDiagnostics d;
        RelaxedMeasure cand = step_from(cur, p, theta, &d, pin);
        r.iterations = it;
        r.residual = d.residual;
        r.capped = d.capped_cells;
        if (d.residual < o.tol) {
            r.converged = true;
            break;
        }
        Evaluated next = evaluate(cand, p);
        // A capped step is already limited; only uncapped steps must not raise Q.
        if (d.capped_cells == 0 && next.Q > cur.Q * (1.0 + 1e-14)) {
            theta *= 0.5;
            streak = 0;
            if (theta < 1e-9)
                break;
            continue;
        }
        cur = std::move(next);
        if (++streak >= 3)
            theta = o.damping;
    }
    r.m = cur.m;
    r.theta = theta;
    r.Q = cur.Q;
    return r;
}

RelaxedMeasure initial_measure(const Params& p, const RadialGrid& grid, double dirac_share)
{
    const double e = 1.0 / (1.0 - p.q);
    const double lam = p.lambda;
    AnalyticProfile shape{"carlson_levin", [lam, e](double r) { return std::pow(1.0 + std::pow(r, lam), -e); }};
    RadialProfile f = shape.sample(grid);
    f = f.scaled((1.0 - dirac_share) / mass(f));
    return RelaxedMeasure(f, dirac_share);
}

}  // namespace

MinimizerReport minimize_relaxed(const Params& p, const MinimizeOptions& o)
{
    check_admissible(p);
    if (o.tol <= 0.0 || o.max_iter < 1)
        throw std::invalid_argument("minimize: tol must be positive and max_iter >= 1");
    const RadialGrid grid = default_grid(p, o.cells, o.r_max);

    std::vector<std::pair<std::string, RelaxedMeasure>> starts;
    switch (o.init) {
    case InitKind::carlson:
        starts.emplace_back("carlson", initial_measure(p, grid, 0.0));
        if (o.second_run && p.alpha > 0.0 && p.alpha < 1.0)
            starts.emplace_back("dirac", initial_measure(p, grid, 0.5));
        break;
    case InitKind::dirac:
        starts.emplace_back("dirac", initial_measure(p, grid, 0.5));
        break;
    case InitKind::file:
        if (!o.init_measure)
            throw std::invalid_argument("minimize: --init file requires an initial profile");
        starts.emplace_back("file", RelaxedMeasure(resample(o.init_measure->profile(), grid),
                                                   o.init_measure->dirac_mass()));
        break;
    }

    std::optional<RunResult> best;
    std::string best_name;
    for (const auto& [name, m0] : starts) {
        RunResult r = run_fixed_point(m0, p, o);
        if (!best || r.Q < best->Q) {
            best = std::move(r);
            best_name = name;
        }
    }

    // Report the free-energy normalisation: unit mass, optimal dilation (exact, on a scaled grid).
    const RelaxedMeasure unit = normalize_and_dilate(best->m, 1.0);
    const double ell = optimal_rescale(unit, p).ell_star;
    RelaxedMeasure fin(dilate_exact(unit.profile(), ell), unit.dirac_mass());

    MinimizerReport rep{.measure = fin, .predicted_rho0 = {}, .predicted_dirac = {}, .origin_exponent = {}, .start = {}};
    rep.estimate_C = quotient(fin, p);
    try {
        rep.origin_exponent = fit_origin_exponent(fin.profile());
    } catch (const NumericalError&) {
    }
    const ClassificationResult cls = classify_minimizer(fin, p, rep.origin_exponent);
    rep.classification = cls.classification;
    rep.test_quantity = cls.test_quantity;
    rep.predicted_rho0 = cls.predicted_rho0;
    rep.predicted_dirac = cls.predicted_dirac;
    rep.virial_residual = virial_residual(fin, p);
    rep.iterations = best->iterations;
    rep.converged = best->converged;
    rep.final_residual = best->residual;
    rep.capped_cells = best->capped;
    rep.final_damping = best->theta;
    rep.start = best_name;
    return rep;
}

ExchangeProbe dirac_exchange_probe(const RelaxedMeasure& m, const Params& p, const AnalyticProfile& sigma,
                                   const std::vector<double>& epsilons, double tau)
{
    if (!(tau > 0.0) || tau > m.dirac_mass())
        throw std::invalid_argument("dirac_exchange_probe: requires 0 < tau <= M");
    if (epsilons.size() < 2)
        throw std::invalid_argument("dirac_exchange_probe: need at least two epsilons");
    const auto& f = m.profile();
    const RadialGrid& grid = f.grid();
    const RadialProfile s1 = sigma.sample(grid);
    const double smass = mass(s1);
    if (!(smass > 0.0))
        throw std::invalid_argument("dirac_exchange_probe: sigma has no mass on the grid");

    ExchangeProbe out;
    out.base_quotient = quotient(m, p);
    const double S0 = lq_integral(f, p.q);
    const double D0 = relaxed_interaction(m, p.lambda);
    const int N = grid.dim();
    for (double eps : epsilons) {
        if (!(eps > 0.0))
            throw std::invalid_argument("dirac_exchange_probe: epsilons must be positive");
        std::vector<double> v(f.values());
        const auto& c = grid.centers();
        std::vector<double> bump(f.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            bump[i] = std::pow(eps, -N) * sigma.density(c[i] / eps);
        // Unit mass on the grid, so the total mass is preserved exactly.
        const double bm = mass(RadialProfile(grid, bump));
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] += tau * bump[i] / bm;
        const RelaxedMeasure trial(RadialProfile(grid, std::move(v)), m.dirac_mass() - tau);
        const double Q = quotient(trial, p);
        out.epsilons.push_back(eps);
        out.quotients.push_back(Q);
        out.delta_q.push_back(Q - out.base_quotient);
        out.gain.push_back(lq_integral(trial.profile(), p.q) - S0);
        out.cost.push_back(relaxed_interaction(trial, p.lambda) - D0);
    }
    auto slope = [](const std::vector<double>& x, const std::vector<double>& y) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double n = static_cast<double>(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double a = std::log(x[i]), b = std::log(std::abs(y[i]));
            sx += a; sy += b; sxx += a * a; sxy += a * b;
        }
        return (n * sxy - sx * sy) / (n * sxx - sx * sx);
    };
    out.gain_exponent = slope(out.epsilons, out.gain);
    out.cost_exponent = slope(out.epsilons, out.cost);
    const std::size_t smallest = static_cast<std::size_t>(
        std::min_element(out.epsilons.begin(), out.epsilons.end()) - out.epsilons.begin());
    out.exchange_lowers = out.delta_q[smallest] < 0.0;
    out.predicts_no_dirac = std::min(2.0, p.lambda) > N * (1.0 - p.q);
    return out;
}

std::vector<double> degenerate_quotient_curve(int N, double lambda, const std::vector<double>& R_list)
{
    if (N < 1 || !(lambda > 0.0))
        throw std::invalid_argument("degenerate_quotient_curve: need N >= 1 and lambda > 0");
    const double q = N / (N + lambda);
    std::vector<double> out;
    for (double R : R_list) {
        if (!(R > 1.0))
            throw std::invalid_argument("degenerate_quotient_curve: R must exceed 1");
        // Edges: [0, 1] empty, then log-uniform cells on [1, R].
        const std::size_t cells = 4000;
        std::vector<double> e{0.0};
        for (std::size_t i = 0; i <= cells; ++i)
            e.push_back(std::exp(std::log(R) * static_cast<double>(i) / cells));
        const RadialGrid g = RadialGrid::from_edges(N, std::move(e));
        std::vector<double> v(g.size(), 0.0);
        for (std::size_t i = 1; i < g.size(); ++i)
            v[i] = std::pow(g.centers()[i], -(N + lambda));
        const RadialProfile f(g, std::move(v));
        out.push_back(lambda_moment(f, lambda) / std::pow(lq_integral(f, q), 1.0 / q));
    }
    return out;
}

}  // namespace rhls
