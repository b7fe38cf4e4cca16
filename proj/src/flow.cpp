#include "rhls/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rhls/error.hpp"
#include "rhls/functionals.hpp"
#include "rhls/quadrature.hpp"
#include "rhls/special.hpp"

namespace rhls {

namespace {

void require_flow_params(const Params& p)
{
    if (!(p.q > 0.0 && p.q < 1.0))
        throw std::invalid_argument("flow: requires 0 < q < 1");
}

double external_potential(double lambda, double r) { return 0.5 * r * r + std::pow(r, lambda) / lambda; }

std::vector<double> cell_potential(const RadialProfile& f, const Params& p, Drift drift)
{
    if (drift == Drift::interaction)
        return potential_at_centers(f, 0.0, p.lambda);
    const auto& c = f.grid().centers();
    std::vector<double> v(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        v[i] = external_potential(p.lambda, c[i]);
    return v;
}

// Interface transmissivities area(r_e) / (c_{e+1} - c_e) for the K - 1 inner edges.
std::vector<double> transmissivities(const RadialGrid& g)
{
    const auto& c = g.centers();
    const auto& e = g.edges();
    const double area = sphere_area(g.dim());
    std::vector<double> t(g.size() > 0 ? g.size() - 1 : 0);
    for (std::size_t k = 0; k < t.size(); ++k)
        t[k] = area * std::pow(e[k + 1], g.dim() - 1) / (c[k + 1] - c[k]);
    return t;
}

double energy_from(const RadialProfile& f, const Params& p, const std::vector<double>& V, Drift drift)
{
    const auto& w = f.grid().volumes();
    const double weight = drift == Drift::interaction ? 0.5 : 1.0;
    double s = 0.0, e = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        s += w[i] * std::pow(f[i], p.q);
        e += w[i] * f[i] * V[i];
    }
    return -s / (1.0 - p.q) + weight * e;
}

double dissipation_from(const RadialProfile& f, const Params& p, const std::vector<double>& V,
                        const std::vector<double>& T)
{
    const double a = p.q / (1.0 - p.q);
    double d = 0.0;
    for (std::size_t k = 0; k < T.size(); ++k) {
        const double mu0 = -a * std::pow(f[k], p.q - 1.0) + V[k];
        const double mu1 = -a * std::pow(f[k + 1], p.q - 1.0) + V[k + 1];
        const double diff = mu1 - mu0;
        d += T[k] * (diff > 0.0 ? f[k + 1] : f[k]) * diff * diff;
    }
    return d;
}

FlowRecord record(const RadialProfile& f, const Params& p, Drift drift, double time)
{
    const std::vector<double> V = cell_potential(f, p, drift);
    FlowRecord r;
    r.time = time;
    r.mass = mass(f);
    r.free_energy = energy_from(f, p, V, drift);
    r.innermost_mass = f.grid().volumes()[0] * f[0];
    r.dissipation = dissipation_from(f, p, V, transmissivities(f.grid()));
    return r;
}

}  // namespace

double flow_free_energy(const RadialProfile& f, const Params& p, Drift drift)
{
    require_flow_params(p);
    return energy_from(f, p, cell_potential(f, p, drift), drift);
}

std::vector<double> drift_velocity(const RadialProfile& f, double lambda, Drift drift)
{
    const auto& e = f.grid().edges();
    std::vector<double> u(e.size(), 0.0);
    for (std::size_t k = 1; k < e.size(); ++k) {
        const double r = e[k];
        double v = 0.0;
        if (drift == Drift::toy) {
            v = r + std::pow(r, lambda - 1.0);
        } else {
            // Central difference of the quadrature potential; exact when it is quadratic in r.
            const double h = 1e-4 * (e[k] - e[k - 1]);
            const auto pot = potential(f, 0.0, lambda, {r - h, r + h});
            v = (pot[1] - pot[0]) / (2.0 * h);
        }
        u[k] = v;
    }
    return u;
}

FlowState initial_state(const RadialProfile& init, const Params& p, Drift drift)
{
    require_flow_params(p);
    if (init.is_signed())
        throw std::invalid_argument("flow: initial profile must be a density");
    const double top = *std::max_element(init.values().begin(), init.values().end());
    if (!(top > 0.0))
        throw std::invalid_argument("flow: initial profile must have positive mass");
    // Cells below 1e-14 of the peak are vacuum; they carry the floor value so that log rho exists.
    std::vector<double> v(init.values());
    for (double& x : v)
        x = std::max(x, 1e-14 * top);
    FlowState s{0.0, RadialProfile(init.grid(), std::move(v)), {}, 0.0, false, {}};
    s.history.push_back(record(s.profile, p, drift, 0.0));
    s.innermost_mass = s.history.back().innermost_mass;
    return s;
}

namespace {

RadialProfile advance(const RadialProfile& f, const Params& p, double dt, Drift drift)
{
    const RadialGrid& g = f.grid();
    const auto& w = g.volumes();
    const std::size_t K = f.size();
    const std::vector<double> V = cell_potential(f, p, drift);
    const std::vector<double> T = transmissivities(g);
    const double a = p.q / (1.0 - p.q);

    std::vector<double> y(K), rho(K), mu(K), P(K), F(K > 0 ? K - 1 : 0);
    for (std::size_t i = 0; i < K; ++i) {
        if (!(f[i] > 0.0))
            throw NumericalError("step: profile must be positive");
        y[i] = std::log(f[i]);
    }
    auto evaluate = [&] {
        for (std::size_t i = 0; i < K; ++i) {
            rho[i] = std::exp(y[i]);
            const double rq = std::exp((p.q - 1.0) * y[i]);
            mu[i] = -a * rq + V[i];
            P[i] = p.q * rq;
        }
        for (std::size_t k = 0; k + 1 < K; ++k) {
            const double d = mu[k + 1] - mu[k];
            F[k] = -T[k] * (d > 0.0 ? rho[k + 1] : rho[k]) * d;
        }
    };

    std::vector<double> sub(K), diag(K), sup(K), rhs(K);
    bool converged = false;
    for (int it = 0; it < 80; ++it) {
        evaluate();
        for (std::size_t i = 0; i < K; ++i) {
            const double out = i + 1 < K ? F[i] : 0.0;
            const double in = i > 0 ? F[i - 1] : 0.0;
            rhs[i] = -(w[i] * (rho[i] - f[i]) / dt + out - in);
            diag[i] = w[i] * rho[i] / dt;
            sub[i] = sup[i] = 0.0;
        }
        for (std::size_t k = 0; k + 1 < K; ++k) {
            const double d = mu[k + 1] - mu[k];
            const bool up_outer = d > 0.0;
            const double mob = up_outer ? rho[k + 1] : rho[k];
            const double dFa = -T[k] * ((up_outer ? 0.0 : rho[k]) * d - mob * P[k]);
            const double dFb = -T[k] * ((up_outer ? rho[k + 1] : 0.0) * d + mob * P[k + 1]);
            diag[k] += dFa;
            sup[k] += dFb;
            diag[k + 1] -= dFb;
            sub[k + 1] -= dFa;
        }
        // Thomas algorithm.
        for (std::size_t i = 1; i < K; ++i) {
            const double m = sub[i] / diag[i - 1];
            diag[i] -= m * sup[i - 1];
            rhs[i] -= m * rhs[i - 1];
        }
        std::vector<double>& delta = rhs;
        delta[K - 1] /= diag[K - 1];
        for (std::size_t i = K - 1; i-- > 0;)
            delta[i] = (delta[i] - sup[i] * delta[i + 1]) / diag[i];
        double big = 0.0;
        for (double d : delta)
            big = std::max(big, std::abs(d));
        if (!std::isfinite(big))
            break;
        const double scale = big > 1.0 ? 1.0 / big : 1.0;
        for (std::size_t i = 0; i < K; ++i)
            y[i] += scale * delta[i];
        if (big < 1e-12) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw NumericalError("step: implicit solve did not converge");

    // Final update from the converged fluxes: telescoping sums keep the mass exact.
    evaluate();
    std::vector<double> next(K);
    for (std::size_t i = 0; i < K; ++i) {
        const double out = i + 1 < K ? F[i] : 0.0;
        const double in = i > 0 ? F[i - 1] : 0.0;
        next[i] = f[i] - dt * (out - in) / w[i];
        if (!(next[i] > 0.0))
            throw NumericalError("step: lost positivity");
    }

    return RadialProfile(g, std::move(next));
}

}  // namespace

FlowState step(const FlowState& s, const Params& p, double dt, Drift drift)
{
    require_flow_params(p);
    if (!(dt > 0.0))
        throw std::invalid_argument("step: dt must be positive");
    FlowState n{s.time + dt, advance(s.profile, p, dt, drift), s.history, 0.0, false, {}};
    n.history.push_back(record(n.profile, p, drift, n.time));
    n.innermost_mass = n.history.back().innermost_mass;
    return n;
}

FlowState run(const RadialProfile& init, const Params& p, double t_end, const FlowOptions& opts)
{
    if (!(t_end >= 0.0))
        throw std::invalid_argument("run: t_end must be nonnegative");
    if (!(opts.dt_initial > 0.0) || !(opts.dt_max >= opts.dt_initial))
        throw std::invalid_argument("run: need 0 < dt_initial <= dt_max");
    FlowState s = initial_state(init, p, opts.drift);
    double dt = opts.dt_initial;
    std::size_t steps = 0;
    while (s.time < t_end * (1.0 - 1e-14)) {
        if (steps >= opts.max_steps) {
            s.failed = true;
            s.message = "run: step limit reached";
            return s;
        }
        const double h = std::min(dt, t_end - s.time);
        try {
            RadialProfile next = advance(s.profile, p, h, opts.drift);
            FlowRecord rec = record(next, p, opts.drift, s.time + h);
            if (rec.free_energy > s.history.back().free_energy + opts.energy_slack)
                throw NumericalError("run: energy increase");
            s.time += h;
            s.profile = std::move(next);
            s.innermost_mass = rec.innermost_mass;
            s.history.push_back(rec);
            ++steps;
            dt = std::min(1.25 * dt, opts.dt_max);
        } catch (const NumericalError& e) {
            dt = 0.5 * h;
            if (dt < opts.dt_min) {
                s.failed = true;
                s.message = std::string("run: time step collapsed (") + e.what() + ")";
                return s;
            }
        }
    }
    return s;
}

AnalyticProfile stationary_profile_lambda2(const Params& p, double m)
{
    require_flow_params(p);
    if (p.lambda != 2.0)
        throw std::invalid_argument("stationary_profile_lambda2: requires lambda = 2");
    if (!(m > 0.0))
        throw std::invalid_argument("stationary_profile_lambda2: mass must be positive");
    const double e = 1.0 / (1.0 - p.q);
    const double halfN = 0.5 * p.N;
    if (!(e > halfN))
        throw std::invalid_argument("stationary_profile_lambda2: profile has infinite mass");
    const double b = (1.0 - p.q) * m / (2.0 * p.q);
    // m = |S^{N-1}| C^{N/2 - e} b^{-N/2} B(N/2, e - N/2) / 2
    const double B = std::exp(log_gamma(halfN) + log_gamma(e - halfN) - log_gamma(e));
    const double C = std::pow(2.0 * m * std::pow(b, halfN) / (sphere_area(p.N) * B), 1.0 / (halfN - e));
    return {"stationary_lambda2", [C, b, e](double r) { return std::pow(C + b * r * r, -e); }};
}

double l1_distance(const RadialProfile& a, const RadialProfile& b)
{
    if (!a.grid().same_as(b.grid()))
        throw std::invalid_argument("l1_distance: profiles live on different grids");
    const auto& w = a.grid().volumes();
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += w[i] * std::abs(a[i] - b[i]);
    return s;
}

double stationary_residual(const RadialProfile& f, const Params& p, double mass_fraction)
{
    require_flow_params(p);
    if (!(mass_fraction > 0.0 && mass_fraction <= 1.0))
        throw std::invalid_argument("stationary_residual: mass_fraction must lie in (0, 1]");
    const std::vector<double> V = potential_at_centers(f, 0.0, p.lambda);
    const auto& w = f.grid().volumes();
    const std::size_t top = static_cast<std::size_t>(
        std::max_element(f.values().begin(), f.values().end()) - f.values().begin());
    const double a = p.q / (1.0 - p.q);
    const double C = a * std::pow(f[top], p.q - 1.0) - V[top];
    const double total = mass(f);
    double acc = 0.0, worst = 0.0;
    for (std::size_t i = 0; i < f.size() && acc < mass_fraction * total; ++i) {
        acc += w[i] * f[i];
        const double pred = std::pow((C + V[i]) / a, -1.0 / (1.0 - p.q));
        worst = std::max(worst, std::abs(pred / f[i] - 1.0));
    }
    return worst;
}

namespace {

void require_toy_window(const Params& p)
{
    if (!(p.lambda > 2.0) || p.N < 3)
        throw std::invalid_argument("toy: requires lambda > 2 and N >= 3");
    if (!(p.q > 1.0 - p.lambda / p.N && p.q < 1.0 - 2.0 / p.N))
        throw std::invalid_argument("toy: requires 1 - lambda/N < q < 1 - 2/N");
}

}  // namespace

AnalyticProfile toy_profile(double h, const Params& p)
{
    require_toy_window(p);
    if (!(h >= 0.0))
        throw std::invalid_argument("toy_profile: h must be nonnegative");
    const double c = (1.0 - p.q) / p.q, e = 1.0 / (1.0 - p.q), lam = p.lambda;
    return {"toy_u_h", [h, c, e, lam](double r) {
                const double base = h + c * external_potential(lam, r);
                return base > 0.0 ? std::pow(base, -e) : std::numeric_limits<double>::infinity();
            }};
}

double toy_mass(double h, const Params& p, bool second_rule)
{
    require_toy_window(p);
    if (!(h >= 0.0))
        throw std::invalid_argument("toy_mass: h must be nonnegative");
    const int N = p.N;
    const double c = (1.0 - p.q) / p.q, e = 1.0 / (1.0 - p.q), lam = p.lambda;
    // r^{N-1} u_h(r) in logarithms; V(r) = r^2 (1/2 + r^{lambda-2}/lambda) avoids underflow near 0.
    const RealFunction f = [=](double r) {
        if (!(r > 0.0))
            return 0.0;
        const double logV = 2.0 * std::log(r) + std::log(0.5 + std::pow(r, lam - 2.0) / lam);
        const double logbase = h > 0.0 ? std::log(h + c * std::exp(logV)) : std::log(c) + logV;
        return std::exp((N - 1) * std::log(r) - e * logbase);
    };
    const double I = second_rule ? integrate_half_line_kronrod(f, 1e-13) : integrate_half_line(f, 1e-13);
    return sphere_area(N) * I;
}

double toy_critical_mass(const Params& p) { return toy_mass(0.0, p); }

double toy_fit_h(const Params& p, double m)
{
    const double m0 = toy_critical_mass(p);
    if (!(m > 0.0 && m < m0))
        throw std::invalid_argument("toy_fit_h: mass must lie in (0, m_lambda(0))");
    double lo = 0.0, hi = 1.0;
    while (toy_mass(hi, p) > m)
        hi *= 2.0;
    for (int k = 0; k < 200 && hi - lo > 1e-14 * hi; ++k) {
        const double mid = 0.5 * (lo + hi);
        (toy_mass(mid, p) > m ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

ToyResult toy_run(const RadialProfile& init, const Params& p, double mass_target, double t_end,
                  const FlowOptions& opts)
{
    require_toy_window(p);
    if (!(mass_target > 0.0))
        throw std::invalid_argument("toy_run: mass_target must be positive");
    const double m_init = mass(init);
    if (!(m_init > 0.0))
        throw std::invalid_argument("toy_run: initial profile must have positive mass");
    FlowOptions o = opts;
    o.drift = Drift::toy;
    ToyResult r{run(init.scaled(mass_target / m_init), p, t_end, o), "undetermined", toy_critical_mass(p)};
    const auto& hist = r.state.history;
    const double total = hist.back().mass;
    r.innermost_growth = hist.back().innermost_mass / hist.front().innermost_mass;
    if (r.state.failed)
        return r;

    if (total > r.critical_mass) {
        // Pile-up in the first cell, still growing over the last tenth of the steps.
        const std::size_t from = hist.size() - std::max<std::size_t>(hist.size() / 10, 2);
        bool growing = hist.back().innermost_mass > hist[from].innermost_mass;
        for (std::size_t k = from + 1; k < hist.size() && growing; ++k)
            growing = hist[k].innermost_mass >= hist[k - 1].innermost_mass * (1.0 - 1e-12);
        if (growing && r.innermost_growth > 10.0)
            r.verdict = "concentrating";
        // Bulk (all but the first cell) against u_0.
        const RadialProfile& f = r.state.profile;
        const auto& c = f.grid().centers();
        const auto& w = f.grid().volumes();
        const AnalyticProfile u0 = toy_profile(0.0, p);
        for (std::size_t i = 1; i < f.size(); ++i)
            r.l1_error += w[i] * std::abs(f[i] - u0.density(c[i]));
        return r;
    }

    // Fit h so that u_h carries the grid mass, then compare.
    const RadialGrid& g = r.state.profile.grid();
    auto grid_mass = [&](double h) { return mass(toy_profile(h, p).sample(g)); };
    double lo = 0.0, hi = 1.0;
    while (grid_mass(hi) > total)
        hi *= 2.0;
    if (g.centers()[0] > 0.0 && grid_mass(1e-300) < total)
        return r;
    for (int k = 0; k < 200 && hi - lo > 1e-14 * hi; ++k) {
        const double mid = 0.5 * (lo + hi);
        (grid_mass(mid) > total ? lo : hi) = mid;
    }
    r.fitted_h = 0.5 * (lo + hi);
    r.l1_error = l1_distance(r.state.profile, toy_profile(r.fitted_h, p).sample(g));
    if (r.l1_error < 5e-2)
        r.verdict = "relaxing";
    return r;
}

}  // namespace rhls
