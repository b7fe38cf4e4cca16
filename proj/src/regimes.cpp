#include "rhls/regimes.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "rhls/functionals.hpp"
#include "rhls/kernel.hpp"

namespace rhls {

PMParams::PMParams(int N_, double lambda_, double q_) : N(N_), lambda(lambda_), q(q_)
{
    if (N < 1)
        throw std::invalid_argument("PMParams: dimension must be >= 1");
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw std::invalid_argument("PMParams: lambda must be positive");
    if (!(q > 1.0) || !std::isfinite(q))
        throw std::invalid_argument("PMParams: requires q > 1");
    alpha = (q * (2.0 * N + lambda) - 2.0 * N) / (N * (q - 1.0));
}

double pm_quotient(const RadialProfile& f, const PMParams& p)
{
    const double m = mass(f);
    if (!(m > 0.0))
        throw std::invalid_argument("pm_quotient: zero mass");
    const double I = interaction_energy(f, p.lambda);
    const double S = lq_integral(f, p.q);
    return std::exp(std::log(I) + (p.alpha - 2.0) / p.q * std::log(S) - p.alpha * std::log(m));
}

namespace {

// Finds nu with g(nu) = 0 by a safeguarded secant from nu = 0, keeping nu > -1.
bool solve_multiplier(const std::function<double(double)>& g, double tol, double& nu)
{
    double x0 = 0.0, x1 = 1e-4;
    double g0 = g(x0), g1 = g(x1);
    for (int k = 0; k < 60 && std::isfinite(g1) && std::isfinite(g0); ++k) {
        if (std::abs(g1) < tol) {
            nu = x1;
            return true;
        }
        if (g1 == g0)
            break;
        double x2 = x1 - g1 * (x1 - x0) / (g1 - g0);
        x2 = std::clamp(x2, 0.5 * (x1 - 1.0), x1 + 1.0);
        x0 = x1; g0 = g1;
        x1 = x2; g1 = g(x1);
    }
    if (std::abs(g0) < tol) {
        nu = x0;
        return true;
    }
    return false;
}

// Kernel product W_i = sum_j m(c_i, c_j) w_j rho_j and I = sum_i w_i rho_i W_i.
double interaction_field(const RadialProfile& f, double lambda, std::vector<double>& W)
{
    const auto k = kernel_matrix(f.grid(), lambda);
    const auto& w = f.grid().volumes();
    const std::size_t K = f.size();
    std::vector<double> wf(K);
    for (std::size_t i = 0; i < K; ++i)
        wf[i] = w[i] * f[i];
    W.assign(K, 0.0);
    k->apply(wf.data(), W.data());
    double I = 0.0;
    for (std::size_t i = 0; i < K; ++i)
        I += wf[i] * W[i];
    return I;
}

std::vector<double> unit_mass(std::vector<double> v, const std::vector<double>& w)
{
    double m = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        m += w[i] * v[i];
    for (double& x : v)
        x /= m;
    return v;
}

double sup_relative(const std::vector<double>& a, const std::vector<double>& b)
{
    double d = 0.0, top = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d = std::max(d, std::abs(a[i] - b[i]));
        top = std::max(top, std::abs(b[i]));
    }
    return d / top;
}

}  // namespace

PMReport pm_minimize(const PMParams& p, const PMOptions& o)
{
    if (o.cells < 8 || !(o.r_max > 0.0) || !(o.tol > 0.0) || o.max_iter < 1)
        throw std::invalid_argument("pm_minimize: invalid options");
    if (!(o.damping > 0.0 && o.damping <= 1.0))
        throw std::invalid_argument("pm_minimize: damping must lie in (0, 1]");
    const RadialGrid g = RadialGrid::uniform(p.N, o.r_max, o.cells);
    const auto& w = g.volumes();
    const std::size_t K = g.size();
    AnalyticProfile gauss{"gaussian", [](double r) { return std::exp(-0.5 * r * r); }};
    std::vector<double> rho = unit_mass(gauss.sample(g).values(), w);
    const double pin = lq_integral(RadialProfile(g, rho), p.q);
    const double e = 1.0 / (p.q - 1.0);

    PMReport rep{.profile = RadialProfile(g, rho)};
    std::vector<double> W, hat(K), next(K);
    for (int it = 1; it <= o.max_iter; ++it) {
        const RadialProfile f(g, rho);
        const double I = interaction_field(f, p.lambda, W);
        const double S = lq_integral(f, p.q);
        const double b = (p.alpha - 2.0) / S;
        auto build = [&](double nu) {
            for (std::size_t i = 0; i < K; ++i) {
                const double br = (p.alpha - 2.0 * W[i] / I + nu * (p.alpha - 2.0)) / (b * (1.0 + nu));
                hat[i] = br > 0.0 ? std::pow(br, e) : 0.0;
                next[i] = (1.0 - o.damping) * rho[i] + o.damping * hat[i];
            }
            next = unit_mass(next, w);
        };
        auto gap = [&](double nu) {
            build(nu);
            return std::log(lq_integral(RadialProfile(g, next), p.q) / pin);
        };
        double nu = 0.0;
        if (!solve_multiplier(gap, 1e-14, nu))
            nu = 0.0;
        build(nu);
        rep.iterations = it;
        rep.final_residual = sup_relative(hat, rho);
        rho = next;
        if (rep.final_residual < o.tol) {
            rep.converged = true;
            break;
        }
    }
    // The map image carries the exact plus-part support (the blend only decays there).
    rho = unit_mass(hat, w);
    rep.profile = RadialProfile(g, rho);
    rep.estimate_C = pm_quotient(rep.profile, p);
    for (std::size_t i = K; i-- > 0;)
        if (rho[i] > 0.0) {
            rep.support_cells = i + 1;
            rep.support_radius = g.edges()[i + 1];
            break;
        }
    return rep;
}

double log_deficit(const RadialProfile& f, const Params& p, double C_trial)
{
    if (p.q != 1.0)
        throw std::invalid_argument("log_deficit: requires q = 1");
    if (!(C_trial > 0.0))
        throw std::invalid_argument("log_deficit: C_trial must be positive");
    if (std::abs(mass(f) - 1.0) > 1e-10)
        throw std::invalid_argument("log_deficit: profile must have unit mass");
    return entropy(f) + p.N / p.lambda * std::log(interaction_energy(f, p.lambda) / C_trial);
}

double log_quotient(const RadialProfile& f, const Params& p)
{
    return interaction_energy(f, p.lambda) * std::exp(p.lambda / p.N * entropy(f));
}

LogSobReport logsob_estimate(const Params& p, const LogSobOptions& o)
{
    if (p.q != 1.0)
        throw std::invalid_argument("logsob_estimate: requires q = 1");
    if (o.cells < 32 || !(o.tol > 0.0) || o.max_iter < 1)
        throw std::invalid_argument("logsob_estimate: invalid options");
    if (!(o.damping > 0.0 && o.damping <= 1.0))
        throw std::invalid_argument("logsob_estimate: damping must lie in (0, 1]");
    // The limit decays like exp(-c r^lambda); the outer radius grows as lambda shrinks.
    const double R = 10.0 * std::pow(5.0, 2.0 / p.lambda);
    const RadialGrid g = RadialGrid::geometric(p.N, R, o.cells, 1e-3);
    const auto& w = g.volumes();
    const std::size_t K = g.size();
    AnalyticProfile gauss{"gaussian", [](double r) { return std::exp(-0.5 * r * r); }};
    std::vector<double> rho = unit_mass(gauss.sample(g).values(), w);
    const double pin = entropy(RadialProfile(g, rho));
    const double c = 2.0 * p.N / p.lambda;

    LogSobReport rep{.profile = RadialProfile(g, rho)};
    std::vector<double> W, hat(K), next(K);
    for (int it = 1; it <= o.max_iter; ++it) {
        const RadialProfile f(g, rho);
        const double I = interaction_field(f, p.lambda, W);
        const double Wmin = *std::min_element(W.begin(), W.end());
        auto build = [&](double nu) {
            for (std::size_t i = 0; i < K; ++i)
                hat[i] = std::exp(-c * (1.0 + nu) * (W[i] - Wmin) / I);
            hat = unit_mass(hat, w);
            for (std::size_t i = 0; i < K; ++i)
                next[i] = (1.0 - o.damping) * rho[i] + o.damping * hat[i];
        };
        auto gap = [&](double nu) {
            build(nu);
            return entropy(RadialProfile(g, next)) - pin;
        };
        double nu = 0.0;
        if (!solve_multiplier(gap, 1e-13 * std::max(1.0, std::abs(pin)), nu))
            nu = 0.0;
        build(nu);
        rep.iterations = it;
        rep.final_residual = sup_relative(hat, rho);
        rho = next;
        if (rep.final_residual < o.tol) {
            rep.converged = true;
            break;
        }
    }
    rep.profile = RadialProfile(g, rho);
    rep.estimate_C = log_quotient(rep.profile, p);
    return rep;
}

}  // namespace rhls
