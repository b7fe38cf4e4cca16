#include "rhls/functionals.hpp"

#include <cmath>
#include <stdexcept>

#include "rhls/error.hpp"
#include "rhls/kernel.hpp"

namespace rhls {

double mass(const RadialProfile& f)
{
    const auto& w = f.grid().volumes();
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        s += w[i] * f[i];
    return s;
}

double lambda_moment(const RadialProfile& f, double lambda)
{
    const auto& w = f.grid().volumes();
    const auto& c = f.grid().centers();
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        s += w[i] * std::pow(c[i], lambda) * f[i];
    return s;
}

double lq_integral(const RadialProfile& f, double q)
{
    if (f.is_signed())
        throw std::invalid_argument("lq_integral: density expected");
    const auto& w = f.grid().volumes();
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        if (f[i] > 0.0)
            s += w[i] * std::pow(f[i], q);
    return s;
}

double entropy(const RadialProfile& f)
{
    if (f.is_signed())
        throw std::invalid_argument("entropy: density expected");
    const auto& w = f.grid().volumes();
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        if (f[i] > 0.0)
            s += w[i] * f[i] * std::log(f[i]);
    return s;
}

Moments moments(const RelaxedMeasure& m, const Params& p)
{
    const auto& f = m.profile();
    return {mass(f) + m.dirac_mass(), lambda_moment(f, p.lambda), lq_integral(f, p.q)};
}

double bilinear_interaction(const RadialProfile& f, const RadialProfile& g, double lambda)
{
    if (!f.grid().same_as(g.grid()))
        throw std::invalid_argument("bilinear_interaction: profiles live on different grids");
    const auto k = kernel_matrix(f.grid(), lambda);
    const auto& w = f.grid().volumes();
    const std::size_t K = f.size();
    std::vector<double> wf(K), wg(K);
    for (std::size_t i = 0; i < K; ++i) {
        wf[i] = w[i] * f[i];
        wg[i] = w[i] * g[i];
    }
    double s = 0.0;
    for (std::size_t i = 0; i < K; ++i) {
        if (wf[i] == 0.0)
            continue;
        const double* r = k->row(i);
        double t = 0.0;
        for (std::size_t j = 0; j < K; ++j)
            t += r[j] * wg[j];
        s += wf[i] * t;
    }
    return s;
}

double interaction_energy(const RadialProfile& f, double lambda)
{
    return bilinear_interaction(f, f, lambda);
}

double relaxed_interaction(const RelaxedMeasure& m, double lambda)
{
    const double I = interaction_energy(m.profile(), lambda);
    if (m.dirac_mass() == 0.0)
        return I;
    return I + 2.0 * m.dirac_mass() * lambda_moment(m.profile(), lambda);
}

std::vector<double> potential(const RadialProfile& f, double M, double lambda,
                              const std::vector<double>& at)
{
    const int N = f.grid().dim();
    const auto& w = f.grid().volumes();
    const auto& c = f.grid().centers();
    std::vector<double> out(at.size());
    for (std::size_t a = 0; a < at.size(); ++a) {
        const double r = at[a];
        double s = M * std::pow(r, lambda);
        for (std::size_t j = 0; j < f.size(); ++j)
            if (f[j] != 0.0)
                s += sphere_mean_kernel(N, lambda, r, c[j]) * w[j] * f[j];
        out[a] = s / lambda;
    }
    return out;
}

std::vector<double> potential_at_centers(const RadialProfile& f, double M, double lambda)
{
    const auto k = kernel_matrix(f.grid(), lambda);
    const auto& w = f.grid().volumes();
    const auto& c = f.grid().centers();
    const std::size_t K = f.size();
    std::vector<double> wf(K), out(K);
    for (std::size_t i = 0; i < K; ++i)
        wf[i] = w[i] * f[i];
    k->apply(wf.data(), out.data());
    for (std::size_t i = 0; i < K; ++i)
        out[i] = (out[i] + M * std::pow(c[i], lambda)) / lambda;
    return out;
}

double quotient(const RelaxedMeasure& m, const Params& p)
{
    if (!(p.q > 0.0 && p.q < 1.0))
        throw std::invalid_argument("quotient: requires 0 < q < 1");
    const Moments mo = moments(m, p);
    if (!(mo.lq_integral > 0.0))
        throw DegenerateError("quotient: profile vanishes identically (int rho^q = 0)");
    const double num = relaxed_interaction(m, p.lambda);
    const double log_den = p.alpha * std::log(mo.mass) + p.lq_exponent() * std::log(mo.lq_integral);
    return num * std::exp(-log_den);
}

}  // namespace rhls
