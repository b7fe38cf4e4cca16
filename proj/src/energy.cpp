#include "rhls/energy.hpp"

#include <algorithm>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <stdexcept>

#include "rhls/constants.hpp"
#include "rhls/error.hpp"
#include "rhls/functionals.hpp"
#include "rhls/kernel.hpp"

namespace rhls {

namespace {

void require_fast_diffusion(const Params& p)
{
    if (!(p.q > 0.0 && p.q < 1.0))
        throw std::invalid_argument("free energy requires 0 < q < 1");
}

}  // namespace

double free_energy_relaxed(const RelaxedMeasure& m, const Params& p)
{
    require_fast_diffusion(p);
    const auto& f = m.profile();
    const double S = lq_integral(f, p.q);
    const double I = interaction_energy(f, p.lambda);
    const double J = m.dirac_mass() > 0.0 ? lambda_moment(f, p.lambda) : 0.0;
    return -S / (1.0 - p.q) + I / (2.0 * p.lambda) + m.dirac_mass() * J / p.lambda;
}

double free_energy(const RadialProfile& f, const Params& p)
{
    return free_energy_relaxed(RelaxedMeasure(f, 0.0), p);
}

double g_functional(const RelaxedMeasure& m, const Params& p) { return free_energy_relaxed(m, p); }

Rescale optimal_rescale(const RelaxedMeasure& m, const Params& p)
{
    require_fast_diffusion(p);
    const double a = p.N * (1.0 - p.q);
    if (!(p.lambda > a))
        throw std::invalid_argument("optimal_rescale: requires lambda > N(1-q)");
    const Moments mo = moments(m, p);
    if (!(mo.mass > 0.0) || !(mo.lq_integral > 0.0))
        throw DegenerateError("optimal_rescale: measure must carry a positive density");
    const double D = relaxed_interaction(m, p.lambda);
    if (!(D > 0.0))
        throw DegenerateError("optimal_rescale: interaction energy vanishes");
    // Normalised coefficients: F[rho_l] = -l^a A + l^lambda B.
    const double A = mo.lq_integral / ((1.0 - p.q) * std::pow(mo.mass, p.q));
    const double B = D / (2.0 * p.lambda * mo.mass * mo.mass);
    Rescale out;
    out.ell_star = std::pow(a * A / (p.lambda * B), 1.0 / (p.lambda - a));
    out.min_energy = -kappa_star(p.N, p.lambda, p.q) * std::pow(quotient(m, p), -a / (p.lambda - a));
    return out;
}

Rescale optimal_rescale(const RadialProfile& f, const Params& p)
{
    return optimal_rescale(RelaxedMeasure(f, 0.0), p);
}

RelaxedMeasure normalize_and_dilate(const RelaxedMeasure& m, double ell)
{
    const double total = mass(m.profile()) + m.dirac_mass();
    if (!(total > 0.0))
        throw DegenerateError("normalize_and_dilate: zero total mass");
    const RadialProfile f = ell == 1.0 ? m.profile() : dilate(m.profile(), ell);
    // Resampling perturbs the density mass slightly; restore it before normalising.
    const double target = mass(m.profile());
    const double got = mass(f);
    const RadialProfile g = got > 0.0 ? f.scaled(target / got / total) : f;
    return RelaxedMeasure(g, m.dirac_mass() / total);
}

double virial_residual(const RelaxedMeasure& m, const Params& p)
{
    const double S = lq_integral(m.profile(), p.q);
    if (!(S > 0.0))
        throw DegenerateError("virial_residual: int rho^q = 0");
    const double D = relaxed_interaction(m, p.lambda);
    return std::abs(D - 2.0 * p.N * S) / (2.0 * p.N * S);
}

EnergyReport energy_report(const RelaxedMeasure& m, const Params& p, std::optional<double> C_value)
{
    EnergyReport r;
    r.free_energy = free_energy_relaxed(m, p);
    const Rescale s = optimal_rescale(m, p);
    r.rescale_ell = s.ell_star;
    r.min_energy = s.min_energy;
    if (C_value) {
        const double a = p.N * (1.0 - p.q);
        r.lower_bound = -kappa_star(p.N, p.lambda, p.q) * std::pow(*C_value, -a / (p.lambda - a));
    }
    r.virial_residual = virial_residual(m, p);
    return r;
}

Coercivity coercivity(const Params& p, double C_value)
{
    require_fast_diffusion(p);
    if (!(C_value > 0.0))
        throw std::invalid_argument("coercivity: C_value must be positive");
    const double e = p.N * (1.0 - p.q) / p.lambda;
    if (!(e < 1.0))
        throw std::invalid_argument("coercivity: requires q > N/(N+lambda)");
    // First-order condition (e/(1-q)) X^{e-1} C^{-e} = 1/(4 lambda).
    const double X = std::pow(4.0 * p.lambda * e / ((1.0 - p.q) * std::pow(C_value, e)), 1.0 / (1.0 - e));
    Coercivity c;
    c.argmax = X;
    c.constant = std::pow(X / C_value, e) / (1.0 - p.q) - X / (4.0 * p.lambda);
    return c;
}

double coercivity_constant(const Params& p, double C_value) { return coercivity(p, C_value).constant; }

namespace {

// Fraction of the sphere |y| = s lying inside B_r(a), |a| = d, in dimension N.
double cap_fraction(int N, double s, double d, double r)
{
    if (s + d < r)
        return 1.0;
    if (std::abs(s - d) >= r)
        return 0.0;
    if (N == 1)
        return 0.5 * ((std::abs(s - d) < r ? 1.0 : 0.0) + (s + d < r ? 1.0 : 0.0));
    // Inside iff cos(theta) > c0.
    const double c0 = std::clamp((s * s + d * d - r * r) / (2.0 * s * d), -1.0, 1.0);
    const double half = 0.5 * boost::math::ibeta(0.5 * (N - 1), 0.5, 1.0 - c0 * c0);
    return c0 >= 0.0 ? half : 1.0 - half;
}

}  // namespace

MomentBound moment_bound_check(const RelaxedMeasure& m, const Params& p, double a, double r, double tol)
{
    if (!(r > 0.0))
        throw std::invalid_argument("moment_bound_check: radius must be positive");
    const auto& f = m.profile();
    const auto& w = f.grid().volumes();
    const auto& c = f.grid().centers();
    const double total = mass(f) + m.dirac_mass();
    if (!(total > 0.0))
        throw DegenerateError("moment_bound_check: zero total mass");
    const double d = std::abs(a);
    double ball = d < r ? m.dirac_mass() : 0.0;
    double shifted = m.dirac_mass() * std::pow(d, p.lambda);
    for (std::size_t j = 0; j < f.size(); ++j) {
        if (f[j] == 0.0)
            continue;
        ball += w[j] * f[j] * cap_fraction(p.N, c[j], d, r);
        shifted += w[j] * f[j] * sphere_mean_kernel(p.N, p.lambda, d, c[j]);
    }
    ball /= total;
    shifted /= total;
    const double k = std::max(p.lambda - 1.0, 0.0);
    MomentBound out;
    out.lhs = relaxed_interaction(m, p.lambda) / (total * total);
    out.rhs = std::pow(2.0, 1.0 - k) * ball * (shifted - std::pow(2.0, k) * std::pow(r, p.lambda));
    out.holds = out.lhs >= out.rhs - tol * std::max(1.0, std::abs(out.lhs));
    return out;
}

}  // namespace rhls
