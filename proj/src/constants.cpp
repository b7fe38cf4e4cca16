#include "rhls/constants.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "rhls/error.hpp"
#include "rhls/kernel.hpp"
#include "rhls/quadrature.hpp"
#include "rhls/special.hpp"

namespace rhls {

namespace {

bool near(double a, double b) { return std::abs(a - b) <= kFamilyTolerance * std::max(1.0, std::abs(b)); }

void check_dim_lambda(int N, double lambda)
{
    if (N < 1)
        throw std::invalid_argument("dimension N must be >= 1");
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw std::invalid_argument("lambda must be positive and finite");
}

}  // namespace

double alpha_exponent(int N, double lambda, double q)
{
    check_dim_lambda(N, lambda);
    if (q == 1.0)
        throw std::invalid_argument("alpha_exponent: q = 1 is the logarithmic case");
    return (2.0 * N - q * (2.0 * N + lambda)) / (N * (1.0 - q));
}

double conformal_constant(int N, double lambda)
{
    check_dim_lambda(N, lambda);
    const double h = 0.5 * N, l2 = 0.5 * lambda;
    const double log_c = -l2 * std::log(std::numbers::pi) + log_gamma(h + l2) - log_gamma(N + l2)
                         + (1.0 + lambda / N) * (log_gamma(N) - log_gamma(h));
    return std::exp(log_c);
}

double lambda2_constant(int N, double q)
{
    if (N < 1)
        throw std::invalid_argument("dimension N must be >= 1");
    if (!(q > static_cast<double>(N) / (N + 2.0) && q < 1.0))
        throw std::invalid_argument("lambda2_constant: requires N/(N+2) < q < 1");
    const double a = N * (1.0 - q);
    const double e = 1.0 / (1.0 - q);
    const double log_c = std::log(a / (std::numbers::pi * q))
                         + (2.0 - a) / a * std::log(((N + 2.0) * q - N) / (2.0 * q))
                         + (2.0 / N) * (log_gamma(e) - log_gamma(e - 0.5 * N));
    return std::exp(log_c);
}

std::optional<double> closed_form_constant(int N, double lambda, double q)
{
    check_dim_lambda(N, lambda);
    if (near(q, 2.0 * N / (2.0 * N + lambda)))
        return conformal_constant(N, lambda);
    if (near(lambda, 2.0) && q > N / (N + 2.0) && q < 1.0)
        return lambda2_constant(N, q);
    return std::nullopt;
}

CarlsonLevin carlson_levin(int N, double lambda, double q)
{
    check_dim_lambda(N, lambda);
    if (!(q > N / (N + lambda) && q < 1.0))
        throw std::invalid_argument("carlson_levin: requires N/(N+lambda) < q < 1");
    const double d = (N + lambda) * q - N;
    const double e = 1.0 / (1.0 - q);
    const double nl = N / lambda;
    const double log_gam = log_gamma(0.5 * N) + log_gamma(e) - std::log(2.0)
                           - 0.5 * N * std::log(std::numbers::pi) - log_gamma(e - nl) - log_gamma(nl);
    const double log_c = -std::log(lambda) + std::log(d / q) / q
                         + nl * (1.0 - q) / q * std::log(N * (1.0 - q) / d) + (1.0 - q) / q * log_gam;
    CarlsonLevin out;
    out.constant = std::exp(log_c);
    out.optimizer.name = "carlson_levin";
    out.optimizer.density = [lambda, e](double r) { return std::pow(1.0 + std::pow(r, lambda), -e); };
    return out;
}

double carlson_levin_quotient(double mass, double moment, double lq, int N, double lambda, double q)
{
    if (!(mass > 0.0 && moment > 0.0 && lq > 0.0))
        throw DegenerateError("carlson_levin_quotient: integrals must be positive");
    const double b = N * (1.0 - q) / (lambda * q);
    return std::exp((1.0 - b) * std::log(mass) + b * std::log(moment) - std::log(lq) / q);
}

double carlson_levin_quotient(const AnalyticProfile& f, int N, double lambda, double q)
{
    const double area = sphere_area(N);
    const int n1 = N - 1;
    auto mass_f = [&](double r) { return std::pow(r, n1) * f.density(r); };
    auto mom_f = [&](double r) { return std::pow(r, n1 + lambda) * f.density(r); };
    auto lq_f = [&](double r) { return std::pow(r, n1) * std::pow(f.density(r), q); };
    const double m = area * integrate_half_line(mass_f, 1e-14);
    const double j = area * integrate_half_line(mom_f, 1e-14);
    const double s = area * integrate_half_line(lq_f, 1e-14);
    return carlson_levin_quotient(m, j, s, N, lambda, q);
}

namespace {

// G(v) = int_0^v u^{N-1} g(u) du with g the normalised sphere mean. Series on [0, 1/2],
// dyadic Gauss-Legendre panels toward u = 1 beyond.
class MeanPrimitive {
public:
    MeanPrimitive(int N, double lambda) : N_(N), lambda_(lambda)
    {
        const double a = -0.5 * lambda, b = 0.5 * (2.0 - N - lambda), c = 0.5 * N;
        double coef = 1.0;
        coef_.push_back(1.0);
        for (int k = 0; k < 400; ++k) {
            coef *= (a + k) * (b + k) / ((c + k) * (k + 1.0));
            if (coef == 0.0 || std::abs(coef) * std::pow(0.25, k + 1) < 1e-18)
                break;
            coef_.push_back(coef);
        }
        breaks_.push_back(0.5);
        for (int k = 1; k <= 44; ++k)
            breaks_.push_back(1.0 - 0.5 * std::ldexp(1.0, -k));
        breaks_.push_back(1.0);
        cum_.assign(breaks_.size(), 0.0);
        cum_[0] = series(0.5);
        for (std::size_t k = 1; k < breaks_.size(); ++k)
            cum_[k] = cum_[k - 1] + panel(breaks_[k - 1], breaks_[k]);
    }

    double operator()(double v) const
    {
        if (v <= 0.5)
            return series(v);
        if (v >= 1.0)
            return cum_.back();
        const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), v);
        const std::size_t k = static_cast<std::size_t>(it - breaks_.begin()) - 1;
        return cum_[k] + panel(breaks_[k], v);
    }

private:
    double series(double v) const
    {
        double s = 0.0, p = std::pow(v, N_);
        const double v2 = v * v;
        for (std::size_t k = 0; k < coef_.size(); ++k) {
            s += coef_[k] * p / (N_ + 2.0 * k);
            p *= v2;
        }
        return s;
    }
    double panel(double lo, double hi) const
    {
        auto f = [this](double u) { return std::pow(u, N_ - 1) * sphere_mean_profile(N_, lambda_, std::min(u, 1.0)); };
        return boost::math::quadrature::gauss<double, 20>::integrate(f, lo, hi);
    }

    int N_;
    double lambda_;
    std::vector<double> coef_, breaks_, cum_;
};

// F(1, t), 0 < t <= 1, in the reduced one-dimensional form.
double ratio_unit(const MeanPrimitive& G, int N, double lambda, double t)
{
    const double s = 2.0 * N + lambda;
    const double L = -std::log(t);
    double tail = 0.0;
    if (L > 0.0) {
        auto f = [&](double y) { return std::exp(-s * y) * G(std::min(t * std::exp(y), 1.0)); };
        tail = integrate(f, 0.0, L, 1e-12);
    }
    const double bracket = 2.0 * G(1.0) * std::pow(t, N + lambda) / s + tail * std::pow(t, -N);
    return N * (N + lambda) * bracket / (1.0 + std::pow(t, lambda));
}

}  // namespace

double ratio_F(int N, double lambda, double R, double S)
{
    check_dim_lambda(N, lambda);
    if (!(R > 0.0 && S > 0.0))
        throw std::invalid_argument("ratio_F: radii must be positive");
    const MeanPrimitive G(N, lambda);
    return ratio_unit(G, N, lambda, std::min(R, S) / std::max(R, S));
}

SupSearch sup_ratio_A(int N, double lambda)
{
    check_dim_lambda(N, lambda);
    const MeanPrimitive G(N, lambda);
    SupSearch out;
    auto F = [&](double t) {
        ++out.evaluations;
        return ratio_unit(G, N, lambda, t);
    };
    std::vector<double> ts = {1e-4, 1e-3, 1e-2, 0.03, 0.06, 0.1};
    for (int k = 2; k <= 19; ++k)
        ts.push_back(0.05 * k);
    ts.push_back(0.975);
    ts.push_back(1.0);
    std::vector<double> fs(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i)
        fs[i] = F(ts[i]);
    out.value_at_one = fs.back();
    const std::size_t best = static_cast<std::size_t>(std::max_element(fs.begin(), fs.end()) - fs.begin());
    double best_t = ts[best], best_f = fs[best];
    if (best > 0 && best + 1 < ts.size()) {
        double a = ts[best - 1], b = ts[best + 1];
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
        double f1 = F(x1), f2 = F(x2);
        while (b - a > 1e-10) {
            if (f1 > f2) {
                b = x2; x2 = x1; f2 = f1;
                x1 = b - gr * (b - a); f1 = F(x1);
            } else {
                a = x1; x1 = x2; f1 = f2;
                x2 = a + gr * (b - a); f2 = F(x2);
            }
        }
        const double tm = 0.5 * (a + b);
        const double fm = F(tm);
        if (fm > best_f) {
            best_f = fm;
            best_t = tm;
        }
        out.interior = true;
    }
    out.limit_at_zero = 1.0;
    if (out.limit_at_zero >= best_f) {
        out.value = out.limit_at_zero;
        out.argmax_t = 0.0;
        out.interior = false;
    } else {
        out.value = best_f;
        out.argmax_t = best_t;
    }
    return out;
}

double qbar_from_A(int N, double lambda, double A)
{
    const double u = 2.0 * N * (1.0 - 1.0 / (2.0 * A));
    return u / (u + lambda);
}

double qbar_curve(int N, double lambda)
{
    check_dim_lambda(N, lambda);
    if (lambda == 2.0)
        return N / (N + 2.0);
    return qbar_from_A(N, lambda, sup_ratio_A(N, lambda).value);
}

double B_lower_bound(int N, double lambda)
{
    check_dim_lambda(N, lambda);
    return (N + lambda) / (2.0 * N) * std::pow(2.0 * N / (N + 2.0), 0.5 * lambda);
}

double explicit_qbar_bound(int N, double lambda)
{
    check_dim_lambda(N, lambda);
    const double u = 2.0 * N * (1.0 - std::pow(2.0, -lambda));
    return u / (u + lambda);
}

double kappa_star(int N, double lambda, double q)
{
    check_dim_lambda(N, lambda);
    if (!(q < 1.0))
        throw std::invalid_argument("kappa_star: requires q < 1");
    const double a = N * (1.0 - q);
    if (!(lambda > a))
        throw std::invalid_argument("kappa_star: requires lambda > N(1-q), i.e. q > N/(N+lambda)");
    return (lambda - a) / ((1.0 - q) * lambda) * std::pow(2.0 * N, a / (lambda - a));
}

bool uniqueness_region(int N, double lambda, double q)
{
    check_dim_lambda(N, lambda);
    const bool admissible = q > N / (N + lambda) && q < 1.0;
    const bool mccann = q >= 1.0 - 1.0 / N && lambda >= 1.0;
    const bool linear = lambda >= 2.0 && lambda <= 4.0;
    return admissible && (mccann || linear);
}

Thresholds thresholds(int N, double lambda, bool with_qbar)
{
    check_dim_lambda(N, lambda);
    Thresholds t;
    t.q_admissible = N / (N + lambda);
    t.q_conformal = 2.0 * N / (2.0 * N + lambda);
    if (N >= 3)
        t.q_concentration = 1.0 - 2.0 / N;
    t.q_mccann = 1.0 - 1.0 / N;
    if (with_qbar && lambda >= 2.0)
        t.q_bar = qbar_curve(N, lambda);
    t.q_explicit_bound = explicit_qbar_bound(N, lambda);
    return t;
}

}  // namespace rhls
