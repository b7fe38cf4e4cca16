#include "rhls/profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rhls {

RadialProfile::RadialProfile(RadialGrid grid, std::vector<double> values, bool is_signed)
    : grid_(std::move(grid)), values_(std::move(values)), signed_(is_signed)
{
    if (values_.size() != grid_.size())
        throw std::invalid_argument("RadialProfile: value count does not match grid");
    for (double v : values_) {
        if (!std::isfinite(v))
            throw std::invalid_argument("RadialProfile: non-finite value");
        if (!signed_ && v < 0.0)
            throw std::invalid_argument("RadialProfile: negative value in unsigned profile");
    }
}

RadialProfile RadialProfile::scaled(double c) const
{
    if (!signed_ && c < 0.0)
        throw std::invalid_argument("RadialProfile::scaled: negative factor on a density");
    std::vector<double> v(values_);
    for (double& x : v)
        x *= c;
    return RadialProfile(grid_, std::move(v), signed_);
}

RelaxedMeasure::RelaxedMeasure(RadialProfile profile, double dirac_mass)
    : profile_(std::move(profile)), dirac_mass_(dirac_mass)
{
    if (profile_.is_signed())
        throw std::invalid_argument("RelaxedMeasure: profile must be a nonnegative density");
    if (!(dirac_mass_ >= 0.0) || !std::isfinite(dirac_mass_))
        throw std::invalid_argument("RelaxedMeasure: dirac mass must be finite and >= 0");
}

RadialProfile AnalyticProfile::sample(const RadialGrid& grid) const
{
    std::vector<double> v(grid.size());
    const auto& c = grid.centers();
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = density(c[i]);
    return RadialProfile(grid, std::move(v));
}

double interpolate(const RadialProfile& f, double r)
{
    const auto& c = f.grid().centers();
    const auto& v = f.values();
    const std::size_t K = c.size();
    if (r <= c.front())
        return v.front();
    if (r >= c.back()) {
        if (K < 2 || v[K - 1] <= 0.0 || v[K - 2] <= 0.0)
            return r == c.back() ? v.back() : 0.0;
        const double slope = std::log(v[K - 1] / v[K - 2]) / std::log(c[K - 1] / c[K - 2]);
        return v[K - 1] * std::pow(r / c[K - 1], std::min(slope, 0.0));
    }
    const std::size_t hi = static_cast<std::size_t>(std::upper_bound(c.begin(), c.end(), r) - c.begin());
    const std::size_t lo = hi - 1;
    const double a = v[lo], b = v[hi];
    if (a > 0.0 && b > 0.0) {
        const double t = std::log(r / c[lo]) / std::log(c[hi] / c[lo]);
        return a * std::pow(b / a, t);
    }
    const double t = (r - c[lo]) / (c[hi] - c[lo]);
    return a + t * (b - a);
}

RadialProfile dilate(const RadialProfile& f, double ell)
{
    if (!(ell > 0.0) || !std::isfinite(ell))
        throw std::invalid_argument("dilate: scale must be positive");
    const auto& c = f.grid().centers();
    const double amp = std::pow(ell, -f.grid().dim());
    std::vector<double> v(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        v[i] = amp * interpolate(f, c[i] / ell);
    if (!f.is_signed())
        for (double& x : v)
            x = std::max(x, 0.0);
    return RadialProfile(f.grid(), std::move(v), f.is_signed());
}

RadialProfile dilate_exact(const RadialProfile& f, double ell)
{
    if (!(ell > 0.0) || !std::isfinite(ell))
        throw std::invalid_argument("dilate_exact: scale must be positive");
    const double amp = std::pow(ell, -f.grid().dim());
    std::vector<double> v(f.values());
    for (double& x : v)
        x *= amp;
    return RadialProfile(f.grid().scaled(ell), std::move(v), f.is_signed());
}

RadialProfile resample(const RadialProfile& f, const RadialGrid& target)
{
    if (target.dim() != f.grid().dim())
        throw std::invalid_argument("resample: dimension mismatch");
    const auto& c = target.centers();
    std::vector<double> v(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        v[i] = interpolate(f, c[i]);
    if (!f.is_signed())
        for (double& x : v)
            x = std::max(x, 0.0);
    return RadialProfile(target, std::move(v), f.is_signed());
}

}  // namespace rhls
