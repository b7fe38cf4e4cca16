#pragma once
#include <functional>
#include <string>
#include <vector>

#include "rhls/grid.hpp"

namespace rhls {

/// Point values at cell centres of a RadialGrid. Unsigned profiles are densities (values >= 0).
class RadialProfile {
public:
    RadialProfile(RadialGrid grid, std::vector<double> values, bool is_signed = false);

    const RadialGrid& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    bool is_signed() const { return signed_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }

    RadialProfile scaled(double c) const;

private:
    RadialGrid grid_;
    std::vector<double> values_;
    bool signed_;
};

/// Density plus a point mass at the origin.
class RelaxedMeasure {
public:
    RelaxedMeasure(RadialProfile profile, double dirac_mass = 0.0);

    const RadialProfile& profile() const { return profile_; }
    double dirac_mass() const { return dirac_mass_; }
    const RadialGrid& grid() const { return profile_.grid(); }

private:
    RadialProfile profile_;
    double dirac_mass_;
};

/// Radial function given in closed form; sampled at cell centres on demand.
struct AnalyticProfile {
    std::string name;
    std::function<double(double)> density;

    RadialProfile sample(const RadialGrid& grid) const;
};

/// Interpolates f at radius r: log-log between positive neighbours, linear otherwise;
/// constant below the first centre, power-law (or zero) beyond the last.
double interpolate(const RadialProfile& f, double r);

/// Mass-preserving dilation l^{-N} f(r / l), resampled onto the same grid.
RadialProfile dilate(const RadialProfile& f, double ell);
/// Exact dilation: ell^{-N} f(r / ell) carried on the grid scaled by ell.
RadialProfile dilate_exact(const RadialProfile& f, double ell);

/// Resamples f onto another grid with the same dimension.
RadialProfile resample(const RadialProfile& f, const RadialGrid& target);

}  // namespace rhls
