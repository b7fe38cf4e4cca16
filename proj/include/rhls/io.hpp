#pragma once
#include <iosfwd>
#include <optional>
#include <string>

#include "rhls/flow.hpp"
#include "rhls/profile.hpp"

namespace rhls {

/// Parameters recorded in a profile file header.
struct ProfileHeader {
    int N = 1;
    std::optional<double> lambda;
    std::optional<double> q;
    double r_max = 0.0;
    std::size_t K = 0;
    double dirac_mass = 0.0;
};

/// "# N=.. lambda=.. q=.. R_max=.. K=.. dirac_mass=.." then "r_center,value" rows.
void write_profile_csv(std::ostream& os, const RelaxedMeasure& m, std::optional<double> lambda,
                       std::optional<double> q);
void write_profile_csv(const std::string& path, const RelaxedMeasure& m, std::optional<double> lambda,
                       std::optional<double> q);

struct ProfileFile {
    ProfileHeader header;
    RelaxedMeasure measure;
};

/// Reads a file written by write_profile_csv; the grid is rebuilt from the centres.
ProfileFile read_profile_csv(std::istream& is);
ProfileFile read_profile_csv(const std::string& path);

/// "t,mass,energy,innermost_mass,dissipation" rows.
void write_history_csv(std::ostream& os, const FlowState& s);
void write_history_csv(const std::string& path, const FlowState& s);

}  // namespace rhls
