#include "rhls/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace rhls {

namespace {

std::ofstream open_out(const std::string& path)
{
    std::ofstream os(path);
    if (!os)
        throw std::runtime_error("cannot write " + path);
    os << std::setprecision(17);
    return os;
}

}  // namespace

void write_profile_csv(std::ostream& os, const RelaxedMeasure& m, std::optional<double> lambda,
                       std::optional<double> q)
{
    const auto& g = m.grid();
    os << std::setprecision(17) << "# N=" << g.dim();
    if (lambda)
        os << " lambda=" << *lambda;
    if (q)
        os << " q=" << *q;
    os << " R_max=" << g.r_max() << " K=" << g.size() << " dirac_mass=" << m.dirac_mass() << "\n";
    os << "r_center,value\n";
    const auto& c = g.centers();
    for (std::size_t i = 0; i < g.size(); ++i)
        os << c[i] << "," << m.profile()[i] << "\n";
}

void write_profile_csv(const std::string& path, const RelaxedMeasure& m, std::optional<double> lambda,
                       std::optional<double> q)
{
    auto os = open_out(path);
    write_profile_csv(os, m, lambda, q);
}

ProfileFile read_profile_csv(std::istream& is)
{
    std::string line;
    if (!std::getline(is, line) || line.rfind("#", 0) != 0)
        throw std::invalid_argument("profile csv: missing header line");
    ProfileHeader h;
    bool have_N = false, have_R = false;
    std::istringstream hs(line.substr(1));
    std::string tok;
    while (hs >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("profile csv: malformed header token '" + tok + "'");
        const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        try {
            if (key == "N") {
                h.N = std::stoi(val);
                have_N = true;
            } else if (key == "lambda") {
                h.lambda = std::stod(val);
            } else if (key == "q") {
                h.q = std::stod(val);
            } else if (key == "R_max") {
                h.r_max = std::stod(val);
                have_R = true;
            } else if (key == "K") {
                h.K = static_cast<std::size_t>(std::stoul(val));
            } else if (key == "dirac_mass") {
                h.dirac_mass = std::stod(val);
            }
        } catch (const std::logic_error&) {
            throw std::invalid_argument("profile csv: bad value for " + key);
        }
    }
    if (!have_N || !have_R)
        throw std::invalid_argument("profile csv: header needs N and R_max");
    if (!std::getline(is, line) || line.rfind("r_center", 0) != 0)
        throw std::invalid_argument("profile csv: missing column header");
    std::vector<double> c, v;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("profile csv: malformed row '" + line + "'");
        try {
            c.push_back(std::stod(line.substr(0, comma)));
            v.push_back(std::stod(line.substr(comma + 1)));
        } catch (const std::logic_error&) {
            throw std::invalid_argument("profile csv: malformed row '" + line + "'");
        }
    }
    if (h.K != 0 && h.K != c.size())
        throw std::invalid_argument("profile csv: row count does not match K");
    h.K = c.size();
    RadialGrid g = RadialGrid::from_centers(h.N, std::move(c), h.r_max);
    return {h, RelaxedMeasure(RadialProfile(std::move(g), std::move(v)), h.dirac_mass)};
}

ProfileFile read_profile_csv(const std::string& path)
{
    std::ifstream is(path);
    if (!is)
        throw std::invalid_argument("cannot read " + path);
    return read_profile_csv(is);
}

void write_history_csv(std::ostream& os, const FlowState& s)
{
    os << std::setprecision(17) << "t,mass,energy,innermost_mass,dissipation\n";
    for (const auto& r : s.history)
        os << r.time << "," << r.mass << "," << r.free_energy << "," << r.innermost_mass << "," << r.dissipation
           << "\n";
}

void write_history_csv(const std::string& path, const FlowState& s)
{
    auto os = open_out(path);
    write_history_csv(os, s);
}

}  // namespace rhls
