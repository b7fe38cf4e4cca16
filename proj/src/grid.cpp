#include "rhls/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "grid_data.hpp"
#include "rhls/special.hpp"

namespace rhls {

namespace {

void fill_volumes(RadialGrid::Data& d)
{
    const double area = sphere_area(d.N);
    const std::size_t K = d.edges.size() - 1;
    d.volumes.resize(K);
    for (std::size_t i = 0; i < K; ++i) {
        const double a = d.edges[i], b = d.edges[i + 1];
        // b^N - a^N without cancellation: (b-a) * sum_k b^k a^{N-1-k}
        double s = 0.0;
        double bk = 1.0;
        for (int k = 0; k < d.N; ++k) {
            s += bk * std::pow(a, d.N - 1 - k);
            bk *= b;
        }
        d.volumes[i] = area * (b - a) * s / d.N;
    }
}

void check_edges(const std::vector<double>& e)
{
    if (e.size() < 2)
        throw std::invalid_argument("RadialGrid: need at least one cell");
    if (e.front() != 0.0)
        throw std::invalid_argument("RadialGrid: first edge must be 0");
    for (std::size_t i = 1; i < e.size(); ++i)
        if (!(e[i] > e[i - 1]) || !std::isfinite(e[i]))
            throw std::invalid_argument("RadialGrid: edges must be strictly increasing and finite");
}

}  // namespace

RadialGrid RadialGrid::geometric(int N, double r_max, std::size_t cells, double r_inner,
                                 std::size_t linear_cells)
{
    if (N < 1)
        throw std::invalid_argument("RadialGrid: dimension must be >= 1");
    if (!(r_inner > 0.0) || !(r_max > r_inner))
        throw std::invalid_argument("RadialGrid: need 0 < r_inner < r_max");
    if (linear_cells < 1 || cells < linear_cells + 2)
        throw std::invalid_argument("RadialGrid: too few cells for the geometric part");
    auto d = std::make_shared<Data>();
    d->N = N;
    const std::size_t G = cells - linear_cells;
    d->edges.resize(cells + 1);
    for (std::size_t i = 0; i <= linear_cells; ++i)
        d->edges[i] = r_inner * static_cast<double>(i) / static_cast<double>(linear_cells);
    const double log_ratio = std::log(r_max / r_inner) / static_cast<double>(G);
    for (std::size_t j = 1; j <= G; ++j)
        d->edges[linear_cells + j] = r_inner * std::exp(log_ratio * static_cast<double>(j));
    d->edges[cells] = r_max;
    d->centers.resize(cells);
    for (std::size_t i = 0; i < linear_cells; ++i)
        d->centers[i] = 0.5 * (d->edges[i] + d->edges[i + 1]);
    for (std::size_t j = 0; j < G; ++j)
        d->centers[linear_cells + j] = r_inner * std::exp(log_ratio * (static_cast<double>(j) + 0.5));
    d->geometric_begin = linear_cells;
    d->geometric_ratio = std::exp(log_ratio);
    fill_volumes(*d);
    return RadialGrid(std::move(d));
}

RadialGrid RadialGrid::uniform(int N, double r_max, std::size_t cells)
{
    if (!(r_max > 0.0) || cells < 1)
        throw std::invalid_argument("RadialGrid: need r_max > 0 and cells >= 1");
    std::vector<double> e(cells + 1);
    for (std::size_t i = 0; i <= cells; ++i)
        e[i] = r_max * static_cast<double>(i) / static_cast<double>(cells);
    e[cells] = r_max;
    return from_edges(N, std::move(e));
}

RadialGrid RadialGrid::from_edges(int N, std::vector<double> edges)
{
    if (N < 1)
        throw std::invalid_argument("RadialGrid: dimension must be >= 1");
    check_edges(edges);
    auto d = std::make_shared<Data>();
    d->N = N;
    d->edges = std::move(edges);
    const std::size_t K = d->edges.size() - 1;
    d->centers.resize(K);
    for (std::size_t i = 0; i < K; ++i)
        d->centers[i] = 0.5 * (d->edges[i] + d->edges[i + 1]);
    d->geometric_begin = K;
    d->geometric_ratio = 0.0;
    fill_volumes(*d);
    return RadialGrid(std::move(d));
}

RadialGrid RadialGrid::from_centers(int N, std::vector<double> centers, double r_max)
{
    if (N < 1)
        throw std::invalid_argument("RadialGrid: dimension must be >= 1");
    const std::size_t K = centers.size();
    if (K < 1 || !(centers.front() > 0.0) || !(r_max > centers.back()))
        throw std::invalid_argument("RadialGrid: centres must be positive and below r_max");
    const auto& c = centers;
    auto close = [](double a, double b, double tol) { return std::abs(a - b) <= tol * std::abs(b); };

    // Geometric tail: constant centre ratio, centres at geometric means of their edges.
    std::size_t G = K;
    double ratio = 0.0;
    if (K >= 4) {
        ratio = c[K - 1] / c[K - 2];
        G = K - 2;
        while (G > 0 && close(c[G] / c[G - 1], ratio, 1e-11))
            --G;
        if (K - G < 3 || !(ratio > 1.0))
            G = K;
        G = std::max<std::size_t>(G, 1);
    }
    std::vector<double> e(K + 1, 0.0);
    e[K] = r_max;
    bool exact = true;
    if (G < K) {
        e[G] = c[G] / std::sqrt(ratio);
        for (std::size_t i = G + 1; i < K; ++i)
            e[i] = std::sqrt(c[i - 1] * c[i]);
    }
    // Linear head: centres at arithmetic midpoints, starting from r = 0.
    double edge = 0.0;
    for (std::size_t i = 0; i < G && exact; ++i) {
        edge = 2.0 * c[i] - edge;
        exact = edge > c[i];
        if (i + 1 < G)
            e[i + 1] = edge;
    }
    exact = exact && close(edge, G < K ? e[G] : r_max, 1e-9);
    if (!exact) {
        G = K;
        ratio = 0.0;
        for (std::size_t i = 1; i < K; ++i)
            e[i] = 0.5 * (c[i - 1] + c[i]);
    }
    e[0] = 0.0;
    check_edges(e);
    for (std::size_t i = 0; i < K; ++i)
        if (!(c[i] > e[i] && c[i] < e[i + 1]))
            throw std::invalid_argument("RadialGrid: centres must be strictly increasing");
    auto d = std::make_shared<Data>();
    d->N = N;
    d->edges = std::move(e);
    d->centers = std::move(centers);
    d->geometric_begin = G;
    d->geometric_ratio = G < K ? ratio : 0.0;
    fill_volumes(*d);
    return RadialGrid(std::move(d));
}

int RadialGrid::dim() const { return data_->N; }
std::size_t RadialGrid::size() const { return data_->centers.size(); }
double RadialGrid::r_max() const { return data_->edges.back(); }
const std::vector<double>& RadialGrid::edges() const { return data_->edges; }
const std::vector<double>& RadialGrid::centers() const { return data_->centers; }
const std::vector<double>& RadialGrid::volumes() const { return data_->volumes; }
std::size_t RadialGrid::geometric_begin() const { return data_->geometric_begin; }
double RadialGrid::geometric_ratio() const { return data_->geometric_ratio; }

RadialGrid RadialGrid::scaled(double ell) const
{
    if (!(ell > 0.0) || !std::isfinite(ell))
        throw std::invalid_argument("RadialGrid::scaled: ell must be positive");
    auto d = std::make_shared<Data>();
    d->N = data_->N;
    d->edges = data_->edges;
    d->centers = data_->centers;
    d->volumes = data_->volumes;
    for (auto& e : d->edges)
        e *= ell;
    for (auto& c : d->centers)
        c *= ell;
    const double vol = std::pow(ell, d->N);
    for (auto& v : d->volumes)
        v *= vol;
    d->geometric_begin = data_->geometric_begin;
    d->geometric_ratio = data_->geometric_ratio;
    return RadialGrid(std::move(d));
}

std::size_t RadialGrid::locate(double r) const
{
    const auto& e = data_->edges;
    if (r <= e.front())
        return 0;
    auto it = std::upper_bound(e.begin(), e.end(), r);
    std::size_t idx = static_cast<std::size_t>(it - e.begin());
    return std::min(idx == 0 ? 0 : idx - 1, size() - 1);
}

}  // namespace rhls
