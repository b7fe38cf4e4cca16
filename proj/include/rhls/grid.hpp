#pragma once
#include <cstddef>
#include <memory>
#include <vector>

namespace rhls {

class KernelMatrix;

/// Cell-centred radial grid on [0, R_max] with exact volume weights
/// |S^{N-1}| * int_cell r^{N-1} dr. Immutable and cheap to copy (shared data).
class RadialGrid {
public:
    /// `linear_cells` uniform cells on [0, r_inner], then geometric cells up to r_max.
    /// Geometric cells use the geometric mean of their edges as centre, so successive
    /// centres share a constant ratio.
    static RadialGrid geometric(int N, double r_max, std::size_t cells, double r_inner,
                                std::size_t linear_cells = 16);
    /// Uniform cells with midpoint centres.
    static RadialGrid uniform(int N, double r_max, std::size_t cells);
    /// Arbitrary edges starting at 0; midpoint centres.
    static RadialGrid from_edges(int N, std::vector<double> edges);
    /// Given centres (increasing, positive) and r_max. A linear head followed by a geometric tail
    /// (the layout of `geometric`, `uniform` and their dilations) is rebuilt exactly; otherwise
    /// edges sit at the midpoints.
    static RadialGrid from_centers(int N, std::vector<double> centers, double r_max);

    int dim() const;
    std::size_t size() const;
    double r_max() const;
    const std::vector<double>& edges() const;
    const std::vector<double>& centers() const;
    const std::vector<double>& volumes() const;

    /// First cell of the geometric part (== size() when there is none).
    std::size_t geometric_begin() const;
    /// Ratio between successive geometric centres (0 when there is no geometric part).
    double geometric_ratio() const;

    /// The same cells with every length multiplied by ell (volumes by ell^N).
    RadialGrid scaled(double ell) const;

    /// Index of the cell containing r (clamped to the grid).
    std::size_t locate(double r) const;

    bool same_as(const RadialGrid& other) const { return data_ == other.data_; }

    struct Data;

private:
    explicit RadialGrid(std::shared_ptr<Data> d) : data_(std::move(d)) {}
    std::shared_ptr<Data> data_;
    friend std::shared_ptr<const KernelMatrix> kernel_matrix(const RadialGrid&, double);
};

}  // namespace rhls
