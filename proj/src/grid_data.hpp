#pragma once
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "rhls/grid.hpp"

namespace rhls {

struct RadialGrid::Data {
    int N = 1;
    std::vector<double> edges;
    std::vector<double> centers;
    std::vector<double> volumes;
    std::size_t geometric_begin = 0;
    double geometric_ratio = 0.0;

    // One kernel per lambda, built once under the mutex.
    std::mutex kernel_mutex;
    std::map<double, std::shared_ptr<const KernelMatrix>> kernels;
};

}  // namespace rhls
