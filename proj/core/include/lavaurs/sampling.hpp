#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "lavaurs/types.hpp"

namespace lavaurs {

// `count` points of the Sobol sequence in [0,1)^dims after the origin and `skip` further points; deterministic.
std::vector<std::vector<Real>> sobol_points(std::size_t count, std::size_t dims, std::uint64_t skip = 0);

// Point of the disk D(center, radius) from two uniforms, area-uniform.
Complex disk_point(Complex center, Real radius, Real u, Real v);

// Caps the worker count used by parallel_for; 0 restores the default.
void set_thread_limit(int threads);
// Runs body(i) for i in [0, n); bodies must not share mutable state.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace lavaurs
