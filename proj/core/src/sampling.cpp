#include "lavaurs/sampling.hpp"

#include <tbb/global_control.h>
#include <tbb/parallel_for.h>

#include <boost/random/sobol.hpp>
#include <cmath>
#include <memory>
#include <mutex>

namespace lavaurs {

std::vector<std::vector<Real>> sobol_points(std::size_t count, std::size_t dims, std::uint64_t skip) {
  if (dims == 0) throw Error(ErrorKind::invalid_argument, "sobol_points needs dims >= 1");
  boost::random::sobol engine(dims);
  // skip the origin
  engine.discard(dims * (skip + 1));
  const Real scale = Real(1) / (static_cast<Real>(boost::random::sobol::max()) + 1);
  std::vector<std::vector<Real>> out(count, std::vector<Real>(dims));
  for (auto& p : out)
    for (auto& x : p) x = static_cast<Real>(engine()) * scale;
  return out;
}

Complex disk_point(Complex center, Real radius, Real u, Real v) {
  return center + std::polar(radius * std::sqrt(u), 2 * kPi * v);
}

namespace {
std::mutex g_control_mutex;
std::unique_ptr<tbb::global_control> g_control;
}  // namespace

void set_thread_limit(int threads) {
  std::lock_guard<std::mutex> lock(g_control_mutex);
  g_control.reset();
  if (threads > 0)
    g_control = std::make_unique<tbb::global_control>(tbb::global_control::max_allowed_parallelism,
                                                      static_cast<std::size_t>(threads));
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  tbb::parallel_for(std::size_t(0), n, [&](std::size_t i) { body(i); });
}

}  // namespace lavaurs
