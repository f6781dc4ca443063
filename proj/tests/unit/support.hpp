#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "hartree/functionals.hpp"
#include "hartree/ground_state.hpp"

namespace hartree::test {

/// Models are expensive to assemble; tests share them per configuration.
inline const RadialModel& cached_model(int d, double a, int n, double r_max, double stretch) {
  using Key = std::tuple<int, double, int, double, double>;
  static std::map<Key, std::unique_ptr<RadialModel>> cache;
  static std::mutex mutex;
  const std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[Key{d, a, n, r_max, stretch}];
  if (!slot) slot = std::make_unique<RadialModel>(RadialModel::build(make_params(d, a), n, r_max, stretch));
  return *slot;
}

/// Model on a grid without origin factor, for profiles that are smooth at r = 0.
inline const RadialModel& smooth_model(int d, double a, int n, double r_max, double stretch) {
  using Key = std::tuple<int, double, int, double, double>;
  static std::map<Key, std::unique_ptr<RadialModel>> cache;
  static std::mutex mutex;
  const std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[Key{d, a, n, r_max, stretch}];
  if (!slot) {
    GridOptions opts;
    opts.stretch = stretch;
    slot = std::make_unique<RadialModel>(make_params(d, a), RadialGrid::build(d, n, r_max, opts));
  }
  return *slot;
}

inline const GroundStateResult& cached_ground_state(const RadialModel& model) {
  static std::map<const RadialModel*, std::unique_ptr<GroundStateResult>> cache;
  static std::mutex mutex;
  const std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[&model];
  if (!slot) slot = std::make_unique<GroundStateResult>(solve_ground_state(model));
  return *slot;
}

inline double rel(double value, double reference) { return std::abs(value - reference) / std::abs(reference); }

}  // namespace hartree::test
