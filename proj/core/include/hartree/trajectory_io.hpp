#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "hartree/evolution.hpp"

namespace hartree {

/// Run description written next to a trajectory.
struct RunMetadata {
  int d = 0;
  double a = 0.0;
  int n = 0;
  double r_max = 0.0;
  double stretch = 0.0;
  double dt = 0.0;
  Scheme scheme = Scheme::StrangSplit;
  /// Hex digest identifying the configuration that produced the run.
  std::string config_hash;
  /// Additional scalar entries (e.g. fitted T*), written in key order.
  std::map<std::string, double> extra;
};

/// CSV with header t,M,H,E,L_V,Gamma,GammaPrime followed by one column per
/// concentration window; values are written with 17 significant digits.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

/// JSON object with the metadata, stop_reason, steps, sample count, window
/// labels and boundary flag count. Keys are sorted and no timestamps are
/// written, so identical runs produce identical files.
void write_trajectory_sidecar(std::ostream& out, const Trajectory& trajectory, const RunMetadata& meta);

/// Column-wise contents of a trajectory CSV.
struct TrajectoryTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  [[nodiscard]] std::vector<double> column(const std::string& name) const;
};

TrajectoryTable read_trajectory_csv(std::istream& in);

}  // namespace hartree
