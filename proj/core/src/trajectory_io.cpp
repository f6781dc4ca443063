#include "hartree/trajectory_io.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace hartree {

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
  out << "t,M,H,E,L_V,Gamma,GammaPrime";
  for (const WindowRule& w : trajectory.windows) out << ',' << w.label();
  out << '\n';
  const auto precision = out.precision(17);
  for (const Sample& s : trajectory.samples) {
    out << s.t << ',' << s.q.M << ',' << s.q.H << ',' << s.q.E << ',' << s.q.LV << ',' << s.virial.gamma << ','
        << s.virial.gamma_prime + 0.0;  // + 0.0 turns -0 into 0
    for (double c : s.concentration) out << ',' << c;
    out << '\n';
  }
  out.precision(precision);
}

void write_trajectory_sidecar(std::ostream& out, const Trajectory& trajectory, const RunMetadata& meta) {
  nlohmann::ordered_json j;
  j["a"] = meta.a;
  j["boundary_flags"] = std::count_if(trajectory.samples.begin(), trajectory.samples.end(),
                                      [](const Sample& s) { return s.virial.boundary_flag; });
  j["config_hash"] = meta.config_hash;
  j["d"] = meta.d;
  j["dt"] = meta.dt;
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();
  for (const auto& [key, value] : meta.extra) extra[key] = value;
  j["extra"] = extra;
  j["guarded_steps"] = trajectory.guarded_steps;
  j["n"] = meta.n;
  j["r_max"] = meta.r_max;
  j["samples"] = trajectory.samples.size();
  j["scheme"] = to_string(meta.scheme);
  j["steps"] = trajectory.steps;
  j["stop_reason"] = to_string(trajectory.stop);
  j["stretch"] = meta.stretch;
  nlohmann::ordered_json windows = nlohmann::ordered_json::array();
  for (const WindowRule& w : trajectory.windows) windows.push_back(w.label());
  j["windows"] = windows;
  out << j.dump(2) << '\n';
}

std::vector<double> TrajectoryTable::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw std::out_of_range("trajectory table has no column '" + name + "'");
  const auto k = static_cast<std::size_t>(it - columns.begin());
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row[k]);
  return out;
}

TrajectoryTable read_trajectory_csv(std::istream& in) {
  TrajectoryTable table;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("trajectory CSV is empty");
  std::istringstream header(line);
  for (std::string cell; std::getline(header, cell, ',');) table.columns.push_back(cell);
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream cells(line);
    for (std::string cell; std::getline(cells, cell, ',');) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw std::runtime_error("trajectory CSV line " + std::to_string(line_no) + ": bad number '" + cell + "'");
      }
    }
    if (row.size() != table.columns.size()) {
      throw std::runtime_error("trajectory CSV line " + std::to_string(line_no) + ": wrong column count");
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace hartree
