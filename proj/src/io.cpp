// Copyright 2026 The nonstop-carriers Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nonstop/io.hpp"

#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace nonstop::io {

namespace {

double Number(const Json& j, const std::string& what) {
  if (!j.is_number()) throw InputError(what + " must be a number");
  return j.get<double>();
}

Vec3 ToVec3(const Json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 3) {
    throw InputError(what + " must be an array of 3 numbers");
  }
  return Vec3(Number(j[0], what), Number(j[1], what), Number(j[2], what));
}

Mat3 ToMat3(const Json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 3) {
    throw InputError(what + " must be a 3x3 array");
  }
  Mat3 m;
  for (int r = 0; r < 3; ++r) m.row(r) = ToVec3(j[r], what).transpose();
  return m;
}

Json FromVec3(const Vec3& v) { return Json::array({v.x(), v.y(), v.z()}); }

Json FromMat3(const Mat3& m) {
  Json out = Json::array();
  for (int r = 0; r < 3; ++r) out.push_back(FromVec3(m.row(r).transpose()));
  return out;
}

void RejectUnknownKeys(const Json& j, const std::set<std::string>& known,
                       const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!known.count(it.key())) {
      throw InputError("unknown key '" + it.key() + "' in " + where);
    }
  }
}

}  // namespace

LoadModel LoadModelFromJson(const Json& j) {
  if (!j.is_object()) throw InputError("load config must be a JSON object");
  RejectUnknownKeys(j, {"mass_kg", "inertia", "attachments", "equilibrium", "gravity"},
                    "load config");
  LoadModel load;
  if (!j.contains("mass_kg")) throw InputError("load config needs mass_kg");
  load.mass = Number(j["mass_kg"], "mass_kg");
  if (j.contains("inertia")) {
    const Json& in = j["inertia"];
    if (in.is_array() && in.size() == 3 && in[0].is_number()) {
      load.inertia = ToVec3(in, "inertia").asDiagonal();
    } else {
      load.inertia = ToMat3(in, "inertia");
    }
  }
  if (!j.contains("attachments") || !j["attachments"].is_array()) {
    throw InputError("load config needs an attachments array");
  }
  for (const Json& a : j["attachments"]) load.attachments.push_back(ToVec3(a, "attachment"));
  if (j.contains("equilibrium")) {
    const Json& eq = j["equilibrium"];
    RejectUnknownKeys(eq, {"position", "rotation_matrix"}, "equilibrium");
    if (eq.contains("position")) {
      load.equilibrium_position = ToVec3(eq["position"], "equilibrium.position");
    }
    if (eq.contains("rotation_matrix")) {
      load.equilibrium_rotation =
          Rot3(ToMat3(eq["rotation_matrix"], "equilibrium.rotation_matrix"));
    }
  }
  if (j.contains("gravity")) load.gravity = Number(j["gravity"], "gravity");
  load.Validate();
  return load;
}

Json ToJson(const LoadModel& load) {
  Json attachments = Json::array();
  for (const Vec3& b : load.attachments) attachments.push_back(FromVec3(b));
  return Json{{"mass_kg", load.mass},
              {"inertia", FromMat3(load.inertia)},
              {"attachments", attachments},
              {"equilibrium",
               {{"position", FromVec3(load.equilibrium_position)},
                {"rotation_matrix", FromMat3(load.equilibrium_rotation.matrix())}}},
              {"gravity", load.gravity}};
}

Json ReadJson(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

LoadModel ReadLoadModel(const std::filesystem::path& path) {
  return LoadModelFromJson(ReadJson(path));
}

sim::SimConfig SimConfigFromJson(const Json& j, sim::SimConfig cfg) {
  if (!j.is_object()) throw InputError("sim config must be a JSON object");
  const std::pair<const char*, double*> fields[] = {
      {"carrier_mass_kg", &cfg.carrier_mass},
      {"kp_n_per_m", &cfg.kp},
      {"kd_ns_per_m", &cfg.kd},
      {"noise_pos_std_m", &cfg.noise_position_std},
      {"noise_vel_std_mps", &cfg.noise_velocity_std},
      {"load_linear_damping_ns_per_m", &cfg.load_linear_damping},
      {"load_angular_damping_nms_per_rad", &cfg.load_angular_damping},
      {"cable_stiffness_n_per_m", &cfg.cable_stiffness},
      {"cable_damping_ns_per_m", &cfg.cable_damping},
      {"cable_rest_length_m", &cfg.cable_rest_length},
      {"dt_s", &cfg.dt},
      {"duration_s", &cfg.duration},
  };
  std::set<std::string> known{"bilateral_springs", "seed", "record_every"};
  for (const auto& [key, target] : fields) {
    known.insert(key);
    if (j.contains(key)) *target = Number(j[key], key);
  }
  RejectUnknownKeys(j, known, "sim config");
  if (j.contains("bilateral_springs")) {
    if (!j["bilateral_springs"].is_boolean()) {
      throw InputError("bilateral_springs must be a boolean");
    }
    cfg.bilateral_springs = j["bilateral_springs"].get<bool>();
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw InputError("seed must be a non-negative integer");
    cfg.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("record_every")) {
    if (!j["record_every"].is_number_integer()) throw InputError("record_every must be an integer");
    cfg.record_every = j["record_every"].get<int>();
  }
  cfg.Validate();
  return cfg;
}

Json ToJson(const sim::SimConfig& cfg) {
  return Json{{"carrier_mass_kg", cfg.carrier_mass},
              {"kp_n_per_m", cfg.kp},
              {"kd_ns_per_m", cfg.kd},
              {"noise_pos_std_m", cfg.noise_position_std},
              {"noise_vel_std_mps", cfg.noise_velocity_std},
              {"load_linear_damping_ns_per_m", cfg.load_linear_damping},
              {"load_angular_damping_nms_per_rad", cfg.load_angular_damping},
              {"cable_stiffness_n_per_m", cfg.cable_stiffness},
              {"cable_damping_ns_per_m", cfg.cable_damping},
              {"cable_rest_length_m", cfg.cable_rest_length},
              {"bilateral_springs", cfg.bilateral_springs},
              {"dt_s", cfg.dt},
              {"duration_s", cfg.duration},
              {"seed", cfg.seed},
              {"record_every", cfg.record_every}};
}

Json CycleToJson(const graph::HamiltonianCycle& cycle) { return Json(cycle.OneBasedTour()); }

graph::HamiltonianCycle CycleFromJson(const Json& j) {
  if (!j.is_array()) throw InputError("cycle must be a JSON array of vertex labels");
  std::vector<int> labels;
  for (const Json& v : j) {
    if (!v.is_number_integer()) throw InputError("cycle labels must be integers");
    labels.push_back(v.get<int>());
  }
  return graph::HamiltonianCycle::FromOneBased(labels);
}

graph::HamiltonianCycle ParseCycle(const std::string& text) {
  std::vector<int> labels;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    const std::string token = first == std::string::npos ? "" : item.substr(first, last - first + 1);
    int v = 0;
    const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (token.empty() || ec != std::errc{} || end != token.data() + token.size()) {
      throw InputError("bad cycle label '" + item + "'");
    }
    labels.push_back(v);
  }
  return graph::HamiltonianCycle::FromOneBased(labels);
}

Json ToJson(const statics::AdmissibilityReport& report) {
  Json carriers = Json::array();
  for (const auto& c : report.carriers) {
    carriers.push_back({{"aligned_triple", c.aligned_triple},
                        {"f0_in_span", c.f0_in_span},
                        {"sin_delta_angle", c.sin_delta_angle},
                        {"cos_normal_angle", c.cos_normal_angle}});
  }
  return Json{{"admissible", report.admissible}, {"score", report.score}, {"carriers", carriers}};
}

Json ToJson(const plan::PlanBounds& bounds) {
  Json carriers = Json::array();
  for (const auto& c : bounds.carriers) {
    carriers.push_back({{"gamma_min", c.gamma_min},
                        {"gamma_max", c.gamma_max},
                        {"alpha", c.alpha},
                        {"tension_min_n", c.tension_min},
                        {"tension_max_n", c.tension_max},
                        {"speed_min_mps", c.speed_min},
                        {"speed_max_mps", c.speed_max},
                        {"near_collinear", c.near_collinear}});
  }
  return Json{{"samples_per_period", bounds.samples_per_period},
              {"carriers", carriers},
              {"warnings", bounds.warnings}};
}

Json ToJson(const verify::VerificationReport& report) {
  Json carriers = Json::array();
  for (const auto& c : report.carriers) {
    carriers.push_back({{"tension_min_n", c.tension_min},
                        {"tension_max_n", c.tension_max},
                        {"speed_min_mps", c.speed_min},
                        {"speed_max_mps", c.speed_max},
                        {"speed_bound_mps", c.speed_bound}});
  }
  return Json{{"passed", report.passed()},
              {"statics_ok", report.statics_ok},
              {"tension_ok", report.tension_ok},
              {"speed_ok", report.speed_ok},
              {"smoothness_ok", report.smoothness_ok},
              {"statics_residual", report.statics_residual},
              {"offset_mismatch", report.offset_mismatch},
              {"smoothness_defect", report.smoothness_defect},
              {"carriers", carriers}};
}

Json ToJson(const sim::SimMetrics& m) {
  return Json{{"max_e_pl_m", m.max_position_error},
              {"mean_e_pl_m", m.mean_position_error},
              {"final_e_pl_m", m.final_position_error},
              {"max_e_rl_deg", m.max_attitude_error_deg},
              {"mean_tracking_error_m", m.mean_tracking_error},
              {"max_tracking_error_m", m.max_tracking_error},
              {"max_orthonormality_defect", m.max_orthonormality_defect},
              {"min_speed_mps", m.min_speed},
              {"max_speed_mps", m.max_speed},
              {"min_tension_n", m.min_tension},
              {"max_tension_n", m.max_tension},
              {"steps", m.steps}};
}

std::string FormatDouble(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void WriteCsv(std::ostream& out, const CsvTable& table) {
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    if (c) out << ',';
    out << table.header[c];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      out << FormatDouble(row[c]);
    }
    out << '\n';
  }
}

CsvTable ReadCsv(std::istream& in) {
  CsvTable table;
  std::string line;
  if (!std::getline(in, line) || line.empty()) throw InputError("CSV has no header row");
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) table.header.push_back(cell);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (cell.empty() || *end != '\0') throw InputError("bad CSV number '" + cell + "'");
      row.push_back(v);
    }
    if (row.size() != table.header.size()) throw InputError("ragged CSV row");
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::vector<std::string> TrajectoryHeader(int carriers) {
  std::vector<std::string> header{"t"};
  for (int i = 1; i <= carriers; ++i) {
    const std::string s = std::to_string(i);
    for (const char* base : {"px", "py", "pz", "vx", "vy", "vz", "fx", "fy", "fz", "T"}) {
      header.push_back(base + s);
    }
  }
  return header;
}

namespace {

void AppendCarrier(std::vector<double>& row, const Vec3& p, const Vec3& v,
                   const Vec3& f, double tension) {
  row.insert(row.end(), {p.x(), p.y(), p.z(), v.x(), v.y(), v.z(), f.x(), f.y(),
                         f.z(), tension});
}

}  // namespace

CsvTable TrajectoryTable(const std::vector<plan::TrajectorySample>& samples) {
  CsvTable table;
  const int n = samples.empty() ? 0 : static_cast<int>(samples.front().force.size());
  table.header = TrajectoryHeader(n);
  table.rows.reserve(samples.size());
  for (const auto& s : samples) {
    std::vector<double> row{s.t};
    for (int i = 0; i < n; ++i) {
      AppendCarrier(row, s.position[i], s.velocity[i], s.force[i], s.tension[i]);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

CsvTable SimSeriesTable(const sim::SimSeries& series) {
  CsvTable table;
  const int n = series.carrier_position.empty()
                    ? 0
                    : static_cast<int>(series.carrier_position.front().size());
  table.header = TrajectoryHeader(n);
  for (const char* col : {"plx", "ply", "plz", "roll", "pitch", "yaw"}) {
    table.header.emplace_back(col);
  }
  for (std::size_t k = 0; k < series.time.size(); ++k) {
    std::vector<double> row{series.time[k]};
    for (int i = 0; i < n; ++i) {
      AppendCarrier(row, series.carrier_position[k][i], series.carrier_velocity[k][i],
                    series.cable_force[k][i], series.tension[k][i]);
    }
    const Vec3& pl = series.load_position[k];
    const EulerZYX& a = series.load_attitude[k];
    row.insert(row.end(), {pl.x(), pl.y(), pl.z(), a.roll, a.pitch, a.yaw});
    table.rows.push_back(std::move(row));
  }
  return table;
}

void WriteFileAtomic(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw InputError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::uint64_t Fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string ConfigHash(const Json& config) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, Fnv1a64(config.dump()));
  return buf;
}

}  // namespace nonstop::io
