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

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "nonstop/graph.hpp"
#include "nonstop/plan.hpp"
#include "nonstop/sim.hpp"
#include "nonstop/statics.hpp"
#include "nonstop/verify.hpp"

// File formats: JSON configs/reports and the trajectory CSV contract.
namespace nonstop::io {

using Json = nlohmann::json;

// {mass_kg, inertia, attachments: [[x,y,z],...],
//  equilibrium: {position, rotation_matrix}, gravity}
// `inertia` is a 3x3 array or a 3-vector diagonal. Missing optional fields
// take LoadModel defaults. Throws InputError on malformed input.
LoadModel LoadModelFromJson(const Json& j);
Json ToJson(const LoadModel& load);
LoadModel ReadLoadModel(const std::filesystem::path& path);

// Overrides fields of `base` with those present in `j`; unknown keys are
// rejected.
sim::SimConfig SimConfigFromJson(const Json& j, sim::SimConfig base = {});
Json ToJson(const sim::SimConfig& cfg);

// 1-based vertex labels, e.g. [1,3,4,2].
Json CycleToJson(const graph::HamiltonianCycle& cycle);
graph::HamiltonianCycle CycleFromJson(const Json& j);
// "1,3,4,2" -> cycle.
graph::HamiltonianCycle ParseCycle(const std::string& text);

Json ToJson(const statics::AdmissibilityReport& report);
Json ToJson(const plan::PlanBounds& bounds);
Json ToJson(const verify::VerificationReport& report);
// {max_e_pl_m, max_e_rl_deg, min_speed_mps: [...], min_tension_n: [...], ...}
Json ToJson(const sim::SimMetrics& metrics);

Json ReadJson(const std::filesystem::path& path);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

// %.17g formatting, so every double survives a text round trip.
std::string FormatDouble(double value);
void WriteCsv(std::ostream& out, const CsvTable& table);
// Throws InputError on a missing header, ragged rows or bad numbers.
CsvTable ReadCsv(std::istream& in);

// t, then per carrier i: pxi,pyi,pzi,vxi,vyi,vzi,fxi,fyi,fzi,Ti (1-based i).
std::vector<std::string> TrajectoryHeader(int carriers);
CsvTable TrajectoryTable(const std::vector<plan::TrajectorySample>& samples);
// Trajectory columns followed by plx,ply,plz,roll,pitch,yaw.
CsvTable SimSeriesTable(const sim::SimSeries& series);

// Writes to a sibling temporary file and renames it into place.
void WriteFileAtomic(const std::filesystem::path& path, const std::string& contents);

std::uint64_t Fnv1a64(const std::string& bytes);
// Hex digest of the canonical JSON dump.
std::string ConfigHash(const Json& config);

}  // namespace nonstop::io
