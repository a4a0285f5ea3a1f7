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

#include "nonstop/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "nonstop/geom.hpp"

namespace nonstop::graph {

HamiltonianCycle::HamiltonianCycle(std::vector<int> tour)
    : tour_(std::move(tour)), position_(tour_.size(), -1) {
  const int n = size();
  if (n < 3) {
    throw InputError("a Hamiltonian cycle needs at least 3 vertices, got " +
                     std::to_string(n));
  }
  for (int k = 0; k < n; ++k) {
    const int v = tour_[k];
    if (v < 0 || v >= n) {
      throw InputError("tour vertex " + std::to_string(v + 1) +
                       " out of range 1.." + std::to_string(n));
    }
    if (position_[v] != -1) {
      throw InputError("tour visits vertex " + std::to_string(v + 1) +
                       " twice");
    }
    position_[v] = k;
  }
}

HamiltonianCycle HamiltonianCycle::FromOneBased(
    const std::vector<int>& labels) {
  std::vector<int> tour(labels.size());
  std::transform(labels.begin(), labels.end(), tour.begin(),
                 [](int label) { return label - 1; });
  return HamiltonianCycle(std::move(tour));
}

std::vector<int> HamiltonianCycle::OneBasedTour() const {
  std::vector<int> labels(tour_.size());
  std::transform(tour_.begin(), tour_.end(), labels.begin(),
                 [](int v) { return v + 1; });
  return labels;
}

Edge HamiltonianCycle::edge(int k) const {
  const int n = size();
  return Edge{tour_[k], tour_[(k + 1) % n]};
}

std::vector<Edge> HamiltonianCycle::edges() const {
  std::vector<Edge> out;
  out.reserve(tour_.size());
  for (int k = 0; k < size(); ++k) out.push_back(edge(k));
  return out;
}

int HamiltonianCycle::IncomingEdge(int vertex) const {
  const int n = size();
  return (position_.at(vertex) + n - 1) % n;
}

int HamiltonianCycle::OutgoingEdge(int vertex) const {
  return position_.at(vertex);
}

bool HamiltonianCycle::IsCanonical() const {
  return tour_.front() == 0 && tour_[1] < tour_.back();
}

HamiltonianCycle HamiltonianCycle::Canonical() const {
  const int n = size();
  std::vector<int> rotated(n);
  const int start = position_[0];
  for (int k = 0; k < n; ++k) rotated[k] = tour_[(start + k) % n];
  if (rotated[1] > rotated.back()) std::reverse(rotated.begin() + 1, rotated.end());
  return HamiltonianCycle(std::move(rotated));
}

std::size_t CycleCount(int n) {
  if (n < 3) return 0;
  std::size_t count = 1;
  for (int k = 3; k < n; ++k) count *= static_cast<std::size_t>(k);
  return count;  // (n-1)!/2 = 3*4*...*(n-1)
}

std::vector<HamiltonianCycle> EnumerateCycles(int n) {
  if (n < 3) {
    throw InputError("cycle enumeration needs n >= 3, got " + std::to_string(n));
  }
  if (n > kMaxEnumerationSize) {
    throw InputError("cycle enumeration is limited to n <= " +
                     std::to_string(kMaxEnumerationSize) +
                     "; supply an explicit tour instead");
  }
  std::vector<HamiltonianCycle> cycles;
  cycles.reserve(CycleCount(n));
  // Fix vertex 0 first, permute the rest, keep one orientation.
  std::vector<int> rest(n - 1);
  std::iota(rest.begin(), rest.end(), 1);
  do {
    if (rest.front() > rest.back()) continue;
    std::vector<int> tour{0};
    tour.insert(tour.end(), rest.begin(), rest.end());
    cycles.emplace_back(std::move(tour));
  } while (std::next_permutation(rest.begin(), rest.end()));
  return cycles;
}

Eigen::MatrixXi Incidence(const HamiltonianCycle& cycle) {
  const int n = cycle.size();
  Eigen::MatrixXi h = Eigen::MatrixXi::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    const Edge e = cycle.edge(k);
    h(e.from, k) = 1;
    h(e.to, k) = -1;
  }
  return h;
}

bool EdgeColoring::IsProper() const {
  const std::size_t n = colors.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (colors[k] == colors[(k + 1) % n]) return false;
  }
  return true;
}

EdgeColoring ColorEdges(const HamiltonianCycle& cycle, ColoringMode mode) {
  const int n = cycle.size();
  EdgeColoring coloring;
  coloring.mode = mode;
  coloring.colors.resize(n);
  if (mode == ColoringMode::kUniversal) {
    coloring.num_colors = n;
    std::iota(coloring.colors.begin(), coloring.colors.end(), 0);
    return coloring;
  }
  // Alternate 0,1,0,1,...; an odd cycle closes with color 2 on its last edge.
  for (int k = 0; k < n; ++k) coloring.colors[k] = k % 2;
  if (n % 2 == 1) {
    coloring.colors[n - 1] = 2;
    coloring.num_colors = 3;
  } else {
    coloring.num_colors = 2;
  }
  return coloring;
}

}  // namespace nonstop::graph
