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

#include <Eigen/Core>

#include <cstddef>
#include <utility>
#include <vector>

// Hamiltonian cycles of the complete graph K_n, their incidence matrices and
// proper edge colorings.
//
// Indexing: carriers (vertices), edges and colors are 0-based everywhere in
// the API. Serialized tours (JSON, CLI, CSV headers) are 1-based.
namespace nonstop::graph {

// Largest n for which EnumerateCycles is allowed; (n-1)!/2 grows quickly.
inline constexpr int kMaxEnumerationSize = 10;

struct Edge {
  int from = 0;  // e^1
  int to = 0;    // e^2
  bool operator==(const Edge&) const = default;
};

// A directed Hamiltonian cycle. Edge k runs from tour[k] to tour[k+1 mod n].
class HamiltonianCycle {
 public:
  // Validates that `tour` is a permutation of 0..n-1 with n >= 3.
  // The direction and starting vertex are kept as given.
  explicit HamiltonianCycle(std::vector<int> tour);

  // From 1-based vertex labels, e.g. {1, 3, 4, 2}.
  static HamiltonianCycle FromOneBased(const std::vector<int>& labels);

  int size() const { return static_cast<int>(tour_.size()); }
  const std::vector<int>& tour() const { return tour_; }
  std::vector<int> OneBasedTour() const;

  Edge edge(int k) const;
  std::vector<Edge> edges() const;

  // Index of the edge entering `vertex` (h_i) and leaving it (h_i + 1 mod n).
  int IncomingEdge(int vertex) const;
  int OutgoingEdge(int vertex) const;

  // Starts at vertex 0 and its second vertex is smaller than its last.
  bool IsCanonical() const;
  HamiltonianCycle Canonical() const;

  bool operator==(const HamiltonianCycle&) const = default;
  // Lexicographic order of tours.
  bool operator<(const HamiltonianCycle& other) const {
    return tour_ < other.tour_;
  }

 private:
  std::vector<int> tour_;
  std::vector<int> position_;  // position_[v] = index of v in tour_
};

// All (n-1)!/2 canonical Hamiltonian cycles of K_n, in lexicographic order.
// Throws InputError for n < 3 or n > kMaxEnumerationSize.
std::vector<HamiltonianCycle> EnumerateCycles(int n);

// Number of undirected Hamiltonian cycles of K_n, (n-1)!/2.
std::size_t CycleCount(int n);

// n x n matrix over {-1, 0, 1}; column k has +1 at edge(k).from and -1 at
// edge(k).to.
Eigen::MatrixXi Incidence(const HamiltonianCycle& cycle);

enum class ColoringMode {
  kMinimal,    // 2 colors for even n, 3 for odd n
  kUniversal,  // n colors, edge k gets color k
};

struct EdgeColoring {
  ColoringMode mode = ColoringMode::kMinimal;
  int num_colors = 0;
  std::vector<int> colors;  // per edge, 0-based

  // No two consecutive edges (including the wrap-around pair) share a color.
  bool IsProper() const;
};

EdgeColoring ColorEdges(const HamiltonianCycle& cycle, ColoringMode mode);

}  // namespace nonstop::graph
