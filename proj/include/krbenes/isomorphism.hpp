#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "krbenes/topology.hpp"

namespace krbenes {

/// Switch-level graph of a column sequence. Nodes are input terminals (layer
/// 0), the switches of column c (layer c + 1), and output terminals (last
/// layer). Each line contributes one wire between consecutive nodes it passes
/// through; parallel wires are kept.
struct LayeredGraph {
  struct Wire {
    int from = 0;
    int to = 0;
    Line line = 0;
  };

  std::size_t lines = 0;
  std::size_t layers = 0;
  std::vector<int> layer;               // node -> layer
  std::vector<Wire> wires;
  std::vector<std::vector<int>> succ;   // node -> successor nodes, with multiplicity
  std::vector<std::vector<int>> pred;   // node -> predecessor nodes, with multiplicity

  std::size_t node_count() const { return layer.size(); }
};

LayeredGraph layered_graph(std::size_t n, std::span<const Column> columns);

struct LayeredIsomorphism {
  std::vector<int> node_map;
  /// line_maps[L][x]: line of the image of the wire that crosses the gap after
  /// layer L on line x.
  std::vector<std::vector<Line>> line_maps;
};

/// Layer-preserving isomorphism search (colour refinement, then backtracking
/// along wires). Returns nullopt when the graphs are not isomorphic. Throws
/// BudgetExceeded if the search visits more than `budget` candidate pairs.
std::optional<LayeredIsomorphism> find_layered_isomorphism(const LayeredGraph& a, const LayeredGraph& b,
                                                           std::size_t budget = 20'000'000);

}  // namespace krbenes
