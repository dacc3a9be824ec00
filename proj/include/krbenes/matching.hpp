#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "krbenes/permutation.hpp"

namespace krbenes {

// Switches here are the first (input side) and last (output side) columns of
// a band-aligned network: switch s holds lines 2s and 2s + 1, and the
// companion of input i is i ^ 1.

struct PermutationGraph {
  std::size_t n = 0;
  /// (input switch, output switch), sorted, one entry per connected pair.
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::size_t> input_component;
  std::vector<std::size_t> output_component;
  std::size_t components = 0;
};

/// Input switch S_i is joined to the output switches holding p(i) and p(i ^ 1).
PermutationGraph build_permutation_graph(const Permutation& p);

enum class CompatibilityKind { cross, straight };

struct CompatibilityVertex {
  Line input = 0;
  Line output = 0;
  friend bool operator==(const CompatibilityVertex&, const CompatibilityVertex&) = default;
};

struct CompatibilityEdge {
  Line u = 0;  // vertices are named by their input line, u < v
  Line v = 0;
  CompatibilityKind kind = CompatibilityKind::cross;
  unsigned labels = 0;  // bit i set: the edge carries label i
  friend bool operator==(const CompatibilityEdge&, const CompatibilityEdge&) = default;
};

/// Two-band case only (k = n/2). v1 holds the down-migrating inputs of band 0,
/// v2 the up-migrating inputs of band 1. Label i edges come from paths through
/// the stationary inputs of band i: a path between an input switch and an
/// output switch has odd length (cross edge), a path between two switches on
/// the same side has even length (straight edge).
struct CompatibilityGraph {
  std::size_t n = 0;
  std::vector<CompatibilityVertex> v1;
  std::vector<CompatibilityVertex> v2;
  std::vector<CompatibilityEdge> edges;

  /// The vertex joined to `input` by an edge carrying `label`, if any.
  std::optional<Line> neighbour(Line input, unsigned label) const;
};

/// Throws UnsupportedBandWidth unless k = n/2, NotKBounded if p is not.
CompatibilityGraph build_compatibility_graph(const Permutation& p, std::size_t k);

/// Per label, the number of straight-edge pairs inside v1 and inside v2.
struct StraightPairCounts {
  std::array<std::size_t, 2> v1{};
  std::array<std::size_t, 2> v2{};
  bool balanced() const { return v1 == v2; }
};

StraightPairCounts straight_pair_counts(const CompatibilityGraph& g);

/// First-column subnetwork of every input under the looping rule (0 = top,
/// reached through the upper link). Derived from the permutation graph's
/// constraint cycles, independently of the router.
std::vector<int> first_stage_directions(const Permutation& p);

/// Pairs every v1 vertex with a v2 vertex bound for the same subnetwork:
/// label-0 cross edges first, then straight pairs resolved through their
/// label-1 neighbours. Throws InvariantViolation if some pair would split.
std::vector<std::pair<Line, Line>> level_matching(const CompatibilityGraph& g, const std::vector<int>& direction);

struct MatchingAssignment {
  std::size_t k = 0;
  /// (a, b): a bound down from band i, b bound up from band i + 1; sorted.
  std::vector<std::pair<Line, Line>> pairs;
};

/// Finds matching partners by recursing through the matching network one
/// column at a time, each column colored from the permutation graph. In the
/// two-band case every level also checks the compatibility-graph guarantees
/// (cross edges share a subnetwork, straight edges split, straight pairs
/// balance per label) and builds a level matching. k: power of two, 1..n/2.
MatchingAssignment compatibility_matching(const Permutation& p, std::size_t k);

struct LinkCounts {
  std::size_t up_top = 0;
  std::size_t up_bottom = 0;
  std::size_t down_top = 0;
  std::size_t down_bottom = 0;
  friend bool operator==(const LinkCounts&, const LinkCounts&) = default;
};

struct LinkBalanceStage {
  std::size_t stage = 0;
  std::vector<LinkCounts> bands;
  bool holds = true;
};

/// After each matching column (looping settings), up-migrating inputs of band
/// i leaving on upper (lower) links must equal down-migrating inputs of band
/// i - 1 on upper (lower) links. `holds` also requires the equality for every
/// subnetwork reached so far, not only for the top/bottom split.
struct LinkBalanceReport {
  std::size_t k = 0;
  std::vector<LinkBalanceStage> stages;
  bool holds = true;
};

LinkBalanceReport check_link_balance(const Permutation& p, std::size_t k);

std::string to_dot(const PermutationGraph& g);
/// Cross edges dashed.
std::string to_dot(const CompatibilityGraph& g);

}  // namespace krbenes
