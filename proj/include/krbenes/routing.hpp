#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "krbenes/permutation.hpp"
#include "krbenes/topology.hpp"

namespace krbenes {

enum class SwitchState : std::uint8_t { unused, straight, cross };

std::string_view to_string(SwitchState state);
SwitchState parse_switch_state(std::string_view text);

/// Work done by the sequential control procedure for one permutation.
///
/// `terminal_visits` counts each input once on the input side and each output
/// once on the output side per looping level (a 2x2 base block counts its two
/// inputs only), so a full n-input Benes run costs n (2 log n - 1) and a run
/// truncated after l levels costs 2 n l. Marking migrating inputs and choosing
/// bypass lines is reported separately as `overhead` (one check per line).
struct ControlCost {
  std::uint64_t terminal_visits = 0;
  std::uint64_t overhead = 0;
  std::uint64_t switches_set = 0;
  friend bool operator==(const ControlCost&, const ControlCost&) = default;
};

/// Identifies the network a plan was made for.
struct NetworkRef {
  NetworkKind kind = NetworkKind::benes;
  std::size_t n = 0;
  std::size_t k = 0;
  friend bool operator==(const NetworkRef&, const NetworkRef&) = default;
};

NetworkRef describe(const Network& net);

/// settings[column][switch index]
using Settings = std::vector<std::vector<SwitchState>>;

Settings unused_settings(const Network& net);

struct RoutePlan {
  NetworkRef network;
  Permutation permutation;
  /// Band width of the K-Benes subgraph that carried the traffic (KR-Benes only).
  std::optional<std::size_t> k_used;
  Settings settings;
  /// One entry per KR-Benes backplane network, in stage order.
  std::vector<BypassChoice> bypass;
  /// paths[i]: ports visited by input i, in and out port per traversed column.
  std::vector<std::vector<PortRef>> paths;
  ControlCost cost;
};

/// Looping algorithm on build_benes(n). Each loop starts at the lowest input
/// whose switch is still unset and sends that input to the top subnetwork.
RoutePlan looping_route(const Network& net, const Permutation& p);

struct TruncatedLooping {
  std::size_t levels = 0;
  /// Settings over the columns of build_benes(n); only the first and last
  /// `levels` columns are set.
  Settings settings;
  /// The 2^levels permutations left for the inner subnetworks, top to bottom.
  std::vector<Permutation> residual;
  std::uint64_t terminal_visits = 0;
};

/// The looping run stopped after `levels` recursion levels (0 <= levels <=
/// log n - 1). Its settings equal the outer columns of looping_route.
TruncatedLooping looping_route_truncated(const Permutation& p, std::size_t levels);

/// Per-band migration sets for a k-bounded permutation, bands I_i = [ik, (i+1)k).
struct BandDecomposition {
  std::size_t k = 0;
  std::size_t bands = 0;
  std::vector<std::vector<Line>> up;          // inputs bound for band i - 1
  std::vector<std::vector<Line>> down;        // inputs bound for band i + 1
  std::vector<std::vector<Line>> stationary;  // inputs that stay in band i
};

BandDecomposition decompose_bands(const Permutation& p, std::size_t k);

/// Where every input sits after the matching stage of a band-aligned K-Benes
/// whose matching switches come from the embedded looping run, and the
/// migrating pairs that meet at equal offsets of adjacent bands.
struct MatchingStage {
  std::size_t k = 0;
  /// stage_positions[l][x]: line of input x after l matching columns.
  std::vector<std::vector<Line>> stage_positions;
  /// (a, b) with a bound down from band i and b bound up from band i + 1.
  std::vector<std::pair<Line, Line>> partners;
  /// Matching-network settings, one column per stage (band-aligned numbering).
  Settings settings;
};

/// k must be a power of two with 1 <= k <= n/2 and p k-bounded. Throws
/// InvariantViolation if some migrating input has no partner.
MatchingStage matching_stage(const Permutation& p, std::size_t k);

/// Three-step K-Benes routing: looping settings for the matching and routing
/// networks, self-routed band exchanges between matched migrating inputs.
RoutePlan k_benes_route(const Network& net, const Permutation& p);

/// The K-Benes embedded in a KR-Benes: the first log k frontplane stages,
/// BE(n, k), then the last log k stages reached through bypass lines.
struct KSubgraph {
  std::size_t k = 0;
  std::vector<std::size_t> columns;   // KR-Benes column indices in traversal order
  std::vector<BypassChoice> bypass;
  Network view;                       // the selected columns as a k-benes network
};

/// 2 <= k <= n/4, power of two.
KSubgraph select_k_subgraph(const Network& kr, std::size_t k);

/// Routes p at the cost of its own band width: K = smallest power of two >=
/// max displacement, raised to 2 (the smallest backplane network). For K >
/// n/4 the frontplane is routed as a plain Benes with every backplane bypassed.
RoutePlan kr_benes_route(const Network& net, const Permutation& p);

/// Replays a plan from input terminal `input`. Throws CorruptPlan when a
/// traversed switch is unused or the plan does not fit the network.
std::vector<PortRef> trace_path(const Network& net, const RoutePlan& plan, Line input);

}  // namespace krbenes
