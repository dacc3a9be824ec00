#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "krbenes/bits.hpp"

namespace krbenes {

enum class NetworkKind { butterfly, inverse_butterfly, benes, band_exchange, k_benes, kr_benes };
enum class ColumnRole { matching, band_exchange_even, band_exchange_odd, routing, benes_core };
enum class PortSide { in, out };

std::string_view to_string(NetworkKind kind);
std::string_view to_string(ColumnRole role);
NetworkKind parse_network_kind(std::string_view text);
ColumnRole parse_column_role(std::string_view text);

/// A 2x2 switching element. Lines are wired identically between columns, so a
/// switch's in-ports and out-ports are the same two line numbers; all topology
/// lives in which lines each column pairs. `lo < hi` always.
struct Switch {
  Line lo = 0;
  Line hi = 0;
  friend bool operator==(const Switch&, const Switch&) = default;
};

struct PortRef {
  std::size_t column = 0;
  Line line = 0;
  PortSide side = PortSide::in;
  friend bool operator==(const PortRef&, const PortRef&) = default;
};

/// One stage of switches. Switches are kept sorted by their low line; a line
/// not covered by any switch passes the column straight.
class Column {
 public:
  Column() = default;
  Column(std::size_t n, ColumnRole role, std::vector<Switch> switches);

  ColumnRole role() const { return role_; }
  std::span<const Switch> switches() const { return switches_; }
  std::size_t size() const { return switches_.size(); }

  /// Index of the switch covering `line`, if any.
  std::optional<std::size_t> switch_of(Line line) const;
  /// The line sharing a switch with `line`, or `line` itself for pass-through.
  Line partner(Line line) const;

  friend bool operator==(const Column& a, const Column& b) {
    return a.role_ == b.role_ && a.switches_ == b.switches_;
  }

 private:
  ColumnRole role_ = ColumnRole::benes_core;
  std::vector<Switch> switches_;
  std::vector<int> slot_;  // line -> switch index or -1
};

enum class BypassKind { to_mirror_stage, skip_band_exchange };

/// Extra wire from an out-port to a later in-port on the same line.
struct BypassEdge {
  PortRef from;
  PortRef to;
  BypassKind kind = BypassKind::skip_band_exchange;
  friend bool operator==(const BypassEdge&, const BypassEdge&) = default;
};

/// A BE(n, band_width) backplane network inside a KR-Benes, inserted after
/// frontplane stage `stage` (1-based) and rejoining at stage 2 log n - stage.
struct BandExchangeGroup {
  std::size_t stage = 0;
  std::size_t band_width = 0;
  std::size_t after_column = 0;
  std::size_t even_column = 0;
  std::size_t odd_column = 0;
  std::size_t rejoin_column = 0;
  std::size_t next_stage_column = 0;
  friend bool operator==(const BandExchangeGroup&, const BandExchangeGroup&) = default;
};

enum class BypassChoice { bypassed, used };

/// Staged port-level graph of 2x2 switches. Immutable once built.
class Network {
 public:
  Network() = default;
  Network(NetworkKind kind, std::size_t n, std::size_t k, std::vector<Column> columns,
          std::vector<BypassEdge> bypass_edges = {}, std::vector<BandExchangeGroup> groups = {});

  NetworkKind kind() const { return kind_; }
  std::size_t n() const { return n_; }
  /// Band width for band-exchange and k-benes networks, 0 otherwise.
  std::size_t k() const { return k_; }
  std::size_t depth() const { return columns_.size(); }
  const Column& column(std::size_t c) const { return columns_.at(c); }
  std::span<const Column> columns() const { return columns_; }
  std::span<const BypassEdge> bypass_edges() const { return bypass_edges_; }
  /// KR-Benes backplane networks in stage order; empty for other kinds.
  std::span<const BandExchangeGroup> band_exchange_groups() const { return groups_; }
  std::size_t switch_count() const;

  /// Columns a signal traverses, in order, given one choice per backplane
  /// network. Non-KR networks take an empty choice list and traverse every column.
  /// Throws StructuralError on a malformed choice list.
  std::vector<std::size_t> column_sequence(std::span<const BypassChoice> choices) const;

  friend bool operator==(const Network& a, const Network& b) {
    return a.kind_ == b.kind_ && a.n_ == b.n_ && a.k_ == b.k_ && a.columns_ == b.columns_ &&
           a.bypass_edges_ == b.bypass_edges_ && a.groups_ == b.groups_;
  }

 private:
  NetworkKind kind_ = NetworkKind::benes;
  std::size_t n_ = 0;
  std::size_t k_ = 0;
  std::vector<Column> columns_;
  std::vector<BypassEdge> bypass_edges_;
  std::vector<BandExchangeGroup> groups_;
};

/// Column of switches pairing every line with the line that differs in `bit`.
Column bit_column(std::size_t n, unsigned bit, ColumnRole role);

/// log n columns; column c pairs lines differing in bit (log n - 1 - c).
Network build_butterfly(std::size_t n);
/// Mirror image of the butterfly: column c pairs lines differing in bit c.
Network build_inverse_butterfly(std::size_t n);
/// Butterfly followed by inverse butterfly with the middle column merged.
/// Column c pairs bit |log n - 1 - c|; depth 2 log n - 1.
Network build_benes(std::size_t n);
/// Even column exchanges band pairs (0,1),(2,3),...; odd column exchanges
/// (1,2),(3,4),...; boundary bands of the odd column pass straight.
Network build_band_exchange(std::size_t n, std::size_t k);
/// Stacked k x k inverse butterflies, BE(n,k), stacked k x k butterflies.
/// Lines are numbered so band i is [ik, (i+1)k).
Network build_k_benes(std::size_t n, std::size_t k);
/// Frontplane Benes (in band-aligned numbering, so its first and last log K
/// stages are the K-Benes matching and routing networks) with BE(n, 2^i)
/// inserted after stage i, 1 <= i <= log n - 2, plus both kinds of bypass edge.
Network build_kr_benes(std::size_t n);

/// Dispatches on kind; k is required for band-exchange and k-benes and must be
/// 0 otherwise.
Network build_network(NetworkKind kind, std::size_t n, std::size_t k = 0);

/// Frontplane stage s (1-based) of a KR-Benes pairs lines differing in this bit.
unsigned kr_frontplane_bit(std::size_t n, std::size_t stage);

/// Deterministic Graphviz rendering: switches as nodes, one rank per column,
/// bypass edges dashed.
std::string export_dot(const Network& net);

struct EmbeddingResult {
  bool holds = false;
  /// For each wire layer of the Benes subgraph, the line of the K-Benes wire it
  /// maps to. Empty when `holds` is false.
  std::vector<std::vector<Line>> line_maps;
};

/// Checks that the first log k + 1 and last log k columns of build_benes(n)
/// are isomorphic to build_k_benes(n, k) without its odd band-exchange column.
/// The relabeling is found by search, not assumed.
EmbeddingResult check_benes_embedding(std::size_t n, std::size_t k);

}  // namespace krbenes
