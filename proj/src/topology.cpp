#include "krbenes/topology.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "krbenes/errors.hpp"
#include "krbenes/isomorphism.hpp"

namespace krbenes {

namespace {

constexpr std::array kKindNames{"butterfly", "inverse-butterfly", "benes", "band-exchange", "k-benes", "kr-benes"};
constexpr std::array kRoleNames{"matching", "band-exchange-even", "band-exchange-odd", "routing", "benes-core"};

void require_size(std::size_t n, std::size_t minimum) {
  if (!is_power_of_two(n) || n < minimum) {
    throw InvalidSize("network size " + std::to_string(n) + " must be a power of two >= " +
                      std::to_string(minimum));
  }
}

void require_band_width(std::size_t n, std::size_t k, std::size_t max_k) {
  if (!is_power_of_two(k)) {
    throw InvalidBandWidth("band width " + std::to_string(k) + " must be a power of two >= 1");
  }
  if (k > n) {
    throw InvalidBandWidth("band width " + std::to_string(k) + " exceeds n = " + std::to_string(n));
  }
  if (k > max_k) {
    throw UnsupportedBandWidth("band width " + std::to_string(k) + " > " + std::to_string(max_k) +
                               " for n = " + std::to_string(n));
  }
}

Column band_exchange_column(std::size_t n, std::size_t k, bool odd) {
  std::vector<Switch> sw;
  const std::size_t bands = n / k;
  for (std::size_t b = odd ? 1 : 0; b + 1 < bands; b += 2) {
    for (std::size_t j = 0; j < k; ++j) {
      sw.push_back({static_cast<Line>(b * k + j), static_cast<Line>((b + 1) * k + j)});
    }
  }
  return Column(n, odd ? ColumnRole::band_exchange_odd : ColumnRole::band_exchange_even, std::move(sw));
}

std::string node_name(std::size_t column, std::size_t pos) {
  return "s" + std::to_string(column) + "_" + std::to_string(pos);
}

}  // namespace

std::string_view to_string(NetworkKind kind) { return kKindNames[static_cast<std::size_t>(kind)]; }
std::string_view to_string(ColumnRole role) { return kRoleNames[static_cast<std::size_t>(role)]; }

NetworkKind parse_network_kind(std::string_view text) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i) {
    if (text == kKindNames[i]) return static_cast<NetworkKind>(i);
  }
  throw ParseError("unknown network kind '" + std::string(text) + "'");
}

ColumnRole parse_column_role(std::string_view text) {
  for (std::size_t i = 0; i < kRoleNames.size(); ++i) {
    if (text == kRoleNames[i]) return static_cast<ColumnRole>(i);
  }
  throw ParseError("unknown column role '" + std::string(text) + "'");
}

Column::Column(std::size_t n, ColumnRole role, std::vector<Switch> switches)
    : role_(role), switches_(std::move(switches)), slot_(n, -1) {
  for (auto& s : switches_) {
    if (s.lo > s.hi) std::swap(s.lo, s.hi);
  }
  std::sort(switches_.begin(), switches_.end(), [](const Switch& a, const Switch& b) { return a.lo < b.lo; });
  for (std::size_t i = 0; i < switches_.size(); ++i) {
    const auto& s = switches_[i];
    if (s.hi >= n || s.lo == s.hi) {
      throw StructuralError("switch (" + std::to_string(s.lo) + "," + std::to_string(s.hi) +
                            ") invalid for " + std::to_string(n) + " lines");
    }
    for (Line l : {s.lo, s.hi}) {
      if (slot_[l] != -1) throw StructuralError("line " + std::to_string(l) + " used twice in one column");
      slot_[l] = static_cast<int>(i);
    }
  }
}

std::optional<std::size_t> Column::switch_of(Line line) const {
  if (line >= slot_.size() || slot_[line] < 0) return std::nullopt;
  return static_cast<std::size_t>(slot_[line]);
}

Line Column::partner(Line line) const {
  auto s = switch_of(line);
  if (!s) return line;
  const auto& sw = switches_[*s];
  return sw.lo == line ? sw.hi : sw.lo;
}

Network::Network(NetworkKind kind, std::size_t n, std::size_t k, std::vector<Column> columns,
                 std::vector<BypassEdge> bypass_edges, std::vector<BandExchangeGroup> groups)
    : kind_(kind),
      n_(n),
      k_(k),
      columns_(std::move(columns)),
      bypass_edges_(std::move(bypass_edges)),
      groups_(std::move(groups)) {}

std::size_t Network::switch_count() const {
  std::size_t total = 0;
  for (const auto& c : columns_) total += c.size();
  return total;
}

std::vector<std::size_t> Network::column_sequence(std::span<const BypassChoice> choices) const {
  std::vector<std::size_t> seq;
  if (groups_.empty()) {
    if (!choices.empty()) throw StructuralError("bypass choices given for a network without backplane");
    for (std::size_t c = 0; c < columns_.size(); ++c) seq.push_back(c);
    return seq;
  }
  if (choices.size() != groups_.size()) {
    throw StructuralError("expected " + std::to_string(groups_.size()) + " bypass choices, got " +
                          std::to_string(choices.size()));
  }
  if (std::count(choices.begin(), choices.end(), BypassChoice::used) > 1) {
    throw StructuralError("at most one band-exchange network can carry traffic");
  }
  std::size_t cur = 0;
  while (true) {
    seq.push_back(cur);
    auto g = std::find_if(groups_.begin(), groups_.end(),
                          [cur](const BandExchangeGroup& grp) { return grp.after_column == cur; });
    if (g != groups_.end()) {
      if (choices[static_cast<std::size_t>(g - groups_.begin())] == BypassChoice::used) {
        seq.push_back(g->even_column);
        seq.push_back(g->odd_column);
        cur = g->rejoin_column;
      } else {
        cur = g->next_stage_column;
      }
      continue;
    }
    if (cur + 1 >= columns_.size()) break;
    ++cur;
  }
  return seq;
}

Column bit_column(std::size_t n, unsigned bit, ColumnRole role) {
  std::vector<Switch> sw;
  sw.reserve(n / 2);
  const Line mask = Line{1} << bit;
  for (Line x = 0; x < n; ++x) {
    if (!(x & mask)) sw.push_back({x, x | mask});
  }
  return Column(n, role, std::move(sw));
}

Network build_butterfly(std::size_t n) {
  require_size(n, 2);
  const unsigned m = log2_exact(n);
  std::vector<Column> cols;
  for (unsigned c = 0; c < m; ++c) cols.push_back(bit_column(n, m - 1 - c, ColumnRole::routing));
  return Network(NetworkKind::butterfly, n, 0, std::move(cols));
}

Network build_inverse_butterfly(std::size_t n) {
  require_size(n, 2);
  const unsigned m = log2_exact(n);
  std::vector<Column> cols;
  for (unsigned c = 0; c < m; ++c) cols.push_back(bit_column(n, c, ColumnRole::matching));
  return Network(NetworkKind::inverse_butterfly, n, 0, std::move(cols));
}

Network build_benes(std::size_t n) {
  require_size(n, 2);
  const unsigned m = log2_exact(n);
  std::vector<Column> cols;
  for (unsigned c = 0; c + 1 < 2 * m; ++c) {
    const unsigned bit = c <= m - 1 ? m - 1 - c : c - (m - 1);
    cols.push_back(bit_column(n, bit, ColumnRole::benes_core));
  }
  return Network(NetworkKind::benes, n, 0, std::move(cols));
}

Network build_band_exchange(std::size_t n, std::size_t k) {
  require_size(n, 2);
  require_band_width(n, k, n / 2);
  std::vector<Column> cols;
  cols.push_back(band_exchange_column(n, k, false));
  cols.push_back(band_exchange_column(n, k, true));
  return Network(NetworkKind::band_exchange, n, k, std::move(cols));
}

Network build_k_benes(std::size_t n, std::size_t k) {
  require_size(n, 4);
  require_band_width(n, k, n / 4);
  const unsigned kb = log2_exact(k);
  std::vector<Column> cols;
  for (unsigned c = 0; c < kb; ++c) cols.push_back(bit_column(n, c, ColumnRole::matching));
  cols.push_back(band_exchange_column(n, k, false));
  cols.push_back(band_exchange_column(n, k, true));
  for (unsigned c = 0; c < kb; ++c) cols.push_back(bit_column(n, kb - 1 - c, ColumnRole::routing));
  return Network(NetworkKind::k_benes, n, k, std::move(cols));
}

Network build_network(NetworkKind kind, std::size_t n, std::size_t k) {
  const bool banded = kind == NetworkKind::band_exchange || kind == NetworkKind::k_benes;
  if (!banded && k != 0) {
    throw InvalidBandWidth(std::string(to_string(kind)) + " networks take no band width");
  }
  switch (kind) {
    case NetworkKind::butterfly:
      return build_butterfly(n);
    case NetworkKind::inverse_butterfly:
      return build_inverse_butterfly(n);
    case NetworkKind::benes:
      return build_benes(n);
    case NetworkKind::band_exchange:
      return build_band_exchange(n, k);
    case NetworkKind::k_benes:
      return build_k_benes(n, k);
    case NetworkKind::kr_benes:
      return build_kr_benes(n);
  }
  throw StructuralError("unknown network kind");
}

unsigned kr_frontplane_bit(std::size_t n, std::size_t stage) {
  const unsigned m = log2_exact(n);
  const auto c = static_cast<unsigned>(stage - 1);
  return c <= m - 1 ? c : 2 * m - 2 - c;
}

Network build_kr_benes(std::size_t n) {
  require_size(n, 4);
  const unsigned m = log2_exact(n);
  const std::size_t stages = 2 * m - 1;
  std::vector<Column> cols;
  std::vector<std::size_t> stage_col(stages + 1, 0);
  std::vector<BandExchangeGroup> groups;
  for (std::size_t s = 1; s <= stages; ++s) {
    stage_col[s] = cols.size();
    cols.push_back(bit_column(n, kr_frontplane_bit(n, s), ColumnRole::benes_core));
    if (s + 2 <= m) {
      BandExchangeGroup g;
      g.stage = s;
      g.band_width = std::size_t{1} << s;
      g.after_column = stage_col[s];
      g.even_column = cols.size();
      cols.push_back(band_exchange_column(n, g.band_width, false));
      g.odd_column = cols.size();
      cols.push_back(band_exchange_column(n, g.band_width, true));
      groups.push_back(g);
    }
  }
  std::vector<BypassEdge> bypass;
  for (auto& g : groups) {
    g.rejoin_column = stage_col[2 * m - g.stage];
    g.next_stage_column = stage_col[g.stage + 1];
    for (Line x = 0; x < n; ++x) {
      bypass.push_back({{g.after_column, x, PortSide::out}, {g.next_stage_column, x, PortSide::in},
                        BypassKind::skip_band_exchange});
    }
    for (Line x = 0; x < n; ++x) {
      bypass.push_back({{g.odd_column, x, PortSide::out}, {g.rejoin_column, x, PortSide::in},
                        BypassKind::to_mirror_stage});
    }
  }
  return Network(NetworkKind::kr_benes, n, 0, std::move(cols), std::move(bypass), std::move(groups));
}

std::string export_dot(const Network& net) {
  std::ostringstream os;
  const std::size_t n = net.n();
  os << "digraph \"" << to_string(net.kind()) << "_n" << n;
  if (net.k()) os << "_k" << net.k();
  os << "\" {\n  rankdir=LR;\n  node [shape=box];\n";

  os << "  { rank=same;";
  for (std::size_t x = 0; x < n; ++x) os << " in" << x << " [shape=point];";
  os << " }\n";
  for (std::size_t c = 0; c < net.depth(); ++c) {
    const auto& col = net.column(c);
    os << "  subgraph \"col" << c << "\" { rank=same; label=\"" << to_string(col.role()) << "\";";
    for (std::size_t p = 0; p < col.size(); ++p) {
      os << " " << node_name(c, p) << " [label=\"" << col.switches()[p].lo << "," << col.switches()[p].hi << "\"];";
    }
    os << " }\n";
  }
  os << "  { rank=same;";
  for (std::size_t x = 0; x < n; ++x) os << " out" << x << " [shape=point];";
  os << " }\n";

  // holder[c][x]: node carrying line x out of column c along the default wiring
  std::vector<std::vector<std::string>> holder(net.depth(), std::vector<std::string>(n));
  for (Line x = 0; x < n; ++x) {
    std::string prev = "in" + std::to_string(x);
    for (std::size_t c = 0; c < net.depth(); ++c) {
      if (auto s = net.column(c).switch_of(x)) {
        os << "  " << prev << " -> " << node_name(c, *s) << " [label=\"" << x << "\"];\n";
        prev = node_name(c, *s);
      }
      holder[c][x] = prev;
    }
    os << "  " << prev << " -> out" << x << " [label=\"" << x << "\"];\n";
  }
  for (const auto& e : net.bypass_edges()) {
    const auto& to_col = net.column(e.to.column);
    auto s = to_col.switch_of(e.to.line);
    if (!s) continue;  // frontplane columns cover every line
    os << "  " << holder[e.from.column][e.from.line] << " -> " << node_name(e.to.column, *s)
       << " [style=dashed, color=blue, label=\"bypass-"
       << (e.kind == BypassKind::to_mirror_stage ? "a" : "b") << ":" << e.from.line << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

EmbeddingResult check_benes_embedding(std::size_t n, std::size_t k) {
  require_size(n, 8);
  if (!is_power_of_two(k) || k < 2 || k > n / 4) {
    throw InvalidBandWidth("embedding check needs a power-of-two 2 <= k <= n/4");
  }
  const unsigned m = log2_exact(n);
  const unsigned kb = log2_exact(k);
  const Network benes = build_benes(n);
  std::vector<Column> benes_part;
  for (unsigned c = 0; c <= kb; ++c) benes_part.push_back(benes.column(c));
  for (unsigned c = 2 * m - 1 - kb; c < 2 * m - 1; ++c) benes_part.push_back(benes.column(c));

  const Network kbenes = build_k_benes(n, k);
  std::vector<Column> kbenes_part;
  for (std::size_t c = 0; c < kbenes.depth(); ++c) {
    if (kbenes.column(c).role() != ColumnRole::band_exchange_odd) kbenes_part.push_back(kbenes.column(c));
  }

  auto iso = find_layered_isomorphism(layered_graph(n, benes_part), layered_graph(n, kbenes_part));
  EmbeddingResult out;
  if (iso) {
    out.holds = true;
    out.line_maps = std::move(iso->line_maps);
  }
  return out;
}

}  // namespace krbenes
