#include "krbenes/routing.hpp"

#include <algorithm>
#include <array>

#include "krbenes/errors.hpp"

namespace krbenes {

namespace {

constexpr std::array kStateNames{"unused", "straight", "cross"};

unsigned benes_bit(unsigned m, std::size_t column) {
  const auto c = static_cast<unsigned>(column);
  return c <= m - 1 ? m - 1 - c : c - (m - 1);
}

/// Position of the switch whose low line is `lo` in a column pairing `bit`.
std::size_t slot_in_bit_column(Line lo, unsigned bit) {
  const Line low_mask = (Line{1} << bit) - 1;
  return ((lo >> (bit + 1)) << bit) | (lo & low_mask);
}

Line low_line_of_slot(std::size_t slot, unsigned bit) {
  const auto s = static_cast<Line>(slot);
  const Line low_mask = (Line{1} << bit) - 1;
  return ((s >> bit) << (bit + 1)) | (s & low_mask);
}

void require_benes_size(std::size_t n) {
  if (!is_power_of_two(n) || n < 2) {
    throw InvalidSize("permutation size " + std::to_string(n) + " must be a power of two >= 2");
  }
}

class LoopingEngine {
 public:
  LoopingEngine(std::size_t n, std::size_t levels, bool full)
      : m_(log2_exact(n)), levels_(levels), full_(full) {
    settings_.assign(2 * m_ - 1, std::vector<SwitchState>(n / 2, SwitchState::unused));
  }

  void run(const std::vector<Line>& sigma, Line base, std::size_t level) {
    const std::size_t size = sigma.size();
    if (!full_ && level == levels_) {
      residual_.emplace_back(sigma);
      return;
    }
    if (size == 2) {
      settings_[m_ - 1][base >> 1] = sigma[0] == 0 ? SwitchState::straight : SwitchState::cross;
      visits_ += 2;
      return;
    }
    const std::size_t half = size / 2;
    std::vector<Line> inv(size);
    for (std::size_t i = 0; i < size; ++i) inv[sigma[i]] = static_cast<Line>(i);

    // 0 = top subnetwork, 1 = bottom, -1 = not yet decided
    std::vector<int> in_dir(size, -1), out_dir(size, -1);
    for (std::size_t start = 0; start < half; ++start) {
      if (in_dir[start] != -1) continue;
      std::size_t cur = start;
      while (true) {
        in_dir[cur] = 0;
        in_dir[cur ^ half] = 1;
        const Line o = sigma[cur ^ half];
        out_dir[o] = 1;
        out_dir[o ^ half] = 0;
        visits_ += 4;
        const std::size_t next = inv[o ^ half];
        if (in_dir[next] != -1) break;
        cur = next;
      }
    }

    const unsigned bit = m_ - 1 - static_cast<unsigned>(level);
    auto& in_col = settings_[level];
    auto& out_col = settings_[2 * m_ - 2 - level];
    std::vector<Line> top(half), bottom(half);
    for (std::size_t t = 0; t < half; ++t) {
      const std::size_t slot = slot_in_bit_column(base + static_cast<Line>(t), bit);
      in_col[slot] = in_dir[t] == 0 ? SwitchState::straight : SwitchState::cross;
      out_col[slot] = out_dir[t] == 0 ? SwitchState::straight : SwitchState::cross;
      const std::size_t up = in_dir[t] == 0 ? t : t + half;
      const std::size_t down = up ^ half;
      top[t] = static_cast<Line>(sigma[up] & (half - 1));
      bottom[t] = static_cast<Line>(sigma[down] & (half - 1));
    }
    run(top, base, level + 1);
    run(bottom, base + static_cast<Line>(half), level + 1);
  }

  Settings settings_;
  std::vector<Permutation> residual_;
  std::uint64_t visits_ = 0;

 private:
  unsigned m_;
  std::size_t levels_;
  bool full_;
};

Line apply_column(const Column& col, const std::vector<SwitchState>& states, Line line) {
  auto s = col.switch_of(line);
  if (!s || states[*s] != SwitchState::cross) return line;
  return col.partner(line);
}

/// Copies the settings of Benes column `benes_column` into `target`, which
/// pairs the bit-reversed images of the same lines.
void transfer_column(const Settings& benes, std::size_t benes_column, unsigned m, const Column& target,
                     std::vector<SwitchState>& out) {
  const unsigned bit = benes_bit(m, benes_column);
  const auto& states = benes[benes_column];
  for (std::size_t slot = 0; slot < states.size(); ++slot) {
    if (states[slot] == SwitchState::unused) continue;
    const Line lo = low_line_of_slot(slot, bit);
    const Line a = reverse_bits(lo, m);
    const Line b = reverse_bits(lo | (Line{1} << bit), m);
    auto t = target.switch_of(a);
    if (!t || target.partner(a) != b) {
      throw InvariantViolation("column " + std::to_string(benes_column) + " does not embed into its target column");
    }
    out[*t] = states[slot];
  }
}

struct EmbeddedRun {
  TruncatedLooping looping;
  MatchingStage stage;
};

EmbeddedRun embedded_run(const Permutation& p, std::size_t k) {
  const std::size_t n = p.size();
  require_benes_size(n);
  if (!is_power_of_two(k) || k > n / 2) {
    throw InvalidBandWidth("band width " + std::to_string(k) + " must be a power of two <= n/2");
  }
  if (p.max_displacement() > k) {
    throw NotKBounded("permutation is not " + std::to_string(k) + "-bounded (max displacement " +
                      std::to_string(p.max_displacement()) + ")");
  }
  const unsigned m = log2_exact(n);
  const unsigned kb = log2_exact(k);
  const Permutation sigma = p.relabeled([m](Line x) { return reverse_bits(x, m); });

  EmbeddedRun run;
  run.looping = looping_route_truncated(sigma, kb);
  auto& st = run.stage;
  st.k = k;
  std::vector<Line> pos(n);
  for (Line x = 0; x < n; ++x) pos[x] = x;
  st.stage_positions.push_back(pos);
  for (unsigned c = 0; c < kb; ++c) {
    const Column col = bit_column(n, c, ColumnRole::matching);
    std::vector<SwitchState> states(col.size(), SwitchState::unused);
    transfer_column(run.looping.settings, c, m, col, states);
    for (auto& line : pos) line = apply_column(col, states, line);
    st.stage_positions.push_back(pos);
    st.settings.push_back(std::move(states));
  }

  std::vector<Line> occupant(n);
  for (Line x = 0; x < n; ++x) occupant[pos[x]] = x;
  const std::size_t bands = n / k;
  for (std::size_t i = 0; i + 1 < bands; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const Line a = occupant[i * k + j];
      const Line b = occupant[(i + 1) * k + j];
      const bool a_down = p[a] / k == i + 1;
      const bool b_up = p[b] / k == i;
      if (a_down != b_up) {
        const Line lonely = a_down ? a : b;
        throw InvariantViolation("migrating input " + std::to_string(lonely) + " has no partner at offset " +
                               std::to_string(j) + " of bands " + std::to_string(i) + "," + std::to_string(i + 1));
      }
      if (a_down) st.partners.emplace_back(a, b);
    }
  }
  return run;
}

/// Which columns of a network play the K-Benes parts.
struct KLayout {
  std::vector<std::size_t> matching;
  std::size_t even = 0;
  std::size_t odd = 0;
  std::vector<std::size_t> routing;
};

void route_band_aligned(const Network& net, const KLayout& layout, const Permutation& p, std::size_t k,
                        RoutePlan& plan) {
  const std::size_t n = p.size();
  const unsigned m = log2_exact(n);
  const unsigned kb = log2_exact(k);
  EmbeddedRun run = embedded_run(p, k);

  for (unsigned c = 0; c < kb; ++c) plan.settings[layout.matching[c]] = run.stage.settings[c];
  for (unsigned r = 0; r < kb; ++r) {
    const std::size_t col = layout.routing[r];
    transfer_column(run.looping.settings, 2 * m - 1 - kb + r, m, net.column(col), plan.settings[col]);
  }

  std::vector<Line> occupant(n);
  const auto& pos = run.stage.stage_positions.back();
  for (Line x = 0; x < n; ++x) occupant[pos[x]] = x;
  for (std::size_t col : {layout.even, layout.odd}) {
    const Column& column = net.column(col);
    auto& states = plan.settings[col];
    for (std::size_t s = 0; s < column.size(); ++s) {
      const Switch sw = column.switches()[s];
      const bool down = p[occupant[sw.lo]] / k == sw.lo / k + 1;
      states[s] = down ? SwitchState::cross : SwitchState::straight;
      if (down) std::swap(occupant[sw.lo], occupant[sw.hi]);
    }
  }

  plan.cost.terminal_visits = run.looping.terminal_visits;
  plan.cost.overhead = n;
}

void finish_plan(const Network& net, RoutePlan& plan) {
  plan.cost.switches_set = 0;
  for (const auto& col : plan.settings) {
    plan.cost.switches_set += static_cast<std::uint64_t>(
        std::count_if(col.begin(), col.end(), [](SwitchState s) { return s != SwitchState::unused; }));
  }
  plan.paths.clear();
  for (Line x = 0; x < net.n(); ++x) plan.paths.push_back(trace_path(net, plan, x));
}

RoutePlan start_plan(const Network& net, const Permutation& p) {
  if (p.size() != net.n()) {
    throw SizeMismatch("permutation of size " + std::to_string(p.size()) + " for a network with " +
                       std::to_string(net.n()) + " lines");
  }
  RoutePlan plan;
  plan.network = describe(net);
  plan.permutation = p;
  plan.settings = unused_settings(net);
  plan.bypass.assign(net.band_exchange_groups().size(), BypassChoice::bypassed);
  return plan;
}

void require_kind(const Network& net, NetworkKind kind) {
  if (net.kind() != kind) {
    throw StructuralError("expected a " + std::string(to_string(kind)) + " network, got " +
                          std::string(to_string(net.kind())));
  }
}

}  // namespace

std::string_view to_string(SwitchState state) { return kStateNames[static_cast<std::size_t>(state)]; }

SwitchState parse_switch_state(std::string_view text) {
  for (std::size_t i = 0; i < kStateNames.size(); ++i) {
    if (text == kStateNames[i]) return static_cast<SwitchState>(i);
  }
  throw ParseError("unknown switch state '" + std::string(text) + "'");
}

NetworkRef describe(const Network& net) { return {net.kind(), net.n(), net.k()}; }

Settings unused_settings(const Network& net) {
  Settings s;
  for (const auto& col : net.columns()) s.emplace_back(col.size(), SwitchState::unused);
  return s;
}

TruncatedLooping looping_route_truncated(const Permutation& p, std::size_t levels) {
  const std::size_t n = p.size();
  require_benes_size(n);
  const unsigned m = log2_exact(n);
  if (levels > m - 1) {
    throw OutOfDomain("looping can be truncated after at most " + std::to_string(m - 1) + " levels");
  }
  LoopingEngine engine(n, levels, false);
  std::vector<Line> sigma(p.images().begin(), p.images().end());
  engine.run(sigma, 0, 0);
  TruncatedLooping out;
  out.levels = levels;
  out.settings = std::move(engine.settings_);
  out.residual = std::move(engine.residual_);
  out.terminal_visits = engine.visits_;
  return out;
}

RoutePlan looping_route(const Network& net, const Permutation& p) {
  require_kind(net, NetworkKind::benes);
  RoutePlan plan = start_plan(net, p);
  LoopingEngine engine(net.n(), 0, true);
  std::vector<Line> sigma(p.images().begin(), p.images().end());
  engine.run(sigma, 0, 0);
  plan.settings = std::move(engine.settings_);
  plan.cost.terminal_visits = engine.visits_;
  finish_plan(net, plan);
  return plan;
}

BandDecomposition decompose_bands(const Permutation& p, std::size_t k) {
  const std::size_t n = p.size();
  if (k == 0 || n % k != 0) {
    throw InvalidBandWidth("band width " + std::to_string(k) + " does not divide n = " + std::to_string(n));
  }
  if (p.max_displacement() > k) {
    throw NotKBounded("permutation is not " + std::to_string(k) + "-bounded");
  }
  BandDecomposition d;
  d.k = k;
  d.bands = n / k;
  d.up.resize(d.bands);
  d.down.resize(d.bands);
  d.stationary.resize(d.bands);
  for (Line x = 0; x < n; ++x) {
    const std::size_t from = x / k;
    const std::size_t to = p[x] / k;
    if (to + 1 == from) {
      d.up[from].push_back(x);
    } else if (to == from + 1) {
      d.down[from].push_back(x);
    } else {
      d.stationary[from].push_back(x);
    }
  }
  return d;
}

MatchingStage matching_stage(const Permutation& p, std::size_t k) { return embedded_run(p, k).stage; }

RoutePlan k_benes_route(const Network& net, const Permutation& p) {
  require_kind(net, NetworkKind::k_benes);
  RoutePlan plan = start_plan(net, p);
  const std::size_t k = net.k();
  if (p.max_displacement() > k) {
    throw NotKBounded("permutation is not " + std::to_string(k) + "-bounded (max displacement " +
                      std::to_string(p.max_displacement()) + ")");
  }
  const std::size_t kb = log2_exact(k);
  KLayout layout;
  for (std::size_t c = 0; c < kb; ++c) layout.matching.push_back(c);
  layout.even = kb;
  layout.odd = kb + 1;
  for (std::size_t r = 0; r < kb; ++r) layout.routing.push_back(kb + 2 + r);
  route_band_aligned(net, layout, p, k, plan);
  finish_plan(net, plan);
  return plan;
}

KSubgraph select_k_subgraph(const Network& kr, std::size_t k) {
  require_kind(kr, NetworkKind::kr_benes);
  const std::size_t n = kr.n();
  if (!is_power_of_two(k) || k < 2 || k > n / 4) {
    throw InvalidBandWidth("a KR-Benes carries K-Benes subgraphs for power-of-two 2 <= k <= n/4, not " +
                           std::to_string(k));
  }
  const std::size_t kb = log2_exact(k);
  const auto groups = kr.band_exchange_groups();
  const BandExchangeGroup& g = groups[kb - 1];

  KSubgraph sub;
  sub.k = k;
  sub.bypass.assign(groups.size(), BypassChoice::bypassed);
  sub.bypass[kb - 1] = BypassChoice::used;
  for (std::size_t s = 0; s < kb; ++s) sub.columns.push_back(groups[s].after_column);
  sub.columns.push_back(g.even_column);
  sub.columns.push_back(g.odd_column);
  for (std::size_t r = 0; r < kb; ++r) sub.columns.push_back(g.rejoin_column + r);

  std::vector<Column> cols;
  for (std::size_t i = 0; i < sub.columns.size(); ++i) {
    const Column& src = kr.column(sub.columns[i]);
    ColumnRole role = src.role();
    if (i < kb) role = ColumnRole::matching;
    if (i >= kb + 2) role = ColumnRole::routing;
    cols.emplace_back(n, role, std::vector<Switch>(src.switches().begin(), src.switches().end()));
  }
  sub.view = Network(NetworkKind::k_benes, n, k, std::move(cols));
  return sub;
}

RoutePlan kr_benes_route(const Network& net, const Permutation& p) {
  require_kind(net, NetworkKind::kr_benes);
  RoutePlan plan = start_plan(net, p);
  const std::size_t n = net.n();
  const unsigned m = log2_exact(n);
  const std::size_t k = std::max<std::size_t>(ceil_power_of_two(p.max_displacement()), 2);
  plan.k_used = k;

  if (k > n / 4) {
    const Permutation sigma = p.relabeled([m](Line x) { return reverse_bits(x, m); });
    const Network benes = build_benes(n);
    const RoutePlan full = looping_route(benes, sigma);
    std::vector<std::size_t> seq = net.column_sequence(plan.bypass);
    for (std::size_t c = 0; c < seq.size(); ++c) {
      transfer_column(full.settings, c, m, net.column(seq[c]), plan.settings[seq[c]]);
    }
    plan.cost.terminal_visits = full.cost.terminal_visits;
    plan.cost.overhead = n;
  } else {
    const KSubgraph sub = select_k_subgraph(net, k);
    const std::size_t kb = log2_exact(k);
    KLayout layout;
    layout.matching.assign(sub.columns.begin(), sub.columns.begin() + static_cast<long>(kb));
    layout.even = sub.columns[kb];
    layout.odd = sub.columns[kb + 1];
    layout.routing.assign(sub.columns.begin() + static_cast<long>(kb + 2), sub.columns.end());
    plan.bypass = sub.bypass;
    route_band_aligned(net, layout, p, k, plan);
  }
  finish_plan(net, plan);
  return plan;
}

std::vector<PortRef> trace_path(const Network& net, const RoutePlan& plan, Line input) {
  if (input >= net.n()) throw CorruptPlan("input " + std::to_string(input) + " out of range");
  if (plan.settings.size() != net.depth()) {
    throw CorruptPlan("plan has " + std::to_string(plan.settings.size()) + " columns, network has " +
                      std::to_string(net.depth()));
  }
  for (std::size_t c = 0; c < net.depth(); ++c) {
    if (plan.settings[c].size() != net.column(c).size()) {
      throw CorruptPlan("column " + std::to_string(c) + " has the wrong number of switch settings");
    }
  }
  std::vector<std::size_t> seq;
  try {
    seq = net.column_sequence(plan.bypass);
  } catch (const StructuralError& e) {
    throw CorruptPlan(e.what());
  }
  std::vector<PortRef> path;
  Line line = input;
  for (std::size_t c : seq) {
    const Column& col = net.column(c);
    path.push_back({c, line, PortSide::in});
    if (auto s = col.switch_of(line)) {
      const SwitchState st = plan.settings[c][*s];
      if (st == SwitchState::unused) {
        throw CorruptPlan("input " + std::to_string(input) + " reaches unused switch " + std::to_string(*s) +
                          " of column " + std::to_string(c));
      }
      if (st == SwitchState::cross) line = col.partner(line);
    }
    path.push_back({c, line, PortSide::out});
  }
  return path;
}

}  // namespace krbenes
