#include "krbenes/matching.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

#include <boost/pending/disjoint_sets.hpp>

#include "krbenes/errors.hpp"
#include "krbenes/routing.hpp"

namespace krbenes {

namespace {

void require_switch_pairs(std::size_t n) {
  if (!is_power_of_two(n) || n < 2) {
    throw InvalidSize("size " + std::to_string(n) + " must be a power of two >= 2");
  }
}

void require_bounded(const Permutation& p, std::size_t k) {
  if (p.max_displacement() > k) {
    throw NotKBounded("permutation is not " + std::to_string(k) + "-bounded (max displacement " +
                      std::to_string(p.max_displacement()) + ")");
  }
}

std::string label_text(unsigned labels) {
  std::string s;
  if (labels & 1u) s += '0';
  if (labels & 2u) s += '1';
  return s;
}

bool in_v1(const CompatibilityGraph& g, Line x) { return x < g.n / 2; }

void check_two_band_level(const Permutation& sigma, const std::vector<int>& dir) {
  const CompatibilityGraph g = build_compatibility_graph(sigma, sigma.size() / 2);
  for (const auto& e : g.edges) {
    const bool same = dir[e.u] == dir[e.v];
    if (e.kind == CompatibilityKind::cross && !same) {
      throw InvariantViolation("cross edge " + std::to_string(e.u) + "-" + std::to_string(e.v) +
                               " splits between subnetworks");
    }
    if (e.kind == CompatibilityKind::straight && same) {
      throw InvariantViolation("straight edge " + std::to_string(e.u) + "-" + std::to_string(e.v) +
                               " enters one subnetwork");
    }
  }
  if (!straight_pair_counts(g).balanced()) throw InvariantViolation("straight pairs unbalanced between sides");
  level_matching(g, dir);
}

/// One matching column per level: color, record the chosen bit per packet,
/// split into the two half-size problems.
void descend(const std::vector<Line>& packet, const std::vector<Line>& dest, std::size_t level, std::size_t levels,
             bool two_bands, std::vector<Line>& offset) {
  if (level == levels) return;
  const Permutation sigma{std::vector<Line>(dest)};
  const std::vector<int> dir = first_stage_directions(sigma);
  if (two_bands) check_two_band_level(sigma, dir);

  const std::size_t half = packet.size() / 2;
  std::array<std::vector<Line>, 2> sub_packet{std::vector<Line>(half), std::vector<Line>(half)};
  std::array<std::vector<Line>, 2> sub_dest{std::vector<Line>(half), std::vector<Line>(half)};
  for (std::size_t x = 0; x < packet.size(); ++x) {
    const int d = dir[x];
    offset[packet[x]] |= static_cast<Line>(d) << level;
    sub_packet[d][x >> 1] = packet[x];
    sub_dest[d][x >> 1] = dest[x] >> 1;
  }
  for (int d : {0, 1}) descend(sub_packet[d], sub_dest[d], level + 1, levels, two_bands, offset);
}

}  // namespace

PermutationGraph build_permutation_graph(const Permutation& p) {
  const std::size_t n = p.size();
  require_switch_pairs(n);
  const std::size_t h = n / 2;
  PermutationGraph g;
  g.n = n;
  for (Line i = 0; i < n; ++i) g.edges.emplace_back(i >> 1, p[i] >> 1);
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());

  boost::disjoint_sets_with_storage<> sets(2 * h);
  for (const auto& [in, out] : g.edges) sets.union_set(in, h + out);
  std::map<std::size_t, std::size_t> ids;
  auto id_of = [&](std::size_t node) {
    return ids.emplace(sets.find_set(node), ids.size()).first->second;
  };
  for (std::size_t s = 0; s < h; ++s) g.input_component.push_back(id_of(s));
  for (std::size_t s = 0; s < h; ++s) g.output_component.push_back(id_of(h + s));
  g.components = ids.size();
  return g;
}

std::optional<Line> CompatibilityGraph::neighbour(Line input, unsigned label) const {
  for (const auto& e : edges) {
    if (!(e.labels & (1u << label))) continue;
    if (e.u == input) return e.v;
    if (e.v == input) return e.u;
  }
  return std::nullopt;
}

CompatibilityGraph build_compatibility_graph(const Permutation& p, std::size_t k) {
  const std::size_t n = p.size();
  require_switch_pairs(n);
  if (n < 4 || k != n / 2) {
    throw UnsupportedBandWidth("compatibility graphs are defined for two bands of width >= 2 (k = n/2)");
  }
  require_bounded(p, k);
  const std::size_t h = n / 2;

  CompatibilityGraph g;
  g.n = n;
  for (Line x = 0; x < n; ++x) {
    if (x < k && p[x] >= k) g.v1.push_back({x, p[x]});
    if (x >= k && p[x] < k) g.v2.push_back({x, p[x]});
  }

  std::map<std::tuple<Line, Line, CompatibilityKind>, unsigned> found;
  for (unsigned band = 0; band < 2; ++band) {
    auto inside = [&](Line line) { return line / k == band; };
    boost::disjoint_sets_with_storage<> sets(2 * h);
    for (Line x = 0; x < n; ++x) {
      if (inside(x) && inside(p[x])) sets.union_set(std::size_t{x >> 1}, h + (p[x] >> 1));
    }
    // every migrating input leaves one loose end in this band's subgraph
    std::map<std::size_t, std::vector<Line>> ends;
    for (Line x = 0; x < n; ++x) {
      if (inside(x) && !inside(p[x])) ends[sets.find_set(x >> 1)].push_back(x);
      if (!inside(x) && inside(p[x])) ends[sets.find_set(h + (p[x] >> 1))].push_back(x);
    }
    for (auto& [root, members] : ends) {
      if (members.size() != 2) {
        throw InvariantViolation("a stationary path of band " + std::to_string(band) + " has " +
                                 std::to_string(members.size()) + " loose ends");
      }
      const Line u = std::min(members[0], members[1]);
      const Line v = std::max(members[0], members[1]);
      const bool same_side = (u < k) == (v < k);
      found[{u, v, same_side ? CompatibilityKind::straight : CompatibilityKind::cross}] |= 1u << band;
    }
  }
  for (const auto& [key, labels] : found) {
    g.edges.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), labels});
  }
  return g;
}

StraightPairCounts straight_pair_counts(const CompatibilityGraph& g) {
  StraightPairCounts c;
  for (const auto& e : g.edges) {
    if (e.kind != CompatibilityKind::straight) continue;
    for (unsigned label = 0; label < 2; ++label) {
      if (!(e.labels & (1u << label))) continue;
      if (in_v1(g, e.u)) {
        ++c.v1[label];
      } else {
        ++c.v2[label];
      }
    }
  }
  return c;
}

std::vector<int> first_stage_directions(const Permutation& p) {
  const std::size_t n = p.size();
  require_switch_pairs(n);
  const std::size_t h = n / 2;
  const unsigned width = log2_exact(h);
  const Permutation inv = p.inverse();

  std::vector<std::size_t> order(h);
  for (std::size_t t = 0; t < h; ++t) order[t] = t;
  std::sort(order.begin(), order.end(), [width](std::size_t a, std::size_t b) {
    return reverse_bits(static_cast<Line>(a), width) < reverse_bits(static_cast<Line>(b), width);
  });

  std::vector<int> dir(n, -1);
  std::vector<Line> stack;
  for (std::size_t t : order) {
    const auto start = static_cast<Line>(2 * t);
    if (dir[start] != -1) continue;
    dir[start] = 0;
    stack.push_back(start);
    while (!stack.empty()) {
      const Line x = stack.back();
      stack.pop_back();
      for (Line y : {x ^ 1u, inv[p[x] ^ 1u]}) {
        if (dir[y] == -1) {
          dir[y] = 1 - dir[x];
          stack.push_back(y);
        } else if (dir[y] == dir[x]) {
          throw InvariantViolation("constraint cycle through input " + std::to_string(x) + " has odd length");
        }
      }
    }
  }
  return dir;
}

std::vector<std::pair<Line, Line>> level_matching(const CompatibilityGraph& g, const std::vector<int>& direction) {
  std::map<Line, bool> matched;
  for (const auto& v : g.v1) matched[v.input] = false;
  for (const auto& v : g.v2) matched[v.input] = false;
  std::vector<std::pair<Line, Line>> pairs;
  auto take = [&](Line a, Line b) {
    if (!in_v1(g, a)) std::swap(a, b);
    if (direction[a] != direction[b]) {
      throw InvariantViolation("matched inputs " + std::to_string(a) + " and " + std::to_string(b) +
                               " enter different subnetworks");
    }
    matched[a] = matched[b] = true;
    pairs.emplace_back(a, b);
  };

  for (const auto& v : g.v1) {
    auto x = g.neighbour(v.input, 0);
    if (x && !in_v1(g, *x)) take(v.input, *x);
  }

  for (const auto& e : g.edges) {
    if (e.kind != CompatibilityKind::straight || !(e.labels & 1u) || in_v1(g, e.u)) continue;
    const Line x1 = e.u, x2 = e.v;
    if (matched[x1] || matched[x2]) continue;
    auto z = g.neighbour(x1, 1);
    if (z && in_v1(g, *z) && !matched[*z]) {
      // odd path from x1 ends at an output switch of a down-migrating input
      take(*z, x1);
      auto y2 = g.neighbour(*z, 0);
      if (y2 && in_v1(g, *y2) && !matched[*y2]) take(*y2, x2);
    } else if (z && *z == x2) {
      // even path back to x2: any closed straight pair in v1 serves both ways
      for (const auto& f : g.edges) {
        if (f.kind != CompatibilityKind::straight || f.labels != 3u || !in_v1(g, f.u)) continue;
        if (matched[f.u] || matched[f.v]) continue;
        const bool direct = direction[f.u] == direction[x1];
        take(direct ? f.u : f.v, x1);
        take(direct ? f.v : f.u, x2);
        break;
      }
    }
  }

  for (const auto& y : g.v1) {
    if (matched[y.input]) continue;
    for (const auto& x : g.v2) {
      if (!matched[x.input] && direction[x.input] == direction[y.input]) {
        take(y.input, x.input);
        break;
      }
    }
    if (!matched[y.input]) {
      throw InvariantViolation("no partner in the same subnetwork for input " + std::to_string(y.input));
    }
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

MatchingAssignment compatibility_matching(const Permutation& p, std::size_t k) {
  const std::size_t n = p.size();
  require_switch_pairs(n);
  if (!is_power_of_two(k) || k > n / 2) {
    throw InvalidBandWidth("band width " + std::to_string(k) + " must be a power of two <= n/2");
  }
  require_bounded(p, k);
  const std::size_t levels = log2_exact(k);

  std::vector<Line> packet(n), dest(n), offset(n, 0);
  for (Line x = 0; x < n; ++x) {
    packet[x] = x;
    dest[x] = p[x];
  }
  descend(packet, dest, 0, levels, n / k == 2, offset);

  std::vector<Line> occupant(n);
  for (Line x = 0; x < n; ++x) occupant[(x / k) * k + offset[x]] = x;

  MatchingAssignment out;
  out.k = k;
  for (std::size_t i = 0; i + 1 < n / k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const Line a = occupant[i * k + j];
      const Line b = occupant[(i + 1) * k + j];
      const bool a_down = p[a] / k == i + 1;
      const bool b_up = p[b] / k == i;
      if (a_down != b_up) {
        throw InvariantViolation("input " + std::to_string(a_down ? a : b) + " reaches offset " + std::to_string(j) +
                                 " without a partner");
      }
      if (a_down) out.pairs.emplace_back(a, b);
    }
  }
  std::sort(out.pairs.begin(), out.pairs.end());
  return out;
}

LinkBalanceReport check_link_balance(const Permutation& p, std::size_t k) {
  const std::size_t n = p.size();
  const MatchingStage ms = matching_stage(p, k);
  const std::size_t bands = n / k;
  LinkBalanceReport report;
  report.k = k;
  for (std::size_t l = 0; l + 1 < ms.stage_positions.size(); ++l) {
    const auto& pos = ms.stage_positions[l + 1];
    LinkBalanceStage st;
    st.stage = l;
    st.bands.resize(bands);
    const Line mask = (Line{2} << l) - 1;
    // per subnetwork reached so far: [band][offset bits] -> (up, down)
    std::vector<std::map<Line, std::pair<std::size_t, std::size_t>>> reached(bands);
    for (Line x = 0; x < n; ++x) {
      const std::size_t band = x / k;
      const std::size_t to = p[x] / k;
      const bool top = ((pos[x] >> l) & 1u) == 0;
      auto& c = st.bands[band];
      if (to + 1 == band) {
        ++(top ? c.up_top : c.up_bottom);
        ++reached[band][pos[x] & mask].first;
      } else if (to == band + 1) {
        ++(top ? c.down_top : c.down_bottom);
        ++reached[band][pos[x] & mask].second;
      }
    }
    for (std::size_t i = 1; i < bands; ++i) {
      if (st.bands[i].up_top != st.bands[i - 1].down_top || st.bands[i].up_bottom != st.bands[i - 1].down_bottom) {
        st.holds = false;
      }
      for (Line r = 0; r <= mask; ++r) {
        const auto up = reached[i].count(r) ? reached[i].at(r).first : 0;
        const auto down = reached[i - 1].count(r) ? reached[i - 1].at(r).second : 0;
        if (up != down) st.holds = false;
      }
    }
    report.holds = report.holds && st.holds;
    report.stages.push_back(std::move(st));
  }
  return report;
}

std::string to_dot(const PermutationGraph& g) {
  std::ostringstream os;
  os << "graph \"permutation_n" << g.n << "\" {\n  rankdir=LR;\n  node [shape=box];\n";
  for (std::size_t s = 0; s < g.n / 2; ++s) {
    os << "  in" << s << " [label=\"S(" << 2 * s << "," << 2 * s + 1 << ")\"];\n";
  }
  for (std::size_t s = 0; s < g.n / 2; ++s) {
    os << "  out" << s << " [label=\"S(" << 2 * s << "," << 2 * s + 1 << ")\"];\n";
  }
  for (const auto& [in, out] : g.edges) os << "  in" << in << " -- out" << out << ";\n";
  os << "}\n";
  return os.str();
}

std::string to_dot(const CompatibilityGraph& g) {
  std::ostringstream os;
  os << "graph \"compatibility_n" << g.n << "\" {\n  node [shape=ellipse];\n";
  for (const auto* side : {&g.v1, &g.v2}) {
    for (const auto& v : *side) {
      os << "  v" << v.input << " [label=\"(" << v.input << "," << v.output << ")\"];\n";
    }
  }
  for (const auto& e : g.edges) {
    os << "  v" << e.u << " -- v" << e.v << " [label=\"" << label_text(e.labels) << "\"";
    if (e.kind == CompatibilityKind::cross) os << ", style=dashed";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace krbenes
