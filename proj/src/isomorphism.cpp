#include "krbenes/isomorphism.hpp"

#include <algorithm>
#include <map>
#include <queue>

#include "krbenes/errors.hpp"

namespace krbenes {

LayeredGraph layered_graph(std::size_t n, std::span<const Column> columns) {
  LayeredGraph g;
  g.lines = n;
  g.layers = columns.size() + 2;
  for (std::size_t x = 0; x < n; ++x) g.layer.push_back(0);
  std::vector<int> first_node(columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    first_node[c] = static_cast<int>(g.layer.size());
    for (std::size_t p = 0; p < columns[c].size(); ++p) g.layer.push_back(static_cast<int>(c + 1));
  }
  const int out_base = static_cast<int>(g.layer.size());
  for (std::size_t x = 0; x < n; ++x) g.layer.push_back(static_cast<int>(columns.size() + 1));

  g.succ.resize(g.layer.size());
  g.pred.resize(g.layer.size());
  for (Line x = 0; x < n; ++x) {
    int prev = static_cast<int>(x);
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (auto s = columns[c].switch_of(x)) {
        const int node = first_node[c] + static_cast<int>(*s);
        g.wires.push_back({prev, node, x});
        prev = node;
      }
    }
    g.wires.push_back({prev, out_base + static_cast<int>(x), x});
  }
  for (const auto& w : g.wires) {
    g.succ[w.from].push_back(w.to);
    g.pred[w.to].push_back(w.from);
  }
  return g;
}

namespace {

int multiplicity(const std::vector<int>& adj, int target) {
  return static_cast<int>(std::count(adj.begin(), adj.end(), target));
}

/// Joint colour refinement of two graphs. Returns colours for a's nodes followed
/// by b's nodes.
std::vector<int> refine_colours(const LayeredGraph& a, const LayeredGraph& b) {
  const std::size_t na = a.node_count();
  const std::size_t total = na + b.node_count();
  std::vector<int> colour(total);
  for (std::size_t v = 0; v < na; ++v) colour[v] = a.layer[v];
  for (std::size_t v = 0; v < b.node_count(); ++v) colour[na + v] = b.layer[v];

  auto adj = [&](std::size_t v, bool forward) -> const std::vector<int>& {
    if (v < na) return forward ? a.succ[v] : a.pred[v];
    return forward ? b.succ[v - na] : b.pred[v - na];
  };
  auto offset = [&](std::size_t v) { return v < na ? 0 : static_cast<int>(na); };

  std::size_t classes = 0;
  while (true) {
    std::map<std::vector<int>, int> ids;
    std::vector<int> next(total);
    for (std::size_t v = 0; v < total; ++v) {
      std::vector<int> sig{colour[v]};
      std::vector<int> s, p;
      for (int u : adj(v, true)) s.push_back(colour[u + offset(v)]);
      for (int u : adj(v, false)) p.push_back(colour[u + offset(v)]);
      std::sort(s.begin(), s.end());
      std::sort(p.begin(), p.end());
      sig.push_back(-1);
      sig.insert(sig.end(), s.begin(), s.end());
      sig.push_back(-2);
      sig.insert(sig.end(), p.begin(), p.end());
      auto [it, inserted] = ids.emplace(std::move(sig), static_cast<int>(ids.size()));
      next[v] = it->second;
    }
    colour = std::move(next);
    if (ids.size() == classes) break;
    classes = ids.size();
  }
  return colour;
}

class Matcher {
 public:
  Matcher(const LayeredGraph& a, const LayeredGraph& b, std::vector<int> colour, std::size_t budget)
      : a_(a), b_(b), colour_(std::move(colour)), budget_(budget) {
    const std::size_t na = a.node_count();
    map_.assign(na, -1);
    used_.assign(b.node_count(), false);
    colour_a_.assign(colour_.begin(), colour_.begin() + static_cast<long>(na));
    colour_b_.assign(colour_.begin() + static_cast<long>(na), colour_.end());
    build_order();
  }

  bool run() { return extend(0); }
  const std::vector<int>& mapping() const { return map_; }

 private:
  struct Step {
    int node;
    int anchor;    // earlier node adjacent to `node`, or -1
    bool forward;  // true if node is a successor of anchor
  };

  void build_order() {
    const std::size_t na = a_.node_count();
    std::vector<bool> seen(na, false);
    for (std::size_t root = 0; root < na; ++root) {
      if (seen[root]) continue;
      std::queue<int> q;
      q.push(static_cast<int>(root));
      seen[root] = true;
      order_.push_back({static_cast<int>(root), -1, true});
      while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (bool fwd : {true, false}) {
          for (int v : fwd ? a_.succ[u] : a_.pred[u]) {
            if (seen[v]) continue;
            seen[v] = true;
            order_.push_back({v, u, fwd});
            q.push(v);
          }
        }
      }
    }
  }

  bool consistent(int u, int v) const {
    if (colour_a_[u] != colour_b_[v]) return false;
    for (int w : a_.succ[u]) {
      if (map_[w] >= 0 && multiplicity(a_.succ[u], w) != multiplicity(b_.succ[v], map_[w])) return false;
    }
    for (int w : a_.pred[u]) {
      if (map_[w] >= 0 && multiplicity(a_.pred[u], w) != multiplicity(b_.pred[v], map_[w])) return false;
    }
    return true;
  }

  bool extend(std::size_t depth) {
    if (depth == order_.size()) return true;
    const Step& st = order_[depth];
    std::vector<int> candidates;
    if (st.anchor >= 0) {
      const int image = map_[st.anchor];
      for (int v : st.forward ? b_.succ[image] : b_.pred[image]) {
        if (!used_[v] && std::find(candidates.begin(), candidates.end(), v) == candidates.end()) {
          candidates.push_back(v);
        }
      }
    } else {
      for (std::size_t v = 0; v < b_.node_count(); ++v) {
        if (!used_[v]) candidates.push_back(static_cast<int>(v));
      }
    }
    for (int v : candidates) {
      if (++visited_ > budget_) throw BudgetExceeded("isomorphism search exceeded its budget");
      if (!consistent(st.node, v)) continue;
      map_[st.node] = v;
      used_[v] = true;
      if (extend(depth + 1)) return true;
      map_[st.node] = -1;
      used_[v] = false;
    }
    return false;
  }

  const LayeredGraph& a_;
  const LayeredGraph& b_;
  std::vector<int> colour_;
  std::vector<int> colour_a_, colour_b_;
  std::size_t budget_;
  std::size_t visited_ = 0;
  std::vector<int> map_;
  std::vector<bool> used_;
  std::vector<Step> order_;
};

}  // namespace

std::optional<LayeredIsomorphism> find_layered_isomorphism(const LayeredGraph& a, const LayeredGraph& b,
                                                           std::size_t budget) {
  if (a.lines != b.lines || a.layers != b.layers || a.node_count() != b.node_count() ||
      a.wires.size() != b.wires.size()) {
    return std::nullopt;
  }
  std::vector<int> count_a(a.layers, 0), count_b(b.layers, 0);
  for (int l : a.layer) ++count_a[l];
  for (int l : b.layer) ++count_b[l];
  if (count_a != count_b) return std::nullopt;

  auto colour = refine_colours(a, b);
  std::map<int, int> balance;
  for (std::size_t v = 0; v < a.node_count(); ++v) ++balance[colour[v]];
  for (std::size_t v = a.node_count(); v < colour.size(); ++v) --balance[colour[v]];
  for (const auto& [c, d] : balance) {
    if (d != 0) return std::nullopt;
  }

  Matcher matcher(a, b, std::move(colour), budget);
  if (!matcher.run()) return std::nullopt;

  LayeredIsomorphism iso;
  iso.node_map = matcher.mapping();
  iso.line_maps.assign(a.layers - 1, std::vector<Line>(a.lines, 0));
  std::vector<bool> wire_taken(b.wires.size(), false);
  for (const auto& w : a.wires) {
    const int from = iso.node_map[w.from];
    const int to = iso.node_map[w.to];
    for (std::size_t i = 0; i < b.wires.size(); ++i) {
      if (!wire_taken[i] && b.wires[i].from == from && b.wires[i].to == to) {
        wire_taken[i] = true;
        for (int l = a.layer[w.from]; l < a.layer[w.to]; ++l) iso.line_maps[l][w.line] = b.wires[i].line;
        break;
      }
    }
  }
  return iso;
}

}  // namespace krbenes
