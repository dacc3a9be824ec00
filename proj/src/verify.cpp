#include "krbenes/verify.hpp"

#include <algorithm>
#include <array>

#include "krbenes/errors.hpp"

namespace krbenes {

namespace {

constexpr std::array kViolationNames{"wrong-output", "port-collision", "inconsistent-switch"};

void check_shape(const Network& net, const RoutePlan& plan, const Permutation& p) {
  if (plan.network != describe(net)) {
    throw StructuralError("plan was made for " + std::string(to_string(plan.network.kind)) + " n=" +
                          std::to_string(plan.network.n) + " k=" + std::to_string(plan.network.k) + ", not for " +
                          std::string(to_string(net.kind())) + " n=" + std::to_string(net.n()) + " k=" +
                          std::to_string(net.k()));
  }
  if (p.size() != net.n()) {
    throw StructuralError("permutation of size " + std::to_string(p.size()) + " for " + std::to_string(net.n()) +
                          " lines");
  }
  if (plan.settings.size() != net.depth()) {
    throw StructuralError("plan has " + std::to_string(plan.settings.size()) + " columns, network has " +
                          std::to_string(net.depth()));
  }
  for (std::size_t c = 0; c < net.depth(); ++c) {
    if (plan.settings[c].size() != net.column(c).size()) {
      throw StructuralError("column " + std::to_string(c) + " has " + std::to_string(plan.settings[c].size()) +
                            " settings for " + std::to_string(net.column(c).size()) + " switches");
    }
  }
}

void add_unique(std::vector<Violation>& out, const Violation& v) {
  if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
}

/// Recorded paths must agree with the settings and be edge-disjoint.
void check_recorded_paths(const Network& net, const RoutePlan& plan, const Permutation& p, VerifyReport& report) {
  if (plan.paths.empty()) return;
  const std::size_t n = net.n();
  if (plan.paths.size() != n) {
    throw StructuralError("plan records " + std::to_string(plan.paths.size()) + " paths for " + std::to_string(n) +
                          " inputs");
  }
  std::vector<std::vector<std::array<int, 2>>> owner(net.depth(), std::vector<std::array<int, 2>>(n, {-1, -1}));
  for (Line x = 0; x < n; ++x) {
    const auto& path = plan.paths[x];
    if (path.size() % 2 != 0) throw StructuralError("path of input " + std::to_string(x) + " is truncated");
    for (const auto& port : path) {
      if (port.column >= net.depth() || port.line >= n) {
        throw StructuralError("path of input " + std::to_string(x) + " leaves the network");
      }
      auto& slot = owner[port.column][port.line][port.side == PortSide::in ? 0 : 1];
      if (slot >= 0 && slot != static_cast<int>(x)) {
        add_unique(report.violations, {ViolationKind::port_collision, port.column, port.line,
                                       net.column(port.column).switch_of(port.line)});
      }
      slot = static_cast<int>(x);
    }
    for (std::size_t i = 0; i + 1 < path.size(); i += 2) {
      const PortRef& in = path[i];
      const PortRef& out = path[i + 1];
      const Column& col = net.column(in.column);
      auto s = col.switch_of(in.line);
      if (!s) continue;
      const SwitchState implied = in.line == out.line ? SwitchState::straight : SwitchState::cross;
      if (out.column != in.column || (out.line != in.line && out.line != col.partner(in.line)) ||
          plan.settings[in.column][*s] != implied) {
        add_unique(report.violations, {ViolationKind::inconsistent_switch, in.column, in.line, s});
      }
    }
    if (path.empty() || path.front().line != x || path.back().line != p[x]) {
      const std::size_t c = path.empty() ? 0 : path.back().column;
      const Line l = path.empty() ? x : path.back().line;
      add_unique(report.violations, {ViolationKind::wrong_output, c, l, net.column(c).switch_of(l)});
    }
  }
}

}  // namespace

std::string_view to_string(ViolationKind kind) { return kViolationNames[static_cast<std::size_t>(kind)]; }

VerifyReport verify_plan(const Network& net, const RoutePlan& plan, const Permutation& p) {
  check_shape(net, plan, p);
  const std::vector<std::size_t> seq = net.column_sequence(plan.bypass);
  const std::size_t n = net.n();

  VerifyReport report;
  std::vector<std::vector<int>> traversals(net.depth());
  for (std::size_t c = 0; c < net.depth(); ++c) traversals[c].assign(net.column(c).size(), 0);

  std::vector<Line> line(n);
  for (Line x = 0; x < n; ++x) line[x] = x;
  for (std::size_t c : seq) {
    const Column& col = net.column(c);
    std::vector<int> holder(n, -1);
    for (Line x = 0; x < n; ++x) {
      Line out = line[x];
      if (auto s = col.switch_of(line[x])) {
        ++traversals[c][*s];
        const SwitchState st = plan.settings[c][*s];
        if (st == SwitchState::unused) {
          add_unique(report.violations, {ViolationKind::inconsistent_switch, c, line[x], *s});
        } else if (st == SwitchState::cross) {
          out = col.partner(line[x]);
        }
      }
      if (holder[out] >= 0) {
        report.violations.push_back({ViolationKind::port_collision, c, out, col.switch_of(out)});
      }
      holder[out] = static_cast<int>(x);
      line[x] = out;
    }
  }

  for (std::size_t c = 0; c < net.depth(); ++c) {
    for (std::size_t s = 0; s < traversals[c].size(); ++s) {
      if (traversals[c][s] == 0 && plan.settings[c][s] != SwitchState::unused) {
        report.violations.push_back({ViolationKind::inconsistent_switch, c, net.column(c).switches()[s].lo, s});
      }
    }
  }

  check_recorded_paths(net, plan, p, report);

  report.delivered = line;
  const std::size_t last = seq.empty() ? 0 : seq.back();
  for (Line x = 0; x < n; ++x) {
    if (line[x] != p[x]) {
      add_unique(report.violations, {ViolationKind::wrong_output, last, line[x], net.column(last).switch_of(line[x])});
    }
  }
  report.ok = report.violations.empty();
  return report;
}

RoutePlan flip_switch(const RoutePlan& plan, std::size_t column, std::size_t switch_index) {
  RoutePlan out = plan;
  auto& st = out.settings.at(column).at(switch_index);
  if (st == SwitchState::unused) throw CorruptPlan("cannot flip an unused switch");
  st = st == SwitchState::straight ? SwitchState::cross : SwitchState::straight;
  return out;
}

}  // namespace krbenes
