#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "krbenes/permutation.hpp"
#include "krbenes/routing.hpp"
#include "krbenes/topology.hpp"

namespace krbenes {

enum class ViolationKind { wrong_output, port_collision, inconsistent_switch };

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind = ViolationKind::wrong_output;
  std::size_t column = 0;
  Line line = 0;
  std::optional<std::size_t> switch_index;
  friend bool operator==(const Violation&, const Violation&) = default;
};

struct VerifyReport {
  bool ok = false;
  std::vector<Line> delivered;
  std::vector<Violation> violations;
};

/// Pushes all n inputs through the plan's settings and bypass choices and
/// checks delivery against p. A plan that does not fit the network (wrong
/// descriptor, settings shape or bypass list) throws StructuralError; every
/// other defect is reported as a violation.
///
/// An unused switch on some input's path is an inconsistent-switch violation
/// (the input is carried straight so the rest of the run stays meaningful), as
/// is a set switch that no input traverses.
VerifyReport verify_plan(const Network& net, const RoutePlan& plan, const Permutation& p);

/// Copy of `plan` with switch `switch_index` of `column` flipped between
/// straight and cross. Recorded paths are left as they were.
RoutePlan flip_switch(const RoutePlan& plan, std::size_t column, std::size_t switch_index);

}  // namespace krbenes
