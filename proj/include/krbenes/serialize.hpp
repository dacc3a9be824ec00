#pragma once

#include <string>
#include <string_view>

#include "krbenes/analysis.hpp"
#include "krbenes/routing.hpp"
#include "krbenes/topology.hpp"
#include "krbenes/verify.hpp"

namespace krbenes {

// All documents are JSON objects with sorted keys, pretty-printed with two
// spaces and a trailing newline, so equal values give equal bytes.

std::string network_to_json(const Network& net);
/// Rebuilds the canonical network named by the document's kind/n/k and
/// rejects documents whose columns or bypass edges differ from it.
Network network_from_json(std::string_view text);

/// Settings are written as [column, position, state] for every switch; paths
/// are not stored.
std::string plan_to_json(const RoutePlan& plan);
/// Switches missing from the settings list stay unused. Throws StructuralError
/// for entries that do not fit the named network.
RoutePlan plan_from_json(std::string_view text);

std::string report_to_json(const VerifyReport& report);
/// Counts that do not fit a signed 64-bit integer are written as decimal strings.
std::string count_report_to_json(const CountReport& report);

}  // namespace krbenes
