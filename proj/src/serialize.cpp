#include "krbenes/serialize.hpp"

#include <limits>

#include "json.hpp"
#include "krbenes/errors.hpp"

namespace krbenes {

using nlohmann::json;

namespace {

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

json parse_document(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

/// Runs `f`, turning missing or mistyped fields into StructuralError.
template <typename F>
auto read_fields(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw StructuralError(std::string("malformed ") + what + " document: " + e.what());
  }
}

json big_to_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(v);
  }
  return v.str();
}

std::string_view to_string(BypassKind kind) {
  return kind == BypassKind::to_mirror_stage ? "to-mirror-stage" : "skip-band-exchange";
}

std::string_view to_string(BypassChoice choice) { return choice == BypassChoice::used ? "used" : "bypassed"; }

BypassChoice parse_choice(const std::string& text) {
  if (text == "used") return BypassChoice::used;
  if (text == "bypassed") return BypassChoice::bypassed;
  throw StructuralError("unknown bypass choice '" + text + "'");
}

json network_ref(const NetworkRef& ref) { return {{"kind", to_string(ref.kind)}, {"n", ref.n}, {"k", ref.k}}; }

}  // namespace

std::string network_to_json(const Network& net) {
  json doc;
  doc["kind"] = to_string(net.kind());
  doc["n"] = net.n();
  if (net.k()) doc["k"] = net.k();
  doc["columns"] = json::array();
  for (const auto& col : net.columns()) {
    json sw = json::array();
    for (const auto& s : col.switches()) sw.push_back({s.lo, s.hi});
    doc["columns"].push_back({{"role", to_string(col.role())}, {"switches", sw}});
  }
  doc["bypass_edges"] = json::array();
  for (const auto& e : net.bypass_edges()) {
    doc["bypass_edges"].push_back(
        {{"from", {e.from.column, e.from.line}}, {"to", {e.to.column, e.to.line}}, {"kind", to_string(e.kind)}});
  }
  return dump(doc);
}

Network network_from_json(std::string_view text) {
  const json doc = parse_document(text);
  const Network net = read_fields("network", [&] {
    const auto kind = parse_network_kind(doc.at("kind").get<std::string>());
    const auto n = doc.at("n").get<std::size_t>();
    const auto k = doc.value("k", std::size_t{0});
    return build_network(kind, n, k);
  });
  const json canonical = json::parse(network_to_json(net));
  for (const char* field : {"columns", "bypass_edges"}) {
    if (!doc.contains(field) || doc.at(field) != canonical.at(field)) {
      throw StructuralError(std::string("network document's ") + field + " do not match a canonical " +
                            std::string(to_string(net.kind())) + " network");
    }
  }
  return net;
}

std::string plan_to_json(const RoutePlan& plan) {
  json doc;
  doc["network"] = network_ref(plan.network);
  doc["permutation"] = std::vector<Line>(plan.permutation.images().begin(), plan.permutation.images().end());
  if (plan.k_used) doc["k_used"] = *plan.k_used;
  json settings = json::array();
  for (std::size_t c = 0; c < plan.settings.size(); ++c) {
    for (std::size_t s = 0; s < plan.settings[c].size(); ++s) {
      settings.push_back({c, s, to_string(plan.settings[c][s])});
    }
  }
  doc["settings"] = settings;
  const Network net = build_network(plan.network.kind, plan.network.n, plan.network.k);
  const auto groups = net.band_exchange_groups();
  doc["bypass"] = json::array();
  for (std::size_t g = 0; g < plan.bypass.size(); ++g) {
    json entry{{"choice", to_string(plan.bypass[g])}};
    if (g < groups.size()) {
      entry["stage"] = groups[g].stage;
      entry["band_width"] = groups[g].band_width;
    }
    doc["bypass"].push_back(entry);
  }
  doc["cost"] = {{"terminal_visits", plan.cost.terminal_visits},
                 {"overhead", plan.cost.overhead},
                 {"switches_set", plan.cost.switches_set}};
  return dump(doc);
}

RoutePlan plan_from_json(std::string_view text) {
  const json doc = parse_document(text);
  return read_fields("plan", [&] {
    RoutePlan plan;
    const json& ref = doc.at("network");
    plan.network.kind = parse_network_kind(ref.at("kind").get<std::string>());
    plan.network.n = ref.at("n").get<std::size_t>();
    plan.network.k = ref.value("k", std::size_t{0});
    const Network net = build_network(plan.network.kind, plan.network.n, plan.network.k);

    try {
      plan.permutation = Permutation(doc.at("permutation").get<std::vector<Line>>());
    } catch (const ParseError& e) {
      throw StructuralError(std::string("plan permutation: ") + e.what());
    }
    if (doc.contains("k_used")) plan.k_used = doc.at("k_used").get<std::size_t>();

    plan.settings = unused_settings(net);
    for (const auto& entry : doc.at("settings")) {
      const auto c = entry.at(0).get<std::size_t>();
      const auto s = entry.at(1).get<std::size_t>();
      if (entry.size() != 3 || c >= plan.settings.size() || s >= plan.settings[c].size()) {
        throw StructuralError("setting " + entry.dump() + " does not name a switch of the network");
      }
      try {
        plan.settings[c][s] = parse_switch_state(entry.at(2).get<std::string>());
      } catch (const ParseError& e) {
        throw StructuralError(e.what());
      }
    }
    for (const auto& entry : doc.at("bypass")) {
      plan.bypass.push_back(parse_choice(entry.at("choice").get<std::string>()));
    }
    const json& cost = doc.at("cost");
    plan.cost.terminal_visits = cost.at("terminal_visits").get<std::uint64_t>();
    plan.cost.overhead = cost.at("overhead").get<std::uint64_t>();
    plan.cost.switches_set = cost.at("switches_set").get<std::uint64_t>();
    return plan;
  });
}

std::string report_to_json(const VerifyReport& report) {
  json doc;
  doc["ok"] = report.ok;
  doc["delivered"] = report.delivered;
  doc["violations"] = json::array();
  for (const auto& v : report.violations) {
    json entry{{"kind", to_string(v.kind)}, {"column", v.column}, {"line", v.line}};
    entry["switch"] = v.switch_index ? json(*v.switch_index) : json(nullptr);
    doc["violations"].push_back(entry);
  }
  return dump(doc);
}

std::string count_report_to_json(const CountReport& report) {
  json doc;
  doc["n"] = report.n;
  doc["k"] = report.k;
  doc["K"] = report.K;
  doc["formula_count"] = big_to_json(report.formula_count);
  doc["exhaustive_count"] = report.exhaustive_count ? big_to_json(*report.exhaustive_count) : json(nullptr);
  doc["agrees"] = report.agrees ? json(*report.agrees) : json(nullptr);
  return dump(doc);
}

}  // namespace krbenes
