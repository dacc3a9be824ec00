#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "krbenes/analysis.hpp"
#include "krbenes/errors.hpp"
#include "krbenes/generators.hpp"
#include "krbenes/matching.hpp"
#include "krbenes/routing.hpp"
#include "krbenes/serialize.hpp"
#include "krbenes/topology.hpp"
#include "krbenes/verify.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace krbenes;

namespace {

py::object to_python_int(const BigInt& v) { return py::module_::import("builtins").attr("int")(v.str()); }

py::object to_fraction(const BigRational& v) {
  auto fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(to_python_int(boost::multiprecision::numerator(v)),
                  to_python_int(boost::multiprecision::denominator(v)));
}

py::dict cost_dict(const ControlCost& c) {
  return py::dict("terminal_visits"_a = c.terminal_visits, "overhead"_a = c.overhead,
                  "switches_set"_a = c.switches_set);
}

py::list port_list(const std::vector<PortRef>& path) {
  py::list out;
  for (const auto& p : path) out.append(py::make_tuple(p.column, p.line, p.side == PortSide::in ? "in" : "out"));
  return out;
}

}  // namespace

PYBIND11_MODULE(krbenes, m) {
  m.doc() = "Benes-family permutation networks: construction, routing, verification, counting";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidSize>(m, "InvalidSize", base);
  py::register_exception<InvalidBandWidth>(m, "InvalidBandWidth", base);
  py::register_exception<UnsupportedBandWidth>(m, "UnsupportedBandWidth", base);
  py::register_exception<NotKBounded>(m, "NotKBounded", base);
  py::register_exception<SizeMismatch>(m, "SizeMismatch", base);
  py::register_exception<ParseError>(m, "ParseError", base);
  py::register_exception<StructuralError>(m, "StructuralError", base);
  py::register_exception<CorruptPlan>(m, "CorruptPlan", base);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", base);
  py::register_exception<OutOfDomain>(m, "OutOfDomain", base);
  py::register_exception<InvariantViolation>(m, "InvariantViolation", base);

  py::class_<Permutation>(m, "Permutation")
      .def(py::init<std::vector<Line>>(), "images"_a)
      .def_static("parse", &Permutation::parse, "text"_a)
      .def_static("identity", &Permutation::identity, "n"_a)
      .def_static("reversal", &Permutation::reversal, "n"_a)
      .def("images", [](const Permutation& p) { return std::vector<Line>(p.images().begin(), p.images().end()); })
      .def("inverse", &Permutation::inverse)
      .def("max_displacement", &Permutation::max_displacement)
      .def("__len__", &Permutation::size)
      .def("__getitem__",
           [](const Permutation& p, std::size_t i) {
             if (i >= p.size()) throw py::index_error();
             return p[i];
           })
      .def("__eq__", [](const Permutation& a, const Permutation& b) { return a == b; })
      .def("__str__", &Permutation::to_string)
      .def("__repr__", [](const Permutation& p) { return "Permutation(" + p.to_string() + ")"; });

  py::class_<Network>(m, "Network")
      .def_property_readonly("kind", [](const Network& n) { return std::string(to_string(n.kind())); })
      .def_property_readonly("n", &Network::n)
      .def_property_readonly("k", &Network::k)
      .def_property_readonly("depth", &Network::depth)
      .def("switch_count", &Network::switch_count)
      .def("column_roles",
           [](const Network& net) {
             std::vector<std::string> roles;
             for (const auto& c : net.columns()) roles.emplace_back(to_string(c.role()));
             return roles;
           })
      .def("columns",
           [](const Network& net) {
             std::vector<std::vector<std::pair<Line, Line>>> cols;
             for (const auto& c : net.columns()) {
               auto& col = cols.emplace_back();
               for (const auto& s : c.switches()) col.emplace_back(s.lo, s.hi);
             }
             return cols;
           })
      .def("to_json", [](const Network& net) { return network_to_json(net); })
      .def_static("from_json", &network_from_json, "text"_a)
      .def("to_dot", [](const Network& net) { return export_dot(net); })
      .def("__eq__", [](const Network& a, const Network& b) { return a == b; });

  m.def("build_butterfly", &build_butterfly, "n"_a);
  m.def("build_inverse_butterfly", &build_inverse_butterfly, "n"_a);
  m.def("build_benes", &build_benes, "n"_a);
  m.def("build_band_exchange", &build_band_exchange, "n"_a, "k"_a);
  m.def("build_k_benes", &build_k_benes, "n"_a, "k"_a);
  m.def("build_kr_benes", &build_kr_benes, "n"_a);
  m.def(
      "build_network",
      [](const std::string& kind, std::size_t n, std::size_t k) { return build_network(parse_network_kind(kind), n, k); },
      "kind"_a, "n"_a, "k"_a = 0);
  m.def("check_benes_embedding", [](std::size_t n, std::size_t k) { return check_benes_embedding(n, k).holds; },
        "n"_a, "k"_a, "Whether the outer Benes columns embed the k-Benes (odd band-exchange column removed).");

  py::class_<RoutePlan>(m, "RoutePlan")
      .def_property_readonly("permutation", [](const RoutePlan& p) { return p.permutation; })
      .def_property_readonly("k_used", [](const RoutePlan& p) { return p.k_used; })
      .def_property_readonly("cost", [](const RoutePlan& p) { return cost_dict(p.cost); })
      .def_property_readonly("settings",
                             [](const RoutePlan& p) {
                               std::vector<std::vector<std::string>> out;
                               for (const auto& col : p.settings) {
                                 auto& o = out.emplace_back();
                                 for (auto s : col) o.emplace_back(to_string(s));
                               }
                               return out;
                             })
      .def_property_readonly("bypass",
                             [](const RoutePlan& p) {
                               std::vector<std::string> out;
                               for (auto c : p.bypass) out.emplace_back(c == BypassChoice::used ? "used" : "bypassed");
                               return out;
                             })
      .def_property_readonly("paths",
                             [](const RoutePlan& p) {
                               py::list out;
                               for (const auto& path : p.paths) out.append(port_list(path));
                               return out;
                             })
      .def("to_json", [](const RoutePlan& p) { return plan_to_json(p); })
      .def_static("from_json", &plan_from_json, "text"_a);

  m.def("looping_route", &looping_route, "net"_a, "p"_a);
  m.def("k_benes_route", &k_benes_route, "net"_a, "p"_a);
  m.def("kr_benes_route", &kr_benes_route, "net"_a, "p"_a);
  m.def(
      "trace_path", [](const Network& net, const RoutePlan& plan, Line input) {
        return port_list(trace_path(net, plan, input));
      },
      "net"_a, "plan"_a, "input"_a);
  m.def(
      "select_k_subgraph",
      [](const Network& kr, std::size_t k) {
        const KSubgraph sub = select_k_subgraph(kr, k);
        return py::dict("columns"_a = sub.columns, "view"_a = sub.view);
      },
      "kr"_a, "k"_a);
  m.def(
      "decompose_bands",
      [](const Permutation& p, std::size_t k) {
        const BandDecomposition d = decompose_bands(p, k);
        return py::dict("up"_a = d.up, "down"_a = d.down, "stationary"_a = d.stationary);
      },
      "p"_a, "k"_a);

  py::class_<VerifyReport>(m, "VerifyReport")
      .def_readonly("ok", &VerifyReport::ok)
      .def_readonly("delivered", &VerifyReport::delivered)
      .def_property_readonly("violations",
                             [](const VerifyReport& r) {
                               py::list out;
                               for (const auto& v : r.violations) {
                                 out.append(py::dict("kind"_a = std::string(to_string(v.kind)), "column"_a = v.column,
                                                     "line"_a = v.line, "switch"_a = v.switch_index));
                               }
                               return out;
                             })
      .def("to_json", [](const VerifyReport& r) { return report_to_json(r); });

  m.def("verify_plan", &verify_plan, "net"_a, "plan"_a, "p"_a);
  m.def("flip_switch", &flip_switch, "plan"_a, "column"_a, "switch_index"_a);

  m.def("gen_pi1", &gen_pi1, "n"_a, "k"_a);
  m.def("gen_pi2", &gen_pi2, "n"_a, "k"_a);
  m.def("gen_pi3", &gen_pi3, "n"_a, "k"_a, "inner"_a, "band"_a);
  m.def("gen_random_k_bounded", &gen_random_k_bounded, "n"_a, "k"_a, "seed"_a);
  m.def("gen_random_permutation", &gen_random_permutation, "n"_a, "seed"_a);
  m.def(
      "enumerate_k_bounded",
      [](std::size_t n, std::size_t k) {
        std::vector<Permutation> out;
        enumerate_k_bounded(n, k, [&](const Permutation& p) { out.push_back(p); });
        return out;
      },
      "n"_a, "k"_a);

  m.def(
      "boundedness",
      [](const Permutation& p) {
        const Boundedness b = boundedness(p);
        return py::dict("k_exact"_a = b.k_exact, "K"_a = b.K);
      },
      "p"_a);
  m.def("count_k_bounded_formula", [](std::size_t n, std::size_t K) { return to_python_int(count_k_bounded_formula(n, K)); },
        "n"_a, "K"_a);
  m.def("count_k_bounded_exhaustive",
        [](std::size_t n, std::size_t k) { return to_python_int(count_k_bounded_exhaustive(n, k)); }, "n"_a, "k"_a);
  m.def("p_k", [](std::size_t n, std::size_t K) { return to_python_int(p_k(n, K)); }, "n"_a, "K"_a);
  m.def("p_n", [](std::size_t n) { return to_python_int(p_n(n)); }, "n"_a);
  m.def(
      "average_control_complexity",
      [](std::size_t n) {
        const AverageComplexity a = average_control_complexity(n);
        return py::make_tuple(to_fraction(a.as_printed), to_fraction(a.normalized));
      },
      "n"_a, "Returns (as printed, divided by n!) as Fractions.");
  m.def(
      "count_report",
      [](std::size_t n, std::size_t k, bool exhaustive) {
        const CountReport r = count_report(n, k, exhaustive);
        return py::dict("n"_a = r.n, "k"_a = r.k, "K"_a = r.K, "formula_count"_a = to_python_int(r.formula_count),
                        "exhaustive_count"_a = r.exhaustive_count ? to_python_int(*r.exhaustive_count) : py::none(),
                        "agrees"_a = r.agrees);
      },
      "n"_a, "k"_a, "exhaustive"_a = false);

  m.def("compatibility_matching", [](const Permutation& p, std::size_t k) { return compatibility_matching(p, k).pairs; }, "p"_a,
        "k"_a);
  m.def(
      "matching_partners",
      [](const Permutation& p, std::size_t k) {
        auto pairs = matching_stage(p, k).partners;
        std::sort(pairs.begin(), pairs.end());
        return pairs;
      },
      "p"_a, "k"_a);
  m.def("check_link_balance", [](const Permutation& p, std::size_t k) { return check_link_balance(p, k).holds; },
        "p"_a, "k"_a);
  m.def(
      "build_compatibility_graph",
      [](const Permutation& p, std::size_t k) {
        const CompatibilityGraph g = build_compatibility_graph(p, k);
        py::list v1, v2, edges;
        for (const auto& v : g.v1) v1.append(py::make_tuple(v.input, v.output));
        for (const auto& v : g.v2) v2.append(py::make_tuple(v.input, v.output));
        for (const auto& e : g.edges) {
          std::string labels;
          if (e.labels & 1u) labels += '0';
          if (e.labels & 2u) labels += '1';
          edges.append(py::dict("u"_a = e.u, "v"_a = e.v,
                                "kind"_a = e.kind == CompatibilityKind::cross ? "cross" : "straight", "labels"_a = labels));
        }
        return py::dict("v1"_a = v1, "v2"_a = v2, "edges"_a = edges);
      },
      "p"_a, "k"_a);
}
