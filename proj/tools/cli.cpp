#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "krbenes/analysis.hpp"
#include "krbenes/errors.hpp"
#include "krbenes/generators.hpp"
#include "krbenes/routing.hpp"
#include "krbenes/serialize.hpp"
#include "krbenes/topology.hpp"
#include "krbenes/verify.hpp"

namespace krbenes::cli {

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kBadInput = 2;
constexpr std::size_t kSweepMaxN = 64;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot write '" + path + "'");
  f << text;
}

std::uint64_t default_seed() {
  const char* env = std::getenv("FABRIC_SEED");
  if (!env || !*env) return 0;
  try {
    return std::stoull(env);
  } catch (const std::exception&) {
    throw ParseError(std::string("FABRIC_SEED is not an unsigned integer: ") + env);
  }
}

struct NetworkSource {
  std::string file;
  std::string kind;
  std::size_t n = 0;
  std::size_t k = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--net", file, "Network JSON file");
    cmd->add_option("--kind", kind, "butterfly|inverse-butterfly|benes|band-exchange|k-benes|kr-benes");
    cmd->add_option("--n", n, "Line count");
    cmd->add_option("--k", k, "Band width (band-exchange, k-benes)");
  }

  /// `fallback_kind` is used when neither --net nor --kind is given.
  Network load(const std::string& fallback_kind = "") const {
    if (!file.empty()) return network_from_json(read_file(file));
    const std::string name = kind.empty() ? fallback_kind : kind;
    if (name.empty() || n == 0) throw ParseError("give --net FILE or --kind and --n");
    return build_network(parse_network_kind(name), n, k);
  }
};

RoutePlan route_with(const Network& net, const Permutation& p, const std::string& algo) {
  NetworkKind wanted = net.kind();
  if (algo != "auto") wanted = parse_network_kind(algo);
  if (wanted != net.kind()) {
    throw StructuralError("--algo " + algo + " needs a " + algo + " network, got " + std::string(to_string(net.kind())));
  }
  switch (net.kind()) {
    case NetworkKind::benes:
      return looping_route(net, p);
    case NetworkKind::k_benes:
      return k_benes_route(net, p);
    case NetworkKind::kr_benes:
      return kr_benes_route(net, p);
    default:
      throw StructuralError("no routing algorithm for " + std::string(to_string(net.kind())) + " networks");
  }
}

Permutation sweep_permutation(std::size_t n, const std::string& dist, std::uint64_t seed) {
  if (dist == "uniform") return gen_random_permutation(n, seed);
  // locality: band width 1, 2, 4, ... with probability halving at each step
  std::mt19937_64 rng(seed);
  std::size_t k = 1;
  while (k < n && (rng() & 1u)) k *= 2;
  return gen_random_k_bounded(n, std::min(k, n - 1), rng());
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Benes-family permutation networks: build, route, verify, count"};
  app.name("krbenes");
  app.require_subcommand(1, 1);

  NetworkSource build_src, route_src, verify_src, dot_src;
  std::string out_path, perm_text, perm_file, algo = "auto", plan_file, dist = "uniform";
  std::size_t count_n = 0, count_k = 0, sweep_n = 0, trials = 0;
  bool exhaustive = false, summary = false;
  std::optional<std::uint64_t> seed;

  auto* build = app.add_subcommand("build", "Write a network as JSON");
  build->add_option("--kind", build_src.kind, "Network kind")->required();
  build->add_option("--n", build_src.n, "Line count")->required();
  build->add_option("--k", build_src.k, "Band width (band-exchange, k-benes)");
  build->add_option("--out", out_path, "Output file (default stdout)");

  auto* route = app.add_subcommand("route", "Route a permutation and print the plan as JSON");
  route_src.attach(route);
  auto* perm_opt = route->add_option("--perm", perm_text, "Comma-separated images, e.g. 4,5,0,6,1,2,7,3");
  route->add_option("--perm-file", perm_file, "File holding the permutation")->excludes(perm_opt);
  route->add_option("--algo", algo, "auto|benes|k-benes|kr-benes")
      ->check(CLI::IsMember({"auto", "benes", "k-benes", "kr-benes"}));
  route->add_option("--out", out_path, "Output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "Check a plan against a network and permutation");
  verify_src.attach(verify);
  verify->add_option("--plan", plan_file, "Plan JSON file")->required();
  verify->add_option("--perm", perm_text, "Permutation to check against (default: the plan's own)");

  auto* count = app.add_subcommand("count", "Count k-bounded permutations (closed form and oracle)");
  count->add_option("--n", count_n, "Line count")->required();
  count->add_option("--k", count_k, "Displacement bound")->required();
  count->add_flag("--exhaustive", exhaustive, "Always run the exhaustive count");

  auto* sweep = app.add_subcommand("sweep", "Route random permutations through a KR-Benes, one CSV row per trial");
  sweep->add_option("--n", sweep_n, "Line count (<= 64)")->required();
  sweep->add_option("--trials", trials, "Number of permutations")->required();
  sweep->add_option("--seed", seed, "Base seed (default: FABRIC_SEED or 0); trial t uses seed + t");
  sweep->add_option("--dist", dist, "uniform|locality")->check(CLI::IsMember({"uniform", "locality"}));
  sweep->add_flag("--summary", summary, "Print per-K cost summary instead of per-trial rows");

  auto* dot = app.add_subcommand("dot", "Write a network as Graphviz DOT");
  dot_src.attach(dot);
  dot->add_option("--out", out_path, "Output file (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }

  try {
    if (*build) {
      emit(network_to_json(build_src.load()), out_path, out);
      return kOk;
    }
    if (*route) {
      const Network net = route_src.load(algo == "auto" ? "" : algo);
      if (perm_text.empty() && perm_file.empty()) throw ParseError("give --perm or --perm-file");
      const Permutation p = Permutation::parse(perm_text.empty() ? read_file(perm_file) : perm_text);
      emit(plan_to_json(route_with(net, p, algo)), out_path, out);
      return kOk;
    }
    if (*verify) {
      const Network net = verify_src.load();
      const RoutePlan plan = plan_from_json(read_file(plan_file));
      const Permutation p = perm_text.empty() ? plan.permutation : Permutation::parse(perm_text);
      const VerifyReport report = verify_plan(net, plan, p);
      out << report_to_json(report);
      if (!report.ok) {
        const auto& v = report.violations.front();
        err << "verification failed: " << to_string(v.kind) << " at column " << v.column << ", line " << v.line;
        if (v.switch_index) err << ", switch " << *v.switch_index;
        err << "\n";
        return kVerifyFailed;
      }
      return kOk;
    }
    if (*count) {
      out << count_report_to_json(count_report(count_n, count_k, exhaustive));
      return kOk;
    }
    if (*sweep) {
      if (sweep_n > kSweepMaxN) throw InvalidSize("sweep supports n <= " + std::to_string(kSweepMaxN));
      const Network net = build_kr_benes(sweep_n);
      const std::uint64_t base = seed ? *seed : default_seed();
      std::vector<RoutePlan> plans;
      std::ostringstream rows;
      rows << "seed,k_exact,K,terminal_visits,overhead,verified\n";
      bool all_ok = true;
      for (std::size_t t = 0; t < trials; ++t) {
        const std::uint64_t s = base + t;
        const Permutation p = sweep_permutation(sweep_n, dist, s);
        RoutePlan plan = kr_benes_route(net, p);
        const bool ok = verify_plan(net, plan, p).ok;
        all_ok = all_ok && ok;
        const Boundedness b = boundedness(p);
        rows << s << ',' << b.k_exact << ',' << b.K << ',' << plan.cost.terminal_visits << ','
             << plan.cost.overhead << ',' << (ok ? "true" : "false") << '\n';
        if (summary) plans.push_back(std::move(plan));
      }
      out << (summary ? to_csv(control_cost_summary(plans)) : rows.str());
      return all_ok ? kOk : kVerifyFailed;
    }
    if (*dot) {
      emit(export_dot(dot_src.load()), out_path, out);
      return kOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return kBadInput;
}

}  // namespace krbenes::cli
