#include "krbenes/analysis.hpp"

#include <algorithm>
#include <bit>
#include <iomanip>
#include <map>
#include <sstream>

#include "krbenes/errors.hpp"

namespace krbenes {

namespace {

BigInt factorial(std::size_t x) {
  BigInt r = 1;
  for (std::size_t i = 2; i <= x; ++i) r *= i;
  return r;
}

BigInt power(std::size_t base, std::size_t exp) { return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exp)); }

void require_formula_size(std::size_t n) {
  if (!is_power_of_two(n) || n < 4) throw OutOfDomain("n must be a power of two >= 4, got " + std::to_string(n));
}

}  // namespace

Boundedness boundedness(const Permutation& p) {
  Boundedness b;
  b.k_exact = p.max_displacement();
  b.K = ceil_power_of_two(b.k_exact);
  return b;
}

BigInt count_k_bounded_formula(std::size_t n, std::size_t K) {
  if (K != 0 && (!is_power_of_two(K) || K > n / 2)) {
    throw OutOfDomain("the closed form is stated for power-of-two K <= n/2, got K = " + std::to_string(K) +
                      ", n = " + std::to_string(n));
  }
  return factorial(K) * power(K + 1, n - K);
}

BigInt count_k_bounded_exhaustive(std::size_t n, std::size_t k) {
  if (n > kExhaustiveCountLimit) {
    throw BudgetExceeded("exhaustive count is limited to n <= " + std::to_string(kExhaustiveCountLimit));
  }
  // ways[mask]: assignments of positions 0..popcount(mask)-1 using exactly the values in mask
  std::vector<std::uint64_t> ways(std::size_t{1} << n, 0);
  ways[0] = 1;
  for (std::size_t mask = 0; mask < ways.size(); ++mask) {
    if (!ways[mask]) continue;
    const auto pos = static_cast<std::size_t>(std::popcount(mask));
    const std::size_t lo = pos >= k ? pos - k : 0;
    const std::size_t hi = std::min(n - 1, pos + k);
    for (std::size_t v = lo; v <= hi && pos < n; ++v) {
      if (!(mask & (std::size_t{1} << v))) ways[mask | (std::size_t{1} << v)] += ways[mask];
    }
  }
  return BigInt(ways.back());
}

BigInt p_k(std::size_t n, std::size_t K) {
  if (!is_power_of_two(K) || K < 2 || K > n / 2) {
    throw OutOfDomain("P_K needs a power-of-two 2 <= K <= n/2, got K = " + std::to_string(K));
  }
  return factorial(K) * power(K + 1, n - K) - factorial(K / 2) * power((K + 2) / 2, n - K / 2);
}

BigInt p_n(std::size_t n) {
  require_formula_size(n);
  return factorial(n / 4) * power(n / 4 + 1, 3 * n / 4);
}

AverageComplexity average_control_complexity(std::size_t n) {
  require_formula_size(n);
  if (n > 16) throw OutOfDomain("average control complexity is evaluated for n <= 16");
  const std::size_t m = log2_exact(n);
  BigInt sum = 0;
  for (std::size_t K = 2; K <= n / 4; K *= 2) sum += p_k(n, K) * log2_exact(K);
  const BigInt fact = factorial(n);
  const BigInt value = 1 + 2 * BigInt(n) * sum + BigInt(n) * (2 * m - 1) * (fact - p_n(n));
  AverageComplexity out;
  out.as_printed = BigRational(value);
  out.normalized = BigRational(value, fact);
  return out;
}

CountReport count_report(std::size_t n, std::size_t k, bool exhaustive) {
  CountReport r;
  r.n = n;
  r.k = k;
  r.K = k == 0 ? 0 : ceil_power_of_two(k);
  r.formula_count = count_k_bounded_formula(n, r.K);
  if (exhaustive || n <= 12) {
    r.exhaustive_count = count_k_bounded_exhaustive(n, r.K);
    r.agrees = *r.exhaustive_count == r.formula_count;
  }
  return r;
}

CostSummary control_cost_summary(std::span<const RoutePlan> plans) {
  std::map<std::size_t, CostGroup> groups;
  CostSummary s;
  double total = 0.0;
  for (const auto& plan : plans) {
    const std::size_t K = boundedness(plan.permutation).K;
    auto& g = groups[K];
    g.K = K;
    ++g.plans;
    g.mean_terminal_visits += static_cast<double>(plan.cost.terminal_visits);
    g.max_terminal_visits = std::max(g.max_terminal_visits, plan.cost.terminal_visits);
    g.total_overhead += plan.cost.overhead;
    total += static_cast<double>(plan.cost.terminal_visits);
    s.max_terminal_visits = std::max(s.max_terminal_visits, plan.cost.terminal_visits);
  }
  for (auto& [K, g] : groups) {
    g.mean_terminal_visits /= static_cast<double>(g.plans);
    s.groups.push_back(g);
  }
  s.plans = plans.size();
  if (!plans.empty()) s.mean_terminal_visits = total / static_cast<double>(plans.size());
  return s;
}

std::string to_csv(const CostSummary& summary) {
  std::ostringstream os;
  os << "K,plans,mean_terminal_visits,max_terminal_visits,total_overhead\n";
  os << std::fixed << std::setprecision(3);
  for (const auto& g : summary.groups) {
    os << g.K << ',' << g.plans << ',' << g.mean_terminal_visits << ',' << g.max_terminal_visits << ','
       << g.total_overhead << '\n';
  }
  return os.str();
}

}  // namespace krbenes
