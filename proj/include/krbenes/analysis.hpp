#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "krbenes/permutation.hpp"
#include "krbenes/routing.hpp"

namespace krbenes {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

struct Boundedness {
  std::size_t k_exact = 0;  // max |p(i) - i|
  std::size_t K = 1;        // smallest power of two >= k_exact, 1 when k_exact <= 1
};

Boundedness boundedness(const Permutation& p);

/// K! (K+1)^(n-K), evaluated exactly as written. K must be 0 or a power of two
/// <= n/2 (OutOfDomain otherwise).
BigInt count_k_bounded_formula(std::size_t n, std::size_t K);

/// Number of permutations of [0, n) with |p(i) - i| <= k, by dynamic
/// programming over the set of used values. Throws BudgetExceeded for n > 20.
BigInt count_k_bounded_exhaustive(std::size_t n, std::size_t k);
inline constexpr std::size_t kExhaustiveCountLimit = 20;

/// K!(K+1)^(n-K) - (K/2)!((K+2)/2)^(n-K/2) for a power of two 2 <= K <= n/2.
BigInt p_k(std::size_t n, std::size_t K);

/// (n/4)! (n/4 + 1)^(3n/4), n a power of two >= 4.
BigInt p_n(std::size_t n);

/// 1 + 2n sum_{K=2,4,..,n/4} P_K log K + n(2 log n - 1)(n! - P_n), as
/// written, and the same divided by n!. n a power of two, 4 <= n <= 16.
struct AverageComplexity {
  BigRational as_printed;
  BigRational normalized;
};

AverageComplexity average_control_complexity(std::size_t n);

struct CountReport {
  std::size_t n = 0;
  std::size_t k = 0;  // as requested
  std::size_t K = 0;  // 0 for k = 0, else the smallest power of two >= k
  BigInt formula_count;
  std::optional<BigInt> exhaustive_count;  // counted at band width K
  std::optional<bool> agrees;
};

/// The oracle is included when `exhaustive` is set or n <= 12.
CountReport count_report(std::size_t n, std::size_t k, bool exhaustive);

struct CostGroup {
  std::size_t K = 0;
  std::size_t plans = 0;
  double mean_terminal_visits = 0.0;
  std::uint64_t max_terminal_visits = 0;
  std::uint64_t total_overhead = 0;
};

struct CostSummary {
  std::vector<CostGroup> groups;  // ascending K
  std::size_t plans = 0;
  double mean_terminal_visits = 0.0;
  std::uint64_t max_terminal_visits = 0;
};

/// Plans are grouped by their permutation's K.
CostSummary control_cost_summary(std::span<const RoutePlan> plans);

/// Header "K,plans,mean_terminal_visits,max_terminal_visits,total_overhead".
std::string to_csv(const CostSummary& summary);

}  // namespace krbenes
