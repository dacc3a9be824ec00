#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "krbenes/permutation.hpp"

namespace krbenes {

/// Every input of an even band moves K lines down, every input of the odd band
/// after it K lines up: band pairs (0,1), (2,3), ... swap wholesale.
/// K is a power of two, 1 <= K <= n/4.
Permutation gen_pi1(std::size_t n, std::size_t k);

/// Interior band pairs (1,2), (3,4), ... swap wholesale; the first and last
/// bands stay fixed.
Permutation gen_pi2(std::size_t n, std::size_t k);

/// `inner` (a permutation of size K) applied inside band `band`, identity elsewhere.
Permutation gen_pi3(std::size_t n, std::size_t k, const Permutation& inner, std::size_t band);

/// Random permutation with |p(i) - i| <= k: depth-first construction with a
/// shuffled value order at each position. Not exactly uniform over the class.
/// Deterministic for a given seed; 0 <= k < n.
Permutation gen_random_k_bounded(std::size_t n, std::size_t k, std::uint64_t seed);

/// Uniformly random permutation of [0, n) from the same generator.
Permutation gen_random_permutation(std::size_t n, std::uint64_t seed);

/// Lexicographic stream of all k-bounded permutations of [0, n), n <= 12.
class KBoundedEnumerator {
 public:
  static constexpr std::size_t kMaxN = 12;

  /// Throws BudgetExceeded for n > kMaxN.
  KBoundedEnumerator(std::size_t n, std::size_t k);

  std::optional<Permutation> next();

 private:
  bool fill(std::size_t from);
  bool allowed(std::size_t pos, Line v) const;

  std::size_t n_;
  std::size_t k_;
  std::vector<Line> cur_;
  std::vector<bool> used_;
  bool started_ = false;
  bool done_ = false;
};

/// Calls f on every k-bounded permutation in lexicographic order; returns the count.
std::uint64_t enumerate_k_bounded(std::size_t n, std::size_t k, const std::function<void(const Permutation&)>& f);

}  // namespace krbenes
