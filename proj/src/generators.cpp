#include "krbenes/generators.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

#include "krbenes/errors.hpp"

namespace krbenes {

namespace {

void require_band_family(std::size_t n, std::size_t k) {
  if (!is_power_of_two(n) || n < 4) throw InvalidSize("n must be a power of two >= 4");
  if (!is_power_of_two(k) || k > n / 4) {
    throw InvalidBandWidth("band width " + std::to_string(k) + " must be a power of two <= n/4");
  }
}

/// Swaps band pairs (first, first+1), (first+2, first+3), ... that fit in [0, n).
Permutation swap_band_pairs(std::size_t n, std::size_t k, std::size_t first) {
  std::vector<Line> img(n);
  std::iota(img.begin(), img.end(), Line{0});
  const std::size_t bands = n / k;
  for (std::size_t b = first; b + 1 < bands; b += 2) {
    for (std::size_t j = 0; j < k; ++j) {
      const auto lo = static_cast<Line>(b * k + j);
      const auto hi = static_cast<Line>((b + 1) * k + j);
      img[lo] = hi;
      img[hi] = lo;
    }
  }
  return Permutation(std::move(img));
}

/// Unbiased draw from [0, bound) by rejection, independent of the standard
/// library's distribution implementation.
std::size_t draw(std::mt19937_64& rng, std::size_t bound) {
  const std::uint64_t range = bound;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return static_cast<std::size_t>(x % range);
}

template <typename T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[draw(rng, i)]);
}

bool random_fill(std::vector<Line>& img, std::vector<bool>& used, std::size_t pos, std::size_t k,
                 std::mt19937_64& rng) {
  const std::size_t n = img.size();
  if (pos == n) return true;
  std::vector<Line> cand;
  if (pos >= k && !used[pos - k]) {
    cand.push_back(static_cast<Line>(pos - k));
  } else {
    const std::size_t lo = pos >= k ? pos - k : 0;
    const std::size_t hi = std::min(n - 1, pos + k);
    for (std::size_t v = lo; v <= hi; ++v) {
      if (!used[v]) cand.push_back(static_cast<Line>(v));
    }
    shuffle(cand, rng);
  }
  for (Line v : cand) {
    used[v] = true;
    img[pos] = v;
    if (random_fill(img, used, pos + 1, k, rng)) return true;
    used[v] = false;
  }
  return false;
}

}  // namespace

Permutation gen_pi1(std::size_t n, std::size_t k) {
  require_band_family(n, k);
  return swap_band_pairs(n, k, 0);
}

Permutation gen_pi2(std::size_t n, std::size_t k) {
  require_band_family(n, k);
  return swap_band_pairs(n, k, 1);
}

Permutation gen_pi3(std::size_t n, std::size_t k, const Permutation& inner, std::size_t band) {
  require_band_family(n, k);
  if (inner.size() != k) {
    throw SizeMismatch("inner permutation has size " + std::to_string(inner.size()) + ", band width is " +
                       std::to_string(k));
  }
  if (band >= n / k) throw OutOfDomain("band " + std::to_string(band) + " out of range");
  std::vector<Line> img(n);
  std::iota(img.begin(), img.end(), Line{0});
  const auto base = static_cast<Line>(band * k);
  for (std::size_t j = 0; j < k; ++j) img[base + j] = base + inner[j];
  return Permutation(std::move(img));
}

Permutation gen_random_k_bounded(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (n == 0) return Permutation{};
  if (k >= n) k = n - 1;
  std::mt19937_64 rng(seed);
  std::vector<Line> img(n);
  std::vector<bool> used(n, false);
  if (!random_fill(img, used, 0, k, rng)) throw InvariantViolation("no k-bounded completion found");
  return Permutation(std::move(img));
}

Permutation gen_random_permutation(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Line> img(n);
  std::iota(img.begin(), img.end(), Line{0});
  shuffle(img, rng);
  return Permutation(std::move(img));
}

KBoundedEnumerator::KBoundedEnumerator(std::size_t n, std::size_t k) : n_(n), k_(k), cur_(n), used_(n, false) {
  if (n > kMaxN) {
    throw BudgetExceeded("enumeration is limited to n <= " + std::to_string(kMaxN) + ", got " + std::to_string(n));
  }
}

bool KBoundedEnumerator::allowed(std::size_t pos, Line v) const {
  if (used_[v]) return false;
  const std::size_t d = v > pos ? v - pos : pos - v;
  if (d > k_) return false;
  // the value pos - k can only go here; skipping it strands it
  if (pos >= k_ && !used_[pos - k_] && v != pos - k_) return false;
  return true;
}

bool KBoundedEnumerator::fill(std::size_t from) {
  if (from == n_) return true;
  for (Line v = 0; v < n_; ++v) {
    if (!allowed(from, v)) continue;
    used_[v] = true;
    cur_[from] = v;
    if (fill(from + 1)) return true;
    used_[v] = false;
  }
  return false;
}

std::optional<Permutation> KBoundedEnumerator::next() {
  if (done_) return std::nullopt;
  if (!started_) {
    started_ = true;
    if (fill(0)) return Permutation(cur_);
    done_ = true;
    return std::nullopt;
  }
  for (std::size_t pos = n_; pos-- > 0;) {
    used_[cur_[pos]] = false;
    for (Line v = cur_[pos] + 1; v < n_; ++v) {
      if (!allowed(pos, v)) continue;
      used_[v] = true;
      cur_[pos] = v;
      if (fill(pos + 1)) return Permutation(cur_);
      used_[v] = false;
    }
  }
  done_ = true;
  return std::nullopt;
}

std::uint64_t enumerate_k_bounded(std::size_t n, std::size_t k, const std::function<void(const Permutation&)>& f) {
  KBoundedEnumerator e(n, k);
  std::uint64_t count = 0;
  while (auto p = e.next()) {
    f(*p);
    ++count;
  }
  return count;
}

}  // namespace krbenes
