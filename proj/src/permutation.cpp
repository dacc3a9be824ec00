#include "krbenes/permutation.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <sstream>

#include "krbenes/errors.hpp"

namespace krbenes {

namespace {

void check_bijection(std::span<const Line> images) {
  std::vector<bool> seen(images.size(), false);
  for (Line v : images) {
    if (v >= images.size()) {
      throw ParseError("permutation element " + std::to_string(v) + " out of range [0, " +
                       std::to_string(images.size()) + ")");
    }
    if (seen[v]) {
      throw ParseError("permutation has duplicate element " + std::to_string(v));
    }
    seen[v] = true;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\n' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

Permutation::Permutation(std::vector<Line> images) : images_(std::move(images)) { check_bijection(images_); }

Permutation Permutation::identity(std::size_t n) {
  std::vector<Line> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<Line>(i);
  return Permutation(std::move(v));
}

Permutation Permutation::reversal(std::size_t n) {
  std::vector<Line> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<Line>(n - 1 - i);
  return Permutation(std::move(v));
}

Permutation Permutation::parse(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw ParseError("empty permutation");
  std::vector<Line> values;
  while (true) {
    auto comma = text.find(',');
    auto token = trim(text.substr(0, comma));
    Line v = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
      throw ParseError("bad permutation element '" + std::string(token) + "'");
    }
    values.push_back(v);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  std::vector<int> count(values.size(), 0);
  for (Line v : values) {
    if (v >= values.size()) {
      throw ParseError("permutation element " + std::to_string(v) + " out of range [0, " +
                       std::to_string(values.size()) + ")");
    }
    ++count[v];
  }
  auto dup = std::find_if(count.begin(), count.end(), [](int c) { return c > 1; });
  if (dup != count.end()) {
    auto missing = std::find(count.begin(), count.end(), 0);
    throw ParseError("not a bijection: duplicate element " + std::to_string(dup - count.begin()) +
                     ", missing element " + std::to_string(missing - count.begin()));
  }
  return Permutation(std::move(values));
}

Permutation Permutation::inverse() const {
  std::vector<Line> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<Line>(i);
  return Permutation(std::move(inv));
}

std::size_t Permutation::max_displacement() const {
  std::size_t best = 0;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    auto d = static_cast<std::size_t>(std::abs(static_cast<long>(images_[i]) - static_cast<long>(i)));
    best = std::max(best, d);
  }
  return best;
}

std::string Permutation::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (i) os << ',';
    os << images_[i];
  }
  return os.str();
}

}  // namespace krbenes
