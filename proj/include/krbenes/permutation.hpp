#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "krbenes/bits.hpp"

namespace krbenes {

/// A validated bijection on [0, n). `p[i]` is the output line input i is sent to.
class Permutation {
 public:
  Permutation() = default;

  /// Throws ParseError if `images` is not a bijection on [0, images.size()).
  explicit Permutation(std::vector<Line> images);

  static Permutation identity(std::size_t n);
  static Permutation reversal(std::size_t n);

  /// Parses "4,5,0,6,1,2,7,3". Rejects non-bijections, naming the offending element.
  static Permutation parse(std::string_view text);

  std::size_t size() const { return images_.size(); }
  Line operator[](std::size_t i) const { return images_[i]; }
  std::span<const Line> images() const { return images_; }

  Permutation inverse() const;

  /// The same routing problem after renaming every line x to relabel(x):
  /// result[relabel(i)] = relabel(p[i]). `relabel` must itself be a bijection.
  template <typename F>
  Permutation relabeled(F&& relabel) const {
    std::vector<Line> out(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) {
      out[relabel(static_cast<Line>(i))] = relabel(images_[i]);
    }
    return Permutation(std::move(out));
  }

  /// Max |p[i] - i|.
  std::size_t max_displacement() const;

  std::string to_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Line> images_;
};

}  // namespace krbenes
