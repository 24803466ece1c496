#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "irs/error.hpp"
#include "irs/tree.hpp"

namespace irs {

/// Permutation of {0, ..., d-1} in one-line notation: images()[y] is the image
/// of digit y. Fixed-capacity storage keeps it trivially copyable.
class Permutation {
 public:
  Permutation() = default;

  static Permutation identity(int d) {
    check_arity(d);
    Permutation p;
    p.size_ = static_cast<std::uint8_t>(d);
    for (int y = 0; y < d; ++y) p.images_[static_cast<std::size_t>(y)] = static_cast<std::uint8_t>(y);
    return p;
  }

  static Permutation from_images(const std::vector<int>& images) {
    int d = static_cast<int>(images.size());
    check_arity(d);
    Permutation p;
    p.size_ = static_cast<std::uint8_t>(d);
    std::array<bool, kMaxArity> seen{};
    for (int y = 0; y < d; ++y) {
      int im = images[static_cast<std::size_t>(y)];
      if (im < 0 || im >= d || seen[static_cast<std::size_t>(im)]) {
        throw InvalidArgument("image array is not a permutation of 0..d-1");
      }
      seen[static_cast<std::size_t>(im)] = true;
      p.images_[static_cast<std::size_t>(y)] = static_cast<std::uint8_t>(im);
    }
    return p;
  }

  static Permutation transposition(int d, int i, int j) {
    Permutation p = identity(d);
    std::swap(p.images_[static_cast<std::size_t>(i)], p.images_[static_cast<std::size_t>(j)]);
    return p;
  }

  /// The cycle c0 -> c1 -> ... -> c0.
  static Permutation cycle(int d, const std::vector<int>& points) {
    Permutation p = identity(d);
    for (std::size_t i = 0; i < points.size(); ++i) {
      p.images_[static_cast<std::size_t>(points[i])] =
          static_cast<std::uint8_t>(points[(i + 1) % points.size()]);
    }
    return p;
  }

  int size() const { return size_; }
  int operator()(int y) const { return images_[static_cast<std::size_t>(y)]; }

  std::vector<int> images() const {
    return std::vector<int>(images_.begin(), images_.begin() + size_);
  }

  bool is_identity() const {
    for (int y = 0; y < size_; ++y) {
      if (images_[static_cast<std::size_t>(y)] != y) return false;
    }
    return true;
  }

  /// Apply *this, then b.
  Permutation then(const Permutation& b) const {
    Permutation r;
    r.size_ = size_;
    for (int y = 0; y < size_; ++y) {
      r.images_[static_cast<std::size_t>(y)] = b.images_[images_[static_cast<std::size_t>(y)]];
    }
    return r;
  }

  Permutation inverse() const {
    Permutation r;
    r.size_ = size_;
    for (int y = 0; y < size_; ++y) {
      r.images_[images_[static_cast<std::size_t>(y)]] = static_cast<std::uint8_t>(y);
    }
    return r;
  }

  bool is_even() const {
    std::array<bool, kMaxArity> seen{};
    int transpositions = 0;
    for (int y = 0; y < size_; ++y) {
      if (seen[static_cast<std::size_t>(y)]) continue;
      int len = 0;
      for (int x = y; !seen[static_cast<std::size_t>(x)]; x = images_[static_cast<std::size_t>(x)]) {
        seen[static_cast<std::size_t>(x)] = true;
        ++len;
      }
      transpositions += len - 1;
    }
    return transpositions % 2 == 0;
  }

  /// Swaps the images of 0 and 1; flips parity.
  void swap_first_two_images() { std::swap(images_[0], images_[1]); }

  std::uint64_t code() const {
    std::uint64_t r = size_;
    for (int y = 0; y < size_; ++y) r = r * 16 + images_[static_cast<std::size_t>(y)];
    return r;
  }

  std::string str() const {
    std::string s = "(";
    for (int y = 0; y < size_; ++y) {
      if (y) s += ' ';
      s += std::to_string(images_[static_cast<std::size_t>(y)]);
    }
    return s + ")";
  }

  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.size_ == b.size_ &&
           std::equal(a.images_.begin(), a.images_.begin() + a.size_, b.images_.begin());
  }
  friend bool operator<(const Permutation& a, const Permutation& b) { return a.code() < b.code(); }

 private:
  std::uint8_t size_ = 0;
  std::array<std::uint8_t, kMaxArity> images_{};
};

/// All d! permutations (or the d!/2 even ones), in lexicographic order.
inline std::vector<Permutation> all_permutations(int d, bool even_only) {
  check_arity(d);
  std::vector<int> images(static_cast<std::size_t>(d));
  std::iota(images.begin(), images.end(), 0);
  std::vector<Permutation> out;
  do {
    Permutation p = Permutation::from_images(images);
    if (!even_only || p.is_even()) out.push_back(p);
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

}  // namespace irs
