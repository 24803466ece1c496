#pragma once

// Addressing on the d-ary rooted tree. Vertices are finite words over
// {0, ..., d-1}; the root is the empty word. Digits are stored as the ASCII
// characters '0'..'9', so the serialized form of an address is its storage
// and lexicographic string order is the canonical vertex order.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "irs/error.hpp"
#include "irs/rational.hpp"

namespace irs {

inline constexpr int kMaxArity = 10;

inline void check_arity(int d) {
  if (d < 2 || d > kMaxArity) {
    throw InvalidArgument("arity must lie in [2, " + std::to_string(kMaxArity) +
                          "], got " + std::to_string(d));
  }
}

/// d^n as a 64-bit integer; callers keep n small.
inline std::uint64_t ipow(int d, int n) {
  std::uint64_t r = 1;
  for (int i = 0; i < n; ++i) r *= static_cast<std::uint64_t>(d);
  return r;
}

class VertexAddress {
 public:
  VertexAddress() = default;

  /// Parses a digit string; throws if a character is not a digit below d.
  static VertexAddress parse(std::string_view text, int d) {
    check_arity(d);
    for (char c : text) {
      if (c < '0' || c >= '0' + d) {
        throw InvalidArgument("address '" + std::string(text) +
                              "' has a digit outside [0," + std::to_string(d) + ")");
      }
    }
    return VertexAddress(std::string(text));
  }

  static VertexAddress from_digits(const std::vector<int>& digits) {
    std::string s;
    s.reserve(digits.size());
    for (int y : digits) s.push_back(static_cast<char>('0' + y));
    return VertexAddress(std::move(s));
  }

  /// The index-th vertex of level n in lexicographic order.
  static VertexAddress from_index(int d, int level, std::uint64_t index) {
    std::string s(static_cast<std::size_t>(level), '0');
    for (int i = level - 1; i >= 0; --i) {
      s[static_cast<std::size_t>(i)] = static_cast<char>('0' + index % d);
      index /= static_cast<std::uint64_t>(d);
    }
    return VertexAddress(std::move(s));
  }

  int level() const { return static_cast<int>(digits_.size()); }
  bool is_root() const { return digits_.empty(); }
  int digit(int i) const { return digits_[static_cast<std::size_t>(i)] - '0'; }
  const std::string& str() const { return digits_; }

  std::uint64_t index(int d) const {
    std::uint64_t r = 0;
    for (char c : digits_) r = r * static_cast<std::uint64_t>(d) + static_cast<std::uint64_t>(c - '0');
    return r;
  }

  bool valid_for(int d) const {
    return std::all_of(digits_.begin(), digits_.end(),
                       [d](char c) { return c >= '0' && c < '0' + d; });
  }

  void append(int y) { digits_.push_back(static_cast<char>('0' + y)); }

  VertexAddress child(int y) const {
    VertexAddress r = *this;
    r.digits_.push_back(static_cast<char>('0' + y));
    return r;
  }

  std::optional<VertexAddress> parent() const {
    if (is_root()) return std::nullopt;
    return VertexAddress(digits_.substr(0, digits_.size() - 1));
  }

  VertexAddress prefix(int length) const {
    return VertexAddress(digits_.substr(0, static_cast<std::size_t>(length)));
  }

  /// Address with the first `length` digits deleted (identifies T_v with T).
  VertexAddress suffix_from(int length) const {
    return VertexAddress(digits_.substr(static_cast<std::size_t>(length)));
  }

  bool has_prefix(const VertexAddress& p) const {
    return digits_.size() >= p.digits_.size() &&
           std::equal(p.digits_.begin(), p.digits_.end(), digits_.begin());
  }

  VertexAddress concat(const VertexAddress& tail) const {
    return VertexAddress(digits_ + tail.digits_);
  }

  /// Length of the longest common prefix.
  int common_prefix_length(const VertexAddress& other) const {
    auto [a, b] = std::mismatch(digits_.begin(), digits_.end(), other.digits_.begin(),
                                other.digits_.end());
    return static_cast<int>(a - digits_.begin());
  }

  friend bool operator==(const VertexAddress&, const VertexAddress&) = default;
  friend std::strong_ordering operator<=>(const VertexAddress& a, const VertexAddress& b) {
    return a.digits_.compare(b.digits_) <=> 0;
  }

 private:
  explicit VertexAddress(std::string digits) : digits_(std::move(digits)) {}

  std::string digits_;
};

struct Neighborhood {
  std::optional<VertexAddress> parent;
  std::vector<VertexAddress> children;
  int level = 0;
};

inline Neighborhood navigate(const VertexAddress& v, int d) {
  check_arity(d);
  if (!v.valid_for(d)) throw InvalidArgument("address '" + v.str() + "' invalid for arity");
  Neighborhood n;
  n.parent = v.parent();
  n.level = v.level();
  n.children.reserve(static_cast<std::size_t>(d));
  for (int y = 0; y < d; ++y) n.children.push_back(v.child(y));
  return n;
}

/// Set of distinct vertices on a single level, kept sorted.
class LevelSet {
 public:
  LevelSet() = default;
  explicit LevelSet(int level) : level_(level) {}

  LevelSet(int level, std::vector<VertexAddress> members) : level_(level), members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    for (const auto& v : members_) {
      if (v.level() != level_) {
        throw InvalidArgument("vertex '" + v.str() + "' is not on level " + std::to_string(level_));
      }
    }
  }

  static LevelSet full(int d, int level) {
    std::vector<VertexAddress> all;
    std::uint64_t count = ipow(d, level);
    all.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) all.push_back(VertexAddress::from_index(d, level, i));
    return LevelSet(level, std::move(all));
  }

  int level() const { return level_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const std::vector<VertexAddress>& members() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  bool contains(const VertexAddress& v) const {
    return std::binary_search(members_.begin(), members_.end(), v);
  }

  bool valid_for(int d) const {
    return std::all_of(members_.begin(), members_.end(), [d](const auto& v) { return v.valid_for(d); });
  }

  friend bool operator==(const LevelSet&, const LevelSet&) = default;

 private:
  int level_ = 0;
  std::vector<VertexAddress> members_;
};

/// Descendants of v on level n.
inline LevelSet shadow_at_level(const VertexAddress& v, int n, int d) {
  check_arity(d);
  if (n < v.level()) {
    throw LevelTooShallow("level " + std::to_string(n) + " lies above vertex '" + v.str() + "'");
  }
  int extra = n - v.level();
  std::uint64_t count = ipow(d, extra);
  std::vector<VertexAddress> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    out.push_back(v.concat(VertexAddress::from_index(d, extra, i)));
  }
  return LevelSet(n, std::move(out));
}

/// Union of the level-n shadows of every member of `set`.
inline LevelSet shadow_at_level(const LevelSet& set, int n, int d) {
  std::vector<VertexAddress> out;
  for (const auto& v : set) {
    auto sh = shadow_at_level(v, n, d);
    out.insert(out.end(), sh.begin(), sh.end());
  }
  return LevelSet(n, std::move(out));
}

/// Boundary measure of Sh(v): exactly 1 / d^level(v).
inline Rational shadow_measure(const VertexAddress& v, int d) {
  check_arity(d);
  return reciprocal_power(static_cast<unsigned>(d), static_cast<unsigned>(v.level()));
}

/// Distance 1/2^k of two boundary rays truncated to the same depth, k being
/// the length of their common prefix.
inline Rational ray_distance(const VertexAddress& p, const VertexAddress& q) {
  if (p.level() != q.level()) {
    throw InvalidArgument("ray truncations must have equal depth");
  }
  if (p == q) throw EqualPrefixes("rays agree through depth " + std::to_string(p.level()));
  return reciprocal_power(2, static_cast<unsigned>(p.common_prefix_length(q)));
}

}  // namespace irs

template <>
struct std::hash<irs::VertexAddress> {
  std::size_t operator()(const irs::VertexAddress& v) const noexcept {
    return std::hash<std::string>{}(v.str());
  }
};
