#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace tts {

inline constexpr std::size_t kMaxPoints = 64;

using PointIndex = std::size_t;
using OpenId = std::size_t;

// Subset of a point universe of at most 64 points, indexed by position in
// the space's fixed point ordering.
class PointSet {
 public:
  constexpr PointSet() = default;
  constexpr explicit PointSet(std::uint64_t bits) : bits_(bits) {}

  static constexpr PointSet single(PointIndex i) { return PointSet{std::uint64_t{1} << i}; }
  static constexpr PointSet first_n(std::size_t n) {
    return PointSet{n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1};
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool contains(PointIndex i) const { return (bits_ >> i) & 1U; }
  constexpr bool subset_of(PointSet other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool proper_subset_of(PointSet other) const { return subset_of(other) && bits_ != other.bits_; }
  constexpr bool intersects(PointSet other) const { return (bits_ & other.bits_) != 0; }

  constexpr void insert(PointIndex i) { bits_ |= std::uint64_t{1} << i; }
  constexpr void erase(PointIndex i) { bits_ &= ~(std::uint64_t{1} << i); }

  constexpr PointSet operator|(PointSet o) const { return PointSet{bits_ | o.bits_}; }
  constexpr PointSet operator&(PointSet o) const { return PointSet{bits_ & o.bits_}; }
  constexpr PointSet operator-(PointSet o) const { return PointSet{bits_ & ~o.bits_}; }
  constexpr PointSet& operator|=(PointSet o) { bits_ |= o.bits_; return *this; }
  constexpr PointSet& operator&=(PointSet o) { bits_ &= o.bits_; return *this; }

  constexpr bool operator==(const PointSet&) const = default;

  // Smallest member; undefined on the empty set.
  constexpr PointIndex front() const { return static_cast<PointIndex>(std::countr_zero(bits_)); }

  std::vector<PointIndex> indices() const {
    std::vector<PointIndex> out;
    out.reserve(size());
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
      out.push_back(static_cast<PointIndex>(std::countr_zero(b)));
    }
    return out;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
      f(static_cast<PointIndex>(std::countr_zero(b)));
    }
  }

 private:
  std::uint64_t bits_ = 0;
};

// Total order used for open-set ids: by cardinality, then by the sorted
// member index sequence.
inline bool open_order_less(PointSet a, PointSet b) {
  if (a.size() != b.size()) return a.size() < b.size();
  // Lexicographic on sorted indices equals comparing the lowest differing bit.
  std::uint64_t diff = a.bits() ^ b.bits();
  if (diff == 0) return false;
  std::uint64_t low = diff & (~diff + 1);
  return (a.bits() & low) != 0;
}

struct PointSetHash {
  std::size_t operator()(PointSet s) const noexcept { return std::hash<std::uint64_t>{}(s.bits()); }
};

}  // namespace tts
