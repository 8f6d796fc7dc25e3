#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace finram {

// Unsigned vectors live in FIN_k (values 1..k), signed ones in FIN_±k
// (values ±1..±k).
enum class Mode : std::uint8_t { Unsigned, Signed };

std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view text);

struct Entry {
  int pos = 0;
  int value = 0;

  friend auto operator<=>(Entry const&, Entry const&) = default;
};

// A finitely supported integer vector stored as strictly increasing
// (position, value) pairs; absent positions are 0.
//
// Invariants: entries nonempty, positions strictly increasing and >= 0,
// every |value| in [1, k] (positive only in unsigned mode), and some
// |value| equals k.
class BlockVector {
 public:
  BlockVector(int k, Mode mode, std::vector<Entry> entries);

  // Builds from (pos, value) pairs in any order; zero values are dropped.
  static BlockVector from_pairs(int k, Mode mode,
                                std::vector<std::pair<int, int>> pairs);

  int k() const noexcept { return k_; }
  Mode mode() const noexcept { return mode_; }
  std::span<Entry const> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

  int min_pos() const noexcept { return entries_.front().pos; }
  int max_pos() const noexcept { return entries_.back().pos; }

  // Value at a position, 0 when absent.
  int at(int pos) const noexcept;

  friend bool operator==(BlockVector const&, BlockVector const&) = default;

  // Canonical order: lexicographic over entries (hence by min support
  // first), then k, then mode.
  friend std::strong_ordering operator<=>(BlockVector const& a,
                                          BlockVector const& b);

 private:
  int                k_;
  Mode               mode_;
  std::vector<Entry> entries_;
};

struct BlockVectorHash {
  std::size_t operator()(BlockVector const& p) const noexcept;
};

// A finite block sequence: shared k and mode, strictly block ordered.
class BlockSequence {
 public:
  BlockSequence() = default;
  explicit BlockSequence(std::vector<BlockVector> elements);

  std::span<BlockVector const> elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }
  BlockVector const& operator[](std::size_t i) const { return elements_[i]; }

  auto begin() const noexcept { return elements_.begin(); }
  auto end() const noexcept { return elements_.end(); }

  friend bool operator==(BlockSequence const&, BlockSequence const&) = default;
  friend auto operator<=>(BlockSequence const& a, BlockSequence const& b) {
    return a.elements_ <=> b.elements_;
  }

 private:
  std::vector<BlockVector> elements_;
};

struct RealEntry {
  int    pos   = 0;
  double value = 0.0;

  friend bool operator==(RealEntry const&, RealEntry const&) = default;
};

// Finitely supported real vector; positions strictly increasing.
class RealVector {
 public:
  RealVector() = default;
  explicit RealVector(std::vector<RealEntry> entries);

  std::span<RealEntry const> entries() const noexcept { return entries_; }
  double at(int pos) const noexcept;
  double sup_norm() const noexcept;

  friend bool operator==(RealVector const&, RealVector const&) = default;

 private:
  std::vector<RealEntry> entries_;
};

// ℓ∞ distance between real vectors, absent entries read as 0.
double linf_dist(RealVector const& x, RealVector const& y);

}  // namespace finram
