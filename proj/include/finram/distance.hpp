#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <string>

namespace finram {

// A nonnegative integer distance that may be infinite. Infinity compares
// greater than every finite value and absorbs addition (r + inf = inf).
class Distance {
 public:
  constexpr Distance() = default;
  constexpr explicit Distance(std::int64_t value) : value_(value) {}

  static constexpr Distance infinity() {
    Distance d;
    d.infinite_ = true;
    return d;
  }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }
  constexpr std::int64_t value() const { return value_; }

  constexpr bool within(std::int64_t radius) const {
    return !infinite_ && value_ <= radius;
  }

  friend constexpr bool operator==(Distance a, Distance b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }

  friend constexpr std::strong_ordering operator<=>(Distance a, Distance b) {
    if (a.infinite_ || b.infinite_) {
      return static_cast<int>(a.infinite_) <=> static_cast<int>(b.infinite_);
    }
    return a.value_ <=> b.value_;
  }

  friend constexpr Distance operator+(Distance a, Distance b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return Distance(a.value_ + b.value_);
  }

  std::string to_string() const {
    return infinite_ ? std::string("inf") : std::to_string(value_);
  }

 private:
  std::int64_t value_ = 0;
  bool infinite_ = false;
};

constexpr Distance max(Distance a, Distance b) { return a < b ? b : a; }

}  // namespace finram
