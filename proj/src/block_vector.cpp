#include "finram/block_vector.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "finram/error.hpp"

namespace finram {

std::string_view to_string(Mode mode) {
  return mode == Mode::Signed ? "signed" : "unsigned";
}

Mode parse_mode(std::string_view text) {
  if (text == "signed") return Mode::Signed;
  if (text == "unsigned") return Mode::Unsigned;
  throw DomainError("unknown mode '" + std::string(text) + "'");
}

BlockVector::BlockVector(int k, Mode mode, std::vector<Entry> entries)
    : k_(k), mode_(mode), entries_(std::move(entries)) {
  if (k_ < 1) throw DomainError("k must be positive");
  if (entries_.empty()) throw DomainError("vector has empty support");
  bool attains = false;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    auto const [pos, value] = entries_[i];
    if (pos < 0) throw DomainError("negative position");
    if (i > 0 && entries_[i - 1].pos >= pos) {
      throw DomainError("positions must be strictly increasing");
    }
    if (value == 0 || std::abs(value) > k_) {
      throw DomainError("value " + std::to_string(value) + " outside range for k="
                        + std::to_string(k_));
    }
    if (value < 0 && mode_ == Mode::Unsigned) {
      throw DomainError("negative value in unsigned mode");
    }
    attains = attains || std::abs(value) == k_;
  }
  if (!attains) {
    throw DomainError("vector does not attain magnitude k=" + std::to_string(k_));
  }
}

BlockVector BlockVector::from_pairs(int k, Mode mode,
                                    std::vector<std::pair<int, int>> pairs) {
  std::sort(pairs.begin(), pairs.end());
  std::vector<Entry> entries;
  entries.reserve(pairs.size());
  for (auto [pos, value] : pairs) {
    if (value != 0) entries.push_back({pos, value});
  }
  return BlockVector(k, mode, std::move(entries));
}

int BlockVector::at(int pos) const noexcept {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), pos,
      [](Entry const& e, int p) { return e.pos < p; });
  return (it != entries_.end() && it->pos == pos) ? it->value : 0;
}

std::strong_ordering operator<=>(BlockVector const& a, BlockVector const& b) {
  if (auto c = a.entries_ <=> b.entries_; c != 0) return c;
  if (auto c = a.k_ <=> b.k_; c != 0) return c;
  return a.mode_ <=> b.mode_;
}

std::size_t BlockVectorHash::operator()(BlockVector const& p) const noexcept {
  std::size_t h = static_cast<std::size_t>(p.k()) * 31u
                  + static_cast<std::size_t>(p.mode());
  for (auto const& e : p.entries()) {
    h ^= static_cast<std::size_t>(e.pos) * 0x9E3779B97F4A7C15ull
         + static_cast<std::size_t>(e.value + 64) + (h << 6) + (h >> 2);
  }
  return h;
}

BlockSequence::BlockSequence(std::vector<BlockVector> elements)
    : elements_(std::move(elements)) {
  for (std::size_t i = 1; i < elements_.size(); ++i) {
    auto const& prev = elements_[i - 1];
    auto const& cur  = elements_[i];
    if (prev.k() != cur.k() || prev.mode() != cur.mode()) {
      throw DomainError("block sequence elements must share k and mode");
    }
    if (prev.max_pos() >= cur.min_pos()) {
      throw DomainError("block sequence is not strictly block ordered at index "
                        + std::to_string(i));
    }
  }
}

RealVector::RealVector(std::vector<RealEntry> entries)
    : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!std::isfinite(entries_[i].value)) throw DomainError("non-finite value");
    if (i > 0 && entries_[i - 1].pos >= entries_[i].pos) {
      throw DomainError("positions must be strictly increasing");
    }
  }
}

double RealVector::at(int pos) const noexcept {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), pos,
      [](RealEntry const& e, int p) { return e.pos < p; });
  return (it != entries_.end() && it->pos == pos) ? it->value : 0.0;
}

double RealVector::sup_norm() const noexcept {
  double m = 0.0;
  for (auto const& e : entries_) m = std::max(m, std::abs(e.value));
  return m;
}

double linf_dist(RealVector const& x, RealVector const& y) {
  auto xs = x.entries();
  auto ys = y.entries();
  double   d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < xs.size() || j < ys.size()) {
    if (j == ys.size() || (i < xs.size() && xs[i].pos < ys[j].pos)) {
      d = std::max(d, std::abs(xs[i++].value));
    } else if (i == xs.size() || ys[j].pos < xs[i].pos) {
      d = std::max(d, std::abs(ys[j++].value));
    } else {
      d = std::max(d, std::abs(xs[i++].value - ys[j++].value));
    }
  }
  return d;
}

}  // namespace finram
