#pragma once

// Shared enumeration kernel for spans of block sequences and of word
// sequences. Every span element is a left-to-right concatenation of one
// "image" per chosen generator; some images are marked (zero tetris
// exponent with the identity substitution) and spans usually require at
// least one marked image.
//
// Pruning: for a fixed generator set, the first marked slot f is chosen
// explicitly; slots before f range over unmarked images only, slot f over
// marked ones, slots after f over all. Each admissible choice is visited
// exactly once and nothing is generated only to be filtered out.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <span>
#include <vector>

#include "finram/error.hpp"

namespace finram::detail {

inline constexpr std::size_t kMaxSpanGenerators = 30;

template <typename Image, typename Emit>
void for_each_in_mask(std::vector<std::vector<Image>> const& images,
                      std::uint64_t mask, bool require_marked, Emit&& emit) {
  std::vector<std::size_t> slots;
  for (std::size_t n = 0; n < images.size(); ++n) {
    if (mask >> n & 1u) slots.push_back(n);
  }
  std::size_t const          t = slots.size();
  std::vector<std::size_t>   choice(t);
  std::vector<Image const*>  picked(t);

  // Without the marked requirement a single pass with f = t (no
  // constraint) covers everything.
  std::size_t const f_begin = require_marked ? 0 : t;
  std::size_t const f_end   = require_marked ? t : t + 1;

  for (std::size_t f = f_begin; f < f_end; ++f) {
    auto allowed = [&](std::size_t slot, std::size_t idx) {
      if (f == t) return true;
      bool marked = images[slots[slot]][idx].marked;
      if (slot < f) return !marked;
      if (slot == f) return marked;
      return true;
    };
    auto next_allowed = [&](std::size_t slot, std::size_t from) {
      auto const& imgs = images[slots[slot]];
      while (from < imgs.size() && !allowed(slot, from)) ++from;
      return from;
    };
    bool empty = false;
    for (std::size_t s = 0; s < t; ++s) {
      choice[s] = next_allowed(s, 0);
      if (choice[s] == images[slots[s]].size()) empty = true;
    }
    if (empty) continue;
    while (true) {
      for (std::size_t s = 0; s < t; ++s) picked[s] = &images[slots[s]][choice[s]];
      emit(std::span<Image const* const>(picked));
      bool advanced = false;
      for (std::size_t s = t; s-- > 0;) {
        choice[s] = next_allowed(s, choice[s] + 1);
        if (choice[s] < images[slots[s]].size()) {
          advanced = true;
          break;
        }
        choice[s] = next_allowed(s, 0);
      }
      if (!advanced) break;
    }
  }
}

inline std::vector<std::uint64_t> generator_masks(std::size_t generators,
                                                  int         max_segments) {
  if (generators == 0) throw DomainError("span of an empty sequence");
  if (generators > kMaxSpanGenerators) throw DomainError("too many generators to span");
  std::vector<std::uint64_t> masks;
  std::uint64_t const        end = std::uint64_t{1} << generators;
  for (std::uint64_t m = 1; m < end; ++m) {
    if (max_segments <= 0 || std::popcount(m) <= max_segments) masks.push_back(m);
  }
  return masks;
}

// Builds every span element, one generator set per task. `build` turns a
// span of picked images into an output element. Output is sorted and
// deduplicated, so the result does not depend on scheduling.
template <typename Out, typename Image, typename Build>
std::vector<Out> enumerate_span(std::vector<std::vector<Image>> const& images,
                                int max_segments, bool require_marked,
                                Build const& build, bool parallel) {
  auto const       masks = generator_masks(images.size(), max_segments);
  std::vector<Out> out;
  auto const       count = static_cast<std::int64_t>(masks.size());
  if (parallel) {
#pragma omp parallel
    {
      std::vector<Out> local;
#pragma omp for schedule(dynamic, 4) nowait
      for (std::int64_t i = 0; i < count; ++i) {
        for_each_in_mask(images, masks[static_cast<std::size_t>(i)], require_marked,
                         [&](auto picked) { local.push_back(build(picked)); });
      }
#pragma omp critical(finram_span_merge)
      out.insert(out.end(), std::make_move_iterator(local.begin()),
                 std::make_move_iterator(local.end()));
    }
  } else {
    for (auto mask : masks) {
      for_each_in_mask(images, mask, require_marked,
                       [&](auto picked) { out.push_back(build(picked)); });
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace finram::detail
