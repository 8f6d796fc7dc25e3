#pragma once

// Independent reference implementations for the tests. Everything here
// works on plain maps and vectors and recomputes definitions directly
// (generate every combination, then filter), without calling the
// enumeration or pruning code under test.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "finram/block_vector.hpp"
#include "finram/colouring.hpp"
#include "finram/encodings.hpp"
#include "finram/word.hpp"
#include "random.hpp"

namespace oracle {

using finram::BlockSequence;
using finram::BlockVector;
using finram::Letter;
using finram::Mode;
using finram::Symbol;
using finram::Word;

inline int sgn(int v) { return v < 0 ? -1 : 1; }

// ---- vectors ---------------------------------------------------------------

using Raw = std::map<int, int>;

inline Raw raw(BlockVector const& p) {
  Raw r;
  for (auto const& e : p.entries()) r[e.pos] = e.value;
  return r;
}

inline std::set<Raw> raw_set(std::vector<BlockVector> const& ps) {
  std::set<Raw> out;
  for (auto const& p : ps) out.insert(raw(p));
  return out;
}

inline BlockVector cook(int k, Mode mode, Raw const& r) {
  std::vector<std::pair<int, int>> pairs(r.begin(), r.end());
  return BlockVector::from_pairs(k, mode, std::move(pairs));
}

inline Raw tetris(Raw const& r, int j) {
  Raw out;
  for (auto [pos, v] : r) {
    int const m = std::abs(v) - j;
    if (m > 0) out[pos] = sgn(v) * m;
  }
  return out;
}

inline int linf(Raw const& a, Raw const& b) {
  int d = 0;
  for (auto [pos, v] : a) {
    auto it = b.find(pos);
    d = std::max(d, std::abs(v - (it == b.end() ? 0 : it->second)));
  }
  for (auto [pos, v] : b) {
    if (!a.contains(pos)) d = std::max(d, std::abs(v));
  }
  return d;
}

// Every Σ ε_i T^{j_i}(p_{n_i}) over nonempty index sets, all exponent and
// sign tuples, kept when min j_i = 0.
inline std::set<Raw> span(std::vector<Raw> const& blocks, int k, bool is_signed) {
  std::set<Raw> out;
  int const     n = static_cast<int>(blocks.size());
  for (int mask = 1; mask < (1 << n); ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i) {
      if (mask >> i & 1) idx.push_back(i);
    }
    int const s     = static_cast<int>(idx.size());
    int       exps  = 1;
    for (int i = 0; i < s; ++i) exps *= k;
    int const signs = is_signed ? 1 << s : 1;
    for (int e = 0; e < exps; ++e) {
      for (int g = 0; g < signs; ++g) {
        Raw  sum;
        int  code = e;
        bool has0 = false;
        for (int t = 0; t < s; ++t) {
          int const j = code % k;
          code /= k;
          has0 = has0 || j == 0;
          int const eps = (g >> t & 1) ? -1 : 1;
          for (auto [pos, v] : tetris(blocks[static_cast<std::size_t>(idx[static_cast<std::size_t>(t)])], j)) {
            sum[pos] = eps * v;
          }
        }
        if (has0) out.insert(sum);
      }
    }
  }
  return out;
}

// Every vector on [0, N) with values in [-k, k] (or [0, k]) attaining k.
inline std::vector<Raw> universe(int k, int N, bool is_signed) {
  int const        lo = is_signed ? -k : 0;
  int const        base = k - lo + 1;
  std::vector<int> digits(static_cast<std::size_t>(N), 0);
  std::set<Raw>    out;
  while (true) {
    Raw  r;
    bool top = false;
    for (int pos = 0; pos < N; ++pos) {
      int const v = digits[static_cast<std::size_t>(pos)] + lo;
      if (v != 0) r[pos] = v;
      top = top || std::abs(v) == k;
    }
    if (top) out.insert(r);
    int i = 0;
    while (i < N && ++digits[static_cast<std::size_t>(i)] == base) digits[static_cast<std::size_t>(i++)] = 0;
    if (i == N) break;
  }
  return {out.begin(), out.end()};
}

// Unpruned search for m = 2: every block-ordered pair in canonical order,
// span by the oracle above, monochromatic (radius 0) or inside one colour
// class's 1-fattening over the universe (radius 1).
struct BruteResult {
  std::optional<std::pair<Raw, Raw>> witness;
};

inline BruteResult brute_search_pairs(int k, int N, bool is_signed, int radius,
                                      finram::Colouring const& c) {
  auto const  U    = universe(k, N, is_signed);
  Mode const  mode = is_signed ? Mode::Signed : Mode::Unsigned;
  int const   r    = c.colours();
  std::map<Raw, std::uint32_t> ball;  // colours within the radius
  std::vector<int>             col(U.size());
  for (std::size_t i = 0; i < U.size(); ++i) col[i] = c(cook(k, mode, U[i]));
  for (std::size_t i = 0; i < U.size(); ++i) {
    std::uint32_t bits = 0;
    for (std::size_t j = 0; j < U.size(); ++j) {
      if (linf(U[i], U[j]) <= radius) bits |= 1u << col[j];
    }
    ball[U[i]] = bits;
  }
  for (std::size_t a = 0; a < U.size(); ++a) {
    for (std::size_t b = 0; b < U.size(); ++b) {
      if (U[a].rbegin()->first >= U[b].begin()->first) continue;
      std::uint32_t ok = r >= 32 ? ~0u : (1u << r) - 1;
      for (auto const& e : span({U[a], U[b]}, k, is_signed)) ok &= ball.at(e);
      if (ok) return {std::make_pair(U[a], U[b])};
    }
  }
  return {};
}

// ---- words -------------------------------------------------------------------

// (var, letter bits); var 0 means the letter.
using RawWord = std::vector<std::pair<int, std::uint64_t>>;

inline RawWord raw(Word const& w) {
  RawWord r;
  for (auto const& s : w.symbols()) r.emplace_back(s.var, s.var ? 0 : s.letter.bits);
  return r;
}

inline std::set<RawWord> raw_set(std::vector<Word> const& ws) {
  std::set<RawWord> out;
  for (auto const& w : ws) out.insert(raw(w));
  return out;
}

inline Word cook(int k, Mode mode, RawWord const& r) {
  std::vector<Symbol> s;
  for (auto [v, bits] : r) s.push_back(v ? Symbol::variable(v) : Symbol::of(Letter{bits}));
  return Word(k, mode, std::move(s));
}

inline RawWord tetris(RawWord const& w, int j) {
  RawWord out = w;
  for (auto& [v, bits] : out) {
    if (v == 0) continue;
    int const m = std::abs(v) - j;
    if (m > 0) {
      v = sgn(v) * m;
    } else {
      v    = 0;
      bits = 0;
    }
  }
  return out;
}

inline RawWord reflect(RawWord const& w) {
  RawWord out = w;
  for (auto& s : out) s.first = -s.first;
  return out;
}

inline int top_var(RawWord const& w) {
  int t = 0;
  for (auto [v, bits] : w) t = std::max(t, std::abs(v));
  return t;
}

// Tuple slot of v: unsigned (λ_1..λ_k), signed (λ_-k..λ_-1, λ_1..λ_k).
inline int slot(int k, bool is_signed, int v) {
  if (!is_signed) return v - 1;
  return v < 0 ? v + k : v + k - 1;
}

inline RawWord substitute(RawWord const& w, std::vector<std::uint64_t> const& tuple, int k,
                          bool is_signed) {
  RawWord out = w;
  for (auto& [v, bits] : out) {
    if (v == 0) continue;
    bits = tuple[static_cast<std::size_t>(slot(k, is_signed, v))];
    v    = 0;
  }
  return out;
}

// [X]_{Lv_k} / [X]_{Lv_±k} by brute force: each chosen generator becomes
// ε T^j(x) or x[λ] for every full tuple λ over L_grade; concatenations
// without a variable of magnitude k are dropped.
inline std::set<RawWord> span_words(std::vector<RawWord> const& xs, std::vector<int> const& grades,
                                    std::vector<std::vector<std::uint64_t>> const& levels, int k,
                                    bool is_signed, bool neg_tetris = false) {
  std::vector<std::vector<RawWord>> options(xs.size());
  for (std::size_t n = 0; n < xs.size(); ++n) {
    for (int j = 0; j < k; ++j) {
      if (neg_tetris) {
        RawWord w = xs[n];
        for (int t = 0; t < j; ++t) w = reflect(tetris(w, 1));
        options[n].push_back(w);
        continue;
      }
      options[n].push_back(tetris(xs[n], j));
      if (is_signed) options[n].push_back(reflect(tetris(xs[n], j)));
    }
    auto const& L     = levels[static_cast<std::size_t>(std::min<int>(grades[n], static_cast<int>(levels.size()) - 1))];
    int const   arity = is_signed ? 2 * k : k;
    std::vector<std::size_t> pick(static_cast<std::size_t>(arity), 0);
    while (true) {
      std::vector<std::uint64_t> tuple;
      for (auto p : pick) tuple.push_back(L[p]);
      options[n].push_back(substitute(xs[n], tuple, k, is_signed));
      std::size_t i = 0;
      while (i < pick.size() && ++pick[i] == L.size()) pick[i++] = 0;
      if (i == pick.size()) break;
    }
  }
  std::set<RawWord> out;
  std::size_t const n = xs.size();
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) idx.push_back(i);
    }
    std::vector<std::size_t> pick(idx.size(), 0);
    while (true) {
      RawWord w;
      for (std::size_t t = 0; t < idx.size(); ++t) {
        auto const& piece = options[idx[t]][pick[t]];
        w.insert(w.end(), piece.begin(), piece.end());
      }
      if (top_var(w) == k) out.insert(w);
      std::size_t i = 0;
      while (i < pick.size() && ++pick[i] == options[idx[i]].size()) pick[i++] = 0;
      if (i == pick.size()) break;
    }
  }
  return out;
}

// d(x, y): infinite (nullopt) unless both have nonzero letters at exactly
// the same places and agree there; otherwise max |value difference| with
// the zero letter read as 0.
inline std::optional<int> dist(RawWord const& x, RawWord const& y) {
  if (x.size() != y.size()) return std::nullopt;
  int d = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    bool const lx = x[i].first == 0 && x[i].second != 0;
    bool const ly = y[i].first == 0 && y[i].second != 0;
    if (lx || ly) {
      if (x[i] != y[i]) return std::nullopt;
      continue;
    }
    d = std::max(d, std::abs(x[i].first - y[i].first));
  }
  return d;
}

// The halving rule case by case: even i -> i/2, odd positive ->
// (i-1)/2, odd negative -> (i+1)/2, 0 read as the zero letter.
inline RawWord halve(RawWord const& w) {
  RawWord out;
  for (auto [v, bits] : w) {
    if (v == 0) {
      out.emplace_back(0, bits);
      continue;
    }
    int h = 0;
    if (v % 2 == 0) {
      h = v / 2;
    } else if (v > 0) {
      h = (v - 1) / 2;
    } else {
      h = (v + 1) / 2;
    }
    out.emplace_back(h, 0);
  }
  return out;
}

// ---- encodings ---------------------------------------------------------------

// φ: the value of v_i at place l of x_m sits at offset(m) + l.
inline std::vector<Raw> phi(std::vector<RawWord> const& xs) {
  std::vector<Raw> out;
  int              offset = 0;
  for (auto const& x : xs) {
    Raw a;
    for (std::size_t l = 0; l < x.size(); ++l) {
      if (x[l].first != 0) a[offset + static_cast<int>(l)] = x[l].first;
    }
    out.push_back(a);
    offset += static_cast<int>(x.size());
  }
  return out;
}

// ψ as the set of (row, col) ones.
inline std::set<std::pair<int, int>> psi(std::vector<RawWord> const& xs, int cols) {
  std::set<std::pair<int, int>> out;
  int                           n = 0;
  for (auto const& x : xs) {
    for (auto [v, bits] : x) {
      if (v == 0) {
        for (int i = 0; i < cols; ++i) {
          if (bits >> i & 1) out.emplace(n, i);
        }
      }
      ++n;
    }
  }
  return out;
}

inline std::set<std::pair<int, int>> ones(finram::ParamMatrix const& m) {
  auto v = m.ones();
  return {v.begin(), v.end()};
}

// ---- generators --------------------------------------------------------------

using finram::detail::Rng;

// A block vector on [lo, hi) attaining magnitude k.
inline BlockVector random_block(Rng& rng, int k, Mode mode, int lo, int hi) {
  Raw r;
  for (int pos = lo; pos < hi; ++pos) {
    if (rng.below(2) == 0) continue;
    int v = rng.between(1, k);
    if (mode == Mode::Signed && rng.below(2) == 0) v = -v;
    r[pos] = v;
  }
  int const top = rng.between(lo, hi - 1);
  r[top]        = mode == Mode::Signed && rng.below(2) == 0 ? -k : k;
  return cook(k, mode, r);
}

// A random block sequence of `count` blocks inside [0, limit).
inline BlockSequence random_sequence(Rng& rng, int k, Mode mode, int count, int limit) {
  std::vector<int> cuts{0};
  std::vector<int> inner;
  for (int i = 1; i < limit; ++i) inner.push_back(i);
  for (int c = 1; c < count; ++c) {
    std::size_t const at = rng.below(inner.size());
    cuts.push_back(inner[at]);
    inner.erase(inner.begin() + static_cast<std::ptrdiff_t>(at));
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(limit);
  std::vector<BlockVector> blocks;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    blocks.push_back(random_block(rng, k, mode, cuts[i], cuts[i + 1]));
  }
  return BlockSequence(std::move(blocks));
}

// A random word of the given length: each place a variable (magnitude up
// to k, either sign when signed) or a letter from `letters`, with one
// place forced to carry magnitude k.
inline RawWord random_word(Rng& rng, int k, bool is_signed, int length,
                           std::vector<std::uint64_t> const& letters) {
  RawWord w;
  for (int i = 0; i < length; ++i) {
    if (rng.below(2) == 0) {
      w.emplace_back(0, letters[rng.below(letters.size())]);
    } else {
      int v = rng.between(1, k);
      if (is_signed && rng.below(2) == 0) v = -v;
      w.emplace_back(v, 0);
    }
  }
  auto const top = rng.below(static_cast<std::uint64_t>(length));
  w[top]         = {is_signed && rng.below(2) == 0 ? -k : k, 0};
  return w;
}

// Rapidly increasing lengths |y_n| = Σ_{i<n} |y_i| + 1 + extra.
inline std::vector<int> rapid_lengths(Rng& rng, int count, int max_extra) {
  std::vector<int> out;
  int              sum = 0;
  for (int i = 0; i < count; ++i) {
    out.push_back(sum + 1 + rng.between(0, max_extra));
    sum += out.back();
  }
  return out;
}

inline std::vector<std::uint64_t> bitstrings(int level) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << (level + 1)); ++b) out.push_back(b);
  return out;
}

}  // namespace oracle
