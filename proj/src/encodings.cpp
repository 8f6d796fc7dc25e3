#include "finram/encodings.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "finram/error.hpp"
#include "finram/word_algebra.hpp"

namespace finram {

ParamMatrix::ParamMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0 || cols > 64) {
    throw DomainError("matrix bounds must satisfy rows >= 0 and 0 <= cols <= 64");
  }
  bits_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0);
}

bool ParamMatrix::at(int n, int i) const {
  if (n < 0 || n >= rows_ || i < 0 || i >= cols_) {
    throw DomainError("matrix index out of bounds");
  }
  return bits_[static_cast<std::size_t>(n) * static_cast<std::size_t>(cols_)
               + static_cast<std::size_t>(i)] != 0;
}

void ParamMatrix::set(int n, int i, bool value) {
  if (n < 0 || n >= rows_ || i < 0 || i >= cols_) {
    throw DomainError("matrix index out of bounds");
  }
  bits_[static_cast<std::size_t>(n) * static_cast<std::size_t>(cols_)
        + static_cast<std::size_t>(i)] = value ? 1 : 0;
}

Letter ParamMatrix::row(int n) const {
  Letter l;
  for (int i = 0; i < cols_; ++i) {
    if (at(n, i)) l.bits |= std::uint64_t{1} << i;
  }
  return l;
}

std::vector<std::pair<int, int>> ParamMatrix::ones() const {
  std::vector<std::pair<int, int>> out;
  for (int n = 0; n < rows_; ++n) {
    for (int i = 0; i < cols_; ++i) {
      if (at(n, i)) out.emplace_back(n, i);
    }
  }
  return out;
}

BlockSequence phi_encode(std::span<Word const> xs) {
  std::vector<BlockVector> out;
  int offset = 0;
  for (std::size_t m = 0; m < xs.size(); ++m) {
    auto const& x = xs[m];
    std::vector<Entry> entries;
    for (std::size_t l = 0; l < x.size(); ++l) {
      if (x[l].is_variable()) entries.push_back({offset + static_cast<int>(l), x[l].var});
    }
    if (entries.empty()) {
      throw DomainError("word " + std::to_string(m) + " has no variables to encode");
    }
    out.emplace_back(x.k(), x.mode(), std::move(entries));
    offset += static_cast<int>(x.size());
  }
  return BlockSequence(std::move(out));
}

ParamMatrix psi_encode(std::span<Word const> xs, int cols) {
  int rows = 0;
  for (auto const& x : xs) rows += static_cast<int>(x.size());
  ParamMatrix m(rows, cols);
  int n = 0;
  for (auto const& x : xs) {
    for (auto const& s : x.symbols()) {
      if (!s.is_variable()) {
        for (int i = 0; i < cols; ++i) m.set(n, i, s.letter.bit(i));
      }
      ++n;
    }
  }
  return m;
}

namespace {

void require_pairs(WordSequence const& ys) {
  if (ys.size() % 2 != 0) throw DomainError("Y must have an even number of words");
}

std::vector<int> offsets_of(WordSequence const& ys) {
  std::vector<int> off(ys.size() + 1, 0);
  for (std::size_t n = 0; n < ys.size(); ++n) {
    off[n + 1] = off[n] + static_cast<int>(ys[n].size());
  }
  return off;
}

}  // namespace

BlockSequence derive_B(WordSequence const& ys) {
  require_pairs(ys);
  auto const off = offsets_of(ys);
  std::vector<BlockVector> out;
  for (std::size_t n = 1; n < ys.size(); n += 2) {
    std::vector<Entry> entries;
    for (std::size_t l = 0; l < ys[n].size(); ++l) {
      if (ys[n][l].is_variable()) entries.push_back({off[n] + static_cast<int>(l), ys[n][l].var});
    }
    out.emplace_back(ys.k(), ys.mode(), std::move(entries));
  }
  return BlockSequence(std::move(out));
}

std::vector<Word> pair_substitute(WordSequence const& ys,
                                  std::span<Letter const> sigmas) {
  require_pairs(ys);
  std::size_t const pairs = ys.size() / 2;
  if (sigmas.size() != pairs) {
    throw DomainError("expected " + std::to_string(pairs) + " letters, got "
                      + std::to_string(sigmas.size()));
  }
  std::vector<Word> out;
  for (std::size_t m = 0; m < pairs; ++m) {
    if (sigmas[m].level() > static_cast<int>(2 * m)) {
      throw DomainError("sigma_" + std::to_string(2 * m) + " lies outside L_"
                        + std::to_string(2 * m));
    }
    std::vector<Letter> tuple(substitution_arity(ys.k(), ys.mode()), sigmas[m]);
    out.push_back(concat(substitute(ys[2 * m], Substitution::letters(tuple)), ys[2 * m + 1]));
  }
  return out;
}

bool PerfectSet::contains(std::span<std::uint8_t const> delta) const {
  if (delta.size() != static_cast<std::size_t>(length)) return false;
  for (auto [n, b] : forced) {
    if (delta[static_cast<std::size_t>(n)] != b) return false;
  }
  for (auto const& cls : classes) {
    for (int n : cls) {
      if (delta[static_cast<std::size_t>(n)] != delta[static_cast<std::size_t>(cls.front())]) {
        return false;
      }
    }
  }
  return true;
}

std::vector<std::uint8_t> PerfectSet::member(std::uint64_t choice) const {
  std::vector<std::uint8_t> delta(static_cast<std::size_t>(length), 0);
  for (auto [n, b] : forced) delta[static_cast<std::size_t>(n)] = static_cast<std::uint8_t>(b);
  for (std::size_t c = 0; c < classes.size(); ++c) {
    auto bit = static_cast<std::uint8_t>(c < 64 ? choice >> c & 1u : 0u);
    for (int n : classes[c]) delta[static_cast<std::size_t>(n)] = bit;
  }
  return delta;
}

std::vector<std::vector<std::uint8_t>> PerfectSet::enumerate() const {
  if (classes.size() > 24) throw DomainError("too many free classes to enumerate");
  std::vector<std::vector<std::uint8_t>> out;
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << classes.size()); ++c) {
    out.push_back(member(c));
  }
  return out;
}

PerfectSet perfect_set(WordSequence const& ys, int i) {
  require_pairs(ys);
  if (i < 0) throw DomainError("perfect set index must be nonnegative");
  auto const off = offsets_of(ys);
  PerfectSet ps;
  ps.index  = i;
  ps.length = off.back();
  for (std::size_t n = 0; n < ys.size(); ++n) {
    bool const       even  = n % 2 == 0;
    bool const       below = n < 2 * static_cast<std::size_t>(i);
    std::vector<int> cls;
    for (std::size_t l = 0; l < ys[n].size(); ++l) {
      int const     pos = off[n] + static_cast<int>(l);
      Symbol const& s   = ys[n][l];
      if (!s.is_variable()) {
        ps.forced.emplace_back(pos, s.letter.bit(i) ? 1 : 0);
      } else if (!even || below) {
        ps.forced.emplace_back(pos, 0);
      } else {
        cls.push_back(pos);
      }
    }
    if (!cls.empty()) ps.classes.push_back(std::move(cls));
  }
  return ps;
}

std::vector<Letter> product_to_sigmas(WordSequence const& ys,
                                      std::span<std::vector<std::uint8_t> const> deltas) {
  require_pairs(ys);
  if (deltas.size() > 64) throw DomainError("at most 64 columns are supported");
  auto const off = offsets_of(ys);
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!perfect_set(ys, static_cast<int>(i)).contains(deltas[i])) {
      throw DomainError("delta_" + std::to_string(i) + " violates the constraints of P_"
                        + std::to_string(i));
    }
  }
  std::vector<Letter> sigmas;
  for (std::size_t m = 0; 2 * m < ys.size(); ++m) {
    auto const& y     = ys[2 * m];
    auto        first = std::find_if(y.symbols().begin(), y.symbols().end(),
                                     [](Symbol const& s) { return s.is_variable(); });
    int const   n     = off[2 * m] + static_cast<int>(first - y.symbols().begin());
    Letter      sigma;
    for (std::size_t i = 0; i < deltas.size(); ++i) {
      if (deltas[i][static_cast<std::size_t>(n)]) sigma.bits |= std::uint64_t{1} << i;
    }
    sigmas.push_back(sigma);
  }
  return sigmas;
}

ParamMatrix assemble_matrix(std::span<std::vector<std::uint8_t> const> deltas) {
  if (deltas.empty()) throw DomainError("no rows to assemble");
  int const rows = static_cast<int>(deltas.front().size());
  ParamMatrix m(rows, static_cast<int>(deltas.size()));
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (static_cast<int>(deltas[i].size()) != rows) {
      throw DomainError("strings differ in length");
    }
    for (int n = 0; n < rows; ++n) {
      m.set(n, static_cast<int>(i), deltas[i][static_cast<std::size_t>(n)] != 0);
    }
  }
  return m;
}

std::optional<std::vector<Letter>> sigmas_for_matrix(WordSequence const& ys,
                                                     ParamMatrix const&  m) {
  require_pairs(ys);
  auto const off = offsets_of(ys);
  if (m.rows() != off.back()) return std::nullopt;
  std::uint64_t const mask =
      m.cols() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m.cols()) - 1;
  std::vector<Letter> sigmas;
  for (std::size_t n = 0; n < ys.size(); ++n) {
    std::optional<Letter> sigma;
    for (std::size_t l = 0; l < ys[n].size(); ++l) {
      Symbol const& s   = ys[n][l];
      Letter const  row = m.row(off[n] + static_cast<int>(l));
      if (!s.is_variable()) {
        if (row.bits != (s.letter.bits & mask)) return std::nullopt;
      } else if (n % 2 == 1) {
        if (row != kZeroLetter) return std::nullopt;
      } else {
        if (sigma && *sigma != row) return std::nullopt;
        sigma = row;
      }
    }
    if (n % 2 == 0) {
      if (sigma->level() > static_cast<int>(n)) return std::nullopt;
      sigmas.push_back(*sigma);
    }
  }
  return sigmas;
}

std::optional<BlockDecomposition> decompose_over(BlockSequence const& bs,
                                                 BlockVector const&   a) {
  if (bs.empty()) return std::nullopt;
  if (a.k() != bs[0].k() || a.mode() != bs[0].mode()) {
    throw DomainError("vector and blocks differ in k or mode");
  }
  int const k = a.k();
  // every entry of a must sit on the support of some block
  std::size_t b = 0;
  for (auto const& e : a.entries()) {
    while (b < bs.size() && bs[b].max_pos() < e.pos) ++b;
    if (b == bs.size() || bs[b].at(e.pos) == 0) return std::nullopt;
  }
  std::vector<int> signs(bs.size(), 1), exps(bs.size(), k);
  int first = -1, last = -1;
  for (std::size_t n = 0; n < bs.size(); ++n) {
    auto const& blk = bs[n];
    auto        top = std::find_if(blk.entries().begin(), blk.entries().end(),
                                   [&](Entry const& e) { return std::abs(e.value) == k; });
    int const   v   = a.at(top->pos);
    if (v == 0) {
      for (auto const& e : blk.entries()) {
        if (a.at(e.pos) != 0) return std::nullopt;
      }
      continue;
    }
    int const j    = k - std::abs(v);
    int const sign = (v > 0) == (top->value > 0) ? 1 : -1;
    for (auto const& e : blk.entries()) {
      int mag  = std::abs(e.value) - j;
      int want = mag <= 0 ? 0 : (e.value > 0 ? mag : -mag) * sign;
      if (a.at(e.pos) != want) return std::nullopt;
    }
    signs[n] = sign;
    exps[n]  = j;
    if (first < 0) first = static_cast<int>(n);
    last = static_cast<int>(n);
  }
  if (first < 0) return std::nullopt;
  BlockDecomposition d;
  d.first = first;
  d.signs.assign(signs.begin() + first, signs.begin() + last + 1);
  d.exponents.assign(exps.begin() + first, exps.begin() + last + 1);
  return d;
}

std::vector<Word> decode_witness(WordSequence const& ys, BlockSequence const& a,
                                 std::span<Letter const> sigmas) {
  auto const xs = pair_substitute(ys, sigmas);
  auto const bs = derive_B(ys);
  if (a.empty()) throw DomainError("nothing to decode");
  int const  k    = ys.k();
  Mode const mode = ys.mode();

  std::vector<Letter> const zero_tuple(substitution_arity(k, mode), kZeroLetter);
  auto const                zeroed = Substitution::letters(zero_tuple);

  std::vector<Word> out;
  int prev_last = -1;
  for (std::size_t l = 0; l < a.size(); ++l) {
    auto d = decompose_over(bs, a[l]);
    if (!d) throw DomainError("vector " + std::to_string(l) + " is not in the span of B");
    if (d->first <= prev_last) throw DomainError("A is not a block sequence over B");
    int const end = l + 1 == a.size() ? static_cast<int>(xs.size()) - 1 : d->last();
    std::vector<Symbol> symbols;
    for (int p = prev_last + 1; p <= end; ++p) {
      auto const& x = xs[static_cast<std::size_t>(p)];
      Word        piece = x;
      if (p < d->first || p > d->last()) {
        piece = substitute(x, zeroed);
      } else {
        auto const i = static_cast<std::size_t>(p - d->first);
        piece        = tetris_word_pow(x, d->exponents[i]);
        if (d->signs[i] < 0) piece = reflect_word(piece);
      }
      symbols.insert(symbols.end(), piece.symbols().begin(), piece.symbols().end());
    }
    out.emplace_back(k, mode, std::move(symbols));
    prev_last = d->last();
  }
  return out;
}

}  // namespace finram
