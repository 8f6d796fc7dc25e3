#include "finram/word_algebra.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <string>

#include "finram/error.hpp"
#include "span_kernel.hpp"

namespace finram {

namespace {

Word with_symbols(Word const& like, std::vector<Symbol> symbols) {
  return Word(like.k(), like.mode(), std::move(symbols));
}

void require_signed(Word const& x, char const* what) {
  if (x.mode() != Mode::Signed) {
    throw DomainError(std::string(what) + " requires signed mode");
  }
}

int sign_of(int v) { return v > 0 ? 1 : -1; }

}  // namespace

Word concat(Word const& x, Word const& y) {
  if (x.k() != y.k() || x.mode() != y.mode()) {
    throw DomainError("concat across different bounds or modes");
  }
  std::vector<Symbol> out(x.symbols().begin(), x.symbols().end());
  out.insert(out.end(), y.symbols().begin(), y.symbols().end());
  return with_symbols(x, std::move(out));
}

Word substitute(Word const& x, Substitution const& lambda) {
  if (lambda.is_identity()) return x;
  auto const& tuple = lambda.tuple();
  if (tuple.size() != substitution_arity(x.k(), x.mode())) {
    throw DomainError("substitution tuple has length " + std::to_string(tuple.size())
                      + ", expected "
                      + std::to_string(substitution_arity(x.k(), x.mode())));
  }
  std::vector<Symbol> out(x.symbols().begin(), x.symbols().end());
  for (auto& s : out) {
    if (s.is_variable()) s = Symbol::of(tuple[substitution_slot(x.k(), x.mode(), s.var)]);
  }
  return with_symbols(x, std::move(out));
}

Word tetris_word(Word const& x) {
  std::vector<Symbol> out(x.symbols().begin(), x.symbols().end());
  for (auto& s : out) {
    if (!s.is_variable()) continue;
    if (s.var == 1 || s.var == -1) {
      s = Symbol::of(kZeroLetter);
    } else {
      s.var -= sign_of(s.var);
    }
  }
  return with_symbols(x, std::move(out));
}

Word tetris_word_pow(Word const& x, int j) {
  if (j < 0) throw DomainError("negative tetris exponent");
  Word out = x;
  for (int i = 0; i < j; ++i) out = tetris_word(out);
  return out;
}

Word reflect_word(Word const& x) {
  require_signed(x, "reflection");
  std::vector<Symbol> out(x.symbols().begin(), x.symbols().end());
  for (auto& s : out) s.var = -s.var;
  return with_symbols(x, std::move(out));
}

Word neg_tetris_pow(Word const& x, int j) {
  if (j < 0) throw DomainError("negative tetris exponent");
  Word out = x;
  for (int i = 0; i < j; ++i) out = reflect_word(tetris_word(out));
  return out;
}

int variable_class(Word const& x) {
  int m = 0;
  for (auto const& s : x.symbols()) m = std::max(m, std::abs(s.var));
  return m;
}

bool is_rapidly_increasing(std::span<Word const> words) {
  std::size_t total = 0;
  for (std::size_t n = 0; n < words.size(); ++n) {
    if (n > 0 && words[n].size() <= total) return false;
    total += words[n].size();
  }
  return true;
}

namespace {

void check_substitution(WordSequence const& xs, Alphabet const& alphabet,
                        std::size_t n, Substitution const& lambda) {
  if (lambda.is_identity()) return;
  auto const& tuple = lambda.tuple();
  if (tuple.size() != substitution_arity(xs.k(), xs.mode())) {
    throw DomainError("substitution tuple has the wrong arity");
  }
  for (auto const& letter : tuple) {
    if (!alphabet.contains(xs.grade(n), letter)) {
      throw DomainError("substitution letter outside L_"
                        + std::to_string(xs.grade(n)));
    }
  }
}

Word segment_word(WordSequence const& xs, Segment const& seg) {
  auto const n = static_cast<std::size_t>(seg.generator);
  Word piece = tetris_word_pow(substitute(xs[n], seg.subst), seg.exponent);
  return seg.sign < 0 ? reflect_word(piece) : piece;
}

}  // namespace

Word compose(WordSequence const& xs, Alphabet const& alphabet,
             Decomposition const& d) {
  if (d.segments.empty()) throw DomainError("decomposition has no segments");
  std::vector<Symbol> out;
  int prev = -1;
  for (auto const& seg : d.segments) {
    if (seg.generator <= prev || seg.generator >= static_cast<int>(xs.size())) {
      throw DomainError("segment generators must be increasing indices into X");
    }
    prev = seg.generator;
    if (seg.sign != 1 && seg.sign != -1) throw DomainError("segment sign must be ±1");
    if (seg.sign < 0 && xs.mode() != Mode::Signed) {
      throw DomainError("negative segment sign in unsigned mode");
    }
    if (seg.exponent < 0 || seg.exponent > xs.k()) {
      throw DomainError("segment exponent outside [0, k]");
    }
    check_substitution(xs, alphabet, static_cast<std::size_t>(seg.generator), seg.subst);
    Word piece = segment_word(xs, seg);
    out.insert(out.end(), piece.symbols().begin(), piece.symbols().end());
  }
  return Word(xs.k(), xs.mode(), std::move(out));
}

namespace {

struct WordImage {
  std::vector<Symbol> symbols;
  bool                marked;
};

// Every variable-free image x[λ] with λ ranging over L_grade on the
// variables that occur in x and the zero letter elsewhere.
void letter_images(Word const& x, std::span<Letter const> level,
                   std::vector<WordImage>& out) {
  std::vector<int> vars;
  for (auto const& s : x.symbols()) {
    if (s.is_variable()) vars.push_back(s.var);
  }
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());

  std::vector<std::size_t> pick(vars.size(), 0);
  std::vector<Letter>      tuple(substitution_arity(x.k(), x.mode()), kZeroLetter);
  while (true) {
    for (std::size_t i = 0; i < vars.size(); ++i) {
      tuple[substitution_slot(x.k(), x.mode(), vars[i])] = level[pick[i]];
    }
    Word w = substitute(x, Substitution::letters(tuple));
    out.push_back({{w.symbols().begin(), w.symbols().end()}, false});
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == level.size()) pick[i++] = 0;
    if (i == pick.size()) break;
  }
}

enum class ImageKind { Signed, NegTetris, LettersOnly };

std::vector<std::vector<WordImage>> word_images(WordSequence const& xs,
                                                Alphabet const&     alphabet,
                                                ImageKind           kind) {
  std::vector<std::vector<WordImage>> all;
  for (std::size_t n = 0; n < xs.size(); ++n) {
    Word const&            x = xs[n];
    std::vector<WordImage> imgs;
    if (kind != ImageKind::LettersOnly) {
      for (int j = 0; j < xs.k(); ++j) {
        if (kind == ImageKind::NegTetris) {
          Word w = neg_tetris_pow(x, j);
          imgs.push_back({{w.symbols().begin(), w.symbols().end()}, j == 0});
          continue;
        }
        Word w = tetris_word_pow(x, j);
        imgs.push_back({{w.symbols().begin(), w.symbols().end()}, j == 0});
        if (xs.mode() == Mode::Signed) {
          Word r = reflect_word(w);
          imgs.push_back({{r.symbols().begin(), r.symbols().end()}, j == 0});
        }
      }
    }
    letter_images(x, alphabet.level(xs.grade(n)), imgs);
    all.push_back(std::move(imgs));
  }
  return all;
}

std::vector<Word> word_span(WordSequence const& xs, Alphabet const& alphabet,
                            int max_segments, ImageKind kind, bool parallel) {
  auto const images = word_images(xs, alphabet, kind);
  int const  k      = xs.k();
  Mode const mode   = xs.mode();
  auto build = [&](std::span<WordImage const* const> picked) {
    std::vector<Symbol> symbols;
    for (auto const* img : picked) {
      symbols.insert(symbols.end(), img->symbols.begin(), img->symbols.end());
    }
    return Word(k, mode, std::move(symbols));
  };
  return detail::enumerate_span<Word>(images, max_segments,
                                      kind != ImageKind::LettersOnly, build, parallel);
}

}  // namespace

std::vector<Word> span_words(WordSequence const& xs, Alphabet const& alphabet,
                             int max_segments) {
  return word_span(xs, alphabet, max_segments, ImageKind::Signed, true);
}

std::vector<Word> span_words_serial(WordSequence const& xs, Alphabet const& alphabet,
                                    int max_segments) {
  return word_span(xs, alphabet, max_segments, ImageKind::Signed, false);
}

std::vector<Word> span_letters(WordSequence const& xs, Alphabet const& alphabet,
                               int max_segments) {
  return word_span(xs, alphabet, max_segments, ImageKind::LettersOnly, true);
}

std::vector<Word> span_negT(WordSequence const& xs, Alphabet const& alphabet,
                            int max_segments) {
  if (xs.mode() != Mode::Signed) throw DomainError("(-T) span requires signed mode");
  return word_span(xs, alphabet, max_segments, ImageKind::NegTetris, true);
}

namespace {

// Matches x[pos, pos + |y|) against the images of y; see parse_support
// for the canonical choice.
std::optional<Segment> match_segment(Word const& y, int grade,
                                     Alphabet const&         alphabet,
                                     std::span<Symbol const> seg) {
  int const k   = y.k();
  auto      top = std::find_if(y.symbols().begin(), y.symbols().end(),
                               [&](Symbol const& s) { return std::abs(s.var) == k; });
  auto const p  = static_cast<std::size_t>(top - y.symbols().begin());

  if (seg[p].is_variable()) {
    int const j    = k - std::abs(seg[p].var);
    int const sign = sign_of(seg[p].var) * sign_of(top->var);
    Word      want = tetris_word_pow(y, j);
    if (sign < 0) want = reflect_word(want);
    if (!std::equal(seg.begin(), seg.end(), want.symbols().begin())) return std::nullopt;
    return Segment{0, sign, j, Substitution::identity()};
  }

  std::vector<Letter>            tuple(substitution_arity(k, y.mode()), kZeroLetter);
  std::vector<std::optional<Letter>> seen(tuple.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    Symbol const& ys = y[i];
    Symbol const& xs = seg[i];
    if (!ys.is_variable()) {
      if (xs != ys) return std::nullopt;
      continue;
    }
    if (xs.is_variable() || !alphabet.contains(grade, xs.letter)) return std::nullopt;
    auto& slot = seen[substitution_slot(k, y.mode(), ys.var)];
    if (slot && *slot != xs.letter) return std::nullopt;
    slot = xs.letter;
  }
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (seen[i]) tuple[i] = *seen[i];
  }
  return Segment{0, 1, 0, Substitution::letters(std::move(tuple))};
}

}  // namespace

// Lengths of a rapidly increasing sequence are superincreasing, so |x|
// fixes the support: greedily take the longest generator that still fits.
std::optional<Decomposition> parse_support(WordSequence const& ys,
                                           Alphabet const&     alphabet,
                                           Word const&         x) {
  if (x.k() != ys.k() || x.mode() != ys.mode()) {
    throw DomainError("word and sequence differ in bound or mode");
  }
  std::vector<int> chosen;
  std::size_t      remaining = x.size();
  for (std::size_t n = ys.size(); n-- > 0;) {
    if (ys[n].size() <= remaining) {
      chosen.push_back(static_cast<int>(n));
      remaining -= ys[n].size();
    }
  }
  if (remaining != 0) return std::nullopt;
  std::reverse(chosen.begin(), chosen.end());

  Decomposition d;
  std::size_t   pos    = 0;
  bool          marked = false;
  for (int n : chosen) {
    auto const& y   = ys[static_cast<std::size_t>(n)];
    auto        seg = match_segment(y, ys.grade(static_cast<std::size_t>(n)), alphabet,
                                    x.symbols().subspan(pos, y.size()));
    if (!seg) return std::nullopt;
    seg->generator = n;
    marked = marked || (seg->subst.is_identity() && seg->exponent == 0);
    d.segments.push_back(std::move(*seg));
    pos += y.size();
  }
  if (!marked) return std::nullopt;
  return d;
}

bool is_block_subseq(std::span<Word const> xs, WordSequence const& ys,
                     Alphabet const& alphabet) {
  int prev_max = -1;
  for (auto const& x : xs) {
    auto d = parse_support(ys, alphabet, x);
    if (!d) return false;
    auto supp = d->support();
    if (supp.front() <= prev_max) return false;
    prev_max = supp.back();
  }
  return true;
}

bool compatible(Word const& x, Word const& y) {
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    bool x_letter = !x[i].is_variable() && x[i].letter != kZeroLetter;
    bool y_letter = !y[i].is_variable() && y[i].letter != kZeroLetter;
    if ((x_letter || y_letter) && x[i] != y[i]) return false;
  }
  return true;
}

Distance dist_words(Word const& x, Word const& y) {
  if (!compatible(x, y)) return Distance::infinity();
  std::int64_t d = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    d = std::max<std::int64_t>(d, std::abs(x[i].var - y[i].var));
  }
  return Distance(d);
}

Distance dist_seqs(std::span<Word const> xs, std::span<Word const> ys) {
  if (xs.size() != ys.size()) return Distance::infinity();
  Distance d(0);
  for (std::size_t i = 0; i < xs.size(); ++i) d = max(d, dist_words(xs[i], ys[i]));
  return d;
}

Word halve(Word const& x) {
  require_signed(x, "halving");
  if (x.k() % 2 != 0) throw DomainError("halving requires an even bound");
  std::vector<Symbol> out(x.symbols().begin(), x.symbols().end());
  for (auto& s : out) {
    if (!s.is_variable()) continue;
    int const h = s.var / 2;
    s = h == 0 ? Symbol::of(kZeroLetter) : Symbol::variable(h);
  }
  return Word(x.k() / 2, Mode::Signed, std::move(out));
}

Substitution widen_substitution(Substitution const& lambda, int k, Mode mode) {
  if (lambda.is_identity()) return lambda;
  if (lambda.tuple().size() != substitution_arity(k, mode)) {
    throw DomainError("substitution tuple has the wrong arity");
  }
  std::vector<Letter> wide(substitution_arity(2 * k, mode), kZeroLetter);
  int const lo = mode == Mode::Signed ? -2 * k : 1;
  for (int m = lo; m <= 2 * k; ++m) {
    int const h = m / 2;
    if (m == 0 || h == 0) continue;
    wide[substitution_slot(2 * k, mode, m)] = lambda.tuple()[substitution_slot(k, mode, h)];
  }
  return Substitution::letters(std::move(wide));
}

Word lift_double(WordSequence const& ytilde, Alphabet const& alphabet,
                 Decomposition const& d) {
  if (ytilde.mode() != Mode::Signed || ytilde.k() % 2 != 0) {
    throw DomainError("lift_double needs a signed sequence with even bound");
  }
  int const     half = ytilde.k() / 2;
  Decomposition wide = d;
  for (auto& seg : wide.segments) {
    if (seg.exponent < 0 || seg.exponent > half) {
      throw DomainError("segment exponent outside [0, k]");
    }
    seg.exponent *= 2;
    seg.subst = widen_substitution(seg.subst, half, Mode::Signed);
  }
  return compose(ytilde, alphabet, wide);
}

WordSequence halve_sequence(WordSequence const& ytilde) {
  std::vector<Word> out;
  out.reserve(ytilde.size());
  for (auto const& w : ytilde.words()) out.push_back(halve(w));
  return WordSequence(std::move(out), {ytilde.grades().begin(), ytilde.grades().end()});
}

// A canonical segment ε T^j(y) equals (-T)^j(y) when ε = (-1)^j (Case 1a),
// and is within 1 of (-T)^{j+1}(y) otherwise (Case 1b). Letter segments are
// shared by both spans. If x has no segment with ε = +1, j = 0 then -x has
// one and the same construction runs on -x.
NegTApproximation approx_negT(WordSequence const& ys, Alphabet const& alphabet,
                              Word const& x) {
  require_signed(x, "(-T) approximation");
  auto d = parse_support(ys, alphabet, x);
  if (!d) throw DomainError("word is not in the span of the sequence");
  auto is_direct = [](Segment const& s) {
    return s.subst.is_identity() && s.exponent == 0 && s.sign == 1;
  };
  Match matched = Match::Direct;
  if (std::none_of(d->segments.begin(), d->segments.end(), is_direct)) {
    matched = Match::Reflected;
    d       = parse_support(ys, alphabet, reflect_word(x));
  }
  std::vector<Symbol> out;
  for (auto const& seg : d->segments) {
    Word const& y = ys[static_cast<std::size_t>(seg.generator)];
    Word        piece = y;
    if (!seg.subst.is_identity()) {
      piece = substitute(y, seg.subst);
    } else {
      bool const even = seg.exponent % 2 == 0;
      int const  j    = (even == (seg.sign > 0)) ? seg.exponent : seg.exponent + 1;
      piece           = neg_tetris_pow(y, j);
    }
    out.insert(out.end(), piece.symbols().begin(), piece.symbols().end());
  }
  return {Word(x.k(), x.mode(), std::move(out)), matched};
}

}  // namespace finram
