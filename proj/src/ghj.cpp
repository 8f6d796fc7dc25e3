#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <string>
#include <unordered_map>

#include "finram/error.hpp"
#include "finram/json_io.hpp"
#include "finram/search.hpp"
#include "finram/word_algebra.hpp"

namespace finram {

std::vector<Word> candidate_words(std::span<Letter const> letters, int k, Mode mode,
                                  int length) {
  if (length < 1) throw DomainError("generator lengths must be positive");
  std::vector<Symbol> alphabet;
  for (auto l : letters) alphabet.push_back(Symbol::of(l));
  for (int i = 1; i <= k; ++i) {
    alphabet.push_back(Symbol::variable(i));
    if (mode == Mode::Signed) alphabet.push_back(Symbol::variable(-i));
  }
  double const count = std::pow(static_cast<double>(alphabet.size()), length);
  if (count > 4e6) throw DomainError("too many candidate words at this length");

  std::vector<Word>        out;
  std::vector<std::size_t> idx(static_cast<std::size_t>(length), 0);
  std::vector<Symbol>      symbols(static_cast<std::size_t>(length));
  while (true) {
    int top = 0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      symbols[i] = alphabet[idx[i]];
      top        = std::max(top, std::abs(symbols[i].var));
    }
    if (top == k) out.emplace_back(k, mode, symbols);
    std::size_t i = idx.size();
    while (i > 0 && ++idx[i - 1] == alphabet.size()) idx[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

std::vector<Word> word_ball(Word const& x, int radius) {
  if (radius < 0) throw DomainError("negative radius");
  int const                lo = x.mode() == Mode::Signed ? -x.k() : 0;
  std::vector<std::size_t> places;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_variable() || x[i].letter == kZeroLetter) places.push_back(i);
  }
  std::vector<int>    step(places.size(), -radius);
  std::vector<Word>   out;
  std::vector<Symbol> symbols(x.symbols().begin(), x.symbols().end());
  while (true) {
    bool valid = true;
    int  top   = 0;
    for (std::size_t p = 0; p < places.size() && valid; ++p) {
      int const idx = x[places[p]].var + step[p];
      if (idx < lo || idx > x.k()) valid = false;
      symbols[places[p]] = idx == 0 ? Symbol::of(kZeroLetter) : Symbol::variable(idx);
      top                = std::max(top, std::abs(idx));
    }
    if (valid && top == x.k()) out.emplace_back(x.k(), x.mode(), symbols);
    std::size_t p = 0;
    while (p < step.size() && ++step[p] > radius) step[p++] = -radius;
    if (p == step.size()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

void check_lengths(std::vector<int> const& lengths) {
  if (lengths.empty()) throw DomainError("at least one generator length is needed");
  long total = 0;
  for (int l : lengths) {
    if (l < 1) throw DomainError("generator lengths must be positive");
    if (l <= total) throw DomainError("generator lengths must be rapidly increasing");
    total += l;
  }
}

void check_ghj(GhjProblem const& p, Colouring const& c) {
  if (c.arity() != Arity::Word) throw DomainError("word search needs a word colouring");
  if (p.k < 1) throw DomainError("k must be positive");
  if (p.radius != 0 && p.radius != 1) throw DomainError("radius must be 0 or 1");
  if (p.radius == 1 && p.mode != Mode::Signed) {
    throw DomainError("approximate word search needs signed mode");
  }
  check_lengths(p.lengths);
}

struct WordPiece {
  std::vector<Symbol> symbols;
  bool                marked;
};

std::vector<WordPiece> pieces_of(Word const& x, std::span<Letter const> level) {
  std::vector<WordPiece> out;
  for (int j = 0; j < x.k(); ++j) {
    Word w = tetris_word_pow(x, j);
    out.push_back({{w.symbols().begin(), w.symbols().end()}, j == 0});
    if (x.mode() == Mode::Signed) {
      Word r = reflect_word(w);
      out.push_back({{r.symbols().begin(), r.symbols().end()}, j == 0});
    }
  }
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
  return out;
}

class WordSearch {
 public:
  WordSearch(GhjProblem const& p, Alphabet const& a, Colouring const& c,
             std::vector<std::vector<Word>> const& candidates)
      : problem_(p), alphabet_(a), c_(c), candidates_(candidates) {}

  std::optional<std::vector<std::size_t>> run_root(std::size_t root, std::uint32_t all,
                                                   SearchStats& stats, std::uint32_t& mask_out) {
    std::vector<WordPiece> e;
    std::uint32_t          mask = extend({}, 0, root, all, e);
    if (mask == 0) {
      ++stats.pruned;
      return std::nullopt;
    }
    chosen_ = {root};
    if (dfs(e, mask, stats, mask_out)) return chosen_;
    return std::nullopt;
  }

 private:
  std::uint32_t colour_mask(std::vector<Symbol> const& symbols) {
    Word w(problem_.k, problem_.mode, symbols);
    auto it = cache_.find(w);
    if (it != cache_.end()) return it->second;
    std::uint32_t mask = 0;
    if (problem_.radius == 0) {
      mask = std::uint32_t{1} << c_(w);
    } else {
      for (auto const& y : word_ball(w, problem_.radius)) mask |= std::uint32_t{1} << c_(y);
    }
    cache_.emplace(std::move(w), mask);
    return mask;
  }

  std::uint32_t extend(std::vector<WordPiece> const& e, std::size_t n, std::size_t idx,
                       std::uint32_t mask, std::vector<WordPiece>& out) {
    out = e;
    Word const& x = candidates_[n][idx];
    for (auto& piece : pieces_of(x, alphabet_.level(static_cast<int>(n)))) {
      if (piece.marked) mask &= colour_mask(piece.symbols);
      for (auto const& q : e) {
        WordPiece joined{q.symbols, q.marked || piece.marked};
        joined.symbols.insert(joined.symbols.end(), piece.symbols.begin(), piece.symbols.end());
        if (joined.marked) mask &= colour_mask(joined.symbols);
        out.push_back(std::move(joined));
        if (mask == 0) return 0;
      }
      out.push_back(std::move(piece));
      if (mask == 0) return 0;
    }
    return mask;
  }

  bool dfs(std::vector<WordPiece> const& e, std::uint32_t mask, SearchStats& stats,
           std::uint32_t& mask_out) {
    ++stats.nodes;
    std::size_t const n = chosen_.size();
    if (n == problem_.lengths.size()) {
      mask_out = mask;
      return true;
    }
    std::vector<WordPiece> next;
    for (std::size_t i = 0; i < candidates_[n].size(); ++i) {
      std::uint32_t m = extend(e, n, i, mask, next);
      if (m == 0) {
        ++stats.pruned;
        continue;
      }
      chosen_.push_back(i);
      if (dfs(next, m, stats, mask_out)) return true;
      chosen_.pop_back();
    }
    return false;
  }

  GhjProblem const&                     problem_;
  Alphabet const&                       alphabet_;
  Colouring const&                      c_;
  std::vector<std::vector<Word>> const& candidates_;
  std::vector<std::size_t>              chosen_;
  std::unordered_map<Word, std::uint32_t, WordHash> cache_;
};

}  // namespace

GhjResult search_ghj(GhjProblem const& problem, Alphabet const& alphabet, Colouring const& c,
                     bool parallel) {
  check_ghj(problem, c);
  std::vector<std::vector<Word>> candidates;
  for (std::size_t n = 0; n < problem.lengths.size(); ++n) {
    candidates.push_back(candidate_words(alphabet.level(static_cast<int>(n)), problem.k,
                                         problem.mode, problem.lengths[n]));
  }
  std::uint32_t const all   = c.colours() == 32 ? ~0u : (1u << c.colours()) - 1;
  std::size_t const   roots = candidates[0].size();

  struct RootOutcome {
    SearchStats                             stats;
    std::optional<std::vector<std::size_t>> found;
    std::uint32_t                           mask = 0;
  };
  std::vector<RootOutcome> outcomes(roots);
  std::atomic<std::size_t> best{roots};
  auto explore = [&](std::size_t r) {
    if (r > best.load(std::memory_order_relaxed)) return;
    WordSearch s(problem, alphabet, c, candidates);
    auto&      o = outcomes[r];
    o.found      = s.run_root(r, all, o.stats, o.mask);
    if (o.found) {
      std::size_t cur = best.load();
      while (r < cur && !best.compare_exchange_weak(cur, r)) {
      }
    }
  };
  if (parallel) {
    auto const n = static_cast<std::int64_t>(roots);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t r = 0; r < n; ++r) explore(static_cast<std::size_t>(r));
  } else {
    for (std::size_t r = 0; r < roots && best.load() == roots; ++r) explore(r);
  }

  GhjResult result;
  result.stats.nodes = 1;
  for (std::size_t r = 0; r < roots && r <= best.load(); ++r) {
    result.stats.nodes += outcomes[r].stats.nodes;
    result.stats.pruned += outcomes[r].stats.pruned;
  }
  if (best.load() < roots) {
    auto const&       o = outcomes[best.load()];
    std::vector<Word> words;
    for (std::size_t n = 0; n < o.found->size(); ++n) words.push_back(candidates[n][(*o.found)[n]]);
    result.witness = WordWitness{WordSequence(std::move(words)), std::countr_zero(o.mask)};
  }
  return result;
}

WordVerifyReport verify_words(GhjProblem const& problem, Alphabet const& alphabet,
                              Colouring const& c, WordSequence const& words, int colour) {
  WordVerifyReport report;
  auto fail = [&](std::string msg) {
    report.ok      = false;
    report.message = std::move(msg);
    return report;
  };
  if (words.size() != problem.lengths.size()) return fail("wrong number of generators");
  if (words.k() != problem.k || words.mode() != problem.mode) return fail("wrong k or mode");
  for (std::size_t n = 0; n < words.size(); ++n) {
    if (static_cast<int>(words[n].size()) != problem.lengths[n]) {
      return fail("generator " + std::to_string(n) + " has the wrong length");
    }
    if (words.grade(n) != static_cast<int>(n)) return fail("generators must carry grades 0, 1, ...");
    for (auto const& s : words[n].symbols()) {
      if (!s.is_variable() && !alphabet.contains(static_cast<int>(n), s.letter)) {
        return fail("generator " + std::to_string(n) + " uses a letter outside L_"
                    + std::to_string(n));
      }
    }
  }
  if (colour < 0 || colour >= c.colours()) return fail("colour out of range");

  for (auto const& x : span_words(words, alphabet)) {
    WordEvidence ev{x, c(x), std::nullopt};
    if (problem.radius == 0) {
      if (ev.colour != colour) {
        report.offending = x;
        return fail("span element " + to_string(x) + " has colour " + std::to_string(ev.colour));
      }
    } else {
      for (auto const& y : word_ball(x, problem.radius)) {
        if (c(y) == colour && dist_words(x, y).within(problem.radius)) {
          ev.neighbour = y;
          break;
        }
      }
      if (!ev.neighbour) {
        report.offending = x;
        return fail("span element " + to_string(x) + " has no neighbour of colour "
                    + std::to_string(colour));
      }
    }
    report.evidence.push_back(std::move(ev));
  }
  report.ok      = true;
  report.message = "ok";
  return report;
}

}  // namespace finram
