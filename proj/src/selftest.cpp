#include <algorithm>
#include <cstdlib>
#include <functional>
#include <string>

#include "finram/cli.hpp"
#include "finram/colouring.hpp"
#include "finram/encodings.hpp"
#include "finram/error.hpp"
#include "finram/search.hpp"
#include "finram/vector_algebra.hpp"
#include "finram/word_algebra.hpp"
#include "random.hpp"

namespace finram::cli {

namespace {

using json = nlohmann::json;

BlockVector bv(int k, Mode mode, std::vector<std::pair<int, int>> pairs) {
  return BlockVector::from_pairs(k, mode, std::move(pairs));
}

// A random block vector on [lo, hi) attaining magnitude k.
BlockVector random_block(detail::Rng& rng, int k, Mode mode, int lo, int hi) {
  std::vector<std::pair<int, int>> pairs;
  for (int pos = lo; pos < hi; ++pos) {
    if (rng.below(2) == 0) continue;
    int v = rng.between(1, k);
    if (mode == Mode::Signed && rng.below(2) == 0) v = -v;
    pairs.emplace_back(pos, v);
  }
  int const top = rng.between(lo, hi - 1);
  std::erase_if(pairs, [&](auto const& e) { return e.first == top; });
  pairs.emplace_back(top, mode == Mode::Signed && rng.below(2) == 0 ? -k : k);
  return BlockVector::from_pairs(k, mode, std::move(pairs));
}

std::string check_universe() {
  if (enumerate_universe(1, 3, Mode::Unsigned).size() != 7) return "k=1 N=3 unsigned";
  if (enumerate_universe(2, 2, Mode::Unsigned).size() != 5) return "k=2 N=2 unsigned";
  if (enumerate_universe(1, 2, Mode::Signed).size() != 8) return "k=1 N=2 signed";
  return {};
}

std::string check_span() {
  struct Case {
    BlockSequence blocks;
    std::size_t   size;
  };
  std::vector<Case> cases{
      {BlockSequence({bv(1, Mode::Unsigned, {{0, 1}}), bv(1, Mode::Unsigned, {{1, 1}})}), 3},
      {BlockSequence({bv(2, Mode::Unsigned, {{0, 2}}), bv(2, Mode::Unsigned, {{1, 2}})}), 5},
      {BlockSequence({bv(1, Mode::Signed, {{0, 1}})}), 2},
  };
  for (auto const& c : cases) {
    auto par = span(c.blocks);
    if (par.size() != c.size) return "span size " + std::to_string(par.size());
    if (par != span_serial(c.blocks)) return "parallel and serial spans differ";
  }
  return {};
}

std::string check_tetris() {
  detail::Rng rng(1);
  for (int t = 0; t < 1000; ++t) {
    int const  k    = rng.between(2, 3);
    Mode const mode = rng.below(2) ? Mode::Signed : Mode::Unsigned;
    int const  cut  = rng.between(1, 10);
    auto p = random_block(rng, k, mode, 0, cut);
    auto q = random_block(rng, k, mode, cut, 12);
    if (!(tetris(block_sum(p, q)) == block_sum(tetris(p), tetris(q)))) {
      return "homomorphism fails at trial " + std::to_string(t);
    }
  }
  return {};
}

std::string check_search() {
  auto run = [](SearchProblem p, char const* family) {
    return search_blocks(p, Colouring::family(Arity::Vector, 2, family), false);
  };
  struct Case {
    SearchProblem problem;
    char const*   family;
    bool          found;
  };
  std::vector<Case> cases{
      {{Mode::Unsigned, 1, 4, 2, 0}, "support-size-mod", true},
      {{Mode::Unsigned, 1, 4, 2, 0}, "min-position-mod", true},
      {{Mode::Unsigned, 1, 2, 2, 0}, "min-position-mod", false},
      {{Mode::Signed, 2, 6, 2, 1}, "value-at-min-support", true},
  };
  for (auto const& c : cases) {
    auto res = run(c.problem, c.family);
    if (res.witness.has_value() != c.found) return std::string("unexpected outcome for ") + c.family;
    if (res.witness) {
      auto colouring = Colouring::family(Arity::Vector, 2, c.family);
      auto report = verify_witness(c.problem, colouring, res.witness->blocks, res.witness->colour);
      if (!report.ok) return "witness fails verification: " + report.message;
    }
  }
  return {};
}

Word word(int k, Mode mode, std::vector<int> vars) {
  std::vector<Symbol> s;
  for (int v : vars) s.push_back(v == 0 ? Symbol::of(kZeroLetter) : Symbol::variable(v));
  return Word(k, mode, std::move(s));
}

std::string check_round_trip() {
  for (Mode mode : {Mode::Unsigned, Mode::Signed}) {
    int const    neg = mode == Mode::Signed ? -1 : 1;
    WordSequence ys({word(1, mode, {1}), word(1, mode, {0, 1}), word(1, mode, {1, 0, 0, 1}),
                     word(1, mode, {0, 1, neg, 0, 0, 0, 0, 1, 0})});
    auto const bs = derive_B(ys);
    for (auto const& a : block_sequences(span(bs), 1)) {
      std::vector<Letter> sigmas{Letter{1}, Letter{2}};
      auto zs = decode_witness(ys, a, sigmas);
      auto xs = pair_substitute(ys, sigmas);
      if (!(phi_encode(zs) == a)) return "phi(Z) != A";
      if (!(psi_encode(zs, 3) == psi_encode(xs, 3))) return "psi(Z) != psi(X)";
    }
  }
  return {};
}

std::string check_net() {
  BlockSequence b({bv(3, Mode::Signed, {{0, 3}, {1, -1}}), bv(3, Mode::Signed, {{2, -3}, {3, 2}})});
  double const d = net_defect(b, 0.5, 200, 1);
  if (d > 0.5 + 1e-9) return "defect " + std::to_string(d);
  return {};
}

}  // namespace

json selftest() {
  std::vector<std::pair<char const*, std::function<std::string()>>> checks{
      {"universe-counts", check_universe},   {"span-examples", check_span},
      {"tetris-homomorphism", check_tetris}, {"search-examples", check_search},
      {"encode-decode", check_round_trip},   {"delta-net", check_net},
  };
  json out{{"checks", json::array()}};
  bool all = true;
  for (auto const& [name, fn] : checks) {
    std::string failure;
    try {
      failure = fn();
    } catch (DomainError const& e) {
      failure = std::string("domain error: ") + e.what();
    }
    json c{{"name", name}, {"ok", failure.empty()}};
    if (!failure.empty()) c["detail"] = failure;
    all = all && failure.empty();
    out["checks"].push_back(std::move(c));
  }
  out["ok"] = all;
  return out;
}

}  // namespace finram::cli
