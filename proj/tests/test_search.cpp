#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "finram/colouring.hpp"
#include "finram/error.hpp"
#include "finram/json_io.hpp"
#include "finram/search.hpp"
#include "finram/vector_algebra.hpp"
#include "finram/word_algebra.hpp"
#include "oracles.hpp"
#include "word_helpers.hpp"

using namespace finram;

namespace {

constexpr Mode U = Mode::Unsigned;
constexpr Mode S = Mode::Signed;

std::vector<std::string> const kVectorFamilies{"constant", "value-at-min-support", "support-size-mod",
                                               "min-position-mod", "weighted-sum-mod"};
std::vector<std::string> const kWordFamilies{"constant", "length-mod", "first-variable-sign"};

std::uint64_t fnv_splitmix(std::string const& bytes, std::uint64_t seed) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : bytes) h = (h ^ ch) * 1099511628211ull;
  std::uint64_t z = h ^ seed;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::vector<Word> blocks_of_words(WordSequence const& ws) { return {ws.words().begin(), ws.words().end()}; }

// Words of a length over `letters` and v_1, v_-1, ..., in the stated
// search order, filtered to class k.
std::vector<oracle::RawWord> word_candidates(std::vector<std::uint64_t> const& letters, int k, bool is_signed,
                                             int length) {
  std::vector<std::pair<int, std::uint64_t>> symbols;
  for (auto l : letters) symbols.emplace_back(0, l);
  for (int v = 1; v <= k; ++v) {
    symbols.emplace_back(v, 0);
    if (is_signed) symbols.emplace_back(-v, 0);
  }
  std::vector<oracle::RawWord> out;
  std::vector<std::size_t>     pick(static_cast<std::size_t>(length), 0);
  while (true) {
    oracle::RawWord w;
    for (auto p : pick) w.push_back(symbols[p]);
    if (oracle::top_var(w) == k) out.push_back(w);
    int i = length - 1;
    while (i >= 0 && ++pick[static_cast<std::size_t>(i)] == symbols.size()) pick[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) break;
  }
  return out;
}

// Same-length class-k words within word distance `radius`.
std::vector<oracle::RawWord> ball(oracle::RawWord const& x, int k, int radius) {
  std::vector<oracle::RawWord> out;
  std::vector<std::size_t>     free;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].first != 0 || x[i].second == 0) free.push_back(i);
  }
  std::vector<int> vals(free.size(), -k);
  while (true) {
    oracle::RawWord y = x;
    for (std::size_t t = 0; t < free.size(); ++t) y[free[t]] = {vals[t], 0};
    auto d = oracle::dist(x, y);
    if (d && *d <= radius && oracle::top_var(y) == k) out.push_back(y);
    std::size_t i = 0;
    while (i < vals.size() && ++vals[i] > k) vals[i++] = -k;
    if (i == vals.size()) break;
  }
  return out;
}

}  // namespace

TEST_CASE("universe") {
  CHECK(enumerate_universe(1, 3, U).size() == 7);
  CHECK(enumerate_universe(2, 2, U).size() == 5);
  CHECK(enumerate_universe(1, 2, S).size() == 8);
  for (int k = 1; k <= 2; ++k) {
    for (int N = 1; N <= 4; ++N) {
      for (Mode mode : {U, S}) {
        auto const u = enumerate_universe(k, N, mode);
        CHECK(std::is_sorted(u.begin(), u.end()));
        std::vector<oracle::Raw> raw;
        for (auto const& p : u) raw.push_back(oracle::raw(p));
        CHECK(raw == oracle::universe(k, N, mode == S));
      }
    }
  }
}

TEST_CASE("colourings") {
  auto const p = BlockVector::from_pairs(2, S, {{1, -2}, {3, 1}});
  CHECK(Colouring::family(Arity::Vector, 3, "value-at-min-support")(p) == 0);
  CHECK(Colouring::family(Arity::Vector, 2, "support-size-mod")(p) == 0);
  CHECK(Colouring::family(Arity::Vector, 2, "min-position-mod")(p) == 1);
  CHECK(Colouring::family(Arity::Vector, 5, "weighted-sum-mod")(p) == 0);
  CHECK_THROWS_AS(Colouring::family(Arity::Vector, 2, "length-mod"), DomainError);
  CHECK_THROWS_AS(Colouring::family(Arity::Vector, 0, "constant"), DomainError);
  CHECK_THROWS_AS(Colouring::family(Arity::Word, 2, "constant")(p), DomainError);

  auto const key = json_io::to_json(p).dump();
  CHECK(key == R"({"entries":[[1,-2],[3,1]],"k":2,"mode":"signed"})");
  auto const table = Colouring::table(Arity::Vector, 3, {{key, 2}});
  CHECK(table(p) == 2);
  CHECK_THROWS_AS(table(BlockVector::from_pairs(2, S, {{0, 2}})), DomainError);

  auto const rnd = Colouring::seeded_random(Arity::Vector, 7, 99);
  CHECK(rnd(p) == static_cast<int>(fnv_splitmix(key, 99) % 7));
  CHECK(mix_hash("", 0) == fnv_splitmix("", 0));
  CHECK(Colouring::from_json(rnd.to_json()) == rnd);
  CHECK(Colouring::from_json(table.to_json()) == table);
}

TEST_CASE("search examples") {
  auto const ssm = Colouring::family(Arity::Vector, 2, "support-size-mod");
  auto const mpm = Colouring::family(Arity::Vector, 2, "min-position-mod");
  auto const vms = Colouring::family(Arity::Vector, 2, "value-at-min-support");

  auto r1 = search_exact({U, 1, 4, 2, 0}, ssm);
  REQUIRE(r1.witness);
  CHECK(verify_witness({U, 1, 4, 2, 0}, ssm, r1.witness->blocks, r1.witness->colour).ok);
  for (auto const& e : span(r1.witness->blocks)) CHECK(e.size() % 2 == 0);

  CHECK(search_exact({U, 1, 4, 2, 0}, mpm).witness);
  auto r3 = search_exact({U, 1, 2, 2, 0}, mpm);
  CHECK_FALSE(r3.witness);
  CHECK(r3.stats.nodes > 0);

  auto r4 = search_approx({S, 2, 6, 2, 1}, vms);
  REQUIRE(r4.witness);
  auto rep = verify_witness({S, 2, 6, 2, 1}, vms, r4.witness->blocks, r4.witness->colour);
  CHECK(rep.ok);
  for (auto const& ev : rep.evidence) {
    REQUIRE(ev.neighbour);
    CHECK(linf_dist(ev.element, *ev.neighbour) <= 1);
    CHECK(vms(*ev.neighbour) == r4.witness->colour);
  }

  // degenerate fattening: k=1 signed, every class 1-fattens to everything
  auto const r5 = search_approx({S, 1, 3, 2, 1}, vms);
  REQUIRE(r5.witness);
  auto const first = enumerate_universe(1, 3, S);
  CHECK(r5.witness->blocks[0] == first[0]);
}

TEST_CASE("radius 0 on signed instances equals exact search") {
  for (auto const& fam : kVectorFamilies) {
    auto const c = Colouring::family(Arity::Vector, 2, fam);
    for (int N = 2; N <= 4; ++N) {
      SearchProblem const p{S, 2, N, 2, 0};
      auto a = search_approx(p, c);
      auto e = search_exact(p, c);
      CHECK(a.witness.has_value() == e.witness.has_value());
      if (a.witness) CHECK(a.witness->blocks == e.witness->blocks);
    }
  }
}

TEST_CASE("property: search agrees with unpruned brute force; parallel equals serial") {
  for (int k = 1; k <= 2; ++k) {
    for (int N = 2; N <= 4; ++N) {
      for (auto [mode, radius] : {std::pair{U, 0}, std::pair{S, 0}, std::pair{S, 1}}) {
        std::vector<Colouring> colourings;
        for (auto const& fam : kVectorFamilies) colourings.push_back(Colouring::family(Arity::Vector, 2, fam));
        colourings.push_back(Colouring::seeded_random(Arity::Vector, 2, 5));
        for (auto const& c : colourings) {
          SearchProblem const p{mode, k, N, 2, radius};
          auto const          got   = search_blocks(p, c);
          auto const          brute = oracle::brute_search_pairs(k, N, mode == S, radius, c);
          REQUIRE(got.witness.has_value() == brute.witness.has_value());
          if (got.witness) {
            CHECK(oracle::raw(got.witness->blocks[0]) == brute.witness->first);
            CHECK(oracle::raw(got.witness->blocks[1]) == brute.witness->second);
            CHECK(verify_witness(p, c, got.witness->blocks, got.witness->colour).ok);
          }
          auto const par = search_blocks(p, c, true);
          CHECK(par.stats == got.stats);
          CHECK(par.witness.has_value() == got.witness.has_value());
          if (par.witness) CHECK(par.witness->blocks == got.witness->blocks);
        }
      }
    }
  }
}

TEST_CASE("monotonicity in N") {
  auto const c = Colouring::family(Arity::Vector, 2, "support-size-mod");
  auto const w = search_exact({U, 1, 4, 2, 0}, c);
  REQUIRE(w.witness);
  for (int N = 5; N <= 6; ++N) CHECK(verify_witness({U, 1, N, 2, 0}, c, w.witness->blocks, w.witness->colour).ok);
}

TEST_CASE("verification reports corrupted witnesses") {
  auto const c = Colouring::family(Arity::Vector, 2, "support-size-mod");
  auto const w = search_exact({U, 1, 4, 2, 0}, c);
  REQUIRE(w.witness);
  BlockSequence bad({BlockVector::from_pairs(1, U, {{0, 1}}), w.witness->blocks[1]});
  auto rep = verify_witness({U, 1, 4, 2, 0}, c, bad, w.witness->colour);
  CHECK_FALSE(rep.ok);
  REQUIRE(rep.offending);
  CHECK(c(*rep.offending) != w.witness->colour);
  CHECK_FALSE(verify_witness({U, 1, 4, 2, 0}, c, w.witness->blocks, 1 - w.witness->colour).ok);
}

TEST_CASE("word candidates and balls") {
  std::vector<Letter> letters{kZeroLetter, Letter{1}};
  for (Mode mode : {U, S}) {
    for (int len = 1; len <= 3; ++len) {
      auto const got = candidate_words(letters, 1, mode, len);
      std::vector<oracle::RawWord> raw;
      for (auto const& w : got) raw.push_back(oracle::raw(w));
      CHECK(raw == word_candidates({0, 1}, 1, mode == S, len));
    }
  }
  oracle::Rng rng(41);
  for (int t = 0; t < 300; ++t) {
    int const k = rng.between(1, 2);
    auto      x = oracle::random_word(rng, k, true, rng.between(1, 4), {0, 1});
    auto      got = word_ball(oracle::cook(k, S, x), 1);
    std::set<oracle::RawWord> g;
    for (auto const& w : got) g.insert(oracle::raw(w));
    auto const want = ball(x, k, 1);
    CHECK(g == std::set<oracle::RawWord>(want.begin(), want.end()));
  }
}

TEST_CASE("property: word search agrees with brute force") {
  std::vector<std::vector<std::uint64_t>> letter_sets{{0}, {0, 1}};
  for (auto const& letters : letter_sets) {
    std::vector<Letter> ls;
    for (auto b : letters) ls.push_back(Letter{b});
    Alphabet const alpha({ls});
    for (auto lengths : {std::vector<int>{1, 2}, std::vector<int>{2, 3}}) {
      for (auto [mode, radius] : {std::pair{U, 0}, std::pair{S, 0}, std::pair{S, 1}}) {
        for (auto const& fam : kWordFamilies) {
          auto const       c = Colouring::family(Arity::Word, 2, fam);
          GhjProblem const p{mode, 1, lengths, radius};
          auto const       got = search_ghj(p, alpha, c);

          std::optional<std::pair<oracle::RawWord, oracle::RawWord>> brute;
          auto const c0 = word_candidates(letters, 1, mode == S, lengths[0]);
          auto const c1 = word_candidates(letters, 1, mode == S, lengths[1]);
          for (std::size_t i = 0; i < c0.size() && !brute; ++i) {
            for (std::size_t j = 0; j < c1.size() && !brute; ++j) {
              std::uint32_t ok = 3;
              for (auto const& e : oracle::span_words({c0[i], c1[j]}, {0, 1}, {letters}, 1, mode == S)) {
                std::uint32_t near = 0;
                for (auto const& y : ball(e, 1, radius)) near |= 1u << c(oracle::cook(1, mode, y));
                ok &= near;
              }
              if (ok) brute = std::pair{c0[i], c1[j]};
            }
          }
          INFO("family " << fam << " lengths " << lengths[0] << "," << lengths[1]);
          REQUIRE(got.witness.has_value() == brute.has_value());
          if (got.witness) {
            CHECK(oracle::raw(got.witness->words[0]) == brute->first);
            CHECK(oracle::raw(got.witness->words[1]) == brute->second);
            CHECK(verify_words(p, alpha, c, got.witness->words, got.witness->colour).ok);
            auto par = search_ghj(p, alpha, c, true);
            REQUIRE(par.witness);
            CHECK(par.witness->words == got.witness->words);
            CHECK(par.stats == got.stats);
          }
        }
      }
    }
  }
}

TEST_CASE("word search examples") {
  Alphabet const one({{kZeroLetter, Letter{1}}});
  auto const     constant = Colouring::family(Arity::Word, 2, "constant");
  GhjProblem const p{U, 1, {1, 2}, 0};
  auto r = search_ghj(p, one, constant);
  REQUIRE(r.witness);
  auto const first0 = candidate_words(one.level(0), 1, U, 1)[0];
  auto const first1 = candidate_words(one.level(1), 1, U, 2)[0];
  CHECK(r.witness->words[0] == first0);
  CHECK(r.witness->words[1] == first1);

  auto const len = Colouring::family(Arity::Word, 2, "length-mod");
  CHECK_FALSE(search_ghj({U, 1, {1, 2}, 0}, one, len).witness);
  auto even = search_ghj({U, 1, {2, 4}, 0}, one, len);
  REQUIRE(even.witness);
  for (auto const& w : blocks_of_words(even.witness->words)) CHECK(w.size() % 2 == 0);

  auto const sign = Colouring::family(Arity::Word, 2, "first-variable-sign");
  Alphabet const zero({{kZeroLetter}});
  CHECK(search_ghj({S, 1, {2, 3}, 1}, zero, sign).witness);
  CHECK_FALSE(search_ghj({S, 1, {2, 3}, 0}, zero, sign).witness);
}

TEST_CASE("pipeline") {
  PipelineProblem p;
  p.k       = 1;
  p.lengths = {1, 2, 4, 8};
  auto const constant = Colouring::family(Arity::VectorMatrix, 2, "constant");
  auto r = parametrized_pipeline(p, constant);
  REQUIRE(r.found);
  CHECK(r.stats.nodes == 1);
  CHECK(verify_pipeline(p, constant, *r.found, 50, 1).ok);

  for (Mode mode : {U, S}) {
    p.mode   = mode;
    p.radius = mode == S ? 1 : 0;
    auto const bit = Colouring::family(Arity::VectorMatrix, 2, "matrix-bit", 1, 0);
    auto       rb  = parametrized_pipeline(p, bit);
    REQUIRE(rb.found);
    CHECK(verify_pipeline(p, bit, *rb.found, 50, 2).ok);

    p.seq_length = 2;
    p.k          = 2;
    auto const parity = Colouring::family(Arity::VectorMatrix, 2, "block-count-parity");
    auto       rp     = parametrized_pipeline(p, parity);
    REQUIRE(rp.found);
    auto rep = verify_pipeline(p, parity, *rp.found, 50, 3);
    CHECK(rep.ok);
    CHECK(rep.samples.size() == 50);
    auto par = parametrized_pipeline(p, parity, true);
    REQUIRE(par.found);
    CHECK(par.found->y == rp.found->y);
    p.seq_length = 1;
    p.k          = 1;
  }

  // a tampered derived pair is rejected
  auto bad = *r.found;
  bad.perfect_sets.pop_back();
  p.mode   = U;
  p.radius = 0;
  CHECK_FALSE(verify_pipeline(p, constant, bad, 10, 1).ok);
  CHECK_THROWS_AS(parametrized_pipeline(p, Colouring::family(Arity::Vector, 2, "constant")), DomainError);
}

TEST_CASE("property: approximants respect their contract") {
  oracle::Rng rng(42);
  for (int t = 0; t < 200; ++t) {
    int const     k = rng.between(1, 2);
    auto const    a = oracle::random_sequence(rng, k, S, rng.between(1, 2), 6);
    ParamMatrix   m(6, 2);
    auto const    c      = Colouring::seeded_random(Arity::VectorMatrix, 3, rng.next());
    int const     colour = rng.between(0, 2);
    std::vector<std::pair<int, int>> ranges;
    for (auto const& b : a) ranges.emplace_back(b.min_pos(), b.max_pos() + 1);
    auto got = find_approximant(a, m, c, colour, ranges);
    if (!got) continue;
    CHECK(c(*got, m) == colour);
    CHECK(seq_dist(a, *got).within(1));
    for (std::size_t l = 0; l < a.size(); ++l) {
      CHECK((*got)[l].min_pos() >= ranges[l].first);
      CHECK((*got)[l].max_pos() < ranges[l].second);
    }
  }
}
