#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "finram/error.hpp"
#include "finram/vector_algebra.hpp"
#include "oracles.hpp"

using namespace finram;

namespace {

BlockVector bv(int k, Mode mode, std::vector<std::pair<int, int>> pairs) {
  return BlockVector::from_pairs(k, mode, std::move(pairs));
}

constexpr Mode U = Mode::Unsigned;
constexpr Mode S = Mode::Signed;

}  // namespace

TEST_CASE("block vector invariants") {
  CHECK_THROWS_AS(BlockVector(2, U, {{0, 1}}), DomainError);       // never attains k
  CHECK_THROWS_AS(BlockVector(2, U, {{0, -2}}), DomainError);      // negative in FIN_k
  CHECK_THROWS_AS(BlockVector(1, U, {}), DomainError);
  CHECK_THROWS_AS(BlockVector(1, U, {{1, 1}, {0, 1}}), DomainError);
  CHECK_NOTHROW(BlockVector(2, S, {{0, -2}}));
}

TEST_CASE("support and block order") {
  CHECK(support(bv(2, U, {{0, 2}, {3, 1}})) == std::vector<int>{0, 3});
  CHECK(support(bv(1, U, {{5, 1}})) == std::vector<int>{5});
  CHECK(support(bv(2, S, {{0, -2}, {1, 2}})) == std::vector<int>{0, 1});

  CHECK(block_lt(bv(1, U, {{0, 1}}), bv(1, U, {{1, 1}})));
  CHECK_FALSE(block_lt(bv(1, U, {{0, 1}, {2, 1}}), bv(1, U, {{1, 1}, {3, 1}})));
  CHECK_FALSE(block_lt(bv(2, U, {{3, 2}}), bv(2, U, {{3, 2}})));
  CHECK_THROWS_AS(block_lt(bv(1, U, {{0, 1}}), bv(2, U, {{1, 2}})), DomainError);
}

TEST_CASE("block sum") {
  CHECK(block_sum(bv(2, U, {{0, 2}}), bv(2, U, {{2, 1}, {3, 2}})) == bv(2, U, {{0, 2}, {2, 1}, {3, 2}}));
  CHECK(block_sum(bv(1, U, {{0, 1}}), bv(1, U, {{1, 1}})) == bv(1, U, {{0, 1}, {1, 1}}));
  CHECK(block_sum(bv(2, S, {{1, -2}}), bv(2, S, {{4, 2}})) == bv(2, S, {{1, -2}, {4, 2}}));
  CHECK_THROWS_AS(block_sum(bv(1, U, {{1, 1}}), bv(1, U, {{0, 1}})), DomainError);
}

TEST_CASE("tetris and negate") {
  CHECK(tetris(bv(2, U, {{0, 2}, {3, 1}})) == bv(1, U, {{0, 1}}));
  CHECK(tetris(bv(2, S, {{0, 2}, {3, -1}})) == bv(1, S, {{0, 1}}));
  CHECK(tetris(bv(3, S, {{1, 3}, {2, -3}})) == bv(2, S, {{1, 2}, {2, -2}}));
  CHECK_THROWS_AS(tetris(bv(1, U, {{0, 1}})), DomainError);

  CHECK(negate(bv(2, S, {{0, 2}, {1, -1}})) == bv(2, S, {{0, -2}, {1, 1}}));
  CHECK(negate(bv(2, S, {{4, -2}})) == bv(2, S, {{4, 2}}));
  CHECK_THROWS_AS(negate(bv(1, U, {{0, 1}})), DomainError);
}

TEST_CASE("property: tetris is a homomorphism and shrinks support") {
  oracle::Rng rng(11);
  for (int t = 0; t < 2000; ++t) {
    int const  k    = rng.between(2, 4);
    Mode const mode = rng.below(2) ? S : U;
    auto const seq  = oracle::random_sequence(rng, k, mode, 2, 12);
    auto const& p = seq[0];
    auto const& q = seq[1];
    REQUIRE(tetris(block_sum(p, q)) == block_sum(tetris(p), tetris(q)));

    auto const sp = support(p);
    auto const st = support(tetris(p));
    CHECK(std::includes(sp.begin(), sp.end(), st.begin(), st.end()));
    bool const has_one = std::any_of(p.entries().begin(), p.entries().end(),
                                     [](Entry const& e) { return std::abs(e.value) == 1; });
    CHECK((sp == st) == !has_one);

    if (mode == S) CHECK(negate(negate(p)) == p);
  }
}

TEST_CASE("span examples") {
  auto s1 = span(BlockSequence({bv(1, U, {{0, 1}}), bv(1, U, {{1, 1}})}));
  CHECK(s1 == std::vector<BlockVector>{bv(1, U, {{0, 1}}), bv(1, U, {{0, 1}, {1, 1}}), bv(1, U, {{1, 1}})});
  CHECK(span(BlockSequence({bv(2, U, {{0, 2}}), bv(2, U, {{1, 2}})})).size() == 5);
  auto s3 = span(BlockSequence({bv(1, S, {{0, 1}})}));
  CHECK(s3 == std::vector<BlockVector>{bv(1, S, {{0, -1}}), bv(1, S, {{0, 1}})});
}

TEST_CASE("property: span equals the brute-force oracle") {
  oracle::Rng rng(12);
  for (int t = 0; t < 600; ++t) {
    int const  k     = rng.between(1, 3);
    Mode const mode  = rng.below(2) ? S : U;
    int const  count = rng.between(1, 3);
    auto const seq   = oracle::random_sequence(rng, k, mode, count, 8);
    std::vector<oracle::Raw> raws;
    for (auto const& p : seq) raws.push_back(oracle::raw(p));
    auto const got = span(seq);
    REQUIRE(std::is_sorted(got.begin(), got.end()));
    REQUIRE(std::adjacent_find(got.begin(), got.end()) == got.end());
    REQUIRE(oracle::raw_set(got) == oracle::span(raws, k, mode == S));
    REQUIRE(span_serial(seq) == got);
  }
}

TEST_CASE("distances") {
  CHECK(linf_dist(bv(2, U, {{0, 2}}), bv(1, U, {{0, 1}})) == 1);
  CHECK(linf_dist(bv(1, U, {{0, 1}}), bv(1, U, {{1, 1}})) == 1);
  CHECK(linf_dist(bv(2, S, {{0, 2}, {1, -2}}), bv(2, S, {{0, -2}})) == 4);
  CHECK_THROWS_AS(linf_dist(bv(1, U, {{0, 1}}), bv(1, S, {{0, 1}})), DomainError);

  std::vector<BlockVector> a{bv(2, U, {{0, 2}})};
  CHECK(in_fattening(bv(1, U, {{0, 1}}), a, 1));
  CHECK_FALSE(in_fattening(bv(1, U, {{0, 1}}), a, 0));
  CHECK(in_fattening(a[0], a, 0));

  BlockSequence A({bv(2, U, {{0, 2}})});
  CHECK(seq_dist(A, A) == Distance(0));
  CHECK(seq_dist(A, BlockSequence({bv(1, U, {{0, 1}})})) == Distance(1));
  BlockSequence two({bv(1, U, {{0, 1}}), bv(1, U, {{1, 1}})});
  BlockSequence three({bv(1, U, {{0, 1}}), bv(1, U, {{1, 1}}), bv(1, U, {{2, 1}})});
  CHECK(seq_dist(two, three).is_infinite());
}

TEST_CASE("property: linf_dist is a metric") {
  oracle::Rng rng(13);
  for (int t = 0; t < 3000; ++t) {
    int const  k    = rng.between(1, 3);
    Mode const mode = rng.below(2) ? S : U;
    auto p = oracle::random_block(rng, k, mode, 0, rng.between(1, 8));
    auto q = oracle::random_block(rng, k, mode, rng.between(0, 4), 9);
    auto r = oracle::random_block(rng, k, mode, 0, 9);
    CHECK(linf_dist(p, q) == linf_dist(q, p));
    CHECK((linf_dist(p, q) == 0) == (p == q));
    CHECK(linf_dist(p, r) <= linf_dist(p, q) + linf_dist(q, r));
    CHECK(linf_dist(p, q) == oracle::linf(oracle::raw(p), oracle::raw(q)));
  }
}

TEST_CASE("embedding") {
  auto e = embed_delta(bv(3, S, {{0, 3}}), 0.5);
  CHECK(e == RealVector({{0, 1.0}}));
  auto f = embed_delta(bv(3, S, {{0, 3}, {2, -1}}), 0.5);
  CHECK(f.at(0) == doctest::Approx(1.0));
  CHECK(f.at(2) == doctest::Approx(-1.0 / 2.25));
  CHECK_THROWS_AS(embed_delta(bv(1, U, {{0, 1}}), 0.5), DomainError);
  CHECK(net_condition_holds(3, 0.5));
  CHECK_FALSE(net_condition_holds(2, 0.5));
}

TEST_CASE("property: embedding is odd, has unit norm and is 1-to-delta Lipschitz") {
  oracle::Rng  rng(14);
  double const delta = 0.5;
  for (int t = 0; t < 3000; ++t) {
    int const k = rng.between(3, 5);
    auto      p = oracle::random_block(rng, k, S, 0, 8);
    auto      x = embed_delta(p, delta);
    CHECK(x.sup_norm() == 1.0);
    auto nx = embed_delta(negate(p), delta);
    for (auto const& en : x.entries()) CHECK(nx.at(en.pos) == -en.value);

    // a neighbour within distance 1 that still attains k
    oracle::Raw r = oracle::raw(p);
    for (auto& [pos, v] : r) {
      int const w = v + rng.between(-1, 1);
      if (w != 0 && std::abs(w) <= k) v = w;
    }
    int const at = rng.between(0, 8);
    if (!r.contains(at)) r[at] = rng.below(2) ? 1 : -1;
    bool const attains = std::any_of(r.begin(), r.end(), [&](auto const& e) { return std::abs(e.second) == k; });
    if (!attains) continue;
    auto q = oracle::cook(k, S, r);
    REQUIRE(linf_dist(p, q) <= 1);
    CHECK(linf_dist(x, embed_delta(q, delta)) <= delta + 1e-12);
  }
}

TEST_CASE("net defect") {
  BlockSequence one({bv(3, S, {{0, 3}, {1, -2}})});
  CHECK(net_distance(one, 0.5, embed_delta(one[0], 0.5)) == 0.0);
  BlockSequence two({bv(3, S, {{0, 3}, {1, -1}}), bv(3, S, {{2, -3}})});
  double const d = net_defect(two, 0.5, 1000, 7);
  CHECK(d >= 0.0);
  CHECK(d <= 0.5 + 1e-9);
  CHECK(d == net_defect_serial(two, 0.5, 1000, 7));
  CHECK_THROWS_AS(net_defect(BlockSequence({bv(2, S, {{0, 2}})}), 0.5, 10, 1), DomainError);
}

TEST_CASE("net defect matches a brute-force nearest image") {
  double const  delta = 0.5;
  int const     k     = 3;
  BlockSequence two({bv(k, S, {{0, 3}, {1, -1}}), bv(k, S, {{2, -3}, {3, 2}})});
  auto const    images = oracle::span({oracle::raw(two[0]), oracle::raw(two[1])}, k, true);
  auto const    grid   = [&](int v) {
    return v == 0 ? 0.0 : (v < 0 ? -1.0 : 1.0) * std::pow(1 + delta, std::abs(v) - k);
  };
  double worst = 0.0;
  for (auto const& x : sample_sphere(two, delta, 300, 3)) {
    double best = INFINITY;
    for (auto const& img : images) {
      double d = 0.0;
      for (int pos = 0; pos < 4; ++pos) {
        auto const it = img.find(pos);
        d = std::max(d, std::abs(x.at(pos) - grid(it == img.end() ? 0 : it->second)));
      }
      best = std::min(best, d);
    }
    CHECK(net_distance(two, delta, x) == doctest::Approx(best).epsilon(1e-12));
    worst = std::max(worst, best);
  }
  CHECK(worst <= delta + 1e-9);
  CHECK(net_defect(two, delta, 300, 3) == doctest::Approx(worst).epsilon(1e-12));
}
