// Serial vs parallel timings for the OpenMP kernels.

#include <chrono>
#include <cstdio>
#include <functional>

#include <omp.h>

#include "finram/colouring.hpp"
#include "finram/search.hpp"
#include "finram/vector_algebra.hpp"
#include "finram/word_algebra.hpp"

using namespace finram;

namespace {

double seconds(std::function<void()> const& f, int reps) {
  auto const start = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() / reps;
}

void row(char const* name, std::function<void()> const& serial, std::function<void()> const& parallel, int reps) {
  double const s = seconds(serial, reps);
  double const p = seconds(parallel, reps);
  std::printf("%-12s serial %9.4fs  parallel %9.4fs  speedup %5.2fx\n", name, s, p, s / p);
}

BlockVector bv(int k, std::vector<std::pair<int, int>> pairs) {
  return BlockVector::from_pairs(k, Mode::Signed, std::move(pairs));
}

Word w(int k, std::vector<Symbol> s) { return Word(k, Mode::Signed, std::move(s)); }

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());

  std::vector<BlockVector> blocks;
  for (int n = 0; n < 8; ++n) blocks.push_back(bv(3, {{2 * n, 3}, {2 * n + 1, -1}}));
  BlockSequence const seq(blocks);
  row("span", [&] { span_serial(seq); }, [&] { span(seq); }, 3);

  auto const   v = [](int i) { return Symbol::variable(i); };
  auto const   z = Symbol::of(kZeroLetter);
  WordSequence ys({w(2, {v(2)}), w(2, {v(1), v(-2)}), w(2, {v(2), z, v(-1), z}), w(2, {v(2), z, z, z, z, z, z, v(1)})});
  Alphabet const alpha = Alphabet::bitstrings(3);
  row("span_words", [&] { span_words_serial(ys, alpha); }, [&] { span_words(ys, alpha); }, 3);

  auto const         c = Colouring::family(Arity::Vector, 2, "min-position-mod");
  SearchProblem const p{Mode::Signed, 2, 6, 2, 0};
  row("search", [&] { search_blocks(p, c, false); }, [&] { search_blocks(p, c, true); }, 1);

  BlockSequence const net(std::vector<BlockVector>{bv(3, {{0, 3}, {1, -1}}), bv(3, {{2, -3}, {3, 2}}),
                                                    bv(3, {{4, 1}, {5, 3}}), bv(3, {{6, -2}, {7, -3}})});
  row("net_defect", [&] { net_defect_serial(net, 0.5, 20000, 1); }, [&] { net_defect(net, 0.5, 20000, 1); }, 1);
  return 0;
}
