#include <algorithm>
#include <cstdlib>
#include <string>

#include "finram/error.hpp"
#include "finram/search.hpp"
#include "finram/vector_algebra.hpp"
#include "random.hpp"

namespace finram {

std::vector<BlockSequence> block_sequences(std::span<BlockVector const> elements,
                                           int length) {
  if (length < 1) throw DomainError("sequence length must be positive");
  std::vector<BlockVector> sorted(elements.begin(), elements.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<BlockSequence> out;
  std::vector<BlockVector>   cur;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (static_cast<int>(cur.size()) == length) {
      out.emplace_back(cur);
      return;
    }
    for (std::size_t i = from; i < sorted.size(); ++i) {
      if (!cur.empty() && sorted[i].min_pos() <= cur.back().max_pos()) continue;
      cur.push_back(sorted[i]);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

std::optional<BlockSequence> find_approximant(BlockSequence const& a, ParamMatrix const& m,
                                              Colouring const& c, int colour,
                                              std::span<std::pair<int, int> const> ranges) {
  if (c(a, m) == colour) return a;
  if (ranges.size() != a.size()) throw DomainError("one range per block is required");
  int const  k    = a[0].k();
  Mode const mode = a[0].mode();
  int const  lo   = mode == Mode::Signed ? -k : 0;

  struct Place {
    std::size_t block;
    int         pos;
    int         base;
    int         step;
  };
  std::vector<Place> places;
  for (std::size_t l = 0; l < a.size(); ++l) {
    for (int pos = ranges[l].first; pos < ranges[l].second; ++pos) {
      places.push_back({l, pos, a[l].at(pos), -1});
    }
  }
  if (places.size() > 20) throw DomainError("approximation neighbourhood too large");
  while (true) {
    bool                            valid = true;
    std::vector<std::vector<Entry>> entries(a.size());
    for (auto const& p : places) {
      int v = p.base + p.step;
      if (v < lo || v > k) {
        valid = false;
        break;
      }
      if (v != 0) entries[p.block].push_back({p.pos, v});
    }
    if (valid) {
      std::vector<BlockVector> blocks;
      for (auto& e : entries) {
        bool attains = std::any_of(e.begin(), e.end(),
                                   [&](Entry const& x) { return std::abs(x.value) == k; });
        if (!attains) {
          valid = false;
          break;
        }
        blocks.emplace_back(k, mode, std::move(e));
      }
      if (valid) {
        BlockSequence candidate(std::move(blocks));
        if (c(candidate, m) == colour) return candidate;
      }
    }
    std::size_t i = 0;
    while (i < places.size() && ++places[i].step > 1) places[i++].step = -1;
    if (i == places.size()) break;
  }
  return std::nullopt;
}

namespace {

void check_pipeline(PipelineProblem const& p, Colouring const& c) {
  if (c.arity() != Arity::VectorMatrix) {
    throw DomainError("the pipeline needs a vector-matrix colouring");
  }
  if (p.k < 1) throw DomainError("k must be positive");
  if (p.lengths.size() < 2 || p.lengths.size() % 2 != 0) {
    throw DomainError("the pipeline needs an even number (>= 2) of generator lengths");
  }
  long total = 0;
  for (int l : p.lengths) {
    if (l < 1 || l <= total) throw DomainError("generator lengths must be rapidly increasing");
    total += l;
  }
  if (p.alphabet_level < 0 || p.alphabet_level > 20 || p.generator_level < 0
      || p.generator_level > 20) {
    throw DomainError("alphabet levels must lie in [0, 20]");
  }
  if (p.seq_length < 1) throw DomainError("sequence length must be positive");
  if (p.radius != 0 && p.radius != 1) throw DomainError("radius must be 0 or 1");
  if (p.radius == 1 && p.mode != Mode::Signed) {
    throw DomainError("the approximate pipeline needs signed mode");
  }
}

struct Member {
  BlockSequence                    a;
  ParamMatrix                      m;
  std::vector<std::pair<int, int>> ranges;
};

std::vector<std::pair<int, int>> ranges_of(std::vector<Word> const& zs) {
  std::vector<std::pair<int, int>> out;
  int pos = 0;
  for (auto const& z : zs) {
    out.emplace_back(pos, pos + static_cast<int>(z.size()));
    pos += static_cast<int>(z.size());
  }
  return out;
}

// The decoded family F(Y), one member per (A, σ).
std::vector<Member> family_of(PipelineProblem const& p, WordSequence const& y) {
  auto const bs    = derive_B(y);
  auto const spanb = span(bs);
  auto const seqs  = block_sequences(spanb, p.seq_length);
  auto const alpha = Alphabet::bitstrings(p.alphabet_level);

  std::size_t const                     pairs = y.size() / 2;
  std::vector<std::span<Letter const>> choices;
  for (std::size_t m = 0; m < pairs; ++m) {
    choices.push_back(alpha.level(std::min(static_cast<int>(2 * m), p.alphabet_level)));
  }
  std::vector<Member> out;
  for (auto const& a : seqs) {
    std::vector<std::size_t> pick(pairs, 0);
    std::vector<Letter>      sigmas(pairs);
    while (true) {
      for (std::size_t m = 0; m < pairs; ++m) sigmas[m] = choices[m][pick[m]];
      auto zs = decode_witness(y, a, sigmas);
      out.push_back({phi_encode(zs), psi_encode(zs, p.cols()), ranges_of(zs)});
      std::size_t i = 0;
      while (i < pairs && ++pick[i] == choices[i].size()) pick[i++] = 0;
      if (i == pairs) break;
    }
  }
  return out;
}

std::optional<int> family_colour(PipelineProblem const& p, Colouring const& c,
                                 std::vector<Member> const& family) {
  if (family.empty()) return std::nullopt;
  int const first = c(family[0].a, family[0].m);
  if (p.radius == 0) {
    for (auto const& f : family) {
      if (c(f.a, f.m) != first) return std::nullopt;
    }
    return first;
  }
  std::vector<int> order{first};
  for (int j = 0; j < c.colours(); ++j) {
    if (j != first) order.push_back(j);
  }
  for (int j : order) {
    bool ok = std::all_of(family.begin(), family.end(), [&](Member const& f) {
      return find_approximant(f.a, f.m, c, j, f.ranges).has_value();
    });
    if (ok) return j;
  }
  return std::nullopt;
}

}  // namespace

PipelineResult parametrized_pipeline(PipelineProblem const& problem, Colouring const& c,
                                     bool parallel) {
  check_pipeline(problem, c);
  auto const gen_alpha = Alphabet::bitstrings(problem.generator_level);
  std::vector<std::vector<Word>> candidates;
  std::uint64_t                  total = 1;
  for (std::size_t n = 0; n < problem.lengths.size(); ++n) {
    int const level = std::min(static_cast<int>(n), problem.generator_level);
    candidates.push_back(
        candidate_words(gen_alpha.level(level), problem.k, problem.mode, problem.lengths[n]));
    auto const size = static_cast<std::uint64_t>(candidates.back().size());
    total = std::min(total * size, problem.max_candidates);
  }
  std::uint64_t const limit = std::min(total, problem.max_candidates);

  // Candidate t in mixed radix, generator 0 most significant.
  auto candidate = [&](std::uint64_t t) {
    std::vector<Word> words(candidates.size(), candidates[0][0]);
    for (std::size_t n = candidates.size(); n-- > 0;) {
      auto const size = static_cast<std::uint64_t>(candidates[n].size());
      words[n]        = candidates[n][t % size];
      t /= size;
    }
    return WordSequence(std::move(words));
  };
  auto test = [&](std::uint64_t t) -> std::optional<int> {
    auto y = candidate(t);
    return family_colour(problem, c, family_of(problem, y));
  };

  PipelineResult     result;
  std::uint64_t      hit = limit;
  std::optional<int> colour;
  std::uint64_t const chunk = parallel ? 64 : 1;
  for (std::uint64_t base = 0; base < limit && hit == limit; base += chunk) {
    std::uint64_t const            end = std::min(limit, base + chunk);
    std::vector<std::optional<int>> outcome(end - base);
    auto const n = static_cast<std::int64_t>(end - base);
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
    for (std::int64_t i = 0; i < n; ++i) {
      outcome[static_cast<std::size_t>(i)] = test(base + static_cast<std::uint64_t>(i));
    }
    for (std::uint64_t i = 0; i < end - base; ++i) {
      if (outcome[i]) {
        hit    = base + i;
        colour = outcome[i];
        break;
      }
    }
  }
  result.stats.nodes = hit == limit ? limit : hit + 1;
  if (hit < limit) {
    DerivedPair d{candidate(hit), BlockSequence(), {}, *colour};
    d.b = derive_B(d.y);
    for (int i = 0; i < problem.cols(); ++i) d.perfect_sets.push_back(perfect_set(d.y, i));
    result.found = std::move(d);
  }
  return result;
}

PipelineReport verify_pipeline(PipelineProblem const& problem, Colouring const& c,
                               DerivedPair const& found, int samples, std::uint64_t seed) {
  check_pipeline(problem, c);
  PipelineReport report;
  auto fail = [&](std::string msg) {
    report.ok      = false;
    report.message = std::move(msg);
    return report;
  };
  auto const& y = found.y;
  if (y.size() != problem.lengths.size()) return fail("Y has the wrong number of words");
  if (!(derive_B(y) == found.b)) return fail("B does not match derive_B(Y)");
  for (int i = 0; i < problem.cols(); ++i) {
    if (static_cast<std::size_t>(i) >= found.perfect_sets.size()
        || !(perfect_set(y, i) == found.perfect_sets[static_cast<std::size_t>(i)])) {
      return fail("perfect set P_" + std::to_string(i) + " does not match Y");
    }
  }
  auto const seqs = block_sequences(span(found.b), problem.seq_length);
  if (seqs.empty()) return fail("[B] has no block sequences of the requested length");

  detail::Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    auto const& a = seqs[rng.below(seqs.size())];
    std::vector<std::vector<std::uint8_t>> deltas;
    for (auto const& ps : found.perfect_sets) deltas.push_back(ps.member(rng.next()));
    auto sigmas = product_to_sigmas(y, deltas);
    auto matrix = assemble_matrix(deltas);
    auto zs     = decode_witness(y, a, sigmas);

    PipelineSample sample{a, sigmas, matrix, c(a, matrix), std::nullopt, true};
    if (!(phi_encode(zs) == a)) return fail("phi(Z) differs from A in sample " + std::to_string(s));
    if (!(psi_encode(zs, problem.cols()) == matrix)) {
      return fail("psi(Z) differs from the sampled matrix in sample " + std::to_string(s));
    }
    if (problem.radius == 0) {
      sample.ok = sample.colour == found.colour;
    } else {
      auto ranges  = ranges_of(zs);
      sample.approx = find_approximant(a, matrix, c, found.colour, ranges);
      sample.ok     = sample.approx && seq_dist(a, *sample.approx).within(1)
                  && c(*sample.approx, matrix) == found.colour;
    }
    report.samples.push_back(sample);
    if (!sample.ok) return fail("colour condition fails in sample " + std::to_string(s));
  }
  report.ok      = true;
  report.message = "ok";
  return report;
}

}  // namespace finram
