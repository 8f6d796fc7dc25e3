#include "finram/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <string>

#include "finram/error.hpp"
#include "finram/json_io.hpp"
#include "finram/vector_algebra.hpp"

namespace finram {

std::vector<BlockVector> enumerate_universe(int k, int N, Mode mode) {
  if (k < 1) throw DomainError("k must be positive");
  if (N < 1) throw DomainError("position bound N must be at least 1");
  int const lo = mode == Mode::Signed ? -k : 0;
  int const base = k - lo + 1;
  double const size = std::pow(static_cast<double>(base), N);
  if (size > 1.6e7) throw DomainError("universe too large to enumerate");

  std::vector<BlockVector> out;
  std::vector<int>         values(static_cast<std::size_t>(N), lo);
  while (true) {
    std::vector<Entry> entries;
    bool               attains = false;
    for (int n = 0; n < N; ++n) {
      int v = values[static_cast<std::size_t>(n)];
      if (v == 0) continue;
      entries.push_back({n, v});
      attains = attains || std::abs(v) == k;
    }
    if (attains) out.emplace_back(k, mode, std::move(entries));
    int n = 0;
    while (n < N && ++values[static_cast<std::size_t>(n)] > k) values[static_cast<std::size_t>(n++)] = lo;
    if (n == N) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Vectors supported in [0, N) are coded densely as Σ (v(n) - lo) base^n,
// so colours and fattened colour masks become array lookups. A code is
// kept as the offset-free part Σ v(n) base^n; adding `zero_code` gives the
// array index. Offset-free parts of disjointly supported vectors add.
class Universe {
 public:
  Universe(SearchProblem const& p, Colouring const& c)
      : problem_(p), lo_(p.mode == Mode::Signed ? -p.k : 0), base_(p.k - lo_ + 1) {
    elements_ = enumerate_universe(p.k, p.N, p.mode);
    std::int64_t size = 1;
    pow_.push_back(1);
    for (int n = 0; n < p.N; ++n) {
      zero_code_ += -lo_ * size;
      size *= base_;
      pow_.push_back(size);
    }
    colour_.assign(static_cast<std::size_t>(size), -1);
    auto const count = static_cast<std::int64_t>(elements_.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < count; ++i) {
      auto const& e = elements_[static_cast<std::size_t>(i)];
      colour_[static_cast<std::size_t>(index(e))] = static_cast<std::int8_t>(c(e));
    }
    ball_.assign(static_cast<std::size_t>(size), 0);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < count; ++i) {
      auto const& e = elements_[static_cast<std::size_t>(i)];
      ball_[static_cast<std::size_t>(index(e))] = fattened_mask(e);
    }
    start_.assign(static_cast<std::size_t>(p.N) + 2, elements_.size());
    for (std::size_t i = elements_.size(); i-- > 0;) {
      start_[static_cast<std::size_t>(elements_[i].min_pos())] = i;
    }
    for (std::size_t s = start_.size() - 1; s-- > 0;) start_[s] = std::min(start_[s], start_[s + 1]);
  }

  std::vector<BlockVector> const& elements() const { return elements_; }
  std::size_t first_after(int pos) const { return start_[static_cast<std::size_t>(pos + 1)]; }
  std::uint32_t mask(std::int64_t part) const {
    return ball_[static_cast<std::size_t>(part + zero_code_)];
  }
  std::int64_t part(std::span<Entry const> entries) const {
    std::int64_t c = 0;
    for (auto const& e : entries) c += e.value * pow_[static_cast<std::size_t>(e.pos)];
    return c;
  }

 private:
  std::int64_t index(BlockVector const& e) const { return part(e.entries()) + zero_code_; }

  // Colours present in the radius-ball of e over the universe.
  std::uint32_t fattened_mask(BlockVector const& e) const {
    std::int64_t const own = index(e);
    if (problem_.radius == 0) return std::uint32_t{1} << colour_[static_cast<std::size_t>(own)];
    int const        N = problem_.N;
    std::vector<int> v(static_cast<std::size_t>(N));
    for (int n = 0; n < N; ++n) v[static_cast<std::size_t>(n)] = e.at(n);
    std::vector<int> d(static_cast<std::size_t>(N), -1);
    std::uint32_t    mask = 0;
    while (true) {
      std::int64_t code    = 0;
      bool         valid   = true;
      bool         attains = false;
      for (int n = 0; n < N && valid; ++n) {
        int w = v[static_cast<std::size_t>(n)] + d[static_cast<std::size_t>(n)];
        if (w < lo_ || w > problem_.k) valid = false;
        attains = attains || std::abs(w) == problem_.k;
        code += (w - lo_) * pow_[static_cast<std::size_t>(n)];
      }
      if (valid && attains) mask |= std::uint32_t{1} << colour_[static_cast<std::size_t>(code)];
      int n = 0;
      while (n < N && ++d[static_cast<std::size_t>(n)] > 1) d[static_cast<std::size_t>(n++)] = -1;
      if (n == N) break;
    }
    return mask;
  }

  SearchProblem             problem_;
  int                       lo_;
  int                       base_;
  std::int64_t              zero_code_ = 0;
  std::vector<std::int64_t> pow_;
  std::vector<BlockVector>  elements_;
  std::vector<std::int8_t>  colour_;
  std::vector<std::uint32_t> ball_;
  std::vector<std::size_t>  start_;
};

// One element of the closure E(P): a signed tetris combination of the
// chosen blocks, marked once some block entered with exponent 0.
struct Partial {
  std::int64_t part;
  bool         marked;
};

struct Image {
  std::int64_t part;
  bool         marked;
};

std::vector<Image> images_of(BlockVector const& p, Universe const& u) {
  std::vector<Image> out;
  int const signs = p.mode() == Mode::Signed ? 2 : 1;
  for (int j = 0; j < p.k(); ++j) {
    for (int s = 0; s < signs; ++s) {
      std::vector<Entry> entries;
      for (auto const& e : p.entries()) {
        int mag = std::abs(e.value) - j;
        if (mag <= 0) continue;
        int v = e.value > 0 ? mag : -mag;
        entries.push_back({e.pos, s == 0 ? v : -v});
      }
      out.push_back({u.part(entries), j == 0});
    }
  }
  return out;
}

// Extends E by block p; returns the narrowed colour mask (0 = pruned).
std::uint32_t extend_closure(std::vector<Partial> const& e, BlockVector const& p,
                             Universe const& u, std::uint32_t mask,
                             std::vector<Partial>& out) {
  out = e;
  for (auto const& img : images_of(p, u)) {
    if (img.marked) mask &= u.mask(img.part);
    out.push_back({img.part, img.marked});
    for (auto const& q : e) {
      bool const marked = q.marked || img.marked;
      if (marked) mask &= u.mask(q.part + img.part);
      out.push_back({q.part + img.part, marked});
    }
    if (mask == 0) return 0;
  }
  return mask;
}

class BlockSearch {
 public:
  BlockSearch(SearchProblem const& p, Universe const& u) : problem_(p), u_(u) {}

  // Explores the subtree below `root`; returns the witness indices.
  std::optional<std::vector<std::size_t>> run_root(std::size_t root, std::uint32_t all,
                                                   SearchStats& stats, std::uint32_t& mask_out) {
    std::vector<Partial> e;
    auto const&          p    = u_.elements()[root];
    std::uint32_t        mask = extend_closure({}, p, u_, all, e);
    if (mask == 0) {
      ++stats.pruned;
      return std::nullopt;
    }
    chosen_ = {root};
    if (dfs(e, mask, stats, mask_out)) return chosen_;
    return std::nullopt;
  }

 private:
  bool dfs(std::vector<Partial> const& e, std::uint32_t mask, SearchStats& stats,
           std::uint32_t& mask_out) {
    ++stats.nodes;
    if (static_cast<int>(chosen_.size()) == problem_.m) {
      mask_out = mask;
      return true;
    }
    auto const& last = u_.elements()[chosen_.back()];
    std::vector<Partial> next;
    for (std::size_t i = u_.first_after(last.max_pos()); i < u_.elements().size(); ++i) {
      std::uint32_t m = extend_closure(e, u_.elements()[i], u_, mask, next);
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

  SearchProblem const&     problem_;
  Universe const&          u_;
  std::vector<std::size_t> chosen_;
};

void check_problem(SearchProblem const& p, Colouring const& c) {
  if (c.arity() != Arity::Vector) throw DomainError("block search needs a vector colouring");
  if (p.k < 1 || p.N < 1 || p.m < 1) throw DomainError("k, N and m must be positive");
  if (p.radius != 0 && p.radius != 1) throw DomainError("radius must be 0 or 1");
  if (p.radius == 1 && p.mode != Mode::Signed) {
    throw DomainError("approximate search needs signed mode");
  }
}

SearchResult run_search(SearchProblem const& p, Colouring const& c, bool parallel) {
  check_problem(p, c);
  Universe const      u(p, c);
  std::uint32_t const all   = c.colours() == 32 ? ~0u : (1u << c.colours()) - 1;
  std::size_t const   roots = u.elements().size();

  struct RootOutcome {
    SearchStats                             stats;
    std::optional<std::vector<std::size_t>> found;
    std::uint32_t                           mask = 0;
  };
  std::vector<RootOutcome> outcomes(roots);

  std::atomic<std::size_t> best{roots};
  auto explore = [&](std::size_t r) {
    if (r > best.load(std::memory_order_relaxed)) return;
    BlockSearch s(p, u);
    auto&       o = outcomes[r];
    o.found       = s.run_root(r, all, o.stats, o.mask);
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

  SearchResult result;
  result.stats.nodes = 1;
  std::size_t const last = std::min(best.load(), roots == 0 ? 0 : roots - 1);
  for (std::size_t r = 0; r < roots && r <= last; ++r) {
    result.stats.nodes += outcomes[r].stats.nodes;
    result.stats.pruned += outcomes[r].stats.pruned;
  }
  if (best.load() < roots) {
    auto const&              o = outcomes[best.load()];
    std::vector<BlockVector> blocks;
    for (auto i : *o.found) blocks.push_back(u.elements()[i]);
    result.witness = Witness{BlockSequence(std::move(blocks)), std::countr_zero(o.mask)};
  }
  return result;
}

}  // namespace

SearchResult search_exact(SearchProblem const& problem, Colouring const& c, bool parallel) {
  if (problem.radius != 0) throw DomainError("exact search needs radius 0");
  return run_search(problem, c, parallel);
}

SearchResult search_approx(SearchProblem const& problem, Colouring const& c, bool parallel) {
  if (problem.mode != Mode::Signed) throw DomainError("approximate search needs signed mode");
  return run_search(problem, c, parallel);
}

SearchResult search_blocks(SearchProblem const& problem, Colouring const& c, bool parallel) {
  return run_search(problem, c, parallel);
}

VerifyReport verify_witness(SearchProblem const& problem, Colouring const& c,
                            BlockSequence const& blocks, int colour) {
  VerifyReport report;
  auto fail = [&](std::string msg) {
    report.ok      = false;
    report.message = std::move(msg);
    return report;
  };
  if (static_cast<int>(blocks.size()) != problem.m) {
    return fail("expected " + std::to_string(problem.m) + " blocks, got "
                + std::to_string(blocks.size()));
  }
  for (auto const& b : blocks) {
    if (b.k() != problem.k || b.mode() != problem.mode) return fail("block has the wrong k or mode");
    if (b.max_pos() >= problem.N) return fail("block leaves the position bound N");
  }
  if (colour < 0 || colour >= c.colours()) return fail("colour out of range");

  std::vector<BlockVector> universe;
  if (problem.radius > 0) universe = enumerate_universe(problem.k, problem.N, problem.mode);

  for (auto const& x : span(blocks)) {
    Evidence ev{x, c(x), std::nullopt};
    if (problem.radius == 0) {
      if (ev.colour != colour) {
        report.offending = x;
        return fail("span element " + json_io::canonical(json_io::to_json(x)) + " has colour "
                    + std::to_string(ev.colour));
      }
    } else {
      auto it = std::find_if(universe.begin(), universe.end(), [&](BlockVector const& q) {
        return linf_dist(x, q) <= problem.radius && c(q) == colour;
      });
      if (it == universe.end()) {
        report.offending = x;
        return fail("span element " + json_io::canonical(json_io::to_json(x))
                    + " has no neighbour of colour " + std::to_string(colour));
      }
      ev.neighbour = *it;
    }
    report.evidence.push_back(std::move(ev));
  }
  report.ok      = true;
  report.message = "ok";
  return report;
}

}  // namespace finram
