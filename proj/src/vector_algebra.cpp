#include "finram/vector_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "finram/error.hpp"
#include "random.hpp"
#include "span_kernel.hpp"

namespace finram {

namespace {

void require_same_type(BlockVector const& p, BlockVector const& q) {
  if (p.k() != q.k() || p.mode() != q.mode()) {
    throw DomainError("vectors differ in k or mode");
  }
}

// One way a block can appear in a span element: ε T^j(p) as raw entries.
struct BlockImage {
  std::vector<Entry> entries;
  bool               marked;
};

std::vector<std::vector<BlockImage>> block_images(BlockSequence const& blocks) {
  std::vector<std::vector<BlockImage>> all;
  for (auto const& p : blocks) {
    std::vector<BlockImage> out;
    int const signs = p.mode() == Mode::Signed ? 2 : 1;
    for (int j = 0; j < p.k(); ++j) {
      for (int s = 0; s < signs; ++s) {
        BlockImage img{{}, j == 0};
        for (auto const& e : p.entries()) {
          int mag = std::abs(e.value) - j;
          if (mag <= 0) continue;
          int v = e.value > 0 ? mag : -mag;
          img.entries.push_back({e.pos, s == 0 ? v : -v});
        }
        out.push_back(std::move(img));
      }
    }
    all.push_back(std::move(out));
  }
  return all;
}

std::vector<BlockVector> span_impl(BlockSequence const& blocks, bool parallel) {
  if (blocks.empty()) throw DomainError("span of an empty block sequence");
  int const  k      = blocks[0].k();
  Mode const mode   = blocks[0].mode();
  auto const images = block_images(blocks);
  auto build = [&](std::span<BlockImage const* const> picked) {
    std::vector<Entry> entries;
    for (auto const* img : picked) {
      entries.insert(entries.end(), img->entries.begin(), img->entries.end());
    }
    return BlockVector(k, mode, std::move(entries));
  };
  return detail::enumerate_span<BlockVector>(images, 0, true, build, parallel);
}

}  // namespace

std::vector<int> support(BlockVector const& p) {
  std::vector<int> out;
  out.reserve(p.size());
  for (auto const& e : p.entries()) out.push_back(e.pos);
  return out;
}

bool block_lt(BlockVector const& p, BlockVector const& q) {
  require_same_type(p, q);
  return p.max_pos() < q.min_pos();
}

BlockVector block_sum(BlockVector const& p, BlockVector const& q) {
  if (!block_lt(p, q)) throw DomainError("block_sum requires p < q");
  std::vector<Entry> entries(p.entries().begin(), p.entries().end());
  entries.insert(entries.end(), q.entries().begin(), q.entries().end());
  return BlockVector(p.k(), p.mode(), std::move(entries));
}

BlockVector tetris_pow(BlockVector const& p, int j) {
  if (j < 0 || j >= p.k()) {
    throw DomainError("tetris exponent " + std::to_string(j)
                      + " outside [0, k) for k=" + std::to_string(p.k()));
  }
  if (j == 0) return p;
  std::vector<Entry> entries;
  for (auto const& e : p.entries()) {
    int mag = std::abs(e.value) - j;
    if (mag > 0) entries.push_back({e.pos, e.value > 0 ? mag : -mag});
  }
  return BlockVector(p.k() - j, p.mode(), std::move(entries));
}

BlockVector tetris(BlockVector const& p) {
  if (p.k() < 2) throw DomainError("tetris on FIN_1 would leave FIN_0");
  return tetris_pow(p, 1);
}

BlockVector negate(BlockVector const& p) {
  if (p.mode() != Mode::Signed) throw DomainError("negate requires signed mode");
  std::vector<Entry> entries(p.entries().begin(), p.entries().end());
  for (auto& e : entries) e.value = -e.value;
  return BlockVector(p.k(), p.mode(), std::move(entries));
}

std::vector<BlockVector> span_serial(BlockSequence const& blocks) {
  return span_impl(blocks, false);
}

std::vector<BlockVector> span(BlockSequence const& blocks) {
  return span_impl(blocks, true);
}

int linf_dist(BlockVector const& p, BlockVector const& q) {
  if (p.mode() != q.mode()) throw DomainError("linf_dist across modes");
  auto ps = p.entries();
  auto qs = q.entries();
  int         d = 0;
  std::size_t i = 0, j = 0;
  while (i < ps.size() || j < qs.size()) {
    if (j == qs.size() || (i < ps.size() && ps[i].pos < qs[j].pos)) {
      d = std::max(d, std::abs(ps[i++].value));
    } else if (i == ps.size() || qs[j].pos < ps[i].pos) {
      d = std::max(d, std::abs(qs[j++].value));
    } else {
      d = std::max(d, std::abs(ps[i++].value - qs[j++].value));
    }
  }
  return d;
}

bool in_fattening(BlockVector const& p, std::span<BlockVector const> set,
                  int eps) {
  if (eps < 0) throw DomainError("negative fattening radius");
  return std::any_of(set.begin(), set.end(), [&](BlockVector const& q) {
    return q.mode() == p.mode() && linf_dist(p, q) <= eps;
  });
}

Distance seq_dist(BlockSequence const& a, BlockSequence const& b) {
  if (a.size() != b.size()) return Distance::infinity();
  std::int64_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d = std::max<std::int64_t>(d, linf_dist(a[i], b[i]));
  }
  return Distance(d);
}

RealVector embed_delta(BlockVector const& p, double delta) {
  if (p.mode() != Mode::Signed) throw DomainError("embed_delta requires signed mode");
  if (!(delta > 0.0)) throw DomainError("delta must be positive");
  std::vector<RealEntry> out;
  out.reserve(p.size());
  for (auto const& e : p.entries()) {
    double mag = std::pow(1.0 + delta, std::abs(e.value) - p.k());
    out.push_back({e.pos, e.value > 0 ? mag : -mag});
  }
  return RealVector(std::move(out));
}

bool net_condition_holds(int k, double delta) {
  return delta > 0.0 && std::pow(1.0 + delta, 1 - k) < delta;
}

namespace {

void require_net_inputs(BlockSequence const& blocks, double delta) {
  if (blocks.empty()) throw DomainError("net check needs at least one block");
  if (blocks[0].mode() != Mode::Signed) {
    throw DomainError("net check requires signed mode");
  }
  if (!net_condition_holds(blocks[0].k(), delta)) {
    throw DomainError("(1+delta)^(1-k) < delta fails for k="
                      + std::to_string(blocks[0].k()));
  }
}

}  // namespace

// Span elements restricted to one block are either absent or ε T^j(b);
// the distance to the whole image set is therefore a min over per-block
// choices, coupled only by the requirement that some block uses j = 0.
double net_distance(BlockSequence const& blocks, double delta,
                    RealVector const& x) {
  require_net_inputs(blocks, delta);
  int const   k     = blocks[0].k();
  std::size_t const count = blocks.size();

  std::vector<double> best_any(count), best_zero(count);
  double outside = 0.0;
  {
    std::size_t b = 0;
    for (auto const& e : x.entries()) {
      while (b < count && blocks[b].max_pos() < e.pos) ++b;
      bool inside = b < count && blocks[b].min_pos() <= e.pos
                    && blocks[b].at(e.pos) != 0;
      if (!inside) outside = std::max(outside, std::abs(e.value));
    }
  }

  for (std::size_t n = 0; n < count; ++n) {
    auto const& b = blocks[n];
    double absent = 0.0;
    for (auto const& e : b.entries()) absent = std::max(absent, std::abs(x.at(e.pos)));
    double any  = absent;
    double zero = std::numeric_limits<double>::infinity();
    for (int j = 0; j < k; ++j) {
      for (int sign : {1, -1}) {
        double cost = 0.0;
        for (auto const& e : b.entries()) {
          int    mag    = std::abs(e.value) - j;
          double target = 0.0;
          if (mag > 0) {
            target = std::pow(1.0 + delta, mag - k);
            if ((e.value > 0) != (sign > 0)) target = -target;
          }
          cost = std::max(cost, std::abs(x.at(e.pos) - target));
        }
        any = std::min(any, cost);
        if (j == 0) zero = std::min(zero, cost);
      }
    }
    best_any[n]  = any;
    best_zero[n] = zero;
  }

  std::vector<double> prefix(count + 1, 0.0), suffix(count + 1, 0.0);
  for (std::size_t n = 0; n < count; ++n) prefix[n + 1] = std::max(prefix[n], best_any[n]);
  for (std::size_t n = count; n > 0; --n) suffix[n - 1] = std::max(suffix[n], best_any[n - 1]);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < count; ++m) {
    best = std::min(best, std::max({best_zero[m], prefix[m], suffix[m + 1]}));
  }
  return std::max(best, outside);
}

std::vector<RealVector> sample_sphere(BlockSequence const& blocks, double delta,
                                      int samples, std::uint64_t seed) {
  require_net_inputs(blocks, delta);
  if (samples < 1) throw DomainError("sample count must be positive");
  std::vector<RealVector> images;
  for (auto const& b : blocks) images.push_back(embed_delta(b, delta));

  detail::Rng             rng(seed);
  std::vector<RealVector> out;
  out.reserve(static_cast<std::size_t>(samples));
  std::vector<double> coef(blocks.size());
  while (out.size() < static_cast<std::size_t>(samples)) {
    double top = 0.0;
    for (auto& c : coef) {
      c   = rng.uniform_signed();
      top = std::max(top, std::abs(c));
    }
    if (top == 0.0) continue;
    std::vector<RealEntry> entries;
    for (std::size_t n = 0; n < blocks.size(); ++n) {
      for (auto const& e : images[n].entries()) {
        entries.push_back({e.pos, coef[n] / top * e.value});
      }
    }
    out.emplace_back(std::move(entries));
  }
  return out;
}

double net_defect_serial(BlockSequence const& blocks, double delta, int samples,
                         std::uint64_t seed) {
  auto const points = sample_sphere(blocks, delta, samples, seed);
  double     worst  = 0.0;
  for (auto const& x : points) worst = std::max(worst, net_distance(blocks, delta, x));
  return worst;
}

double net_defect(BlockSequence const& blocks, double delta, int samples,
                  std::uint64_t seed) {
  auto const points = sample_sphere(blocks, delta, samples, seed);
  auto const n      = static_cast<std::int64_t>(points.size());
  double     worst  = 0.0;
#pragma omp parallel for reduction(max : worst) schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    worst = std::max(worst, net_distance(blocks, delta, points[static_cast<std::size_t>(i)]));
  }
  return worst;
}

}  // namespace finram
