#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "finram/block_vector.hpp"
#include "finram/distance.hpp"

// FIN_k and FIN_±k as partial semigroups: block order, sums, the tetris
// map, spans, ℓ∞ distances and the Δ_±k embedding into c_0.
namespace finram {

std::vector<int> support(BlockVector const& p);

// max supp p < min supp q. Throws DomainError when k or mode differ.
bool block_lt(BlockVector const& p, BlockVector const& q);

// Coordinate-wise sum; requires block_lt(p, q).
BlockVector block_sum(BlockVector const& p, BlockVector const& q);

// FIN_k -> FIN_{k-1}: every nonzero magnitude drops by one. Requires k >= 2.
BlockVector tetris(BlockVector const& p);

// T^j(p) for 0 <= j < k.
BlockVector tetris_pow(BlockVector const& p, int j);

// Sign flip; signed mode only.
BlockVector negate(BlockVector const& p);

// All sums ε_0 T^{j_0}(p_{n_0}) + ... with n_0 < n_1 < ..., j_i < k,
// min j_i = 0 and ε_i = +1 in unsigned mode. Returned deduplicated in
// canonical order. The parallel kernel and the serial reference return
// identical results.
std::vector<BlockVector> span(BlockSequence const& blocks);
std::vector<BlockVector> span_serial(BlockSequence const& blocks);

// max_n |p(n) - q(n)|. Throws DomainError on mode mismatch.
int linf_dist(BlockVector const& p, BlockVector const& q);

// Whether some q in `set` has linf_dist(p, q) <= eps.
bool in_fattening(BlockVector const&           p,
                  std::span<BlockVector const> set,
                  int                          eps);

// sup_n ||a_n - b_n||∞; infinite when the lengths differ.
Distance seq_dist(BlockSequence const& a, BlockSequence const& b);

// φ(p)(n) = ±(1+δ)^{|p(n)|-k}; signed mode only.
RealVector embed_delta(BlockVector const& p, double delta);

// Whether (1+δ)^{1-k} < δ, the condition under which Δ_±k is a δ-net.
bool net_condition_holds(int k, double delta);

// Exact ℓ∞ distance from x to {embed_delta(b) : b ∈ span(blocks)}.
double net_distance(BlockSequence const& blocks, double delta,
                    RealVector const& x);

// Samples `samples` points on the sup-norm unit sphere of the linear span
// of {embed_delta(b_n)} (coefficients uniform in [-1, 1], then
// normalised) and returns the largest net_distance among them.
double net_defect(BlockSequence const& blocks, double delta, int samples,
                  std::uint64_t seed);
double net_defect_serial(BlockSequence const& blocks, double delta,
                         int samples, std::uint64_t seed);

// The sampled sphere points used by net_defect, in sampling order.
std::vector<RealVector> sample_sphere(BlockSequence const& blocks,
                                      double delta, int samples,
                                      std::uint64_t seed);

}  // namespace finram
