#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "finram/block_vector.hpp"
#include "finram/word.hpp"

// Coding variable words as block vectors plus 0/1 parameter matrices: the
// maps φ and ψ, the block sequence B read off the odd words of Y, the
// perfect sets P_i and the witness decoder.
namespace finram {

// A rows × cols 0/1 matrix; entry (n, i) is bit i of the letter at place n.
class ParamMatrix {
 public:
  ParamMatrix(int rows, int cols);

  int  rows() const noexcept { return rows_; }
  int  cols() const noexcept { return cols_; }
  bool at(int n, int i) const;
  void set(int n, int i, bool value);

  // Row n as a letter (bits 0..cols-1).
  Letter row(int n) const;

  // Set entries in row-major order.
  std::vector<std::pair<int, int>> ones() const;

  friend bool operator==(ParamMatrix const&, ParamMatrix const&) = default;

 private:
  int                       rows_;
  int                       cols_;
  std::vector<std::uint8_t> bits_;
};

// a_m holds v_i at place l of x_m as the value i at position
// |x_0| + ... + |x_{m-1}| + l.
BlockSequence phi_encode(std::span<Word const> xs);

// Row n is the bit expansion of the letter at place n of x_0 ⌢ x_1 ⌢ ...,
// zero at variable places; rows = total length.
ParamMatrix psi_encode(std::span<Word const> xs, int cols);

// One block per odd word y_{2m+1}, offset by |y_0| + ... + |y_{2m}|.
BlockSequence derive_B(WordSequence const& ys);

// x_m = y_{2m}[σ_{2m}] ⌢ y_{2m+1}, every variable of y_{2m} replaced by
// σ_{2m}. Letters must satisfy level(σ_{2m}) <= 2m.
std::vector<Word> pair_substitute(WordSequence const& ys,
                                  std::span<Letter const> sigmas);

// The constraints cutting out P_i inside 2^length, length = Σ|y_n|:
// `forced` fixes single places (letter bits, variables of odd words,
// variables of even words y_{2m} with m < i); each class lists the
// variable places of one remaining even word and those places share one
// free bit.
struct PerfectSet {
  int                              index = 0;
  int                              length = 0;
  std::vector<std::pair<int, int>> forced;
  std::vector<std::vector<int>>    classes;

  bool contains(std::span<std::uint8_t const> delta) const;

  // All satisfying strings, classes read as binary digits (class 0 is
  // the least significant), so there are 2^classes.size() of them.
  std::vector<std::vector<std::uint8_t>> enumerate() const;

  // The satisfying string whose class bits are the low bits of `choice`.
  std::vector<std::uint8_t> member(std::uint64_t choice) const;

  friend bool operator==(PerfectSet const&, PerfectSet const&) = default;
};

PerfectSet perfect_set(WordSequence const& ys, int i);

// σ_{2m}(i) = δ_i(n_m), n_m the first variable place of y_{2m}. Throws
// DomainError when some δ_i violates perfect_set(ys, i).
std::vector<Letter> product_to_sigmas(WordSequence const& ys,
                                      std::span<std::vector<std::uint8_t> const> deltas);

// M(n, i) = δ_i(n).
ParamMatrix assemble_matrix(std::span<std::vector<std::uint8_t> const> deltas);

// The letters σ_{2m} with psi_encode(pair_substitute(ys, σ)) == m, when
// m lies in P (cut to m.cols() columns); nullopt otherwise.
std::optional<std::vector<Letter>> sigmas_for_matrix(WordSequence const& ys,
                                                     ParamMatrix const&  m);

// Writes a as Σ_{i∈I} ε_i T^{j_i}(b_i) over a minimal interval I; blocks
// inside I that a misses get j = k. Nullopt when a is not of that form.
struct BlockDecomposition {
  int              first = 0;
  std::vector<int> signs;
  std::vector<int> exponents;

  int last() const { return first + static_cast<int>(exponents.size()) - 1; }
};
std::optional<BlockDecomposition> decompose_over(BlockSequence const& bs,
                                                 BlockVector const&   a);

// Z with phi_encode(Z) == A and psi_encode(Z) == psi_encode(X) for
// X = pair_substitute(ys, sigmas). The last z absorbs the pairs of X after
// the final interval, substituted by the zero letter.
std::vector<Word> decode_witness(WordSequence const& ys, BlockSequence const& a,
                                 std::span<Letter const> sigmas);

}  // namespace finram
