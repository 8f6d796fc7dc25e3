#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "finram/block_vector.hpp"
#include "finram/colouring.hpp"
#include "finram/encodings.hpp"
#include "finram/word.hpp"

// Finite Ramsey witnesses: block sequences with monochromatic (or
// 1-approximately monochromatic) spans, the word-level analogue, and the
// parametrized pipeline that codes a vector-matrix colouring into words.
namespace finram {

// Blocks of length m with support in [0, N). radius 0 asks for a
// monochromatic span; radius 1 (signed only) asks for a colour i whose
// 1-fattening over the universe covers the span.
struct SearchProblem {
  Mode mode   = Mode::Unsigned;
  int  k      = 1;
  int  N      = 1;
  int  m      = 1;
  int  radius = 0;

  friend bool operator==(SearchProblem const&, SearchProblem const&) = default;
};

// nodes: partial sequences accepted by the pruner (the empty one
// included). pruned: one-block extensions rejected by the colour test.
struct SearchStats {
  std::uint64_t nodes  = 0;
  std::uint64_t pruned = 0;

  friend bool operator==(SearchStats const&, SearchStats const&) = default;
};

struct Witness {
  BlockSequence blocks;
  int           colour = 0;
};

struct SearchResult {
  std::optional<Witness> witness;
  SearchStats            stats;
};

// Every BlockVector with support in [0, N), canonical order.
std::vector<BlockVector> enumerate_universe(int k, int N, Mode mode);

// DFS over blocks in canonical order with incremental span closure; the
// first hit is the lexicographically least witness. With `parallel` the
// root choices are explored concurrently and reduced by root index, which
// yields the same witness and the same stats as the serial run.
SearchResult search_exact(SearchProblem const& problem, Colouring const& c,
                          bool parallel = false);
SearchResult search_approx(SearchProblem const& problem, Colouring const& c,
                           bool parallel = false);
// Dispatches on problem.radius.
SearchResult search_blocks(SearchProblem const& problem, Colouring const& c,
                           bool parallel = false);

struct Evidence {
  BlockVector                element;
  int                        colour;
  std::optional<BlockVector> neighbour;  // radius 1: a universe element of the witness colour
};

struct VerifyReport {
  bool                       ok = false;
  std::string                message;
  std::optional<BlockVector> offending;
  std::vector<Evidence>      evidence;
};

// Recomputes the span with vector-algebra's span() (not the DFS), colours
// every element and, for radius 1, finds a same-colour universe element
// within distance 1 by scanning the universe.
VerifyReport verify_witness(SearchProblem const& problem, Colouring const& c,
                            BlockSequence const& blocks, int colour);

// Word search: generators of exact lengths ℓ_0 < ℓ_1 < ... (rapidly
// increasing), generator n drawing letters from L_n.
struct GhjProblem {
  Mode             mode = Mode::Unsigned;
  int              k    = 1;
  std::vector<int> lengths;
  int              radius = 0;
};

struct WordWitness {
  WordSequence words;
  int          colour = 0;
};

struct GhjResult {
  std::optional<WordWitness> witness;
  SearchStats                stats;
};

// v_k-variable words of the given length over `letters` and the variables,
// in search order: symbols are ordered letters first (as given), then
// v_1, v_-1, v_2, v_-2, ...; words lexicographically, first place most
// significant.
std::vector<Word> candidate_words(std::span<Letter const> letters, int k, Mode mode,
                                  int length);

// Words y with dist_words(x, y) <= radius that are again v_k-variable
// words: only variable and zero-letter places move, by index steps.
std::vector<Word> word_ball(Word const& x, int radius);

GhjResult search_ghj(GhjProblem const& problem, Alphabet const& alphabet,
                     Colouring const& c, bool parallel = false);

struct WordEvidence {
  Word                element;
  int                 colour;
  std::optional<Word> neighbour;
};

struct WordVerifyReport {
  bool                      ok = false;
  std::string               message;
  std::optional<Word>       offending;
  std::vector<WordEvidence> evidence;
};

WordVerifyReport verify_words(GhjProblem const& problem, Alphabet const& alphabet,
                              Colouring const& c, WordSequence const& words, int colour);

// Pipeline over candidate Y = (y_0, ..., y_{2M-1}) with the given lengths;
// generator n uses letters of L_{min(n, generator_level)}. Each Y is tested
// on the family of all Z = decode_witness(Y, A, σ) where A runs over block
// sequences of `seq_length` elements of span(derive_B(Y)) and σ_{2m} over
// L_{min(2m, alphabet_level)}. The lifted colour is c(φ(Z), ψ(Z)) with
// alphabet_level + 1 matrix columns. radius 1 (signed) accepts colour j at
// Z when some Ã with ||φ(Z) - Ã|| <= 1 has c(Ã, ψ(Z)) = j.
struct PipelineProblem {
  Mode             mode = Mode::Unsigned;
  int              k    = 1;
  std::vector<int> lengths;
  int              generator_level = 0;
  int              alphabet_level  = 1;
  int              seq_length      = 1;
  int              radius          = 0;
  std::uint64_t    max_candidates  = 100000;

  int cols() const { return alphabet_level + 1; }
};

struct DerivedPair {
  WordSequence            y;
  BlockSequence           b;
  std::vector<PerfectSet> perfect_sets;  // P_0, ..., P_{cols-1}
  int                     colour = 0;
};

struct PipelineResult {
  std::optional<DerivedPair> found;
  SearchStats                stats;  // nodes = candidate Y tested
};

PipelineResult parametrized_pipeline(PipelineProblem const& problem, Colouring const& c,
                                     bool parallel = false);

struct PipelineSample {
  BlockSequence                a;
  std::vector<Letter>          sigmas;
  ParamMatrix                  matrix;
  int                          colour;
  std::optional<BlockSequence> approx;  // radius 1: Ã carrying the target colour
  bool                         ok;
};

struct PipelineReport {
  bool                        ok = false;
  std::string                 message;
  std::vector<PipelineSample> samples;
};

// Samples (A, (δ_i)) from [B] × ∏ P_i, decodes Z and checks φ(Z) = A,
// ψ(Z) = the δ matrix and the colour condition.
PipelineReport verify_pipeline(PipelineProblem const& problem, Colouring const& c,
                               DerivedPair const& found, int samples, std::uint64_t seed);

// Block sequences of `length` elements drawn from `elements` in block order.
std::vector<BlockSequence> block_sequences(std::span<BlockVector const> elements,
                                           int length);

// A block sequence Ã with seq_dist(a, Ã) <= 1, positions of ã_l inside
// `ranges[l]` = [lo, hi), and c(Ã, m) == colour; tries Ã = a first.
std::optional<BlockSequence> find_approximant(
    BlockSequence const& a, ParamMatrix const& m, Colouring const& c, int colour,
    std::span<std::pair<int, int> const> ranges);

}  // namespace finram
