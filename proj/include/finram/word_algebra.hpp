#pragma once

#include <optional>
#include <span>
#include <vector>

#include "finram/distance.hpp"
#include "finram/word.hpp"

// Variable words over a graded alphabet: substitution, tetris, reflection,
// spans, support parsing, the compatibility metric, and the halving map
// W_{Lv_±2k} -> W_{Lv_±k}.
namespace finram {

Word concat(Word const& x, Word const& y);

// x[λ]. The identity marker returns x; a tuple must have the arity for
// x's bound and mode and yields a variable-free word.
Word substitute(Word const& x, Substitution const& lambda);

// v_i -> v_{i-1} (i > 1), v_i -> v_{i+1} (i < -1), v_{±1} -> 0, letters fixed.
Word tetris_word(Word const& x);
Word tetris_word_pow(Word const& x, int j);

// v_i -> v_{-i}; signed mode only.
Word reflect_word(Word const& x);

// (-T)(x) = reflect(T(x)), iterated j times.
Word neg_tetris_pow(Word const& x, int j);

// 0 for a variable-free word, otherwise the largest |i| with v_i in x.
int variable_class(Word const& x);

// |x_n| > Σ_{i<n} |x_i| for every n.
bool is_rapidly_increasing(std::span<Word const> words);

// Evaluates ε_0 T^{j_0}(x_{n_0}[λ_0]) ⌢ ... ⌢ ε_l T^{j_l}(x_{n_l}[λ_l]).
// Letters in λ_i must lie in L_{grade(n_i)}; generator indices must be
// strictly increasing.
Word compose(WordSequence const& xs, Alphabet const& alphabet,
             Decomposition const& d);

// [X]_{Lv_k} (unsigned) or [X]_{Lv_±k} (signed): every compose result
// that is again a v_k-variable word. `max_segments` bounds the number of
// generators used (0 means no bound). Deduplicated, canonical order.
std::vector<Word> span_words(WordSequence const& xs, Alphabet const& alphabet,
                             int max_segments = 0);
std::vector<Word> span_words_serial(WordSequence const& xs,
                                    Alphabet const& alphabet,
                                    int             max_segments = 0);

// [X]_L: variable-free concatenations x_{n_0}[λ_0] ⌢ ... with λ_i from
// L_{grade(n_i)}.
std::vector<Word> span_letters(WordSequence const& xs, Alphabet const& alphabet,
                               int max_segments = 0);

// [X]_{(-T)}: like span_words but each segment is (-T)^{j}(x_n[λ]) and
// no separate sign is applied. Signed mode only.
std::vector<Word> span_negT(WordSequence const& xs, Alphabet const& alphabet,
                            int max_segments = 0);

// Recovers the canonical decomposition of x over ys, or nullopt when x is
// not in span_words(ys). Canonical segments: a segment holding variables
// has λ = v⃗ and its unique (ε, j); a variable-free segment has j = 0,
// ε = +1 and λ read off pointwise (zero letter for absent variables).
std::optional<Decomposition> parse_support(WordSequence const& ys,
                                           Alphabet const&     alphabet,
                                           Word const&         x);

// Every x_n parses against ys and max supp(x_n) < min supp(x_{n+1}).
bool is_block_subseq(std::span<Word const> xs, WordSequence const& ys,
                     Alphabet const& alphabet);

// Same length, same nonzero-letter positions, same letters there.
bool compatible(Word const& x, Word const& y);

// Symbol metric d(v_i, v_j) = |i - j|, d(v_i, 0) = |i|, taken as a sup over
// the positions outside L(x); infinite for incompatible words.
Distance dist_words(Word const& x, Word const& y);

// sup_n dist_words(x_n, y_n); infinite when the lengths differ.
Distance dist_seqs(std::span<Word const> xs, std::span<Word const> ys);

// Φ: W_{Lv_±2k} -> W_{Lv_±k}, v_i -> v_{trunc(i/2)} with v_0 read as the
// zero letter. Signed mode, even bound.
Word halve(Word const& x);

// Widens a tuple for bound k to bound 2k so that halving commutes with
// substitution: slot v_m receives the letter of v_{trunc(m/2)} and v_{±1}
// receives the zero letter.
Substitution widen_substitution(Substitution const& lambda, int k, Mode mode);

// compose(ỹ, d) with every exponent doubled and every tuple widened;
// halve(lift_double(ỹ, d)) == compose(halve(ỹ), d).
Word lift_double(WordSequence const& ytilde, Alphabet const& alphabet,
                 Decomposition const& d);

// Image of a sequence under halve, keeping grades.
WordSequence halve_sequence(WordSequence const& ytilde);

enum class Match { Direct, Reflected };

struct NegTApproximation {
  Word  z;
  Match matched;
};

// For x in span_words(ys), returns z in span_negT(ys) with d(x, z) <= 1
// (Direct) or d(-x, z) <= 1 (Reflected). Throws DomainError when x is
// not in the span.
NegTApproximation approx_negT(WordSequence const& ys, Alphabet const& alphabet,
                              Word const& x);

}  // namespace finram
