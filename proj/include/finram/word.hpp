#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "finram/block_vector.hpp"

namespace finram {

// A letter is a finitely supported 0/1 sequence packed into 64 bits (bit i
// is σ(i)). The empty sequence is the usual zero letter. Its level is the
// least n with support in [0, n].
struct Letter {
  std::uint64_t bits = 0;

  constexpr int level() const noexcept {
    return bits == 0 ? 0 : 63 - __builtin_clzll(bits);
  }
  constexpr bool bit(int i) const noexcept {
    return i >= 0 && i < 64 && (bits >> i & 1u);
  }

  friend auto operator<=>(Letter const&, Letter const&) = default;
};

inline constexpr Letter kZeroLetter{};

// Graded alphabet L_0 ⊆ L_1 ⊆ ... ⊆ L_max; the zero letter (empty
// bitstring) must belong to L_0. Levels above max_level() repeat the top
// level.
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::vector<Letter>> levels);

  // L_n = all bitstrings supported in [0, n], for n <= max_level.
  static Alphabet bitstrings(int max_level);

  int  max_level() const noexcept { return static_cast<int>(levels_.size()) - 1; }
  static constexpr Letter zero() noexcept { return kZeroLetter; }

  std::span<Letter const> level(int n) const;
  bool                    contains(int n, Letter letter) const;

  std::vector<std::vector<Letter>> const& levels() const noexcept { return levels_; }

 private:
  std::vector<std::vector<Letter>> levels_;
};

// Either a letter or a variable v_i (i != 0; negative only in signed mode).
struct Symbol {
  int    var = 0;
  Letter letter;

  static constexpr Symbol variable(int i) { return Symbol{i, Letter{}}; }
  static constexpr Symbol of(Letter l) { return Symbol{0, l}; }

  constexpr bool is_variable() const noexcept { return var != 0; }

  friend auto operator<=>(Symbol const&, Symbol const&) = default;
};

// A nonempty word over letters and the variables v_{±1}, ..., v_{±k}.
class Word {
 public:
  Word(int k, Mode mode, std::vector<Symbol> symbols);

  int  k() const noexcept { return k_; }
  Mode mode() const noexcept { return mode_; }
  std::span<Symbol const> symbols() const noexcept { return symbols_; }
  std::size_t size() const noexcept { return symbols_.size(); }
  Symbol const& operator[](std::size_t i) const { return symbols_[i]; }

  friend bool operator==(Word const&, Word const&) = default;

  // Canonical order: shorter first, then lexicographic by symbols.
  friend std::strong_ordering operator<=>(Word const& a, Word const& b);

 private:
  int                 k_;
  Mode                mode_;
  std::vector<Symbol> symbols_;
};

struct WordHash {
  std::size_t operator()(Word const& w) const noexcept;
};

// Either the identity marker v⃗ or a letter tuple. Unsigned tuples are
// (λ_1, ..., λ_k); signed tuples are (λ_{-k}, ..., λ_{-1}, λ_1, ..., λ_k).
class Substitution {
 public:
  static Substitution identity() { return Substitution(); }
  static Substitution letters(std::vector<Letter> tuple) {
    Substitution s;
    s.tuple_ = std::move(tuple);
    return s;
  }

  bool is_identity() const noexcept { return !tuple_.has_value(); }
  std::vector<Letter> const& tuple() const { return *tuple_; }

  friend bool operator==(Substitution const&, Substitution const&) = default;

 private:
  std::optional<std::vector<Letter>> tuple_;
};

// Tuple length for a substitution into words of bound k.
std::size_t substitution_arity(int k, Mode mode);

// Index into a substitution tuple for variable v_i.
std::size_t substitution_slot(int k, Mode mode, int var);

// One piece ε T^j(x_n[λ]) of a span element.
struct Segment {
  int          generator = 0;
  int          sign      = 1;
  int          exponent  = 0;
  Substitution subst     = Substitution::identity();

  friend bool operator==(Segment const&, Segment const&) = default;
};

struct Decomposition {
  std::vector<Segment> segments;

  // supp_X(x): the generator indices in increasing order.
  std::vector<int> support() const;

  friend bool operator==(Decomposition const&, Decomposition const&) = default;
};

// A rapidly increasing sequence of v_k-variable words (every word's largest
// variable magnitude is exactly k). Each word carries a grade: the index
// whose alphabet level L_grade constrains substitutions into it. Grades
// default to 0, 1, 2, ... and let subsequences keep their original indices.
class WordSequence {
 public:
  explicit WordSequence(std::vector<Word> words, std::vector<int> grades = {});

  std::span<Word const> words() const noexcept { return words_; }
  std::size_t size() const noexcept { return words_.size(); }
  Word const& operator[](std::size_t i) const { return words_[i]; }
  int grade(std::size_t i) const { return grades_[i]; }
  std::span<int const> grades() const noexcept { return grades_; }

  int  k() const noexcept { return words_.front().k(); }
  Mode mode() const noexcept { return words_.front().mode(); }

  friend bool operator==(WordSequence const&, WordSequence const&) = default;

 private:
  std::vector<Word> words_;
  std::vector<int>  grades_;
};

// Human-readable form, e.g. "v2 101 0 v-1": letters print as bit strings
// σ(0)σ(1)..., the zero letter as "0".
std::string to_string(Word const& w);

}  // namespace finram
