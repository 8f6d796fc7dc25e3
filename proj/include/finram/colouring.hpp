#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "finram/block_vector.hpp"
#include "finram/encodings.hpp"
#include "finram/word.hpp"

namespace finram {

enum class Arity : std::uint8_t { Vector, Word, VectorMatrix };

std::string_view to_string(Arity a);
Arity            parse_arity(std::string_view text);

// A finite colouring c into r colours. Rules:
//
//   family   a built-in rule, by name:
//              vector:        constant, value-at-min-support,
//                             support-size-mod, min-position-mod,
//                             weighted-sum-mod
//              word:          constant, length-mod, first-variable-sign
//              vector-matrix: constant, matrix-bit (row, col),
//                             block-count-parity
//   table    explicit colours keyed by the canonical JSON of the element;
//            a missing key is a DomainError
//   random   FNV-1a over the canonical JSON, xor seed, splitmix64, mod r
//
// Evaluation is pure, so one colouring can be shared across threads.
class Colouring {
 public:
  static Colouring family(Arity arity, int r, std::string name, int row = 0, int col = 0);
  static Colouring table(Arity arity, int r, std::map<std::string, int> entries);
  static Colouring seeded_random(Arity arity, int r, std::uint64_t seed);

  Arity arity() const noexcept { return arity_; }
  int   colours() const noexcept { return r_; }

  int operator()(BlockVector const& p) const;
  int operator()(Word const& w) const;
  int operator()(BlockSequence const& a, ParamMatrix const& m) const;

  nlohmann::json     to_json() const;
  static Colouring   from_json(nlohmann::json const& j);

  friend bool operator==(Colouring const&, Colouring const&) = default;

 private:
  enum class Rule : std::uint8_t { Family, Table, Random };

  Colouring(Arity arity, int r, Rule rule);
  void require(Arity a) const;
  int  from_key(nlohmann::json const& element) const;

  Arity                      arity_;
  int                        r_;
  Rule                       rule_;
  std::string                name_;
  int                        row_  = 0;
  int                        col_  = 0;
  std::uint64_t              seed_ = 0;
  std::map<std::string, int> table_;
};

// The stated mixer: FNV-1a 64 over the bytes, xor seed, splitmix64 finaliser.
std::uint64_t mix_hash(std::string_view bytes, std::uint64_t seed);

// Canonical JSON used as the table key / hash input for a vector-matrix pair.
nlohmann::json pair_key(BlockSequence const& a, ParamMatrix const& m);

}  // namespace finram
