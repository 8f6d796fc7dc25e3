#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "finram/block_vector.hpp"
#include "finram/encodings.hpp"
#include "finram/word.hpp"

// JSON forms of the domain types. Output is canonical: nlohmann's default
// object ordering sorts keys and dump() without indentation is compact, so
// equal values always serialize to equal bytes.
namespace finram::json_io {

using json = nlohmann::json;

// Defaults for fields an input document may omit.
struct Context {
  std::optional<int>  k;
  std::optional<Mode> mode;
};

json        to_json(BlockVector const& p);
BlockVector vector_from_json(json const& j, Context const& ctx = {});

json          to_json(BlockSequence const& s);
BlockSequence sequence_from_json(json const& j, Context const& ctx = {});

json       to_json(RealVector const& x);
RealVector real_vector_from_json(json const& j);

// Letters are bit arrays σ(0), σ(1), ...; output drops trailing zeros, so
// the zero letter is [].
json   to_json(Letter l);
Letter letter_from_json(json const& j);

json to_json(Word const& w);
// Without k in the document or context, k is the largest variable index.
Word word_from_json(json const& j, Context const& ctx = {});

json              to_json_words(std::span<Word const> ws);
std::vector<Word> words_from_json(json const& j, Context const& ctx = {});

// {"words": [...], "grades": [...]} or a bare array of words.
json         to_json(WordSequence const& ys);
WordSequence word_sequence_from_json(json const& j, Context const& ctx = {});

// {"levels": [[letter, ...], ...], "zero": []} or {"bitstrings": n}.
json     to_json(Alphabet const& a);
Alphabet alphabet_from_json(json const& j);

json         to_json(Substitution const& s);
Substitution substitution_from_json(json const& j);

json          to_json(Decomposition const& d);
Decomposition decomposition_from_json(json const& j);

json        to_json(ParamMatrix const& m);
ParamMatrix matrix_from_json(json const& j);

json       to_json(PerfectSet const& p);
PerfectSet perfect_set_from_json(json const& j);

// Canonical one-line serialization used for table keys and hashing.
std::string canonical(json const& j);

}  // namespace finram::json_io
