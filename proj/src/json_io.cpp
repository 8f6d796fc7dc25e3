#include "finram/json_io.hpp"

#include <algorithm>
#include <cstdlib>

#include "finram/error.hpp"

namespace finram::json_io {

namespace {

int resolve_k(json const& j, Context const& ctx, char const* what) {
  if (j.contains("k")) return j.at("k").get<int>();
  if (ctx.k) return *ctx.k;
  throw DomainError(std::string(what) + " needs k (in the document or via --k)");
}

Mode resolve_mode(json const& j, Context const& ctx) {
  if (j.contains("mode")) return parse_mode(j.at("mode").get<std::string>());
  return ctx.mode.value_or(Mode::Unsigned);
}

}  // namespace

json to_json(BlockVector const& p) {
  json entries = json::array();
  for (auto const& e : p.entries()) entries.push_back({e.pos, e.value});
  return {{"k", p.k()}, {"mode", std::string(to_string(p.mode()))}, {"entries", entries}};
}

BlockVector vector_from_json(json const& j, Context const& ctx) {
  std::vector<std::pair<int, int>> pairs;
  for (auto const& e : j.at("entries")) {
    pairs.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  }
  std::sort(pairs.begin(), pairs.end());
  for (std::size_t i = 1; i < pairs.size(); ++i) {
    if (pairs[i].first == pairs[i - 1].first) throw DomainError("repeated position");
  }
  return BlockVector::from_pairs(resolve_k(j, ctx, "vector"), resolve_mode(j, ctx),
                                 std::move(pairs));
}

json to_json(BlockSequence const& s) {
  json out = json::array();
  for (auto const& p : s) out.push_back(to_json(p));
  return out;
}

BlockSequence sequence_from_json(json const& j, Context const& ctx) {
  std::vector<BlockVector> out;
  for (auto const& e : j) out.push_back(vector_from_json(e, ctx));
  return BlockSequence(std::move(out));
}

json to_json(RealVector const& x) {
  json entries = json::array();
  for (auto const& e : x.entries()) entries.push_back({e.pos, e.value});
  return {{"entries", entries}};
}

RealVector real_vector_from_json(json const& j) {
  std::vector<RealEntry> out;
  for (auto const& e : j.at("entries")) {
    out.push_back({e.at(0).get<int>(), e.at(1).get<double>()});
  }
  return RealVector(std::move(out));
}

json to_json(Letter l) {
  json bits = json::array();
  if (l.bits != 0) {
    for (int i = 0; i <= l.level(); ++i) bits.push_back(l.bit(i) ? 1 : 0);
  }
  return bits;
}

Letter letter_from_json(json const& j) {
  if (!j.is_array()) throw DomainError("letters are arrays of bits");
  Letter l;
  for (std::size_t i = 0; i < j.size(); ++i) {
    int b = j[i].get<int>();
    if (b != 0 && b != 1) throw DomainError("letter bits must be 0 or 1");
    if (b == 1) {
      if (i >= 64) throw DomainError("letters are limited to 64 bits");
      l.bits |= std::uint64_t{1} << i;
    }
  }
  return l;
}

json to_json(Word const& w) {
  json symbols = json::array();
  for (auto const& s : w.symbols()) {
    if (s.is_variable()) {
      symbols.push_back({{"var", s.var}});
    } else {
      symbols.push_back({{"letter", to_json(s.letter)}});
    }
  }
  return {{"k", w.k()}, {"mode", std::string(to_string(w.mode()))}, {"symbols", symbols}};
}

Word word_from_json(json const& j, Context const& ctx) {
  std::vector<Symbol> symbols;
  int top = 0;
  for (auto const& s : j.at("symbols")) {
    if (s.contains("var") == s.contains("letter")) {
      throw DomainError("a symbol is exactly one of {\"var\": i} or {\"letter\": bits}");
    }
    if (s.contains("var")) {
      int v = s.at("var").get<int>();
      if (v == 0) throw DomainError("variable index 0 is not allowed");
      symbols.push_back(Symbol::variable(v));
      top = std::max(top, std::abs(v));
    } else {
      symbols.push_back(Symbol::of(letter_from_json(s.at("letter"))));
    }
  }
  int k = j.contains("k") ? j.at("k").get<int>() : ctx.k.value_or(top);
  return Word(k, resolve_mode(j, ctx), std::move(symbols));
}

json to_json_words(std::span<Word const> ws) {
  json out = json::array();
  for (auto const& w : ws) out.push_back(to_json(w));
  return out;
}

std::vector<Word> words_from_json(json const& j, Context const& ctx) {
  std::vector<Word> out;
  for (auto const& w : j) out.push_back(word_from_json(w, ctx));
  return out;
}

json to_json(WordSequence const& ys) {
  return {{"words", to_json_words(ys.words())},
          {"grades", std::vector<int>(ys.grades().begin(), ys.grades().end())}};
}

WordSequence word_sequence_from_json(json const& j, Context const& ctx) {
  if (j.is_array()) return WordSequence(words_from_json(j, ctx));
  std::vector<int> grades;
  if (j.contains("grades")) grades = j.at("grades").get<std::vector<int>>();
  return WordSequence(words_from_json(j.at("words"), ctx), std::move(grades));
}

json to_json(Alphabet const& a) {
  json levels = json::array();
  for (auto const& level : a.levels()) {
    json lv = json::array();
    for (auto l : level) lv.push_back(to_json(l));
    levels.push_back(lv);
  }
  return {{"levels", levels}, {"zero", json::array()}};
}

Alphabet alphabet_from_json(json const& j) {
  if (j.contains("bitstrings")) return Alphabet::bitstrings(j.at("bitstrings").get<int>());
  if (j.contains("zero") && letter_from_json(j.at("zero")) != kZeroLetter) {
    throw DomainError("the zero letter is the all-zero bitstring");
  }
  std::vector<std::vector<Letter>> levels;
  for (auto const& lv : j.at("levels")) {
    std::vector<Letter> level;
    for (auto const& l : lv) level.push_back(letter_from_json(l));
    levels.push_back(std::move(level));
  }
  return Alphabet(std::move(levels));
}

json to_json(Substitution const& s) {
  if (s.is_identity()) return "identity";
  json out = json::array();
  for (auto l : s.tuple()) out.push_back(to_json(l));
  return out;
}

Substitution substitution_from_json(json const& j) {
  if (j.is_string()) {
    if (j.get<std::string>() != "identity") throw DomainError("unknown substitution");
    return Substitution::identity();
  }
  std::vector<Letter> tuple;
  for (auto const& l : j) tuple.push_back(letter_from_json(l));
  return Substitution::letters(std::move(tuple));
}

json to_json(Decomposition const& d) {
  json segs = json::array();
  for (auto const& s : d.segments) {
    segs.push_back({{"generator", s.generator},
                    {"sign", s.sign},
                    {"exponent", s.exponent},
                    {"subst", to_json(s.subst)}});
  }
  return {{"segments", segs}};
}

Decomposition decomposition_from_json(json const& j) {
  Decomposition d;
  for (auto const& s : j.at("segments")) {
    Segment seg;
    seg.generator = s.at("generator").get<int>();
    seg.sign      = s.value("sign", 1);
    seg.exponent  = s.value("exponent", 0);
    if (s.contains("subst")) seg.subst = substitution_from_json(s.at("subst"));
    d.segments.push_back(std::move(seg));
  }
  return d;
}

json to_json(ParamMatrix const& m) {
  json bits = json::array();
  for (auto [n, i] : m.ones()) bits.push_back({n, i});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"bits", bits}};
}

ParamMatrix matrix_from_json(json const& j) {
  ParamMatrix m(j.at("rows").get<int>(), j.at("cols").get<int>());
  for (auto const& b : j.at("bits")) m.set(b.at(0).get<int>(), b.at(1).get<int>(), true);
  return m;
}

json to_json(PerfectSet const& p) {
  json forced = json::array();
  for (auto [n, b] : p.forced) forced.push_back({n, b});
  return {{"index", p.index}, {"length", p.length}, {"forced", forced}, {"classes", p.classes}};
}

PerfectSet perfect_set_from_json(json const& j) {
  PerfectSet p;
  p.index  = j.at("index").get<int>();
  p.length = j.at("length").get<int>();
  for (auto const& f : j.at("forced")) p.forced.emplace_back(f.at(0).get<int>(), f.at(1).get<int>());
  p.classes = j.at("classes").get<std::vector<std::vector<int>>>();
  return p;
}

std::string canonical(json const& j) { return j.dump(); }

}  // namespace finram::json_io
