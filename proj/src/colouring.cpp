#include "finram/colouring.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "finram/error.hpp"
#include "finram/json_io.hpp"

namespace finram {

using nlohmann::json;

std::string_view to_string(Arity a) {
  switch (a) {
    case Arity::Vector: return "vector";
    case Arity::Word: return "word";
    case Arity::VectorMatrix: return "vector-matrix";
  }
  return "vector";
}

Arity parse_arity(std::string_view text) {
  if (text == "vector") return Arity::Vector;
  if (text == "word") return Arity::Word;
  if (text == "vector-matrix") return Arity::VectorMatrix;
  throw DomainError("unknown colouring arity '" + std::string(text) + "'");
}

namespace {

std::vector<std::string> const& families_for(Arity a) {
  static std::vector<std::string> const vector_families{
      "constant", "value-at-min-support", "support-size-mod", "min-position-mod",
      "weighted-sum-mod"};
  static std::vector<std::string> const word_families{"constant", "length-mod",
                                                      "first-variable-sign"};
  static std::vector<std::string> const pair_families{"constant", "matrix-bit",
                                                      "block-count-parity"};
  switch (a) {
    case Arity::Vector: return vector_families;
    case Arity::Word: return word_families;
    case Arity::VectorMatrix: return pair_families;
  }
  return vector_families;
}

int mod(long long v, int r) {
  long long m = v % r;
  return static_cast<int>(m < 0 ? m + r : m);
}

}  // namespace

std::uint64_t mix_hash(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  std::uint64_t z = h ^ seed;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

json pair_key(BlockSequence const& a, ParamMatrix const& m) {
  return {{"blocks", json_io::to_json(a)}, {"matrix", json_io::to_json(m)}};
}

Colouring::Colouring(Arity arity, int r, Rule rule) : arity_(arity), r_(r), rule_(rule) {
  if (r < 1 || r > 32) throw DomainError("colour count must lie in [1, 32]");
}

Colouring Colouring::family(Arity arity, int r, std::string name, int row, int col) {
  auto const& names = families_for(arity);
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    throw DomainError("no " + std::string(to_string(arity)) + " colouring family '"
                      + name + "'");
  }
  if (row < 0 || col < 0) throw DomainError("matrix-bit coordinates must be nonnegative");
  Colouring c(arity, r, Rule::Family);
  c.name_ = std::move(name);
  c.row_  = row;
  c.col_  = col;
  return c;
}

Colouring Colouring::table(Arity arity, int r, std::map<std::string, int> entries) {
  Colouring c(arity, r, Rule::Table);
  for (auto const& [key, colour] : entries) {
    if (colour < 0 || colour >= r) {
      throw DomainError("table colour " + std::to_string(colour) + " outside [0, "
                        + std::to_string(r) + ")");
    }
  }
  c.table_ = std::move(entries);
  return c;
}

Colouring Colouring::seeded_random(Arity arity, int r, std::uint64_t seed) {
  Colouring c(arity, r, Rule::Random);
  c.seed_ = seed;
  return c;
}

void Colouring::require(Arity a) const {
  if (a != arity_) {
    throw DomainError("colouring has arity " + std::string(to_string(arity_))
                      + ", applied to a " + std::string(to_string(a)));
  }
}

int Colouring::from_key(json const& element) const {
  auto const key = json_io::canonical(element);
  if (rule_ == Rule::Random) return static_cast<int>(mix_hash(key, seed_) % static_cast<std::uint64_t>(r_));
  auto it = table_.find(key);
  if (it == table_.end()) throw DomainError("colour table has no entry for " + key);
  return it->second;
}

int Colouring::operator()(BlockVector const& p) const {
  require(Arity::Vector);
  if (rule_ != Rule::Family) return from_key(json_io::to_json(p));
  if (name_ == "constant") return 0;
  if (name_ == "value-at-min-support") {
    int v = p.entries().front().value;
    int key = p.mode() == Mode::Signed ? (v < 0 ? 1 : 0) + 2 * (std::abs(v) - 1) : v - 1;
    return mod(key, r_);
  }
  if (name_ == "support-size-mod") return mod(static_cast<long long>(p.size()), r_);
  if (name_ == "min-position-mod") return mod(p.min_pos(), r_);
  long long sum = 0;
  for (auto const& e : p.entries()) sum += static_cast<long long>(e.pos + 1) * e.value;
  return mod(sum, r_);
}

int Colouring::operator()(Word const& w) const {
  require(Arity::Word);
  if (rule_ != Rule::Family) return from_key(json_io::to_json(w));
  if (name_ == "constant") return 0;
  if (name_ == "length-mod") return mod(static_cast<long long>(w.size()), r_);
  for (auto const& s : w.symbols()) {
    if (s.is_variable()) return mod(s.var < 0 ? 1 : 0, r_);
  }
  return 0;
}

int Colouring::operator()(BlockSequence const& a, ParamMatrix const& m) const {
  require(Arity::VectorMatrix);
  if (rule_ != Rule::Family) return from_key(pair_key(a, m));
  if (name_ == "constant") return 0;
  if (name_ == "matrix-bit") {
    bool bit = row_ < m.rows() && col_ < m.cols() && m.at(row_, col_);
    return mod(bit ? 1 : 0, r_);
  }
  return mod(static_cast<long long>(a.size() % 2), r_);
}

json Colouring::to_json() const {
  json j{{"arity", std::string(to_string(arity_))}, {"colours", r_}};
  switch (rule_) {
    case Rule::Family:
      j["family"] = name_;
      if (name_ == "matrix-bit") {
        j["row"] = row_;
        j["col"] = col_;
      }
      break;
    case Rule::Table: j["table"] = table_; break;
    case Rule::Random: j["seed"] = seed_; break;
  }
  return j;
}

Colouring Colouring::from_json(json const& j) {
  Arity const arity = parse_arity(j.value("arity", std::string("vector")));
  int const   r     = j.at("colours").get<int>();
  int const   rules = static_cast<int>(j.contains("family")) + static_cast<int>(j.contains("table"))
                    + static_cast<int>(j.contains("seed"));
  if (rules != 1) throw DomainError("a colouring needs exactly one of family, table, seed");
  if (j.contains("family")) {
    return family(arity, r, j.at("family").get<std::string>(), j.value("row", 0),
                  j.value("col", 0));
  }
  if (j.contains("table")) return table(arity, r, j.at("table").get<std::map<std::string, int>>());
  return seeded_random(arity, r, j.at("seed").get<std::uint64_t>());
}

}  // namespace finram
