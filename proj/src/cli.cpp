#include "finram/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "finram/colouring.hpp"
#include "finram/encodings.hpp"
#include "finram/error.hpp"
#include "finram/json_io.hpp"
#include "finram/search.hpp"
#include "finram/vector_algebra.hpp"
#include "finram/word_algebra.hpp"

namespace finram::cli {

namespace {

using json = nlohmann::json;
namespace jio = json_io;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string mode = "unsigned";
  std::optional<int> k;
  int         N       = 4;
  int         m       = 2;
  int         colours = 2;
  int         radius  = 0;
  std::string family;
  std::string table;
  std::uint64_t seed  = 1;
  long        limit   = -1;
  bool        parallel = false;
  std::string format  = "json";
  std::string space   = "vectors";
  std::string kind    = "words";

  std::string blocks, words, alphabet, a, b, sigmas, lengths, witness;
  int         power = 1;
  int         cols  = 2;
  int         row = 0, col = 0;
  int         alphabet_level = 1, generator_level = 0, seq_length = 1;
  int         samples = 64;
  std::uint64_t max_candidates = 100000;
  bool        enumerate = false;
};

json read_value(std::string const& text, std::istream& in) {
  std::string body;
  if (text == "-") {
    body.assign(std::istreambuf_iterator<char>(in), {});
  } else if (!text.empty() && text[0] == '@') {
    std::ifstream f(text.substr(1));
    if (!f) throw UsageError("cannot read " + text.substr(1));
    body.assign(std::istreambuf_iterator<char>(f), {});
  } else {
    body = text;
  }
  try {
    return json::parse(body);
  } catch (json::parse_error const& e) {
    throw UsageError(std::string("invalid JSON: ") + e.what());
  }
}

json need(std::string const& value, char const* flag, std::istream& in) {
  if (value.empty()) throw UsageError(std::string(flag) + " is required");
  return read_value(value, in);
}

jio::Context context(Options const& o) { return {o.k, parse_mode(o.mode)}; }

int need_k(Options const& o) {
  if (!o.k) throw UsageError("--k is required");
  return *o.k;
}

Colouring colouring_from(Options const& o, Arity arity, std::istream& in) {
  if (!o.table.empty()) {
    json t = read_value(o.table[0] == '@' || o.table == "-" ? o.table : "@" + o.table, in);
    if (t.contains("table") || t.contains("family") || t.contains("seed")) {
      if (!t.contains("arity")) t["arity"] = std::string(to_string(arity));
      if (!t.contains("colours")) t["colours"] = o.colours;
      return Colouring::from_json(t);
    }
    return Colouring::table(arity, o.colours, t.get<std::map<std::string, int>>());
  }
  if (o.family.empty()) throw UsageError("one of --family or --table is required");
  if (o.family == "random") return Colouring::seeded_random(arity, o.colours, o.seed);
  return Colouring::family(arity, o.colours, o.family, o.row, o.col);
}

void emit(Options const& o, std::ostream& out, json const& j) {
  (void)o;
  out << j.dump() << '\n';
}

// Streams a list either as one document or as JSON lines.
void emit_list(Options const& o, std::ostream& out, json header, std::vector<json> items) {
  std::size_t const total = items.size();
  bool const truncated = o.limit >= 0 && static_cast<std::size_t>(o.limit) < total;
  if (truncated) items.resize(static_cast<std::size_t>(o.limit));
  header["count"]     = total;
  header["truncated"] = truncated;
  if (o.format == "jsonl") {
    out << header.dump() << '\n';
    for (auto const& it : items) out << it.dump() << '\n';
    return;
  }
  header["elements"] = std::move(items);
  out << header.dump() << '\n';
}

json stats_json(SearchStats const& s) { return {{"nodes", s.nodes}, {"pruned", s.pruned}}; }

int cmd_span(Options const& o, std::istream& in, std::ostream& out) {
  std::vector<json> items;
  if (o.space == "words") {
    auto ys    = jio::word_sequence_from_json(need(o.words, "--words", in), context(o));
    auto alpha = jio::alphabet_from_json(need(o.alphabet, "--alphabet", in));
    std::vector<Word> span_elems;
    if (o.kind == "words") {
      span_elems = o.parallel ? span_words(ys, alpha) : span_words_serial(ys, alpha);
    } else if (o.kind == "letters") {
      span_elems = span_letters(ys, alpha);
    } else if (o.kind == "negT") {
      span_elems = span_negT(ys, alpha);
    } else {
      throw UsageError("--kind must be words, letters or negT");
    }
    for (auto const& w : span_elems) items.push_back(jio::to_json(w));
    emit_list(o, out, {{"space", "words"}, {"kind", o.kind}}, std::move(items));
    return kOk;
  }
  auto blocks = jio::sequence_from_json(need(o.blocks, "--blocks", in), context(o));
  auto elems  = o.parallel ? span(blocks) : span_serial(blocks);
  for (auto const& p : elems) items.push_back(jio::to_json(p));
  emit_list(o, out, {{"space", "vectors"}}, std::move(items));
  return kOk;
}

json distance_json(Distance d) {
  return d.is_infinite() ? json("inf") : json(d.value());
}

int cmd_dist(Options const& o, std::istream& in, std::ostream& out) {
  json a = need(o.a, "--a", in);
  json b = need(o.b, "--b", in);
  if (o.space == "words") {
    if (a.is_array()) {
      auto xs = jio::words_from_json(a, context(o));
      auto ys = jio::words_from_json(b, context(o));
      emit(o, out, {{"distance", distance_json(dist_seqs(xs, ys))}});
    } else {
      auto x = jio::word_from_json(a, context(o));
      auto y = jio::word_from_json(b, context(o));
      emit(o, out, {{"compatible", compatible(x, y)}, {"distance", distance_json(dist_words(x, y))}});
    }
    return kOk;
  }
  if (a.is_array()) {
    auto xs = jio::sequence_from_json(a, context(o));
    auto ys = jio::sequence_from_json(b, context(o));
    emit(o, out, {{"distance", distance_json(seq_dist(xs, ys))}});
  } else {
    auto p = jio::vector_from_json(a, context(o));
    auto q = jio::vector_from_json(b, context(o));
    emit(o, out, {{"distance", linf_dist(p, q)}});
  }
  return kOk;
}

int cmd_tetris(Options const& o, std::istream& in, std::ostream& out) {
  if (o.space == "words") {
    json w = need(o.words, "--words", in);
    auto apply = [&](Word const& x) { return jio::to_json(tetris_word_pow(x, o.power)); };
    if (w.is_array()) {
      json res = json::array();
      for (auto const& x : jio::words_from_json(w, context(o))) res.push_back(apply(x));
      emit(o, out, {{"result", res}});
    } else {
      emit(o, out, {{"result", apply(jio::word_from_json(w, context(o)))}});
    }
    return kOk;
  }
  json v = need(o.blocks, "--blocks", in);
  if (v.is_array()) {
    json res = json::array();
    for (auto const& p : jio::sequence_from_json(v, context(o))) {
      res.push_back(jio::to_json(tetris_pow(p, o.power)));
    }
    emit(o, out, {{"result", res}});
  } else {
    emit(o, out, {{"result", jio::to_json(tetris_pow(jio::vector_from_json(v, context(o)), o.power))}});
  }
  return kOk;
}

int cmd_encode(Options const& o, std::istream& in, std::ostream& out) {
  json w   = need(o.words, "--words", in);
  auto xs  = w.is_array() ? jio::words_from_json(w, context(o))
                          : jio::words_from_json(w.at("words"), context(o));
  emit(o, out, {{"phi", jio::to_json(phi_encode(xs))}, {"psi", jio::to_json(psi_encode(xs, o.cols))}});
  return kOk;
}

std::vector<Letter> letters_from(json const& j) {
  std::vector<Letter> out;
  for (auto const& l : j) out.push_back(jio::letter_from_json(l));
  return out;
}

int cmd_decode(Options const& o, std::istream& in, std::ostream& out) {
  auto ys     = jio::word_sequence_from_json(need(o.words, "--words", in), context(o));
  auto a      = jio::sequence_from_json(need(o.blocks, "--blocks", in), {ys.k(), ys.mode()});
  auto sigmas = letters_from(need(o.sigmas, "--sigmas", in));
  auto zs     = decode_witness(ys, a, sigmas);
  emit(o, out, {{"z", jio::to_json_words(zs)},
                {"phi", jio::to_json(phi_encode(zs))},
                {"psi", jio::to_json(psi_encode(zs, o.cols))}});
  return kOk;
}

int cmd_derive_b(Options const& o, std::istream& in, std::ostream& out) {
  auto ys = jio::word_sequence_from_json(need(o.words, "--words", in), context(o));
  emit(o, out, {{"B", jio::to_json(derive_B(ys))}});
  return kOk;
}

int cmd_perfect_sets(Options const& o, std::istream& in, std::ostream& out) {
  auto ys  = jio::word_sequence_from_json(need(o.words, "--words", in), context(o));
  json res = json::array();
  for (int i = 0; i < o.cols; ++i) {
    auto ps = perfect_set(ys, i);
    json j  = jio::to_json(ps);
    j["count"] = std::uint64_t{1} << ps.classes.size();
    if (o.enumerate) j["members"] = ps.enumerate();
    res.push_back(std::move(j));
  }
  emit(o, out, {{"perfect_sets", res}});
  return kOk;
}

json problem_json(SearchProblem const& p) {
  return {{"mode", std::string(to_string(p.mode))}, {"k", p.k}, {"N", p.N}, {"m", p.m},
          {"radius", p.radius}};
}

SearchProblem problem_from(json const& j) {
  return {parse_mode(j.at("mode").get<std::string>()), j.at("k").get<int>(),
          j.at("N").get<int>(), j.at("m").get<int>(), j.value("radius", 0)};
}

json ghj_problem_json(GhjProblem const& p) {
  return {{"mode", std::string(to_string(p.mode))}, {"k", p.k}, {"lengths", p.lengths},
          {"radius", p.radius}};
}

GhjProblem ghj_problem_from(json const& j) {
  return {parse_mode(j.at("mode").get<std::string>()), j.at("k").get<int>(),
          j.at("lengths").get<std::vector<int>>(), j.value("radius", 0)};
}

json pipeline_problem_json(PipelineProblem const& p) {
  return {{"mode", std::string(to_string(p.mode))},
          {"k", p.k},
          {"lengths", p.lengths},
          {"generator_level", p.generator_level},
          {"alphabet_level", p.alphabet_level},
          {"seq_length", p.seq_length},
          {"radius", p.radius},
          {"max_candidates", p.max_candidates}};
}

PipelineProblem pipeline_problem_from(json const& j) {
  PipelineProblem p;
  p.mode            = parse_mode(j.at("mode").get<std::string>());
  p.k               = j.at("k").get<int>();
  p.lengths         = j.at("lengths").get<std::vector<int>>();
  p.generator_level = j.value("generator_level", 0);
  p.alphabet_level  = j.value("alphabet_level", 1);
  p.seq_length      = j.value("seq_length", 1);
  p.radius          = j.value("radius", 0);
  p.max_candidates  = j.value("max_candidates", std::uint64_t{100000});
  return p;
}

std::vector<int> lengths_from(Options const& o, std::istream& in) {
  return need(o.lengths, "--lengths", in).get<std::vector<int>>();
}

int cmd_search(Options const& o, std::istream& in, std::ostream& out) {
  if (o.space == "words") {
    GhjProblem p{parse_mode(o.mode), need_k(o), lengths_from(o, in), o.radius};
    auto alpha = jio::alphabet_from_json(need(o.alphabet, "--alphabet", in));
    auto c     = colouring_from(o, Arity::Word, in);
    auto res   = search_ghj(p, alpha, c, o.parallel);
    json j{{"kind", "words"},
           {"problem", ghj_problem_json(p)},
           {"alphabet", jio::to_json(alpha)},
           {"colouring", c.to_json()},
           {"stats", stats_json(res.stats)},
           {"result", res.witness ? "found" : "exhausted"}};
    if (res.witness) {
      j["witness"] = {{"words", jio::to_json_words(res.witness->words.words())},
                      {"colour", res.witness->colour}};
    }
    emit(o, out, j);
    return res.witness ? kOk : kExhausted;
  }
  SearchProblem p{parse_mode(o.mode), need_k(o), o.N, o.m, o.radius};
  auto c   = colouring_from(o, Arity::Vector, in);
  auto res = search_blocks(p, c, o.parallel);
  json j{{"kind", "blocks"},
         {"problem", problem_json(p)},
         {"colouring", c.to_json()},
         {"stats", stats_json(res.stats)},
         {"result", res.witness ? "found" : "exhausted"}};
  if (res.witness) {
    j["witness"] = {{"blocks", jio::to_json(res.witness->blocks)}, {"colour", res.witness->colour}};
  }
  emit(o, out, j);
  return res.witness ? kOk : kExhausted;
}

json pipeline_report_json(PipelineReport const& r) {
  json samples = json::array();
  for (auto const& s : r.samples) {
    json j{{"a", jio::to_json(s.a)},
           {"colour", s.colour},
           {"ok", s.ok},
           {"sigmas", json::array()}};
    for (auto l : s.sigmas) j["sigmas"].push_back(jio::to_json(l));
    if (s.approx) j["approx"] = jio::to_json(*s.approx);
    samples.push_back(std::move(j));
  }
  return {{"ok", r.ok}, {"message", r.message}, {"samples", samples.size()}};
}

DerivedPair derived_from(json const& j, jio::Context const& ctx) {
  DerivedPair d{jio::word_sequence_from_json(j.at("Y"), ctx),
                jio::sequence_from_json(j.at("B"), ctx),
                {},
                j.at("colour").get<int>()};
  for (auto const& p : j.at("perfect_sets")) d.perfect_sets.push_back(jio::perfect_set_from_json(p));
  return d;
}

int cmd_pipeline(Options const& o, std::istream& in, std::ostream& out) {
  PipelineProblem p;
  p.mode            = parse_mode(o.mode);
  p.k               = need_k(o);
  p.lengths         = lengths_from(o, in);
  p.generator_level = o.generator_level;
  p.alphabet_level  = o.alphabet_level;
  p.seq_length      = o.seq_length;
  p.radius          = o.radius;
  p.max_candidates  = o.max_candidates;
  auto c   = colouring_from(o, Arity::VectorMatrix, in);
  auto res = parametrized_pipeline(p, c, o.parallel);
  json j{{"kind", "pipeline"},
         {"problem", pipeline_problem_json(p)},
         {"colouring", c.to_json()},
         {"stats", stats_json(res.stats)},
         {"result", res.found ? "found" : "exhausted"}};
  if (!res.found) {
    emit(o, out, j);
    return kExhausted;
  }
  auto const& d = *res.found;
  j["Y"]        = jio::to_json(d.y);
  j["B"]        = jio::to_json(d.b);
  j["colour"]   = d.colour;
  j["perfect_sets"] = json::array();
  for (auto const& ps : d.perfect_sets) j["perfect_sets"].push_back(jio::to_json(ps));
  auto report       = verify_pipeline(p, c, d, o.samples, o.seed);
  j["verification"] = pipeline_report_json(report);
  emit(o, out, j);
  return report.ok ? kOk : kDomain;
}

int cmd_verify(Options const& o, std::istream& in, std::ostream& out) {
  json w = need(o.witness, "--witness", in);
  if (w.value("result", "") != "found") throw DomainError("document holds no witness");
  auto const c    = Colouring::from_json(w.at("colouring"));
  auto const kind = w.at("kind").get<std::string>();
  json       res;
  bool       ok = false;
  if (kind == "blocks") {
    auto p      = problem_from(w.at("problem"));
    auto blocks = jio::sequence_from_json(w.at("witness").at("blocks"), {p.k, p.mode});
    auto r      = verify_witness(p, c, blocks, w.at("witness").at("colour").get<int>());
    ok          = r.ok;
    res = {{"ok", r.ok}, {"message", r.message}, {"checked", r.evidence.size()}};
    if (r.offending) res["offending"] = jio::to_json(*r.offending);
    json ev = json::array();
    for (auto const& e : r.evidence) {
      json x{{"element", jio::to_json(e.element)}, {"colour", e.colour}};
      if (e.neighbour) x["neighbour"] = jio::to_json(*e.neighbour);
      ev.push_back(std::move(x));
    }
    res["evidence"] = std::move(ev);
  } else if (kind == "words") {
    auto p     = ghj_problem_from(w.at("problem"));
    auto alpha = jio::alphabet_from_json(w.at("alphabet"));
    auto words = WordSequence(jio::words_from_json(w.at("witness").at("words"), {p.k, p.mode}));
    auto r     = verify_words(p, alpha, c, words, w.at("witness").at("colour").get<int>());
    ok         = r.ok;
    res = {{"ok", r.ok}, {"message", r.message}, {"checked", r.evidence.size()}};
    if (r.offending) res["offending"] = jio::to_json(*r.offending);
  } else if (kind == "pipeline") {
    auto p = pipeline_problem_from(w.at("problem"));
    auto d = derived_from(w, {p.k, p.mode});
    auto r = verify_pipeline(p, c, d, o.samples, o.seed);
    ok     = r.ok;
    res    = pipeline_report_json(r);
  } else {
    throw UsageError("unknown witness kind '" + kind + "'");
  }
  emit(o, out, res);
  return ok ? kOk : kDomain;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--mode", o.mode, "unsigned or signed")->check(CLI::IsMember({"unsigned", "signed"}));
  sub->add_option("--k", o.k, "magnitude / variable bound");
  sub->add_option("--format", o.format, "json or jsonl")->check(CLI::IsMember({"json", "jsonl"}));
}

void add_space(CLI::App* sub, Options& o) {
  sub->add_option("--space", o.space, "vectors or words")->check(CLI::IsMember({"vectors", "words"}));
}

void add_colouring(CLI::App* sub, Options& o) {
  sub->add_option("--colours", o.colours, "number of colours r");
  sub->add_option("--family", o.family, "built-in colouring family, or 'random'");
  sub->add_option("--table", o.table, "colouring table file");
  sub->add_option("--seed", o.seed, "seed (random colourings, sampling); default 1");
  sub->add_option("--row", o.row, "row for matrix-bit");
  sub->add_option("--col", o.col, "column for matrix-bit");
  sub->add_option("--radius", o.radius, "approximation radius, 0 or 1");
  sub->add_flag("--parallel", o.parallel, "explore roots in parallel");
}

}  // namespace

int run(std::vector<std::string> args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"finite Ramsey toolkit for FIN_k, FIN_±k and variable words", "finram"};
  app.require_subcommand(1);
  Options o;

  auto* span_cmd = app.add_subcommand("span", "enumerate a span");
  add_common(span_cmd, o);
  add_space(span_cmd, o);
  span_cmd->add_option("--blocks", o.blocks, "block sequence JSON");
  span_cmd->add_option("--words", o.words, "word sequence JSON");
  span_cmd->add_option("--alphabet", o.alphabet, "alphabet JSON");
  span_cmd->add_option("--kind", o.kind, "words, letters or negT");
  span_cmd->add_option("--limit", o.limit, "emit at most this many elements");
  span_cmd->add_flag("--parallel", o.parallel, "use the parallel kernel");

  auto* dist_cmd = app.add_subcommand("dist", "distance between vectors, words or sequences");
  add_common(dist_cmd, o);
  add_space(dist_cmd, o);
  dist_cmd->add_option("--a", o.a, "first argument JSON");
  dist_cmd->add_option("--b", o.b, "second argument JSON");

  auto* tetris_cmd = app.add_subcommand("tetris", "apply T^j");
  add_common(tetris_cmd, o);
  add_space(tetris_cmd, o);
  tetris_cmd->add_option("--blocks", o.blocks, "vector or sequence JSON");
  tetris_cmd->add_option("--words", o.words, "word or word list JSON");
  tetris_cmd->add_option("--power", o.power, "exponent j (default 1)");

  auto* encode_cmd = app.add_subcommand("encode", "phi and psi of a word sequence");
  add_common(encode_cmd, o);
  encode_cmd->add_option("--words", o.words, "word sequence JSON");
  encode_cmd->add_option("--cols", o.cols, "matrix columns");

  auto* decode_cmd = app.add_subcommand("decode", "decode a witness Z from Y, A and sigmas");
  add_common(decode_cmd, o);
  decode_cmd->add_option("--words", o.words, "Y as word sequence JSON");
  decode_cmd->add_option("--blocks", o.blocks, "A as block sequence JSON");
  decode_cmd->add_option("--sigmas", o.sigmas, "letters sigma_0, sigma_2, ...");
  decode_cmd->add_option("--cols", o.cols, "matrix columns");

  auto* derive_cmd = app.add_subcommand("derive-b", "block sequence B from Y");
  add_common(derive_cmd, o);
  derive_cmd->add_option("--words", o.words, "Y as word sequence JSON");

  auto* perfect_cmd = app.add_subcommand("perfect-sets", "constraint records P_0 .. P_{cols-1}");
  add_common(perfect_cmd, o);
  perfect_cmd->add_option("--words", o.words, "Y as word sequence JSON");
  perfect_cmd->add_option("--cols", o.cols, "number of sets");
  perfect_cmd->add_flag("--enumerate", o.enumerate, "list the satisfying strings");

  auto* search_cmd = app.add_subcommand("search", "search for a Ramsey witness");
  add_common(search_cmd, o);
  add_space(search_cmd, o);
  add_colouring(search_cmd, o);
  search_cmd->add_option("--N", o.N, "position bound");
  search_cmd->add_option("--m", o.m, "witness length");
  search_cmd->add_option("--alphabet", o.alphabet, "alphabet JSON (words)");
  search_cmd->add_option("--lengths", o.lengths, "generator lengths JSON (words)");

  auto* verify_cmd = app.add_subcommand("verify", "check a search or pipeline result");
  add_common(verify_cmd, o);
  verify_cmd->add_option("--witness", o.witness, "search/pipeline output JSON");
  verify_cmd->add_option("--samples", o.samples, "pipeline samples");
  verify_cmd->add_option("--seed", o.seed, "sampling seed; default 1");

  auto* pipeline_cmd = app.add_subcommand("pipeline", "parametrized pipeline");
  add_common(pipeline_cmd, o);
  add_colouring(pipeline_cmd, o);
  pipeline_cmd->add_option("--lengths", o.lengths, "generator lengths JSON (even count)");
  pipeline_cmd->add_option("--alphabet-level", o.alphabet_level, "letter level for sigmas");
  pipeline_cmd->add_option("--generator-level", o.generator_level, "letter level inside Y");
  pipeline_cmd->add_option("--seq-length", o.seq_length, "blocks per A");
  pipeline_cmd->add_option("--samples", o.samples, "verification samples");
  pipeline_cmd->add_option("--max-candidates", o.max_candidates, "candidate Y budget");

  auto* selftest_cmd = app.add_subcommand("selftest", "run the embedded invariant suite");
  add_common(selftest_cmd, o);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (CLI::ParseError const& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (span_cmd->parsed()) return cmd_span(o, in, out);
    if (dist_cmd->parsed()) return cmd_dist(o, in, out);
    if (tetris_cmd->parsed()) return cmd_tetris(o, in, out);
    if (encode_cmd->parsed()) return cmd_encode(o, in, out);
    if (decode_cmd->parsed()) return cmd_decode(o, in, out);
    if (derive_cmd->parsed()) return cmd_derive_b(o, in, out);
    if (perfect_cmd->parsed()) return cmd_perfect_sets(o, in, out);
    if (search_cmd->parsed()) return cmd_search(o, in, out);
    if (verify_cmd->parsed()) return cmd_verify(o, in, out);
    if (pipeline_cmd->parsed()) return cmd_pipeline(o, in, out);
    if (selftest_cmd->parsed()) {
      json report = selftest();
      emit(o, out, report);
      return report.at("ok").get<bool>() ? kOk : kDomain;
    }
  } catch (UsageError const& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (DomainError const& e) {
    err << "error: " << e.what() << '\n';
    return kDomain;
  } catch (json::exception const& e) {
    err << "usage error: malformed input: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace finram::cli
