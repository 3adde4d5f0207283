#pragma once

// Batch runner: learner/language/text specs, run configs, the transformation
// corpus, the relation matrix and the describe view.

#include <fstream>
#include <iomanip>
#include <functional>
#include <sstream>

#include "cind/adversaries.hpp"
#include "cind/criteria.hpp"
#include "cind/json_io.hpp"
#include "cind/learner.hpp"
#include "cind/numbering.hpp"
#include "cind/transforms.hpp"
#include "cind/zoo.hpp"

namespace cind::harness {

using io::json;

/// Malformed input: exit code 2.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Bounds {
  std::size_t horizon = 24;
  std::size_t m = 16;
  Budget budget = 1000000;
  std::uint64_t seed = 0;
};

// ---------------------------------------------------------------------------
// Learner specs:  builtin:<name>[:<d0>,<d1>,...][*] | idx:<n> | file:<path>
// A trailing * takes the starred G-learner.

struct BuiltinInfo {
  std::string name;
  std::string doc;
  std::function<Learner(const FiniteSet&)> make;
};

inline const std::vector<BuiltinInfo>& builtins() {
  static const std::vector<BuiltinInfo> all{
      {"ind", "Sd: ind(D)", [](const FiniteSet&) { return zoo::ind_learner(); }},
      {"max", "Sd: max D as index", [](const FiniteSet&) { return zoo::max_learner(); }},
      {"zero-marker", "Sd: ind(D) once 0 is seen, N+ before", [](const FiniteSet&) { return zoo::zero_marker(); }},
      {"phase", "Psd: L_e until phi_e(0) halts within t, then L'_e", [](const FiniteSet&) { return zoo::phase_learner(); }},
      {"pair-component", "Td: first component of the datum", [](const FiniteSet&) { return zoo::pair_component(); }},
      {"td-identity", "Td: the datum as index", [](const FiniteSet&) { return zoo::td_identity(); }},
      {"td-singleton", "Td: ind({x})", [](const FiniteSet&) { return zoo::td_singleton(); }},
      {"td-pad-churn", "Td: pad(ind(L), x); argument L", [](const FiniteSet& l) { return zoo::td_pad_churn(l); }},
      {"self-describing", "Td: phi_x(0)", [](const FiniteSet&) { return self_describing_td(); }},
      {"it-max", "It: largest datum as index", [](const FiniteSet&) { return zoo::it_max(); }},
      {"it-ind-memory", "It: ind of the content kept in the pad payload", [](const FiniteSet&) { return zoo::it_ind_memory(); }},
      {"it-zero-marker", "It: zero-marker with the content in the pad payload",
       [](const FiniteSet&) { return zoo::it_zero_marker(); }},
      {"g-pad-churn", "G: pad(ind(content), sigma)", [](const FiniteSet&) { return zoo::g_pad_churn(); }},
      {"g-lagged", "G: ind of the content without the last symbol", [](const FiniteSet&) { return zoo::g_lagged(); }},
  };
  return all;
}

/// "3,5" or "{3,5}".
inline FiniteSet parse_set_list(std::string s) {
  if (s.size() >= 2 && s.front() == '{' && s.back() == '}') s = s.substr(1, s.size() - 2);
  FiniteSet d;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
      throw SchemaError("bad set element '" + item + "'");
    }
    d.insert(Nat(item));
  }
  return d;
}

inline Nat parse_nat_string(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) throw SchemaError("not a natural: " + s);
  return Nat(s);
}

inline Learner parse_learner(std::string spec, std::optional<OperatorKind> kind = std::nullopt) {
  bool starred = false;
  if (!spec.empty() && spec.back() == '*') {
    starred = true;
    spec.pop_back();
  }
  Learner h;
  if (spec.rfind("builtin:", 0) == 0) {
    std::string name = spec.substr(8), arg;
    if (auto c = name.find(':'); c != std::string::npos) {
      arg = name.substr(c + 1);
      name = name.substr(0, c);
    }
    const BuiltinInfo* found = nullptr;
    for (const auto& b : builtins()) {
      if (b.name == name) found = &b;
    }
    if (!found) throw SchemaError("unknown builtin learner: " + name);
    h = found->make(parse_set_list(arg));
    if (kind && *kind != h.kind) {
      throw SchemaError("builtin " + name + " is a " + std::string(to_string(h.kind)) + "-learner, not " +
                        std::string(to_string(*kind)));
    }
  } else if (spec.rfind("idx:", 0) == 0) {
    if (!kind) throw SchemaError("idx: learners need an operator");
    h = {ProgramIndex(parse_nat_string(spec.substr(4))), *kind, spec};
  } else if (spec.rfind("file:", 0) == 0) {
    if (!kind) throw SchemaError("file: learners need an operator");
    std::ifstream in(spec.substr(5));
    if (!in) throw SchemaError("cannot read " + spec.substr(5));
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      h = {index_of(parse_sexpr(ss.str())), *kind, spec};
    } catch (const ParseError& e) {
      throw SchemaError(e.what());
    }
  } else {
    throw SchemaError("learner spec must start with builtin:, idx: or file: (" + spec + ")");
  }
  return starred ? star(h) : h;
}

// ---------------------------------------------------------------------------
// Languages and texts

struct LanguageSpec {
  LanguageOracle oracle;
  Text canonical;
};

inline Symbol parse_symbol(const json& j) {
  if (j.is_string() && j.get<std::string>() == "#") return Symbol::pause();
  try {
    return Symbol::datum(io::to_nat(j));
  } catch (const DomainError& e) {
    throw SchemaError(std::string("bad symbol: ") + e.what());
  }
}

inline Seq parse_seq(const json& j) {
  if (!j.is_array()) throw SchemaError("expected an array of symbols");
  Seq s;
  for (const auto& x : j) s.push_back(parse_symbol(x));
  return s;
}

inline FiniteSet parse_set(const json& j) {
  if (!j.is_array()) throw SchemaError("expected an array of naturals");
  FiniteSet d;
  for (const auto& x : j) {
    try {
      d.insert(io::to_nat(x));
    } catch (const DomainError& e) {
      throw SchemaError(e.what());
    }
  }
  return d;
}

inline Nat json_nat(const json& j, const std::string& what) {
  try {
    return io::to_nat(j);
  } catch (const DomainError& e) {
    throw SchemaError(what + ": " + e.what());
  }
}

inline Text pair_stream(const Nat& e) {
  return function_text([e](std::size_t i) { return Symbol::datum(pair(e, Nat(i))); }, "T(i) = <" + e.str() + ", i>");
}

inline Text prefix_pairs(const Nat& e, const Nat& v) {
  Seq s;
  for (Nat x = 0; x <= v; ++x) s.push_back(Symbol::datum(pair(e, x)));
  return explicit_text(std::move(s));
}

/// {"finite": [..]} | {"c_index": n} | {"positives": true} | {"phase": e} | {"phase_prime": [e, v]}
inline LanguageSpec parse_language(const json& j, const Bounds& b) {
  if (!j.is_object() || j.size() != 1) throw SchemaError("language must be an object with one key");
  const std::string key = j.begin().key();
  const json& val = j.begin().value();
  if (key == "finite") {
    const FiniteSet d = parse_set(val);
    return {LanguageOracle::finite(d), canonical_text(d)};
  }
  if (key == "c_index") {
    const ProgramIndex c(json_nat(val, "c_index"));
    return {LanguageOracle::c_index(c, b.budget), canonical_text(c, b.budget)};
  }
  if (key == "positives") {
    return {LanguageOracle::predicate([](const Nat& x) { return x > 0; }, "N+"),
            canonical_text(programs::positives(), b.budget)};
  }
  if (key == "phase") {
    const Nat e = json_nat(val, "phase");
    return {zoo::phase_L(e), pair_stream(e)};
  }
  if (key == "phase_prime") {
    if (!val.is_array() || val.size() != 2) throw SchemaError("phase_prime takes [e, v]");
    const Nat e = json_nat(val[0], "phase_prime"), v = json_nat(val[1], "phase_prime");
    return {zoo::phase_L_prime(e, v), prefix_pairs(e, v)};
  }
  throw SchemaError("unknown language kind: " + key);
}

/// "canonical" | {"explicit": {"prefix": [..], "tail": s}} | {"periodic": {"prefix": [..], "cycle": [..]}}
/// | {"enumerator": e} | {"program": e} | {"interleave": {"text": spec, "x": n}}
/// | {"shuffle": {"text": spec, "seed": n, "block": k}}
inline Text parse_text(const json& j, const LanguageSpec& lang, const Bounds& b) {
  if (j.is_string()) {
    if (j.get<std::string>() == "canonical") return lang.canonical;
    throw SchemaError("unknown text: " + j.dump());
  }
  if (!j.is_object() || j.size() != 1) throw SchemaError("text must be \"canonical\" or an object with one key");
  const std::string key = j.begin().key();
  const json& val = j.begin().value();
  if (key == "explicit") {
    if (!val.is_object() || !val.contains("prefix")) throw SchemaError("explicit text needs a prefix");
    return explicit_text(parse_seq(val["prefix"]), val.contains("tail") ? parse_symbol(val["tail"]) : Symbol::pause());
  }
  if (key == "periodic") {
    if (!val.is_object() || !val.contains("cycle")) throw SchemaError("periodic text needs a cycle");
    const Seq cycle = parse_seq(val["cycle"]);
    if (cycle.empty()) throw SchemaError("periodic text needs a non-empty cycle");
    return periodic_text(val.contains("prefix") ? parse_seq(val["prefix"]) : Seq{}, cycle);
  }
  if (key == "enumerator") return text_from_enumerator(ProgramIndex(json_nat(val, "enumerator")));
  if (key == "program") return text_from_program(ProgramIndex(json_nat(val, "program")), b.budget);
  if (key == "interleave") {
    if (!val.is_object() || !val.contains("text") || !val.contains("x")) throw SchemaError("interleave needs text and x");
    try {
      return interleave_text(parse_text(val["text"], lang, b), json_nat(val["x"], "interleave"));
    } catch (const TextError& e) {
      throw SchemaError(e.what());
    }
  }
  if (key == "shuffle") {
    if (!val.is_object() || !val.contains("text")) throw SchemaError("shuffle needs a text");
    const std::uint64_t seed = val.contains("seed") ? static_cast<std::uint64_t>(json_nat(val["seed"], "seed")) : b.seed;
    const std::size_t block = val.contains("block") ? static_cast<std::size_t>(json_nat(val["block"], "block")) : 4;
    if (block == 0) throw SchemaError("shuffle block must be positive");
    return shuffled_text(parse_text(val["text"], lang, b), seed, block);
  }
  throw SchemaError("unknown text kind: " + key);
}

// ---------------------------------------------------------------------------
// run

struct RunConfig {
  std::string learner;
  std::optional<OperatorKind> op;
  std::vector<Flavor> flavors{Flavor::ExC};
  json language;
  std::vector<json> texts;  // empty: canonical plus a seeded shuffle of it
  Bounds bounds;
};

inline RunConfig parse_config(const json& j) {
  if (!j.is_object()) throw SchemaError("config must be a JSON object");
  static const std::vector<std::string> keys{"learner", "operator", "flavors", "language", "texts",
                                             "horizon", "m",        "budget",  "seed"};
  for (const auto& [k, _] : j.items()) {
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) throw SchemaError("unknown config key: " + k);
  }
  RunConfig c;
  if (!j.contains("learner") || !j["learner"].is_string()) throw SchemaError("config needs a learner string");
  c.learner = j["learner"].get<std::string>();
  try {
    if (j.contains("operator")) {
      if (!j["operator"].is_string()) throw SchemaError("operator must be a string");
      c.op = parse_operator(j["operator"].get<std::string>());
    }
    if (j.contains("flavors")) {
      if (!j["flavors"].is_array() || j["flavors"].empty()) throw SchemaError("flavors must be a non-empty array");
      c.flavors.clear();
      for (const auto& f : j["flavors"]) {
        if (!f.is_string()) throw SchemaError("flavor must be a string");
        c.flavors.push_back(parse_flavor(f.get<std::string>()));
      }
    }
  } catch (const DomainError& e) {
    throw SchemaError(e.what());
  }
  if (!j.contains("language")) throw SchemaError("config needs a language");
  c.language = j["language"];
  if (j.contains("texts")) {
    if (!j["texts"].is_array()) throw SchemaError("texts must be an array");
    for (const auto& t : j["texts"]) c.texts.push_back(t);
  }
  auto size = [&](const char* k, std::size_t& out) {
    if (!j.contains(k)) return;
    if (!j[k].is_number_unsigned() && !(j[k].is_number_integer() && j[k].get<std::int64_t>() >= 0)) {
      throw SchemaError(std::string(k) + " must be a natural");
    }
    out = j[k].get<std::size_t>();
  };
  size("horizon", c.bounds.horizon);
  size("m", c.bounds.m);
  std::size_t budget = c.bounds.budget, seed = c.bounds.seed;
  if (j.contains("budget") && j["budget"].is_number_float()) {
    const double d = j["budget"].get<double>();
    if (d < 1 || d > 1e15) throw SchemaError("budget out of range");
    budget = static_cast<std::size_t>(d);
  } else {
    size("budget", budget);
  }
  size("seed", seed);
  c.bounds.budget = budget;
  c.bounds.seed = seed;
  if (c.bounds.horizon == 0) throw SchemaError("horizon must be positive");
  return c;
}

struct RunOutput {
  std::vector<json> records;  // JSONL lines, verdict last
  Verdict aggregate;
};

inline RunOutput run(const RunConfig& c) {
  const Learner h = parse_learner(c.learner, c.op);
  const LanguageSpec lang = parse_language(c.language, c.bounds);
  std::vector<Text> texts;
  if (c.texts.empty()) {
    texts.push_back(lang.canonical);
    texts.push_back(shuffled_text(lang.canonical, c.bounds.seed));
  }
  for (const auto& t : c.texts) texts.push_back(parse_text(t, lang, c.bounds));
  RunOutput out;
  std::vector<Verdict> all;
  json per = json::array();
  for (std::size_t k = 0; k < texts.size(); ++k) {
    const Trace tr = run_trace(h, texts[k], c.bounds.horizon, c.bounds.budget);
    for (auto rec : io::trace_records(tr)) {
      json line;
      line["text"] = k;
      for (const auto& [key, v] : rec.items()) line[key] = v;
      out.records.push_back(std::move(line));
    }
    for (auto f : c.flavors) {
      all.push_back(check_restriction(f, tr, lang.oracle, c.bounds.m, c.bounds.budget));
      json v = io::verdict(all.back());
      v["text"] = k;
      v["text_description"] = texts[k].describe();
      per.push_back(std::move(v));
    }
  }
  out.aggregate = worst(all);
  json v;
  v["record"] = "verdict";
  v["learner"] = h.name;
  v["operator"] = to_string(h.kind);
  v["language"] = lang.oracle.name();
  const json agg = io::verdict(out.aggregate);
  for (const auto& [key, x] : agg.items()) v[key] = x;
  v["seed"] = c.bounds.seed;
  v["per_text"] = std::move(per);
  out.records.push_back(std::move(v));
  return out;
}

// ---------------------------------------------------------------------------
// Transformation corpus

struct CorpusCase {
  TransformKind kind;
  Learner original;
  std::string family;
  LanguageOracle language;
  std::vector<Text> texts;
};

inline Flavor before_flavor(TransformKind k) {
  switch (k) {
    case TransformKind::G2Psd:
    case TransformKind::It2Sd: return Flavor::ExC;
    default: return Flavor::BcC;
  }
}

inline Flavor after_flavor(TransformKind k) {
  return k == TransformKind::G2ItBc || k == TransformKind::G2PsdBc ? Flavor::BcC : Flavor::ExC;
}

/// Convergent e for the phase family: phi_e(0) = value after a few steps.
inline std::vector<std::pair<ProgramIndex, Nat>> phase_convergent() {
  using namespace dsl;
  return {{programs::constant(2), 2}, {programs::build(succ(succ(succ(pred(v("x")))))), 3}};
}

inline std::vector<ProgramIndex> phase_divergent() { return {programs::divergent(), programs::w_index({})}; }

inline std::vector<CorpusCase> transform_corpus(std::uint64_t seed = 0) {
  std::vector<CorpusCase> out;
  auto texts_of = [&](const Text& t) { return std::vector<Text>{shuffled_text(t, seed + 1, 3)}; };
  auto finite = [&](TransformKind k, const Learner& h, const std::string& fam, const FiniteSet& d) {
    out.push_back({k, h, fam, LanguageOracle::finite(d), texts_of(canonical_text(d))});
  };
  const Learner ind_s = star(zoo::ind_learner()), zm_s = star(zoo::zero_marker()), phase_s = star(zoo::phase_learner());

  for (const FiniteSet& d : {FiniteSet{3}, FiniteSet{1, 5}, FiniteSet{0, 4, 7}}) finite(TransformKind::G2Psd, ind_s, "finite", d);
  for (const FiniteSet& d : {FiniteSet{2}, FiniteSet{1, 5}}) finite(TransformKind::G2Psd, zoo::g_lagged(), "finite", d);
  for (const FiniteSet& d : {FiniteSet{0}, FiniteSet{0, 3}}) finite(TransformKind::G2Psd, zm_s, "zero-union", d);

  for (const FiniteSet& d : {FiniteSet{}, FiniteSet{3}, FiniteSet{1, 5}, FiniteSet{0, 4, 7}}) {
    finite(TransformKind::It2Sd, zoo::it_ind_memory(), "finite", d);
  }
  for (const FiniteSet& d : {FiniteSet{0}, FiniteSet{0, 2}, FiniteSet{0, 1, 5}}) {
    finite(TransformKind::It2Sd, zoo::it_zero_marker(), "zero-union", d);
  }

  for (const FiniteSet& d : {FiniteSet{3}, FiniteSet{1, 5}, FiniteSet{0, 4, 7}}) {
    finite(TransformKind::G2ItBc, zoo::g_pad_churn(), "padding-churn", d);
  }
  finite(TransformKind::G2ItBc, ind_s, "finite", {2, 6});
  finite(TransformKind::G2ItBc, zm_s, "zero-union", {0, 4});
  for (const auto& [e, v] : phase_convergent()) {
    const Text t = prefix_pairs(e.value, v);
    out.push_back({TransformKind::G2ItBc, phase_s, "phase-convergent", zoo::phase_L_prime(e.value, v),
                   {t, shuffled_text(t, seed + 2, 3)}});
  }
  for (const auto& e : phase_divergent()) {
    out.push_back({TransformKind::G2ItBc, phase_s, "phase-divergent", zoo::phase_L(e.value), {pair_stream(e.value)}});
  }

  for (const FiniteSet& d : {FiniteSet{}, FiniteSet{1}, FiniteSet{0, 2}}) {
    finite(TransformKind::G2PsdBc, zoo::g_pad_churn(), "padding-churn", d);
  }
  finite(TransformKind::G2PsdBc, ind_s, "finite", {1, 2});
  for (const FiniteSet& d : {FiniteSet{0}, FiniteSet{0, 1}}) finite(TransformKind::G2PsdBc, zm_s, "zero-union", d);

  for (const FiniteSet& d : {FiniteSet{3}, FiniteSet{1, 5}, FiniteSet{0, 4, 7}, FiniteSet{0, 2}}) {
    finite(TransformKind::TdEx, zoo::td_pad_churn(d), d.count(0) ? "zero-union" : "padding-churn", d);
  }
  finite(TransformKind::TdEx, zoo::td_singleton(), "finite", {4});
  return out;
}

struct CaseResult {
  TransformKind kind;
  std::string learner;
  std::string family;
  std::string language;
  Verdict original;
  Verdict transformed;

  bool applicable() const { return original.satisfied(); }
  bool preserved() const { return !original.satisfied() || transformed.satisfied(); }
};

inline std::vector<CaseResult> run_corpus(const std::vector<CorpusCase>& cases, const Bounds& b) {
  std::map<std::pair<int, Nat>, Learner> cache;
  std::vector<CaseResult> out;
  for (const auto& c : cases) {
    const auto key = std::make_pair(static_cast<int>(c.kind), c.original.program.value);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, apply_transform(c.kind, c.original).learner).first;
    const Learner& t = it->second;
    CaseResult r{c.kind, c.original.name, c.family, c.language.name(), {}, {}};
    r.original = learns({c.original.kind, {before_flavor(c.kind)}}, c.original, c.language, c.texts, b.horizon, b.budget, b.m)
                     .aggregate;
    r.transformed = learns({t.kind, {after_flavor(c.kind)}}, t, c.language, c.texts, b.horizon, b.budget, b.m).aggregate;
    out.push_back(std::move(r));
  }
  return out;
}

inline json case_json(const CaseResult& r) {
  return {{"transform", to_string(r.kind)},
          {"learner", r.learner},
          {"family", r.family},
          {"language", r.language},
          {"original", to_string(r.original.kind)},
          {"transformed", to_string(r.transformed.kind)},
          {"preserved", r.preserved()}};
}

// ---------------------------------------------------------------------------
// Relation matrix

struct EdgeSpec {
  std::string id;
  std::string relation;
  std::string evidence;  // transformation | attack | zoo-inclusion | property | not-implemented
  bool in_scope = true;
  std::string pointer;
};

inline std::vector<EdgeSpec> default_edges() {
  return {
      {"g2psd", "G Ex_C = Psd Ex_C", "transformation", true, "in-scope: G = Psd (p(D, t) construction)"},
      {"it2sd", "It Ex_C <= Sd Ex_C", "transformation", true, "in-scope: It <= Sd (sort_# construction)"},
      {"g2it-bc", "It Bc_C = G Bc_C", "transformation", true, "in-scope: padding argument It-Bc = G-Bc"},
      {"g2psd-bc", "Psd Bc_C = G Bc_C", "transformation", true, "in-scope: Psd-Bc = G-Bc (predicate Q)"},
      {"td-ex", "Td Ex_C = Td Bc_C", "transformation", true, "in-scope: Td Ex = Td Bc (minimal-element search)"},
      {"td-cind", "Td CInd Ex_C = Td Ex_C", "property", true, "in-scope: Td CInd = Td Ex (interleaved texts)"},
      {"td-sep", "Td Ex_C < Sd Ex_C", "attack", true, "in-scope: Td weakness ({{0},{1},{0,1}} attack)"},
      {"it-sep", "Sd Ex_C not <= It Ex_W", "attack", true, "in-scope: Sd \\ It (zero-marker + locking sequence)"},
      {"krt-sd", "Psd tau(CInd) Ex_C not <= Sd Bc_W", "attack", true, "in-scope: Psd \\ Sd-Bc_W (phase learner + KRT)"},
      {"ort-td-total", "total Td Ex_C < Td Ex_C", "attack", true, "in-scope: Td totality (ORT adversary)"},
      {"flavors", "Ex_C <= Ex_W, Ex_C <= Bc_C <= Bc_W", "zoo-inclusion", true, "in-scope: trivial inclusions (solid lines)"},
      {"operators", "Td, It, Sd <= Psd <= G", "zoo-inclusion", true, "in-scope: trivial inclusions via starred learners"},
      {"td-exw-g-exc", "Td Ex_W not <= G Ex_C", "not-implemented", false,
       "paper_map out-of-scope: Td Ex_W \\ G Ex_C (delayed-diagonalization text)"},
      {"sd-total", "total Sd < Sd", "not-implemented", false,
       "paper_map out-of-scope: Sd totality separation (self-learning ORT class)"},
      {"it-total", "total It < It", "not-implemented", false,
       "paper_map out-of-scope: It totality separation (self-learning ORT class)"},
      {"it-exc-g-cind-bcc", "It Ex_C not <= G CInd Bc_C", "not-implemented", false,
       "paper_map out-of-scope: It Ex_C \\ G CInd Bc_C"},
      {"td-cind-tau-bcc", "Td CInd not <= tau(CInd) Bc_C", "not-implemented", false,
       "paper_map out-of-scope: Td CInd \\ tau(CInd) Bc_C"},
      {"sd-bcc-g-exc", "Sd Bc_C not <= G Ex_C", "not-implemented", false,
       "paper_map out-of-scope: Sd Bc_C \\ G Ex_C (interleaved-sequence construction)"},
      {"totalization", "learner totalization", "not-implemented", false,
       "paper_map out-of-scope: external totalization; totality is a precondition here"},
  };
}

struct EdgeResult {
  EdgeSpec spec;
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t inconclusive = 0;
  std::vector<std::string> details;

  std::string status() const {
    if (!spec.in_scope) return "not-implemented";
    if (fail > 0) return "fail";
    if (inconclusive > 0 || pass == 0) return "Inconclusive";
    return "pass";
  }
  void count(VerdictKind k, const std::string& what) {
    if (k == VerdictKind::Satisfied) {
      ++pass;
    } else if (k == VerdictKind::Falsified) {
      ++fail;
      details.push_back("fail: " + what);
    } else {
      ++inconclusive;
      details.push_back("Inconclusive: " + what);
    }
  }
};

namespace detail {

inline void zoo_learns(EdgeResult& r, const Learner& h, Flavor f, const LanguageOracle& L, const std::vector<Text>& texts,
                       const Bounds& b) {
  const auto res = learns({h.kind, {f}}, h, L, texts, b.horizon, b.budget, b.m);
  r.count(res.aggregate.kind, h.name + " " + std::string(to_string(f)) + " on " + L.name());
}

inline void attack_edge(EdgeResult& r, AttackKind k, const Bounds& b) {
  AttackBounds ab;
  ab.horizon = b.horizon;
  ab.budget = b.budget;
  ab.m = b.m;
  for (const auto& h : opponents(k)) {
    const AttackWitness w = run_attack(k, h, ab);
    if (!w.conclusive) {
      r.count(VerdictKind::Inconclusive, w.opponent + ": " + w.note);
    } else {
      r.count(replay_validates(w, h) ? VerdictKind::Satisfied : VerdictKind::Falsified,
              w.opponent + ": replay did not validate");
    }
  }
}

inline void transformation_edge(EdgeResult& r, TransformKind k, const std::vector<CaseResult>& results) {
  for (const auto& c : results) {
    if (c.kind != k) continue;
    const std::string what = c.learner + " on " + c.language;
    if (c.original.kind == VerdictKind::Inconclusive) {
      r.count(VerdictKind::Inconclusive, what + " (original)");
    } else if (c.applicable()) {
      r.count(c.transformed.kind, what);
    }
  }
}

}  // namespace detail

inline std::vector<EdgeResult> run_matrix(const std::vector<EdgeSpec>& edges, const Bounds& b) {
  std::optional<std::vector<CaseResult>> corpus;
  auto corpus_results = [&]() -> const std::vector<CaseResult>& {
    if (!corpus) corpus = run_corpus(transform_corpus(b.seed), b);
    return *corpus;
  };
  std::vector<EdgeResult> out;
  for (const auto& e : edges) {
    EdgeResult r{e};
    if (!e.in_scope) {
      out.push_back(std::move(r));
      continue;
    }
    const auto text_pair = [&](const Text& t) { return std::vector<Text>{t, shuffled_text(t, b.seed + 3, 3)}; };
    if (e.evidence == "transformation") {
      detail::transformation_edge(r, parse_transform(e.id), corpus_results());
    } else if (e.id == "td-cind") {
      // Td learners that Ex_C-learn L: every interleaved text x^(inf) keeps CInd and Ex_C
      const std::vector<std::pair<Learner, FiniteSet>> cases{
          {td_bc_to_td_ex(zoo::td_pad_churn({1, 5})).learner, {1, 5}},
          {td_bc_to_td_ex(zoo::td_pad_churn({0, 2})).learner, {0, 2}},
          {zoo::td_singleton(), {4}},
      };
      for (const auto& [h, d] : cases) {
        const LanguageOracle L = LanguageOracle::finite(d);
        const Text base = canonical_text(d);
        for (const auto& x : d) {
          const Text t = interleave_text(base, x);
          const auto res = learns({h.kind, {Flavor::CInd, Flavor::ExC}}, h, L, {t}, b.horizon, b.budget, b.m);
          r.count(res.aggregate.kind, h.name + " on " + t.describe());
        }
      }
    } else if (e.id == "td-sep") {
      detail::attack_edge(r, AttackKind::TdSep, b);
      for (const FiniteSet& d : {FiniteSet{0}, FiniteSet{1}, FiniteSet{0, 1}}) {
        detail::zoo_learns(r, zoo::ind_learner(), Flavor::ExC, LanguageOracle::finite(d), text_pair(canonical_text(d)), b);
      }
    } else if (e.id == "it-sep") {
      detail::attack_edge(r, AttackKind::ItSep, b);
      for (const FiniteSet& d : {FiniteSet{0}, FiniteSet{0, 3}, FiniteSet{0, 1, 6}}) {
        detail::zoo_learns(r, zoo::zero_marker(), Flavor::ExC, LanguageOracle::finite(d), text_pair(canonical_text(d)), b);
      }
      detail::zoo_learns(r, zoo::zero_marker(), Flavor::ExC,
                         LanguageOracle::predicate([](const Nat& x) { return x > 0; }, "N+"),
                         {canonical_text(programs::positives(), b.budget)}, b);
    } else if (e.id == "krt-sd") {
      detail::attack_edge(r, AttackKind::KrtSd, b);
      for (const auto& [ev, v] : phase_convergent()) {
        detail::zoo_learns(r, zoo::phase_learner(), Flavor::ExC, zoo::phase_L_prime(ev.value, v),
                           text_pair(prefix_pairs(ev.value, v)), b);
      }
      for (const auto& ev : phase_divergent()) {
        detail::zoo_learns(r, zoo::phase_learner(), Flavor::ExC, zoo::phase_L(ev.value), {pair_stream(ev.value)}, b);
      }
    } else if (e.id == "ort-td-total") {
      detail::attack_edge(r, AttackKind::OrtTdTotal, b);
    } else if (e.id == "flavors") {
      // W flavors run on the same learner with its C-indices converted to W-indices
      const std::vector<std::pair<Learner, FiniteSet>> cases{
          {zoo::ind_learner(), {2, 5}}, {zoo::zero_marker(), {0, 3}}, {zoo::g_lagged(), {1, 4}}};
      for (const auto& [h, d] : cases) {
        const LanguageOracle L = LanguageOracle::finite(d);
        for (auto f : {Flavor::ExC, Flavor::BcC}) detail::zoo_learns(r, h, f, L, text_pair(canonical_text(d)), b);
        for (auto f : {Flavor::ExW, Flavor::BcW}) {
          detail::zoo_learns(r, zoo::with_w_indices(h), f, L, text_pair(canonical_text(d)), b);
        }
      }
    } else if (e.id == "operators") {
      const std::vector<Learner> ls{zoo::ind_learner(), zoo::zero_marker(), zoo::phase_learner(), zoo::it_ind_memory(),
                                    zoo::td_singleton()};
      for (const auto& h : ls) {
        const Text t = shuffled_text(canonical_text(FiniteSet{0, 2, 5}), b.seed + 4, 3);
        const Trace a = run_trace(h, t, b.horizon, b.budget), g = run_trace(star(h), t, b.horizon, b.budget);
        r.count(same_hypotheses(a, g) ? VerdictKind::Satisfied : VerdictKind::Falsified,
                h.name + " differs from its starred G-learner");
      }
    } else {
      throw DomainError("no driver for edge " + e.id);
    }
    out.push_back(std::move(r));
  }
  return out;
}

inline json matrix_json(const std::vector<EdgeResult>& rs, const Bounds& b) {
  json edges = json::array();
  for (const auto& r : rs) {
    json j{{"id", r.spec.id},         {"relation", r.spec.relation}, {"evidence", r.spec.evidence},
           {"status", r.status()},    {"pass", r.pass},             {"fail", r.fail},
           {"Inconclusive", r.inconclusive}, {"pointer", r.spec.pointer}};
    if (!r.details.empty()) j["details"] = r.details;
    edges.push_back(std::move(j));
  }
  return {{"bounds", {{"horizon", b.horizon}, {"m", b.m}, {"budget", b.budget}, {"seed", b.seed}}}, {"edges", edges}};
}

inline std::string matrix_table(const std::vector<EdgeResult>& rs) {
  std::ostringstream os;
  os << std::left << std::setw(18) << "edge" << std::setw(16) << "status" << std::setw(6) << "pass" << std::setw(6)
     << "fail" << std::setw(8) << "Inconc" << "relation / pointer\n";
  for (const auto& r : rs) {
    os << std::setw(18) << r.spec.id << std::setw(16) << r.status() << std::setw(6) << r.pass << std::setw(6) << r.fail
       << std::setw(8) << r.inconclusive << r.spec.relation;
    if (!r.spec.in_scope) os << "  [" << r.spec.pointer << "]";
    os << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// describe

/// Recognizable shapes of a term: pad, ind, smn.
inline std::optional<std::string> shape_of(const Nat& code) {
  if (auto p = try_unpad(code)) return "pad(" + p->first.str() + ", " + p->second.str() + ")";
  auto t = try_decode(code);
  if (!t) return std::nullopt;
  const Node& n = **t;
  if (n.kind == Kind::Prim && n.op == PrimOp::SetMember && n.kids[0]->kind == Kind::Lit && n.kids[1]->kind == Kind::Var &&
      n.kids[1]->index == 0) {
    return "ind(" + set_str(decode_set(n.kids[0]->lit)) + ")";
  }
  if (n.kind == Kind::Eval && n.kids[0]->kind == Kind::Lit && n.kids[1]->kind == Kind::Pair &&
      n.kids[1]->kids[0]->kind == Kind::Lit && n.kids[1]->kids[1]->kind == Kind::Var) {
    return "smn(" + n.kids[0]->lit.str() + ", " + n.kids[1]->kids[0]->lit.str() + ")";
  }
  return std::nullopt;
}

/// Literal program indices the term runs: first arguments of eval, evalb, mk-smn and mk-pad.
inline std::vector<Nat> embedded_programs(const Term& t) {
  std::vector<Nat> out;
  std::function<void(const Term&)> walk = [&](const Term& n) {
    const bool runs = n->kind == Kind::Eval || n->kind == Kind::EvalBounded ||
                      (n->kind == Kind::Prim && (n->op == PrimOp::MkSmn || n->op == PrimOp::MkPad));
    if (runs && !n->kids.empty() && n->kids[0]->kind == Kind::Lit &&
        std::find(out.begin(), out.end(), n->kids[0]->lit) == out.end()) {
      out.push_back(n->kids[0]->lit);
    }
    for (const auto& k : n->kids) walk(k);
  };
  walk(t);
  return out;
}

inline std::string describe(const ProgramIndex& e, std::size_t m, Budget b) {
  std::ostringstream os;
  const Term t = e.term();
  os << "index: " << e.str() << "\n";
  os << "term: " << to_sexpr(t) << "\n";
  if (auto s = shape_of(e.value)) os << "shape: " << *s << "\n";
  if (auto p = try_unpad(e.value)) {
    os << "unpad: index " << p->first.str() << ", payload " << p->second.str() << "\n";
    if (auto s = shape_of(p->first)) os << "unpad index shape: " << *s << "\n";
  }
  const auto emb = embedded_programs(t);
  for (const auto& x : emb) {
    os << "embedded program: " << x.str();
    if (auto s = shape_of(x)) os << " = " << *s;
    os << "\n";
  }
  bool boolean = true;
  FiniteSet members;
  os << "probes on [0, " << m << "):";
  for (std::size_t x = 0; x < m; ++x) {
    const auto r = eval(e, Nat(x), b);
    if (!r.is_halted()) {
      os << " " << x << ":_|_";
      boolean = false;
      continue;
    }
    os << " " << x << ":" << r.value().str();
    if (r.value() > 1) boolean = false;
    if (r.value() == 1) members.insert(Nat(x));
  }
  os << "\n";
  os << "boolean-total on [0, " << m << "): " << (boolean ? "yes" : "no") << "\n";
  if (boolean) {
    os << "membership:";
    for (std::size_t x = 0; x < m; ++x) os << " " << x << (members.count(Nat(x)) ? ":in" : ":out");
    os << "\n";
  }
  return os.str();
}

}  // namespace cind::harness
