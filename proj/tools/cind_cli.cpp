// cind: run, transform, attack, matrix, describe.
// Exit codes: 0 success, 1 falsified where a pass was expected, 2 usage or schema error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "cind/cind.hpp"

using namespace cind;
using harness::json;
using harness::SchemaError;

namespace {

struct Common {
  std::optional<std::size_t> horizon, m;
  std::optional<double> budget;
  std::optional<std::uint64_t> seed;
  std::string out;

  void add(CLI::App* app) {
    app->add_option("--horizon", horizon, "trace horizon");
    app->add_option("--budget", budget, "evaluation budget per call")->check(CLI::Range(1.0, 1e15));
    app->add_option("--m", m, "domain bound for decision checks");
    app->add_option("--seed", seed, "seed for shuffled texts");
    app->add_option("--out", out, "output file (stdout when omitted)");
  }
  void apply(harness::Bounds& b) const {
    if (horizon) b.horizon = *horizon;
    if (m) b.m = *m;
    if (budget) b.budget = static_cast<Budget>(*budget);
    if (seed) b.seed = *seed;
  }
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON in ") + path + ": " + e.what());
  }
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw SchemaError("cannot write " + path);
  out << text;
}

std::optional<OperatorKind> operator_of(const std::string& s) {
  if (s.empty()) return std::nullopt;
  try {
    return parse_operator(s);
  } catch (const DomainError& e) {
    throw SchemaError(e.what());
  }
}

AttackBounds parse_bounds(const std::string& s, AttackBounds b) {
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw SchemaError("bounds entries are key=value: " + item);
    const std::string k = item.substr(0, eq);
    double v = 0;
    try {
      std::size_t used = 0;
      v = std::stod(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1 || v < 0) throw std::invalid_argument("x");
    } catch (const std::exception&) {
      throw SchemaError("bad bound value: " + item);
    }
    const auto n = static_cast<std::size_t>(v);
    if (k == "horizon") b.horizon = n;
    else if (k == "budget") b.budget = n;
    else if (k == "m") b.m = n;
    else if (k == "t_max") b.t_max = n;
    else if (k == "view") b.view = n;
    else if (k == "m_max") b.m_max = n;
    else if (k == "search_budget") b.search_budget = n;
    else throw SchemaError("unknown bound: " + k);
  }
  return b;
}

int cmd_run(const std::string& config, const std::string& learner, const std::string& op, const Common& c) {
  harness::RunConfig cfg = harness::parse_config(read_json(config));
  if (!learner.empty()) cfg.learner = learner;
  if (auto k = operator_of(op)) cfg.op = k;
  c.apply(cfg.bounds);
  const auto out = harness::run(cfg);
  std::string text;
  for (const auto& r : out.records) text += r.dump() + "\n";
  emit(c.out, text);
  std::cerr << "verdict: " << to_string(out.aggregate.kind) << "\n";
  return out.aggregate.falsified() ? 1 : 0;
}

int cmd_transform(const std::string& kind, const std::string& learner, const std::string& op, const std::string& config,
                  const Common& c) {
  TransformKind k;
  try {
    k = parse_transform(kind);
  } catch (const DomainError& e) {
    throw SchemaError(e.what());
  }
  if (learner.empty()) throw SchemaError("transform needs --learner");
  const Learner h = harness::parse_learner(learner, operator_of(op));
  if (h.kind != input_kind(k)) {
    throw SchemaError(std::string(to_string(k)) + " takes a " + std::string(to_string(input_kind(k))) + "-learner");
  }
  const Transformed t = apply_transform(k, h);
  json j;
  j["report"] = io::report(t.report);
  j["output_operator"] = to_string(t.learner.kind);
  j["output_learner"] = t.learner.name;
  int code = 0;
  if (!config.empty()) {
    harness::RunConfig cfg = harness::parse_config(read_json(config));
    c.apply(cfg.bounds);
    const auto lang = harness::parse_language(cfg.language, cfg.bounds);
    std::vector<Text> texts;
    if (cfg.texts.empty()) texts = {lang.canonical, shuffled_text(lang.canonical, cfg.bounds.seed)};
    for (const auto& x : cfg.texts) texts.push_back(harness::parse_text(x, lang, cfg.bounds));
    const auto& b = cfg.bounds;
    const auto before = learns({h.kind, {harness::before_flavor(k)}}, h, lang.oracle, texts, b.horizon, b.budget, b.m);
    const auto after =
        learns({t.learner.kind, {harness::after_flavor(k)}}, t.learner, lang.oracle, texts, b.horizon, b.budget, b.m);
    j["original"] = io::verdict(before.aggregate);
    j["transformed"] = io::verdict(after.aggregate);
    const bool preserved = !before.aggregate.satisfied() || after.aggregate.satisfied();
    j["preserved"] = preserved;
    if (!preserved && after.aggregate.falsified()) code = 1;
  }
  emit(c.out, j.dump(2) + "\n");
  return code;
}

int cmd_attack(const std::string& theorem, const std::string& opponent, const std::string& op, const std::string& bounds,
               const Common& c) {
  AttackKind k;
  try {
    k = parse_attack(theorem);
  } catch (const DomainError& e) {
    throw SchemaError(e.what());
  }
  AttackBounds b;
  if (c.horizon) b.horizon = *c.horizon;
  if (c.m) b.m = *c.m;
  if (c.budget) b.budget = static_cast<Budget>(*c.budget);
  b = parse_bounds(bounds, b);
  std::vector<Learner> targets;
  if (opponent.empty()) {
    targets = opponents(k);
  } else {
    for (const auto& o : opponents(k)) {
      if (o.name == opponent) targets.push_back(o);
    }
    if (targets.empty()) targets.push_back(harness::parse_learner(opponent, operator_of(op).value_or(opponent_kind(k))));
  }
  json all = json::array();
  bool ok = true;
  for (const auto& h : targets) {
    if (h.kind != opponent_kind(k)) {
      throw SchemaError(std::string(to_string(k)) + " takes a " + std::string(to_string(opponent_kind(k))) +
                        "-learner");
    }
    const AttackWitness w = run_attack(k, h, b);
    json j = io::witness(w);
    const bool valid = replay_validates(w, h);
    j["replay_validated"] = valid;
    ok = ok && w.conclusive && valid;
    all.push_back(std::move(j));
  }
  emit(c.out, (all.size() == 1 ? all[0] : all).dump(2) + "\n");
  return ok ? 0 : 1;
}

int cmd_matrix(const std::string& config, const Common& c) {
  harness::Bounds b;
  auto edges = harness::default_edges();
  if (!config.empty()) {
    const json j = read_json(config);
    if (!j.is_object()) throw SchemaError("matrix config must be an object");
    for (const auto& [key, v] : j.items()) {
      if (key == "horizon" || key == "m" || key == "seed" || key == "budget") {
        if (!v.is_number() || v.get<double>() < 0) throw SchemaError(key + " must be a natural");
        const auto n = static_cast<std::size_t>(v.get<double>());
        if (key == "horizon") b.horizon = n;
        if (key == "m") b.m = n;
        if (key == "seed") b.seed = n;
        if (key == "budget") b.budget = n;
      } else if (key == "edges") {
        if (!v.is_array()) throw SchemaError("edges must be an array of ids");
        std::vector<harness::EdgeSpec> keep;
        for (const auto& id : v) {
          auto it = std::find_if(edges.begin(), edges.end(), [&](const auto& e) { return id.is_string() && e.id == id.get<std::string>(); });
          if (it == edges.end()) throw SchemaError("unknown edge: " + id.dump());
          keep.push_back(*it);
        }
        edges = keep;
      } else if (key == "out_of_scope") {
        if (!v.is_array()) throw SchemaError("out_of_scope must be an array of ids");
        for (const auto& id : v) {
          auto it = std::find_if(edges.begin(), edges.end(), [&](const auto& e) { return id.is_string() && e.id == id.get<std::string>(); });
          if (it == edges.end()) throw SchemaError("unknown edge: " + id.dump());
          it->in_scope = false;
          it->evidence = "not-implemented";
          it->pointer = "tagged out-of-scope by the matrix config";
        }
      } else {
        throw SchemaError("unknown matrix key: " + key);
      }
    }
  }
  c.apply(b);
  const auto results = harness::run_matrix(edges, b);
  std::cout << harness::matrix_table(results);
  if (!c.out.empty()) emit(c.out, harness::matrix_json(results, b).dump(2) + "\n");
  bool ok = true;
  for (const auto& r : results) ok = ok && (!r.spec.in_scope || r.status() == "pass");
  return ok ? 0 : 1;
}

int cmd_describe(const std::string& index, const std::string& learner, const std::string& op,
                 const std::string& transform, const Common& c) {
  harness::Bounds b;
  b.m = 8;
  c.apply(b);
  ProgramIndex e;
  if (!learner.empty()) {
    Learner h = harness::parse_learner(learner, operator_of(op));
    if (!transform.empty()) {
      TransformKind k;
      try {
        k = parse_transform(transform);
      } catch (const DomainError& err) {
        throw SchemaError(err.what());
      }
      if (h.kind != input_kind(k)) throw SchemaError("transform input kind mismatch");
      h = apply_transform(k, h).learner;
      std::cout << "transform: " << transform << " of " << learner << "\n";
    }
    std::cout << "learner: " << h.name << " (" << to_string(h.kind) << ")\n";
    e = h.program;
  } else if (!index.empty()) {
    e = ProgramIndex(harness::parse_nat_string(index));
  } else {
    throw SchemaError("describe needs an index or --learner");
  }
  emit(c.out, harness::describe(e, b.m, b.budget));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cind: learning with characteristic indices at bounded horizons"};
  app.require_subcommand(1);

  Common c_run, c_tr, c_at, c_mx, c_ds;
  std::string config, learner, op, kind, theorem, opponent, bounds, index, of_transform;

  auto* run = app.add_subcommand("run", "run a learner on the texts of a config; JSONL trace plus verdict");
  run->add_option("--config", config, "experiment config (JSON)")->required();
  run->add_option("--learner", learner, "override the config learner");
  run->add_option("--operator", op, "interaction operator for idx:/file: learners");
  c_run.add(run);

  auto* tr = app.add_subcommand("transform", "apply a learner transformation");
  tr->add_option("--kind", kind, "g2psd | it2sd | g2it-bc | g2psd-bc | td-ex")->required();
  tr->add_option("--learner", learner, "builtin:<name> | idx:<n> | file:<path>")->required();
  tr->add_option("--operator", op, "interaction operator for idx:/file: learners");
  tr->add_option("--config", config, "optional config to compare original and transformed verdicts");
  c_tr.add(tr);

  auto* at = app.add_subcommand("attack", "run an executable separation against an opponent");
  at->add_option("--theorem", theorem, "td-sep | it-sep | krt-sd | ort-td-total")->required();
  at->add_option("--opponent", opponent, "suite member name or learner spec; whole suite when omitted");
  at->add_option("--operator", op, "interaction operator for idx:/file: opponents");
  at->add_option("--bounds", bounds, "key=value list: horizon, budget, m, t_max, view, m_max, search_budget");
  c_at.add(at);

  auto* mx = app.add_subcommand("matrix", "relation matrix over the in-scope edges");
  mx->add_option("--config", config, "matrix spec (JSON): edges, out_of_scope, horizon, m, budget, seed");
  c_mx.add(mx);

  auto* ds = app.add_subcommand("describe", "pretty-print a program and probe it");
  ds->add_option("index", index, "program index");
  ds->add_option("--learner", learner, "describe a learner's program instead");
  ds->add_option("--operator", op, "interaction operator for idx:/file: learners");
  ds->add_option("--transform", of_transform, "describe the output of this transformation of --learner");
  c_ds.add(ds);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (run->parsed()) return cmd_run(config, learner, op, c_run);
    if (tr->parsed()) return cmd_transform(kind, learner, op, config, c_tr);
    if (at->parsed()) return cmd_attack(theorem, opponent, op, bounds, c_at);
    if (mx->parsed()) return cmd_matrix(config, c_mx);
    if (ds->parsed()) return cmd_describe(index, learner, op, of_transform, c_ds);
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
