#pragma once

// JSON forms of the toolkit's records. Naturals that fit in 64 bits are
// numbers, larger ones are decimal strings.

#include <json.hpp>

#include "cind/adversaries.hpp"
#include "cind/criteria.hpp"
#include "cind/learner.hpp"
#include "cind/transforms.hpp"

namespace cind::io {

using json = nlohmann::ordered_json;

inline json nat(const Nat& n) {
  if (n <= Nat(std::numeric_limits<std::uint64_t>::max())) return json(static_cast<std::uint64_t>(n));
  return json(n.str());
}

inline Nat to_nat(const json& j) {
  if (j.is_number_unsigned() || j.is_number_integer()) {
    if (j.is_number_integer() && j.get<std::int64_t>() < 0) throw DomainError("negative natural");
    return Nat(j.get<std::uint64_t>());
  }
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) throw DomainError("not a natural: " + s);
    return Nat(s);
  }
  throw DomainError("expected a natural, got " + j.dump());
}

inline json hyp(const std::optional<Hypothesis>& h) {
  if (!h) return json("diverged");
  if (h->is_unknown()) return json("?");
  return nat(h->index());
}

inline json symbol(const Symbol& s) { return s.is_pause() ? json("#") : nat(s.value()); }

inline json set(const FiniteSet& d) {
  json a = json::array();
  for (const auto& x : d) a.push_back(nat(x));
  return a;
}

inline json seq(const Seq& s) {
  json a = json::array();
  for (const auto& x : s) a.push_back(symbol(x));
  return a;
}

inline json evidence(const Evidence& e) {
  json j;
  j["kind"] = e.kind;
  j["step"] = e.step;
  if (e.hypothesis) j["hypothesis"] = hyp(e.hypothesis);
  if (e.element) j["element"] = nat(*e.element);
  if (e.observed) j["observed"] = nat(*e.observed);
  if (e.member) j["member"] = *e.member;
  return j;
}

inline json verdict(const Verdict& v) {
  json j;
  j["verdict"] = to_string(v.kind);
  j["flavor"] = to_string(v.flavor);
  if (v.satisfied()) j["n0"] = v.n0;
  if (v.falsified()) {
    j["step"] = v.step;
    if (v.witness) j["witness"] = evidence(*v.witness);
  }
  j["horizon"] = v.horizon;
  j["domain_bound"] = v.checked_domain;
  j["budgets"] = {{"eval", v.budget}};
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

/// One record per step.
inline std::vector<json> trace_records(const Trace& tr) {
  std::vector<json> out;
  for (const auto& e : tr.entries) {
    json j;
    j["i"] = e.i;
    j["symbol"] = e.i == 0 ? json(nullptr) : symbol(tr.text[e.i - 1]);
    j["hypothesis"] = hyp(e.hyp);
    j["steps_used"] = e.steps;
    out.push_back(std::move(j));
  }
  return out;
}

inline json trace(const Trace& tr) {
  json j;
  j["learner"] = tr.learner;
  j["operator"] = to_string(tr.kind);
  j["text"] = seq(tr.text);
  json h = json::array();
  for (const auto& e : tr.entries) h.push_back(hyp(e.hyp));
  j["hypotheses"] = std::move(h);
  return j;
}

inline json report(const TransformReport& r) {
  json j;
  j["kind"] = to_string(r.kind);
  j["input"] = nat(r.input.value);
  j["output"] = nat(r.output.value);
  if (r.helper.value != 0) j["helper"] = nat(r.helper.value);
  if (r.t_cap != 0) j["t_cap"] = r.t_cap;
  j["warnings"] = r.warnings;
  return j;
}

inline json bounds(const AttackBounds& b) {
  return {{"horizon", b.horizon}, {"budget", b.budget},   {"m", b.m},
          {"t_max", b.t_max},     {"view", b.view},       {"m_max", b.m_max},
          {"search_budget", b.search_budget}};
}

inline json witness(const AttackWitness& w) {
  json j;
  j["theorem"] = to_string(w.attack);
  j["opponent"] = w.opponent;
  j["opponent_index"] = nat(w.opponent_index);
  j["outcome"] = w.conclusive ? "witness" : "Inconclusive";
  j["failure_mode"] = to_string(w.mode);
  if (!w.case_label.empty()) j["case"] = w.case_label;
  json langs = json::array();
  for (const auto& l : w.languages) langs.push_back(l.name);
  j["languages"] = std::move(langs);
  j["texts"] = w.texts;
  json trs = json::array();
  for (const auto& t : w.traces) trs.push_back(trace(t));
  j["traces"] = std::move(trs);
  if (w.evidence) {
    j["evidence"] = evidence(*w.evidence);
    j["evidence_language"] = w.languages[*w.evidence_language].name;
  }
  json idx = json::object();
  for (const auto& [k, v] : w.indices) idx[k] = nat(v);
  j["indices"] = std::move(idx);
  j["bounds"] = bounds(w.bounds);
  if (!w.note.empty()) j["note"] = w.note;
  return j;
}

}  // namespace cind::io
