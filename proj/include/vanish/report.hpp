#pragma once

// Analysis report assembly. All numbers are exact integers; key order is
// fixed so that identical (expr, seed, version) inputs serialize to
// byte-identical JSON. Per-stage timings are only emitted on request since
// they are the one nondeterministic field.

#include <chrono>
#include <string>

#include <json.hpp>

#include "vanish/dsl.hpp"
#include "vanish/vanishing.hpp"

namespace vanish {

inline constexpr const char* kToolVersion = "vanish 1.0.0";

struct AnalysisOptions {
  std::size_t bound = kDefaultEnumerationBound;
  u64 seed = 1;
  bool emit_table = false;
  bool emit_timings = false;
  bool run_invariants = true;
};

struct AnalysisOutcome {
  nlohmann::ordered_json report;
  bool invariants_ok = true;
};

namespace reportdetail {

inline nlohmann::ordered_json checks_json(const std::vector<NamedCheck>& cs) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const NamedCheck& c : cs) {
    nlohmann::ordered_json j;
    j["name"] = c.name;
    j["status"] = c.applicable ? (c.pass ? "pass" : "fail") : "n/a";
    if (!c.note.empty()) j["note"] = c.note;
    arr.push_back(std::move(j));
  }
  return arr;
}

inline nlohmann::ordered_json classification_json(const ClassificationResult& r) {
  nlohmann::ordered_json j;
  j["case"] = vcs_case_name(r.case_label);
  if (r.case_label != VcsCase::NotSingleVcs) {
    j["s"] = r.s;
    j["pi"] = r.pi;
    j["stripped_abelian_order"] = r.stripped_abelian_order;
    if (r.kernel_order) j["kernel_order"] = r.kernel_order;
    if (r.complement_order) j["complement_order"] = r.complement_order;
    if (r.chosen_prime) j["p"] = r.chosen_prime;
    if (r.n_order) {
      j["n_order"] = r.n_order;
      j["n_abelian"] = r.n_abelian;
    }
    if (r.h_order) j["h_order"] = r.h_order;
    j["checks"] = checks_json(r.checks);
  }
  return j;
}

inline nlohmann::ordered_json table_json(const CharacterTable& t) {
  nlohmann::ordered_json j;
  j["conductor"] = t.conductor;
  j["dixon_prime"] = t.dixon_prime;
  j["class_sizes"] = t.class_data->sizes;
  j["class_rep_orders"] = t.class_data->rep_orders;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t chi = 0; chi < t.k; ++chi) {
    nlohmann::ordered_json row;
    row["degree"] = t.degrees[chi];
    nlohmann::ordered_json vals = nlohmann::ordered_json::array();
    for (std::size_t c = 0; c < t.k; ++c) {
      const i64* e = t.entry(chi, c);
      vals.push_back(std::vector<i64>(e, e + t.phi));
    }
    row["values"] = std::move(vals);
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j;
}

}  // namespace reportdetail

inline AnalysisOutcome analyze_expression(const std::string& expr_text,
                                          const AnalysisOptions& opt = {}) {
  using Clock = std::chrono::steady_clock;
  auto ms_since = [](Clock::time_point t0) {
    return u64(std::chrono::duration_cast<std::chrono::milliseconds>(
                   Clock::now() - t0)
                   .count());
  };

  GroupExpr expr = parse_group_expr(expr_text);
  std::string canonical = print_group_expr(expr);

  nlohmann::ordered_json j;
  j["tool_version"] = kToolVersion;
  j["seed"] = opt.seed;
  j["expr"] = canonical;

  nlohmann::ordered_json timings;
  auto t0 = Clock::now();
  Group G = build_group(expr, opt.bound);
  timings["build"] = ms_since(t0);

  j["order"] = G->order();

  t0 = Clock::now();
  auto tab = std::make_shared<CharacterTable>(character_table(G));
  VanishingProfile prof = vanishing_profile_from_table(tab);
  timings["character_table"] = ms_since(t0);

  j["class_count"] = tab->k;
  j["cs"] = prof.cs;
  j["vcs"] = prof.vcs;

  t0 = Clock::now();
  ClassificationResult cls = classify_single_vcs_with_profile(G, prof, opt.seed);
  timings["classification"] = ms_since(t0);
  j["classification"] = reportdetail::classification_json(cls);

  bool ok = true;
  if (opt.run_invariants) {
    t0 = Clock::now();
    InvariantReport inv = verify_paper_invariants(G, &prof, opt.seed);
    TheoremAResult ta = verify_theorem_A(G, opt.seed);
    timings["invariants"] = ms_since(t0);
    std::vector<NamedCheck> all = inv.checks;
    all.push_back(ta.dir1_applicable
                      ? check("theoremA_direction1", ta.dir1_pass, ta.note)
                      : not_applicable("theoremA_direction1"));
    all.push_back(ta.dir2_applicable
                      ? check("theoremA_direction2", ta.dir2_pass, ta.note)
                      : not_applicable("theoremA_direction2"));
    ok = all_pass(all);
    j["invariant_checks"] = reportdetail::checks_json(all);
  }

  if (opt.emit_table) j["character_table"] = reportdetail::table_json(*tab);
  if (opt.emit_timings) j["timings_ms"] = std::move(timings);

  return AnalysisOutcome{std::move(j), ok};
}

}  // namespace vanish
