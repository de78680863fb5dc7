#pragma once

// Family-search harness over a grid of sdp(module, actor, action)
// expressions, with an append-only JSON-lines catalog keyed by canonical
// expression. Re-running a finished sweep appends nothing; records are
// computed in a worker pool but committed in grid order so catalogs are
// byte-identical across runs.

#include <algorithm>
#include <fstream>
#include <future>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "vanish/report.hpp"

namespace vanish {

struct SearchConfig {
  std::vector<std::string> actors;
  std::vector<std::string> modules;
  std::string action = "maxker";
  std::vector<std::string> extra_exprs;
  u64 order_cap = kDefaultEnumerationBound;

  static SearchConfig from_json(const nlohmann::json& j) {
    SearchConfig c;
    if (j.contains("actors")) c.actors = j["actors"].get<std::vector<std::string>>();
    if (j.contains("modules"))
      c.modules = j["modules"].get<std::vector<std::string>>();
    if (j.contains("action")) c.action = j["action"].get<std::string>();
    if (j.contains("extra_exprs"))
      c.extra_exprs = j["extra_exprs"].get<std::vector<std::string>>();
    if (j.contains("order_cap")) c.order_cap = j["order_cap"].get<u64>();
    return c;
  }
};

struct SearchSummary {
  std::size_t grid_points = 0;
  std::size_t appended = 0;
  std::size_t skipped_existing = 0;
  std::size_t findings = 0;
  std::size_t errors = 0;
};

namespace catalogdetail {

inline std::string record_for(const std::string& canonical, u64 seed,
                              std::size_t bound, u64 order_cap, bool* finding) {
  nlohmann::ordered_json rec;
  rec["expr"] = canonical;
  rec["seed"] = seed;
  *finding = false;
  try {
    Group G = build_group(canonical, std::min<std::size_t>(bound, order_cap));
    rec["status"] = "ok";
    rec["order"] = G->order();
    auto tab = std::make_shared<CharacterTable>(character_table(G));
    VanishingProfile prof = vanishing_profile_from_table(tab);
    rec["cs"] = prof.cs;
    rec["vcs"] = prof.vcs;
    ClassificationResult cls = classify_single_vcs_with_profile(G, prof, seed);
    rec["case"] = vcs_case_name(cls.case_label);
    if (cls.n_order) rec["n_abelian"] = cls.n_abelian;
    bool single = prof.vcs.size() == 1;
    *finding = single && (cls.case_label == VcsCase::Unclassified ||
                          cls.case_label == VcsCase::Thm51_c ||
                          (cls.case_label == VcsCase::Thm51_b && !cls.n_abelian));
    rec["finding"] = *finding;
  } catch (const BoundExceeded& e) {
    rec["status"] = "skipped";
    rec["reason"] = std::string("order cap: ") + e.what();
  } catch (const std::exception& e) {
    rec["status"] = "error";
    rec["error"] = e.what();
  }
  return rec.dump();
}

}  // namespace catalogdetail

inline SearchSummary run_search(const SearchConfig& cfg,
                                const std::string& catalog_path, u64 seed = 1,
                                std::size_t bound = kDefaultEnumerationBound) {
  // canonical grid, in declared order: actors x modules, then extras
  std::vector<std::string> grid;
  for (const std::string& mod : cfg.modules)
    for (const std::string& act : cfg.actors)
      grid.push_back(canonical_expr("sdp(" + mod + "," + act + "," + cfg.action + ")"));
  for (const std::string& e : cfg.extra_exprs) grid.push_back(canonical_expr(e));

  std::set<std::string> existing;
  {
    std::ifstream in(catalog_path);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      auto j = nlohmann::json::parse(line, nullptr, false);
      if (!j.is_discarded() && j.contains("expr"))
        existing.insert(j["expr"].get<std::string>());
    }
  }

  SearchSummary sum;
  sum.grid_points = grid.size();
  std::vector<std::string> pending;
  for (const std::string& e : grid) {
    if (existing.count(e)) {
      ++sum.skipped_existing;
      continue;
    }
    if (std::find(pending.begin(), pending.end(), e) == pending.end())
      pending.push_back(e);
  }

  // worker pool with a bounded launch window; the writer commits strictly in
  // grid order
  std::size_t window = std::max(1u, std::min(4u, std::thread::hardware_concurrency()));
  std::vector<std::future<std::pair<std::string, bool>>> futures(pending.size());
  auto launch = [&](std::size_t i) {
    const std::string& e = pending[i];
    futures[i] = std::async(std::launch::async, [e, seed, bound, &cfg]() {
      bool finding = false;
      std::string line =
          catalogdetail::record_for(e, seed, bound, cfg.order_cap, &finding);
      return std::make_pair(std::move(line), finding);
    });
  };
  std::size_t launched = std::min(window, pending.size());
  for (std::size_t i = 0; i < launched; ++i) launch(i);

  std::ofstream out(catalog_path, std::ios::app);
  for (std::size_t i = 0; i < pending.size(); ++i) {
    auto [line, finding] = futures[i].get();
    if (launched < pending.size()) launch(launched++);
    out << line << "\n";
    ++sum.appended;
    if (finding) ++sum.findings;
    if (line.find("\"status\":\"error\"") != std::string::npos) ++sum.errors;
  }
  out.flush();
  return sum;
}

}  // namespace vanish
