// Acceptance suite: one pass/fail line per criterion, exit 0 only if all
// pass. Runtime limits are part of the criteria and are asserted.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "corpus.hpp"
#include "vanish/catalog.hpp"
#include "vanish/report.hpp"
#include "vanish/vanishing.hpp"

using namespace vanish;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("%s  criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion,
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string join_u64(const std::vector<u64>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + "}";
}

struct Analyzed {
  Group group;
  std::shared_ptr<const CharacterTable> table;
  VanishingProfile profile;
};

std::map<std::string, Analyzed> cache;

const Analyzed& analyzed(const std::string& expr) {
  auto it = cache.find(expr);
  if (it != cache.end()) return it->second;
  Analyzed a;
  a.group = build_group(expr);
  a.table = std::make_shared<CharacterTable>(character_table(a.group));
  a.profile = vanishing_profile_from_table(a.table);
  return cache.emplace(expr, std::move(a)).first->second;
}

}  // namespace

// criterion 1: vcs(SL(2,3)) = {4, 6}, under one second
static void criterion1() {
  auto t0 = Clock::now();
  Group g = build_group("SL23");
  VanishingProfile p = vanishing_profile(g);
  double dt = seconds_since(t0);
  bool ok = p.vcs == std::vector<u64>{4, 6} && dt < 1.0;
  std::ostringstream os;
  os << "vcs(SL(2,3)) = " << join_u64(p.vcs) << " in " << dt << "s";
  report(1, ok, os.str());
}

// criterion 2: Sz(8) Borel: order 448, Frobenius kernel of order 64,
// vcs = {64}, under five seconds
static void criterion2() {
  auto t0 = Clock::now();
  Group g = build_group("Sz8Borel");
  Subgroup q = sylow_subgroup(g, 2);
  auto witness = is_frobenius_with_kernel(g, q, 1);
  VanishingProfile p = vanishing_profile(g);
  double dt = seconds_since(t0);
  bool ok = g->order() == 448 && witness.has_value() &&
            witness->kernel.order() == 64 && p.vcs == std::vector<u64>{64} &&
            dt < 5.0;
  std::ostringstream os;
  os << "order " << g->order() << ", kernel "
     << (witness ? witness->kernel.order() : 0) << ", vcs = " << join_u64(p.vcs)
     << " in " << dt << "s";
  report(2, ok, os.str());
}

// criterion 3: the section-6 family table, exact, with per-case time limits
static void criterion3() {
  struct Case {
    const char* expr;
    u64 vcs;
    double limit;
  };
  const std::vector<Case> cases = {
      {"sdp(3^3,ES(2,+),maxker)", 18, 60},
      {"sdp(3^3,ES(2,-),maxker)", 18, 60},
      {"sdp(5^3,ES(2,+),maxker)", 50, 60},
      {"sdp(5^3,ES(2,-),maxker)", 50, 60},
      {"sdp(7^3,ES(2,+),maxker)", 98, 60},
      {"sdp(7^3,ES(2,-),maxker)", 98, 60},
      {"sdp(11^3,ES(2,+),maxker)", 242, 60},
      {"sdp(11^3,ES(2,-),maxker)", 242, 60},
      {"sdp(9^3,ES(2,+),maxker)", 162, 60},
      {"sdp(9^3,ES(2,-),maxker)", 162, 60},
      {"sdp(7^4,ES(3,+),maxker)", 1029, 600},
      {"sdp((2x2)^4,ES(3,+),maxker)", 192, 60},
  };
  bool all = true;
  std::ostringstream os;
  for (const Case& c : cases) {
    auto t0 = Clock::now();
    const Analyzed& a = analyzed(c.expr);
    double dt = seconds_since(t0);
    bool ok = a.profile.vcs == std::vector<u64>{c.vcs} && dt < c.limit;
    if (!ok) {
      all = false;
      os << " [" << c.expr << " -> " << join_u64(a.profile.vcs) << " in " << dt
         << "s]";
    }
  }
  report(3, all,
         all ? "all twelve family cases reproduce the reported vcs in time"
             : "mismatches:" + os.str());
}

// criterion 4: classifier outcomes with every side condition recorded
static void criterion4() {
  bool all = true;
  std::ostringstream os;
  auto expect_case = [&](const std::string& expr, VcsCase want, u64 kernel) {
    const Analyzed& a = analyzed(expr);
    ClassificationResult r =
        classify_single_vcs_with_profile(a.group, a.profile, 1);
    bool ok = r.case_label == want;
    if (kernel) ok = ok && r.kernel_order == kernel;
    if (!ok) {
      all = false;
      os << " [" << expr << " -> " << vcs_case_name(r.case_label) << "]";
    }
    return r;
  };
  expect_case("D(3)", VcsCase::ThmA_b, 3);
  expect_case("sdp((2x2),C(3),mats([[0,1],[1,1]]))", VcsCase::ThmA_b, 4);
  expect_case("D(4)", VcsCase::ThmA_a, 0);
  expect_case("Q8", VcsCase::ThmA_a, 0);
  for (const char* expr :
       {"sdp(3^3,ES(2,+),maxker)", "sdp(3^3,ES(2,-),maxker)",
        "sdp(5^3,ES(2,+),maxker)", "sdp(5^3,ES(2,-),maxker)",
        "sdp(7^3,ES(2,+),maxker)", "sdp(7^3,ES(2,-),maxker)",
        "sdp(11^3,ES(2,+),maxker)", "sdp(11^3,ES(2,-),maxker)",
        "sdp(9^3,ES(2,+),maxker)", "sdp(9^3,ES(2,-),maxker)",
        "sdp(7^4,ES(3,+),maxker)", "sdp((2x2)^4,ES(3,+),maxker)"}) {
    ClassificationResult r = expect_case(expr, VcsCase::Thm51_b, 0);
    std::set<std::string> need = {"no_vanishing_in_N",
                                  "P_mod_center_elementary_abelian",
                                  "ZP_eq_CPN", "ZP_eq_Z_cap_P",
                                  "cs_P_is_1_sp", "constant_N_index_s_pprime",
                                  "CN_x_abelian", "CN_x_eq_CN_CPx",
                                  "CNP_eq_N_cap_Z", "N_abelian"};
    for (const NamedCheck& c : r.checks) {
      if (need.count(c.name)) {
        need.erase(c.name);
        if (!c.pass) {
          all = false;
          os << " [" << expr << " side condition " << c.name << " failed]";
        }
      }
    }
    if (!need.empty()) {
      all = false;
      os << " [" << expr << " missing side conditions]";
    }
  }
  report(4, all,
         all ? "classifier outcomes and all Theorem 5.2(b) side conditions match"
             : "mismatches:" + os.str());
}

// criterion 5: character-table property suite on every computed table,
// including Dixon prime independence
static void criterion5() {
  bool all = true;
  std::ostringstream os;
  for (const corpus::Entry& e : corpus::members()) {
    const Analyzed& a = analyzed(e.expr);
    const CharacterTable& t = *a.table;
    bool ok = verify_orthogonality(t);
    u64 sum = 0;
    for (u64 d : t.degrees) {
      sum += d * d;
      if (a.group->order() % d != 0) ok = false;
    }
    if (sum != a.group->order()) ok = false;
    for (std::size_t chi = 0; chi < t.k && ok; ++chi) {
      if (t.degrees[chi] <= 1) continue;
      bool zero = false;
      for (std::size_t c = 0; c < t.k && !zero; ++c)
        zero = t.entry_is_zero(chi, c);
      if (!zero) ok = false;
    }
    // prime independence: the next valid prime gives the identical table
    u64 p2 = t.dixon_prime + t.class_data->exponent;
    while (!is_prime_u64(p2)) p2 += t.class_data->exponent;
    CharacterTable t2 = character_table(a.group, p2);
    if (t2.degrees != t.degrees || t2.coeffs != t.coeffs) ok = false;
    if (!ok) {
      all = false;
      os << " [" << e.expr << "]";
    }
  }
  report(5, all,
         all ? "orthogonality, degree sums, divisibility, Burnside zeros and "
               "prime independence hold on every corpus table"
             : "failures:" + os.str());
}

// criterion 6: Theorem 2.4 equivalence oracle on >= 30 Hall pairs
static void criterion6() {
  std::size_t groups = 0, mismatches = 0, pairs = 0;
  std::vector<std::string> exprs;
  for (const corpus::Entry& e : corpus::members()) exprs.push_back(e.expr);
  for (const std::string& e : corpus::random_hall_pairs()) exprs.push_back(e);
  for (const std::string& expr : exprs) {
    Group g = build_group(expr);
    bool used = false;
    std::vector<std::vector<u64>> pis;
    for (u64 p : prime_factors(g->order())) pis.push_back({p});
    if (prime_factors(g->order()).size() > 2)
      pis.push_back({prime_factors(g->order())[0], prime_factors(g->order())[1]});
    for (const std::vector<u64>& pi : pis) {
      auto n = normal_hall_subgroup(g, pi);
      if (!n || n->order() == 1 || n->order() == g->order()) continue;
      Subgroup h = hall_complement(g, *n, 1);
      SameSizeRecord r = check_same_size_conditions(g, *n, h);
      used = true;
      ++pairs;
      if (!r.degenerate && r.conditions_hold() != r.outside_constant)
        ++mismatches;
    }
    if (used) ++groups;
  }
  std::ostringstream os;
  os << groups << " groups, " << pairs << " Hall pairs, " << mismatches
     << " mismatches";
  report(6, groups >= 30 && mismatches == 0, os.str());
}

// criterion 7: the invariant suite passes on every corpus member
static void criterion7() {
  bool all = true;
  std::ostringstream os;
  for (const corpus::Entry& e : corpus::members()) {
    const Analyzed& a = analyzed(e.expr);
    InvariantReport rep = verify_paper_invariants(a.group, &a.profile, 1);
    for (const NamedCheck& c : rep.checks) {
      if (c.applicable && !c.pass) {
        all = false;
        os << " [" << e.expr << ": " << c.name << "]";
      }
    }
  }
  report(7, all,
         all ? "invariant suite passes on every corpus member"
             : "failures:" + os.str());
}

// criterion 8: Theorem A holds in both directions wherever it applies
static void criterion8() {
  bool all = true;
  std::size_t applied = 0;
  std::ostringstream os;
  for (const corpus::Entry& e : corpus::members()) {
    const Analyzed& a = analyzed(e.expr);
    TheoremAResult r = verify_theorem_A(a.group, 1);
    if (r.dir1_applicable) ++applied;
    if (r.dir2_applicable) ++applied;
    if ((r.dir1_applicable && !r.dir1_pass) ||
        (r.dir2_applicable && !r.dir2_pass)) {
      all = false;
      os << " [" << e.expr << ": " << r.note << "]";
    }
  }
  std::ostringstream head;
  head << "both directions pass on every applicable member (" << applied
       << " applications)";
  report(8, all && applied > 0, all ? head.str() : "failures:" + os.str());
}

// criterion 9: search-harness determinism and resumability on the
// section-3 + section-6 grid
static void criterion9() {
  SearchConfig cfg;
  cfg.actors = {"ES(2,+)", "ES(2,-)"};
  cfg.modules = {"3^3", "5^3", "9^3"};
  cfg.extra_exprs = {"SL23", "Sz8Borel", "sdp(7^4,ES(3,+),maxker)",
                     "sdp((2x2)^4,ES(3,+),maxker)", "sdp(29^3,ES(2,+),maxker)"};
  cfg.order_cap = 70000;  // the 29^3 point exceeds the cap and is recorded as skipped

  auto tmp = std::filesystem::temp_directory_path();
  std::string path1 = (tmp / "vanish_acceptance_catalog1.jsonl").string();
  std::string path2 = (tmp / "vanish_acceptance_catalog2.jsonl").string();
  std::filesystem::remove(path1);
  std::filesystem::remove(path2);

  SearchSummary s1 = run_search(cfg, path1, 1);
  SearchSummary s2 = run_search(cfg, path1, 1);  // resume: nothing to add
  SearchSummary s3 = run_search(cfg, path2, 1);  // fresh second sweep

  auto slurp = [](const std::string& p) {
    std::ifstream in(p);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  std::string c1 = slurp(path1), c2 = slurp(path2);
  bool ok = s1.appended == s1.grid_points && s2.appended == 0 &&
            s3.appended == s3.grid_points && c1 == c2 && !c1.empty() &&
            s1.findings == 0;
  std::ostringstream os;
  os << s1.grid_points << " grid points, resume appended " << s2.appended
     << ", catalogs " << (c1 == c2 ? "byte-identical" : "DIFFER") << ", "
     << s1.findings << " findings flagged";
  report(9, ok, os.str());
  std::filesystem::remove(path1);
  std::filesystem::remove(path2);
}

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  if (failures == 0) {
    std::printf("all acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d criterion(s) failed\n", failures);
  return 1;
}
