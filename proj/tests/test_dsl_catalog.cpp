#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "vanish/catalog.hpp"
#include "vanish/report.hpp"

using namespace vanish;

namespace {

GroupExpr random_expr(std::mt19937_64& rng, int depth) {
  GroupExpr e;
  u64 pick = rng() % (depth > 0 ? 12 : 9);
  switch (pick) {
    case 0: e.family = Family::Cyclic; e.params = {1 + rng() % 30}; break;
    case 1: e.family = Family::ElementaryAbelian; e.params = {rng() % 2 ? 2u : 3u, 1 + rng() % 3}; break;
    case 2: e.family = Family::Homocyclic; e.params = {2 + rng() % 8, 1 + rng() % 3}; break;
    case 3: e.family = Family::Dihedral; e.params = {1 + rng() % 20}; break;
    case 4: e.family = Family::Quaternion8; break;
    case 5: {
      e.family = Family::Extraspecial;
      u64 p = rng() % 2 ? 2 : 3;
      e.es_sign = rng() % 2 ? +1 : -1;
      e.params = {p, e.es_sign > 0 ? 0u : 1u};
      break;
    }
    case 6: e.family = Family::SL23; break;
    case 7: e.family = Family::Sz8Borel; break;
    case 8: e.family = Family::Alt5; break;
    case 9: {
      e.kind = GroupExpr::Product;
      std::size_t n = 2 + rng() % 3;
      for (std::size_t i = 0; i < n; ++i) {
        GroupExpr f = random_expr(rng, depth - 1);
        if (f.kind == GroupExpr::Product) {
          // flat factor lists are the canonical representation
          for (auto& sub : f.factors) e.factors.push_back(sub);
        } else {
          e.factors.push_back(std::make_shared<GroupExpr>(std::move(f)));
        }
      }
      break;
    }
    default: {
      e.kind = GroupExpr::Sdp;
      unsigned nf = 1 + rng() % 4;
      for (unsigned i = 0; i < nf; ++i) {
        ModuleFactor f;
        f.modulus = 2 + rng() % 9;
        f.rank = 1 + rng() % 2;
        e.module.factors.push_back(f);
      }
      e.actor = std::make_shared<GroupExpr>(random_expr(rng, depth - 1));
      if (rng() % 2) {
        e.action.kind = ActionSpec::MaximalKernels;
      } else {
        e.action.kind = ActionSpec::ExplicitMatrices;
        unsigned ngens = 1 + rng() % 2;
        for (unsigned g = 0; g < ngens; ++g) {
          std::vector<std::vector<u64>> blocks;
          for (const ModuleFactor& f : e.module.factors) {
            std::vector<u64> m(std::size_t(f.rank) * f.rank);
            for (auto& x : m) x = rng() % f.modulus;
            blocks.push_back(std::move(m));
          }
          e.action.generator_blocks.push_back(std::move(blocks));
        }
      }
      break;
    }
  }
  return e;
}

std::string temp_path(const char* stem) {
  return (std::filesystem::temp_directory_path() /
          (std::string(stem) + std::to_string(::getpid()) + ".jsonl"))
      .string();
}

}  // namespace

TEST_CASE("parsing the spec'd examples") {
  GroupExpr c6 = parse_group_expr("C(6)");
  REQUIRE(c6.kind == GroupExpr::Atom);
  REQUIRE(c6.family == Family::Cyclic);
  REQUIRE(c6.params == std::vector<u64>{6});

  GroupExpr e = parse_group_expr("sdp(3^3, ES(2,-), maxker)");
  REQUIRE(e.kind == GroupExpr::Sdp);
  REQUIRE(e.module.factors.size() == 3);
  REQUIRE(e.module.factors[0].modulus == 3);
  REQUIRE(e.actor->family == Family::Extraspecial);
  REQUIRE(e.actor->es_sign == -1);
  REQUIRE(build_group(e)->order() == 216);

  GroupExpr big = parse_group_expr("sdp(7^4, ES(3,+), maxker)");
  REQUIRE(big.module.factors.size() == 4);
  REQUIRE(print_group_expr(big) == "sdp(7^4,ES(3,+),maxker)");

  GroupExpr mixed = parse_group_expr("sdp((2x2)^4, ES(3,+), maxker)");
  REQUIRE(mixed.module.factors.size() == 4);
  REQUIRE(mixed.module.factors[0].rank == 2);
  REQUIRE(print_group_expr(mixed) == "sdp((2x2)^4,ES(3,+),maxker)");
}

TEST_CASE("parse errors carry position and expectation") {
  try {
    parse_group_expr("sdp(3^3, ES(2,?), maxker)");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    REQUIRE(e.line == 1);
    REQUIRE(e.column == 15);
    REQUIRE(e.expected.find("'+'") != std::string::npos);
  }
  REQUIRE_THROWS_AS(parse_group_expr("C(6"), ParseError);
  REQUIRE_THROWS_AS(parse_group_expr("C(6))"), ParseError);
  REQUIRE_THROWS_AS(parse_group_expr("Frob(20)"), ParseError);
  REQUIRE_THROWS_AS(parse_group_expr(""), ParseError);
}

TEST_CASE("round trip on random expressions") {
  std::mt19937_64 rng(1234);
  for (int i = 0; i < 10000; ++i) {
    GroupExpr e = random_expr(rng, 2);
    std::string s = print_group_expr(e);
    CAPTURE(s);
    GroupExpr back = parse_group_expr(s);
    REQUIRE(back == e);
    REQUIRE(print_group_expr(back) == s);
    // canonical form has no whitespace
    REQUIRE(s.find(' ') == std::string::npos);
  }
}

TEST_CASE("whitespace-insensitive parsing, canonical printing") {
  REQUIRE(canonical_expr("  sdp( 3^3 ,ES( 2 , + ) , maxker )  ") ==
          "sdp(3^3,ES(2,+),maxker)");
  REQUIRE(canonical_expr("C(2) * C(3)*C(5)") == "C(2)*C(3)*C(5)");
  REQUIRE(canonical_expr("sdp(3*3*3,ES(2,+),maxker)") == "sdp(3^3,ES(2,+),maxker)");
}

TEST_CASE("report determinism") {
  AnalysisOptions opt;
  opt.seed = 7;
  AnalysisOutcome a = analyze_expression("sdp(3^3,ES(2,+),maxker)", opt);
  AnalysisOutcome b = analyze_expression("sdp(3^3, ES(2,+), maxker)", opt);
  REQUIRE(a.report.dump() == b.report.dump());
  REQUIRE(a.invariants_ok);
  REQUIRE(a.report["vcs"] == nlohmann::ordered_json::array({18}));
  REQUIRE(a.report["classification"]["case"] == "Thm51_b");
}

TEST_CASE("analysis report fields") {
  AnalysisOptions opt;
  opt.emit_table = true;
  AnalysisOutcome out = analyze_expression("SL23", opt);
  REQUIRE(out.report["order"] == 24);
  REQUIRE(out.report["class_count"] == 7);
  REQUIRE(out.report["vcs"] == nlohmann::ordered_json::array({4, 6}));
  REQUIRE(out.report["classification"]["case"] == "NotSingleVcs");
  REQUIRE(out.report["character_table"]["rows"].size() == 7);
  REQUIRE(out.report.dump().find("timings") == std::string::npos);
}

TEST_CASE("catalog idempotence and resumability") {
  std::string path = temp_path("vanish_catalog_");
  std::filesystem::remove(path);
  SearchConfig cfg;
  cfg.actors = {"ES(2,+)", "ES(2,-)"};
  cfg.modules = {"3^3"};
  cfg.extra_exprs = {"SL23", "C(30)", "sdp(17^3,ES(2,+),maxker)"};
  cfg.order_cap = 5000;

  SearchSummary first = run_search(cfg, path, 5);
  REQUIRE(first.grid_points == 5);
  REQUIRE(first.appended == 5);
  std::string content1;
  {
    std::ifstream in(path);
    content1.assign(std::istreambuf_iterator<char>(in), {});
  }
  // the over-cap grid point is recorded as skipped, not an error
  REQUIRE(content1.find("\"status\":\"skipped\"") != std::string::npos);
  REQUIRE(content1.find("\"finding\":true") == std::string::npos);

  SearchSummary second = run_search(cfg, path, 5);
  REQUIRE(second.appended == 0);
  REQUIRE(second.skipped_existing == 5);
  std::string content2;
  {
    std::ifstream in(path);
    content2.assign(std::istreambuf_iterator<char>(in), {});
  }
  REQUIRE(content1 == content2);

  SECTION("a fresh sweep is byte-identical") {
    std::string path2 = temp_path("vanish_catalog2_");
    std::filesystem::remove(path2);
    run_search(cfg, path2, 5);
    std::string content3;
    {
      std::ifstream in(path2);
      content3.assign(std::istreambuf_iterator<char>(in), {});
    }
    REQUIRE(content1 == content3);
    std::filesystem::remove(path2);
  }
  std::filesystem::remove(path);
}

TEST_CASE("empty grid appends nothing") {
  std::string path = temp_path("vanish_catalog_empty_");
  std::filesystem::remove(path);
  SearchConfig cfg;
  SearchSummary sum = run_search(cfg, path, 1);
  REQUIRE(sum.grid_points == 0);
  REQUIRE(sum.appended == 0);
  std::filesystem::remove(path);
}

TEST_CASE("command line interface", "[cli]") {
  std::string cli = VANISH_CLI_PATH;
  std::string out = temp_path("vanish_cli_out_");

  SECTION("analyze exits 0 and writes a report") {
    int rc = std::system((cli + " analyze 'C(12)' --json-out " + out).c_str());
    REQUIRE(WEXITSTATUS(rc) == 0);
    std::ifstream in(out);
    nlohmann::json j = nlohmann::json::parse(in);
    REQUIRE(j["order"] == 12);
    REQUIRE(j["vcs"].empty());
  }
  SECTION("parse errors exit 1") {
    int rc = std::system((cli + " analyze 'C(' 2>/dev/null").c_str());
    REQUIRE(WEXITSTATUS(rc) == 1);
  }
  SECTION("chartab emits the exact table") {
    int rc = std::system((cli + " chartab 'D(3)' --json-out " + out).c_str());
    REQUIRE(WEXITSTATUS(rc) == 0);
    std::ifstream in(out);
    nlohmann::json j = nlohmann::json::parse(in);
    REQUIRE(j["character_table"]["rows"].size() == 3);
  }
  SECTION("verify exits 0 on a healthy group") {
    int rc = std::system((cli + " verify 'Q8' --json-out " + out).c_str());
    REQUIRE(WEXITSTATUS(rc) == 0);
  }
  std::filesystem::remove(out);
}
