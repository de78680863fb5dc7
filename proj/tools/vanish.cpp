// Command-line front end: analyze / chartab / verify / search.
//
// Exit codes: 0 ok, 1 error, 2 at least one invariant check failed.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "vanish/catalog.hpp"
#include "vanish/report.hpp"

namespace {

std::string read_expr_argument(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw std::runtime_error("cannot open expression file " + arg.substr(1));
    std::string text, line;
    while (std::getline(in, line)) {
      // strip full-line comments in DSL files
      auto h = line.find('#');
      if (h != std::string::npos) line.resize(h);
      text += line;
      text += ' ';
    }
    return text;
  }
  return arg;
}

std::size_t effective_bound(std::size_t cli_bound) {
  if (cli_bound != 0) return cli_bound;
  if (const char* env = std::getenv("VANISH_BOUND")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return std::size_t(v);
  }
  return vanish::kDefaultEnumerationBound;
}

void emit(const nlohmann::ordered_json& j, const std::string& out_path) {
  std::string text = j.dump(2);
  if (out_path.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream out(out_path);
    out << text << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact vanishing-conjugacy-class-size engine"};
  app.require_subcommand(1);
  app.set_config("--config", "", "flags file; command-line values override it");

  std::string expr_arg, json_out, grid_path, catalog_path;
  std::size_t bound = 0;
  vanish::u64 seed = 1;
  bool emit_table = false, timings = false;

  auto add_common = [&](CLI::App* cmd, bool with_expr) {
    if (with_expr)
      cmd->add_option("expr", expr_arg,
                      "group expression, or @file with the expression text")
          ->required();
    cmd->add_option("--bound", bound, "enumeration bound (default 200000)");
    cmd->add_option("--seed", seed, "seed for randomized subroutines");
    cmd->add_option("--json-out", json_out, "write the JSON report to a file");
  };

  CLI::App* analyze = app.add_subcommand("analyze", "full analysis report");
  add_common(analyze, true);
  analyze->add_flag("--emit-table", emit_table, "embed the exact character table");
  analyze->add_flag("--timings", timings, "embed per-stage timings (nondeterministic)");

  CLI::App* chartab = app.add_subcommand("chartab", "character table only");
  add_common(chartab, true);

  CLI::App* verify = app.add_subcommand("verify", "invariant suite only");
  add_common(verify, true);

  CLI::App* search = app.add_subcommand("search", "family-grid sweep into a catalog");
  search->add_option("--grid", grid_path, "JSON grid configuration file")->required();
  search->add_option("--catalog", catalog_path, "JSON-lines catalog path")->required();
  search->add_option("--bound", bound, "enumeration bound (default 200000)");
  search->add_option("--seed", seed, "seed for randomized subroutines");

  CLI11_PARSE(app, argc, argv);

  try {
    std::size_t b = effective_bound(bound);
    if (analyze->parsed() || verify->parsed()) {
      vanish::AnalysisOptions opt;
      opt.bound = b;
      opt.seed = seed;
      opt.emit_table = emit_table;
      opt.emit_timings = timings;
      vanish::AnalysisOutcome out =
          vanish::analyze_expression(read_expr_argument(expr_arg), opt);
      if (verify->parsed()) {
        nlohmann::ordered_json j;
        j["tool_version"] = out.report["tool_version"];
        j["seed"] = out.report["seed"];
        j["expr"] = out.report["expr"];
        j["order"] = out.report["order"];
        j["invariant_checks"] = out.report["invariant_checks"];
        emit(j, json_out);
      } else {
        emit(out.report, json_out);
      }
      return out.invariants_ok ? 0 : 2;
    }
    if (chartab->parsed()) {
      std::string text = read_expr_argument(expr_arg);
      vanish::GroupExpr e = vanish::parse_group_expr(text);
      vanish::Group G = vanish::build_group(e, b);
      vanish::CharacterTable t = vanish::character_table(G);
      nlohmann::ordered_json j;
      j["tool_version"] = vanish::kToolVersion;
      j["expr"] = vanish::print_group_expr(e);
      j["order"] = G->order();
      j["character_table"] = vanish::reportdetail::table_json(t);
      emit(j, json_out);
      return 0;
    }
    if (search->parsed()) {
      std::ifstream in(grid_path);
      if (!in) throw std::runtime_error("cannot open grid file " + grid_path);
      nlohmann::json cfg_json = nlohmann::json::parse(in);
      vanish::SearchConfig cfg = vanish::SearchConfig::from_json(cfg_json);
      vanish::SearchSummary sum = vanish::run_search(cfg, catalog_path, seed, b);
      nlohmann::ordered_json j;
      j["grid_points"] = sum.grid_points;
      j["appended"] = sum.appended;
      j["skipped_existing"] = sum.skipped_existing;
      j["findings"] = sum.findings;
      j["errors"] = sum.errors;
      std::cout << j.dump(2) << "\n";
      return 0;
    }
  } catch (const vanish::ParseError& e) {
    nlohmann::ordered_json j;
    j["error"] = "parse";
    j["line"] = e.line;
    j["column"] = e.column;
    j["expected"] = e.expected;
    std::cerr << j.dump(2) << "\n";
    return 1;
  } catch (const std::exception& e) {
    nlohmann::ordered_json j;
    j["error"] = "runtime";
    j["what"] = e.what();
    std::cerr << j.dump(2) << "\n";
    return 1;
  }
  return 1;
}
