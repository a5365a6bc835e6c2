#include <iostream>

#include "CLI11.hpp"
#include "picard/errors.hpp"
#include "picard_tools/runner.hpp"

int main(int argc, char** argv) {
  using namespace picard;
  CLI::App app{"Adjoint spaces, Picard relations and integrability defects of surfaces in P^3"};
  app.require_subcommand(1);

  tools::RunSpec spec;
  std::string ops = "adjoint,picard,defect,qan";
  std::string field;
  std::string strategy;
  std::string out_dir;
  std::string dump_dir;
  auto* analyze = app.add_subcommand("analyze", "Analyze surface or curve fixtures");
  analyze->add_option("inputs", spec.inputs, "Fixture paths or bundled fixture names")->required();
  analyze->add_option("--ops", ops, "Comma-separated operations")->capture_default_str();
  analyze->add_option("--field", field, "Reduce inputs to prime:<p>");
  analyze->add_option("--seed", spec.seed, "Seed for the field-change check")->capture_default_str();
  analyze->add_option("--out", out_dir, "Directory for report files");
  analyze->add_option("--dump-matrices", dump_dir, "Directory for coefficient matrix dumps");
  analyze->add_option("--strategy", strategy, "ideal-span or point-sampling");

  tools::ScanSpec scan;
  std::string recipe = "smooth";
  std::string scan_out;
  auto* scan_cmd = app.add_subcommand("scan", "Search for nonzero integrability defects over F_p");
  scan_cmd->add_option("--p", scan.config.p, "Characteristic")->required();
  scan_cmd->add_option("--d", scan.config.d, "Surface degree")->required();
  scan_cmd->add_option("--trials", scan.config.trials, "Number of trials")->capture_default_str();
  scan_cmd->add_option("--seed", scan.config.seed, "Seed")->capture_default_str();
  scan_cmd->add_option("--recipe", recipe, "smooth, cone or declared-double-line")->capture_default_str();
  scan_cmd->add_option("--out", scan_out, "Report file");

  std::string verify_path;
  auto* verify = app.add_subcommand("verify", "Re-verify the witnesses of a report");
  verify->add_option("report", verify_path, "Scan or analysis report")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return e.get_exit_code() == 0 ? app.exit(e) : (app.exit(e), tools::kInput);
  }

  try {
    if (analyze->parsed()) {
      spec.ops = parse_ops(ops);
      if (!field.empty()) spec.field = Field::parse(field);
      if (!strategy.empty()) spec.strategy = parse_strategy(strategy);
      if (!out_dir.empty()) spec.out = out_dir;
      if (!dump_dir.empty()) spec.dump_matrices = dump_dir;
      return tools::run_analyze(spec, std::cout, std::cerr);
    }
    if (scan_cmd->parsed()) {
      scan.config.recipe = parse_recipe(recipe);
      if (!scan_out.empty()) scan.out = scan_out;
      return tools::run_scan(scan, std::cout, std::cerr);
    }
    return tools::run_verify(verify_path, std::cout, std::cerr);
  } catch (const Error& e) {
    std::cerr << R"({"input":"","code":")" << error_code_name(e.code()) << R"(","message":)"
              << nlohmann::json(e.what()).dump() << "}\n";
    return tools::kInput;
  }
}
