#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include <fingen/fingen.hpp>

int main(int argc, char** argv) {
  CLI::App app{"exact small generating partitions for transitive permutation actions"};
  app.require_subcommand(1);

  fingen::RunConfig cfg;
  std::string threshold = "1/4";

  const auto add_common = [&](CLI::App* sub, bool needs_input) {
    if (needs_input)
      sub->add_option("-i,--input", cfg.input_path, "system description (JSON)")->required();
    sub->add_option("-o,--output", cfg.output_path, "write the report to this file");
    sub->add_option("--tail-threshold", threshold, "bound on the overflow mass, as p/q")
        ->capture_default_str();
    sub->add_flag("--trace", cfg.trace, "append the relocation trace to the report");
    sub->add_flag("--self-check", cfg.self_check,
                  "re-verify relocation properties and the decode roundtrip");
    sub->add_option("--seed", cfg.seed, "seed for randomized inputs")->capture_default_str();
  };

  auto* cmd_synth =
      app.add_subcommand("synthesize", "rewrite a generating partition into a bounded one");
  add_common(cmd_synth, true);
  auto* cmd_verify =
      app.add_subcommand("verify", "check whether the partition generates under the action");
  add_common(cmd_verify, true);
  auto* cmd_entropy = app.add_subcommand("entropy", "report entropy and code statistics");
  add_common(cmd_entropy, true);
  auto* cmd_round =
      app.add_subcommand("roundtrip", "synthesize, decode back, and compare labels");
  add_common(cmd_round, true);
  auto* cmd_demo = app.add_subcommand("demo", "run the pipeline on a built-in system");
  add_common(cmd_demo, false);
  cmd_demo->add_option("--points", cfg.demo_points, "number of points")->capture_default_str();
  cmd_demo->add_option("--generators", cfg.demo_generators,
                       "random generators to draw (0 uses one rotation)")
      ->capture_default_str();
  cmd_demo->add_option("--classes", cfg.demo_classes,
                       "random partition classes (0 separates every point)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    nlohmann::json j;
    j["error"] = "ParseError";
    j["message"] = e.what();
    std::cerr << j.dump() << "\n";
    return 2;
  }

  if (cmd_synth->parsed()) cfg.command = fingen::Command::synthesize;
  else if (cmd_verify->parsed()) cfg.command = fingen::Command::verify;
  else if (cmd_entropy->parsed()) cfg.command = fingen::Command::entropy;
  else if (cmd_round->parsed()) cfg.command = fingen::Command::roundtrip;
  else cfg.command = fingen::Command::demo;

  try {
    cfg.tail_threshold = fingen::parse_rational(threshold);
    const fingen::RunOutcome out = fingen::run(cfg);
    if (out.status != 0) {
      std::cerr << out.error_json << "\n";
      return out.status;
    }
    if (!cfg.output_path.empty()) fingen::write_text_file(cfg.output_path, out.report);
    else std::cout << out.report;
    return 0;
  } catch (const fingen::Error& e) {
    nlohmann::json j;
    j["error"] = e.code();
    j["message"] = e.what();
    std::cerr << j.dump() << "\n";
    return e.code() == "ParseError" ? 2 : 5;
  }
}
