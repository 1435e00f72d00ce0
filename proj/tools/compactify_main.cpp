#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "compactify/dot.hpp"
#include "compactify/error.hpp"
#include "compactify/generator.hpp"
#include "compactify/pipeline.hpp"

using namespace compactify;

namespace {

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw Error(ErrorKind::ParseError, "cannot write " + out_path);
  out << text;
}

std::string dot_for(const PipelineResult& r, const PipelineOptions& opt, const std::string& text) {
  if (r.report.contains("witness")) return export_dot(witness_from_json(r.report["witness"]));
  const Instance instance = parse_instance(text);
  if (const auto* system = std::get_if<SelfmapSystem>(&instance)) return export_dot(*system);
  return export_dot(build_witness(std::get<RayPresentation>(instance), opt.policy));
}

struct CommonFlags {
  std::vector<std::string> inputs;
  std::string out;
  std::string format = "json";
  std::optional<std::uint64_t> shuffle;
  std::string witness;
};

int run_stage(Stage stage, const CommonFlags& flags) {
  PipelineOptions opt;
  opt.stage = stage;
  if (flags.shuffle) opt.policy.shuffle_seed = *flags.shuffle;

  std::vector<std::string> texts;
  std::vector<std::string> read_errors(flags.inputs.size());
  for (std::size_t i = 0; i < flags.inputs.size(); ++i) {
    try {
      texts.push_back(read_file(flags.inputs[i]));
    } catch (const Error& e) {
      texts.emplace_back();
      read_errors[i] = e.what();
    }
  }
  if (!flags.witness.empty()) {
    try {
      opt.witness = parse_json_text(read_file(flags.witness));
    } catch (const Error& e) {
      std::cerr << e.what() << "\n";
      return kExitParseError;
    }
  }

  std::vector<PipelineResult> results = run_batch(texts, opt);
  int code = kExitOk;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (!read_errors[i].empty()) {
      results[i].exit_code = kExitParseError;
      results[i].report = Json{{"error", read_errors[i]}, {"exit_code", kExitParseError}, {"status", "parse-error"}};
    }
    results[i].report["file"] = flags.inputs[i];
    code = std::max(code, results[i].exit_code);
    if (results[i].report.contains("error")) {
      std::cerr << flags.inputs[i] << ": " << results[i].report["error"].get<std::string>() << "\n";
    }
  }

  std::string text;
  if (flags.format == "dot") {
    for (std::size_t i = 0; i < results.size(); ++i) {
      if (results[i].exit_code != kExitOk && !results[i].report.contains("witness")) continue;
      try {
        text += dot_for(results[i], opt, texts[i]);
      } catch (const Error& e) {
        std::cerr << flags.inputs[i] << ": " << e.what() << "\n";
        code = std::max<int>(code, kExitInvariantViolation);
      }
    }
  } else if (results.size() == 1) {
    text = results.front().report.dump(2) + "\n";
  } else {
    Json all = Json::array();
    for (const PipelineResult& r : results) all.push_back(r.report);
    text = all.dump(2) + "\n";
  }
  write_output(flags.out, text);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compactify selfmaps whose iterated images shrink to a fixed point"};
  app.require_subcommand(1);

  CommonFlags flags;
  const std::vector<std::pair<std::string, Stage>> stages = {
      {"check", Stage::Check},           {"decompose", Stage::Decompose}, {"atomize", Stage::Atomize},
      {"compactify", Stage::Compactify}, {"verify", Stage::Verify},
  };
  const std::vector<std::string> descriptions = {
      "Test whether the iterated images shrink to a single fixed point",
      "Split X \\ {x*} into trees (finite) or branches (ray)",
      "Compute the pi/lambda partitions of every level chain",
      "Build the topology witness",
      "Build (or load with --witness) and independently verify a witness",
  };
  Stage selected = Stage::Verify;
  for (std::size_t i = 0; i < stages.size(); ++i) {
    CLI::App* sub = app.add_subcommand(stages[i].first, descriptions[i]);
    sub->add_option("instances", flags.inputs, "Instance files (JSON), '-' for stdin")->required();
    sub->add_option("--out", flags.out, "Write output here instead of stdout");
    sub->add_option("--format", flags.format, "Output format")->check(CLI::IsMember({"json", "dot"}));
    sub->add_option("--shuffle-orders", flags.shuffle, "Use seeded pseudo-random well-orders on fibers");
    if (stages[i].second == Stage::Verify) {
      sub->add_option("--witness", flags.witness, "Verify this witness file instead of building one");
    }
    sub->callback([&selected, stage = stages[i].second] { selected = stage; });
  }

  GeneratorConfig gen;
  std::string shape_name = "uniform";
  std::string gen_out;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Generate a random system satisfying the condition");
  gen_cmd->add_option("--size", gen.size, "Number of points")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen.seed, "Random seed");
  gen_cmd->add_option("--shape", shape_name, "uniform | deep-chain | wide-fan")
      ->check(CLI::IsMember({"uniform", "deep-chain", "wide-fan"}));
  gen_cmd->add_option("--out", gen_out, "Write the instance here instead of stdout");

  std::string dot_input;
  std::string dot_out;
  bool dot_witness = false;
  std::optional<std::uint64_t> dot_shuffle;
  CLI::App* dot_cmd = app.add_subcommand("export-dot", "Write a DOT graph of a system or its witness");
  dot_cmd->add_option("instance", dot_input, "Instance file (JSON)")->required();
  dot_cmd->add_flag("--witness", dot_witness, "Draw the witness forest instead of the functional graph");
  dot_cmd->add_option("--shuffle-orders", dot_shuffle, "Use seeded pseudo-random well-orders on fibers");
  dot_cmd->add_option("--out", dot_out, "Write output here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen_cmd->parsed()) {
      gen.shape = *parse_shape(shape_name);
      write_output(gen_out, to_json(gen_system(gen)).dump() + "\n");
      return kExitOk;
    }
    if (dot_cmd->parsed()) {
      const Instance instance = parse_instance(read_file(dot_input));
      OrderPolicy policy;
      if (dot_shuffle) policy.shuffle_seed = *dot_shuffle;
      std::string text;
      if (const auto* system = std::get_if<SelfmapSystem>(&instance); system && !dot_witness) {
        text = export_dot(*system);
      } else {
        text = std::visit([&](const auto& inst) { return export_dot(build_witness(inst, policy)); }, instance);
      }
      write_output(dot_out, text);
      return kExitOk;
    }
    return run_stage(selected, flags);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::ParseError:
      case ErrorKind::InvalidSystem:
      case ErrorKind::InvalidPresentation:
        return kExitParseError;
      case ErrorKind::ConditionFails:
        return kExitConditionFails;
      default:
        return kExitInvariantViolation;
    }
  }
}
