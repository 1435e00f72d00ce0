#include "compactify/pipeline.hpp"

#include <atomic>
#include <future>
#include <thread>

#include "compactify/error.hpp"

namespace compactify {

namespace {

int exit_code_for(ErrorKind kind) {
  switch (kind) {
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

const char* status_for(int code) {
  switch (code) {
    case kExitOk: return "ok";
    case kExitConditionFails: return "condition-fails";
    case kExitParseError: return "parse-error";
    default: return "invariant-violation";
  }
}

bool reached(Stage stage, Stage target) { return static_cast<int>(stage) >= static_cast<int>(target); }

int finish_verify(Json& report, const CheckReport& check) {
  report["check"] = to_json(check);
  return check.passed() ? kExitOk : kExitInvariantViolation;
}

int run_finite(const SelfmapSystem& system, const PipelineOptions& opt, Json& report) {
  const ConditionReport condition = check_condition(system);
  report["condition"] = to_json(condition);
  if (!condition.holds) return kExitConditionFails;
  if (opt.stage == Stage::Check) return kExitOk;

  const ClassDecomposition forest = decompose(system);
  report["decomposition"] = to_json(forest);
  if (opt.stage == Stage::Decompose) return kExitOk;

  if (opt.witness) return finish_verify(report, verify_witness(system, witness_from_json(*opt.witness)));

  Json chains = Json::array();
  for (const GrandOrbitClass& cls : forest.classes) {
    const Chain chain = first_kind_chain(system, cls);
    chains.push_back(Json{{"seed", cls.seed}, {"chain", to_json(chain)}, {"atomization", to_json(atomize_chain(chain))}});
  }
  report["atomizations"] = chains;
  if (opt.stage == Stage::Atomize) return kExitOk;

  const TopologyWitness witness = build_witness(system, opt.policy);
  report["witness"] = to_json(witness);
  if (opt.stage == Stage::Compactify) return kExitOk;
  return finish_verify(report, verify_witness(system, witness));
}

int run_ray(const RayPresentation& ray, const PipelineOptions& opt, Json& report) {
  report["condition"] = to_json(check_condition_ray(ray));
  if (opt.stage == Stage::Check) return kExitOk;

  const BranchDecomposition branches = second_kind_branches(ray);
  Json levels = Json::array();
  for (const BranchStructure& b : branches.branches) {
    levels.push_back(Json{{"ray_index", b.ray_index}, {"levels", b.level_sets}});
  }
  report["decomposition"] = Json{{"star", RayLayout::star()},
                                 {"branches", levels},
                                 {"tail", Json{{"from", branches.tail.from}, {"branch_cardinality", 1}}},
                                 {"names", RayLayout(ray).names()}};
  if (opt.stage == Stage::Decompose) return kExitOk;

  if (opt.witness) return finish_verify(report, verify_witness(ray, witness_from_json(*opt.witness)));

  Json chains = Json::array();
  for (const BranchStructure& b : branches.branches) {
    chains.push_back(
        Json{{"ray_index", b.ray_index}, {"chain", to_json(b.chain)}, {"atomization", to_json(atomize_chain(b.chain))}});
  }
  report["atomizations"] = chains;
  if (opt.stage == Stage::Atomize) return kExitOk;

  const TopologyWitness witness = build_witness(ray, opt.policy);
  report["witness"] = to_json(witness);
  if (opt.stage == Stage::Compactify) return kExitOk;
  return finish_verify(report, verify_witness(ray, witness));
}

}  // namespace

PipelineResult run_pipeline(std::string_view instance_text, const PipelineOptions& options) {
  PipelineResult result;
  result.report = Json::object();
  try {
    const Instance instance = parse_instance(instance_text);
    result.report["instance"] = to_json(instance);
    result.exit_code = std::visit(
        [&](const auto& inst) {
          if constexpr (std::is_same_v<std::decay_t<decltype(inst)>, SelfmapSystem>) {
            return run_finite(inst, options, result.report);
          } else {
            return run_ray(inst, options, result.report);
          }
        },
        instance);
  } catch (const Error& e) {
    result.exit_code = exit_code_for(e.kind());
    result.report["error"] = e.what();
  } catch (const std::exception& e) {
    result.exit_code = kExitInvariantViolation;
    result.report["error"] = e.what();
  }
  result.report["exit_code"] = result.exit_code;
  result.report["status"] = result.exit_code == kExitOk && reached(options.stage, Stage::Verify) ? "verified"
                                                                                                    : status_for(result.exit_code);
  return result;
}

std::vector<PipelineResult> run_batch(const std::vector<std::string>& instance_texts, const PipelineOptions& options) {
  std::vector<PipelineResult> out(instance_texts.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < instance_texts.size(); i = next++) out[i] = run_pipeline(instance_texts[i], options);
  };
  const std::size_t threads =
      std::min<std::size_t>(instance_texts.size(), std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::future<void>> pool;
  for (std::size_t t = 0; t < threads; ++t) pool.push_back(std::async(std::launch::async, worker));
  for (auto& f : pool) f.get();
  return out;
}

}  // namespace compactify
