#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "compactify/io.hpp"
#include "compactify/order.hpp"

namespace compactify {

/// Process exit codes shared by the CLI and the batch runner.
enum ExitCode : int {
  kExitOk = 0,
  kExitConditionFails = 1,
  kExitInvariantViolation = 2,
  kExitParseError = 3,
};

/// How far to run: check -> decompose -> atomize -> compactify -> verify.
enum class Stage { Check, Decompose, Atomize, Compactify, Verify };

struct PipelineOptions {
  Stage stage = Stage::Verify;
  OrderPolicy policy;
  /// Verify this witness instead of building one.
  std::optional<Json> witness;
};

struct PipelineResult {
  int exit_code = kExitOk;
  Json report;
};

/// Never throws for bad input; failures become exit codes plus an "error"
/// entry in the report.
PipelineResult run_pipeline(std::string_view instance_text, const PipelineOptions& options);

/// Runs instances concurrently; results are in input order.
std::vector<PipelineResult> run_batch(const std::vector<std::string>& instance_texts, const PipelineOptions& options);

}  // namespace compactify
