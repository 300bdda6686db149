#pragma once

// Runs a suite configuration entry by entry and assembles the report.

#include <chrono>
#include <exception>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "kslab/harness/config.hpp"
#include "kslab/harness/ops.hpp"
#include "kslab/harness/report.hpp"
#include "kslab/harness/spaces.hpp"

namespace kslab::harness {

struct RunOptions {
  std::optional<double> tolerance_override;
  bool record_wall_time = false;
};

inline ReportEntry run_entry(const TestMatrixEntry& e, const Space* space, const RunOptions& opts) {
  ReportEntry r;
  r.id = e.id;
  r.space = e.space;
  r.op = e.op;
  r.field = e.field;
  r.tolerance = opts.tolerance_override.value_or(e.tolerance);
  r.expected = e.expected;
  const auto start = std::chrono::steady_clock::now();
  try {
    const auto& registry = op_registry();
    const auto it = registry.find(e.op);
    if (it == registry.end()) throw PreconditionError("unknown op '" + e.op + "'");
    OpContext ctx{space, e, SplitMix64(e.seed)};
    const OpOutcome out = it->second.run(ctx);
    r.residual = out.residual;
    r.fd_error = out.fd_error;
    r.values = out.values;
    r.status = classify(r.residual, r.fd_error, r.tolerance);
    if (r.status == Status::kInconclusive) r.reason = "fd error estimate exceeds tolerance";
  } catch (const std::exception& ex) {
    r.residual = std::numeric_limits<double>::quiet_NaN();
    r.status = Status::kFail;
    r.reason = ex.what();
  }
  if (opts.record_wall_time)
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

/// Builds every referenced space once, runs all entries in order and sorts
/// the report by (space, op, id). Space construction failures are config
/// errors; numerical failures inside an entry mark only that entry.
inline Report run_suite(const SuiteConfig& cfg, const RunOptions& opts = {}) {
  std::map<std::string, std::unique_ptr<Space>> spaces;
  for (const auto& [id, spec] : cfg.spaces.items()) spaces.emplace(id, std::make_unique<Space>(build_space(id, spec)));
  Report report;
  report.catalog_hash = fnv1a_hex(canonical_json(cfg.spaces));
  for (const auto& e : cfg.entries) {
    const Space* space = e.space.empty() ? nullptr : spaces.at(e.space).get();
    report.entries.push_back(run_entry(e, space, opts));
  }
  report.sort();
  return report;
}

inline Report run_suite(const std::string& config_path, const RunOptions& opts = {}) {
  return run_suite(load_config(config_path), opts);
}

}  // namespace kslab::harness
