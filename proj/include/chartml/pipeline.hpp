#pragma once

#include <filesystem>

#include "chartml/run_config.hpp"

namespace chartml {

// Subcommand implementations behind the CLI. Each writes its artifacts under
// <out_dir>/<command>-<fingerprint-prefix>/ with the config echoed alongside,
// and returns the run directory. Failures are reported by exception
// (UsageError / DataError).
namespace pipeline {

std::filesystem::path cmd_synth(const RunConfig& config);
std::filesystem::path cmd_ingest(const RunConfig& config);
std::filesystem::path cmd_label(const RunConfig& config);
std::filesystem::path cmd_build_dataset(const RunConfig& config);
std::filesystem::path cmd_train(const RunConfig& config);
std::filesystem::path cmd_evaluate(const RunConfig& config);
std::filesystem::path cmd_sweep(const RunConfig& config);
std::filesystem::path cmd_compare(const RunConfig& config);
std::filesystem::path cmd_forecast(const RunConfig& config);

}  // namespace pipeline

}  // namespace chartml
