#pragma once

#include <filesystem>
#include <string>

#include "ferris/config.hpp"

namespace ferris {

// Command implementations behind the CLI verbs. Each writes its outputs under
// `out_dir` (CSV always; images per cfg.format) and returns the primary file.
// All writers are atomic (temp file + rename), so a failing command leaves no
// partial outputs.

std::filesystem::path run_mask(const RunConfig& cfg, const std::filesystem::path& out_dir,
                               const std::string& basename = "mask");
std::filesystem::path run_potential(const RunConfig& cfg, const std::filesystem::path& out_dir);
std::filesystem::path run_imprint(const RunConfig& cfg, const std::filesystem::path& out_dir);
std::filesystem::path run_orders(const RunConfig& cfg, const std::filesystem::path& out_dir,
                                 int max_field_order = 2);
std::filesystem::path run_ferris(const RunConfig& cfg, const std::filesystem::path& out_dir,
                                 const std::string& basename = "ferris");
std::filesystem::path run_propagate(const RunConfig& cfg, const std::filesystem::path& out_dir);
std::filesystem::path run_validate(const RunConfig& cfg, const std::filesystem::path& out_dir);
std::filesystem::path run_figure(const std::string& which, RunConfig cfg,
                                 const std::filesystem::path& out_dir);

// One-line parameter echo embedded in CSV headers.
std::string config_echo(const RunConfig& cfg);

}  // namespace ferris
