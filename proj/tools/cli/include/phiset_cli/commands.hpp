#pragma once

#include <string>
#include <vector>

#include "phiset_cli/json_io.hpp"

namespace phiset::cli {

inline constexpr const char* kVersion = "0.1.0";

enum class Format { json, text };

struct Outcome {
  int exit_code = 0;  // 0 verdict true / value, 1 verdict false, 2 input error
  Json report;
};

const std::vector<std::string>& command_names();

/// Dispatch one instance document. Engine errors propagate; main() maps them
/// to exit code 2.
Outcome run_command(const std::string& command, const Json& instance, const Limits& limits = default_limits());

/// Report for an error that stops a command (exit code 2).
Json error_report(const std::string& command, const std::string& kind, const std::string& message);

/// Indented JSON with sets kept on one line; the on-disk format for reports,
/// instances and corpus documents.
std::string to_pretty(const Json& doc);
std::string render(const Json& report, Format format);

}  // namespace phiset::cli
