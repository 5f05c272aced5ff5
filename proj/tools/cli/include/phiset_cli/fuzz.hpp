#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "phiset_cli/json_io.hpp"

namespace phiset::cli {

struct FuzzBounds {
  std::size_t max_points = 3;
  /// Sizes up to this are enumerated exhaustively; larger ones are sampled.
  std::size_t exhaustive_points = 3;
  std::size_t alphabet = 2;
  std::size_t depth = 2;
  std::uint64_t seed = 1;
  /// Random instances per size above the exhaustive threshold.
  std::size_t budget = 200;
};

struct SuiteResult {
  std::string suite;
  std::uint64_t checked = 0;
  /// Instances where a statement that must hold failed.
  std::uint64_t violations = 0;
  /// Instances showing a dropped hypothesis matters.
  std::uint64_t counterexamples = 0;
  /// The suite is a necessity search and must find a counterexample.
  bool needs_counterexample = false;
  /// First violation / first counterexample in canonical search order, as
  /// replayable corpus documents.
  std::vector<Json> findings;
  Json stats = Json::object();

  bool passed() const { return violations == 0 && (!needs_counterexample || counterexamples > 0); }
};

const std::vector<std::string>& suite_names();

/// Throws InputError for an unknown suite.
SuiteResult run_suite(const std::string& suite, const FuzzBounds& bounds);

/// Re-run the check recorded in a corpus document. Returns true when the
/// stored violation or counterexample occurs again with the same observation.
bool replay(const Json& corpus, const Limits& limits = default_limits());

}  // namespace phiset::cli
