#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "phiset_cli/commands.hpp"
#include "phiset_cli/fuzz.hpp"

namespace fs = std::filesystem;
using phiset::cli::Format;
using phiset::cli::Json;

namespace {

Json load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw phiset::InputError(path + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw phiset::InputError(path + ": " + e.what());
  }
}

int emit(const Json& report, Format format, int code) {
  std::cout << phiset::cli::render(report, format);
  return code;
}

const char* kind_of(const std::exception& e) {
  if (dynamic_cast<const phiset::ResourceError*>(&e)) return "resource";
  if (dynamic_cast<const phiset::PreconditionError*>(&e)) return "precondition";
  if (dynamic_cast<const phiset::ModeError*>(&e)) return "mode";
  return "input";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-model engine for Hausdorff operations and the classes they generate"};
  app.require_subcommand(1);

  std::string format_name = "json";
  bool timing = false;
  app.add_option("--format", format_name, "Report format")->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--timing", timing, "Add wall-clock time to reports");

  std::string instance_path;
  std::string selected;
  for (const auto& name : phiset::cli::command_names()) {
    auto* sub = app.add_subcommand(name, "Run `" + name + "` on an instance file");
    sub->add_option("instance", instance_path, "Instance document")->required();
    sub->callback([&selected, name] { selected = name; });
  }

  phiset::cli::FuzzBounds bounds;
  std::string suite;
  std::string corpus_dir;
  auto* fuzz = app.add_subcommand("fuzz", "Run a lemma-check suite");
  fuzz->add_option("suite", suite, "Suite name")->required();
  fuzz->add_option("--seed", bounds.seed, "Seed for the randomized part");
  fuzz->add_option("--max-points", bounds.max_points, "Largest space size");
  fuzz->add_option("--exhaustive-points", bounds.exhaustive_points, "Enumerate every space up to this size");
  fuzz->add_option("--alphabet", bounds.alphabet, "Base alphabet size");
  fuzz->add_option("--depth", bounds.depth, "Longest base branch");
  fuzz->add_option("--budget", bounds.budget, "Random instances per sampled stratum");
  fuzz->add_option("--corpus-dir", corpus_dir, "Write findings here");

  std::vector<std::string> replay_paths;
  auto* replay = app.add_subcommand("replay", "Re-run stored corpus findings");
  replay->add_option("files", replay_paths, "Corpus documents")->required();

  CLI11_PARSE(app, argc, argv);
  const Format format = format_name == "text" ? Format::text : Format::json;
  const auto start = std::chrono::steady_clock::now();
  const auto stamp = [&](Json& report) {
    if (!timing) return;
    report["timing_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  };

  const std::string command = fuzz->parsed() ? "fuzz" : replay->parsed() ? "replay" : selected;
  try {
    if (fuzz->parsed()) {
      const phiset::cli::SuiteResult r = phiset::cli::run_suite(suite, bounds);
      Json report{{"command", "fuzz"}, {"version", phiset::cli::kVersion}, {"suite", suite}, {"seed", bounds.seed}};
      report["bounds"] = Json{{"max_points", bounds.max_points}, {"exhaustive_points", bounds.exhaustive_points},
                              {"alphabet", bounds.alphabet},     {"depth", bounds.depth},
                              {"budget", bounds.budget}};
      report["checked"] = r.checked;
      report["violations"] = r.violations;
      report["counterexamples"] = r.counterexamples;
      report["stats"] = r.stats;
      Json files = Json::array();
      for (const Json& f : r.findings) {
        const std::string name = suite + "-" + f["kind"].get<std::string>() + ".json";
        if (!corpus_dir.empty()) {
          fs::create_directories(corpus_dir);
          std::ofstream(fs::path(corpus_dir) / name) << phiset::cli::to_pretty(f);
        }
        files.push_back(name);
      }
      report["findings"] = std::move(files);
      report["verdict"] = r.passed();
      stamp(report);
      return emit(report, format, r.passed() ? 0 : 1);
    }
    if (replay->parsed()) {
      Json report{{"command", "replay"}, {"version", phiset::cli::kVersion}};
      Json results = Json::array();
      bool all = true;
      for (const auto& path : replay_paths) {
        const bool ok = phiset::cli::replay(load(path));
        all = all && ok;
        results.push_back(Json{{"file", fs::path(path).filename().string()}, {"reproduced", ok}});
      }
      report["results"] = std::move(results);
      report["verdict"] = all;
      stamp(report);
      return emit(report, format, all ? 0 : 1);
    }
    phiset::cli::Outcome out = phiset::cli::run_command(command, load(instance_path));
    stamp(out.report);
    return emit(out.report, format, out.exit_code);
  } catch (const phiset::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return emit(phiset::cli::error_report(command, kind_of(e), e.what()), format, 2);
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return emit(phiset::cli::error_report(command, "input", e.what()), format, 2);
  }
}
