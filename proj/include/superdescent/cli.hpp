#pragma once

// Spec ingestion, command implementations and report rendering for the
// superdescent command line tool. Commands return their rendered output and
// exit status instead of printing, so they can be compared byte for byte.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "superdescent/superdual.hpp"

namespace superdescent {

struct RawConstant {
  int i = 0, j = 0, k = 0;
  std::vector<std::int64_t> coeff;  // F_p coordinates of an element of F_q
};

struct AlgebraSpec {
  std::uint32_t p = 2;
  std::uint32_t d = 1;
  int r = 0;
  std::vector<RawConstant> constants;
  std::optional<BuiltinFamily> builtin;
  int builtin_param = 0;
};

/// Parses the JSON spec format; throws InputError.
AlgebraSpec parse_spec(const std::string& text);
AlgebraSpec load_spec_file(const std::string& path);

enum class OutputFormat { tsv, json };

struct RunConfig {
  std::vector<int> levels{1};
  std::uint64_t size_bound = std::uint64_t{1} << 24;
  OutputFormat format = OutputFormat::tsv;
  bool slow_oracle = false;
};

/// Tower, algebra and lattice for a spec; the lattice covers config.levels plus `extra`.
/// Throws SizeBoundError when q^(r L) exceeds the size bound.
struct Session {
  TowerPtr tower;
  AlgebraPtr algebra;
  std::unique_ptr<LevelLattice> lattice;
};
Session open_session(const AlgebraSpec& spec, const RunConfig& config, const std::vector<int>& extra = {});

/// A report is a list of named tables of strings.
struct Section {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  friend bool operator==(const Section&, const Section&) = default;
};
using Report = std::vector<Section>;

std::string render_tsv(const Report& report);
std::string render_json(const Report& report);
Report parse_tsv(const std::string& text);
Report parse_json(const std::string& text);

struct CommandResult {
  int exit_code = 0;
  std::string output;  // rendered report
  std::string error;   // diagnostic for nonzero exits
};

enum ExitCode { kOk = 0, kVerificationFailure = 1, kInputError = 2, kSizeBound = 3 };

Report info_report(const AlgebraSpec& spec, const RunConfig& config);
Report table_report(const AlgebraSpec& spec, const RunConfig& config, int level);
Report shintani_report(const AlgebraSpec& spec, const RunConfig& config, int n, int m);
Report verify_report(const AlgebraSpec& spec, const RunConfig& config);
Report superdual_report(const AlgebraSpec& spec, const RunConfig& config);

/// Commands: errors are mapped to exit codes, reports rendered in config.format.
CommandResult cmd_info(const AlgebraSpec& spec, const RunConfig& config);
CommandResult cmd_table(const AlgebraSpec& spec, const RunConfig& config, int level);
CommandResult cmd_shintani(const AlgebraSpec& spec, const RunConfig& config, int n, int m);
CommandResult cmd_verify(const AlgebraSpec& spec, const RunConfig& config);
CommandResult cmd_superdual(const AlgebraSpec& spec, const RunConfig& config);

/// One named check of the verify battery.
struct CheckResult {
  std::string name;
  std::string scope;  // "level 2", "2->1", "lattice"
  bool passed = false;
  std::string detail;
};
std::vector<CheckResult> run_checks(const AlgebraSpec& spec, const RunConfig& config);

}  // namespace superdescent
