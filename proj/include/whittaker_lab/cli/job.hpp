#pragma once

#include <json.hpp>

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace wlab::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int {
  kPassed = 0,
  kCheckFailed = 1,
  kPrecondition = 2,
  kDivergence = 3,
};

/// One command-line job. Parameters are kept as the strings given on the
/// command line; run() parses and validates all of them before computing.
struct JobSpec {
  std::string command;  // schur, whittaker, forward, inverse, pairing, verify, lfactor-table
  std::string suite;    // verify only
  std::map<std::string, std::vector<std::string>> params;
  std::string format;   // json or csv; empty selects the command default
  std::optional<std::string> output;
};

struct Outcome {
  int exit_code = kPassed;
  std::string document;
};

/// Executes a job and renders its report. Never throws.
Outcome run(const JobSpec& job);

/// Re-runs the job echoed in a saved report, checks that the new document is
/// byte-identical and that every stored check is self-consistent.
Outcome recheck(const std::string& path);

Json job_to_json(const JobSpec& job);
JobSpec job_from_json(const Json& inputs);

/// "re" or "re:im".
std::complex<double> parse_complex(const std::string& text);

}  // namespace wlab::cli
