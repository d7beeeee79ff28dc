#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "viphon/metrics.hpp"
#include "viphon/phonemic_head.hpp"

namespace viphon::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

struct CliConfig {
  std::string subcommand;
  // "-" is standard input. Empty means standard input, except for vocab and
  // roundtrip where it selects the bundled lexicon.
  std::string input;
  std::string input2;        // score: hypothesis file
  std::string output = "-";  // "-" is standard output
  std::string kept_file;     // filter
  std::string discard_file;  // filter
  std::string table_file;   // vocab: where to write the id table
  std::string params_file;  // demo-head: where to save the first configuration
  std::string dataset;      // filter: published figures to print beside the stats

  bool strict = false;
  bool cer_spaces = false;
  PerMode per_mode = PerMode::kTuple;
  head::ResidualMode residual = head::ResidualMode::kNormalized;
  bool nfd_ok = true;
  bool pairs = false;           // score: input is JSONL with "ref" and "hyp"
  bool canonical_only = false;  // filter: reject variant spellings

  int configs = 100;
  std::uint64_t seed = 20240601;
};

// Defaults before any argument is applied.
CliConfig default_config();

// Parses `args` (without the program name). Returns the exit code to use when
// parsing ends the run (help, usage error), or -1 to continue.
int parse_args(const std::vector<std::string>& args, CliConfig& config, std::ostream& out, std::ostream& err);

int run(const CliConfig& config, std::istream& in, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace viphon::cli
