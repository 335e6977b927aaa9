#pragma once

#include <iosfwd>
#include <string>

#include "multibanana/gvpf.hpp"
#include "multibanana/qseries.hpp"

namespace mb::cli {

enum class Command { Compute, Verify, Crosscheck };
enum class Format { Json, Csv };

struct RunConfig {
  Command command = Command::Compute;
  std::string shape = "2x2";  // "2x2" or "1xW"
  int w = 1;
  int order = 8;
  Format format = Format::Json;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;  // a check did not pass
inline constexpr int kExitUsage = 2;   // bad flags or unsupported shape

std::string table_json(const gvpf::GVTable& table, const RunConfig& config);
std::string table_csv(const gvpf::GVTable& table);
std::string identities_json(const std::vector<qseries::IdentityResult>& results, int order);
std::string identities_csv(const std::vector<qseries::IdentityResult>& results);
std::string cross_check_json(const gvpf::CrossCheckReport& report, const RunConfig& config);
std::string cross_check_csv(const gvpf::CrossCheckReport& report);

/// Executes a parsed configuration.  Results go to `out`, diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (subcommand plus --shape/--w/--order/--format) and runs it.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace mb::cli
