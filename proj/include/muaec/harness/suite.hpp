#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "muaec/aec/audit.hpp"
#include "muaec/core/error.hpp"
#include "muaec/harness/report.hpp"
#include "muaec/morley/chain.hpp"

namespace muaec {

struct SuiteConfig {
  /// Empty: every catalog entry.
  std::string class_name;
  /// Empty: each entry's exhaustive corpus. Otherwise requires class_name.
  std::filesystem::path corpus;
  /// Largest structure size per entry, never above the entry's exhaustive
  /// bound. Unset: 4, raised to the smallest non-empty member's size.
  std::optional<std::size_t> max_size;
  /// Overrides each entry's expected bound in the multiuniversality suite.
  std::optional<std::size_t> eta;
  std::size_t budget = 1u << 24;
  std::uint64_t seed = kDefaultSeed;
  std::size_t jobs = 1;
};

const std::vector<std::string>& suite_names();

/// Throws kUsage for an unknown suite or class, kIo/kParse for an unreadable
/// corpus, kBudgetExceeded when a search outgrows the budget.
Report run_suite(const std::string& suite, const SuiteConfig& config);

/// Writes report.yaml and summary.txt into `dir`, creating it.
void write_report(const Report& report, const std::filesystem::path& dir);

/// 0 when no record failed, else 1.
int exit_code(const Report& report);
/// 2 usage, 3 I/O and parse, 4 budget, 1 otherwise.
int exit_code(ErrorCode code);

struct ChainScenario {
  std::string name;
  AecClassPtr cls;
  std::vector<OracleRecord> records;
  std::size_t depth = 0;
  /// Set for scenarios whose witnesses disagree; names the index set the
  /// completeness error must mention.
  std::optional<std::string> expected_violation;
};

/// Constant sequence (US1), three endpoints of separate 2-edge paths (CG),
/// three distinct elements of one block (EQ3), and a disagreeing script (CG).
std::vector<ChainScenario> builtin_chain_scenarios();

}  // namespace muaec
