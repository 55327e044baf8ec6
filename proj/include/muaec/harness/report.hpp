#pragma once

#include <compare>
#include <string>
#include <vector>

namespace muaec {

/// One line of an audit report. `structure` and `subset` are "*" on records
/// that summarize a whole check.
struct ReportRecord {
  std::string cls;
  std::string structure;
  std::string subset;
  std::string check;
  /// "pass", "fail", "expected-fail" (a negative control did fail) or "info".
  std::string verdict;
  /// The property the check tests, in words.
  std::string claim;
  std::string detail;

  auto operator<=>(const ReportRecord&) const = default;
};

/// Zero-padded so that text order is index order.
std::string structure_id(std::size_t index);

struct Report {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<ReportRecord> records;

  std::size_t failures() const;
  /// Records sorted, then rendered as YAML.
  std::string to_yaml() const;
  /// One line per summary record plus totals.
  std::string summary() const;
};

}  // namespace muaec
