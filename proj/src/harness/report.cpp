#include "muaec/harness/report.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cstdio>

namespace muaec {

std::string structure_id(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%06zu", index);
  return buf;
}

std::size_t Report::failures() const {
  return static_cast<std::size_t>(std::count_if(
      records.begin(), records.end(), [](const ReportRecord& r) { return r.verdict == "fail"; }));
}

std::string Report::to_yaml() const {
  std::vector<ReportRecord> sorted = records;
  std::sort(sorted.begin(), sorted.end());
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "suite" << YAML::Value << suite;
  out << YAML::Key << "seed" << YAML::Value << seed;
  out << YAML::Key << "failures" << YAML::Value << failures();
  out << YAML::Key << "records" << YAML::Value << YAML::BeginSeq;
  for (const auto& r : sorted) {
    out << YAML::BeginMap;
    out << YAML::Key << "class" << YAML::Value << r.cls;
    out << YAML::Key << "structure" << YAML::Value << YAML::DoubleQuoted << r.structure;
    out << YAML::Key << "subset" << YAML::Value << YAML::DoubleQuoted << r.subset;
    out << YAML::Key << "check" << YAML::Value << r.check;
    out << YAML::Key << "verdict" << YAML::Value << r.verdict;
    out << YAML::Key << "claim" << YAML::Value << r.claim;
    out << YAML::Key << "detail" << YAML::Value << r.detail;
    out << YAML::EndMap;
  }
  out << YAML::EndSeq << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

std::string Report::summary() const {
  std::vector<ReportRecord> sorted = records;
  std::sort(sorted.begin(), sorted.end());
  std::string text = "suite " + suite + ", seed " + std::to_string(seed) + "\n";
  for (const auto& r : sorted) {
    if (r.structure != "*") continue;
    text += r.verdict + "\t" + r.cls + "\t" + r.check + "\t" + r.detail + "\n";
  }
  text += std::to_string(failures()) + " failing record(s) out of " +
          std::to_string(records.size()) + "\n";
  return text;
}

}  // namespace muaec
