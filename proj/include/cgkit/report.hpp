#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cgkit {

inline constexpr const char* tool_version = "0.1.0";

// One verified (or informational) fact. Failed identity checks carry a
// witness: where the first discrepancy sits and what value was found there.
struct CheckEntry {
  enum class Status { pass, fail, info };

  std::string name;
  Status status = Status::pass;
  std::optional<std::string> witness_location;
  std::optional<std::string> witness_value;
  std::string note;
  double timing_ms = 0.0;
};

struct Report {
  std::string command;
  std::map<std::string, std::string> params;
  std::vector<CheckEntry> checks;

  void add(CheckEntry e) { checks.push_back(std::move(e)); }

  void add_pass(std::string name, double ms = 0.0, std::string note = "") {
    checks.push_back({std::move(name), CheckEntry::Status::pass, {}, {},
                      std::move(note), ms});
  }

  void add_fail(std::string name, std::string where, std::string value,
                double ms = 0.0, std::string note = "") {
    checks.push_back({std::move(name), CheckEntry::Status::fail, std::move(where),
                      std::move(value), std::move(note), ms});
  }

  void add_info(std::string name, std::string note, double ms = 0.0) {
    checks.push_back({std::move(name), CheckEntry::Status::info, {}, {},
                      std::move(note), ms});
  }

  void merge(const Report& o) {
    for (const auto& c : o.checks) checks.push_back(c);
  }

  // Informational entries never affect the verdict.
  bool all_passed() const {
    for (const auto& c : checks)
      if (c.status == CheckEntry::Status::fail) return false;
    return true;
  }
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    auto d = std::chrono::steady_clock::now() - start_;
    return std::chrono::duration<double, std::milli>(d).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace cgkit
