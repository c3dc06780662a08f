#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace fdiff {

inline constexpr std::uint64_t kDefaultSeed = 0xD1FF;

struct Check {
  std::string name;
  bool pass = true;
  std::string detail;
};

// Outcome of a verification: named checks, witnesses for failures, parameters, sub-reports.
// A failing report always carries at least one witness.
class Report {
 public:
  explicit Report(std::string name = "report");

  Report& param(const std::string& key, const std::string& value);
  Report& param(const std::string& key, std::int64_t value);
  Report& check(const std::string& name, bool pass, const std::string& detail = "");
  Report& witness(const std::string& w);
  Report& note(const std::string& n);
  Report& add(Report sub);

  bool passed() const;
  const std::string& name() const { return name_; }
  const std::vector<Check>& checks() const { return checks_; }
  const std::vector<std::string>& witnesses() const { return witnesses_; }
  const std::vector<std::string>& notes() const { return notes_; }
  const std::vector<std::pair<std::string, std::string>>& params() const { return params_; }
  const std::vector<Report>& children() const { return children_; }
  double millis() const { return ms_; }
  void set_millis(double ms) { ms_ = ms; }

  // first witness found anywhere in the tree, empty if none
  std::string first_witness() const;
  std::string text(int indent = 0) const;

 private:
  std::string name_;
  std::vector<Check> checks_;
  std::vector<std::string> witnesses_;
  std::vector<std::string> notes_;
  std::vector<std::pair<std::string, std::string>> params_;
  std::vector<Report> children_;
  double ms_ = 0;
};

class Stopwatch {
 public:
  Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
  double millis() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_;
};

}  // namespace fdiff
