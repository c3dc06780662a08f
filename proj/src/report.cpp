#include "fdiff/report.hpp"

#include <cstdio>

namespace fdiff {

Report::Report(std::string name) : name_(std::move(name)) {}

Report& Report::param(const std::string& key, const std::string& value) {
  params_.emplace_back(key, value);
  return *this;
}

Report& Report::param(const std::string& key, std::int64_t value) {
  return param(key, std::to_string(value));
}

Report& Report::check(const std::string& name, bool pass, const std::string& detail) {
  checks_.push_back({name, pass, detail});
  if (!pass) witness(name + (detail.empty() ? "" : ": " + detail));
  return *this;
}

Report& Report::witness(const std::string& w) {
  // keep reports readable when a check fails on every case
  if (witnesses_.size() < 8) witnesses_.push_back(w);
  return *this;
}

Report& Report::note(const std::string& n) {
  notes_.push_back(n);
  return *this;
}

Report& Report::add(Report sub) {
  children_.push_back(std::move(sub));
  return *this;
}

bool Report::passed() const {
  for (const auto& c : checks_)
    if (!c.pass) return false;
  for (const auto& r : children_)
    if (!r.passed()) return false;
  return witnesses_.empty();
}

std::string Report::first_witness() const {
  if (!witnesses_.empty()) return witnesses_.front();
  for (const auto& r : children_) {
    auto w = r.first_witness();
    if (!w.empty()) return w;
  }
  return "";
}

std::string Report::text(int indent) const {
  std::string pad(static_cast<std::size_t>(indent), ' ');
  std::string s = pad + (passed() ? "[pass] " : "[FAIL] ") + name_;
  if (!params_.empty()) {
    s += " (";
    for (std::size_t i = 0; i < params_.size(); ++i) {
      if (i) s += ", ";
      s += params_[i].first + "=" + params_[i].second;
    }
    s += ")";
  }
  s += "\n";
  for (const auto& c : checks_) {
    s += pad + "  " + (c.pass ? "ok   " : "FAIL ") + c.name;
    if (!c.detail.empty()) s += "  " + c.detail;
    s += "\n";
  }
  for (const auto& n : notes_) s += pad + "  note: " + n + "\n";
  for (const auto& w : witnesses_) s += pad + "  witness: " + w + "\n";
  for (const auto& r : children_) s += r.text(indent + 2);
  return s;
}

}  // namespace fdiff
