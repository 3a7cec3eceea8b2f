#pragma once

#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace qhl {

/// One identity that did not hold: where, and both sides as printed.
struct Failure
{
  nlohmann::json indices;
  std::string lhs;
  std::string rhs;
  std::string note;
};

/// Outcome of a verification run. Failures are data, not exceptions.
struct Report
{
  std::string suite;
  nlohmann::json params = nlohmann::json::object();
  nlohmann::json window = nlohmann::json::array();
  std::int64_t checked = 0;
  std::vector<Failure> failures;
  std::vector<std::string> notes;
  std::int64_t elapsed_ms = 0;

  bool passed() const { return failures.empty(); }

  void record(bool ok, nlohmann::json indices, const std::string& lhs, const std::string& rhs, std::string note = {})
  {
    ++checked;
    if (!ok) {
      failures.push_back({std::move(indices), lhs, rhs, std::move(note)});
    }
  }

  /// Appends another report's counts and failures, keeping this report's metadata.
  void merge(const Report& other)
  {
    checked += other.checked;
    failures.insert(failures.end(), other.failures.begin(), other.failures.end());
    notes.insert(notes.end(), other.notes.begin(), other.notes.end());
  }

  nlohmann::json to_json() const
  {
    nlohmann::json f = nlohmann::json::array();
    for (const auto& x : failures) {
      nlohmann::json e = {{"indices", x.indices}, {"lhs", x.lhs}, {"rhs", x.rhs}};
      if (!x.note.empty()) {
        e["note"] = x.note;
      }
      f.push_back(std::move(e));
    }
    nlohmann::json j = {
      {"suite", suite}, {"params", params}, {"window", window}, {"checked", checked}, {"failures", f},
      {"elapsed_ms", elapsed_ms}};
    if (!notes.empty()) {
      j["notes"] = notes;
    }
    return j;
  }
};

/// Stamps elapsed_ms on the report when it goes out of scope.
class ReportTimer
{
public:
  explicit ReportTimer(Report& r) : m_report(r), m_start(std::chrono::steady_clock::now()) {}
  ~ReportTimer()
  {
    auto d = std::chrono::steady_clock::now() - m_start;
    m_report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(d).count();
  }
  ReportTimer(const ReportTimer&) = delete;
  ReportTimer& operator=(const ReportTimer&) = delete;

private:
  Report& m_report;
  std::chrono::steady_clock::time_point m_start;
};

} // namespace qhl
