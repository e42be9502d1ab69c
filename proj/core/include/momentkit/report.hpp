#pragma once

#include <string>
#include <vector>

namespace momentkit {

/// A failing instance of a checked identity: the arguments it was evaluated
/// at and the nonzero residual, rendered canonically.
struct Witness {
  std::vector<std::string> at;
  std::string residual;

  friend bool operator==(const Witness &, const Witness &) = default;
};

/// Outcome of one verification. Failure is a value, not an exception.
struct Report {
  Report() = default;
  explicit Report(std::string name) : check(std::move(name)) {}

  std::string check;
  bool passed = true;
  std::vector<Witness> witnesses;
  std::vector<std::string> notes;

  void fail(std::vector<std::string> at, std::string residual)
  {
    passed = false;
    witnesses.push_back({std::move(at), std::move(residual)});
  }
};

/// Several reports aggregated (verify_system, extend_conformal).
struct ReportSet {
  std::vector<Report> reports;

  bool passed() const
  {
    for (const auto &r : reports)
      if (!r.passed)
        return false;
    return true;
  }
  const Report *find(const std::string &check) const
  {
    for (const auto &r : reports)
      if (r.check == check)
        return &r;
    return nullptr;
  }
};

} // namespace momentkit
