#pragma once

#include <chrono>
#include <string>

namespace extopo::acceptance {

/// Collects one PASS/FAIL line per criterion and the process exit status.
class Report {
 public:
  void record(int criterion, const std::string& title, bool pass, const std::string& detail);
  /// 0 when every recorded criterion passed.
  int exit_code() const noexcept { return failures_ == 0 ? 0 : 1; }

 private:
  int failures_ = 0;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(double x);

}  // namespace extopo::acceptance
