#pragma once
// Minimal shared test harness: record() prints one PASS/FAIL line per
// assertion (with an optional quantity-of-interest detail string) and
// summary() prints the totals and yields the process exit code.

#include <cmath>
#include <cstdio>
#include <string>

namespace testh {

inline int g_pass = 0;
inline int g_fail = 0;

inline void record(const std::string& name, bool ok, const std::string& detail = "") {
  std::printf("  %s: %s%s%s\n", ok ? "PASS" : "FAIL", name.c_str(),
              detail.empty() ? "" : "  ", detail.c_str());
  (ok ? g_pass : g_fail)++;
}

inline std::string qoi(const char* label, double v) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "(%s=%.6g)", label, v);
  return buf;
}

inline std::string qoi2(const char* l1, double v1, const char* l2, double v2) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "(%s=%.6g, %s=%.6g)", l1, v1, l2, v2);
  return buf;
}

// |a-b| scaled by the larger magnitude (0 when both vanish).
inline double rel_err(double a, double b) {
  double s = std::fmax(std::fabs(a), std::fabs(b));
  return s == 0.0 ? 0.0 : std::fabs(a - b) / s;
}

inline int summary(const char* suite) {
  std::printf("\n%s: %d passed, %d failed\n", suite, g_pass, g_fail);
  return g_fail == 0 ? 0 : 1;
}

}  // namespace testh
