#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "csplearn/error.hpp"

namespace csplearn {

// Regularized upper incomplete gamma Q(a, x), series + Lentz continued
// fraction. Double precision; plenty for thresholding test statistics.
inline double gamma_q(double a, double x) {
  if (a <= 0.0 || x < 0.0) throw DomainError("gamma_q needs a > 0, x >= 0");
  if (x == 0.0) return 1.0;
  const double log_prefix = -x + a * std::log(x) - std::lgamma(a);
  if (x < a + 1.0) {
    // P(a,x) by series, return 1 - P.
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int i = 0; i < 500; ++i) {
      ap += 1.0;
      term *= x / ap;
      sum += term;
      if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
    }
    return 1.0 - sum * std::exp(log_prefix);
  }
  // Q(a,x) by continued fraction (modified Lentz).
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -double(i) * (double(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(log_prefix) * h;
}

struct ChiSquareResult {
  double statistic = 0.0;
  int degrees_of_freedom = 0;
  double p_value = 1.0;
};

// Goodness of fit against given expected counts.
inline ChiSquareResult chi_square_gof(const std::vector<std::uint64_t>& observed,
                                      const std::vector<double>& expected) {
  if (observed.size() != expected.size() || observed.empty())
    throw DomainError("chi-square: observed/expected size mismatch");
  ChiSquareResult r;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (expected[i] <= 0.0) throw DomainError("chi-square: nonpositive expected count");
    const double diff = double(observed[i]) - expected[i];
    r.statistic += diff * diff / expected[i];
  }
  r.degrees_of_freedom = int(observed.size()) - 1;
  r.p_value = r.degrees_of_freedom > 0
                  ? gamma_q(0.5 * r.degrees_of_freedom, 0.5 * r.statistic)
                  : 1.0;
  return r;
}

// Uniformity over k categories.
inline ChiSquareResult chi_square_uniform(const std::vector<std::uint64_t>& observed) {
  std::uint64_t total = 0;
  for (auto c : observed) total += c;
  std::vector<double> expected(observed.size(),
                               double(total) / double(observed.size()));
  return chi_square_gof(observed, expected);
}

// Independence test on an r x c contingency table. Zero-total rows/columns
// are dropped (they carry no information) and the df adjusted accordingly.
inline ChiSquareResult chi_square_independence(
    const std::vector<std::vector<std::uint64_t>>& table) {
  const std::size_t rows = table.size();
  if (rows == 0) throw DomainError("chi-square: empty table");
  const std::size_t cols = table[0].size();
  std::vector<double> row_tot(rows, 0.0), col_tot(cols, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    if (table[i].size() != cols) throw DomainError("chi-square: ragged table");
    for (std::size_t j = 0; j < cols; ++j) {
      row_tot[i] += double(table[i][j]);
      col_tot[j] += double(table[i][j]);
      total += double(table[i][j]);
    }
  }
  ChiSquareResult r;
  int live_rows = 0, live_cols = 0;
  for (double t : row_tot)
    if (t > 0.0) ++live_rows;
  for (double t : col_tot)
    if (t > 0.0) ++live_cols;
  r.degrees_of_freedom = (live_rows - 1) * (live_cols - 1);
  if (r.degrees_of_freedom <= 0 || total == 0.0) {
    r.degrees_of_freedom = 0;
    return r;  // degenerate: nothing to test
  }
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      const double expected = row_tot[i] * col_tot[j] / total;
      if (expected <= 0.0) continue;
      const double diff = double(table[i][j]) - expected;
      r.statistic += diff * diff / expected;
    }
  r.p_value = gamma_q(0.5 * r.degrees_of_freedom, 0.5 * r.statistic);
  return r;
}

// FNV-1a over raw bytes; used to bucket instances for independence tests and
// to fingerprint artifacts in reports.
inline std::uint64_t fnv1a(const void* data, std::size_t len,
                           std::uint64_t h = 1469598103934665603ull) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace csplearn
