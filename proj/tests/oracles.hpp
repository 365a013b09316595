#pragma once

// Slow reference computations that share nothing with the library paths they
// check.

#include <algorithm>
#include <set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "urysohn/concentration.hpp"

namespace urysohn::testing {

/// me_lambda by scanning every point where the condition can switch. The
/// mass above eps is recomputed from scratch by evaluating f and g.
inline Rational me_lambda_oracle(const StepFunction& f, const StepFunction& g, const MetricSpace& X,
                                 const Rational& lambda) {
  std::set<Rational> cuts(f.breakpoints.begin(), f.breakpoints.end());
  cuts.insert(g.breakpoints.begin(), g.breakpoints.end());
  std::vector<Rational> cut(cuts.begin(), cuts.end());
  auto mass_above = [&](const Rational& eps) {
    Rational m(0);
    for (std::size_t i = 0; i + 1 < cut.size(); ++i) {
      Rational mid = (cut[i] + cut[i + 1]) / Rational(2);
      if (X(f(mid), g(mid)) > eps) m += cut[i + 1] - cut[i];
    }
    return m;
  };
  // Switch points: the distances (jumps of the mass) and every mass/lambda.
  std::set<Rational> cand{Rational(0)};
  for (std::size_t i = 0; i + 1 < cut.size(); ++i) {
    Rational mid = (cut[i] + cut[i + 1]) / Rational(2);
    Rational d = X(f(mid), g(mid));
    cand.insert(d);
    cand.insert(mass_above(d) / lambda);
  }
  cand.insert(Rational(1) / lambda);
  std::vector<Rational> c(cand.begin(), cand.end());
  for (std::size_t i = 0; i < c.size(); ++i) {
    Rational probe = i + 1 < c.size() ? (c[i] + c[i + 1]) / Rational(2) : c[i] + Rational(1);
    if (mass_above(probe) < lambda * probe) return c[i];
  }
  return c.back();
}

/// P(Bin(n,p) <= t) by propagating the whole distribution row by row.
inline boost::multiprecision::cpp_rational pascal_cdf(std::size_t n, const Rational& p, std::int64_t t) {
  using boost::multiprecision::cpp_rational;
  cpp_rational P(p.num(), p.den()), Q = 1 - P;
  std::vector<cpp_rational> row{1};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<cpp_rational> next(row.size() + 1, 0);
    for (std::size_t j = 0; j < row.size(); ++j) {
      next[j] += row[j] * Q;
      next[j + 1] += row[j] * P;
    }
    row = std::move(next);
  }
  cpp_rational total = 0;
  for (std::int64_t j = 0; j <= t && j < static_cast<std::int64_t>(row.size()); ++j) total += row[static_cast<std::size_t>(j)];
  return total;
}

}  // namespace urysohn::testing
