#pragma once

#include <optional>
#include <vector>

#include "centra/rational.hpp"

namespace centra {

/// Fourier-Motzkin feasibility for a homogeneous system of strict
/// inequalities rows[i] . c > 0. Returns one exact satisfying vector, or
/// absent when the system is infeasible. Deterministic: variables are
/// eliminated last to first and back-substituted with midpoint/offset
/// choices.
inline std::optional<std::vector<Rational>> strict_feasible_point(
    const std::vector<std::vector<Rational>>& rows, int nvars) {
  auto all_zero = [](const std::vector<Rational>& row) {
    for (const auto& x : row)
      if (x != 0) return false;
    return true;
  };

  for (const auto& row : rows)
    if (all_zero(row)) return std::nullopt;  // 0 > 0

  // levels[v] holds the rows alive just before variable v is eliminated;
  // those rows involve only variables 0..v.
  std::vector<std::vector<std::vector<Rational>>> levels(nvars);
  std::vector<std::vector<Rational>> active = rows;
  for (int v = nvars - 1; v >= 0; --v) {
    levels[v] = active;
    std::vector<std::vector<Rational>> next;
    std::vector<const std::vector<Rational>*> pos, neg;
    for (const auto& row : active) {
      if (row[v] > 0)
        pos.push_back(&row);
      else if (row[v] < 0)
        neg.push_back(&row);
      else
        next.push_back(row);
    }
    for (const auto* p : pos)
      for (const auto* q : neg) {
        // (*p)[v] > 0 and (*q)[v] < 0: both multipliers positive, so the
        // combination preserves strictness
        std::vector<Rational> combo(nvars);
        for (int j = 0; j < v; ++j)
          combo[j] = (*p)[v] * (*q)[j] - (*q)[v] * (*p)[j];
        if (all_zero(combo)) return std::nullopt;
        next.push_back(std::move(combo));
      }
    active = std::move(next);
  }

  std::vector<Rational> c(nvars);
  for (int v = 0; v < nvars; ++v) {
    std::optional<Rational> lower, upper;
    for (const auto& row : levels[v]) {
      if (row[v] == 0) continue;  // already satisfied at an earlier level
      Rational rest = 0;
      for (int j = 0; j < v; ++j) rest += row[j] * c[j];
      const Rational bound = -rest / row[v];
      if (row[v] > 0) {
        if (!lower || bound > *lower) lower = bound;
      } else {
        if (!upper || bound < *upper) upper = bound;
      }
    }
    if (lower && upper)
      c[v] = (*lower + *upper) / 2;
    else if (lower)
      c[v] = *lower + 1;
    else if (upper)
      c[v] = *upper - 1;
    // else unconstrained: keep 0
  }
  return c;
}

}  // namespace centra
