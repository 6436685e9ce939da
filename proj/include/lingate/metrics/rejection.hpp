#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <vector>

#include "lingate/common.hpp"

namespace lingate::metrics {

struct ScoredOutcome {
  double confidence = 0.0;
  bool correct = false;
};

struct CurvePoint {
  double rejection_fraction = 0.0;
  double error_rate = 0.0;
  std::size_t evaluated = 0;
};

struct ErrorRejectionCurve {
  std::vector<CurvePoint> points;
  std::size_t sample_count = 0;

  // Error at an exact rejection fraction that was requested; throws otherwise.
  double error_at(double fraction) const {
    for (const auto& p : points)
      if (std::abs(p.rejection_fraction - fraction) < 1e-12) return p.error_rate;
    throw Error("curve has no point at rejection " + std::to_string(fraction));
  }
};

// Number of items rejected at fraction r of n: floor(r * n). The slack
// absorbs representation error such as 0.29 * 100 = 28.999...
inline std::size_t rejected_count(double r, std::size_t n) {
  auto k = static_cast<std::size_t>(std::floor(r * static_cast<double>(n) + 1e-9));
  return std::min(k, n > 0 ? n - 1 : 0);
}

/// Error on the accepted subset as the least-confident items go to analysts.
/// Items are ranked by descending confidence with input order breaking ties.
/// A 0 point is prepended if absent.
inline ErrorRejectionCurve error_rejection_curve(std::span<const ScoredOutcome> items,
                                                 std::span<const double> fractions) {
  if (items.empty()) throw Error("error-rejection curve of an empty item list");
  std::vector<double> fr(fractions.begin(), fractions.end());
  for (double r : fr)
    if (!(r >= 0.0 && r < 1.0)) throw Error("rejection fractions must lie in [0, 1)");
  if (!std::is_sorted(fr.begin(), fr.end()) || std::adjacent_find(fr.begin(), fr.end()) != fr.end())
    throw Error("rejection fractions must be strictly increasing");
  if (fr.empty() || fr.front() != 0.0) fr.insert(fr.begin(), 0.0);

  std::vector<std::size_t> order(items.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return items[a].confidence > items[b].confidence; });
  // errors_prefix[k] = incorrect among the k most confident
  std::vector<std::size_t> errors_prefix(items.size() + 1, 0);
  for (std::size_t i = 0; i < order.size(); ++i)
    errors_prefix[i + 1] = errors_prefix[i] + (items[order[i]].correct ? 0 : 1);

  ErrorRejectionCurve curve;
  curve.sample_count = items.size();
  for (double r : fr) {
    const std::size_t kept = items.size() - rejected_count(r, items.size());
    curve.points.push_back(
        {r, static_cast<double>(errors_prefix[kept]) / static_cast<double>(kept), kept});
  }
  return curve;
}

}  // namespace lingate::metrics
