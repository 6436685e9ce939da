#pragma once

#include <algorithm>
#include <charconv>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "lingate/common.hpp"
#include "lingate/metrics/rejection.hpp"

namespace lingate::calibration {

using metrics::ScoredOutcome;

/// Per-stage confidence cutoffs. A gate rejects when confidence < cutoff.
struct ThresholdSet {
  double tau_asr = 0.0;
  double tau_mt = 0.0;
  double tau_nlu = 0.0;

  void validate() const {
    if (!(tau_asr >= 0.0 && tau_mt >= 0.0 && tau_nlu >= 0.0))
      throw Error("thresholds must be non-negative");
  }
  bool operator==(const ThresholdSet&) const = default;
};

struct CalibrationReport {
  std::string stage = "nlu";
  double threshold = 0.0;
  double accepted_accuracy = 0.0;
  double rejection_fraction = 0.0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  double cost_per_reject = 0.0;
  double analyst_cost = 0.0;
  bool forced_accept_all = false;  // the rejection budget ruled out every better cut
};

inline std::string format_double(double v) {
  if (v == kInfinity) return "inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s) {
  if (s == "inf" || s == "+inf" || s == "infinity") return kInfinity;
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw Error("not a number: '" + std::string(s) + "'");
  return v;
}

inline std::string to_key_value(const CalibrationReport& r) {
  std::ostringstream out;
  out << "# rejection-threshold calibration\n"
      << "stage = " << r.stage << '\n'
      << "threshold = " << format_double(r.threshold) << '\n'
      << "accepted_accuracy = " << format_double(r.accepted_accuracy) << '\n'
      << "rejection_fraction = " << format_double(r.rejection_fraction) << '\n'
      << "accepted = " << r.accepted << '\n'
      << "rejected = " << r.rejected << '\n'
      << "cost_per_reject = " << format_double(r.cost_per_reject) << '\n'
      << "analyst_cost = " << format_double(r.analyst_cost) << '\n'
      << "forced_accept_all = " << (r.forced_accept_all ? "true" : "false") << '\n';
  return out.str();
}

/// Flat `key = value` text with `#` comments; later keys override earlier.
inline std::map<std::string, std::string> parse_key_values(std::string_view body, const std::string& name) {
  std::map<std::string, std::string> kv;
  std::istringstream in{std::string(body)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find(" #");
    if (hash != std::string::npos) line.erase(hash);
    const auto t = text::trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string::npos) throw Error(name + ":" + std::to_string(lineno) + ": expected key = value");
    auto key = text::trim(t.substr(0, eq));
    if (key.empty()) throw Error(name + ":" + std::to_string(lineno) + ": empty key");
    kv[key] = text::trim(t.substr(eq + 1));
  }
  return kv;
}

inline CalibrationReport calibration_from_key_value(std::string_view body, const std::string& name = "<report>") {
  const auto kv = parse_key_values(body, name);
  auto get = [&](const char* k) -> const std::string& {
    auto it = kv.find(k);
    if (it == kv.end()) throw Error(name + ": missing key '" + k + "'");
    return it->second;
  };
  CalibrationReport r;
  r.stage = get("stage");
  r.threshold = parse_double(get("threshold"));
  r.accepted_accuracy = parse_double(get("accepted_accuracy"));
  r.rejection_fraction = parse_double(get("rejection_fraction"));
  r.accepted = static_cast<std::size_t>(parse_double(get("accepted")));
  r.rejected = static_cast<std::size_t>(parse_double(get("rejected")));
  r.cost_per_reject = parse_double(get("cost_per_reject"));
  r.analyst_cost = parse_double(get("analyst_cost"));
  r.forced_accept_all = get("forced_accept_all") == "true";
  return r;
}

/// Sweeps cutoffs at 0, at midpoints between consecutive distinct dev
/// confidences, and at +inf; keeps the cutoff with the best accepted-set
/// accuracy whose rejection fraction stays within `max_rejection`. Equal
/// accuracy goes to the cutoff that rejects fewer items. Accuracies are
/// compared as exact integer ratios.
inline CalibrationReport calibrate_threshold(std::span<const ScoredOutcome> dev, double max_rejection,
                                             double cost_per_reject) {
  if (dev.empty()) throw Error("calibration needs a non-empty dev set");
  if (!(max_rejection >= 0.0 && max_rejection < 1.0)) throw Error("max_rejection must lie in [0, 1)");
  if (!(cost_per_reject >= 0.0)) throw Error("cost_per_reject must be non-negative");

  std::vector<ScoredOutcome> sorted(dev.begin(), dev.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const ScoredOutcome& a, const ScoredOutcome& b) { return a.confidence < b.confidence; });
  const std::size_t n = sorted.size();
  std::size_t correct_total = 0;
  for (const auto& o : sorted) correct_total += o.correct ? 1 : 0;

  struct Candidate {
    double threshold;
    std::size_t rejected;
    std::size_t correct_accepted;
  };
  std::vector<Candidate> candidates{{0.0, 0, correct_total}};
  std::size_t correct_rejected = 0;
  for (std::size_t k = 1; k < n; ++k) {
    correct_rejected += sorted[k - 1].correct ? 1 : 0;
    const double lo = sorted[k - 1].confidence, hi = sorted[k].confidence;
    if (!(lo < hi)) continue;
    double mid = lo + (hi - lo) / 2.0;
    if (!(mid > lo)) mid = hi;
    candidates.push_back({mid, k, correct_total - correct_rejected});
  }
  candidates.push_back({kInfinity, n, 0});

  auto within_budget = [&](const Candidate& c) {
    return static_cast<double>(c.rejected) / static_cast<double>(n) <= max_rejection;
  };
  // a strictly better than b: higher accuracy, or equal accuracy with fewer rejections.
  auto better = [&](const Candidate& a, const Candidate& b) {
    const std::size_t na = n - a.rejected, nb = n - b.rejected;
    if (na == 0) return false;
    if (nb == 0) return true;
    const auto lhs = static_cast<uint128>(a.correct_accepted) * nb;
    const auto rhs = static_cast<uint128>(b.correct_accepted) * na;
    if (lhs != rhs) return lhs > rhs;
    return a.rejected < b.rejected;
  };

  const Candidate* best = &candidates.front();
  const Candidate* unconstrained = &candidates.front();
  for (const auto& c : candidates) {
    if (better(c, *unconstrained)) unconstrained = &c;
    if (within_budget(c) && better(c, *best)) best = &c;
  }

  CalibrationReport r;
  r.threshold = best->threshold;
  r.rejected = best->rejected;
  r.accepted = n - best->rejected;
  r.accepted_accuracy =
      r.accepted ? static_cast<double>(best->correct_accepted) / static_cast<double>(r.accepted) : 0.0;
  r.rejection_fraction = static_cast<double>(best->rejected) / static_cast<double>(n);
  r.cost_per_reject = cost_per_reject;
  r.analyst_cost = static_cast<double>(best->rejected) * cost_per_reject;
  r.forced_accept_all = best == &candidates.front() && better(*unconstrained, *best);
  return r;
}

}  // namespace lingate::calibration
