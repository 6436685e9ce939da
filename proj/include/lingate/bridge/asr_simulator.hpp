#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "lingate/bridge/adapters.hpp"
#include "lingate/common.hpp"

namespace lingate::bridge {

/// Noise channel standing in for a recognizer. Per token: substitute with
/// p_sub, else delete with p_del; independently, insert a filler token after
/// the position with p_ins.
struct NoiseConfig {
  double p_sub = 0.11;
  double p_del = 0.07;
  double p_ins = 0.08;
  // Known confusions, keyed by lowercased token. Tokens without an entry get
  // a spelling perturbation instead.
  std::map<std::string, std::vector<std::string>> substitutions;
  std::vector<std::string> insertion_vocab{"eh", "de", "la", "a", "que"};
  std::uint64_t seed = 1;
  // Confidence multiplier lost per applied perturbation.
  double confidence_penalty = 0.15;

  void validate() const {
    auto in01 = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (!in01(p_sub) || !in01(p_del) || !in01(p_ins)) throw Error("noise rates must lie in [0, 1]");
    if (p_sub + p_del > 1.0 + 1e-12) throw Error("p_sub + p_del must not exceed 1");
    if (!in01(confidence_penalty)) throw Error("confidence_penalty must lie in [0, 1]");
    if (p_ins > 0.0 && insertion_vocab.empty()) throw Error("insertions need a non-empty insertion vocabulary");
    for (const auto& [k, v] : substitutions)
      if (v.empty()) throw Error("substitution entry '" + k + "' has no alternatives");
  }
};

struct NoisyText {
  std::string text;
  std::size_t perturbations = 0;
};

namespace detail {

inline std::string perturb_spelling(const std::string& token, Rng& rng) {
  if (token.size() > 3 && token.back() == 's') return token.substr(0, token.size() - 1);
  std::vector<std::size_t> letters;
  for (std::size_t i = 0; i < token.size(); ++i)
    if (token[i] >= 'a' && token[i] <= 'z') letters.push_back(i);
  if (letters.empty()) return token + "s";
  static constexpr std::string_view kPool = "aeioubcdfglmnprst";
  std::string out = token;
  const std::size_t pos = rng.pick(letters);
  char c = kPool[rng.below(kPool.size())];
  if (c == out[pos]) c = kPool[(kPool.find(c) + 1) % kPool.size()];
  out[pos] = c;
  return out;
}

}  // namespace detail

inline NoisyText simulate_asr_noise_traced(std::string_view utterance, const NoiseConfig& cfg) {
  cfg.validate();
  Rng rng(mix_seed(cfg.seed, fnv1a(utterance)));
  std::vector<std::string> out;
  std::size_t perturbations = 0;
  for (const auto& token : text::split_ws(utterance)) {
    const double u = rng.uniform();
    if (u < cfg.p_sub) {
      auto it = cfg.substitutions.find(text::to_lower(token));
      std::string sub = it != cfg.substitutions.end() ? rng.pick(it->second) : detail::perturb_spelling(token, rng);
      if (sub == token) sub = detail::perturb_spelling(token, rng);
      out.push_back(std::move(sub));
      ++perturbations;
    } else if (u < cfg.p_sub + cfg.p_del) {
      ++perturbations;
    } else {
      out.push_back(token);
    }
    if (cfg.p_ins > 0.0 && rng.bernoulli(cfg.p_ins)) {
      out.push_back(rng.pick(cfg.insertion_vocab));
      ++perturbations;
    }
  }
  return {text::join(out), perturbations};
}

inline std::string simulate_asr_noise(std::string_view utterance, const NoiseConfig& cfg) {
  return simulate_asr_noise_traced(utterance, cfg).text;
}

/// Produces `n_best` noisy renderings of the gold text, each from its own
/// derived seed, ranked by the confidence score (1 - penalty)^perturbations.
/// Empty renderings are dropped; if none survive the result is flagged as
/// having no hypothesis.
class SimulatedAsr final : public AsrAdapter {
 public:
  explicit SimulatedAsr(NoiseConfig cfg, std::size_t n_best = 5) : cfg_(std::move(cfg)), n_best_(n_best) {
    cfg_.validate();
    if (n_best_ == 0) throw Error("n_best must be >= 1");
  }

  AsrResult recognize(std::string_view input) const override { return recognize_seeded(input, cfg_.seed); }

  // Same channel with the base seed mixed with `salt`; lets a batch give
  // repeated sentences independent noise.
  AsrResult recognize_salted(std::string_view input, std::uint64_t salt) const {
    return recognize_seeded(input, mix_seed(cfg_.seed, salt));
  }

  std::string describe() const override { return "simulated-asr(n_best=" + std::to_string(n_best_) + ")"; }

  const NoiseConfig& config() const { return cfg_; }

 private:
  AsrResult recognize_seeded(std::string_view input, std::uint64_t seed) const {
    AsrResult r;
    NoiseConfig c = cfg_;
    for (std::size_t h = 0; h < n_best_; ++h) {
      c.seed = mix_seed(seed, h);
      auto noisy = simulate_asr_noise_traced(input, c);
      if (noisy.text.empty()) continue;
      r.n_best.push_back({std::move(noisy.text),
                          std::pow(1.0 - cfg_.confidence_penalty, static_cast<double>(noisy.perturbations))});
    }
    std::stable_sort(r.n_best.begin(), r.n_best.end(),
                     [](const Hypothesis& a, const Hypothesis& b) { return a.score > b.score; });
    if (r.n_best.empty()) {
      r.no_hypothesis = true;
      r.confidence = 0.0;
    } else {
      r.confidence = r.n_best.front().score;
    }
    return r;
  }

  NoiseConfig cfg_;
  std::size_t n_best_;
};

}  // namespace lingate::bridge
