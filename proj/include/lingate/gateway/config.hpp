#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <string>

#include "lingate/bridge/asr_simulator.hpp"
#include "lingate/bridge/http_adapters.hpp"
#include "lingate/bridge/mt.hpp"
#include "lingate/calibration/threshold.hpp"
#include "lingate/nlu/model_io.hpp"
#include "lingate/router/router.hpp"

namespace lingate::gateway {

/// Adapter descriptor: either a built-in simulator or an external endpoint.
struct AsrDescriptor {
  std::string kind = "simulator";  // simulator | http
  bridge::NoiseConfig noise;
  std::size_t n_best = 5;
  std::string confusions_path;     // optional `word<TAB>confusion` lines
  std::string endpoint;
};

struct MtDescriptor {
  std::string kind = "lexicon";  // lexicon | identity | http | none
  std::string lexicon_path;
  std::uint64_t seed = 1;
  double p_duplicate = 0.0;
  std::string endpoint;
};

struct GatewayConfig {
  router::PipelineMode mode = router::PipelineMode::OnlineBridge;
  calibration::ThresholdSet thresholds;
  std::string calibration_path;  // optional; its threshold overrides the stage it names
  AsrDescriptor asr;
  MtDescriptor mt;
  std::string source_language = "es";
  std::string target_language = "en";
  std::string model_path;
  std::string catalog_path;
  std::string listen_host = "127.0.0.1";
  int listen_port = 8080;
  std::int64_t claim_timeout_s = 300;
  std::string event_log_path;  // optional
};

namespace detail {

inline std::string read_file(const std::string& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(std::string("cannot read ") + what + " " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Relative paths resolve against the config file's directory.
inline std::string resolve(const std::filesystem::path& base, const std::string& p) {
  if (p.empty()) return p;
  std::filesystem::path path(p);
  return path.is_absolute() ? p : (base / path).lexically_normal().string();
}

}  // namespace detail

/// Flat `key = value` config with `#` comments. Unknown keys are errors.
inline GatewayConfig parse_config(std::string_view body, const std::string& name = "<config>",
                                  const std::filesystem::path& base = ".") {
  const auto kv = calibration::parse_key_values(body, name);
  GatewayConfig c;
  for (const auto& [key, value] : kv) {
    auto num = [&] { return calibration::parse_double(value); };
    bool known = true;
    try {
      if (key == "mode") c.mode = router::parse_mode(value);
      else if (key == "tau_asr") c.thresholds.tau_asr = num();
      else if (key == "tau_mt") c.thresholds.tau_mt = num();
      else if (key == "tau_nlu") c.thresholds.tau_nlu = num();
      else if (key == "calibration") c.calibration_path = detail::resolve(base, value);
      else if (key == "source_language") c.source_language = value;
      else if (key == "target_language") c.target_language = value;
      else if (key == "model") c.model_path = detail::resolve(base, value);
      else if (key == "catalog") c.catalog_path = detail::resolve(base, value);
      else if (key == "claim_timeout_s") c.claim_timeout_s = static_cast<std::int64_t>(num());
      else if (key == "event_log") c.event_log_path = detail::resolve(base, value);
      else if (key == "listen") {
        auto colon = value.rfind(':');
        if (colon == std::string::npos) throw Error("expected host:port");
        c.listen_host = value.substr(0, colon);
        const auto port = calibration::parse_double(std::string_view(value).substr(colon + 1));
        if (!(port >= 0 && port <= 65535) || port != static_cast<int>(port)) throw Error("bad port");
        c.listen_port = static_cast<int>(port);
      }
      else if (key == "asr.kind") c.asr.kind = value;
      else if (key == "asr.n_best") c.asr.n_best = static_cast<std::size_t>(num());
      else if (key == "asr.p_sub") c.asr.noise.p_sub = num();
      else if (key == "asr.p_del") c.asr.noise.p_del = num();
      else if (key == "asr.p_ins") c.asr.noise.p_ins = num();
      else if (key == "asr.seed") c.asr.noise.seed = static_cast<std::uint64_t>(num());
      else if (key == "asr.confidence_penalty") c.asr.noise.confidence_penalty = num();
      else if (key == "asr.insertion_vocab") c.asr.noise.insertion_vocab = text::split_ws(value);
      else if (key == "asr.confusions") c.asr.confusions_path = detail::resolve(base, value);
      else if (key == "asr.endpoint") c.asr.endpoint = value;
      else if (key == "mt.kind") c.mt.kind = value;
      else if (key == "mt.lexicon") c.mt.lexicon_path = detail::resolve(base, value);
      else if (key == "mt.seed") c.mt.seed = static_cast<std::uint64_t>(num());
      else if (key == "mt.p_duplicate") c.mt.p_duplicate = num();
      else if (key == "mt.endpoint") c.mt.endpoint = value;
      else known = false;
    } catch (const std::exception& e) {
      throw Error(name + ": " + key + ": " + e.what());
    }
    if (!known) throw Error(name + ": unknown key '" + key + "'");
  }
  c.thresholds.validate();
  if (c.claim_timeout_s <= 0) throw Error(name + ": claim_timeout_s must be positive");
  return c;
}

inline GatewayConfig load_config(const std::string& path) {
  const auto base = std::filesystem::path(path).parent_path();
  return parse_config(detail::read_file(path, "config"), path, base.empty() ? "." : base);
}

inline std::map<std::string, std::vector<std::string>> load_confusions(const std::string& path) {
  std::map<std::string, std::vector<std::string>> out;
  std::istringstream in(detail::read_file(path, "ASR confusion table"));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) throw Error(path + ": expected word<TAB>confusion");
    out[text::to_lower(line.substr(0, tab))].push_back(text::trim(line.substr(tab + 1)));
  }
  return out;
}

/// Everything a running gateway needs, loaded and validated.
struct Runtime {
  GatewayConfig config;
  router::Pipeline pipeline;
  LabelCatalog catalog;
  std::string catalog_text;  // served verbatim
  std::optional<calibration::CalibrationReport> calibration;
};

inline std::shared_ptr<const bridge::AsrAdapter> make_asr(const AsrDescriptor& d) {
  if (d.kind == "simulator") {
    auto noise = d.noise;
    if (!d.confusions_path.empty()) noise.substitutions = load_confusions(d.confusions_path);
    return std::make_shared<bridge::SimulatedAsr>(noise, d.n_best);
  }
  if (d.kind == "http") return std::make_shared<bridge::HttpAsrAdapter>(d.endpoint);
  throw Error("unknown asr.kind '" + d.kind + "'");
}

inline std::shared_ptr<const bridge::MtAdapter> make_mt(const MtDescriptor& d, const std::string& src,
                                                      const std::string& tgt) {
  if (d.kind == "none") return nullptr;
  if (d.kind == "identity") return std::make_shared<bridge::IdentityTranslator>();
  if (d.kind == "lexicon") {
    if (d.lexicon_path.empty()) throw Error("mt.kind = lexicon needs mt.lexicon");
    return std::make_shared<bridge::LexiconTranslator>(bridge::TranslationLexicon::load(d.lexicon_path), src, tgt,
                                                       d.seed, d.p_duplicate);
  }
  if (d.kind == "http") return std::make_shared<bridge::HttpMtAdapter>(d.endpoint);
  throw Error("unknown mt.kind '" + d.kind + "'");
}

inline Runtime load_runtime(const GatewayConfig& cfg) {
  Runtime rt;
  rt.config = cfg;
  if (cfg.model_path.empty()) throw Error("config needs a model path");
  if (cfg.catalog_path.empty()) throw Error("config needs a catalog path");
  rt.catalog_text = detail::read_file(cfg.catalog_path, "label catalog");
  rt.catalog = LabelCatalog::parse_tsv(rt.catalog_text, cfg.catalog_path);
  auto& p = rt.pipeline;
  p.mode = cfg.mode;
  p.thresholds = cfg.thresholds;
  if (!cfg.calibration_path.empty()) {
    rt.calibration = calibration::calibration_from_key_value(
        detail::read_file(cfg.calibration_path, "calibration report"), cfg.calibration_path);
    const auto& stage = rt.calibration->stage;
    if (stage == "nlu") p.thresholds.tau_nlu = rt.calibration->threshold;
    else if (stage == "asr") p.thresholds.tau_asr = rt.calibration->threshold;
    else if (stage == "mt") p.thresholds.tau_mt = rt.calibration->threshold;
    else throw Error(cfg.calibration_path + ": unknown stage '" + stage + "'");
  }
  p.asr = make_asr(cfg.asr);
  if (cfg.mode == router::PipelineMode::OnlineBridge)
    p.mt = make_mt(cfg.mt, cfg.source_language, cfg.target_language);
  p.source_language = cfg.source_language;
  p.target_language = cfg.target_language;
  p.model = std::make_shared<const ClassifierModel>(load_model(cfg.model_path));
  p.validate();
  return rt;
}

}  // namespace lingate::gateway
