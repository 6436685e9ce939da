#pragma once

#include <string>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "lingate/bridge/adapters.hpp"

// One-request/one-response JSON wire contract for external recognizers and
// translators.
//
//   ASR  POST <endpoint>  {"input": str}
//        200              {"n_best": [{"text": str, "score": num}], "confidence": num, "no_hypothesis": bool}
//   MT   POST <endpoint>  {"text": str, "src": str, "tgt": str}
//        200              {"translation": str, "confidence": num}
//
// Any non-200 status or malformed body is an adapter failure.
namespace lingate::bridge {

struct Endpoint {
  std::string origin;  // scheme://host[:port]
  std::string path;

  static Endpoint parse(const std::string& url) {
    const auto scheme = url.find("://");
    if (scheme == std::string::npos) throw Error("endpoint must look like http://host:port/path: " + url);
    const auto slash = url.find('/', scheme + 3);
    if (slash == std::string::npos) return {url, "/"};
    return {url.substr(0, slash), url.substr(slash)};
  }
};

inline nlohmann::json post_json(const Endpoint& ep, const nlohmann::json& body, int timeout_s) {
  httplib::Client cli(ep.origin);
  cli.set_connection_timeout(timeout_s, 0);
  cli.set_read_timeout(timeout_s, 0);
  auto res = cli.Post(ep.path, body.dump(), "application/json");
  if (!res) throw AdapterError("adapter endpoint " + ep.origin + ep.path + " unreachable: " + httplib::to_string(res.error()));
  if (res->status != 200)
    throw AdapterError("adapter endpoint " + ep.origin + ep.path + " returned " + std::to_string(res->status));
  try {
    return nlohmann::json::parse(res->body);
  } catch (const nlohmann::json::exception& e) {
    throw AdapterError(std::string("adapter response is not JSON: ") + e.what());
  }
}

inline nlohmann::json to_json(const AsrResult& r) {
  nlohmann::json hyps = nlohmann::json::array();
  for (const auto& h : r.n_best) hyps.push_back({{"text", h.text}, {"score", h.score}});
  return {{"n_best", hyps}, {"confidence", r.confidence}, {"no_hypothesis", r.no_hypothesis}};
}

inline AsrResult asr_result_from_json(const nlohmann::json& j) {
  AsrResult r;
  for (const auto& h : j.at("n_best")) r.n_best.push_back({h.at("text").get<std::string>(), h.at("score").get<double>()});
  r.confidence = j.at("confidence").get<double>();
  r.no_hypothesis = j.value("no_hypothesis", r.n_best.empty());
  if (!(r.confidence >= 0.0 && r.confidence <= 1.0)) throw AdapterError("ASR confidence outside [0, 1]");
  return r;
}

inline nlohmann::json to_json(const MtResult& r) { return {{"translation", r.translation}, {"confidence", r.confidence}}; }

inline MtResult mt_result_from_json(const nlohmann::json& j) {
  MtResult r{j.at("translation").get<std::string>(), j.at("confidence").get<double>()};
  if (!(r.confidence >= 0.0 && r.confidence <= 1.0)) throw AdapterError("MT confidence outside [0, 1]");
  return r;
}

/// Failures surface as a "no-hypothesis" result with confidence 0.
class HttpAsrAdapter final : public AsrAdapter {
 public:
  explicit HttpAsrAdapter(const std::string& url, int timeout_s = 10)
      : url_(url), endpoint_(Endpoint::parse(url)), timeout_s_(timeout_s) {}

  AsrResult recognize(std::string_view input) const override {
    try {
      return asr_result_from_json(post_json(endpoint_, {{"input", std::string(input)}}, timeout_s_));
    } catch (const std::exception&) {
      AsrResult r;
      r.no_hypothesis = true;
      return r;
    }
  }
  std::string describe() const override { return "http-asr(" + url_ + ")"; }

 private:
  std::string url_;
  Endpoint endpoint_;
  int timeout_s_;
};

class HttpMtAdapter final : public MtAdapter {
 public:
  explicit HttpMtAdapter(const std::string& url, int timeout_s = 10)
      : url_(url), endpoint_(Endpoint::parse(url)), timeout_s_(timeout_s) {}

  MtResult translate(std::string_view text, std::string_view src, std::string_view tgt) const override {
    try {
      return mt_result_from_json(post_json(
          endpoint_, {{"text", std::string(text)}, {"src", std::string(src)}, {"tgt", std::string(tgt)}}, timeout_s_));
    } catch (const AdapterError&) {
      throw;
    } catch (const std::exception& e) {
      throw AdapterError(std::string("malformed MT response: ") + e.what());
    }
  }
  std::string describe() const override { return "http-mt(" + url_ + ")"; }

 private:
  std::string url_;
  Endpoint endpoint_;
  int timeout_s_;
};

}  // namespace lingate::bridge
