#pragma once

#include <charconv>
#include <memory>
#include <sstream>
#include <string>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "lingate/bridge/http_adapters.hpp"
#include "lingate/gateway/config.hpp"
#include "lingate/gateway/experiment.hpp"
#include "lingate/metrics/report.hpp"
#include "lingate/router/router.hpp"

// HTTP front end. Bodies are JSON with the field names below; the analyst id
// travels in the X-Analyst-Id header.
//
//   POST /v1/utterances                {"id", "input"}        -> {"status", "disposition"}
//   GET  /v1/dispositions/{id}                                -> disposition
//   GET  /v1/pools/{source|target}/tasks[?state=QUEUED]       -> {"pool", "tasks"}
//   POST /v1/pools/{source|target}/claim                      -> task, or 204 when empty
//   POST /v1/tasks/{id}/label          {"tn", "sv", "en"}     -> disposition
//   GET  /v1/stats                                            -> queue and outcome counts
//   GET  /v1/catalog                                          -> the catalog file, verbatim
//   POST /v1/reports/error-rejection   {"items": [{"text","tn","sv","en"}], "points"?} -> curve
//   POST /v1/adapters/asr, /v1/adapters/mt                    -> configured adapters, wire contract
//   GET  /v1/health
namespace lingate::gateway {

inline nlohmann::json to_json(const router::PoolStats& p) {
  return {{"queued", p.queued},
          {"claimed", p.claimed},
          {"labeled", p.labeled},
          {"oldest_queued_age_ms", p.oldest_queued_age_ms ? nlohmann::json(*p.oldest_queued_age_ms) : nlohmann::json()}};
}

inline nlohmann::json to_json(const router::RouterStats& s) {
  return {{"pools", {{"source", to_json(s.source)}, {"target", to_json(s.target)}}},
          {"dispositions",
           {{"AUTOMATED", s.automated},
            {"SOURCE_ANALYST", s.source_analyst},
            {"TARGET_ANALYST", s.target_analyst},
            {"pending", s.pending},
            {"total", s.total()}}},
          {"automation_rate", s.automation_rate()}};
}

class Gateway {
 public:
  explicit Gateway(Runtime rt, router::Clock clock = router::system_clock_ms) : rt_(std::move(rt)) {
    router::RouterOptions opts;
    opts.claim_timeout_ms = rt_.config.claim_timeout_s * 1000;
    opts.catalog = rt_.catalog;
    opts.clock = std::move(clock);
    if (!rt_.config.event_log_path.empty()) opts.event_log_path = rt_.config.event_log_path;
    router_ = std::make_unique<router::Router>(rt_.pipeline, std::move(opts));
    install_routes();
  }

  ~Gateway() { stop(); }

  router::Router& router() { return *router_; }
  const Runtime& runtime() const { return rt_; }

  // Binds and returns the port; port 0 picks a free one.
  int bind(const std::string& host, int port) {
    const int bound = port == 0 ? server_.bind_to_any_port(host) : (server_.bind_to_port(host, port) ? port : -1);
    if (bound < 0) throw Error("cannot bind " + host + ":" + std::to_string(port));
    return bound;
  }

  // Blocks until stop().
  void run() {
    server_.listen_after_bind();
    router_->flush();
  }

  void stop() {
    if (server_.is_running()) server_.stop();
    router_->flush();
  }

  bool running() const { return server_.is_running(); }
  void wait_until_ready() const { server_.wait_until_ready(); }

 private:
  static void reply(httplib::Response& res, int status, const nlohmann::json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
  }
  static void error(httplib::Response& res, int status, const std::string& message,
                    const std::string& stage = {}) {
    nlohmann::json body = {{"error", message}};
    if (!stage.empty()) body["stage"] = stage;
    reply(res, status, body);
  }
  static int status_for(router::RouterError::Kind k) {
    switch (k) {
      case router::RouterError::Kind::NotFound: return 404;
      case router::RouterError::Kind::Conflict: return 409;
      case router::RouterError::Kind::Forbidden: return 403;
      case router::RouterError::Kind::InvalidArgument: return 422;
    }
    return 400;
  }

  // Wraps a handler with the error mapping shared by every endpoint.
  template <class F>
  httplib::Server::Handler guarded(F f, const char* stage = "") {
    return [f = std::move(f), stage](const httplib::Request& req, httplib::Response& res) {
      try {
        f(req, res);
      } catch (const router::RouterError& e) {
        error(res, status_for(e.kind()), e.what());
      } catch (const nlohmann::json::exception& e) {
        error(res, 400, std::string("malformed request: ") + e.what());
      } catch (const std::exception& e) {
        error(res, 500, e.what(), stage);
      }
    };
  }

  static router::Pool pool_param(const httplib::Request& req) {
    try {
      return router::parse_pool(req.matches[1].str());
    } catch (const Error&) {
      throw router::RouterError(router::RouterError::Kind::NotFound, "unknown pool " + req.matches[1].str());
    }
  }

  static std::string analyst_of(const httplib::Request& req) {
    auto id = req.get_header_value("X-Analyst-Id");
    if (id.empty()) throw router::RouterError(router::RouterError::Kind::InvalidArgument, "missing X-Analyst-Id header");
    return id;
  }

  void install_routes() {
    server_.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                 {"Access-Control-Allow-Headers", "Content-Type, X-Analyst-Id"}});
    server_.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

    server_.Get("/v1/health", [this](const httplib::Request&, httplib::Response& res) {
      reply(res, 200, {{"status", "ok"}, {"mode", router::to_string(rt_.pipeline.mode)}});
    });

    server_.Post("/v1/utterances", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const auto body = nlohmann::json::parse(req.body);
      router::Utterance u{body.at("id").get<std::string>(), body.at("input").get<std::string>()};
      const auto d = router_->route(u);
      reply(res, 200, {{"status", d.resolved ? "automated" : "pending"}, {"disposition", router::to_json(d)}});
    }, "NLU"));

    server_.Get(R"(/v1/dispositions/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
      auto d = router_->disposition(req.matches[1].str());
      if (!d) return error(res, 404, "no disposition for " + req.matches[1].str());
      reply(res, 200, router::to_json(*d));
    }));

    server_.Get(R"(/v1/pools/([a-z]+)/tasks)", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const auto pool = pool_param(req);
      std::optional<router::TaskState> state;
      if (req.has_param("state")) {
        try {
          state = router::parse_task_state(req.get_param_value("state"));
        } catch (const Error& e) {
          throw router::RouterError(router::RouterError::Kind::InvalidArgument, e.what());
        }
      }
      nlohmann::json tasks = nlohmann::json::array();
      for (const auto& t : router_->list_tasks(pool, state)) tasks.push_back(router::to_json(t));
      reply(res, 200, {{"pool", router::to_string(pool)}, {"tasks", tasks}});
    }));

    server_.Post(R"(/v1/pools/([a-z]+)/claim)", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const auto pool = pool_param(req);
      auto t = router_->claim_task(pool, analyst_of(req));
      if (!t) {
        res.status = 204;
        return;
      }
      reply(res, 200, router::to_json(*t));
    }));

    server_.Post(R"(/v1/tasks/(\d+)/label)", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const auto body = nlohmann::json::parse(req.body);
      std::uint64_t id = 0;
      const auto digits = req.matches[1].str();
      if (std::from_chars(digits.data(), digits.data() + digits.size(), id).ec != std::errc{})
        throw router::RouterError(router::RouterError::Kind::NotFound, "no task " + digits);
      const auto d = router_->submit_label(id, analyst_of(req),
                                           router::label_from_json(body));
      reply(res, 200, router::to_json(d));
    }));

    server_.Get("/v1/stats", guarded([this](const httplib::Request&, httplib::Response& res) {
      reply(res, 200, to_json(router_->stats()));
    }));

    server_.Get("/v1/catalog", [this](const httplib::Request&, httplib::Response& res) {
      res.set_content(rt_.catalog_text, "text/tab-separated-values; charset=utf-8");
    });

    server_.Post("/v1/reports/error-rejection",
                 guarded([this](const httplib::Request& req, httplib::Response& res) {
                   reply(res, 200, error_rejection_report(nlohmann::json::parse(req.body)));
                 }, "NLU"));

    server_.Post("/v1/adapters/asr", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const auto body = nlohmann::json::parse(req.body);
      reply(res, 200, bridge::to_json(rt_.pipeline.asr->recognize(body.at("input").get<std::string>())));
    }, "ASR"));

    server_.Post("/v1/adapters/mt", guarded([this](const httplib::Request& req, httplib::Response& res) {
      if (!rt_.pipeline.mt) return error(res, 404, "no MT adapter configured");
      const auto body = nlohmann::json::parse(req.body);
      try {
        reply(res, 200,
              bridge::to_json(rt_.pipeline.mt->translate(body.at("text").get<std::string>(),
                                                         body.at("src").get<std::string>(),
                                                         body.at("tgt").get<std::string>())));
      } catch (const bridge::AdapterError& e) {
        error(res, 422, e.what(), "MT");
      }
    }, "MT"));
  }

  // Items are texts in the caller's language; in bridge mode they are
  // translated before classification, as live traffic would be.
  nlohmann::json error_rejection_report(const nlohmann::json& body) const {
    const auto& p = rt_.pipeline;
    std::vector<double> points = body.contains("points") ? body.at("points").get<std::vector<double>>()
                                                         : experiment::table_fractions();
    std::vector<metrics::ScoredOutcome> scored;
    for (const auto& item : body.at("items")) {
      const auto gold = router::label_from_json(item);
      const auto text = item.at("text").get<std::string>();
      const auto classifier_text = p.mode == router::PipelineMode::OnlineBridge
                                       ? experiment::bridge_text(*p.mt, text, p.source_language, p.target_language)
                                       : text;
      const auto pred = p.model->predict_text(classifier_text);
      scored.push_back({pred.confidence, pred.best == gold});
    }
    if (scored.empty()) throw router::RouterError(router::RouterError::Kind::InvalidArgument, "no items");
    const auto curve = metrics::error_rejection_curve(scored, points);
    nlohmann::json pts = nlohmann::json::array();
    std::vector<double> fractions;
    for (const auto& pt : curve.points) {
      pts.push_back({{"rejection", pt.rejection_fraction}, {"error_rate", pt.error_rate}, {"evaluated", pt.evaluated}});
      fractions.push_back(pt.rejection_fraction);
    }
    std::ostringstream csv;
    metrics::report::write_error_rejection(
        csv, fractions, {metrics::report::curve_row_from(body.value("name", std::string("batch")), curve, fractions)});
    return {{"sample_count", curve.sample_count}, {"points", pts}, {"csv", csv.str()}};
  }

  Runtime rt_;
  std::unique_ptr<router::Router> router_;
  httplib::Server server_;
};

}  // namespace lingate::gateway
