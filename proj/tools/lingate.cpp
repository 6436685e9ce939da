// lingate: corpus generation, training, calibration, evaluation and serving.

#include <csignal>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "lingate/gateway/service.hpp"
#include "lingate/lingate.hpp"

using namespace lingate;
namespace fs = std::filesystem;

namespace {

void write_text(const std::string& path, const std::string& body) {
  if (path.empty() || path == "-") {
    std::cout << body;
    return;
  }
  if (fs::path(path).has_parent_path()) fs::create_directories(fs::path(path).parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << body;
}

void train_params(CLI::App* cmd, TrainParams& p, int& ngram_max) {
  cmd->add_option("--epochs", p.epochs, "SGD epochs")->check(CLI::PositiveNumber);
  cmd->add_option("--reg", p.reg, "L2 strength")->check(CLI::NonNegativeNumber);
  cmd->add_option("--learning-rate", p.learning_rate, "initial step")->check(CLI::PositiveNumber);
  cmd->add_option("--ngram-max", ngram_max, "longest n-gram")->check(CLI::Range(1, 5));
}

std::string catalog_tsv(const ClassifierModel& m) {
  return LabelCatalog::from_labels(m.labels()).to_tsv();
}

experiment::Condition parse_condition(const std::string& s) {
  if (s == "asr") return experiment::Condition::Asr;
  if (s == "human") return experiment::Condition::Human;
  throw Error("condition must be asr or human, got '" + s + "'");
}

calibration::ThresholdSet parse_thresholds(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) v.push_back(calibration::parse_double(text::trim(part)));
  if (v.size() != 3) throw Error("--thresholds wants tau_asr,tau_mt,tau_nlu");
  calibration::ThresholdSet t{v[0], v[1], v[2]};
  t.validate();
  return t;
}

// Keeps only the examples whose label the model knows.
Corpus restrict_to(const Corpus& c, const ClassifierModel& m) {
  const auto cat = LabelCatalog::from_labels(m.labels());
  Corpus out;
  for (const auto& ex : c)
    if (cat.contains(ex.label)) out.push_back(ex);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lingate: multilingual intent routing with analyst escalation"};
  app.require_subcommand(1);
  app.fallthrough();
  std::uint64_t seed = 7;
  app.add_option("--seed", seed, "root seed for every random stream");

  // gen-corpus
  auto* gen = app.add_subcommand("gen-corpus", "write a seeded synthetic bilingual corpus");
  synthetic::Options gopt;
  std::string gen_out = "data";
  gen->add_option("--out", gen_out, "output directory");
  gen->add_option("--en-train", gopt.en_train);
  gen->add_option("--es-train", gopt.es_train);
  gen->add_option("--es-dev", gopt.es_dev);
  gen->add_option("--es-test", gopt.es_test);
  gen->add_option("--n-best", gopt.n_best)->check(CLI::PositiveNumber);

  // train
  auto* tr = app.add_subcommand("train", "train a one-vs-rest intent model");
  std::string tr_corpus, tr_out, tr_intersect, tr_catalog;
  TrainParams tparams;
  int ngram_max = 2;
  tr->add_option("--corpus", tr_corpus, "training corpus (.jsonl)")->required()->check(CLI::ExistingFile);
  tr->add_option("--out", tr_out, "model file")->required();
  tr->add_option("--intersect-with", tr_intersect, "keep only labels also present in this corpus")
      ->check(CLI::ExistingFile);
  tr->add_option("--catalog-out", tr_catalog, "write the model's label catalog here");
  train_params(tr, tparams, ngram_max);

  // bootstrap
  auto* bs = app.add_subcommand("bootstrap", "translate a training corpus, then train on the translation");
  std::string bs_corpus, bs_out, bs_lexicon, bs_intersect, bs_translated, bs_src = "en", bs_tgt = "es";
  double bs_dup = 0.0;
  bs->add_option("--corpus", bs_corpus, "source-language training corpus")->required()->check(CLI::ExistingFile);
  bs->add_option("--lexicon", bs_lexicon, "translation lexicon (.tsv)")->required()->check(CLI::ExistingFile);
  bs->add_option("--out", bs_out, "model file")->required();
  bs->add_option("--src", bs_src);
  bs->add_option("--tgt", bs_tgt);
  bs->add_option("--intersect-with", bs_intersect, "keep only labels also present in this corpus")
      ->check(CLI::ExistingFile);
  bs->add_option("--translated-out", bs_translated, "write the translated corpus here");
  bs->add_option("--p-duplicate", bs_dup, "translator word duplication rate")->check(CLI::Range(0.0, 1.0));
  train_params(bs, tparams, ngram_max);

  // calibrate
  auto* cal = app.add_subcommand("calibrate", "pick the cost-minimizing rejection threshold on a dev set");
  std::string cal_model, cal_dev, cal_out, cal_condition = "asr", cal_lexicon, cal_src = "es", cal_tgt = "en";
  double max_rejection = 0.2, cost_per_reject = 1.0;
  cal->add_option("--model", cal_model)->required()->check(CLI::ExistingFile);
  cal->add_option("--dev", cal_dev, "labeled dev corpus")->required()->check(CLI::ExistingFile);
  cal->add_option("--out", cal_out, "report file (stdout if omitted)");
  cal->add_option("--condition", cal_condition, "asr or human");
  cal->add_option("--bridge-lexicon", cal_lexicon, "translate dev text with this lexicon first")
      ->check(CLI::ExistingFile);
  cal->add_option("--src", cal_src);
  cal->add_option("--tgt", cal_tgt);
  cal->add_option("--max-rejection", max_rejection)->check(CLI::Range(0.0, 0.999999));
  cal->add_option("--cost-per-reject", cost_per_reject)->check(CLI::NonNegativeNumber);

  // evaluate
  auto* ev = app.add_subcommand("evaluate", "write translation-quality, error-rejection and agreement tables");
  std::string ev_test, ev_native, ev_boot, ev_bridge_model, ev_bridge_lexicon, ev_reference, ev_out;
  std::string ev_src = "es", ev_tgt = "en";
  ev->add_option("--test", ev_test, "labeled test corpus")->required()->check(CLI::ExistingFile);
  ev->add_option("--native", ev_native, "native-language model")->check(CLI::ExistingFile);
  ev->add_option("--bootstrapped", ev_boot, "offline-bootstrapped model")->check(CLI::ExistingFile);
  ev->add_option("--bridge-model", ev_bridge_model, "other-language model for the online bridge")
      ->check(CLI::ExistingFile);
  ev->add_option("--bridge-lexicon", ev_bridge_lexicon)->check(CLI::ExistingFile);
  ev->add_option("--reference", ev_reference, "parallel reference translations of the test set")
      ->check(CLI::ExistingFile);
  ev->add_option("--src", ev_src);
  ev->add_option("--tgt", ev_tgt);
  ev->add_option("--out-dir", ev_out, "write mt_quality.csv, error_rejection.csv, agreement.csv here");

  // simulate
  auto* sim = app.add_subcommand("simulate", "route a labeled batch through the gateway pipeline");
  std::string sim_config, sim_batch, sim_thresholds, sim_log;
  sim->add_option("--config", sim_config, "gateway config")->required()->check(CLI::ExistingFile);
  sim->add_option("--batch", sim_batch, "corpus whose transcripts stand in for audio")->required()
      ->check(CLI::ExistingFile);
  sim->add_option("--thresholds", sim_thresholds, "tau_asr,tau_mt,tau_nlu");
  sim->add_option("--event-log", sim_log, "append routing events here");

  // serve
  auto* srv = app.add_subcommand("serve", "run the HTTP gateway");
  std::string srv_config, srv_listen;
  srv->add_option("--config", srv_config)->required()->check(CLI::ExistingFile);
  srv->add_option("--listen", srv_listen, "host:port, overriding the config");

  // report
  auto* rep = app.add_subcommand("report", "corpus statistics and event-log summaries");
  std::vector<std::string> rep_corpora;
  std::string rep_log;
  rep->add_option("--corpus", rep_corpora, "corpus files, one table row each")->check(CLI::ExistingFile);
  rep->add_option("--event-log", rep_log, "replay and summarize this log")->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    tparams.seed = seed;
    tparams.ngrams = {1, ngram_max};

    if (*gen) {
      gopt.seed = seed;
      const auto w = synthetic::generate(gopt);
      synthetic::write_world(w, gen_out);
      std::cout << "wrote " << gen_out << ": " << w.en_train.size() << " en train, " << w.es_train.size()
                << " es train, " << w.es_dev.size() << " es dev, " << w.es_test.size() << " es test, "
                << w.catalog.size() << " shared labels\n";
    } else if (*tr) {
      Corpus c = load_corpus(tr_corpus);
      if (!tr_intersect.empty()) {
        const auto r = calibration::intersect_label_sets(c, load_corpus(tr_intersect));
        std::cerr << "intersection kept " << r.shared.size() << " labels, discarded "
                  << metrics::report::fixed1(100 * r.discard_fraction_a) << "% of " << tr_corpus << "\n";
        c = r.a;
      }
      const auto expanded = calibration::expand_nbest(c);
      const auto model = train(expanded.examples, tparams);
      save_model(tr_out, model);
      if (!tr_catalog.empty()) write_text(tr_catalog, catalog_tsv(model));
      std::cout << "trained on " << expanded.examples.size() << " examples, " << model.labels().size()
                << " labels, " << model.vocabulary().size() << " features -> " << tr_out << "\n";
    } else if (*bs) {
      Corpus c = load_corpus(bs_corpus);
      if (!bs_intersect.empty()) c = calibration::intersect_label_sets(c, load_corpus(bs_intersect)).a;
      const bridge::LexiconTranslator mt(bridge::TranslationLexicon::load(bs_lexicon), bs_src, bs_tgt, seed, bs_dup);
      const auto r = bridge::bootstrap_offline(c, mt, bs_src, bs_tgt, tparams);
      save_model(bs_out, r.model);
      if (!bs_translated.empty()) save_corpus(bs_translated, r.translated.examples);
      std::cout << "translated " << r.translated.examples.size() << " examples (" << r.translated.failed_ids.size()
                << " failed), " << r.model.labels().size() << " labels -> " << bs_out << "\n";
    } else if (*cal) {
      const auto model = load_model(cal_model);
      const auto dev = restrict_to(load_corpus(cal_dev), model);
      if (dev.empty()) throw Error("no dev example carries a label the model knows");
      const auto cond = parse_condition(cal_condition);
      experiment::Outcomes o;
      if (cal_lexicon.empty()) {
        o = experiment::evaluate_direct(model, dev, cond);
      } else {
        const bridge::LexiconTranslator mt(bridge::TranslationLexicon::load(cal_lexicon), cal_src, cal_tgt, seed);
        o = experiment::evaluate_bridged(model, mt, cal_src, cal_tgt, dev, cond);
      }
      const auto r = calibration::calibrate_threshold(o.scored, max_rejection, cost_per_reject);
      write_text(cal_out, calibration::to_key_value(r));
    } else if (*ev) {
      const Corpus all = load_corpus(ev_test);
      const auto& fr = experiment::table_fractions();
      std::vector<metrics::report::CurveRow> rows;
      std::map<std::string, experiment::Outcomes> by_name;
      auto add = [&](const std::string& name, experiment::Outcomes o) {
        rows.push_back(metrics::report::curve_row_from(name, experiment::curve(o, fr), fr));
        by_name[name] = std::move(o);
      };
      std::ostringstream quality, rejection, agreement;
      for (auto cond : {experiment::Condition::Asr, experiment::Condition::Human}) {
        const std::string tag = std::string(" (") + experiment::to_string(cond) + ")";
        if (!ev_native.empty()) {
          const auto m = load_model(ev_native);
          add("Native" + tag, experiment::evaluate_direct(m, restrict_to(all, m), cond));
        }
        if (!ev_boot.empty()) {
          const auto m = load_model(ev_boot);
          add("Bootstrapped" + tag, experiment::evaluate_direct(m, restrict_to(all, m), cond));
        }
        if (!ev_bridge_model.empty()) {
          if (ev_bridge_lexicon.empty()) throw Error("--bridge-model needs --bridge-lexicon");
          const auto m = load_model(ev_bridge_model);
          const bridge::LexiconTranslator mt(bridge::TranslationLexicon::load(ev_bridge_lexicon), ev_src, ev_tgt, seed);
          add("Online bridge" + tag, experiment::evaluate_bridged(m, mt, ev_src, ev_tgt, restrict_to(all, m), cond));
        }
      }
      if (rows.empty()) throw Error("evaluate needs at least one of --native, --bootstrapped, --bridge-model");
      metrics::report::write_error_rejection(rejection, fr, rows);

      if (!ev_reference.empty()) {
        if (ev_bridge_lexicon.empty()) throw Error("--reference needs --bridge-lexicon");
        const bridge::LexiconTranslator mt(bridge::TranslationLexicon::load(ev_bridge_lexicon), ev_src, ev_tgt, seed);
        const auto refs = load_corpus(ev_reference);
        std::vector<metrics::report::MtRow> mt_rows;
        for (auto cond : {experiment::Condition::Human, experiment::Condition::Asr})
          mt_rows.push_back({ev_src + "->" + ev_tgt + " (" + experiment::to_string(cond) + ")",
                             experiment::translation_quality(mt, ev_src, ev_tgt, all, refs, cond)});
        metrics::report::write_mt_quality(quality, mt_rows);
      }

      if (by_name.count("Native (ASR)") && by_name.count("Bootstrapped (ASR)") &&
          by_name.at("Native (ASR)").gold == by_name.at("Bootstrapped (ASR)").gold) {
        std::vector<metrics::report::AgreementColumn> cols;
        for (const std::string column : {"ASR", "human"}) {
          const auto& a = by_name.at("Native (" + column + ")");
          const auto& b = by_name.at("Bootstrapped (" + column + ")");
          cols.push_back({column, metrics::agreement_table(a.predictions, b.predictions, a.gold)});
        }
        metrics::report::write_agreement(agreement, "Native", "Bootstrapped", cols);
      }

      if (ev_out.empty()) {
        std::cout << quality.str() << (quality.str().empty() ? "" : "\n") << rejection.str()
                  << (agreement.str().empty() ? "" : "\n") << agreement.str();
      } else {
        if (!quality.str().empty()) write_text((fs::path(ev_out) / "mt_quality.csv").string(), quality.str());
        write_text((fs::path(ev_out) / "error_rejection.csv").string(), rejection.str());
        if (!agreement.str().empty()) write_text((fs::path(ev_out) / "agreement.csv").string(), agreement.str());
        std::cout << rejection.str();
      }
    } else if (*sim) {
      auto cfg = gateway::load_config(sim_config);
      if (!sim_thresholds.empty()) {
        cfg.thresholds = parse_thresholds(sim_thresholds);
        cfg.calibration_path.clear();
      }
      cfg.event_log_path = sim_log;
      auto rt = gateway::load_runtime(cfg);
      router::RouterOptions opts;
      opts.catalog = rt.catalog;
      opts.claim_timeout_ms = cfg.claim_timeout_s * 1000;
      std::int64_t tick = 0;
      opts.clock = [&tick] { return tick; };
      if (!sim_log.empty()) opts.event_log_path = sim_log;
      router::Router r(rt.pipeline, std::move(opts));
      std::size_t automated_correct = 0;
      for (const auto& ex : load_corpus(sim_batch)) {
        ++tick;
        const auto d = r.route({ex.id, ex.text});
        if (d.outcome == router::Outcome::Automated && d.label == ex.label) ++automated_correct;
      }
      const auto s = r.stats();
      nlohmann::json out = gateway::to_json(s);
      out["automated_accuracy"] =
          s.automated ? static_cast<double>(automated_correct) / static_cast<double>(s.automated) : 0.0;
      std::cout << out.dump(2) << "\n"
                << "automation rate " << metrics::report::fixed1(100.0 * s.automation_rate()) << "%\n";
    } else if (*srv) {
      auto cfg = gateway::load_config(srv_config);
      if (!srv_listen.empty()) {
        auto lines = gateway::parse_config("listen = " + srv_listen + "\n", "--listen");
        cfg.listen_host = lines.listen_host;
        cfg.listen_port = lines.listen_port;
      }
      sigset_t set;
      sigemptyset(&set);
      sigaddset(&set, SIGINT);
      sigaddset(&set, SIGTERM);
      pthread_sigmask(SIG_BLOCK, &set, nullptr);
      gateway::Gateway gw(gateway::load_runtime(cfg));
      const int port = gw.bind(cfg.listen_host, cfg.listen_port);
      std::cerr << "lingate listening on " << cfg.listen_host << ":" << port << " ("
                << router::to_string(cfg.mode) << ")\n";
      std::thread waiter([&gw, set] {
        int sig = 0;
        sigwait(&set, &sig);
        gw.stop();
      });
      gw.run();
      // run() also returns after a failed listen; wake the waiter so it can exit
      pthread_kill(waiter.native_handle(), SIGTERM);
      waiter.join();
      std::cerr << "lingate stopped\n";
    } else if (*rep) {
      if (rep_corpora.empty() && rep_log.empty()) throw Error("report needs --corpus or --event-log");
      if (!rep_corpora.empty()) {
        std::vector<metrics::report::StatsRow> rows;
        for (const auto& p : rep_corpora)
          rows.push_back({fs::path(p).stem().string(), metrics::corpus_stats(load_corpus(p))});
        metrics::report::write_corpus_stats(std::cout, rows);
      }
      if (!rep_log.empty()) {
        const auto events = router::load_event_log(rep_log);
        const auto state = router::replay_log(events);
        std::map<std::string, std::size_t> outcomes, tasks;
        for (const auto& [id, d] : state.dispositions) ++outcomes[router::to_string(d.outcome)];
        for (const auto& [id, t] : state.tasks)
          ++tasks[std::string(router::to_string(t.pool)) + "/" + router::to_string(t.state)];
        if (!rep_corpora.empty()) std::cout << "\n";
        std::cout << "events," << events.size() << "\nutterances," << state.dispositions.size() << "\n";
        for (const auto& [k, v] : outcomes) std::cout << "outcome " << k << "," << v << "\n";
        for (const auto& [k, v] : tasks) std::cout << "task " << k << "," << v << "\n";
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "lingate: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
