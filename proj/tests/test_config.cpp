#include <gtest/gtest.h>

#include <fstream>

#include "lingate/gateway/config.hpp"
#include "support.hpp"

using namespace lingate;
using namespace lingate::gateway;
using lingate::testing::L;

namespace {
void write(const std::string& path, const std::string& body) { std::ofstream(path, std::ios::binary) << body; }
}  // namespace

TEST(Config, ParsesAllKeys) {
  const auto c = parse_config(R"(# gateway
mode = NATIVE
tau_asr = 0.3
tau_mt = 0.4   # comment
tau_nlu = inf
source_language = es
target_language = en
model = models/native.json
catalog = /abs/catalog.tsv
claim_timeout_s = 45
event_log = events.jsonl
listen = 0.0.0.0:9090
asr.kind = simulator
asr.n_best = 3
asr.p_sub = 0.2
asr.p_del = 0.1
asr.p_ins = 0.05
asr.seed = 11
asr.insertion_vocab = eh um
mt.kind = identity
mt.seed = 4
mt.p_duplicate = 0.05
)", "gw.conf", "/etc/lingate");
  EXPECT_EQ(c.mode, router::PipelineMode::Native);
  EXPECT_DOUBLE_EQ(c.thresholds.tau_asr, 0.3);
  EXPECT_DOUBLE_EQ(c.thresholds.tau_mt, 0.4);
  EXPECT_EQ(c.thresholds.tau_nlu, kInfinity);
  EXPECT_EQ(c.model_path, "/etc/lingate/models/native.json");
  EXPECT_EQ(c.catalog_path, "/abs/catalog.tsv");
  EXPECT_EQ(c.event_log_path, "/etc/lingate/events.jsonl");
  EXPECT_EQ(c.claim_timeout_s, 45);
  EXPECT_EQ(c.listen_host, "0.0.0.0");
  EXPECT_EQ(c.listen_port, 9090);
  EXPECT_EQ(c.asr.n_best, 3u);
  EXPECT_DOUBLE_EQ(c.asr.noise.p_sub, 0.2);
  EXPECT_EQ(c.asr.noise.seed, 11u);
  EXPECT_EQ(c.asr.noise.insertion_vocab, (std::vector<std::string>{"eh", "um"}));
  EXPECT_EQ(c.mt.kind, "identity");
  EXPECT_DOUBLE_EQ(c.mt.p_duplicate, 0.05);
}

TEST(Config, RejectsBadInput) {
  EXPECT_THROW(parse_config("colour = blue\n"), Error);
  EXPECT_THROW(parse_config("tau_nlu = -1\n"), Error);
  EXPECT_THROW(parse_config("tau_nlu = high\n"), Error);
  EXPECT_THROW(parse_config("mode = TURBO\n"), Error);
  EXPECT_THROW(parse_config("listen = localhost\n"), Error);
  EXPECT_THROW(parse_config("listen = localhost:http\n"), Error);
  EXPECT_THROW(parse_config("claim_timeout_s = 0\n"), Error);
  try {
    parse_config("mode = TURBO\n", "gw.conf");
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("gw.conf: mode"), std::string::npos) << e.what();
  }
}

TEST(Config, LoadRuntimeWiresEverything) {
  lingate::testing::TempDir dir;
  const auto model = train(lingate::testing::separable_corpus(60, 3, 1), TrainParams{});
  save_model(dir.file("model.json"), model);
  std::string catalog;
  for (const auto& l : model.labels()) catalog += l.tn + "\t" + l.sv + "\t" + l.en + "\n";
  write(dir.file("catalog.tsv"), "# labels\n" + catalog);
  write(dir.file("lex.tsv"), "hola\thello\t1\n");
  write(dir.file("conf.tsv"), "factura\tfractura\n");
  calibration::CalibrationReport rep;
  rep.threshold = 1.25;
  write(dir.file("cal.txt"), calibration::to_key_value(rep));
  write(dir.file("gw.conf"),
        "model = model.json\ncatalog = catalog.tsv\nmt.lexicon = lex.tsv\nasr.confusions = conf.tsv\n"
        "calibration = cal.txt\ntau_nlu = 9\n");
  const auto rt = load_runtime(load_config(dir.file("gw.conf")));
  EXPECT_EQ(rt.catalog_text, "# labels\n" + catalog);
  EXPECT_EQ(rt.catalog.size(), model.labels().size());
  EXPECT_DOUBLE_EQ(rt.pipeline.thresholds.tau_nlu, 1.25);
  ASSERT_TRUE(rt.pipeline.mt);
  EXPECT_EQ(rt.pipeline.mt->translate("hola", "es", "en").translation, "hello");
  EXPECT_EQ(rt.pipeline.model->labels(), model.labels());
  ASSERT_TRUE(rt.calibration.has_value());
}

TEST(Config, MissingFilesFailAtStartup) {
  lingate::testing::TempDir dir;
  write(dir.file("gw.conf"), "model = nope.json\ncatalog = nope.tsv\n");
  EXPECT_THROW(load_runtime(load_config(dir.file("gw.conf"))), Error);
  EXPECT_THROW(load_config(dir.file("absent.conf")), Error);
  EXPECT_THROW(load_runtime(GatewayConfig{}), Error);
}

TEST(Config, AdapterFactories) {
  auto mt = [](const char* kind) {
    MtDescriptor d;
    d.kind = kind;
    return d;
  };
  EXPECT_EQ(make_mt(mt("none"), "es", "en"), nullptr);
  EXPECT_THROW(make_mt(mt("lexicon"), "es", "en"), Error);
  EXPECT_THROW(make_mt(mt("carrier-pigeon"), "es", "en"), Error);
  AsrDescriptor a;
  a.kind = "magic";
  EXPECT_THROW(make_asr(a), Error);
  a.kind = "simulator";
  EXPECT_NE(make_asr(a), nullptr);
}
