#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "lingate/bridge/asr_simulator.hpp"
#include "lingate/bridge/mt.hpp"
#include "lingate/corpus.hpp"

// Seeded English/Spanish customer-care corpus. Utterances are drawn as
// language-neutral concept sequences and then realized in each language, so
// every Spanish test utterance has a parallel English reference.
namespace lingate::synthetic {

struct Concept {
  const char* key;
  const char* en;
  const char* es;
};

// clang-format off
inline const std::vector<Concept>& concepts() {
  static const std::vector<Concept> c = {
    // carriers
    {"iwant", "i want to", "quiero"},
    {"ineed", "i need", "necesito"},
    {"question", "i have a question about", "tengo una pregunta sobre"},
    {"help", "can you help me with", "me puede ayudar con"},
    {"calling", "i am calling about", "llamo por"},
    {"trouble", "i have a problem with", "tengo un problema con"},
    // fillers
    {"hello", "hello", "hola"}, {"yes", "yes", "sí"}, {"my", "my", "mi"},
    {"please", "please", "por favor"}, {"now", "now", "ahora"},
    // family keywords
    {"bill", "bill", "factura"}, {"payment", "payment", "pago"}, {"account", "account", "cuenta"},
    {"service", "service", "servicio"}, {"internet", "internet", "internet"}, {"phone", "phone", "teléfono"},
    {"tv", "television", "televisión"}, {"agent", "agent", "agente"}, {"appointment", "appointment", "cita"},
    // witness keywords
    {"details", "details", "detalles"}, {"charges", "charges", "cargos"},
    {"high", "high", "alta"}, {"wrong", "wrong", "incorrecta"},
    {"automatic", "automatic", "automático"}, {"card", "card", "tarjeta"},
    {"make", "make", "hacer"}, {"today", "today", "hoy"},
    {"arrangement", "arrangement", "arreglo"}, {"extension", "extension", "extensión"},
    {"lower", "lower", "bajar"}, {"cheaper", "cheaper", "barata"},
    {"balance", "balance", "saldo"}, {"owe", "owe", "debo"},
    {"password", "password", "contraseña"}, {"forgot", "forgot", "olvidé"},
    {"address", "address", "dirección"}, {"moving", "moving", "mudanza"},
    {"activate", "activate", "activar"}, {"new", "new", "nuevo"},
    {"cancel", "cancel", "cancelar"}, {"disconnect", "disconnect", "desconectar"},
    {"slow", "slow", "lento"}, {"speed", "speed", "velocidad"},
    {"signal", "signal", "señal"}, {"channels", "channels", "canales"},
    {"equipment", "equipment", "equipo"}, {"return", "return", "devolver"},
    {"technician", "technician", "técnico"}, {"visit", "visit", "visita"},
    {"change", "change", "cambiar"}, {"date", "date", "fecha"},
    {"add", "add", "agregar"}, {"movies", "movies", "películas"},
    {"plan", "plan", "plan"}, {"offers", "offers", "ofertas"},
    {"speak", "speak", "hablar"}, {"person", "person", "persona"},
    {"complaint", "complaint", "reclamo"}, {"manager", "manager", "gerente"},
    {"thanks", "thanks", "gracias"}, {"bye", "bye", "adiós"},
    {"know", "know", "sé"}, {"sure", "sure", "seguro"},
    {"upgrade", "upgrade", "actualizar"}, {"model", "model", "modelo"},
    {"copy", "copy", "copia"}, {"email", "email", "correo"},
    {"english", "english", "inglés"}, {"spanish", "spanish", "español"}, {"language", "language", "idioma"},
  };
  return c;
}

struct LabelSpec {
  JointLabel label;
  const char* family;  // "" for none
  const char* witness[2];
  const char* only_in;  // "" (both), "en" or "es"
};

inline const std::vector<LabelSpec>& label_specs() {
  static const std::vector<LabelSpec> l = {
    {{"QUESTION", "BILLING DETAILS", "NONE"}, "bill", {"details", "charges"}, ""},
    {{"COMPLAINT", "BILLING PROBLEM", "ANGRY"}, "bill", {"high", "wrong"}, ""},
    {{"QUESTION", "BILLING AUTO PAY", "NONE"}, "payment", {"automatic", "card"}, ""},
    {{"NONE", "PAY BILL INTERNET", "NONE"}, "payment", {"make", "today"}, ""},
    {{"QUESTION", "PAYMENT ARRANGEMENT", "NONE"}, "payment", {"arrangement", "extension"}, ""},
    {{"NONE", "LOWER MY BILL", "NONE"}, "bill", {"lower", "cheaper"}, ""},
    {{"QUESTION", "ACCOUNT BALANCE", "NONE"}, "account", {"balance", "owe"}, ""},
    {{"NONE", "ACCOUNT PASSWORD", "NONE"}, "account", {"password", "forgot"}, ""},
    {{"NONE", "CHANGE ADDRESS", "NONE"}, "account", {"address", "moving"}, ""},
    {{"NONE", "ACTIVATE PHONE", "NONE"}, "phone", {"activate", "new"}, ""},
    {{"COMPLAINT", "DISCONNECT INTERNET", "ANGRY"}, "internet", {"cancel", "disconnect"}, ""},
    {{"QUESTION", "TECH INTERNET SLOW", "NONE"}, "internet", {"slow", "speed"}, ""},
    {{"COMPLAINT", "TECH NO SIGNAL", "NONE"}, "tv", {"signal", "channels"}, ""},
    {{"QUESTION", "EQUIPMENT RETURN", "NONE"}, "service", {"equipment", "return"}, ""},
    {{"NONE", "APPOINTMENT TECHNICIAN", "NONE"}, "appointment", {"technician", "visit"}, ""},
    {{"NONE", "APPOINTMENT RESCHEDULE", "NONE"}, "appointment", {"change", "date"}, ""},
    {{"NONE", "ADD SERVICE", "NONE"}, "service", {"add", "movies"}, ""},
    {{"QUESTION", "SALES NEW PLAN", "NONE"}, "service", {"plan", "offers"}, ""},
    {{"NONE", "NONE", "LIVE AGENT"}, "agent", {"speak", "person"}, ""},
    {{"COMPLAINT", "NONE", "ANGRY"}, "agent", {"complaint", "manager"}, ""},
    {{"NONE", "NONE", "THANK YOU"}, "", {"thanks", "bye"}, ""},
    {{"NONE", "NONE", "DON'T KNOW"}, "", {"know", "sure"}, ""},
    {{"QUESTION", "PHONE UPGRADE", "NONE"}, "phone", {"upgrade", "model"}, ""},
    {{"NONE", "BILLING COPY", "NONE"}, "bill", {"copy", "email"}, ""},
    {{"ENGLISH", "NONE", "NONE"}, "", {"english", "language"}, "es"},
    {{"FOREIGN", "NONE", "NONE"}, "", {"spanish", "language"}, "en"},
  };
  return l;
}

// Word-level MT tables. Several entries are deliberately lossy: ambiguous
// targets, mistranslated key words, literal renderings of multi-word phrases.
struct LexEntry {
  const char* source;
  const char* target;
  double weight;
};

inline const std::vector<LexEntry>& en_es_entries() {
  static const std::vector<LexEntry> e = {
    {"i", "yo", 1}, {"want", "quiero", 1}, {"to", "a", 1}, {"need", "necesito", 1}, {"have", "tengo", 1},
    {"a", "un", 1}, {"question", "pregunta", 1}, {"about", "sobre", 1}, {"can", "puede", 1},
    {"you", "usted", 1}, {"help", "ayudar", 1}, {"me", "me", 1}, {"with", "con", 1}, {"am", "estoy", 1},
    {"calling", "llamando", 1}, {"problem", "problema", 1}, {"hello", "hola", 1}, {"yes", "sí", 1},
    {"my", "mi", 1}, {"please", "por favor", 1}, {"now", "ahora", 1},
    {"bill", "factura", 0.5}, {"bill", "proyecto de ley", 0.5},
    {"payment", "pago", 1}, {"account", "cuenta", 1}, {"service", "servicio", 1},
    {"internet", "internet", 1}, {"phone", "teléfono", 1}, {"television", "televisión", 1},
    {"agent", "agente", 1}, {"appointment", "nombramiento", 0.5}, {"appointment", "cita", 0.5},
    {"details", "detalles", 1}, {"charges", "cargos", 0.5}, {"charges", "acusaciones", 0.5},
    {"high", "alta", 1}, {"wrong", "equivocada", 1}, {"automatic", "automático", 1}, {"card", "tarjeta", 1},
    {"make", "hacer", 1}, {"today", "hoy", 1}, {"arrangement", "acuerdo", 0.6}, {"arrangement", "arreglo", 0.4},
    {"extension", "extensión", 1}, {"lower", "inferior", 0.6}, {"lower", "bajar", 0.4},
    {"cheaper", "más barato", 1}, {"balance", "equilibrio", 0.6}, {"balance", "saldo", 0.4},
    {"owe", "debo", 1}, {"password", "contraseña", 1}, {"forgot", "olvidé", 1},
    {"address", "dirección", 0.5}, {"address", "discurso", 0.5}, {"moving", "moviendo", 1},
    {"activate", "activar", 1}, {"new", "nuevo", 1}, {"cancel", "cancelar", 1},
    {"disconnect", "desconectar", 1}, {"slow", "lento", 1}, {"speed", "velocidad", 1},
    {"signal", "señal", 1}, {"channels", "canales", 1}, {"equipment", "equipamiento", 0.6},
    {"equipment", "equipo", 0.4}, {"return", "regreso", 0.5}, {"return", "devolver", 0.5},
    {"technician", "técnico", 1}, {"visit", "visita", 1}, {"change", "cambio", 0.6}, {"change", "cambiar", 0.4},
    {"date", "fecha", 0.6}, {"date", "cita", 0.4}, {"add", "añadir", 0.6}, {"add", "agregar", 0.4},
    {"movies", "películas", 1}, {"plan", "plan", 1}, {"offers", "ofertas", 1}, {"speak", "hablar", 1},
    {"person", "persona", 1}, {"complaint", "queja", 0.7}, {"complaint", "reclamo", 0.3},
    {"manager", "gerente", 1}, {"thanks", "gracias", 1}, {"bye", "adiós", 1}, {"know", "saber", 1},
    {"sure", "seguro", 1}, {"upgrade", "mejorar", 0.6}, {"upgrade", "actualizar", 0.4}, {"model", "modelo", 1},
    {"copy", "copia", 1}, {"email", "correo electrónico", 1}, {"english", "inglés", 1},
    {"spanish", "español", 1}, {"language", "idioma", 0.6}, {"language", "lenguaje", 0.4},
  };
  return e;
}

inline const std::vector<LexEntry>& es_en_entries() {
  static const std::vector<LexEntry> e = {
    {"quiero", "i want", 1}, {"necesito", "i need", 1}, {"tengo", "i have", 1}, {"una", "a", 1}, {"un", "a", 1},
    {"pregunta", "question", 1}, {"sobre", "about", 1}, {"me", "me", 1}, {"puede", "can", 1},
    {"ayudar", "help", 1}, {"con", "with", 1}, {"llamo", "i call", 1}, {"por", "for", 1},
    {"problema", "problem", 1}, {"hola", "hello", 1}, {"sí", "yes", 1}, {"mi", "my", 1}, {"favor", "favor", 1},
    {"ahora", "now", 1}, {"de", "of", 1}, {"la", "the", 1}, {"a", "to", 1}, {"que", "that", 1},
    {"factura", "bill", 0.5}, {"factura", "invoice", 0.5}, {"pago", "payment", 1},
    {"cuenta", "account", 0.6}, {"cuenta", "bill", 0.4}, {"servicio", "service", 1}, {"internet", "internet", 1},
    {"teléfono", "phone", 1}, {"televisión", "television", 1}, {"agente", "agent", 1},
    {"cita", "appointment", 0.5}, {"cita", "quote", 0.5}, {"detalles", "details", 1},
    {"cargos", "charges", 0.5}, {"cargos", "positions", 0.5}, {"alta", "high", 1}, {"incorrecta", "wrong", 1},
    {"automático", "automatic", 1}, {"tarjeta", "card", 1}, {"hacer", "make", 1}, {"hoy", "today", 1},
    {"arreglo", "fix", 0.6}, {"arreglo", "arrangement", 0.4}, {"extensión", "extension", 1},
    {"bajar", "download", 0.5}, {"bajar", "lower", 0.5}, {"barata", "cheap", 1},
    {"saldo", "balance", 0.6}, {"saldo", "settle", 0.4}, {"debo", "owe", 1}, {"contraseña", "password", 1},
    {"olvidé", "forgot", 1}, {"dirección", "direction", 0.7}, {"dirección", "address", 0.3},
    {"mudanza", "move", 1}, {"activar", "activate", 1}, {"nuevo", "new", 1}, {"cancelar", "cancel", 1},
    {"desconectar", "disconnect", 1}, {"lento", "slow", 1}, {"velocidad", "speed", 1},
    {"señal", "sign", 0.6}, {"señal", "signal", 0.4}, {"canales", "channels", 1},
    {"equipo", "team", 0.6}, {"equipo", "equipment", 0.4}, {"devolver", "return", 1},
    {"técnico", "technician", 1}, {"visita", "visit", 1}, {"cambiar", "change", 1}, {"fecha", "date", 1},
    {"agregar", "add", 1}, {"películas", "movies", 1}, {"plan", "plan", 1}, {"ofertas", "offers", 1},
    {"hablar", "speak", 1}, {"persona", "person", 1}, {"reclamo", "claim", 0.7}, {"reclamo", "complaint", 0.3},
    {"gerente", "manager", 1}, {"gracias", "thanks", 1}, {"adiós", "bye", 1}, {"sé", "know", 1},
    {"seguro", "insurance", 0.5}, {"seguro", "sure", 0.5}, {"actualizar", "update", 1}, {"modelo", "model", 1},
    {"copia", "copy", 1}, {"correo", "mail", 1}, {"inglés", "english", 1}, {"español", "spanish", 1},
    {"idioma", "language", 1},
  };
  return e;
}

// Spanish recognizer confusions: number agreement, article drops, phonetic slips.
inline std::map<std::string, std::vector<std::string>> spanish_confusions() {
  return {
      {"problema", {"problemas"}}, {"cuenta", {"fuenta", "cuentas"}}, {"factura", {"facturas", "fractura"}},
      {"mi", {"me", "mis"}},       {"un", {"una", "en"}},             {"cargos", {"cargo", "carros"}},
      {"pago", {"pagos", "bago"}}, {"cita", {"citas", "sita"}},       {"señal", {"senal", "señales"}},
      {"equipo", {"equipos"}},     {"quiero", {"quiera", "quieres"}}, {"saldo", {"salgo"}},
  };
}
// clang-format on

inline bridge::NoiseConfig spanish_noise(std::uint64_t seed) {
  bridge::NoiseConfig c;
  c.substitutions = spanish_confusions();
  c.insertion_vocab = {"eh", "de", "la", "a", "que"};
  c.seed = seed;
  return c;
}

inline bridge::NoiseConfig english_noise(std::uint64_t seed) {
  bridge::NoiseConfig c;
  c.insertion_vocab = {"uh", "the", "a", "to", "um"};
  c.seed = seed;
  return c;
}

struct Options {
  std::uint64_t seed = 7;
  std::size_t en_train = 3000;
  std::size_t es_train = 2000;
  std::size_t es_dev = 500;
  std::size_t es_test = 500;
  std::size_t n_best = 5;
};

struct World {
  Corpus en_train;
  Corpus es_train;
  Corpus es_dev;
  Corpus es_test;             // text = human transcript, n_best = recognizer output
  Corpus en_test_reference;   // parallel English of es_test, same ids
  bridge::TranslationLexicon en_es;
  bridge::TranslationLexicon es_en;
  LabelCatalog catalog;       // labels shared by both languages
};

inline bridge::TranslationLexicon lexicon_from(const std::vector<LexEntry>& entries) {
  bridge::TranslationLexicon lex;
  for (const auto& e : entries) lex.add(e.source, e.target, e.weight);
  return lex;
}

namespace detail {

inline const Concept& find_concept(std::string_view key) {
  for (const auto& c : concepts())
    if (key == c.key) return c;
  throw Error("unknown concept " + std::string(key));
}

// One concept sequence for `spec`.
inline std::vector<std::string> draw_sequence(const LabelSpec& spec, Rng& rng) {
  static const std::vector<std::string> carriers = {"iwant", "ineed", "question", "help", "calling", "trouble"};
  static const std::vector<std::string> openers = {"hello", "yes"};
  static const std::vector<std::string> tails = {"please", "now"};
  std::vector<std::string> seq;
  if (rng.bernoulli(0.15)) seq.push_back(rng.pick(openers));
  seq.push_back(rng.pick(carriers));
  if (rng.bernoulli(0.5)) seq.push_back("my");
  std::vector<std::string> kw;
  const bool has_family = spec.family[0] != '\0';
  if (has_family && rng.bernoulli(0.8)) kw.push_back(spec.family);
  if (rng.bernoulli(0.75)) {
    const std::size_t w = rng.below(2);
    kw.push_back(spec.witness[w]);
    if (rng.bernoulli(0.25)) kw.push_back(spec.witness[1 - w]);
  } else if (kw.empty() || !has_family) {
    if (rng.bernoulli(0.5)) kw.push_back(spec.witness[rng.below(2)]);
  }
  if (kw.size() > 1 && rng.bernoulli(0.5)) std::swap(kw[0], kw[1]);
  seq.insert(seq.end(), kw.begin(), kw.end());
  if (rng.bernoulli(0.3)) seq.push_back(rng.pick(tails));
  return seq;
}

inline std::string realize(const std::vector<std::string>& seq, bool spanish) {
  std::vector<std::string> words;
  for (const auto& key : seq) {
    const auto& c = find_concept(key);
    words.emplace_back(spanish ? c.es : c.en);
  }
  return text::join(words);
}

inline std::vector<const LabelSpec*> specs_for(std::string_view language) {
  std::vector<const LabelSpec*> out;
  for (const auto& s : label_specs())
    if (s.only_in[0] == '\0' || language == s.only_in) out.push_back(&s);
  return out;
}

}  // namespace detail

/// Draws all corpora. Train sets carry n-best recognizer hypotheses; the test
/// set keeps the human transcript in `text` and recognizer output in `n_best`.
inline World generate(const Options& opt) {
  World w;
  w.en_es = lexicon_from(en_es_entries());
  w.es_en = lexicon_from(es_en_entries());
  std::vector<JointLabel> shared;
  for (const auto& s : label_specs())
    if (s.only_in[0] == '\0') shared.push_back(s.label);
  w.catalog = LabelCatalog::from_labels(shared, "<synthetic>");

  const bridge::SimulatedAsr es_asr(spanish_noise(mix_seed(opt.seed, 101)), opt.n_best);
  const bridge::SimulatedAsr en_asr(english_noise(mix_seed(opt.seed, 102)), opt.n_best);

  auto draw = [&](Corpus& out, std::string_view lang, const char* prefix, std::size_t count, std::uint64_t stream,
                  Corpus* reference) {
    Rng rng(mix_seed(opt.seed, stream));
    const auto specs = detail::specs_for(lang);
    const bool spanish = lang == "es";
    const auto& asr = spanish ? es_asr : en_asr;
    for (std::size_t i = 0; i < count; ++i) {
      const LabelSpec& spec = *specs[rng.below(specs.size())];
      const auto seq = detail::draw_sequence(spec, rng);
      LabeledExample ex;
      char id[64];
      std::snprintf(id, sizeof id, "%s-%06zu", prefix, i);
      ex.id = id;
      ex.language = std::string(lang);
      ex.text = detail::realize(seq, spanish);
      ex.label = spec.label;
      for (auto& h : asr.recognize_salted(ex.text, fnv1a(ex.id)).n_best) ex.n_best.push_back(std::move(h.text));
      if (reference) {
        LabeledExample ref = ex;
        ref.language = "en";
        ref.text = detail::realize(seq, false);
        ref.n_best.clear();
        reference->push_back(std::move(ref));
      }
      out.push_back(std::move(ex));
    }
  };
  draw(w.en_train, "en", "en-train", opt.en_train, 1, nullptr);
  draw(w.es_train, "es", "es-train", opt.es_train, 2, nullptr);
  draw(w.es_dev, "es", "es-dev", opt.es_dev, 3, nullptr);
  draw(w.es_test, "es", "es-test", opt.es_test, 4, &w.en_test_reference);
  return w;
}

inline void write_world(const World& w, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  save_corpus((dir / "en_train.jsonl").string(), w.en_train);
  save_corpus((dir / "es_train.jsonl").string(), w.es_train);
  save_corpus((dir / "es_dev.jsonl").string(), w.es_dev);
  save_corpus((dir / "es_test.jsonl").string(), w.es_test);
  save_corpus((dir / "en_test_reference.jsonl").string(), w.en_test_reference);
  auto write = [&](const char* name, const std::string& body) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw Error("cannot write " + (dir / name).string());
    out << body;
  };
  write("lexicon_en_es.tsv", w.en_es.to_tsv());
  write("lexicon_es_en.tsv", w.es_en.to_tsv());
  write("catalog.tsv", w.catalog.to_tsv());
  std::string conf;
  for (const auto& [word, alts] : spanish_confusions())
    for (const auto& a : alts) conf += word + "\t" + a + "\n";
  write("asr_confusions_es.tsv", conf);
}

}  // namespace lingate::synthetic
