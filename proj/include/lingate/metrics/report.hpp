#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "lingate/metrics/agreement.hpp"
#include "lingate/metrics/rejection.hpp"
#include "lingate/metrics/ter.hpp"

// Comma-separated report tables. Percentages carry one decimal.
namespace lingate::metrics::report {

inline std::string fixed1(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

struct StatsRow {
  std::string name;
  CorpusStats stats;
};

inline void write_corpus_stats(std::ostream& out, const std::vector<StatsRow>& rows) {
  out << "Data set,# utts,# words,# unique labels\n";
  for (const auto& r : rows)
    out << csv_field(r.name) << ',' << r.stats.utterances << ',' << r.stats.words << ','
        << r.stats.unique_labels << '\n';
}

struct MtRow {
  std::string name;
  MtQualityReport quality;
};

inline void write_mt_quality(std::ostream& out, const std::vector<MtRow>& rows) {
  out << "Translation,BLEU,TER,Length\n";
  for (const auto& r : rows)
    out << csv_field(r.name) << ',' << fixed1(r.quality.bleu) << ',' << fixed1(r.quality.ter) << ','
        << fixed1(r.quality.length_ratio) << '\n';
}

struct CurveRow {
  std::string name;
  std::vector<double> error_rates;  // fractions in [0,1], one per column
};

inline std::string curve_row(const CurveRow& r) {
  std::string line = csv_field(r.name);
  for (double e : r.error_rates) line += ',' + fixed1(100.0 * e);
  return line;
}

inline CurveRow curve_row_from(std::string name, const ErrorRejectionCurve& curve,
                               const std::vector<double>& fractions) {
  CurveRow row{std::move(name), {}};
  for (double f : fractions) row.error_rates.push_back(curve.error_at(f));
  return row;
}

inline void write_error_rejection(std::ostream& out, const std::vector<double>& fractions,
                                  const std::vector<CurveRow>& rows) {
  out << "Configuration";
  for (double f : fractions) out << ',' << static_cast<int>(std::lround(100.0 * f)) << '%';
  out << '\n';
  for (const auto& r : rows) out << curve_row(r) << '\n';
}

struct AgreementColumn {
  std::string name;
  AgreementTable table;
};

inline void write_agreement(std::ostream& out, const std::string& model_a, const std::string& model_b,
                            const std::vector<AgreementColumn>& columns) {
  out << csv_field(model_a) << ',' << csv_field(model_b);
  for (const auto& c : columns) out << ',' << csv_field(c.name);
  out << '\n';
  struct Cell {
    const char* a;
    const char* b;
    std::size_t AgreementTable::*field;
  };
  const Cell cells[] = {{"+", "+", &AgreementTable::plus_plus},
                        {"+", "-", &AgreementTable::plus_minus},
                        {"-", "+", &AgreementTable::minus_plus},
                        {"-", "-", &AgreementTable::minus_minus}};
  for (const auto& cell : cells) {
    out << cell.a << ',' << cell.b;
    for (const auto& c : columns) out << ',' << fixed1(c.table.percent(c.table.*cell.field)) << '%';
    out << '\n';
  }
}

}  // namespace lingate::metrics::report
