#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lingate/common.hpp"

namespace lingate::bridge {

// Raised by adapters that cannot produce a result (transport failure,
// unsupported language pair, ...). The router maps it to a failed gate.
class AdapterError : public Error {
 public:
  using Error::Error;
};

struct Hypothesis {
  std::string text;
  double score = 0.0;
  bool operator==(const Hypothesis&) const = default;
};

struct AsrResult {
  std::vector<Hypothesis> n_best;  // descending score
  double confidence = 0.0;         // in [0, 1]
  bool no_hypothesis = false;

  const std::string& top() const {
    static const std::string empty;
    return n_best.empty() ? empty : n_best.front().text;
  }
  bool operator==(const AsrResult&) const = default;
};

struct MtResult {
  std::string translation;
  double confidence = 0.0;  // in [0, 1]
  bool operator==(const MtResult&) const = default;
};

/// Speech recognizer contract. `input` is an audio reference; the simulator
/// treats it as the gold transcript.
class AsrAdapter {
 public:
  virtual ~AsrAdapter() = default;
  virtual AsrResult recognize(std::string_view input) const = 0;
  virtual std::string describe() const = 0;
  // False means callers must serialize calls into this adapter.
  virtual bool concurrent_safe() const { return true; }
};

class MtAdapter {
 public:
  virtual ~MtAdapter() = default;
  virtual MtResult translate(std::string_view text, std::string_view src, std::string_view tgt) const = 0;
  virtual std::string describe() const = 0;
  virtual bool concurrent_safe() const { return true; }
};

}  // namespace lingate::bridge
