#pragma once

#include <compare>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lingate/common.hpp"

namespace lingate {

/// A ⟨task name, session variable, event name⟩ triple. The three fields are
/// concatenated into one classification target; ordering is lexicographic on
/// (tn, sv, en), which is also the tie-break order used by the classifier.
struct JointLabel {
  std::string tn;
  std::string sv;
  std::string en;

  auto operator<=>(const JointLabel&) const = default;
  bool operator==(const JointLabel&) const = default;

  std::string str() const { return tn + "|" + sv + "|" + en; }
  bool valid() const { return !tn.empty() && !sv.empty() && !en.empty(); }
};

/// The declared label inventory: per-field token sets plus the observed
/// joint combinations.
class LabelCatalog {
 public:
  LabelCatalog() = default;

  template <class Range>
  static LabelCatalog from_labels(const Range& labels, std::string source = "<memory>") {
    LabelCatalog c;
    c.source_ = std::move(source);
    for (const auto& l : labels) c.add(l);
    return c;
  }

  void add(const JointLabel& label) {
    if (!label.valid()) throw Error("joint label has an empty field: " + label.str());
    tn_.insert(label.tn);
    sv_.insert(label.sv);
    en_.insert(label.en);
    joint_.insert(label);
  }

  bool contains(const JointLabel& label) const { return joint_.count(label) != 0; }

  const std::set<std::string>& tn_set() const { return tn_; }
  const std::set<std::string>& sv_set() const { return sv_; }
  const std::set<std::string>& en_set() const { return en_; }
  const std::set<JointLabel>& joint_set() const { return joint_; }
  std::size_t size() const { return joint_.size(); }
  bool empty() const { return joint_.empty(); }

  // Where the catalog came from; quoted in rejection messages.
  const std::string& source() const { return source_; }

  // Tab-separated `tn<TAB>sv<TAB>en` lines, sorted.
  std::string to_tsv() const {
    std::string out;
    for (const auto& l : joint_) out += l.tn + "\t" + l.sv + "\t" + l.en + "\n";
    return out;
  }

  static LabelCatalog parse_tsv(std::string_view body, std::string source) {
    LabelCatalog c;
    c.source_ = std::move(source);
    std::istringstream in{std::string(body)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      std::vector<std::string> f;
      std::size_t start = 0;
      for (std::size_t pos; (pos = line.find('\t', start)) != std::string::npos; start = pos + 1)
        f.push_back(line.substr(start, pos - start));
      f.push_back(line.substr(start));
      if (f.size() != 3)
        throw Error(c.source_ + ":" + std::to_string(lineno) + ": expected 3 tab-separated fields");
      c.add({f[0], f[1], f[2]});
    }
    return c;
  }

  static LabelCatalog load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read label catalog " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_tsv(ss.str(), path);
  }

 private:
  std::set<std::string> tn_, sv_, en_;
  std::set<JointLabel> joint_;
  std::string source_ = "<memory>";
};

}  // namespace lingate
