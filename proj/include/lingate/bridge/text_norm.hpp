#pragma once

#include <string>
#include <string_view>

#include "lingate/common.hpp"

namespace lingate::bridge {

// Rule-based stand-in for truecasing and punctuation restoration ahead of MT:
// whitespace is collapsed, the first letter is capitalized, and a period is
// appended unless the text already ends in . ? or !
inline std::string normalize_for_mt(std::string_view utterance) {
  std::string out = text::join(text::split_ws(utterance));
  if (out.empty()) return out;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (text::is_alpha_at(out, i)) {
      text::capitalize_at(out, i);
      break;
    }
  }
  const char last = out.back();
  if (last != '.' && last != '?' && last != '!') out += '.';
  return out;
}

// Strips punctuation and lowercases MT output before classification.
inline std::string denormalize_from_mt(std::string_view translation) {
  std::string stripped;
  stripped.reserve(translation.size());
  for (std::size_t i = 0; i < translation.size();) {
    if (const std::size_t n = text::punct_len(translation, i)) {
      i += n;
      continue;
    }
    stripped += translation[i++];
  }
  return text::join(text::split_ws(text::to_lower(stripped)));
}

}  // namespace lingate::bridge
