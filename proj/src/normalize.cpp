#include <algorithm>
#include <cctype>
#include <set>

#include "ag/align.hpp"

namespace ag::align {

namespace {

// Attached punctuation stripped from token edges. Apostrophes and hyphens
// stay: clitics ("'s") and fragment markers ("mea-") are not punctuation.
bool is_attached_punct(char c) {
  switch (c) {
    case ',': case '.': case '!': case '?': case ';': case ':':
    case '"': case '`': case '(': case ')': case '[': case ']':
    case '<': case '>':
      return true;
    default:
      return false;
  }
}

std::string fold_and_strip(std::string_view token, const NormPolicy& policy) {
  std::size_t begin = 0, end = token.size();
  if (policy.strip_attached_punct) {
    while (begin < end && is_attached_punct(token[begin])) ++begin;
    while (end > begin && is_attached_punct(token[end - 1])) --end;
  }
  std::string out;
  out.reserve(end - begin);
  for (std::size_t i = begin; i < end; ++i) {
    char c = token[i];
    out.push_back(policy.case_fold
                      ? static_cast<char>(std::tolower(static_cast<unsigned char>(c)))
                      : c);
  }
  return out;
}

}  // namespace

void NormPolicy::check() const {
  std::set<std::string> seen;
  for (const auto& cls : nonlexical_classes) {
    if (cls.empty()) {
      throw Error(ErrorKind::InvalidArgument,
                  "empty non-lexical equivalence class");
    }
    for (const auto& member : cls) {
      if (!seen.insert(member).second) {
        throw Error(ErrorKind::InvalidArgument,
                    "token '" + member +
                        "' appears in two non-lexical equivalence classes");
      }
    }
  }
}

std::vector<NormToken> normalize(std::string_view token, const NormPolicy& policy) {
  std::string base = fold_and_strip(token, policy);
  if (base.empty()) return {};

  // Contraction splits expand before classification; the pieces are
  // normalized forms already.
  auto split = policy.contraction_splits.find(base);
  if (split != policy.contraction_splits.end()) {
    std::vector<NormToken> out;
    for (const auto& piece : split->second) {
      out.push_back({piece, TokenClass::Lexical});
    }
    return out;
  }

  for (const auto& cls : policy.nonlexical_classes) {
    if (std::find(cls.begin(), cls.end(), base) != cls.end()) {
      // Canonical representative: the lexicographically smallest member.
      std::string rep = *std::min_element(cls.begin(), cls.end());
      return {{rep, TokenClass::NonLexical}};
    }
  }

  for (const auto& suffix : policy.fragment_suffixes) {
    if (base.size() > suffix.size() && base.ends_with(suffix)) {
      return {{base, TokenClass::Fragment}};
    }
  }

  return {{base, TokenClass::Lexical}};
}

std::string norm_key(std::string_view token, const NormPolicy& policy) {
  std::string key;
  for (const NormToken& t : normalize(token, policy)) {
    if (!key.empty()) key += ' ';
    key += t.text;
  }
  return key;
}

}  // namespace ag::align
