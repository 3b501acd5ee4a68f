#pragma once

#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace migmap {

/// Words dropped before keyphrase extraction.
class StopwordList {
 public:
  /// One word per line; blank lines and '#' comments ignored.
  explicit StopwordList(std::string_view text);

  /// The list shipped in data/stopwords.txt, compiled into the library.
  static const StopwordList& builtin();

  bool contains(std::string_view word) const { return words_.count(std::string(word)) > 0; }
  std::size_t size() const { return words_.size(); }
  /// Content fingerprint recorded in report headers.
  const std::string& fingerprint() const { return fingerprint_; }

 private:
  std::unordered_set<std::string> words_;
  std::string fingerprint_;
};

/// Normalized terms of one description: lowercase unigrams and bigrams with
/// stopwords removed, in order of first occurrence, without duplicates.
struct KeyphraseSet {
  std::vector<std::string> phrases;

  bool empty() const { return phrases.empty(); }
  bool contains(std::string_view phrase) const;
};

/// Tokenizes on whitespace, punctuation and camel-case boundaries, lowercases,
/// drops stopwords, and emits the surviving unigrams plus bigrams of
/// survivors that were adjacent. Punctuation other than whitespace and '_'
/// ends a phrase, so bigrams never span it.
KeyphraseSet extract_keyphrases(std::string_view text,
                                const StopwordList& stopwords = StopwordList::builtin());

}  // namespace migmap
