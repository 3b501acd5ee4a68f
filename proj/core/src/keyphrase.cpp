#include "migmap/keyphrase.hpp"

#include <algorithm>
#include <cctype>

#include "migmap/method_ref.hpp"
#include "migmap/report.hpp"

namespace migmap {
namespace detail {
std::string_view stopwords_resource();
}

StopwordList::StopwordList(std::string_view text) : fingerprint_(migmap::fingerprint(text)) {
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.remove_suffix(1);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front()))) line.remove_prefix(1);
    if (line.empty() || line.front() == '#') continue;
    std::string w(line);
    std::transform(w.begin(), w.end(), w.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    words_.insert(std::move(w));
  }
}

const StopwordList& StopwordList::builtin() {
  static const StopwordList list(detail::stopwords_resource());
  return list;
}

bool KeyphraseSet::contains(std::string_view phrase) const {
  return std::find(phrases.begin(), phrases.end(), phrase) != phrases.end();
}

KeyphraseSet extract_keyphrases(std::string_view text, const StopwordList& stopwords) {
  KeyphraseSet out;
  auto emit = [&](std::string phrase) {
    if (!out.contains(phrase)) out.phrases.push_back(std::move(phrase));
  };

  auto flush_run = [&](const std::vector<std::string>& tokens) {
    std::vector<bool> keep(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) keep[i] = !stopwords.contains(tokens[i]);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (!keep[i]) continue;
      emit(tokens[i]);
      if (i + 1 < tokens.size() && keep[i + 1]) emit(tokens[i] + " " + tokens[i + 1]);
    }
  };

  // A run is a stretch of text without breaking punctuation.
  std::vector<std::string> run;
  std::string word;
  auto end_word = [&] {
    for (auto& t : split_identifier(word)) run.push_back(std::move(t));
    word.clear();
  };
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isalnum(c)) {
      word += ch;
    } else if (std::isspace(c) || ch == '_') {
      end_word();
    } else {
      end_word();
      flush_run(run);
      run.clear();
    }
  }
  end_word();
  flush_run(run);
  return out;
}

}  // namespace migmap
