#include "migmap/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <set>

#include <spdlog/spdlog.h>

#include "migmap/errors.hpp"

namespace migmap {

VectorSpace VectorSpace::build(const std::vector<std::string>& descriptions,
                               const StopwordList& stopwords) {
  VectorSpace space;
  space.stopwords_ = &stopwords;
  for (const auto& d : descriptions) {
    const auto phrases = extract_keyphrases(d, stopwords);
    if (d.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    ++space.documents_;
    for (const auto& p : phrases.phrases) ++space.df_[p];
  }
  if (space.documents_ == 0) throw DataError("cannot build a vector space from an empty corpus");
  return space;
}

std::size_t VectorSpace::document_frequency(const std::string& term) const {
  auto it = df_.find(term);
  return it == df_.end() ? 0 : it->second;
}

double VectorSpace::idf(const std::string& term) const {
  const double n = static_cast<double>(documents_);
  const double df = static_cast<double>(document_frequency(term));
  return scale_ * (std::log((1.0 + n) / (1.0 + df)) + 1.0);
}

TermVector VectorSpace::vectorize(const KeyphraseSet& phrases) const {
  std::map<std::string, std::size_t> tf;
  for (const auto& p : phrases.phrases) ++tf[p];
  TermVector v;
  for (const auto& [term, count] : tf) v.emplace(term, static_cast<double>(count) * idf(term));
  return v;
}

TermVector VectorSpace::vectorize(std::string_view text) const {
  return vectorize(extract_keyphrases(text, *stopwords_));
}

VectorSpace VectorSpace::scaled(double factor) const {
  if (!(factor > 0.0)) throw std::invalid_argument("idf scale factor must be positive");
  VectorSpace copy = *this;
  copy.scale_ *= factor;
  return copy;
}

double cosine(const TermVector& a, const TermVector& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (const auto& [_, w] : a) na += w * w;
  for (const auto& [_, w] : b) nb += w * w;
  if (na == 0.0 || nb == 0.0) return 0.0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      dot += ia->second * ib->second;
      ++ia;
      ++ib;
    }
  }
  const double score = dot / std::sqrt(na * nb);
  return std::clamp(score, 0.0, 1.0);
}

double csld(const std::vector<std::string>& removed_descriptions,
            const std::vector<std::string>& added_descriptions, const VectorSpace& space) {
  auto concat = [](const std::vector<std::string>& parts) {
    std::string doc;
    for (const auto& p : parts) {
      if (!doc.empty()) doc += '\n';
      doc += p;
    }
    return doc;
  };
  const std::string removed = concat(removed_descriptions);
  const std::string added = concat(added_descriptions);
  if (removed.empty() && added.empty()) {
    spdlog::debug("csld: both description sides empty; scoring 0");
    return 0.0;
  }
  return cosine(space.vectorize(removed), space.vectorize(added));
}

CatalogSimilarity::CatalogSimilarity(const ApiIndex& source, const ApiIndex& target,
                                     const StopwordList& stopwords)
    : source_(source), target_(target) {
  std::vector<std::string> docs;
  for (const auto& [_, d] : source.entries()) docs.push_back(d);
  for (const auto& [_, d] : target.entries()) docs.push_back(d);
  space_ = VectorSpace::build(docs, stopwords);
}

std::optional<double> CatalogSimilarity::score(const MethodRef& removed,
                                               const MethodRef& added) const {
  const std::string key = removed.encoding() + '\x1f' + added.encoding();
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  std::optional<double> result;
  const auto rd = source_.description(removed);
  const auto ad = target_.description(added);
  if (rd.empty() || ad.empty()) {
    spdlog::debug("no documentation for {} or {}; pair skipped", removed.encoding(),
                  added.encoding());
  } else {
    result = csld({std::string(rd)}, {std::string(ad)}, space_);
  }
  std::lock_guard lock(mutex_);
  cache_.emplace(key, result);
  return result;
}

}  // namespace migmap
