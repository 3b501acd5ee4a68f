#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "migmap/api_index.hpp"
#include "migmap/keyphrase.hpp"

namespace migmap {

/// Sparse TF-IDF weights keyed by term; iteration order is the term order.
using TermVector = std::map<std::string, double>;

/// Document frequencies of a description corpus. idf uses the smoothed form
/// ln((1 + N) / (1 + df)) + 1, so unseen terms get the largest weight and
/// terms present in every document get exactly 1.
class VectorSpace {
 public:
  /// Each non-empty description is one document. Throws DataError when no
  /// document remains.
  static VectorSpace build(const std::vector<std::string>& descriptions,
                           const StopwordList& stopwords = StopwordList::builtin());

  std::size_t document_count() const { return documents_; }
  std::size_t document_frequency(const std::string& term) const;
  double idf(const std::string& term) const;

  /// tf (raw count in the keyphrase list) times idf.
  TermVector vectorize(const KeyphraseSet& phrases) const;
  TermVector vectorize(std::string_view text) const;

  /// Same space with every idf multiplied by `factor` (> 0).
  VectorSpace scaled(double factor) const;

  const StopwordList& stopwords() const { return *stopwords_; }

 private:
  std::size_t documents_ = 0;
  std::map<std::string, std::size_t> df_;
  double scale_ = 1.0;
  const StopwordList* stopwords_ = &StopwordList::builtin();
};

/// dot(a, b) / (|a| |b|), clamped to [0, 1]; 0 when either vector is zero.
double cosine(const TermVector& a, const TermVector& b);

/// Documentation similarity between two groups of method descriptions: each
/// side's descriptions are concatenated into one document, turned into
/// keyphrases and vectorized in `space`, and the cosine is returned.
double csld(const std::vector<std::string>& removed_descriptions,
            const std::vector<std::string>& added_descriptions, const VectorSpace& space);

/// Scores a (removed method, added method) pair by documentation similarity.
class SimilarityService {
 public:
  virtual ~SimilarityService() = default;
  /// nullopt when either method has no documentation.
  virtual std::optional<double> score(const MethodRef& removed, const MethodRef& added) const = 0;
};

/// CSLD over the descriptions of a source and a target API catalog, with the
/// vector space built from both catalogs. Scores are memoized.
class CatalogSimilarity : public SimilarityService {
 public:
  CatalogSimilarity(const ApiIndex& source, const ApiIndex& target,
                    const StopwordList& stopwords = StopwordList::builtin());

  std::optional<double> score(const MethodRef& removed, const MethodRef& added) const override;
  const VectorSpace& space() const { return space_; }

 private:
  const ApiIndex& source_;
  const ApiIndex& target_;
  VectorSpace space_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<std::string, std::optional<double>> cache_;
};

}  // namespace migmap
