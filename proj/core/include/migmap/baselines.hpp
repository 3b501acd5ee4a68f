#pragma once

#include <cstdint>
#include <vector>

#include "migmap/api_index.hpp"
#include "migmap/fragment.hpp"
#include "migmap/similarity.hpp"

namespace migmap {

struct FcOptions {
  /// Minimum weighted co-occurrence count for a combination to be emitted.
  std::uint64_t threshold = 2;
  /// 1 enumerates (1,1) combinations only; 2 also enumerates up to (2,2).
  std::size_t max_cardinality = 1;
};

/// Frequent-combination baseline: counts removed x added combinations across
/// all fragments, weighted by fragment frequency, and keeps the frequent ones.
std::vector<Mapping> fc_mappings(const FragmentSet& fragments, const FcOptions& options = {});

/// Name similarity used by MC and FS: 0 when the camel-split name tokens are
/// disjoint, else 0.8 * Jaccard(tokens) + 0.2 * [equal arity].
double name_similarity(const MethodRef& source, const MethodRef& target);

/// Method-call baseline: inside each fragment, pairs removed and added methods
/// one-to-one, greedily by descending name similarity. Surplus methods stay
/// unmapped. Supports add up across fragments.
std::vector<Mapping> mc_mappings(const FragmentSet& fragments);

/// Function-signature baseline: every catalog pair scoring at least
/// `threshold`. Independent of any fragments.
std::vector<Mapping> fs_mappings(const ApiIndex& source, const ApiIndex& target,
                                 double threshold = 0.5);

/// Baseline output plus the number of documentation-similarity resolutions.
struct BaselineRun {
  std::vector<Mapping> mappings;
  std::uint64_t ld_uses = 0;
};

/// FC with documentation fallback. In every fragment that is not one-to-one,
/// a removed method whose best co-occurring added method is tied or below the
/// threshold is resolved, in canonical order, to the unused added method with
/// the highest documentation similarity. Each resolution counts as one use.
BaselineRun fc_mappings_ld(const FragmentSet& fragments, const SimilarityService& similarity,
                           const FcOptions& options = {});

/// MC pairing fragments that are not one-to-one by documentation similarity
/// instead of names; each such fragment uses documentation min(|R|, |A|) times.
BaselineRun mc_mappings_ld(const FragmentSet& fragments, const SimilarityService& similarity);

}  // namespace migmap
