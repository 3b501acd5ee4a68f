#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "migmap/fragment.hpp"
#include "migmap/similarity.hpp"

namespace migmap {

/// Fragments in fragment_order_less order.
std::vector<Fragment> sort_fragments(std::vector<Fragment> fragments);

/// Component-wise intersection of two fragments. Present only when both the
/// removed and the added intersections are non-empty; its frequency is the
/// sum of the parents' frequencies and it carries both parents' provenance.
std::optional<Fragment> intersect(const Fragment& f1, const Fragment& f2);

struct SubstitutionStats {
  std::uint64_t intersections = 0;
  std::uint64_t discarded_residuals = 0;
  /// LD rounds that had at least one documented candidate pair to score.
  std::uint64_t ld_invocations = 0;
  std::uint64_t ld_successes = 0;
};

/// Replaces f1 and f2 in `set` by `iset` and the residuals f1 - iset and
/// f2 - iset. Residuals keep their parent's frequency and provenance; a
/// residual with an empty side is dropped. Every insertion dedup-merges.
void apply_intersection(FragmentSet& set, const Fragment& f1, const Fragment& f2,
                        const Fragment& iset, SubstitutionStats* stats = nullptr);

/// Mean documentation similarity of the set's one-to-one fragments, skipping
/// undocumented ones; `floor` when none can be scored.
double ld_threshold(const FragmentSet& set, const SimilarityService& similarity, double floor);

/// Scores every (removed, added) pair of every many-to-many fragment and
/// returns the best one as a new one-to-one fragment (frequency 1, with its
/// similarity) when it reaches ld_threshold. Ties go to the smaller pair in
/// canonical order. `scored` is set when at least one pair had documentation.
std::optional<Fragment> ld_split(const FragmentSet& set, const SimilarityService& similarity,
                                 double floor, bool* scored = nullptr);

struct SubstitutionOptions {
  bool enable_ld = true;
  double ld_floor = 0.5;
};

struct SubstitutionResult {
  std::vector<Mapping> mappings;
  SubstitutionStats stats;
};

/// Runs intersections to a fixpoint, then LD splitting, restarting after
/// every successful split, and returns each surviving fragment as a mapping.
/// Many-to-many survivors come back with resolved = false. `similarity` may
/// be null, which disables LD. Throws InvariantError when the iteration cap
/// is exceeded or the progress measure fails to decrease.
SubstitutionResult substitution(const FragmentSet& fragments, const SimilarityService* similarity,
                                const SubstitutionOptions& options = {});

/// Fragment -> mapping conversion used for substitution output.
Mapping to_mapping(const Fragment& f, std::optional<double> similarity = std::nullopt);

}  // namespace migmap
