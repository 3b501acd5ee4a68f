#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "migmap/method_ref.hpp"

namespace migmap {

using MethodSet = std::set<MethodRef>;

/// Where a fragment was witnessed: one hunk of one file in one commit.
struct Provenance {
  std::string project;
  std::string commit;
  std::string file;
  std::int64_t hunk = 0;

  friend auto operator<=>(const Provenance&, const Provenance&) = default;
};

/// A diff hunk reduced to the source-library calls it removed and the
/// target-library calls it added.
struct Fragment {
  MethodSet removed;
  MethodSet added;
  std::uint64_t frequency = 1;
  std::vector<Provenance> provenance;

  std::size_t method_count() const { return removed.size() + added.size(); }
  bool valid() const { return !removed.empty() && !added.empty() && frequency >= 1; }
  bool same_content(const Fragment& other) const {
    return removed == other.removed && added == other.added;
  }
};

enum class Cardinality { OneToOne, OneToMany, ManyToMany };

std::string_view to_string(Cardinality c);
Cardinality cardinality_of(std::size_t removed, std::size_t added);
inline Cardinality cardinality_of(const Fragment& f) {
  return cardinality_of(f.removed.size(), f.added.size());
}

/// Ordering used everywhere fragments are ranked: fewer methods first, then
/// higher frequency, then canonical content order (removed, then added).
bool fragment_order_less(const Fragment& a, const Fragment& b);

/// Deduplicated fragments kept in fragment_order_less order at all times.
class FragmentSet {
 public:
  FragmentSet() = default;

  /// Inserts `f`, merging into an existing fragment with identical content
  /// (frequencies add, provenance concatenates). Throws DataError when `f`
  /// has an empty side.
  void insert(Fragment f);

  /// Removes the fragment with the same content as `f`; returns false when
  /// absent.
  bool erase(const Fragment& f);

  const Fragment* find(const MethodSet& removed, const MethodSet& added) const;

  const std::vector<Fragment>& fragments() const { return fragments_; }
  std::size_t size() const { return fragments_.size(); }
  bool empty() const { return fragments_.empty(); }
  std::uint64_t total_frequency() const;
  std::size_t total_methods() const;

  auto begin() const { return fragments_.begin(); }
  auto end() const { return fragments_.end(); }

 private:
  std::vector<Fragment> fragments_;
};

/// Merges fragments with identical (removed, added) sets. The merged
/// frequency is the sum of the inputs' frequencies.
FragmentSet dedup_fragments(const std::vector<Fragment>& fragments);
FragmentSet dedup_fragments(const FragmentSet& fragments);

/// A finalized removed-set -> added-set replacement.
struct Mapping {
  MethodSet removed;
  MethodSet added;
  std::uint64_t support = 0;
  std::optional<double> similarity;
  bool resolved = true;
  std::vector<Provenance> provenance;

  Cardinality cardinality() const { return cardinality_of(removed.size(), added.size()); }
  bool same_content(const Mapping& other) const {
    return removed == other.removed && added == other.added;
  }
};

// ---- JSON-lines interchange -------------------------------------------------
// Lines starting with '#' are report headers and are skipped by the readers.

std::string fragment_to_json(const Fragment& f);
/// Parses one fragment line. Throws DataError naming the problem; an empty
/// side is rejected as a fragment invariant violation.
Fragment fragment_from_json(const std::string& line);

std::vector<Fragment> read_fragments(std::istream& in);
void write_fragments(std::ostream& out, const std::vector<Fragment>& fragments);

std::string mapping_to_json(const Mapping& m);
Mapping mapping_from_json(const std::string& line);

}  // namespace migmap
