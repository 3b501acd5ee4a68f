#include "migmap/baselines.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace migmap {
namespace {

using Pair = std::pair<MethodRef, MethodRef>;
using Combo = std::pair<MethodSet, MethodSet>;

std::vector<MethodSet> subsets_up_to(const MethodSet& set, std::size_t k) {
  std::vector<MethodSet> out;
  std::vector<MethodRef> v(set.begin(), set.end());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back({v[i]});
    if (k < 2) continue;
    for (std::size_t j = i + 1; j < v.size(); ++j) out.push_back({v[i], v[j]});
  }
  return out;
}

std::map<Pair, std::uint64_t> pair_counts(const FragmentSet& fragments) {
  std::map<Pair, std::uint64_t> counts;
  for (const auto& f : fragments) {
    for (const auto& r : f.removed) {
      for (const auto& a : f.added) counts[{r, a}] += f.frequency;
    }
  }
  return counts;
}

Mapping pair_mapping(const MethodRef& r, const MethodRef& a, std::uint64_t support,
                     std::optional<double> similarity = std::nullopt) {
  Mapping m;
  m.removed = {r};
  m.added = {a};
  m.support = support;
  m.similarity = similarity;
  return m;
}

std::vector<Mapping> to_mappings(const std::map<Pair, std::uint64_t>& support,
                                 const std::map<Pair, double>& similarity = {}) {
  std::vector<Mapping> out;
  for (const auto& [p, s] : support) {
    std::optional<double> sim;
    if (auto it = similarity.find(p); it != similarity.end()) sim = it->second;
    out.push_back(pair_mapping(p.first, p.second, s, sim));
  }
  return out;
}

// Greedy one-to-one assignment by descending score; ties go to the smaller pair.
template <typename Score>
std::vector<std::pair<Pair, double>> greedy_pairs(const Fragment& f, Score score) {
  std::vector<std::pair<Pair, double>> scored;
  for (const auto& r : f.removed) {
    for (const auto& a : f.added) scored.push_back({{r, a}, score(r, a)});
  }
  std::stable_sort(scored.begin(), scored.end(), [](const auto& x, const auto& y) {
    if (x.second != y.second) return x.second > y.second;
    return x.first < y.first;
  });
  std::set<MethodRef> used_r, used_a;
  std::vector<std::pair<Pair, double>> chosen;
  for (const auto& entry : scored) {
    const auto& [r, a] = entry.first;
    if (used_r.count(r) || used_a.count(a)) continue;
    used_r.insert(r);
    used_a.insert(a);
    chosen.push_back(entry);
  }
  return chosen;
}

}  // namespace

std::vector<Mapping> fc_mappings(const FragmentSet& fragments, const FcOptions& options) {
  if (options.max_cardinality <= 1) {
    std::map<Pair, std::uint64_t> frequent;
    for (const auto& [p, c] : pair_counts(fragments)) {
      if (c >= options.threshold) frequent.emplace(p, c);
    }
    return to_mappings(frequent);
  }
  std::map<Combo, std::uint64_t> counts;
  for (const auto& f : fragments) {
    const auto rs = subsets_up_to(f.removed, options.max_cardinality);
    const auto as = subsets_up_to(f.added, options.max_cardinality);
    for (const auto& r : rs) {
      for (const auto& a : as) counts[{r, a}] += f.frequency;
    }
  }
  std::vector<Mapping> out;
  for (const auto& [combo, c] : counts) {
    if (c < options.threshold) continue;
    Mapping m;
    m.removed = combo.first;
    m.added = combo.second;
    m.support = c;
    out.push_back(std::move(m));
  }
  return out;
}

double name_similarity(const MethodRef& source, const MethodRef& target) {
  const auto ts = split_identifier(source.name());
  const auto tt = split_identifier(target.name());
  const std::set<std::string> s(ts.begin(), ts.end());
  const std::set<std::string> t(tt.begin(), tt.end());
  std::size_t shared = 0;
  for (const auto& w : s) shared += t.count(w);
  if (shared == 0) return 0.0;
  const double jaccard =
      static_cast<double>(shared) / static_cast<double>(s.size() + t.size() - shared);
  return 0.8 * jaccard + (source.arity() == target.arity() ? 0.2 : 0.0);
}

std::vector<Mapping> mc_mappings(const FragmentSet& fragments) {
  std::map<Pair, std::uint64_t> support;
  for (const auto& f : fragments) {
    for (const auto& [p, _] : greedy_pairs(f, name_similarity)) support[p] += f.frequency;
  }
  return to_mappings(support);
}

std::vector<Mapping> fs_mappings(const ApiIndex& source, const ApiIndex& target,
                                 double threshold) {
  std::vector<Mapping> out;
  const auto targets = target.collapsed_methods();
  for (const auto& s : source.collapsed_methods()) {
    for (const auto& t : targets) {
      const double score = name_similarity(s, t);
      if (score >= threshold) out.push_back(pair_mapping(s, t, 1, score));
    }
  }
  return out;
}

BaselineRun fc_mappings_ld(const FragmentSet& fragments, const SimilarityService& similarity,
                           const FcOptions& options) {
  BaselineRun run;
  const auto counts = pair_counts(fragments);
  std::map<Pair, std::uint64_t> support;
  std::map<Pair, double> scores;
  for (const auto& [p, c] : counts) {
    if (c >= options.threshold) support.emplace(p, c);
  }
  for (const auto& f : fragments) {
    if (cardinality_of(f) == Cardinality::OneToOne) continue;
    std::set<MethodRef> used;
    for (const auto& r : f.removed) {
      if (used.size() == f.added.size()) break;
      std::uint64_t top = 0;
      std::size_t at_top = 0;
      for (const auto& a : f.added) {
        const auto c = counts.at({r, a});
        if (c > top) {
          top = c;
          at_top = 1;
        } else if (c == top) {
          ++at_top;
        }
      }
      if (at_top == 1 && top >= options.threshold) continue;
      std::optional<MethodRef> best;
      double best_score = -1.0;
      for (const auto& a : f.added) {
        if (used.count(a)) continue;
        auto s = similarity.score(r, a);
        if (s && *s > best_score) {
          best = a;
          best_score = *s;
        }
      }
      if (!best) continue;
      used.insert(*best);
      ++run.ld_uses;
      support[{r, *best}] += f.frequency;
      scores[{r, *best}] = best_score;
    }
  }
  run.mappings = to_mappings(support, scores);
  return run;
}

BaselineRun mc_mappings_ld(const FragmentSet& fragments, const SimilarityService& similarity) {
  BaselineRun run;
  std::map<Pair, std::uint64_t> support;
  std::map<Pair, double> scores;
  for (const auto& f : fragments) {
    if (cardinality_of(f) == Cardinality::OneToOne) {
      support[{*f.removed.begin(), *f.added.begin()}] += f.frequency;
      continue;
    }
    run.ld_uses += std::min(f.removed.size(), f.added.size());
    auto doc_score = [&](const MethodRef& r, const MethodRef& a) {
      return similarity.score(r, a).value_or(-1.0);
    };
    for (const auto& [p, s] : greedy_pairs(f, doc_score)) {
      support[p] += f.frequency;
      if (s >= 0.0) scores[p] = s;
    }
  }
  run.mappings = to_mappings(support, scores);
  return run;
}

}  // namespace migmap
