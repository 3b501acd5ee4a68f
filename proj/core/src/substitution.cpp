#include "migmap/substitution.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include <spdlog/spdlog.h>

#include "migmap/errors.hpp"

namespace migmap {
namespace {

MethodSet set_difference(const MethodSet& a, const MethodSet& b) {
  MethodSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

MethodSet set_intersection(const MethodSet& a, const MethodSet& b) {
  MethodSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

std::string describe(const MethodSet& r, const MethodSet& a) {
  std::string s = "{";
  for (const auto& m : r) s += (s.size() > 1 ? "," : "") + m.encoding();
  s += "}->{";
  const auto mark = s.size();
  for (const auto& m : a) s += (s.size() > mark ? "," : "") + m.encoding();
  return s + "}";
}

std::optional<Fragment> residual(const Fragment& parent, const Fragment& iset,
                                 SubstitutionStats* stats) {
  Fragment r;
  r.removed = set_difference(parent.removed, iset.removed);
  r.added = set_difference(parent.added, iset.added);
  r.frequency = parent.frequency;
  r.provenance = parent.provenance;
  if (r.removed.empty() && r.added.empty()) return std::nullopt;
  if (r.removed.empty() || r.added.empty()) {
    if (stats) ++stats->discarded_residuals;
    spdlog::debug("discarding one-sided residual {} ({} provenance entries)",
                  describe(r.removed, r.added), r.provenance.size());
    return std::nullopt;
  }
  return r;
}

// ---- fast engine ------------------------------------------------------------
// Methods are interned in canonical order, so comparing sorted id vectors
// gives the same result as comparing the MethodSets.

using Ids = std::vector<std::uint32_t>;

struct Node {
  Ids removed;
  Ids added;
  std::uint64_t frequency = 0;
  std::vector<std::uint32_t> provenance;  // sorted, unique indices into the table
  std::optional<double> similarity;
  bool alive = false;
  bool clean = false;  // known to intersect no other live node

  std::size_t size() const { return removed.size() + added.size(); }
};

bool ids_share(const Ids& a, const Ids& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      return true;
    }
  }
  return false;
}

Ids ids_intersection(const Ids& a, const Ids& b) {
  Ids out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Ids ids_difference(const Ids& a, const Ids& b) {
  Ids out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<std::uint32_t> ids_union(const std::vector<std::uint32_t>& a,
                                     const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

class Engine {
 public:
  Engine(const FragmentSet& input, const SimilarityService* similarity,
         const SubstitutionOptions& options)
      : similarity_(options.enable_ld ? similarity : nullptr), options_(options) {
    std::set<MethodRef> all;
    for (const auto& f : input) {
      all.insert(f.removed.begin(), f.removed.end());
      all.insert(f.added.begin(), f.added.end());
    }
    methods_.assign(all.begin(), all.end());
    for (std::uint32_t i = 0; i < methods_.size(); ++i) method_ids_.emplace(methods_[i], i);
    removed_index_.resize(methods_.size());

    for (const auto& f : input) {
      Node n;
      for (const auto& m : f.removed) n.removed.push_back(method_ids_.at(m));
      for (const auto& m : f.added) n.added.push_back(method_ids_.at(m));
      n.frequency = f.frequency;
      for (const auto& p : f.provenance) n.provenance.push_back(intern(p));
      std::sort(n.provenance.begin(), n.provenance.end());
      n.provenance.erase(std::unique(n.provenance.begin(), n.provenance.end()),
                         n.provenance.end());
      insert(std::move(n));
    }
    cap_ = 10 * std::max<std::uint64_t>(measure_, 1);
  }

  SubstitutionResult run() {
    for (;;) {
      while (auto pair = first_intersecting_pair()) {
        step();
        intersect_nodes(pair->first, pair->second);
      }
      if (!similarity_ || !ld_round()) break;
    }
    return finish();
  }

 private:
  struct OrderLess {
    const std::vector<Node>* nodes;
    bool operator()(std::uint32_t x, std::uint32_t y) const {
      const Node& a = (*nodes)[x];
      const Node& b = (*nodes)[y];
      if (a.size() != b.size()) return a.size() < b.size();
      if (a.frequency != b.frequency) return a.frequency > b.frequency;
      if (a.removed != b.removed) return a.removed < b.removed;
      return a.added < b.added;
    }
  };

  std::uint32_t intern(const Provenance& p) {
    auto [it, fresh] = provenance_ids_.emplace(p, static_cast<std::uint32_t>(provenance_.size()));
    if (fresh) provenance_.push_back(p);
    return it->second;
  }

  static std::string content_key(const Node& n) {
    std::string key;
    key.reserve((n.size() + 1) * sizeof(std::uint32_t));
    auto put = [&](std::uint32_t v) { key.append(reinterpret_cast<const char*>(&v), sizeof v); };
    for (auto id : n.removed) put(id);
    put(UINT32_MAX);
    for (auto id : n.added) put(id);
    return key;
  }

  void step() {
    if (++steps_ > cap_) {
      std::ostringstream dump;
      for (auto id : dirty_) dump << "\n  " << render(nodes_[id]);
      for (std::uint32_t id = 0; id < nodes_.size(); ++id) {
        if (nodes_[id].alive && nodes_[id].clean) dump << "\n  " << render(nodes_[id]);
      }
      spdlog::error("substitution exceeded {} steps; current fragments:{}", cap_, dump.str());
      throw InvariantError("substitution iteration cap exceeded (" + std::to_string(cap_) + ")");
    }
  }

  std::string render(const Node& n) const {
    MethodSet r, a;
    for (auto id : n.removed) r.insert(methods_[id]);
    for (auto id : n.added) a.insert(methods_[id]);
    return describe(r, a) + " x" + std::to_string(n.frequency);
  }

  // Inserts with dedup-merge; returns the id of the live node holding the content.
  std::uint32_t insert(Node n) {
    const std::string key = content_key(n);
    if (auto it = by_content_.find(key); it != by_content_.end()) {
      const std::uint32_t id = it->second;
      Node& existing = nodes_[id];
      const bool was_dirty = !existing.clean;
      if (was_dirty) dirty_.erase(id);
      existing.frequency += n.frequency;
      existing.provenance = ids_union(existing.provenance, n.provenance);
      if (n.similarity) {
        existing.similarity = existing.similarity ? std::max(*existing.similarity, *n.similarity)
                                                  : n.similarity;
      }
      if (was_dirty) dirty_.insert(id);
      return id;
    }
    const auto id = static_cast<std::uint32_t>(nodes_.size());
    n.alive = true;
    n.clean = false;
    measure_ += n.size();
    for (auto m : n.removed) removed_index_[m].push_back(id);
    nodes_.push_back(std::move(n));
    by_content_.emplace(key, id);
    dirty_.insert(id);
    return id;
  }

  void kill(std::uint32_t id) {
    Node& n = nodes_[id];
    if (!n.clean) dirty_.erase(id);
    n.alive = false;
    measure_ -= n.size();
    by_content_.erase(content_key(n));
  }

  // Smallest live partner of `id` in fragment order, if any.
  std::optional<std::uint32_t> best_partner(std::uint32_t id) {
    const Node& n = nodes_[id];
    ++stamp_;
    if (seen_.size() < nodes_.size()) seen_.resize(nodes_.size(), 0);
    std::optional<std::uint32_t> best;
    OrderLess less{&nodes_};
    for (auto m : n.removed) {
      auto& bucket = removed_index_[m];
      std::erase_if(bucket, [&](std::uint32_t c) { return !nodes_[c].alive; });
      for (auto c : bucket) {
        if (c == id || seen_[c] == stamp_) continue;
        seen_[c] = stamp_;
        if (!ids_share(n.added, nodes_[c].added)) continue;
        if (!best || less(c, *best)) best = c;
      }
    }
    return best;
  }

  std::optional<std::pair<std::uint32_t, std::uint32_t>> first_intersecting_pair() {
    while (!dirty_.empty()) {
      const std::uint32_t id = *dirty_.begin();
      if (auto partner = best_partner(id)) return std::make_pair(id, *partner);
      dirty_.erase(dirty_.begin());
      nodes_[id].clean = true;
    }
    return std::nullopt;
  }

  void intersect_nodes(std::uint32_t x, std::uint32_t y) {
    const std::uint64_t before = measure_;
    Node a = nodes_[x];
    Node b = nodes_[y];
    Node iset;
    iset.removed = ids_intersection(a.removed, b.removed);
    iset.added = ids_intersection(a.added, b.added);
    iset.frequency = a.frequency + b.frequency;
    iset.provenance = ids_union(a.provenance, b.provenance);
    if (a.similarity || b.similarity) {
      iset.similarity = std::max(a.similarity.value_or(0.0), b.similarity.value_or(0.0));
    }
    const Ids shared_removed = iset.removed;
    const Ids shared_added = iset.added;
    kill(x);
    kill(y);
    insert(std::move(iset));
    for (const Node* parent : {&a, &b}) {
      Node r;
      r.removed = ids_difference(parent->removed, shared_removed);
      r.added = ids_difference(parent->added, shared_added);
      if (r.removed.empty() && r.added.empty()) continue;
      if (r.removed.empty() || r.added.empty()) {
        ++stats_.discarded_residuals;
        spdlog::debug("discarding one-sided residual {}", render(r));
        continue;
      }
      r.frequency = parent->frequency;
      r.provenance = parent->provenance;
      insert(std::move(r));
    }
    ++stats_.intersections;
    if (measure_ >= before) {
      throw InvariantError("progress measure did not decrease (" + std::to_string(before) +
                           " -> " + std::to_string(measure_) + ")");
    }
  }

  std::optional<double> pair_score(std::uint32_t r, std::uint32_t a) {
    const std::uint64_t key = (static_cast<std::uint64_t>(r) << 32) | a;
    if (auto it = scores_.find(key); it != scores_.end()) return it->second;
    auto s = similarity_->score(methods_[r], methods_[a]);
    scores_.emplace(key, s);
    return s;
  }

  bool ld_round() {
    double sum = 0.0;
    std::size_t scored_one_to_one = 0;
    std::optional<std::pair<std::uint32_t, std::uint32_t>> best;
    double best_score = -1.0;
    for (std::uint32_t id = 0; id < nodes_.size(); ++id) {
      const Node& n = nodes_[id];
      if (!n.alive) continue;
      if (n.removed.size() == 1 && n.added.size() == 1) {
        if (auto s = pair_score(n.removed[0], n.added[0])) {
          sum += *s;
          ++scored_one_to_one;
        }
        continue;
      }
      if (cardinality_of(n.removed.size(), n.added.size()) != Cardinality::ManyToMany) continue;
      for (auto r : n.removed) {
        for (auto a : n.added) {
          auto s = pair_score(r, a);
          if (!s) continue;
          const auto candidate = std::make_pair(r, a);
          if (!best || *s > best_score || (*s == best_score && candidate < *best)) {
            best = candidate;
            best_score = *s;
          }
        }
      }
    }
    if (!best) return false;
    ++stats_.ld_invocations;
    const double threshold =
        scored_one_to_one ? sum / static_cast<double>(scored_one_to_one) : options_.ld_floor;
    if (best_score < threshold) {
      spdlog::debug("LD: best pair {} -> {} scored {:.4f} below threshold {:.4f}",
                    methods_[best->first].encoding(), methods_[best->second].encoding(),
                    best_score, threshold);
      return false;
    }
    Node n;
    n.removed = {best->first};
    n.added = {best->second};
    n.frequency = 1;
    n.similarity = best_score;
    step();
    insert(std::move(n));
    ++stats_.ld_successes;
    spdlog::debug("LD: split {} -> {} at {:.4f} (threshold {:.4f})",
                  methods_[best->first].encoding(), methods_[best->second].encoding(), best_score,
                  threshold);
    return true;
  }

  SubstitutionResult finish() {
    std::vector<std::uint32_t> live;
    for (std::uint32_t id = 0; id < nodes_.size(); ++id) {
      if (nodes_[id].alive) live.push_back(id);
    }
    std::sort(live.begin(), live.end(), OrderLess{&nodes_});
    SubstitutionResult result;
    result.stats = stats_;
    for (auto id : live) {
      const Node& n = nodes_[id];
      Mapping m;
      for (auto r : n.removed) m.removed.insert(methods_[r]);
      for (auto a : n.added) m.added.insert(methods_[a]);
      m.support = n.frequency;
      m.similarity = n.similarity;
      m.resolved = m.cardinality() != Cardinality::ManyToMany;
      for (auto p : n.provenance) m.provenance.push_back(provenance_[p]);
      std::sort(m.provenance.begin(), m.provenance.end());
      result.mappings.push_back(std::move(m));
    }
    return result;
  }

  const SimilarityService* similarity_;
  SubstitutionOptions options_;
  std::vector<MethodRef> methods_;
  std::map<MethodRef, std::uint32_t> method_ids_;
  std::vector<Provenance> provenance_;
  std::map<Provenance, std::uint32_t> provenance_ids_;
  std::vector<Node> nodes_;
  std::unordered_map<std::string, std::uint32_t> by_content_;
  std::vector<std::vector<std::uint32_t>> removed_index_;
  std::set<std::uint32_t, OrderLess> dirty_{OrderLess{&nodes_}};
  std::unordered_map<std::uint64_t, std::optional<double>> scores_;
  std::vector<std::uint32_t> seen_;
  std::uint32_t stamp_ = 0;
  std::uint64_t measure_ = 0;
  std::uint64_t steps_ = 0;
  std::uint64_t cap_ = 0;
  SubstitutionStats stats_;
};

}  // namespace

std::vector<Fragment> sort_fragments(std::vector<Fragment> fragments) {
  std::sort(fragments.begin(), fragments.end(), fragment_order_less);
  return fragments;
}

std::optional<Fragment> intersect(const Fragment& f1, const Fragment& f2) {
  Fragment iset;
  iset.removed = set_intersection(f1.removed, f2.removed);
  iset.added = set_intersection(f1.added, f2.added);
  if (iset.removed.empty() || iset.added.empty()) return std::nullopt;
  iset.frequency = f1.frequency + f2.frequency;
  iset.provenance = f1.provenance;
  iset.provenance.insert(iset.provenance.end(), f2.provenance.begin(), f2.provenance.end());
  return iset;
}

void apply_intersection(FragmentSet& set, const Fragment& f1, const Fragment& f2,
                        const Fragment& iset, SubstitutionStats* stats) {
  auto r1 = residual(f1, iset, stats);
  auto r2 = residual(f2, iset, stats);
  set.erase(f1);
  set.erase(f2);
  set.insert(iset);
  if (r1) set.insert(std::move(*r1));
  if (r2) set.insert(std::move(*r2));
  if (stats) ++stats->intersections;
}

double ld_threshold(const FragmentSet& set, const SimilarityService& similarity, double floor) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& f : set) {
    if (cardinality_of(f) != Cardinality::OneToOne) continue;
    if (auto s = similarity.score(*f.removed.begin(), *f.added.begin())) {
      sum += *s;
      ++n;
    }
  }
  return n ? sum / static_cast<double>(n) : floor;
}

std::optional<Fragment> ld_split(const FragmentSet& set, const SimilarityService& similarity,
                                 double floor, bool* scored) {
  std::optional<std::pair<MethodRef, MethodRef>> best;
  double best_score = -1.0;
  for (const auto& f : set) {
    if (cardinality_of(f) != Cardinality::ManyToMany) continue;
    for (const auto& r : f.removed) {
      for (const auto& a : f.added) {
        auto s = similarity.score(r, a);
        if (!s) {
          spdlog::debug("LD: no documentation for {} / {}", r.encoding(), a.encoding());
          continue;
        }
        auto candidate = std::make_pair(r, a);
        if (!best || *s > best_score || (*s == best_score && candidate < *best)) {
          best = std::move(candidate);
          best_score = *s;
        }
      }
    }
  }
  if (scored) *scored = best.has_value();
  if (!best || best_score < ld_threshold(set, similarity, floor)) return std::nullopt;
  Fragment f;
  f.removed = {best->first};
  f.added = {best->second};
  f.frequency = 1;
  return f;
}

SubstitutionResult substitution(const FragmentSet& fragments, const SimilarityService* similarity,
                                const SubstitutionOptions& options) {
  return Engine(fragments, similarity, options).run();
}

Mapping to_mapping(const Fragment& f, std::optional<double> similarity) {
  Mapping m;
  m.removed = f.removed;
  m.added = f.added;
  m.support = f.frequency;
  m.similarity = similarity;
  m.resolved = cardinality_of(f) != Cardinality::ManyToMany;
  m.provenance = f.provenance;
  return m;
}

}  // namespace migmap
