#include "migmap/fragment.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "migmap/errors.hpp"

namespace migmap {
namespace {

using ojson = nlohmann::ordered_json;

bool method_set_less(const MethodSet& a, const MethodSet& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

ojson methods_to_json(const MethodSet& set) {
  ojson arr = ojson::array();
  for (const auto& m : set) arr.push_back(m.encoding());
  return arr;
}

MethodSet methods_from_json(const nlohmann::json& arr, Side side, const char* key) {
  if (!arr.is_array()) throw DataError(std::string("field '") + key + "' must be an array");
  MethodSet out;
  for (const auto& v : arr) {
    if (!v.is_string()) throw DataError(std::string("field '") + key + "' must hold strings");
    out.insert(MethodRef::parse(v.get<std::string>(), side));
  }
  return out;
}

ojson provenance_to_json(const std::vector<Provenance>& prov) {
  ojson arr = ojson::array();
  for (const auto& p : prov) arr.push_back(ojson::array({p.project, p.commit, p.file, p.hunk}));
  return arr;
}

std::vector<Provenance> provenance_from_json(const nlohmann::json& arr) {
  std::vector<Provenance> out;
  if (!arr.is_array()) throw DataError("field 'prov' must be an array");
  for (const auto& e : arr) {
    if (!e.is_array() || e.size() != 4 || !e[0].is_string() || !e[1].is_string() ||
        !e[2].is_string() || !e[3].is_number_integer()) {
      throw DataError("provenance entries must be [project, commit, file, hunk]");
    }
    out.push_back({e[0].get<std::string>(), e[1].get<std::string>(), e[2].get<std::string>(),
                   e[3].get<std::int64_t>()});
  }
  return out;
}

nlohmann::json parse_object(const std::string& line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw DataError("line is not a JSON object");
  return j;
}

bool skippable(const std::string& line) {
  auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string::npos || line[pos] == '#';
}

}  // namespace

std::string_view to_string(Cardinality c) {
  switch (c) {
    case Cardinality::OneToOne: return "one-to-one";
    case Cardinality::OneToMany: return "one-to-many";
    case Cardinality::ManyToMany: return "many-to-many";
  }
  return "unknown";
}

Cardinality cardinality_of(std::size_t removed, std::size_t added) {
  if (removed == 1 && added == 1) return Cardinality::OneToOne;
  if (removed == 1 && added > 1) return Cardinality::OneToMany;
  return Cardinality::ManyToMany;
}

bool fragment_order_less(const Fragment& a, const Fragment& b) {
  if (a.method_count() != b.method_count()) return a.method_count() < b.method_count();
  if (a.frequency != b.frequency) return a.frequency > b.frequency;
  if (a.removed != b.removed) return method_set_less(a.removed, b.removed);
  return method_set_less(a.added, b.added);
}

void FragmentSet::insert(Fragment f) {
  if (f.removed.empty() || f.added.empty()) {
    throw DataError("fragment must have at least one removed and one added method");
  }
  if (f.frequency == 0) throw DataError("fragment frequency must be positive");
  auto same = std::find_if(fragments_.begin(), fragments_.end(),
                           [&](const Fragment& g) { return g.same_content(f); });
  if (same != fragments_.end()) {
    f.frequency += same->frequency;
    auto prov = std::move(same->provenance);
    prov.insert(prov.end(), f.provenance.begin(), f.provenance.end());
    f.provenance = std::move(prov);
    fragments_.erase(same);
  }
  auto pos = std::lower_bound(fragments_.begin(), fragments_.end(), f, fragment_order_less);
  fragments_.insert(pos, std::move(f));
}

bool FragmentSet::erase(const Fragment& f) {
  auto it = std::find_if(fragments_.begin(), fragments_.end(),
                         [&](const Fragment& g) { return g.same_content(f); });
  if (it == fragments_.end()) return false;
  fragments_.erase(it);
  return true;
}

const Fragment* FragmentSet::find(const MethodSet& removed, const MethodSet& added) const {
  for (const auto& f : fragments_) {
    if (f.removed == removed && f.added == added) return &f;
  }
  return nullptr;
}

std::uint64_t FragmentSet::total_frequency() const {
  std::uint64_t total = 0;
  for (const auto& f : fragments_) total += f.frequency;
  return total;
}

std::size_t FragmentSet::total_methods() const {
  std::size_t total = 0;
  for (const auto& f : fragments_) total += f.method_count();
  return total;
}

FragmentSet dedup_fragments(const std::vector<Fragment>& fragments) {
  // Sort by content first so the merge is linear and provenance order is
  // independent of hashing.
  std::vector<const Fragment*> order;
  order.reserve(fragments.size());
  for (const auto& f : fragments) order.push_back(&f);
  std::stable_sort(order.begin(), order.end(), [](const Fragment* a, const Fragment* b) {
    if (a->removed != b->removed) return method_set_less(a->removed, b->removed);
    return method_set_less(a->added, b->added);
  });
  FragmentSet out;
  std::size_t i = 0;
  while (i < order.size()) {
    Fragment merged = *order[i];
    std::size_t j = i + 1;
    for (; j < order.size() && order[j]->same_content(merged); ++j) {
      merged.frequency += order[j]->frequency;
      merged.provenance.insert(merged.provenance.end(), order[j]->provenance.begin(),
                               order[j]->provenance.end());
    }
    out.insert(std::move(merged));
    i = j;
  }
  return out;
}

FragmentSet dedup_fragments(const FragmentSet& fragments) {
  return dedup_fragments(fragments.fragments());
}

std::string fragment_to_json(const Fragment& f) {
  ojson j;
  j["removed"] = methods_to_json(f.removed);
  j["added"] = methods_to_json(f.added);
  j["freq"] = f.frequency;
  j["prov"] = provenance_to_json(f.provenance);
  return j.dump();
}

Fragment fragment_from_json(const std::string& line) {
  const auto j = parse_object(line);
  if (!j.contains("removed") || !j.contains("added")) {
    throw DataError("fragment requires 'removed' and 'added'");
  }
  Fragment f;
  f.removed = methods_from_json(j["removed"], Side::Source, "removed");
  f.added = methods_from_json(j["added"], Side::Target, "added");
  if (f.removed.empty() || f.added.empty()) {
    throw DataError("fragment invariant violated: removed and added must both be non-empty");
  }
  if (j.contains("freq")) {
    if (!j["freq"].is_number_unsigned() || j["freq"].get<std::uint64_t>() == 0) {
      throw DataError("fragment invariant violated: 'freq' must be a positive integer");
    }
    f.frequency = j["freq"].get<std::uint64_t>();
  }
  if (j.contains("prov")) f.provenance = provenance_from_json(j["prov"]);
  return f;
}

std::vector<Fragment> read_fragments(std::istream& in) {
  std::vector<Fragment> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (skippable(line)) continue;
    try {
      out.push_back(fragment_from_json(line));
    } catch (const DataError& e) {
      throw DataError("fragment line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

void write_fragments(std::ostream& out, const std::vector<Fragment>& fragments) {
  for (const auto& f : fragments) out << fragment_to_json(f) << '\n';
}

std::string mapping_to_json(const Mapping& m) {
  ojson j;
  j["removed"] = methods_to_json(m.removed);
  j["added"] = methods_to_json(m.added);
  j["support"] = m.support;
  j["cardinality"] = std::string(to_string(m.cardinality()));
  if (m.similarity) j["similarity"] = *m.similarity;
  else j["similarity"] = nullptr;
  j["resolved"] = m.resolved;
  return j.dump();
}

Mapping mapping_from_json(const std::string& line) {
  const auto j = parse_object(line);
  Mapping m;
  m.removed = methods_from_json(j.at("removed"), Side::Source, "removed");
  m.added = methods_from_json(j.at("added"), Side::Target, "added");
  m.support = j.value("support", std::uint64_t{0});
  if (j.contains("similarity") && !j["similarity"].is_null()) {
    m.similarity = j["similarity"].get<double>();
  }
  m.resolved = j.value("resolved", true);
  return m;
}

}  // namespace migmap
