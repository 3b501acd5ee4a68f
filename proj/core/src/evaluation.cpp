#include "migmap/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "migmap/errors.hpp"
#include "migmap/random.hpp"
#include "migmap/substitution.hpp"

namespace migmap {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

MethodSet parse_method_list(std::string_view text, Side side) {
  MethodSet out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    const char c = i < text.size() ? text[i] : ',';
    if (c == '(' || c == '<') ++depth;
    if (c == ')' || c == '>') --depth;
    if (c == ',' && depth == 0) {
      const auto item = trim(text.substr(start, i - start));
      if (!item.empty()) out.insert(MethodRef::parse(item, side));
      start = i + 1;
    }
  }
  return out;
}

using Content = std::pair<MethodSet, MethodSet>;

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double sample_stddev(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace

GroundTruth GroundTruth::one_to_one() const {
  GroundTruth out;
  for (const auto& m : mappings) {
    if (m.cardinality() == Cardinality::OneToOne) out.mappings.push_back(m);
  }
  return out;
}

GroundTruth read_ground_truth(std::istream& in, const std::string& source_name) {
  GroundTruth truth;
  std::set<Content> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    if (lineno == 1 && t == "removed;added") continue;
    const auto semi = t.find(';');
    if (semi == std::string::npos || t.find(';', semi + 1) != std::string::npos) {
      throw DataError(source_name + ":" + std::to_string(lineno) +
                      ": expected exactly two ';'-separated columns");
    }
    Mapping m;
    try {
      m.removed = parse_method_list(std::string_view(t).substr(0, semi), Side::Source);
      m.added = parse_method_list(std::string_view(t).substr(semi + 1), Side::Target);
    } catch (const DataError& e) {
      throw DataError(source_name + ":" + std::to_string(lineno) + ": " + e.what());
    }
    if (m.removed.empty() || m.added.empty()) {
      throw DataError(source_name + ":" + std::to_string(lineno) + ": empty mapping side");
    }
    m.support = 1;
    if (seen.insert({m.removed, m.added}).second) truth.mappings.push_back(std::move(m));
  }
  return truth;
}

GroundTruth load_ground_truth(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read ground truth " + path.string());
  return read_ground_truth(in, path.string());
}

double fmeasure(double precision, double recall) {
  const double d = precision + recall;
  return d > 0.0 ? 2.0 * precision * recall / d : 0.0;
}

EvalReport score(const std::vector<Mapping>& generated, const GroundTruth& truth,
                 std::string approach) {
  if (truth.empty()) throw DataError("cannot score against an empty ground truth");
  std::set<Content> expected;
  for (const auto& m : truth.mappings) expected.insert({m.removed, m.added});
  std::set<Content> produced;
  for (const auto& m : generated) produced.insert({m.removed, m.added});

  EvalReport r;
  r.approach = std::move(approach);
  r.ux = expected.size();
  r.generated = produced.size();
  for (const auto& c : produced) r.vx += expected.count(c);
  r.tpr = static_cast<double>(r.vx) / static_cast<double>(r.ux);
  if (produced.empty()) {
    r.empty_output = true;
    r.precision = 0.0;
  } else {
    r.precision = static_cast<double>(r.vx) / static_cast<double>(r.generated);
  }
  r.fmeasure = fmeasure(r.precision, r.tpr);
  return r;
}

std::string_view to_string(Setting s) {
  switch (s) {
    case Setting::A: return "A";
    case Setting::B: return "B";
    case Setting::C: return "C";
  }
  return "?";
}

Setting parse_setting(std::string_view text) {
  if (text == "A" || text == "a") return Setting::A;
  if (text == "B" || text == "b") return Setting::B;
  if (text == "C" || text == "c") return Setting::C;
  throw ConfigError("unknown setting '" + std::string(text) + "' (expected A, B or C)");
}

GroundTruth truth_for(const GroundTruth& pool, Setting setting) {
  return setting == Setting::B ? pool : pool.one_to_one();
}

std::vector<Fragment> synthesize_fragments(const GroundTruth& pool, Setting setting,
                                           std::size_t max_methods, std::size_t count,
                                           std::uint64_t seed) {
  const GroundTruth eligible = truth_for(pool, setting);
  if (eligible.empty()) {
    throw ConfigError("truth pool has no mappings usable for setting " +
                      std::string(to_string(setting)));
  }
  if (setting == Setting::B) {
    bool wider = false;
    for (const auto& m : eligible.mappings) wider |= m.cardinality() != Cardinality::OneToOne;
    if (!wider) throw ConfigError("setting B needs one-to-many or many-to-many truths");
  }
  std::size_t smallest = SIZE_MAX;
  for (const auto& m : eligible.mappings) {
    smallest = std::min(smallest, m.removed.size() + m.added.size());
  }
  if (max_methods < smallest) {
    throw ConfigError("max methods " + std::to_string(max_methods) +
                      " is below the smallest truth mapping (" + std::to_string(smallest) + ")");
  }

  Rng rng(seed);
  std::vector<std::size_t> order(eligible.size());
  std::vector<Fragment> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t budget = rng.between(smallest, max_methods);
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    rng.shuffle(order);
    Fragment f;
    std::size_t used = 0;
    for (auto k : order) {
      const auto& m = eligible.mappings[k];
      const std::size_t size = m.removed.size() + m.added.size();
      if (used + size > budget) continue;
      f.removed.insert(m.removed.begin(), m.removed.end());
      f.added.insert(m.added.begin(), m.added.end());
      used += size;
    }
    f.frequency = 1;
    out.push_back(std::move(f));
  }
  return out;
}

void ExperimentConfig::validate() const {
  if (settings.empty()) throw ConfigError("experiment needs at least one setting");
  if (sizes.empty()) throw ConfigError("experiment needs at least one fragment size");
  if (counts.empty()) throw ConfigError("experiment needs at least one fragment count");
  if (runs < 1) throw ConfigError("runs must be at least 1");
  for (auto c : counts) {
    if (c < 5 || c > 1500) {
      throw ConfigError("fragment count " + std::to_string(c) + " outside [5, 1500]");
    }
  }
  for (auto s : sizes) {
    if (s < 2) throw ConfigError("fragment size must be at least 2");
  }
  if (fc.threshold < 1) throw ConfigError("FC threshold must be at least 1");
  if (fc.max_cardinality < 1 || fc.max_cardinality > 2) {
    throw ConfigError("FC max cardinality must be 1 or 2");
  }
  if (!(fs_threshold > 0.0 && fs_threshold <= 1.0)) {
    throw ConfigError("FS threshold must be in (0, 1]");
  }
  if (!(ld_floor >= 0.0 && ld_floor <= 1.0)) throw ConfigError("LD floor must be in [0, 1]");
}

ExperimentResult run_experiment(const ExperimentConfig& config, const GroundTruth& pool, const ApiIndex& source,
                  const ApiIndex& target, const ProgressFn& progress) {
  config.validate();
  if (pool.empty()) throw ConfigError("truth pool is empty");
  const CatalogSimilarity similarity(source, target);
  const auto fs = fs_mappings(source, target, config.fs_threshold);

  ExperimentResult result;
  for (const Setting setting : config.settings) {
    const GroundTruth truth = truth_for(pool, setting);
    const bool ld = setting == Setting::C;
    const EvalReport fs_report = score(fs, truth, "FS");
    for (const std::size_t size : config.sizes) {
      for (const std::size_t count : config.counts) {
        std::vector<double> f[4], tpr[4], precision[4];
        LdUsageRow usage{size, count, 0, 0, 0};
        for (std::size_t run = 0; run < config.runs; ++run) {
          const std::uint64_t seed = derive_seed(
              {config.seed, static_cast<std::uint64_t>(setting), size, count, run});
          const FragmentSet set = dedup_fragments(
              synthesize_fragments(pool, setting, size, count, seed));

          SubstitutionOptions options;
          options.enable_ld = ld;
          options.ld_floor = config.ld_floor;
          const auto sa = substitution(set, ld ? &similarity : nullptr, options);
          std::vector<Mapping> fc, mc;
          if (ld) {
            auto fc_run = fc_mappings_ld(set, similarity, config.fc);
            auto mc_run = mc_mappings_ld(set, similarity);
            usage.sa += sa.stats.ld_invocations;
            usage.fc += fc_run.ld_uses;
            usage.mc += mc_run.ld_uses;
            fc = std::move(fc_run.mappings);
            mc = std::move(mc_run.mappings);
          } else {
            fc = fc_mappings(set, config.fc);
            mc = mc_mappings(set);
          }
          const EvalReport reports[4] = {score(sa.mappings, truth, "SA"), score(fc, truth, "FC"),
                                         score(mc, truth, "MC"), fs_report};
          for (int a = 0; a < 4; ++a) {
            f[a].push_back(reports[a].fmeasure);
            tpr[a].push_back(reports[a].tpr);
            precision[a].push_back(reports[a].precision);
          }
        }
        for (int a = 0; a < 4; ++a) {
          CurveRow row;
          row.setting = setting;
          row.max_methods = size;
          row.fragment_count = count;
          row.approach = kApproaches[a];
          row.mean_fmeasure = mean(f[a]);
          row.stddev = sample_stddev(f[a]);
          row.mean_tpr = mean(tpr[a]);
          row.mean_precision = mean(precision[a]);
          result.rows.push_back(std::move(row));
        }
        if (ld) result.ld_usage.push_back(usage);
        if (progress) {
          progress("setting " + std::string(to_string(setting)) + " size " +
                   std::to_string(size) + " count " + std::to_string(count) + " done");
        }
      }
    }
  }
  return result;
}

}  // namespace migmap
