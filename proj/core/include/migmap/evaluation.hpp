#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "migmap/api_index.hpp"
#include "migmap/baselines.hpp"
#include "migmap/fragment.hpp"

namespace migmap {

/// Validated mappings of one migration rule (removed/added sets only).
struct GroundTruth {
  std::vector<Mapping> mappings;

  std::size_t size() const { return mappings.size(); }
  bool empty() const { return mappings.empty(); }
  /// Only the one-to-one mappings.
  GroundTruth one_to_one() const;
};

/// Reads the `removed;added` CSV (header line optional, '#' comments ignored),
/// each column a ','-separated list of method encodings.
GroundTruth read_ground_truth(std::istream& in, const std::string& source_name = "<truth>");
GroundTruth load_ground_truth(const std::filesystem::path& path);

struct EvalReport {
  std::string approach;
  std::size_t vx = 0;
  std::size_t ux = 0;
  std::size_t generated = 0;
  double tpr = 0.0;
  double precision = 0.0;
  double fmeasure = 0.0;
  bool empty_output = false;
};

/// Harmonic mean of precision and recall; 0 when both are 0.
double fmeasure(double precision, double recall);

/// Exact-set scoring of generated mappings against the truth. Duplicate
/// generated mappings count once. Throws DataError on an empty truth.
EvalReport score(const std::vector<Mapping>& generated, const GroundTruth& truth,
                 std::string approach = {});

enum class Setting { A, B, C };
std::string_view to_string(Setting s);
Setting parse_setting(std::string_view text);

/// Fragments for one synthetic run. Each fragment is the union of truth
/// mappings drawn at random until a budget, itself uniform between the
/// smallest truth size and `max_methods`, is filled. Settings A and C draw
/// one-to-one truths only. Pure in its arguments; throws ConfigError when the
/// pool cannot serve the setting or size.
std::vector<Fragment> synthesize_fragments(const GroundTruth& pool, Setting setting,
                                           std::size_t max_methods, std::size_t count,
                                           std::uint64_t seed);

/// The truth a setting is scored against.
GroundTruth truth_for(const GroundTruth& pool, Setting setting);

struct ExperimentConfig {
  std::vector<Setting> settings{Setting::A, Setting::B, Setting::C};
  std::vector<std::size_t> sizes{5, 10, 20};
  std::vector<std::size_t> counts{5, 11, 21, 51, 101, 201, 501, 1001, 1401};
  std::size_t runs = 30;
  std::uint64_t seed = 42;
  FcOptions fc;
  double fs_threshold = 0.5;
  double ld_floor = 0.5;

  /// Throws ConfigError on out-of-range values.
  void validate() const;
};

inline constexpr const char* kApproaches[] = {"SA", "FC", "MC", "FS"};

struct CurveRow {
  Setting setting = Setting::A;
  std::size_t max_methods = 0;
  std::size_t fragment_count = 0;
  std::string approach;
  double mean_fmeasure = 0.0;
  double stddev = 0.0;
  double mean_tpr = 0.0;
  double mean_precision = 0.0;
};

/// Documentation-similarity uses summed over the runs of one setting-C cell.
struct LdUsageRow {
  std::size_t max_methods = 0;
  std::size_t fragment_count = 0;
  std::uint64_t sa = 0;
  std::uint64_t fc = 0;
  std::uint64_t mc = 0;
};

struct ExperimentResult {
  std::vector<CurveRow> rows;
  std::vector<LdUsageRow> ld_usage;
};

using ProgressFn = std::function<void(const std::string&)>;

/// Runs every (setting, size, count) cell `runs` times for SA, FC, MC and FS.
/// Run seeds derive from (seed, setting, size, count, run index).
ExperimentResult run_experiment(const ExperimentConfig& config, const GroundTruth& pool, const ApiIndex& source,
                  const ApiIndex& target, const ProgressFn& progress = {});

}  // namespace migmap
