#include <gtest/gtest.h>

#include "migmap/config.hpp"
#include "migmap/errors.hpp"
#include "test_support.hpp"

using namespace migmap;
namespace fs = std::filesystem;

namespace {
const fs::path kData = migmap::test::data_path("");
}

TEST(Config, ShippedConfigsLoad) {
  auto cfg = load_run_config(migmap::test::data_path("migmap.toml"));
  EXPECT_EQ(cfg.libraries.size(), 2u);
  const auto& json = cfg.library("json");
  EXPECT_EQ(json.library.key(), "org.json:json");
  EXPECT_EQ(json.library.package_prefixes, std::vector<std::string>{"org.json"});
  EXPECT_TRUE(fs::exists(json.catalog));
  EXPECT_EQ(&cfg.library("com.google.code.gson:gson"), &cfg.library("gson"));
  EXPECT_THROW(cfg.library("guava"), ConfigError);
  EXPECT_EQ(cfg.workdir.filename(), "work");

  auto eval = load_run_config(migmap::test::data_path("eval.toml"));
  ASSERT_TRUE(eval.experiment_paths);
  EXPECT_EQ(eval.experiment.runs, 30u);
  EXPECT_EQ(eval.experiment.sizes, (std::vector<std::size_t>{5, 10, 20}));
  EXPECT_EQ(eval.experiment.settings.size(), 3u);
  EXPECT_EQ(eval.experiment.fc.threshold, 2u);
}

TEST(Config, DefaultsAndRelativePaths) {
  auto cfg = parse_run_config("seed = 7\n[thresholds]\nfs = 0.6\n", "/base/dir");
  EXPECT_EQ(cfg.seed, 7u);
  EXPECT_EQ(cfg.workdir, fs::path("/base/dir/work"));
  EXPECT_EQ(cfg.out, fs::path("/base/dir/out"));
  EXPECT_DOUBLE_EQ(cfg.fs_threshold, 0.6);
  EXPECT_DOUBLE_EQ(cfg.ld_floor, 0.5);
  EXPECT_FALSE(cfg.experiment_paths);
  cfg = parse_run_config("workdir = \"../w\"\n", "/base/dir");
  EXPECT_EQ(cfg.workdir, fs::path("/base/w"));
}

TEST(Config, HashTracksText) {
  auto a = parse_run_config("seed = 1\n", "/");
  auto b = parse_run_config("seed = 2\n", "/");
  EXPECT_NE(a.hash, b.hash);
  EXPECT_EQ(a.hash, parse_run_config("seed = 1\n", "/").hash);
}

TEST(Config, RejectsUnknownAndBadValues) {
  EXPECT_THROW(parse_run_config("colour = \"red\"\n", "/"), ConfigError);
  EXPECT_THROW(parse_run_config("[nope]\nx = 1\n", "/"), ConfigError);
  EXPECT_THROW(parse_run_config("[thresholds]\nfc = \"many\"\n", "/"), ConfigError);
  EXPECT_THROW(parse_run_config("seed = -3\n", "/"), ConfigError);
  EXPECT_THROW(parse_run_config("corpus = \"missing.txt\"\n", "/nonexistent"), ConfigError);
  EXPECT_THROW(parse_run_config("[library.x]\ncatalog = \"catalogs/json.catalog\"\n", kData),
               ConfigError);
  EXPECT_THROW(parse_run_config("[library.x]\ncoordinates = \"a:b\"\n", kData), ConfigError);
  EXPECT_THROW(parse_run_config("[experiment]\nruns = 3\n", kData), ConfigError);
  EXPECT_THROW(load_run_config("/nonexistent/migmap.toml"), ConfigError);
}

TEST(Config, ExperimentIsValidated) {
  const std::string head =
      "[experiment]\ntruth = \"truth/synthetic_truth.csv\"\n"
      "source_catalog = \"truth/synthetic_source.catalog\"\n"
      "target_catalog = \"truth/synthetic_target.catalog\"\n";
  auto ok = parse_run_config(head + "counts = [5, 11]\nruns = 2\nsettings = [\"A\"]\n", kData);
  EXPECT_EQ(ok.experiment.counts, (std::vector<std::size_t>{5, 11}));
  EXPECT_EQ(ok.experiment.settings, std::vector<Setting>{Setting::A});
  EXPECT_THROW(parse_run_config(head + "counts = [2000]\n", kData), ConfigError);
  EXPECT_THROW(parse_run_config(head + "settings = [\"Z\"]\n", kData), ConfigError);
}

TEST(Config, VersionedCatalogs) {
  auto cfg = parse_run_config(
      "[library.json]\ncoordinates = \"org.json:json\"\n"
      "catalog = \"catalogs/json.catalog\"\n"
      "catalogs = [\"20090211=catalogs/json.catalog\", \"20180813=catalogs/gson.catalog\"]\n",
      kData);
  const auto& lib = cfg.library("json");
  auto exact = select_catalog(lib, "20090211");
  EXPECT_EQ(exact.version, "20090211");
  EXPECT_FALSE(exact.fallback);
  auto newest = select_catalog(lib, "1.0");
  EXPECT_EQ(newest.version, "20180813");
  EXPECT_TRUE(newest.fallback);

  LibraryConfig plain;
  plain.catalog = "/x.catalog";
  EXPECT_FALSE(select_catalog(plain, "").fallback);
  EXPECT_TRUE(select_catalog(plain, "2.0").fallback);
}

TEST(Config, VersionOrdering) {
  EXPECT_TRUE(version_less("2.8.5", "2.10.0"));
  EXPECT_TRUE(version_less("2.8", "2.8.1"));
  EXPECT_FALSE(version_less("2.10", "2.9"));
  EXPECT_TRUE(version_less("1.0-alpha", "1.0-beta"));
  EXPECT_FALSE(version_less("3", "3"));
}
