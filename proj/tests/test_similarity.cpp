#include <gtest/gtest.h>

#include <cmath>

#include "migmap/errors.hpp"
#include "migmap/similarity.hpp"
#include "test_support.hpp"

using namespace migmap;

TEST(VectorSpace, SingleDocumentIdfIsOne) {
  auto space = VectorSpace::build({"element long value"});
  EXPECT_EQ(space.document_count(), 1u);
  EXPECT_DOUBLE_EQ(space.idf("element"), 1.0);
  EXPECT_DOUBLE_EQ(space.idf("long value"), 1.0);
}

TEST(VectorSpace, UbiquitousTermIdfIsOne) {
  auto space = VectorSpace::build({"value one", "value two", "value three"});
  EXPECT_EQ(space.document_frequency("value"), 3u);
  EXPECT_DOUBLE_EQ(space.idf("value"), 1.0);
}

TEST(VectorSpace, RareTermIdf) {
  auto space = VectorSpace::build({"alpha", "beta", "gamma"});
  EXPECT_NEAR(space.idf("alpha"), std::log(4.0 / 2.0) + 1.0, 1e-15);
  EXPECT_NEAR(space.idf("alpha"), 1.6931, 1e-4);
  // unseen terms get the largest weight
  EXPECT_NEAR(space.idf("delta"), std::log(4.0) + 1.0, 1e-15);
}

TEST(VectorSpace, EmptyDescriptionsAreNotDocuments) {
  auto space = VectorSpace::build({"", "alpha", ""});
  EXPECT_EQ(space.document_count(), 1u);
  EXPECT_THROW(VectorSpace::build({"", ""}), DataError);
  EXPECT_THROW(VectorSpace::build({}), DataError);
}

TEST(VectorSpace, VectorizeWeightsAreTfIdf) {
  auto space = VectorSpace::build({"alpha beta", "beta"});
  auto v = space.vectorize(std::string_view("alpha beta"));
  ASSERT_EQ(v.size(), 3u);
  EXPECT_NEAR(v.at("alpha"), std::log(3.0 / 2.0) + 1.0, 1e-15);
  EXPECT_NEAR(v.at("beta"), 1.0, 1e-15);
  for (const auto& [_, w] : v) EXPECT_GE(w, 0.0);
}

TEST(Cosine, Examples) {
  TermVector a{{"a", 1.0}, {"b", 1.0}};
  TermVector b{{"a", 1.0}};
  TermVector c{{"c", 2.0}};
  EXPECT_DOUBLE_EQ(cosine(a, a), 1.0);
  EXPECT_DOUBLE_EQ(cosine(b, c), 0.0);
  EXPECT_NEAR(cosine(a, b), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_DOUBLE_EQ(cosine({}, a), 0.0);
  EXPECT_DOUBLE_EQ(cosine({}, {}), 0.0);
}

TEST(Csld, IdentityAndDisjoint) {
  auto space = VectorSpace::build({"get the long value", "string member"});
  EXPECT_NEAR(csld({"get the long value"}, {"get the long value"}, space), 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(csld({"long value"}, {"string member"}, space), 0.0);
  EXPECT_DOUBLE_EQ(csld({}, {}, space), 0.0);
  EXPECT_DOUBLE_EQ(csld({"long value"}, {}, space), 0.0);
}

TEST(Csld, ConcatenatesEachSide) {
  auto space = VectorSpace::build({"alpha", "beta", "gamma"});
  EXPECT_NEAR(csld({"alpha", "beta"}, {"alpha beta"}, space), 1.0, 1e-12);
}

namespace {
std::vector<std::string> all_descriptions() {
  std::vector<std::string> out;
  for (const auto& idx : {migmap::test::json_api(), migmap::test::gson_api()}) {
    for (const auto& [_, d] : idx.entries()) out.push_back(d);
  }
  return out;
}
}  // namespace

TEST(Csld, SymmetricBoundedAndScaleInvariant) {
  const auto docs = all_descriptions();
  const auto space = VectorSpace::build(docs);
  const auto scaled = space.scaled(3.75);
  for (std::size_t i = 0; i < docs.size(); ++i) {
    for (std::size_t j = 0; j < docs.size(); ++j) {
      const double s = csld({docs[i]}, {docs[j]}, space);
      EXPECT_GE(s, 0.0);
      EXPECT_LE(s, 1.0);
      EXPECT_NEAR(s, csld({docs[j]}, {docs[i]}, space), 1e-12);
      EXPECT_NEAR(s, csld({docs[i]}, {docs[j]}, scaled), 1e-12);
    }
    if (!extract_keyphrases(docs[i]).empty()) {
      EXPECT_NEAR(csld({docs[i]}, {docs[i]}, space), 1.0, 1e-12);
    }
  }
}

TEST(CatalogSimilarity, WalkthroughRanking) {
  const auto json = migmap::test::json_api();
  const auto gson = migmap::test::gson_api();
  CatalogSimilarity sim(json, gson);
  const auto get_string = MethodRef::parse("getString/1", Side::Source);
  const auto is_null = MethodRef::parse("isNull/1", Side::Source);
  const auto as_string = MethodRef::parse("getAsString/0", Side::Target);
  const auto json_null = MethodRef::parse("isJsonNull/0", Side::Target);
  const double best = *sim.score(get_string, as_string);
  for (const auto& r : {get_string, is_null}) {
    for (const auto& a : {as_string, json_null}) {
      if (r == get_string && a == as_string) continue;
      EXPECT_GT(best, *sim.score(r, a)) << r.encoding() << " " << a.encoding();
    }
  }
  // cached value is identical
  EXPECT_EQ(*sim.score(get_string, as_string), best);
}

TEST(CatalogSimilarity, UndocumentedIsNullopt) {
  ApiIndex src(migmap::test::json_library(), Side::Source);
  src.add(MethodRef(Side::Source, "opaque", std::vector<std::string>{}), "");
  src.add(MethodRef(Side::Source, "size", std::vector<std::string>{}), "Number of entries");
  ApiIndex tgt(migmap::test::gson_library(), Side::Target);
  tgt.add(MethodRef(Side::Target, "size", std::vector<std::string>{}), "Number of entries");
  CatalogSimilarity sim(src, tgt);
  EXPECT_FALSE(sim.score(MethodRef(Side::Source, "opaque", 0), MethodRef(Side::Target, "size", 0)));
  EXPECT_FALSE(sim.score(MethodRef(Side::Source, "missing", 0), MethodRef(Side::Target, "size", 0)));
  EXPECT_NEAR(*sim.score(MethodRef(Side::Source, "size", 0), MethodRef(Side::Target, "size", 0)),
              1.0, 1e-12);
}
