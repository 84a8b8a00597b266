#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "skeltex/baseline.hpp"
#include "skeltex/fusion.hpp"
#include "skeltex/testing/oracles.hpp"

using namespace skeltex;
namespace oracle = skeltex::testing;
using oracle::Rng;

namespace {

std::vector<double> random_scores(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.uniform(0.01, 1.0);
  return v;
}

}  // namespace

TEST(MultiplyFuse, Identity) {
  const std::vector<ScoreVector> one{{"a", {0.1, 0.7, 0.2}}};
  EXPECT_EQ(multiply_fuse(one), one[0].scores);
}

TEST(MultiplyFuse, Arithmetic) {
  const std::vector<ScoreVector> vs{{"a", {0.6, 0.4}}, {"b", {0.5, 0.5}}};
  const auto f = multiply_fuse(vs);
  EXPECT_NEAR(f[0], 0.30, 1e-15);
  EXPECT_NEAR(f[1], 0.20, 1e-15);
}

TEST(MultiplyFuse, MatchesFoldOracle) {
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<ScoreVector> vs;
    std::vector<std::vector<double>> raw;
    for (int k = 0; k < 5; ++k) {
      raw.push_back(random_scores(rng, 8));
      vs.push_back({"m" + std::to_string(k), raw.back()});
    }
    const auto fused = multiply_fuse(vs);
    const auto expect = oracle::product_fold(raw);
    for (std::size_t i = 0; i < fused.size(); ++i) EXPECT_NEAR(fused[i], expect[i], 1e-12);
  }
}

TEST(MultiplyFuse, OrderIndependentBitForBit) {
  Rng rng(32);
  std::vector<ScoreVector> vs;
  for (int k = 0; k < 6; ++k) vs.push_back({"m" + std::to_string(k), random_scores(rng, 5)});
  const auto ref = multiply_fuse(vs);
  for (int trial = 0; trial < 20; ++trial) {
    for (std::size_t i = vs.size() - 1; i > 0; --i) std::swap(vs[i], vs[rng.bits() % (i + 1)]);
    EXPECT_EQ(multiply_fuse(vs), ref);
  }
}

TEST(MultiplyFuse, Errors) {
  EXPECT_THROW(multiply_fuse(std::span<const ScoreVector>{}), ContractError);
  const std::vector<ScoreVector> mismatch{{"a", {0.5, 0.5}}, {"b", {1.0}}};
  EXPECT_THROW(multiply_fuse(mismatch), ContractError);
  const std::vector<ScoreVector> negative{{"a", {0.5, -0.1}}};
  EXPECT_THROW(multiply_fuse(negative), ContractError);
}

TEST(Predict, ArgmaxWithLowestIndexTie) {
  const std::vector<double> a{0.2, 0.7, 0.1}, b{0.5, 0.5}, c{0.1, 0.9, 0.9};
  EXPECT_EQ(predict(a), 1u);
  EXPECT_EQ(predict(b), 0u);
  EXPECT_EQ(predict(c), 1u);
  EXPECT_THROW(predict(std::span<const double>{}), ContractError);
}

TEST(Predict, MatchesLinearScan) {
  Rng rng(33);
  for (int trial = 0; trial < 1000; ++trial) {
    auto v = random_scores(rng, 1 + rng.bits() % 10);
    if (trial % 4 == 0) v[rng.bits() % v.size()] = *std::max_element(v.begin(), v.end());
    EXPECT_EQ(predict(v), oracle::argmax_scan(v));
  }
}

TEST(Predict, InvariantToPerModelPositiveScale) {
  Rng rng(34);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<ScoreVector> vs, scaled;
    for (int k = 0; k < 3; ++k) {
      auto s = random_scores(rng, 6);
      vs.push_back({"m" + std::to_string(k), s});
      const double c = std::exp(rng.uniform(-5, 5));
      for (auto& x : s) x *= c;
      scaled.push_back({"m" + std::to_string(k), s});
    }
    EXPECT_EQ(predict(multiply_fuse(vs)), predict(multiply_fuse(scaled)));
  }
}

TEST(FuseSamples, SelectsModelsAndChecksCompleteness) {
  const std::vector<ScoreRecord> recs{{"s1", {"a", {0.9, 0.1}}}, {"s1", {"b", {0.2, 0.8}}},
                                      {"s2", {"a", {0.4, 0.6}}}, {"s2", {"b", {0.5, 0.5}}}};
  const auto all = fuse_samples(recs);
  ASSERT_EQ(all.size(), 2u);
  EXPECT_EQ(all[0].sample_id, "s1");
  EXPECT_EQ(all[0].predicted, 0u);  // 0.18 vs 0.08
  EXPECT_EQ(all[1].predicted, 1u);
  const std::vector<std::string> only_b{"b"};
  EXPECT_EQ(fuse_samples(recs, only_b)[0].predicted, 1u);

  const std::vector<std::string> with_c{"a", "c"};
  EXPECT_THROW(fuse_samples(recs, with_c), ContractError);
  auto dup = recs;
  dup.push_back({"s1", {"a", {0.5, 0.5}}});
  EXPECT_THROW(fuse_samples(dup), ContractError);

  std::map<std::string, std::size_t> truth{{"s1", 0}, {"s2", 0}};
  EXPECT_EQ(accuracy(all, truth), 0.5);
  truth.erase("s2");
  EXPECT_THROW(accuracy(all, truth), ContractError);
}

TEST(ScoreCsv, RoundTrip) {
  const std::vector<ScoreRecord> recs{{"s1", {"JJd-JS1-EM1", {0.25, 1e-300, 0.123456789012345678}}},
                                      {"s2", {"Com-EM4", {1, 0, 0.5}}}};
  const auto path = std::filesystem::temp_directory_path() / "skeltex_scores_rt.csv";
  {
    std::ofstream out(path);
    write_score_csv(out, recs);
  }
  const auto back = read_score_csv(path);
  ASSERT_EQ(back.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(back[i].sample_id, recs[i].sample_id);
    EXPECT_EQ(back[i].vector, recs[i].vector);
  }
  std::filesystem::remove(path);
}

TEST(DefaultFusionModels, TwelveWithoutJJoJS2) {
  const auto m = default_fusion_models();
  EXPECT_EQ(m.size(), 12u);
  EXPECT_EQ(std::find(m.begin(), m.end(), "JJo-JS2-EM2"), m.end());
}

TEST(Featurize, UniformImageGivesConstantVector) {
  TextureImage img(40, 50);
  std::fill(img.pixels.begin(), img.pixels.end(), std::uint8_t{128});
  const auto v = featurize(img);
  ASSERT_EQ(v.size(), 32u * 32u * 3u);
  for (double x : v) EXPECT_NEAR(x, 128.0 / 255.0, 1e-9);
}

TEST(Featurize, DeterministicAndUpsampledConstant) {
  TextureImage small(2, 2);
  std::fill(small.pixels.begin(), small.pixels.end(), std::uint8_t{77});
  Grid g(2, 2, 77.0 / 255.0);
  const Grid up = bilinear_resize(g, 256, 256);
  TextureImage big(256, 256);
  for (std::size_t i = 0; i < up.values.size(); ++i)
    for (std::size_t c = 0; c < 3; ++c) big.pixels[i * 3 + c] = quantize(up.values[i]);
  const auto v = featurize(big);
  for (double x : v) EXPECT_NEAR(x, 77.0 / 255.0, 1e-9);
  EXPECT_EQ(featurize(small), featurize(small));
}

TEST(Train, OneSamplePerClass) {
  const std::vector<LabeledVector> s{{{1, 2}, 0}, {{3, 4}, 1}, {{5, 0}, 2}};
  const auto m = train(s);
  EXPECT_EQ(m.class_count, 3u);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(m.centroids[k], s[k].features);
}

TEST(Train, DuplicatesAndMeanOracle) {
  const std::vector<LabeledVector> dup{{{1, 2}, 0}, {{1, 2}, 0}, {{0, 0}, 1}};
  EXPECT_EQ(train(dup).centroids[0], (std::vector<double>{1, 2}));

  Rng rng(35);
  std::vector<LabeledVector> s;
  std::vector<std::vector<double>> sum(4, std::vector<double>(6, 0.0));
  std::vector<int> count(4, 0);
  for (int i = 0; i < 200; ++i) {
    LabeledVector lv{std::vector<double>(6), static_cast<std::size_t>(i % 4)};
    for (auto& x : lv.features) x = rng.uniform(-1, 1);
    for (std::size_t d = 0; d < 6; ++d) sum[lv.label][d] += lv.features[d];
    ++count[lv.label];
    s.push_back(lv);
  }
  const auto m = train(s);
  for (std::size_t k = 0; k < 4; ++k)
    for (std::size_t d = 0; d < 6; ++d) EXPECT_NEAR(m.centroids[k][d], sum[k][d] / count[k], 1e-12);
}

TEST(Train, Errors) {
  EXPECT_THROW(train(std::span<const LabeledVector>{}), TrainingError);
  const std::vector<LabeledVector> gap{{{1}, 0}, {{2}, 2}};
  EXPECT_THROW(train(gap), TrainingError);
  const std::vector<LabeledVector> ragged{{{1}, 0}, {{2, 3}, 1}};
  EXPECT_THROW(train(ragged), TrainingError);
}

TEST(Score, CentroidScoresOneAndIsLargest) {
  const std::vector<LabeledVector> s{{{0, 0}, 0}, {{2, 0}, 1}, {{0, 4}, 2}};
  const auto m = train(s);
  EXPECT_NEAR(m.tau, (4.0 + 16.0 + 20.0) / 3.0, 1e-12);
  const std::vector<double> v{2, 0};
  const auto sv = score(m, v);
  EXPECT_EQ(sv.scores[1], 1.0);
  EXPECT_EQ(predict(sv.scores), 1u);
  for (double x : sv.scores) EXPECT_GT(x, 0.0);
}

TEST(Score, EquidistantGivesEqualScores) {
  const std::vector<LabeledVector> s{{{-1, 0}, 0}, {{1, 0}, 1}};
  const auto m = train(s);
  const std::vector<double> v{0, 3};
  const auto sv = score(m, v);
  EXPECT_EQ(sv.scores[0], sv.scores[1]);
}

TEST(Score, MatchesFormulaAndIgnoresBandwidthForArgmax) {
  Rng rng(36);
  std::vector<LabeledVector> s;
  for (int i = 0; i < 30; ++i) {
    LabeledVector lv{std::vector<double>(5), static_cast<std::size_t>(i % 3)};
    for (auto& x : lv.features) x = rng.uniform(0, 1);
    s.push_back(lv);
  }
  const auto m = train(s);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> v(5);
    for (auto& x : v) x = rng.uniform(0, 1);
    const auto sv = score(m, v);
    for (std::size_t k = 0; k < 3; ++k) {
      double d2 = 0;
      for (std::size_t i = 0; i < 5; ++i) d2 += (v[i] - m.centroids[k][i]) * (v[i] - m.centroids[k][i]);
      EXPECT_NEAR(sv.scores[k], std::exp(-d2 / m.tau), 1e-12);
    }
    EXPECT_EQ(predict(score(m, v, m.tau * 7.5).scores), predict(sv.scores));
  }
  const std::vector<double> wrong(4, 0.0);
  EXPECT_THROW(score(m, wrong), ContractError);
}

TEST(ModelIo, RoundTripIsExact) {
  Rng rng(37);
  std::vector<LabeledVector> s;
  for (int i = 0; i < 12; ++i) {
    LabeledVector lv{std::vector<double>(7), static_cast<std::size_t>(i % 4)};
    for (auto& x : lv.features) x = rng.uniform(-1, 1);
    s.push_back(lv);
  }
  const auto m = train(s, "LLa-LS1-EM3");
  std::stringstream buf;
  save_model(buf, m);
  EXPECT_EQ(buf.str().rfind("skeltex-centroid-model 1", 0), 0u);
  EXPECT_EQ(load_model(buf), m);

  std::istringstream bad("not a model\n");
  EXPECT_THROW(load_model(bad), Error);
}
