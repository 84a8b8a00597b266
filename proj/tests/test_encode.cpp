#include <gtest/gtest.h>

#include <cmath>

#include "skeltex/encode.hpp"
#include "skeltex/image.hpp"
#include "skeltex/image_set.hpp"
#include "skeltex/preprocess.hpp"
#include "skeltex/synthetic.hpp"
#include "skeltex/testing/oracles.hpp"

using namespace skeltex;
namespace oracle = skeltex::testing;
using oracle::Rng;

namespace {

FeatureMatrix scalar_matrix(const std::vector<std::vector<double>>& rows, Family f = Family::kJJd) {
  FeatureMatrix m;
  m.family = f;
  m.rows = rows.size();
  m.cols = rows.front().size();
  for (const auto& r : rows) m.values.insert(m.values.end(), r.begin(), r.end());
  m.row_subjects.assign(m.rows, RowSubject::kMain);
  return m;
}

FeatureMatrix vector_matrix(std::size_t rows, std::size_t cols, auto&& fn) {
  FeatureMatrix m;
  m.family = Family::kJJv;
  m.rows = rows;
  m.cols = cols;
  m.values.resize(rows * cols * 3);
  m.row_subjects.assign(rows, RowSubject::kMain);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t t = 0; t < cols; ++t) {
      const Vec3 v = fn(r, t);
      for (std::size_t k = 0; k < 3; ++k) m.at(r, t, k) = v[k];
    }
  return m;
}

bool channel_uniform(const TextureImage& img, std::size_t c) {
  for (std::size_t h = 0; h < img.height; ++h)
    for (std::size_t w = 0; w < img.width; ++w)
      if (img.at(h, w, c) != img.at(0, 0, c)) return false;
  return true;
}

constexpr ImageSize kSmall{16, 16};

}  // namespace

TEST(NormalizeRows, MinMax) {
  const Grid g = normalize_rows(scalar_matrix({{2, 4, 6}, {5, 5, 5}}));
  EXPECT_EQ(g(0, 0), 0.0);
  EXPECT_EQ(g(0, 1), 0.5);
  EXPECT_EQ(g(0, 2), 1.0);
  for (std::size_t t = 0; t < 3; ++t) EXPECT_EQ(g(1, t), 0.0);
}

TEST(NormalizeRows, RandomRowsSpanUnitInterval) {
  Rng rng(8);
  std::vector<std::vector<double>> rows(50, std::vector<double>(30));
  for (auto& r : rows)
    for (auto& x : r) x = rng.uniform(-100, 100);
  const Grid g = normalize_rows(scalar_matrix(rows));
  for (std::size_t r = 0; r < g.rows; ++r) {
    double lo = 1, hi = 0;
    for (std::size_t t = 0; t < g.cols; ++t) {
      lo = std::min(lo, g(r, t));
      hi = std::max(hi, g(r, t));
    }
    EXPECT_EQ(lo, 0.0);
    EXPECT_EQ(hi, 1.0);
  }
}

TEST(NormalizeRows, SubjectFilterAndComponent) {
  FeatureMatrix m = scalar_matrix({{0, 1}, {0, 2}, {3, 1}});
  m.row_subjects = {RowSubject::kMain, RowSubject::kCross, RowSubject::kMain};
  const Grid g = normalize_rows(m, 0, RowSubject::kMain);
  ASSERT_EQ(g.rows, 2u);
  EXPECT_EQ(g(1, 0), 1.0);
  EXPECT_EQ(g(1, 1), 0.0);
  EXPECT_THROW(normalize_rows(m, 1), ContractError);
}

TEST(BilinearResize, IdentityAtSameSize) {
  Rng rng(9);
  Grid src(7, 5);
  for (auto& x : src.values) x = rng.uniform(0, 1);
  const Grid out = bilinear_resize(src, 7, 5);
  for (std::size_t i = 0; i < src.values.size(); ++i) EXPECT_NEAR(out.values[i], src.values[i], 1e-12);
}

TEST(BilinearResize, SingleCellIsConstant) {
  Grid src(1, 1, 0.37);
  const Grid out = bilinear_resize(src, 9, 4);
  for (double x : out.values) EXPECT_EQ(x, 0.37);
}

TEST(BilinearResize, TwoByTwoCenter) {
  Grid src(2, 2);
  src(0, 1) = 1.0;
  src(1, 0) = 1.0;
  const Grid out = bilinear_resize(src, 3, 3);
  EXPECT_NEAR(out(1, 1), 0.5, 1e-15);
  EXPECT_EQ(out(0, 0), 0.0);
  EXPECT_EQ(out(0, 2), 1.0);
  EXPECT_EQ(out(2, 0), 1.0);
  EXPECT_EQ(out(2, 2), 0.0);
  EXPECT_NEAR(out(0, 1), 0.5, 1e-15);
}

TEST(BilinearResize, SingleColumnReplicates) {
  Grid src(3, 1);
  src(0, 0) = 0.1;
  src(1, 0) = 0.5;
  src(2, 0) = 0.9;
  const Grid out = bilinear_resize(src, 5, 8);
  for (std::size_t w = 0; w < 8; ++w) {
    EXPECT_NEAR(out(0, w), 0.1, 1e-15);
    EXPECT_NEAR(out(1, w), 0.3, 1e-15);
    EXPECT_NEAR(out(4, w), 0.9, 1e-15);
  }
}

TEST(BilinearResize, RejectsEmpty) {
  EXPECT_THROW(bilinear_resize(Grid{}, 4, 4), ContractError);
  EXPECT_THROW(bilinear_resize(Grid(2, 2), 0, 4), ContractError);
}

TEST(JetColorbar, Endpoints) {
  using A = std::array<double, 3>;
  EXPECT_EQ(jet_colorbar(0.0), (A{0, 0, 0.5}));
  EXPECT_EQ(jet_colorbar(0.5), (A{0.5, 1, 0.5}));
  EXPECT_EQ(jet_colorbar(1.0), (A{0.5, 0, 0}));
  EXPECT_EQ(jet_colorbar(0.25), (A{0, 0.5, 1}));
  EXPECT_EQ(jet_colorbar(0.75), (A{1, 0.5, 0}));
}

TEST(JetColorbar, ContinuousAndInRange) {
  double prev[3] = {0, 0, 0.5};
  for (int i = 1; i <= 10000; ++i) {
    const auto c = jet_colorbar(i / 10000.0);
    for (int k = 0; k < 3; ++k) {
      EXPECT_GE(c[k], 0.0);
      EXPECT_LE(c[k], 1.0);
      EXPECT_LE(std::abs(c[k] - prev[k]), 4.0 / 10000.0 + 1e-12);
      prev[k] = c[k];
    }
  }
}

TEST(Quantize, RoundHalfUp) {
  EXPECT_EQ(quantize(0.0), 0);
  EXPECT_EQ(quantize(1.0), 255);
  EXPECT_EQ(quantize(0.5), 128);  // 127.5 rounds up
  EXPECT_EQ(quantize(-3.0), 0);
  EXPECT_EQ(quantize(7.0), 255);
}

TEST(EncodeEM1, ConstantMatrixIsLowJetColour) {
  const auto img = encode_em1(scalar_matrix({{3, 3, 3}, {1, 1, 1}}), kSmall);
  for (std::size_t h = 0; h < img.height; ++h)
    for (std::size_t w = 0; w < img.width; ++w) {
      EXPECT_EQ(img.at(h, w, 0), 0);
      EXPECT_EQ(img.at(h, w, 1), 0);
      EXPECT_EQ(img.at(h, w, 2), 128);
    }
}

TEST(EncodeEM1, RampSweepsJetLeftToRight) {
  std::vector<double> ramp(64);
  for (std::size_t t = 0; t < ramp.size(); ++t) ramp[t] = static_cast<double>(t);
  const auto img = encode_em1(scalar_matrix({ramp}), {4, 64});
  EXPECT_EQ(img.at(0, 0, 2), 128);
  EXPECT_EQ(img.at(0, 63, 0), 128);
  // Position along the jet sweep, recovered from the dominant channel ordering, increases.
  auto phase = [&](std::size_t w) {
    const int r = img.at(0, w, 0), g = img.at(0, w, 1), b = img.at(0, w, 2);
    if (g == 0 && r == 0) return b;                // 0..0.125: b rises 128..255
    if (r == 0) return 255 + g;                    // g rises
    if (g == 255) return 510 + r;                  // r rises, b falls
    if (b == 0 && r == 255) return 765 + 255 - g;  // g falls
    return 1020 + 255 - r;                         // r falls
  };
  for (std::size_t w = 1; w < 64; ++w) EXPECT_GE(phase(w), phase(w - 1)) << w;
}

TEST(EncodeEM1, RejectsVectorFeature) {
  const auto m = vector_matrix(2, 2, [](auto, auto) { return Vec3{}; });
  EXPECT_THROW(encode_em1(m, kSmall), ContractError);
}

TEST(EncodeEM2, OnlyXVariesOnlyRedVaries) {
  const auto m = vector_matrix(5, 9, [](std::size_t r, std::size_t t) { return Vec3{double(r * t), 0, 0}; });
  const auto img = encode_em2(m, kSmall);
  EXPECT_FALSE(channel_uniform(img, 0));
  EXPECT_TRUE(channel_uniform(img, 1));
  EXPECT_TRUE(channel_uniform(img, 2));
}

TEST(EncodeEM2, StaticPoseIsBlack) {
  const std::vector<Pose> still(4, rest_pose());
  const auto m =
      extract_features(still, still, build_selection_plan(Family::kJJv, Strategy::kJS1, SelectionTables::defaults()));
  const auto img = encode_em2(m, kSmall);
  for (auto p : img.pixels) EXPECT_EQ(p, 0);
}

TEST(EncodeEM2, ChannelsAreIndependent) {
  auto base = [](std::size_t r, std::size_t t) { return Vec3{std::sin(0.3 * t + r), double(t % 3), 0.1 * r * t}; };
  const auto a = encode_em2(vector_matrix(6, 10, base), kSmall);
  const auto b = encode_em2(vector_matrix(6, 10,
                                          [&](std::size_t r, std::size_t t) {
                                            Vec3 v = base(r, t);
                                            v.y = 100.0 * std::cos(double(r + t));
                                            return v;
                                          }),
                            kSmall);
  for (std::size_t i = 0; i < a.pixels.size(); i += 3) {
    EXPECT_EQ(a.pixels[i], b.pixels[i]);
    EXPECT_EQ(a.pixels[i + 2], b.pixels[i + 2]);
  }
}

TEST(EncodeEM3, ShadowGivesComplementaryChannels) {
  // Same size as the source so no resampling mixes values; no value sits on a rounding tie.
  const auto m = scalar_matrix({{0, 1, 3, 4}, {3, 1, 2, 0}, {7, 7, 7, 7}});
  const auto img = encode_em3(m, m, {3, 4});
  for (std::size_t h = 0; h < 3; ++h)
    for (std::size_t w = 0; w < 4; ++w) EXPECT_EQ(img.at(h, w, 1), 255 - img.at(h, w, 0)) << h << "," << w;
}

TEST(EncodeEM3, BlueChannelProductAndClamp) {
  // Single pixel images: main normalized 0.5 -> R 0.5; aux normalized 0.5 -> G 0.5; B = 4*.25 = 1.
  const auto main = scalar_matrix({{0, 1, 2}});
  const auto aux = scalar_matrix({{0, 1, 2}});
  const auto img = encode_em3(main, aux, {1, 3});
  EXPECT_EQ(img.at(0, 1, 0), 128);
  EXPECT_EQ(img.at(0, 1, 1), 128);
  EXPECT_EQ(img.at(0, 1, 2), 255);
  // R = 1 (main at its minimum), G = 1 (aux at its maximum): raw 4 clamps to 1.
  const auto img2 = encode_em3(scalar_matrix({{0, 1}}), scalar_matrix({{0, 1}}), {1, 2});
  EXPECT_EQ(img2.at(0, 0, 0), 255);
  EXPECT_EQ(img2.at(0, 0, 1), 0);
  EXPECT_EQ(img2.at(0, 0, 2), 0);
  const auto img3 = encode_em3(scalar_matrix({{0, 1}}), scalar_matrix({{1, 0}}), {1, 2});
  EXPECT_EQ(img3.at(0, 0, 0), 255);
  EXPECT_EQ(img3.at(0, 0, 1), 255);
  EXPECT_EQ(img3.at(0, 0, 2), 255);
}

TEST(EncodeEM3, ShapeMismatchIsContractError) {
  EXPECT_THROW(encode_em3(scalar_matrix({{0, 1}}), scalar_matrix({{0, 1}, {1, 2}}), kSmall), ContractError);
  EXPECT_THROW(encode_em3(scalar_matrix({{0, 1}}), scalar_matrix({{0, 1, 2}}), kSmall), ContractError);
}

TEST(EncodeEM4, ConstantInputsAreBlack) {
  const auto c = scalar_matrix({{1, 1}, {2, 2}});
  const auto img = encode_em4_composite(c, c, c, kSmall);
  for (auto p : img.pixels) EXPECT_EQ(p, 0);
}

TEST(EncodeEM4, OnlyDistanceVaryingUsesRed) {
  const auto c = scalar_matrix({{1, 1, 1}});
  const auto v = scalar_matrix({{0, 1, 5}, {2, 0, 1}});
  const auto img = encode_em4_composite(v, c, c, kSmall);
  EXPECT_FALSE(channel_uniform(img, 0));
  for (std::size_t i = 0; i < img.pixels.size(); i += 3) {
    EXPECT_EQ(img.pixels[i + 1], 0);
    EXPECT_EQ(img.pixels[i + 2], 0);
  }
}

TEST(Png, RoundTrip) {
  Rng rng(12);
  TextureImage img(7, 11);
  for (auto& p : img.pixels) p = static_cast<std::uint8_t>(rng.bits() & 0xff);
  const auto bytes = encode_png(img);
  ASSERT_GT(bytes.size(), 8u);
  EXPECT_EQ(bytes[1], 'P');
  EXPECT_EQ(decode_png(bytes), img);
  EXPECT_EQ(encode_png(img), bytes);
  const std::vector<std::uint8_t> junk{1, 2, 3};
  EXPECT_THROW(decode_png(junk), IoError);
}

TEST(ImageSet, ThirteenLabelsAt256) {
  const auto labels = all_image_labels();
  ASSERT_EQ(labels.size(), 13u);
  const auto ns = preprocess(synthesize_sequence(2, 1, 20));
  const auto set = generate_image_set(ns, SelectionTables::defaults());
  ASSERT_EQ(set.size(), 13u);
  for (std::size_t i = 0; i < set.size(); ++i) {
    EXPECT_EQ(set[i].label, labels[i]);
    EXPECT_EQ(set[i].image.height, 256u);
    EXPECT_EQ(set[i].image.width, 256u);
  }
}

TEST(ImageSet, SingleFrameSequence) {
  auto seq = synthesize_sequence(4, 2, 2);
  seq.frames.pop_back();
  const auto set = generate_image_set(preprocess(seq), SelectionTables::defaults(), {32, 32});
  EXPECT_EQ(set.size(), 13u);
}

TEST(ImageSet, EncodingIsPure) {
  const auto ns = preprocess(synthesize_sequence(1, 5, 16, {.with_partner = true}));
  const ImageSetEncoder enc(SelectionTables::defaults(), {64, 64});
  for (const auto& label : all_image_labels()) EXPECT_EQ(enc.encode(ns, label), enc.encode(ns, label)) << label;
}

TEST(ImageSet, UnknownLabelRejected) {
  EXPECT_THROW(image_spec("JJd-JS4-EM1"), ConfigError);
  EXPECT_EQ(image_filename("seq", "JJd-JS1-EM1"), "seq__JJd-JS1-EM1.png");
}
