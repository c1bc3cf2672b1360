#include <cmath>
#include <random>

#include "doctest.h"
#include "generators.hpp"
#include "oracles/oracles.hpp"
#include "wise/bitplane.hpp"
#include "wise/error.hpp"
#include "wise/metrics.hpp"
#include "wise/synthetic.hpp"
#include "wise/transform.hpp"

using namespace wise;

TEST_CASE("entropy closed forms") {
  Bytes all(256);
  for (int i = 0; i < 256; ++i) all[i] = static_cast<std::uint8_t>(i);
  CHECK(metrics::shannon_entropy(all) == 8.0);
  CHECK(metrics::shannon_entropy(Bytes(100, 7)) == 0.0);
  CHECK(metrics::shannon_entropy(Bytes{0, 0, 1, 1}) == 1.0);
  const std::vector<std::uint32_t> codes{1000, 70000, 1000, 70000};
  CHECK(metrics::shannon_entropy(codes) == 1.0);
}

TEST_CASE("empty input has no entropy") {
  try {
    (void)metrics::shannon_entropy(Bytes{});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UndefinedEntropy);
  }
  CHECK_THROWS_AS((void)metrics::shannon_entropy(std::vector<std::uint32_t>{}), Error);
}

TEST_CASE("entropy bounds and oracle agreement") {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 200; ++i) {
    const Bytes b = testgen::random_bytes(rng, 1 + rng() % 3000, 1 + rng() % 256);
    const double h = metrics::shannon_entropy(b);
    REQUIRE(h >= 0.0);
    REQUIRE(h <= 8.0);
    REQUIRE(h == doctest::Approx(oracle::entropy(b)).epsilon(1e-12));
  }
}

TEST_CASE("entropy trace golden values") {
  // Frozen from the oracle dump: raw, projection, bitplane, dictionary.
  SUBCASE("smooth gradient 64x64x3, seed 0") {
    const auto trace = metrics::entropy_trace(synthetic::smooth_gradient(64, 64, 3, 0), CompressionConfig{});
    REQUIRE(trace.size() == 4);
    CHECK(trace[0].stage == "raw");
    CHECK(trace[3].stage == "dictionary");
    CHECK(trace[0].entropy_bits == doctest::Approx(7.2337498918602003).epsilon(1e-12));
    CHECK(trace[1].entropy_bits == doctest::Approx(3.191582017666545).epsilon(1e-12));
    CHECK(trace[2].entropy_bits == doctest::Approx(4.053982943141671).epsilon(1e-12));
    CHECK(trace[3].entropy_bits == doctest::Approx(8.514966245892639).epsilon(1e-12));
  }
  SUBCASE("bundled sample matrix") {
    const auto trace = metrics::entropy_trace(synthetic::sample_matrix(), CompressionConfig{});
    REQUIRE(trace.size() == 4);
    CHECK(trace[0].entropy_bits == doctest::Approx(5.6855319729939753).epsilon(1e-12));
    CHECK(trace[1].entropy_bits == doctest::Approx(2.9683224174662115).epsilon(1e-12));
    CHECK(trace[2].entropy_bits == doctest::Approx(3.2101050721165421).epsilon(1e-12));
    CHECK(trace[3].entropy_bits == doctest::Approx(5.871241745569967).epsilon(1e-12));
    CHECK(trace[1].entropy_bits < trace[0].entropy_bits);
  }
}

TEST_CASE("entropy trace on a constant patch") {
  const auto trace = metrics::entropy_trace(Image(Shape{16, 16, 1}, Bytes(256, 99)), CompressionConfig{});
  REQUIRE(trace.size() == 4);
  CHECK(trace[0].entropy_bits == 0.0);
  CHECK(trace[1].entropy_bits < 0.05);  // one non-zero leading residual
  CHECK(trace[2].entropy_bits < 0.2);
  // Every LZW code of a run is distinct, so the code stream of a constant
  // patch has entropy log2(#codes), not zero.
  const auto planes = to_bitplanes(project(Image(Shape{16, 16, 1}, Bytes(256, 99))));
  const auto codes = lzw::encode(planes).stream.codes;
  CHECK(trace[3].entropy_bits == doctest::Approx(std::log2(static_cast<double>(codes.size()))).epsilon(0.05));
}

TEST_CASE("entropy trace follows the enabled stages") {
  CompressionConfig cfg;
  cfg.enable_bitplane = false;
  const auto img = synthetic::smooth_gradient(16, 16, 3, 3);
  const auto trace = metrics::entropy_trace(img, cfg);
  REQUIRE(trace.size() == 3);
  CHECK(trace[1].stage == "projection");
  CHECK(trace[2].stage == "dictionary");
  CHECK(metrics::entropy_trace(img, cfg)[2].entropy_bits == trace[2].entropy_bits);
}

TEST_CASE("compression ratio") {
  CHECK(metrics::compression_ratio(100, 50) == 2.0);
  CHECK(metrics::compression_ratio(77, 77) == 1.0);
  CHECK_THROWS_AS((void)metrics::compression_ratio(10, 0), Error);
}

TEST_CASE("bit-plane PSNR") {
  const Bytes a(100, 0);
  CHECK(metrics::bitplane_psnr(a, a) == metrics::kInfinitePsnr);
  Bytes half(100, 0);
  for (int i = 0; i < 50; ++i) half[i] = 1;
  CHECK(metrics::bitplane_psnr(a, half) == doctest::Approx(3.0103).epsilon(1e-4));
  Bytes one(100, 0);
  one[17] = 1;
  CHECK(metrics::bitplane_psnr(a, one) == doctest::Approx(20.0));
  CHECK(metrics::bitplane_psnr(one, a) == metrics::bitplane_psnr(a, one));
  CHECK_THROWS_AS((void)metrics::bitplane_psnr(a, Bytes(99, 0)), Error);
}

TEST_CASE("PSNR matrix") {
  SUBCASE("diagonal is infinite and the matrix symmetric") {
    const auto m = metrics::psnr_matrix(synthetic::wsi_patch(32, 32, 1), metrics::PsnrStage::Raw);
    REQUIRE(m.size() == 24);
    for (std::size_t i = 0; i < m.size(); ++i) {
      CHECK(m[i][i] == metrics::kInfinitePsnr);
      for (std::size_t j = 0; j < m.size(); ++j) CHECK(m[i][j] == m[j][i]);
    }
  }
  SUBCASE("constant patch is all infinity after projection") {
    const auto m = metrics::psnr_matrix(Image(Shape{8, 8, 3}), metrics::PsnrStage::Projected);
    for (const auto& row : m)
      for (double v : row) CHECK(v == metrics::kInfinitePsnr);
  }
  SUBCASE("gradient patch mean rises after projection") {
    const auto img = synthetic::smooth_gradient(64, 64, 3, 0);
    const double raw = metrics::mean_off_diagonal(metrics::psnr_matrix(img, metrics::PsnrStage::Raw));
    const double proj = metrics::mean_off_diagonal(metrics::psnr_matrix(img, metrics::PsnrStage::Projected));
    CHECK(raw == doctest::Approx(3.0774899381274499).epsilon(1e-12));
    // Projection zeroes entire high planes, so identical pairs appear.
    CHECK(proj == metrics::kInfinitePsnr);
    CHECK(proj > raw);
  }
}

TEST_CASE("plane unpacking") {
  const Bytes samples{0x80, 0x01, 0x00, 0x81};
  CHECK(metrics::unpack_plane(samples, 2, 0, 7) == Bytes{1, 0});
  CHECK(metrics::unpack_plane(samples, 2, 1, 0) == Bytes{1, 1});
}
