#include <random>

#include "doctest.h"
#include "generators.hpp"
#include "oracles/oracles.hpp"
#include "wise/error.hpp"
#include "wise/metrics.hpp"
#include "wise/synthetic.hpp"
#include "wise/transform.hpp"

using namespace wise;

namespace {

Bytes bytes_of(std::span<const std::uint8_t> s) { return Bytes(s.begin(), s.end()); }

}  // namespace

TEST_CASE("zigzag interleaves signed values") {
  CHECK(zigzag(0) == 0);
  CHECK(zigzag(-1) == 1);
  CHECK(zigzag(1) == 2);
  CHECK(zigzag(-2) == 3);
  CHECK(zigzag(127) == 254);
  CHECK(zigzag(-128) == 255);
}

TEST_CASE("zigzag is a bijection on all 256 values") {
  std::array<bool, 256> seen{};
  for (int s = -128; s <= 127; ++s) {
    const auto z = zigzag(static_cast<std::int8_t>(s));
    CHECK(z == oracle::zigzag(s));
    CHECK_FALSE(seen[z]);
    seen[z] = true;
    CHECK(unzigzag(z) == s);
  }
  for (int z = 0; z < 256; ++z) CHECK(zigzag(unzigzag(static_cast<std::uint8_t>(z))) == z);
}

TEST_CASE("projection golden vectors") {
  SUBCASE("1x3x1 column pass") {
    const auto r = project(Image(Shape{1, 3, 1}, {10, 12, 11}));
    CHECK(bytes_of(r.samples()) == Bytes{20, 4, 1});
  }
  SUBCASE("3x1x1 row pass") {
    const auto r = project(Image(Shape{3, 1, 1}, {10, 12, 11}));
    CHECK(bytes_of(r.samples()) == Bytes{20, 4, 1});
  }
  SUBCASE("1x1x3 channel pass") {
    const auto r = project(Image(Shape{1, 1, 3}, {5, 9, 2}));
    CHECK(bytes_of(r.samples()) == Bytes{10, 8, 5});
  }
  SUBCASE("2x2x1 row then column") {
    const auto r = project(Image(Shape{2, 2, 1}, {10, 20, 30, 45}));
    CHECK(bytes_of(r.samples()) == Bytes{20, 20, 40, 10});
  }
}

TEST_CASE("unproject inverts the golden vectors") {
  CHECK(bytes_of(unproject(ResidualPatch(Shape{1, 3, 1}, {20, 4, 1})).samples()) == Bytes{10, 12, 11});
  CHECK(bytes_of(unproject(ResidualPatch(Shape{1, 1, 3}, {10, 8, 5})).samples()) == Bytes{5, 9, 2});
}

TEST_CASE("constant patch leaves one leading residual") {
  for (std::uint8_t k : {0, 1, 77, 200, 255}) {
    const auto r = project(Image(Shape{5, 7, 1}, Bytes(35, k)));
    Bytes expected(35, 0);
    expected[0] = zigzag(static_cast<std::int8_t>(k));
    CHECK(bytes_of(r.samples()) == expected);
  }
}

TEST_CASE("all-zero residuals decode to an all-zero image") {
  const auto img = unproject(ResidualPatch(Shape{4, 3, 1}, Bytes(12, 0)));
  CHECK(bytes_of(img.samples()) == Bytes(12, 0));
}

TEST_CASE("projection matches the direct-formula oracle") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const std::size_t h = testgen::random_extent(rng, 20);
    const std::size_t w = testgen::random_extent(rng, 20);
    const std::size_t c = rng() % 2 ? 3 : 1;
    const Image img(Shape{h, w, c}, testgen::random_bytes(rng, h * w * c));
    const auto expected = oracle::project(bytes_of(img.samples()), static_cast<int>(h), static_cast<int>(w),
                                          static_cast<int>(c));
    REQUIRE(bytes_of(project(img).samples()) == expected);
  }
}

TEST_CASE("project/unproject round trip on random shapes") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 500; ++i) {
    const std::size_t h = testgen::random_extent(rng, 40);
    const std::size_t w = testgen::random_extent(rng, 40);
    const std::size_t c = rng() % 2 ? 3 : 1;
    const Image img(Shape{h, w, c}, testgen::random_bytes(rng, h * w * c));
    const auto back = unproject(project(img));
    REQUIRE(back == img);
  }
}

TEST_CASE("projection rejects 4-channel input") {
  const Image rgba(Shape{1, 1, 4}, {1, 2, 3, 4});
  try {
    (void)project(rgba);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnsupportedLayout);
  }
  CHECK_THROWS_AS((void)unproject(ResidualPatch(Shape{1, 1, 4}, {0, 0, 0, 0})), Error);
}

TEST_CASE("residual entropy drops on smooth gradients") {
  int lower = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Image img = synthetic::smooth_gradient(64, 64, 3, seed);
    const double raw = metrics::shannon_entropy(img.samples());
    const double res = metrics::shannon_entropy(project(img).samples());
    lower += res < raw;
  }
  CHECK(lower >= 95);
}
