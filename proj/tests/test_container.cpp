#include <random>

#include "doctest.h"
#include "generators.hpp"
#include "wise/container.hpp"
#include "wise/error.hpp"

using namespace wise;

namespace {

ErrorKind kind_of(std::span<const std::uint8_t> bytes) {
  try {
    (void)container_read(bytes);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Io;
}

// Container whose index is the canonical grid for the given geometry.
Container make_container(std::mt19937_64& rng, std::uint32_t h, std::uint32_t w, std::uint8_t channels,
                         std::uint32_t patch_size, std::vector<std::uint32_t> rows,
                         std::vector<std::uint32_t> cols) {
  Container c;
  c.header.flags = static_cast<std::uint16_t>(rng() & 0xFFFF);
  c.header.width = w;
  c.header.height = h;
  c.header.channels = channels;
  c.header.patch_size = patch_size;
  c.crop.removed_rows = std::move(rows);
  c.crop.removed_cols = std::move(cols);
  const std::uint32_t ch = c.cropped_height();
  const std::uint32_t cw = c.cropped_width();
  if (ch > 0 && cw > 0) {
    for (std::uint32_t r = 0; r < ch; r += patch_size)
      for (std::uint32_t q = 0; q < cw; q += patch_size) {
        PatchRecord p;
        p.origin_row = r;
        p.origin_col = q;
        p.height = std::min(patch_size, ch - r);
        p.width = std::min(patch_size, cw - q);
        p.uncompressed_length = std::uint64_t{p.height} * p.width * channels;
        p.stage_mask = static_cast<std::uint8_t>(rng() % 8);
        Bytes payload = testgen::random_bytes(rng, rng() % 40);
        p.compressed_length = payload.size();
        c.patches.push_back(p);
        c.payloads.push_back(std::move(payload));
      }
  }
  return c;
}

std::vector<std::uint32_t> random_indices(std::mt19937_64& rng, std::uint32_t bound) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < bound; ++i)
    if (rng() % 4 == 0) out.push_back(i);
  return out;
}

}  // namespace

TEST_CASE("single 1x1x1 patch container") {
  std::mt19937_64 rng(1);
  Container c = make_container(rng, 1, 1, 1, 5000, {}, {});
  c.payloads[0] = Bytes{0xAA, 0xBB, 0xCC};
  c.patches[0].compressed_length = 3;
  const Bytes bytes = container_write(c);
  // Fixed header is 22 bytes, two empty varint lists, u32 count, one record.
  CHECK(bytes.size() == 22 + 2 + 4 + 33 + 3);
  CHECK(Bytes(bytes.end() - 3, bytes.end()) == Bytes{0xAA, 0xBB, 0xCC});
  CHECK(container_read(bytes) == c);
}

TEST_CASE("byte layout is little-endian and pinned") {
  std::mt19937_64 rng(2);
  Container c = make_container(rng, 3, 4, 1, 7, {1}, {3});
  c.header.flags = 0x1001;
  c.patches[0].stage_mask = 7;
  c.payloads[0] = Bytes{0x42};
  c.patches[0].compressed_length = 1;
  const Bytes b = container_write(c);
  const Bytes expected_prefix = {
      'W', 'I', 'S', 'E', 0x01, 0x00, 0x01, 0x10,  // magic, version, flags
      0x04, 0x00, 0x00, 0x00, 0x03, 0x00, 0x00, 0x00,  // width, height
      0x01, 0x08, 0x07, 0x00, 0x00, 0x00,  // channels, depth, patch size
      0x01, 0x01, 0x01, 0x03,  // removed rows [1], removed cols [3]
      0x01, 0x00, 0x00, 0x00,  // patch count
      0, 0, 0, 0, 0, 0, 0, 0, 0x02, 0, 0, 0, 0x03, 0, 0, 0,  // origin, 2x3 patch
      0x06, 0, 0, 0, 0, 0, 0, 0, 0x01, 0, 0, 0, 0, 0, 0, 0,  // lengths
      0x07, 0x42};
  CHECK(b == expected_prefix);
}

TEST_CASE("removed row and column lists round trip") {
  std::mt19937_64 rng(3);
  const Container c = make_container(rng, 5, 6, 3, 2, {2}, {3});
  const Container back = container_read(container_write(c));
  CHECK(back.crop.removed_rows == std::vector<std::uint32_t>{2});
  CHECK(back.crop.removed_cols == std::vector<std::uint32_t>{3});
  CHECK(back == c);
}

TEST_CASE("read inverts write for random containers") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 300; ++i) {
    const auto h = static_cast<std::uint32_t>(rng() % 60);
    const auto w = static_cast<std::uint32_t>(rng() % 60);
    const auto ps = static_cast<std::uint32_t>(1 + rng() % 25);
    const Container c = make_container(rng, h, w, rng() % 2 ? 3 : 1, ps, random_indices(rng, h),
                                       random_indices(rng, w));
    const Bytes once = container_write(c);
    REQUIRE(container_write(c) == once);
    REQUIRE(container_read(once) == c);
  }
}

TEST_CASE("reader errors are distinct") {
  std::mt19937_64 rng(5);
  const Container c = make_container(rng, 20, 20, 3, 8, {0, 19}, {5});
  const Bytes good = container_write(c);

  SUBCASE("bad magic") {
    Bytes bad = good;
    bad[0] = 'X';
    CHECK(kind_of(bad) == ErrorKind::BadMagic);
    CHECK(kind_of(Bytes{'W', 'I'}) == ErrorKind::BadMagic);
  }
  SUBCASE("future version") {
    Bytes bad = good;
    bad[4] = 2;
    CHECK(kind_of(bad) == ErrorKind::UnsupportedVersion);
  }
  SUBCASE("truncated header") {
    CHECK(kind_of(std::span(good).first(10)) == ErrorKind::Truncated);
  }
  SUBCASE("truncated payload names the patch") {
    std::size_t total = 0;
    for (const auto& p : c.payloads) total += p.size();
    REQUIRE(total > 0);
    // Cut into the middle of the last non-empty payload.
    std::size_t last = c.payloads.size();
    while (c.payloads[last - 1].empty()) --last;
    std::size_t tail = 0;
    for (std::size_t i = last; i < c.payloads.size(); ++i) tail += c.payloads[i].size();
    const std::size_t cut = good.size() - tail - 1;
    try {
      (void)container_read(std::span(good).first(cut));
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Truncated);
      CHECK(std::string(e.what()).find("patch " + std::to_string(last - 1)) != std::string::npos);
    }
  }
  SUBCASE("trailing bytes") {
    Bytes bad = good;
    bad.push_back(0);
    CHECK(kind_of(bad) == ErrorKind::Structural);
  }
}

TEST_CASE("writer rejects inconsistent indices") {
  std::mt19937_64 rng(6);
  Container c = make_container(rng, 10, 10, 1, 4, {}, {});
  SUBCASE("payload length mismatch") {
    c.patches[0].compressed_length += 1;
    CHECK_THROWS_AS((void)container_write(c), Error);
  }
  SUBCASE("missing payload") {
    c.payloads.pop_back();
    CHECK_THROWS_AS((void)container_write(c), Error);
  }
  SUBCASE("gap in the tiling") {
    c.patches[1].origin_col += 1;
    CHECK_THROWS_AS((void)container_write(c), Error);
  }
  SUBCASE("unsorted crop list") {
    c.header.height = 12;
    c.crop.removed_rows = {5, 3};
    CHECK_THROWS_AS((void)container_write(c), Error);
  }
  SUBCASE("out of range crop index") {
    c.header.height = 11;
    c.crop.removed_rows = {11};
    CHECK_THROWS_AS((void)container_write(c), Error);
  }
}
