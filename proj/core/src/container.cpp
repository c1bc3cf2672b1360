#include "wise/container.hpp"

#include <algorithm>
#include <string>

#include "wise/bytes_io.hpp"
#include "wise/error.hpp"

namespace wise {

namespace {

// Fixed bytes per patch record: 4 x u32 + 2 x u64 + u8.
constexpr std::size_t kPatchRecordBytes = 4 * 4 + 2 * 8 + 1;

[[noreturn]] void structural(const std::string& msg) {
  throw Error(ErrorKind::Structural, msg);
}

std::string patch_label(std::size_t i, const PatchRecord& p) {
  return "patch " + std::to_string(i) + " (origin " + std::to_string(p.origin_row) + "," +
         std::to_string(p.origin_col) + ")";
}

void check_index_list(const std::vector<std::uint32_t>& list, std::uint32_t bound,
                      const char* what) {
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (list[i] >= bound)
      structural(std::string(what) + " index " + std::to_string(list[i]) + " out of bounds");
    if (i > 0 && list[i] <= list[i - 1])
      structural(std::string(what) + " indices not strictly increasing");
  }
}

void write_index_list(ByteWriter& w, const std::vector<std::uint32_t>& list) {
  w.put_varint(list.size());
  std::uint32_t prev = 0;
  for (std::size_t i = 0; i < list.size(); ++i) {
    w.put_varint(i == 0 ? list[i] : list[i] - prev);
    prev = list[i];
  }
}

std::vector<std::uint32_t> read_index_list(ByteReader& r, const char* what) {
  const std::uint64_t count = r.get_varint(what);
  // Each entry needs at least one byte.
  if (count > r.remaining())
    throw Error(ErrorKind::Truncated, std::string("stream truncated in ") + what + " list");
  std::vector<std::uint32_t> list;
  list.reserve(count);
  std::uint64_t value = 0;
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint64_t delta = r.get_varint(what);
    if (i > 0 && delta == 0) structural(std::string(what) + " indices not strictly increasing");
    value += delta;
    if (value > 0xFFFFFFFFu) structural(std::string(what) + " index overflows 32 bits");
    list.push_back(static_cast<std::uint32_t>(value));
  }
  return list;
}

}  // namespace

std::uint32_t Container::cropped_height() const {
  return header.height - static_cast<std::uint32_t>(crop.removed_rows.size());
}

std::uint32_t Container::cropped_width() const {
  return header.width - static_cast<std::uint32_t>(crop.removed_cols.size());
}

void validate(const Container& c) {
  const auto& h = c.header;
  if (h.bit_depth != 8) structural("bit depth must be 8, got " + std::to_string(h.bit_depth));
  if (h.channels != 1 && h.channels != 3)
    structural("container channel count must be 1 or 3, got " + std::to_string(h.channels));
  if (h.patch_size == 0) structural("patch size must be positive");
  if (c.crop.removed_rows.size() > h.height || c.crop.removed_cols.size() > h.width)
    structural("more removed rows/columns than the image has");
  check_index_list(c.crop.removed_rows, h.height, "removed row");
  check_index_list(c.crop.removed_cols, h.width, "removed column");
  if (c.payloads.size() != c.patches.size())
    structural("patch index has " + std::to_string(c.patches.size()) + " entries but " +
               std::to_string(c.payloads.size()) + " payloads were supplied");

  // The index must be the row-major patch_size grid over the cropped image.
  const std::uint64_t ch = c.cropped_height();
  const std::uint64_t cw = c.cropped_width();
  const std::uint64_t ps = h.patch_size;
  const std::uint64_t tiles_down = ch == 0 || cw == 0 ? 0 : (ch + ps - 1) / ps;
  const std::uint64_t tiles_across = ch == 0 || cw == 0 ? 0 : (cw + ps - 1) / ps;
  if (c.patches.size() != tiles_down * tiles_across)
    structural("patch index has " + std::to_string(c.patches.size()) + " entries, tiling needs " +
               std::to_string(tiles_down * tiles_across));

  for (std::size_t i = 0; i < c.patches.size(); ++i) {
    const PatchRecord& p = c.patches[i];
    const std::uint64_t row = (i / tiles_across) * ps;
    const std::uint64_t col = (i % tiles_across) * ps;
    const std::uint64_t ph = std::min(ps, ch - row);
    const std::uint64_t pw = std::min(ps, cw - col);
    if (p.origin_row != row || p.origin_col != col || p.height != ph || p.width != pw)
      structural(patch_label(i, p) + " does not match the tiling of the cropped image");
    if (p.uncompressed_length != ph * pw * h.channels)
      structural(patch_label(i, p) + " has inconsistent uncompressed length");
    if ((p.stage_mask & ~0x07u) != 0) structural(patch_label(i, p) + " has unknown stage bits");
    if (c.payloads[i].size() != p.compressed_length)
      structural(patch_label(i, p) + " payload length does not match its index entry");
  }
}

Bytes container_write(const Container& c) {
  validate(c);
  Bytes out;
  ByteWriter w(out);
  w.put_bytes(kMagic);
  w.put_u16(c.header.version);
  w.put_u16(c.header.flags);
  w.put_u32(c.header.width);
  w.put_u32(c.header.height);
  w.put_u8(c.header.channels);
  w.put_u8(c.header.bit_depth);
  w.put_u32(c.header.patch_size);
  write_index_list(w, c.crop.removed_rows);
  write_index_list(w, c.crop.removed_cols);
  w.put_u32(static_cast<std::uint32_t>(c.patches.size()));
  for (const PatchRecord& p : c.patches) {
    w.put_u32(p.origin_row);
    w.put_u32(p.origin_col);
    w.put_u32(p.height);
    w.put_u32(p.width);
    w.put_u64(p.uncompressed_length);
    w.put_u64(p.compressed_length);
    w.put_u8(p.stage_mask);
  }
  for (const Bytes& payload : c.payloads) w.put_bytes(payload);
  return out;
}

Container container_read(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  if (bytes.size() < kMagic.size() || !std::equal(kMagic.begin(), kMagic.end(), bytes.begin()))
    throw Error(ErrorKind::BadMagic, "not a WISE container (bad magic)");
  r.get_bytes(kMagic.size(), "magic");

  Container c;
  auto& h = c.header;
  h.version = r.get_u16("version");
  if (h.version == 0 || h.version > kFormatVersion)
    throw Error(ErrorKind::UnsupportedVersion,
                "unsupported container version " + std::to_string(h.version));
  h.flags = r.get_u16("flags");
  h.width = r.get_u32("width");
  h.height = r.get_u32("height");
  h.channels = r.get_u8("channels");
  h.bit_depth = r.get_u8("bit depth");
  h.patch_size = r.get_u32("patch size");
  c.crop.removed_rows = read_index_list(r, "removed row");
  c.crop.removed_cols = read_index_list(r, "removed column");

  const std::uint32_t count = r.get_u32("patch count");
  if (static_cast<std::uint64_t>(count) * kPatchRecordBytes > r.remaining())
    throw Error(ErrorKind::Truncated, "stream truncated in patch index");
  c.patches.resize(count);
  for (PatchRecord& p : c.patches) {
    p.origin_row = r.get_u32("patch index");
    p.origin_col = r.get_u32("patch index");
    p.height = r.get_u32("patch index");
    p.width = r.get_u32("patch index");
    p.uncompressed_length = r.get_u64("patch index");
    p.compressed_length = r.get_u64("patch index");
    p.stage_mask = r.get_u8("patch index");
  }

  c.payloads.reserve(count);
  for (std::size_t i = 0; i < c.patches.size(); ++i) {
    const PatchRecord& p = c.patches[i];
    if (p.compressed_length > r.remaining())
      throw Error(ErrorKind::Truncated, "stream truncated in payload of " + patch_label(i, p));
    auto blob = r.get_bytes(static_cast<std::size_t>(p.compressed_length), patch_label(i, p));
    c.payloads.emplace_back(blob.begin(), blob.end());
  }
  if (r.remaining() != 0)
    structural(std::to_string(r.remaining()) + " trailing bytes after the payload section");

  validate(c);
  return c;
}

}  // namespace wise
