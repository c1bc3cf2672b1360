#include "wise/lzw.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "wise/error.hpp"

namespace wise::lzw {

namespace {

void check_max_width(unsigned max_width) {
  if (max_width < kMinWidth || max_width > kMaxWidthLimit)
    throw Error(ErrorKind::InvalidArgument,
                "LZW max code width must be in [9, 20], got " + std::to_string(max_width));
}

// The decoder's view of the dictionary size, which fixes the width of every
// code. Both the encoder's packer and the decoder's unpacker step it.
class WidthSchedule {
 public:
  explicit WidthSchedule(unsigned max_width)
      : max_width_(max_width), capacity_(std::uint32_t{1} << max_width) {}

  // A decoder holding a previous string registers one entry per data code,
  // so the largest code that can appear next is next_ (self-reference).
  unsigned width() const noexcept {
    return code_width(next_ - 1 + (has_prev_ ? 1 : 0), max_width_);
  }

  std::uint32_t next_code() const noexcept { return next_; }
  bool has_prev() const noexcept { return has_prev_; }
  bool full() const noexcept { return next_ >= capacity_; }

  // Returns true if the code registered a dictionary entry.
  bool advance(std::uint32_t code) noexcept {
    if (code == kClear) {
      next_ = kFirstDataCode;
      has_prev_ = false;
      return false;
    }
    if (code == kEnd) return false;
    const bool added = has_prev_ && !full();
    if (added) ++next_;
    has_prev_ = true;
    return added;
  }

 private:
  unsigned max_width_;
  std::uint32_t capacity_;
  std::uint32_t next_ = kFirstDataCode;
  bool has_prev_ = false;
};

class BitWriter {
 public:
  explicit BitWriter(Bytes& out) : out_(out) {}

  void put(std::uint32_t code, unsigned width) {
    acc_ = (acc_ << width) | code;
    bits_ += width;
    while (bits_ >= 8) {
      bits_ -= 8;
      out_.push_back(static_cast<std::uint8_t>(acc_ >> bits_));
    }
  }

  void flush() {
    if (bits_ > 0) out_.push_back(static_cast<std::uint8_t>(acc_ << (8 - bits_)));
    bits_ = 0;
  }

 private:
  Bytes& out_;
  std::uint64_t acc_ = 0;
  unsigned bits_ = 0;
};

class BitReader {
 public:
  explicit BitReader(std::span<const std::uint8_t> in) : in_(in) {}

  bool get(unsigned width, std::uint32_t& code) {
    while (bits_ < width) {
      if (pos_ == in_.size()) return false;
      acc_ = (acc_ << 8) | in_[pos_++];
      bits_ += 8;
    }
    bits_ -= width;
    code = static_cast<std::uint32_t>((acc_ >> bits_) & ((std::uint64_t{1} << width) - 1));
    return true;
  }

  // After END only zero pad bits inside the current byte may remain.
  bool clean_tail() const noexcept {
    return pos_ == in_.size() && (acc_ & ((std::uint64_t{1} << bits_) - 1)) == 0;
  }

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
  std::uint64_t acc_ = 0;
  unsigned bits_ = 0;
};

// Open-addressing map from (prefix code, next byte) to code.
class ChildTable {
 public:
  explicit ChildTable(std::size_t min_entries) {
    std::size_t size = 1024;
    while (size < min_entries * 2) size <<= 1;
    slots_.resize(size);
    mask_ = size - 1;
    clear();
  }

  void clear() { std::fill(slots_.begin(), slots_.end(), Slot{kEmpty, 0}); }

  std::uint32_t find(std::uint32_t key) const noexcept {
    for (std::size_t i = hash(key);; i = (i + 1) & mask_) {
      if (slots_[i].key == key) return slots_[i].code;
      if (slots_[i].key == kEmpty) return kNone;
    }
  }

  void insert(std::uint32_t key, std::uint32_t code) noexcept {
    std::size_t i = hash(key);
    while (slots_[i].key != kEmpty) i = (i + 1) & mask_;
    slots_[i] = Slot{key, code};
  }

  static constexpr std::uint32_t kNone = 0xFFFFFFFFu;

 private:
  static constexpr std::uint32_t kEmpty = 0xFFFFFFFFu;
  struct Slot {
    std::uint32_t key;
    std::uint32_t code;
  };

  std::size_t hash(std::uint32_t key) const noexcept {
    return (static_cast<std::size_t>(key) * 0x9E3779B1u >> 7) & mask_;
  }

  std::vector<Slot> slots_;
  std::size_t mask_ = 0;
};

}  // namespace

unsigned code_width(std::uint32_t largest, unsigned max_width) noexcept {
  const auto bits = static_cast<unsigned>(std::bit_width(largest));
  return std::clamp(bits, kMinWidth, max_width);
}

Encoded encode(std::span<const std::uint8_t> data, unsigned max_width,
               const DictionaryObserver& observer) {
  check_max_width(max_width);
  Encoded result;
  result.stream.initial_width = kMinWidth;
  result.stream.max_width = max_width;
  auto& codes = result.stream.codes;
  BitWriter writer(result.packed);
  WidthSchedule schedule(max_width);

  auto emit = [&](std::uint32_t code) {
    writer.put(code, schedule.width());
    codes.push_back(code);
    schedule.advance(code);
  };

  const std::uint32_t capacity = std::uint32_t{1} << max_width;
  const std::size_t max_entries = std::min<std::size_t>(capacity, data.size() + kFirstDataCode);
  ChildTable table(max_entries);
  std::uint32_t next = kFirstDataCode;

  if (!data.empty()) {
    std::uint32_t prefix = data[0];
    for (std::size_t i = 1; i < data.size(); ++i) {
      const std::uint8_t byte = data[i];
      const std::uint32_t key = (prefix << 8) | byte;
      const std::uint32_t child = table.find(key);
      if (child != ChildTable::kNone) {
        prefix = child;
        continue;
      }
      emit(prefix);
      if (next < capacity) {
        table.insert(key, next++);
        if (observer) observer(next, code_width(next - 1, max_width));
      } else {
        emit(kClear);
        table.clear();
        next = kFirstDataCode;
        if (observer) observer(next, kMinWidth);
      }
      prefix = byte;
    }
    emit(prefix);
  }
  emit(kEnd);
  writer.flush();
  return result;
}

std::vector<std::uint32_t> unpack_codes(std::span<const std::uint8_t> packed, unsigned max_width) {
  check_max_width(max_width);
  std::vector<std::uint32_t> codes;
  BitReader reader(packed);
  WidthSchedule schedule(max_width);
  for (;;) {
    std::uint32_t code = 0;
    if (!reader.get(schedule.width(), code))
      throw Error(ErrorKind::Truncated, "LZW stream ended before the END code");
    codes.push_back(code);
    if (code == kEnd) break;
    schedule.advance(code);
  }
  return codes;
}

Bytes pack_codes(std::span<const std::uint32_t> codes, unsigned max_width) {
  check_max_width(max_width);
  Bytes out;
  BitWriter writer(out);
  WidthSchedule schedule(max_width);
  for (std::uint32_t code : codes) {
    const unsigned width = schedule.width();
    if (code >> width)
      throw Error(ErrorKind::InvalidArgument,
                  "code " + std::to_string(code) + " does not fit in " + std::to_string(width) + " bits");
    writer.put(code, width);
    schedule.advance(code);
  }
  writer.flush();
  return out;
}

Bytes decode(std::span<const std::uint8_t> packed, unsigned max_width) {
  check_max_width(max_width);
  const std::uint32_t capacity = std::uint32_t{1} << max_width;

  // Every entry costs at least one 9-bit code, which bounds the table.
  const std::size_t table_size =
      std::min<std::size_t>(capacity, kFirstDataCode + packed.size() * 8 / kMinWidth + 1);

  // Entry c is prefix[c] followed by suffix[c]; literals have no prefix.
  std::vector<std::uint32_t> prefix(table_size);
  std::vector<std::uint8_t> suffix(table_size);
  std::vector<std::uint8_t> first(table_size);
  std::vector<std::uint32_t> length(table_size);
  for (std::uint32_t c = 0; c < 256; ++c) {
    suffix[c] = first[c] = static_cast<std::uint8_t>(c);
    length[c] = 1;
  }

  Bytes out;
  out.reserve(packed.size() * 3);
  BitReader reader(packed);
  WidthSchedule schedule(max_width);
  std::uint32_t prev = 0;

  auto write_string = [&](std::uint32_t code) {
    const std::size_t start = out.size();
    out.resize(start + length[code]);
    for (std::size_t pos = out.size(); pos-- > start;) {
      out[pos] = suffix[code];
      code = prefix[code];
    }
  };

  for (std::size_t index = 0;; ++index) {
    std::uint32_t code = 0;
    if (!reader.get(schedule.width(), code))
      throw Error(ErrorKind::Truncated, "LZW stream ended before the END code");
    if (code == kEnd) break;
    if (code == kClear) {
      schedule.advance(code);
      continue;
    }

    const std::uint32_t next = schedule.next_code();
    const bool self_reference = schedule.has_prev() && code == next && !schedule.full();
    const bool defined = code < 256 || (code >= kFirstDataCode && code < next);
    if (!defined && !self_reference)
      throw Error(ErrorKind::CorruptStream, "undefined LZW code " + std::to_string(code) +
                                                " at position " + std::to_string(index));

    if (schedule.has_prev() && !schedule.full()) {
      prefix[next] = prev;
      first[next] = first[prev];
      suffix[next] = self_reference ? first[prev] : first[code];
      length[next] = length[prev] + 1;
    }
    write_string(code);
    schedule.advance(code);
    prev = code;
  }

  if (!reader.clean_tail()) throw Error(ErrorKind::CorruptStream, "data after LZW END code");
  return out;
}

}  // namespace wise::lzw
