#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "wise/image.hpp"

namespace wise::lzw {

inline constexpr std::uint32_t kClear = 256;
inline constexpr std::uint32_t kEnd = 257;
inline constexpr std::uint32_t kFirstDataCode = 258;
inline constexpr unsigned kMinWidth = 9;
inline constexpr unsigned kMaxWidthLimit = 20;
inline constexpr unsigned kDefaultMaxWidth = 16;

/// Width used for a code when the largest code that may appear is `largest`:
/// the bits needed for it, clamped to [9, max_width].
unsigned code_width(std::uint32_t largest, unsigned max_width) noexcept;

struct CodeStream {
  std::vector<std::uint32_t> codes;
  unsigned initial_width = kMinWidth;
  unsigned max_width = kDefaultMaxWidth;
};

struct Encoded {
  CodeStream stream;
  Bytes packed;
};

/// Called after every dictionary change with the new next-code value and the
/// width now in effect. Test instrumentation only.
using DictionaryObserver = std::function<void(std::uint32_t next_code, unsigned width)>;

/// Greedy longest-match LZW.
///
/// Codes 0-255 are literals, 256 clears the dictionary, 257 ends the stream;
/// new strings are numbered from 258. When the dictionary holds
/// 2^max_width codes the encoder emits CLEAR instead of adding an entry and
/// starts over with literals. Codes are packed MSB-first. A data code is
/// written with code_width(next_code - 1); CLEAR and END use the width the
/// decoder will expect after it has registered the entry for the preceding
/// code. The output always ends with END and zero pad bits.
///
/// Throws Error(InvalidArgument) if max_width is outside [9, 20].
Encoded encode(std::span<const std::uint8_t> data, unsigned max_width = kDefaultMaxWidth,
               const DictionaryObserver& observer = {});

/// Inverse of encode() for the same max_width. Errors: CorruptStream for an
/// undefined code or data after END, Truncated when END is missing.
Bytes decode(std::span<const std::uint8_t> packed, unsigned max_width = kDefaultMaxWidth);

/// Unpacks the code sequence without reconstructing data.
std::vector<std::uint32_t> unpack_codes(std::span<const std::uint8_t> packed,
                                        unsigned max_width = kDefaultMaxWidth);

/// MSB-first packing of an explicit code sequence, following the same width
/// schedule as encode(). Used to build streams for decoder tests.
Bytes pack_codes(std::span<const std::uint32_t> codes, unsigned max_width = kDefaultMaxWidth);

}  // namespace wise::lzw
