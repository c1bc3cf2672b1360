#include "wise/imageio.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <iterator>
#include <map>
#include <random>
#include <string>

#include "wise/error.hpp"

namespace wise::io {

namespace {

[[noreturn]] void malformed(const std::string& msg) { throw Error(ErrorKind::MalformedHeader, msg); }

bool is_space(std::uint8_t c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f'; }

// Tokenizer for the P5/P6 header: whitespace separated, '#' comments.
class PnmHeader {
 public:
  explicit PnmHeader(std::span<const std::uint8_t> in) : in_(in) {}

  std::size_t number(const char* what) {
    skip_space_and_comments();
    const std::size_t start = pos_;
    while (pos_ < in_.size() && std::isdigit(in_[pos_])) ++pos_;
    if (start == pos_) malformed(std::string("expected ") + what + " in PNM header");
    std::size_t value = 0;
    const auto* first = reinterpret_cast<const char*>(in_.data() + start);
    const auto* last = reinterpret_cast<const char*>(in_.data() + pos_);
    if (std::from_chars(first, last, value).ec != std::errc{})
      malformed(std::string(what) + " out of range in PNM header");
    return value;
  }

  // The raster starts after exactly one whitespace byte.
  std::size_t raster_offset() {
    if (pos_ >= in_.size() || !is_space(in_[pos_])) malformed("missing whitespace before PNM raster");
    return pos_ + 1;
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < in_.size()) {
      if (is_space(in_[pos_])) {
        ++pos_;
      } else if (in_[pos_] == '#') {
        while (pos_ < in_.size() && in_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 2;
};

std::size_t parse_pam_number(const std::string& key, const std::string& value) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size()) malformed("bad PAM " + key + " value '" + value + "'");
  return v;
}

Image take_raster(std::span<const std::uint8_t> bytes, std::size_t offset, const Shape& shape) {
  if (shape.height == 0 || shape.width == 0) malformed("image dimensions must be positive");
  const std::size_t need = shape.samples();
  if (bytes.size() < offset || bytes.size() - offset < need)
    throw Error(ErrorKind::Truncated, "pixel data truncated: need " + std::to_string(need) + " bytes, have " +
                                          std::to_string(bytes.size() > offset ? bytes.size() - offset : 0));
  return Image(shape, Bytes(bytes.begin() + offset, bytes.begin() + offset + need));
}

void check_maxval(std::size_t maxval) {
  if (maxval != 255)
    throw Error(ErrorKind::UnsupportedDepth, "only 8-bit rasters (maxval 255) are supported, got maxval " +
                                                 std::to_string(maxval));
}

Image read_pnm(std::span<const std::uint8_t> bytes, std::size_t channels) {
  PnmHeader h(bytes);
  const std::size_t width = h.number("width");
  const std::size_t height = h.number("height");
  const std::size_t maxval = h.number("maxval");
  check_maxval(maxval);
  return take_raster(bytes, h.raster_offset(), Shape{height, width, channels});
}

Image read_pam(std::span<const std::uint8_t> bytes) {
  std::map<std::string, std::string> fields;
  std::size_t pos = 2;
  bool ended = false;
  while (pos < bytes.size() && !ended) {
    std::size_t eol = pos;
    while (eol < bytes.size() && bytes[eol] != '\n') ++eol;
    if (eol == bytes.size()) malformed("PAM header not terminated by ENDHDR");
    std::string line(bytes.begin() + pos, bytes.begin() + eol);
    pos = eol + 1;
    while (!line.empty() && is_space(line.back())) line.pop_back();
    std::size_t start = 0;
    while (start < line.size() && is_space(line[start])) ++start;
    line.erase(0, start);
    if (line.empty() || line[0] == '#') continue;
    if (line == "ENDHDR") {
      ended = true;
      break;
    }
    const auto split = line.find_first_of(" \t");
    if (split == std::string::npos) malformed("PAM header line without value: '" + line + "'");
    std::string key = line.substr(0, split);
    std::string value = line.substr(line.find_first_not_of(" \t", split));
    if (key == "TUPLTYPE" && fields.count(key)) value = fields[key] + " " + value;
    fields[key] = value;
  }
  if (!ended) malformed("PAM header not terminated by ENDHDR");
  for (const char* key : {"WIDTH", "HEIGHT", "DEPTH", "MAXVAL"})
    if (!fields.count(key)) malformed(std::string("PAM header missing ") + key);

  const std::size_t width = parse_pam_number("WIDTH", fields["WIDTH"]);
  const std::size_t height = parse_pam_number("HEIGHT", fields["HEIGHT"]);
  const std::size_t depth = parse_pam_number("DEPTH", fields["DEPTH"]);
  check_maxval(parse_pam_number("MAXVAL", fields["MAXVAL"]));
  if (depth != 1 && depth != 3 && depth != 4)
    throw Error(ErrorKind::UnsupportedLayout, "PAM depth must be 1, 3 or 4, got " + std::to_string(depth));
  return take_raster(bytes, pos, Shape{height, width, depth});
}

void append(Bytes& out, const std::string& s) { out.insert(out.end(), s.begin(), s.end()); }

}  // namespace

std::optional<Format> parse_format(std::string_view name) {
  if (name == "auto") return Format::Auto;
  if (name == "pgm") return Format::Pgm;
  if (name == "ppm") return Format::Ppm;
  if (name == "pam") return Format::Pam;
  if (name == "raw") return Format::Raw;
  return std::nullopt;
}

std::string_view format_name(Format f) {
  switch (f) {
    case Format::Auto: return "auto";
    case Format::Pgm: return "pgm";
    case Format::Ppm: return "ppm";
    case Format::Pam: return "pam";
    case Format::Raw: return "raw";
  }
  return "auto";
}

Format format_from_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  for (auto& ch : ext) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (ext == ".pgm") return Format::Pgm;
  if (ext == ".ppm") return Format::Ppm;
  if (ext == ".pam") return Format::Pam;
  if (ext == ".raw") return Format::Raw;
  return Format::Auto;
}

Image read_image(std::span<const std::uint8_t> bytes, Format format, const std::optional<Shape>& raw_shape) {
  if (format == Format::Raw) {
    if (!raw_shape) throw Error(ErrorKind::InvalidArgument, "raw input needs --width, --height and --channels");
    const Shape& s = *raw_shape;
    Image img = take_raster(bytes, 0, s);
    if (bytes.size() != s.samples())
      throw Error(ErrorKind::Structural, "raw input has " + std::to_string(bytes.size()) + " bytes, dimensions need " +
                                             std::to_string(s.samples()));
    return img;
  }
  if (bytes.size() < 2 || bytes[0] != 'P') malformed("not a PNM/PAM file");
  const char kind = static_cast<char>(bytes[1]);
  const Format found = kind == '5' ? Format::Pgm : kind == '6' ? Format::Ppm : kind == '7' ? Format::Pam : Format::Auto;
  if (found == Format::Auto) malformed(std::string("unsupported PNM magic P") + kind);
  if (format != Format::Auto && format != found)
    throw Error(ErrorKind::FormatMismatch, "file is " + std::string(format_name(found)) + ", expected " +
                                               std::string(format_name(format)));
  switch (found) {
    case Format::Pgm: return read_pnm(bytes, 1);
    case Format::Ppm: return read_pnm(bytes, 3);
    default: return read_pam(bytes);
  }
}

Bytes write_image(const Image& image, Format format) {
  const std::size_t c = image.channels();
  const std::string dims = std::to_string(image.width()) + " " + std::to_string(image.height());
  Bytes out;
  switch (format) {
    case Format::Pgm:
    case Format::Ppm: {
      const bool gray = format == Format::Pgm;
      if (c != (gray ? 1u : 3u))
        throw Error(ErrorKind::FormatMismatch, std::string(gray ? "PGM" : "PPM") + " cannot hold " +
                                                   std::to_string(c) + "-channel images");
      append(out, std::string(gray ? "P5\n" : "P6\n") + dims + "\n255\n");
      break;
    }
    case Format::Pam: {
      const char* tuple = c == 1 ? "GRAYSCALE" : c == 3 ? "RGB" : "RGB_ALPHA";
      append(out, "P7\nWIDTH " + std::to_string(image.width()) + "\nHEIGHT " + std::to_string(image.height()) +
                      "\nDEPTH " + std::to_string(c) + "\nMAXVAL 255\nTUPLTYPE " + tuple + "\nENDHDR\n");
      break;
    }
    case Format::Raw:
      break;
    case Format::Auto:
      throw Error(ErrorKind::InvalidArgument, "an output format must be chosen");
  }
  out.insert(out.end(), image.samples().begin(), image.samples().end());
  return out;
}

Bytes read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorKind::Io, "read failed for " + path.string());
  return data;
}

void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::random_device rd;
  auto tmp = path;
  tmp += ".tmp" + std::to_string(rd());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot create " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw Error(ErrorKind::Io, "write failed for " + path.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorKind::Io, "cannot move output into place at " + path.string());
  }
}

}  // namespace wise::io
