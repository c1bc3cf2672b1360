// wise: command-line front end for the WISE codec.
//
//   wise compress   in.ppm out.wise [--patch-size N] [--no-projection] ...
//   wise decompress in.wise out.ppm [--format ppm]
//   wise analyze    in.ppm [--psnr] [-o report.json]
//   wise bench      --synthetic 10 --seed 7 --ablation [--csv]
//
// Machine output (summary line, JSON, tables) goes to stdout; everything else
// goes to stderr.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wise/container.hpp"
#include "wise/error.hpp"
#include "wise/imageio.hpp"
#include "wise/metrics.hpp"
#include "wise/pipeline.hpp"
#include "wise/synthetic.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct RawOptions {
  bool raw = false;
  std::size_t width = 0, height = 0, channels = 0;
};

struct StageOptions {
  std::uint32_t patch_size = wise::CompressionConfig{}.patch_size;
  bool no_projection = false;
  bool no_bitplane = false;
  unsigned lzw_max_width = wise::lzw::kDefaultMaxWidth;
  unsigned threads = 0;

  wise::CompressionConfig config() const {
    wise::CompressionConfig cfg;
    cfg.patch_size = patch_size;
    cfg.enable_projection = !no_projection;
    cfg.enable_bitplane = !no_bitplane;
    cfg.lzw_max_width = lzw_max_width;
    cfg.threads = threads;
    return cfg;
  }
};

void add_raw_options(CLI::App* cmd, RawOptions& o) {
  cmd->add_flag("--raw", o.raw, "Input is headerless interleaved bytes");
  cmd->add_option("--width", o.width, "Raw image width");
  cmd->add_option("--height", o.height, "Raw image height");
  cmd->add_option("--channels", o.channels, "Raw image channels (1, 3 or 4)");
}

void add_stage_options(CLI::App* cmd, StageOptions& o) {
  cmd->add_option("--patch-size", o.patch_size, "Tile edge length")->check(CLI::PositiveNumber);
  cmd->add_flag("--no-projection", o.no_projection, "Skip hierarchical projection");
  cmd->add_flag("--no-bitplane", o.no_bitplane, "Skip bit-plane transposition");
  cmd->add_option("--lzw-max-width", o.lzw_max_width, "Largest LZW code width")->check(CLI::Range(9, 20));
  cmd->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
}

wise::Image load(const fs::path& path, const RawOptions& raw) {
  const wise::Bytes bytes = wise::io::read_file(path);
  const auto ext = wise::io::format_from_extension(path);
  if (raw.raw || ext == wise::io::Format::Raw) {
    if (raw.width == 0 || raw.height == 0 || raw.channels == 0)
      throw wise::Error(wise::ErrorKind::InvalidArgument, "raw input needs --width, --height and --channels");
    return wise::io::read_image(bytes, wise::io::Format::Raw, wise::Shape{raw.height, raw.width, raw.channels});
  }
  return wise::io::read_image(bytes, wise::io::Format::Auto);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// ---------------------------------------------------------------- compress

int run_compress(const fs::path& in, const fs::path& out, const StageOptions& stages, bool drop_alpha,
                 const RawOptions& raw) {
  const wise::Image img = load(in, raw);
  auto cfg = stages.config();
  cfg.drop_alpha = drop_alpha;

  const auto t0 = std::chrono::steady_clock::now();
  const auto result = wise::compress(img, cfg);
  const double elapsed = seconds_since(t0);
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
  wise::io::write_file_atomic(out, result.bytes);

  const auto original = img.samples().size();
  const double mbps = elapsed > 0 ? static_cast<double>(original) / 1e6 / elapsed : 0.0;
  std::cout << "original_bytes=" << original << " compressed_bytes=" << result.bytes.size()
            << " ratio=" << fixed(wise::metrics::compression_ratio(original, result.bytes.size()), 4)
            << " elapsed_s=" << fixed(elapsed, 4) << " throughput_MBps=" << fixed(mbps, 2) << '\n';
  return 0;
}

// -------------------------------------------------------------- decompress

int run_decompress(const fs::path& in, const fs::path& out, const std::string& format_name, unsigned threads) {
  const wise::Bytes bytes = wise::io::read_file(in);
  const auto result = wise::decompress(bytes, threads);
  if (result.alpha_dropped)
    std::cerr << "warning: alpha was dropped at compression time; output is RGB\n";

  wise::io::Format format = wise::io::format_from_extension(out);
  if (!format_name.empty()) {
    const auto parsed = wise::io::parse_format(format_name);
    if (!parsed) throw wise::Error(wise::ErrorKind::InvalidArgument, "unknown format '" + format_name + "'");
    format = *parsed;
  }
  if (format == wise::io::Format::Auto)
    format = result.image.channels() == 1 ? wise::io::Format::Pgm : wise::io::Format::Ppm;
  wise::io::write_file_atomic(out, wise::io::write_image(result.image, format));
  return 0;
}

// ----------------------------------------------------------------- analyze

json psnr_records(const wise::metrics::PsnrMatrix& m) {
  json records = json::array();
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      json r = {{"plane_i", i}, {"plane_j", j}};
      if (m[i][j] == wise::metrics::kInfinitePsnr)
        r["psnr_db"] = "inf";
      else
        r["psnr_db"] = m[i][j];
      records.push_back(std::move(r));
    }
  return records;
}

json mean_record(double v) { return v == wise::metrics::kInfinitePsnr ? json("inf") : json(v); }

int run_analyze(const fs::path& in, const StageOptions& stages, bool psnr, const std::string& out,
                const RawOptions& raw) {
  wise::Image img = load(in, raw);
  if (img.channels() == 4) {
    std::cerr << "warning: analysing RGB only; alpha channel ignored\n";
    img = wise::strip_alpha(img, true).image;
  }
  const auto cfg = stages.config();
  const std::size_t ps = cfg.patch_size;

  json patches = json::array();
  for (std::size_t row = 0; row < img.height(); row += ps)
    for (std::size_t col = 0; col < img.width(); col += ps) {
      const std::size_t h = std::min(ps, img.height() - row);
      const std::size_t w = std::min(ps, img.width() - col);
      wise::Image tile(wise::Shape{h, w, img.channels()});
      for (std::size_t m = 0; m < h; ++m)
        for (std::size_t n = 0; n < w; ++n)
          for (std::size_t c = 0; c < img.channels(); ++c) tile.at(m, n, c) = img.at(row + m, col + n, c);

      json entry = {{"origin", {row, col}}, {"shape", {h, w, img.channels()}}};
      json trace = json::array();
      for (const auto& s : wise::metrics::entropy_trace(tile, cfg))
        trace.push_back({{"stage", s.stage}, {"entropy_bits", s.entropy_bits}});
      entry["entropy"] = std::move(trace);
      if (psnr) {
        const auto raw_m = wise::metrics::psnr_matrix(tile, wise::metrics::PsnrStage::Raw);
        const auto proj_m = wise::metrics::psnr_matrix(tile, wise::metrics::PsnrStage::Projected);
        entry["psnr"] = {{"raw", psnr_records(raw_m)},
                         {"projected", psnr_records(proj_m)},
                         {"mean_off_diagonal",
                          {{"raw", mean_record(wise::metrics::mean_off_diagonal(raw_m))},
                           {"projected", mean_record(wise::metrics::mean_off_diagonal(proj_m))}}}};
      }
      patches.push_back(std::move(entry));
    }

  const json report = {{"image", {{"height", img.height()}, {"width", img.width()}, {"channels", img.channels()}}},
                       {"patch_size", ps},
                       {"patches", std::move(patches)}};
  const std::string text = report.dump(2) + "\n";
  if (out.empty() || out == "-")
    std::cout << text;
  else
    wise::io::write_file_atomic(out, wise::Bytes(text.begin(), text.end()));
  return 0;
}

// ------------------------------------------------------------------- bench

struct BenchItem {
  std::string name;
  wise::Image image;
};

struct BenchRow {
  std::string image, config;
  std::uint64_t original = 0, compressed = 0, peak_payload = 0;
  double seconds = 0.0;
};

// Largest tile's working set: its input, one buffer per enabled transform,
// and the compressed payload, times the workers that can hold one at once.
std::uint64_t peak_payload_estimate(const wise::Image& img, const wise::CompressionConfig& cfg,
                                    std::uint64_t container_bytes) {
  const std::uint64_t ps = cfg.patch_size;
  const std::uint64_t tile = std::min<std::uint64_t>(ps, img.height()) * std::min<std::uint64_t>(ps, img.width()) *
                             img.channels();
  const std::uint64_t tiles = ((img.height() + ps - 1) / ps) * ((img.width() + ps - 1) / ps);
  const std::uint64_t workers = std::min<std::uint64_t>(std::max(1u, cfg.threads), std::max<std::uint64_t>(tiles, 1));
  const std::uint64_t buffers = 1 + cfg.enable_projection + cfg.enable_bitplane;
  return workers * tile * buffers + container_bytes;
}

std::vector<BenchItem> load_corpus(const std::string& dir, std::size_t synthetic, std::uint64_t seed,
                                   std::size_t size) {
  std::vector<BenchItem> items;
  if (synthetic > 0) {
    auto corpus = wise::synthetic::wsi_corpus(synthetic, size, size, seed);
    for (std::size_t i = 0; i < corpus.size(); ++i)
      items.push_back({"synthetic_" + std::to_string(i), std::move(corpus[i])});
  }
  if (!dir.empty()) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir)) {
      const auto f = wise::io::format_from_extension(e.path());
      if (e.is_regular_file() && f != wise::io::Format::Auto && f != wise::io::Format::Raw) files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) items.push_back({f.filename().string(), load(f, RawOptions{})});
  }
  if (items.empty()) throw wise::Error(wise::ErrorKind::InvalidArgument, "bench corpus is empty");
  return items;
}

int run_bench(const std::string& dir, std::size_t synthetic, std::uint64_t seed, std::size_t size, bool ablation,
              bool csv, bool timing, const StageOptions& stages, bool drop_alpha) {
  const auto items = load_corpus(dir, synthetic, seed, size);

  std::vector<std::pair<std::string, wise::CompressionConfig>> configs;
  if (ablation) {
    auto base = stages.config();
    base.drop_alpha = drop_alpha;
    auto lzw = base, proj = base, full = base;
    lzw.enable_projection = lzw.enable_bitplane = false;
    proj.enable_projection = true;
    proj.enable_bitplane = false;
    full.enable_projection = full.enable_bitplane = true;
    configs = {{"lzw", lzw}, {"projection+lzw", proj}, {"projection+bitplane+lzw", full}};
  } else {
    auto cfg = stages.config();
    cfg.drop_alpha = drop_alpha;
    std::string name = std::string(cfg.enable_projection ? "projection+" : "") +
                       (cfg.enable_bitplane ? "bitplane+" : "") + "lzw";
    configs = {{name, cfg}};
  }

  std::vector<BenchRow> rows;
  std::vector<BenchRow> totals;
  for (const auto& [name, cfg] : configs) {
    BenchRow total{"aggregate", name};
    for (const auto& item : items) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto result = wise::compress(item.image, cfg);
      const double elapsed = seconds_since(t0);
      BenchRow row{item.name, name, item.image.samples().size(), result.bytes.size(),
                   peak_payload_estimate(item.image, cfg, result.bytes.size()), elapsed};
      total.original += row.original;
      total.compressed += row.compressed;
      total.peak_payload = std::max(total.peak_payload, row.peak_payload);
      total.seconds += row.seconds;
      rows.push_back(row);
    }
    totals.push_back(total);
  }
  rows.insert(rows.end(), totals.begin(), totals.end());

  auto cells = [&](const BenchRow& r) {
    std::vector<std::string> c = {r.image,
                                  r.config,
                                  std::to_string(r.original),
                                  std::to_string(r.compressed),
                                  fixed(wise::metrics::compression_ratio(r.original, r.compressed), 4),
                                  std::to_string(r.peak_payload)};
    if (timing) c.push_back(fixed(r.seconds > 0 ? static_cast<double>(r.original) / 1e6 / r.seconds : 0.0, 2));
    return c;
  };
  std::vector<std::string> header = {"image", "config", "original_bytes", "compressed_bytes", "ratio",
                                     "peak_payload_bytes"};
  if (timing) header.push_back("throughput_MBps");

  if (csv) {
    auto line = [](const std::vector<std::string>& c) {
      for (std::size_t i = 0; i < c.size(); ++i) std::cout << (i ? "," : "") << c[i];
      std::cout << '\n';
    };
    line(header);
    for (const auto& r : rows) line(cells(r));
    return 0;
  }
  std::vector<std::size_t> width(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
  for (const auto& r : rows) {
    const auto c = cells(r);
    for (std::size_t i = 0; i < c.size(); ++i) width[i] = std::max(width[i], c[i].size());
  }
  auto line = [&](const std::vector<std::string>& c) {
    std::ostringstream s;
    for (std::size_t i = 0; i < c.size(); ++i) {
      s << (i ? "  " : "");
      // Names left-aligned, numbers right-aligned.
      if (i < 2)
        s << c[i] << std::string(width[i] - c[i].size(), ' ');
      else
        s << std::string(width[i] - c[i].size(), ' ') << c[i];
    }
    std::string text = s.str();
    text.erase(text.find_last_not_of(' ') + 1);
    std::cout << text << '\n';
  };
  line(header);
  for (const auto& r : rows) line(cells(r));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"WISE lossless whole-slide image codec"};
  app.require_subcommand(1);

  RawOptions raw;
  StageOptions stages;
  bool drop_alpha = false;
  std::string in, out, format;

  auto* compress = app.add_subcommand("compress", "Compress a raster into a .wise container");
  compress->add_option("input", in, "Input raster (PGM/PPM/PAM/raw)")->required();
  compress->add_option("output", out, "Output container")->required();
  compress->add_flag("--drop-alpha", drop_alpha, "Discard the alpha channel of RGBA input (lossy)");
  add_stage_options(compress, stages);
  add_raw_options(compress, raw);

  unsigned threads = 0;
  auto* decompress = app.add_subcommand("decompress", "Restore a raster from a .wise container");
  decompress->add_option("input", in, "Input container")->required();
  decompress->add_option("output", out, "Output raster")->required();
  decompress->add_option("--format", format, "pgm, ppm, pam or raw (default: from extension)");
  decompress->add_option("--threads", threads, "Worker threads (0 = all cores)");

  bool psnr = false;
  auto* analyze = app.add_subcommand("analyze", "Report per-stage entropy and bit-plane PSNR as JSON");
  analyze->add_option("input", in, "Input raster")->required();
  analyze->add_option("-o,--output", out, "Write the JSON report here instead of stdout");
  analyze->add_flag("--psnr", psnr, "Include pairwise bit-plane PSNR records");
  add_stage_options(analyze, stages);
  add_raw_options(analyze, raw);

  std::string corpus;
  std::size_t synthetic = 0, size = 256;
  std::uint64_t seed = 0;
  bool ablation = false, csv = false, no_timing = false;
  auto* bench = app.add_subcommand("bench", "Measure compression ratio over a corpus");
  bench->add_option("--corpus", corpus, "Directory of PGM/PPM/PAM rasters")->check(CLI::ExistingDirectory);
  bench->add_option("--synthetic", synthetic, "Generate N synthetic WSI-like patches");
  bench->add_option("--seed", seed, "Seed for the synthetic corpus");
  bench->add_option("--size", size, "Synthetic patch edge length")->check(CLI::PositiveNumber);
  bench->add_flag("--ablation", ablation, "Compare LZW, +projection and +projection+bitplane");
  bench->add_flag("--csv", csv, "Emit CSV instead of an aligned table");
  bench->add_flag("--no-timing", no_timing, "Omit the wall-clock throughput column");
  bench->add_flag("--drop-alpha", drop_alpha, "Discard the alpha channel of RGBA input (lossy)");
  add_stage_options(bench, stages);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*compress) return run_compress(in, out, stages, drop_alpha, raw);
    if (*decompress) return run_decompress(in, out, format, threads);
    if (*analyze) return run_analyze(in, stages, psnr, out, raw);
    if (*bench) return run_bench(corpus, synthetic, seed, size, ablation, csv, !no_timing, stages, drop_alpha);
  } catch (const wise::Error& e) {
    std::cerr << "error (" << wise::to_string(e.kind()) << "): " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
