#include "mlob/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <fmt/format.h>
#include <json.hpp>

#include "mlob/error.hpp"

namespace mlob {

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string RunManifest::canonical_json() const {
  nlohmann::json j;
  j["command"] = command;
  j["inputs"] = inputs;
  j["flags"] = flags;
  j["seeds"] = seeds;
  j["outputs"] = outputs;
  return j.dump();
}

std::string RunManifest::hash_hex() const { return fmt::format("{:016x}", fnv1a64(canonical_json())); }

std::string fixed(double value, int decimals) {
  std::string s = fmt::format("{:.{}f}", value, decimals);
  // A rounded negative zero prints as "-0.000"; normalize it.
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::string& manifest_hash,
                     const std::vector<std::string>& header)
    : path_(path), file_(path), out_(&file_), columns_(header.size()) {
  if (!file_) fail(Errc::Io, "cannot open " + path.string());
  *out_ << "# manifest=" << manifest_hash << '\n';
  row(header);
}

CsvWriter::CsvWriter(std::ostream& out, const std::string& manifest_hash, const std::vector<std::string>& header)
    : path_("<stream>"), out_(&out), columns_(header.size()) {
  *out_ << "# manifest=" << manifest_hash << '\n';
  row(header);
}

CsvWriter::~CsvWriter() = default;

void CsvWriter::row(const std::vector<std::string>& fields) {
  if (fields.size() != columns_) fail(Errc::Io, "CSV row width mismatch in " + path_.string());
  for (std::size_t i = 0; i < fields.size(); ++i) *out_ << (i ? "," : "") << fields[i];
  *out_ << '\n';
  if (!*out_) fail(Errc::Io, "write failed for " + path_.string());
}

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 450.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 160.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;
constexpr std::array<const char*, 6> kColors{"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  bool log = false;

  [[nodiscard]] double map(double v) const { return log ? std::log10(v) : v; }
  [[nodiscard]] double frac(double v) const { return (map(v) - lo) / (hi - lo); }
};

Axis make_axis(const std::vector<PlotSeries>& series, bool use_x, bool log, double extra_lo, double extra_hi) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& s : series)
    for (double v : use_x ? s.x : s.y) {
      if (!std::isfinite(v) || (log && v <= 0.0)) continue;
      const double m = log ? std::log10(v) : v;
      lo = std::min(lo, m);
      hi = std::max(hi, m);
    }
  if (std::isfinite(extra_lo)) lo = std::min(lo, log ? std::log10(extra_lo) : extra_lo);
  if (std::isfinite(extra_hi)) hi = std::max(hi, log ? std::log10(extra_hi) : extra_hi);
  if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
  if (hi - lo < 1e-12) lo -= 0.5, hi += 0.5;
  const double pad = 0.04 * (hi - lo);
  return {lo - pad, hi + pad, log};
}

std::string tick_label(double mapped, bool log) {
  return log ? fmt::format("1e{:g}", mapped) : fmt::format("{:.4g}", mapped);
}

}  // namespace

std::string render_svg(const PlotSpec& spec, const std::vector<PlotSeries>& series) {
  const double inf = std::numeric_limits<double>::infinity();
  const Axis ax = make_axis(series, true, spec.log_x, inf, -inf);
  const Axis ay = make_axis(series, false, spec.log_y, inf, -inf);
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  const auto px = [&](double v) { return kLeft + ax.frac(v) * pw; };
  const auto py = [&](double v) { return kTop + (1.0 - ay.frac(v)) * ph; };

  std::string svg;
  svg += fmt::format("<!-- manifest={} -->\n", spec.manifest_hash);
  svg += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\" "
      "font-family=\"sans-serif\" font-size=\"12\">\n",
      kWidth, kHeight);
  svg += fmt::format("<rect width=\"{}\" height=\"{}\" fill=\"white\"/>\n", kWidth, kHeight);
  svg += fmt::format("<text x=\"{}\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n", kLeft + pw / 2,
                     escape(spec.title));
  svg += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#333\"/>\n", kLeft,
                     kTop, pw, ph);

  for (int i = 0; i <= 5; ++i) {
    const double fx = ax.lo + (ax.hi - ax.lo) * i / 5.0;
    const double fy = ay.lo + (ay.hi - ay.lo) * i / 5.0;
    const double gx = kLeft + pw * i / 5.0;
    const double gy = kTop + ph * (1.0 - i / 5.0);
    svg += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1}\" x2=\"{0:.2f}\" y2=\"{2}\" stroke=\"#eee\"/>\n", gx, kTop,
                       kTop + ph);
    svg += fmt::format("<line x1=\"{1}\" y1=\"{0:.2f}\" x2=\"{2}\" y2=\"{0:.2f}\" stroke=\"#eee\"/>\n", gy, kLeft,
                       kLeft + pw);
    svg += fmt::format("<text x=\"{:.2f}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", gx, kTop + ph + 16,
                       tick_label(fx, ax.log));
    svg += fmt::format("<text x=\"{}\" y=\"{:.2f}\" text-anchor=\"end\">{}</text>\n", kLeft - 6, gy + 4,
                       tick_label(fy, ay.log));
  }
  svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", kLeft + pw / 2, kHeight - 14,
                     escape(spec.x_label));
  svg += fmt::format("<text x=\"18\" y=\"{0}\" text-anchor=\"middle\" transform=\"rotate(-90 18 {0})\">{1}</text>\n",
                     kTop + ph / 2, escape(spec.y_label));

  if (spec.identity_line) {
    const double lo = std::max(ax.lo, ay.lo);
    const double hi = std::min(ax.hi, ay.hi);
    if (hi > lo) {
      const auto unmap = [](double m, bool log) { return log ? std::pow(10.0, m) : m; };
      svg += fmt::format(
          "<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"#888\" stroke-dasharray=\"5,4\"/>\n",
          px(unmap(lo, ax.log)), py(unmap(lo, ay.log)), px(unmap(hi, ax.log)), py(unmap(hi, ay.log)));
    }
  }

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kColors[k % kColors.size()];
    std::string points;
    const std::size_t n = std::min(s.x.size(), s.y.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      if ((ax.log && s.x[i] <= 0.0) || (ay.log && s.y[i] <= 0.0)) continue;
      if (s.markers)
        svg += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3\" fill=\"{}\"/>\n", px(s.x[i]), py(s.y[i]), color);
      else
        points += fmt::format("{:.2f},{:.2f} ", px(s.x[i]), py(s.y[i]));
    }
    if (!points.empty())
      svg += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n", color, points);
    const double ly = kTop + 14.0 + 18.0 * static_cast<double>(k);
    svg += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"12\" height=\"4\" fill=\"{}\"/>\n", kLeft + pw + 12, ly - 4,
                       color);
    svg += fmt::format("<text x=\"{}\" y=\"{}\">{}</text>\n", kLeft + pw + 30, ly, escape(s.name));
  }
  svg += "</svg>\n";
  return svg;
}

void write_svg(const std::filesystem::path& path, const PlotSpec& spec, const std::vector<PlotSeries>& series) {
  std::ofstream out(path);
  if (!out) fail(Errc::Io, "cannot open " + path.string());
  out << render_svg(spec, series);
  if (!out) fail(Errc::Io, "write failed for " + path.string());
}

}  // namespace mlob
