#pragma once

// Output plumbing shared by the command-line tools: run manifests, CSV files
// with a fixed numeric precision, and minimal SVG line plots.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace mlob {

inline constexpr int kCurrencyDecimals = 4;
inline constexpr int kProbabilityDecimals = 5;

[[nodiscard]] std::uint64_t fnv1a64(std::string_view bytes) noexcept;

/// Everything that determines a run's outputs. The hash is taken over a
/// canonical JSON rendering, so key order never matters.
struct RunManifest {
  std::string command;
  std::vector<std::string> inputs;
  std::map<std::string, std::string> flags;
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> outputs;

  [[nodiscard]] std::string canonical_json() const;
  [[nodiscard]] std::string hash_hex() const;
};

[[nodiscard]] std::string fixed(double value, int decimals);
[[nodiscard]] inline std::string currency(double value) { return fixed(value, kCurrencyDecimals); }
[[nodiscard]] inline std::string probability(double value) { return fixed(value, kProbabilityDecimals); }

/// CSV file whose first line is "# manifest=<hash>".
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::string& manifest_hash, const std::vector<std::string>& header);
  /// Writes to a caller-owned stream.
  CsvWriter(std::ostream& out, const std::string& manifest_hash, const std::vector<std::string>& header);
  ~CsvWriter();

  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  void row(const std::vector<std::string>& fields);

 private:
  std::filesystem::path path_;
  std::ofstream file_;
  std::ostream* out_ = nullptr;
  std::size_t columns_ = 0;
};

struct PlotSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  bool markers = false;  // points instead of a polyline
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  bool identity_line = false;  // dashed y = x over the common range
  std::string manifest_hash;
};

/// Renders to a standalone SVG. Only the leading comment line carries run
/// metadata; the drawing is a pure function of the data.
[[nodiscard]] std::string render_svg(const PlotSpec& spec, const std::vector<PlotSeries>& series);
void write_svg(const std::filesystem::path& path, const PlotSpec& spec, const std::vector<PlotSeries>& series);

}  // namespace mlob
