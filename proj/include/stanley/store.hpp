#pragma once

// File formats. All CSV is UTF-8 with LF line endings and a fixed header:
//   sequence  k,a_k               (k 1-based, base-10 integers)
//   series    k,value             (value with 17 significant digits)
//   extrema   kind,k,r_smooth,r_raw  (kind is peak|trough; values may be empty)
// Sequence and series files carry a "<file>.meta.json" sidecar.

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "stanley/extrema.hpp"
#include "stanley/sequence.hpp"
#include "stanley/series.hpp"

namespace stanley {

namespace fs = std::filesystem;
using Json = nlohmann::json;

/// 17 significant digits (printf %.17g); parses back to the same double.
std::string format_double(double v);
/// Strict parse of the whole field. Throws FormatError mentioning `where`.
double parse_double(std::string_view text, std::string_view where);
std::int64_t parse_int(std::string_view text, std::string_view where);

std::string sha256_hex(std::string_view bytes);
std::string read_file(const fs::path& path);
/// Writes through a temporary file in the same directory, then renames.
void write_file(const fs::path& path, std::string_view content);
std::string sha256_file(const fs::path& path);

fs::path sidecar_path(const fs::path& data_file);

// --- sequences ---------------------------------------------------------------

std::string sequence_csv(std::span<const Term> terms);
/// Throws FormatError on a bad header, a malformed or missing row, or a
/// non-contiguous k column.
std::vector<Term> parse_sequence_csv(std::string_view text);

struct SaveInfo {
    std::string tool_version;
    double wall_clock_seconds = 0;
};

/// Writes the CSV and its sidecar {format, seed, length, strategy,
/// tool_version, wall_clock_seconds, sha256}.
void save_sequence(const Sequence& seq, const fs::path& path, const SaveInfo& info = {});

struct LoadOptions {
    /// Length of the prefix re-checked for AP-freeness and greedy minimality.
    std::size_t verify_prefix = 2000;
};

/// Reads a sequence file. With a sidecar present the checksum, length, seed
/// and strategy are taken from and checked against it; without one the seed
/// is the first two terms and the strategy is bitset-scan.
Sequence load_sequence(const fs::path& path, const LoadOptions& options = {});

// --- series ------------------------------------------------------------------

std::string series_csv(const IndexedSeries& series);
IndexedSeries parse_series_csv(std::string_view text, std::string label);

/// Writes the CSV and a sidecar {label, first_k, last_k, provenance}.
void save_series(const IndexedSeries& series, const fs::path& path, const Json& provenance = Json::object());
/// The label comes from the sidecar when present, else the file stem.
IndexedSeries load_series(const fs::path& path);

// --- extrema -----------------------------------------------------------------

std::string extrema_csv(std::span<const ExtremaRow> rows);
std::vector<ExtremaRow> parse_extrema_csv(std::string_view text);
std::vector<ExtremaRow> load_extrema(const fs::path& path);

}  // namespace stanley
