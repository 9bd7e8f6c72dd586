#include "stanley/store.hpp"

#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <fstream>
#include <memory>
#include <sstream>

#include "stanley/error.hpp"
#include "stanley/version.hpp"

namespace stanley {

constexpr std::string_view kSequenceHeader = "k,a_k";
constexpr std::string_view kSeriesHeader = "k,value";
constexpr std::string_view kExtremaHeader = "kind,k,r_smooth,r_raw";
constexpr int kSequenceFormat = 1;

std::string format_double(double v) {
    std::array<char, 40> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
    if (ec != std::errc()) throw FormatError("cannot format double");
    return std::string(buf.data(), end);
}

double parse_double(std::string_view text, std::string_view where) {
    double v = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || end != text.data() + text.size())
        throw FormatError("bad number '" + std::string(text) + "' at " + std::string(where));
    return v;
}

std::int64_t parse_int(std::string_view text, std::string_view where) {
    std::int64_t v = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || end != text.data() + text.size())
        throw FormatError("bad integer '" + std::string(text) + "' at " + std::string(where));
    return v;
}

std::string sha256_hex(std::string_view bytes) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), md.data(), &len) != 1)
        throw Error("sha256 failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned i = 0; i < len; ++i) {
        out.push_back(hex[md[i] >> 4]);
        out.push_back(hex[md[i] & 15]);
    }
    return out;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, std::string_view content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write '" + tmp.string() + "'");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw Error("write failed for '" + tmp.string() + "'");
    }
    fs::rename(tmp, path);
}

std::string sha256_file(const fs::path& path) { return sha256_hex(read_file(path)); }

fs::path sidecar_path(const fs::path& data_file) {
    fs::path p = data_file;
    p += ".meta.json";
    return p;
}

namespace {

// Splits into LF-terminated lines. The last line must end in LF, so a file
// cut mid-row is reported instead of silently accepted.
std::vector<std::string_view> split_lines(std::string_view text, std::string_view what) {
    if (text.empty()) throw FormatError(std::string(what) + ": empty file");
    if (text.back() != '\n') throw FormatError(std::string(what) + ": truncated (no final newline)");
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto nl = text.find('\n', pos);
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const auto comma = line.find(',', pos);
        out.push_back(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

std::string row_ref(std::string_view what, std::size_t line) {
    return std::string(what) + " line " + std::to_string(line + 1);
}

void require_header(std::string_view got, std::string_view want, std::string_view what) {
    if (got != want)
        throw FormatError(std::string(what) + ": expected header '" + std::string(want) + "', got '" +
                          std::string(got) + "'");
}

Json read_json(const fs::path& path) {
    try {
        return Json::parse(read_file(path));
    } catch (const Json::exception& e) {
        throw FormatError("malformed JSON in '" + path.string() + "': " + e.what());
    }
}

}  // namespace

std::string sequence_csv(std::span<const Term> terms) {
    std::string out(kSequenceHeader);
    out += '\n';
    for (std::size_t i = 0; i < terms.size(); ++i) {
        out += std::to_string(i + 1);
        out += ',';
        out += std::to_string(terms[i]);
        out += '\n';
    }
    return out;
}

std::vector<Term> parse_sequence_csv(std::string_view text) {
    const auto lines = split_lines(text, "sequence file");
    require_header(lines[0], kSequenceHeader, "sequence file");
    std::vector<Term> terms;
    terms.reserve(lines.size() - 1);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = split_fields(lines[i]);
        const auto where = row_ref("sequence file", i);
        if (fields.size() != 2) throw FormatError(where + ": expected 2 fields");
        if (parse_int(fields[0], where) != static_cast<std::int64_t>(i))
            throw FormatError(where + ": k column must be " + std::to_string(i));
        terms.push_back(parse_int(fields[1], where));
    }
    return terms;
}

void save_sequence(const Sequence& seq, const fs::path& path, const SaveInfo& info) {
    const auto csv = sequence_csv(seq.terms());
    write_file(path, csv);
    Json meta = {
        {"format", "stanley-sequence"},
        {"format_version", kSequenceFormat},
        {"seed", std::vector<Term>(seq.seed().elements().begin(), seq.seed().elements().end())},
        {"length", seq.size()},
        {"strategy", to_string(seq.strategy())},
        {"tool_version", info.tool_version.empty() ? std::string(kVersion) : info.tool_version},
        {"wall_clock_seconds", info.wall_clock_seconds},
        {"sha256", sha256_hex(csv)},
    };
    write_file(sidecar_path(path), meta.dump(2) + "\n");
}

Sequence load_sequence(const fs::path& path, const LoadOptions& options) {
    const auto csv = read_file(path);
    auto terms = parse_sequence_csv(csv);
    if (terms.size() < 2) throw FormatError("'" + path.string() + "' holds fewer than 2 terms");

    std::vector<Term> seed_elems(terms.begin(), terms.begin() + 2);
    Strategy strategy = Strategy::bitset_scan;
    if (const auto side = sidecar_path(path); fs::exists(side)) {
        const auto meta = read_json(side);
        try {
            if (meta.at("sha256").get<std::string>() != sha256_hex(csv))
                throw FormatError("checksum mismatch between '" + path.string() + "' and its sidecar");
            if (meta.at("length").get<std::size_t>() != terms.size())
                throw FormatError("'" + path.string() + "' has " + std::to_string(terms.size()) +
                                  " terms, sidecar says " + std::to_string(meta.at("length").get<std::size_t>()));
            seed_elems = meta.at("seed").get<std::vector<Term>>();
            strategy = parse_strategy(meta.at("strategy").get<std::string>());
        } catch (const Json::exception& e) {
            throw FormatError("malformed sidecar '" + side.string() + "': " + e.what());
        }
    }

    Seed seed(seed_elems);
    const std::size_t n = std::min(options.verify_prefix, terms.size());
    const std::span<const Term> prefix(terms.data(), n);
    for (std::size_t i = 1; i < n; ++i) {
        if (prefix[i] <= prefix[i - 1])
            throw InvariantError("'" + path.string() + "': terms not increasing at k=" + std::to_string(i + 1));
    }
    if (auto ap = find_ap(prefix)) {
        throw InvariantError("'" + path.string() + "': 3-term AP " + std::to_string(prefix[ap->i]) + ", " +
                             std::to_string(prefix[ap->j]) + ", " + std::to_string(prefix[ap->l]));
    }
    if (n > seed.size()) {
        if (auto gap = find_greedy_violation(prefix, seed.size()))
            throw InvariantError("'" + path.string() + "': skipped value " + std::to_string(*gap) +
                                 " was admissible (not greedy)");
    }
    try {
        return Sequence(std::move(seed), std::move(terms), strategy);
    } catch (const InvariantError& e) {
        throw InvariantError("'" + path.string() + "': " + e.what());
    }
}

std::string series_csv(const IndexedSeries& series) {
    std::string out(kSeriesHeader);
    out += '\n';
    for (std::size_t i = 0; i < series.size(); ++i) {
        out += std::to_string(series.k_at(i));
        out += ',';
        out += format_double(series.values()[i]);
        out += '\n';
    }
    return out;
}

IndexedSeries parse_series_csv(std::string_view text, std::string label) {
    const auto lines = split_lines(text, "series file");
    require_header(lines[0], kSeriesHeader, "series file");
    if (lines.size() < 2) throw FormatError("series file: no data rows");
    std::vector<double> values;
    values.reserve(lines.size() - 1);
    std::int64_t first_k = 0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = split_fields(lines[i]);
        const auto where = row_ref("series file", i);
        if (fields.size() != 2) throw FormatError(where + ": expected 2 fields");
        const auto k = parse_int(fields[0], where);
        if (i == 1)
            first_k = k;
        else if (k != first_k + static_cast<std::int64_t>(i - 1))
            throw FormatError(where + ": k column is not contiguous");
        values.push_back(parse_double(fields[1], where));
    }
    try {
        return IndexedSeries(std::move(label), first_k, std::move(values));
    } catch (const PreconditionError& e) {
        throw FormatError(std::string("series file: ") + e.what());
    }
}

void save_series(const IndexedSeries& series, const fs::path& path, const Json& provenance) {
    const auto csv = series_csv(series);
    write_file(path, csv);
    Json meta = {
        {"format", "stanley-series"},
        {"label", series.label()},
        {"first_k", series.first_k()},
        {"last_k", series.last_k()},
        {"sha256", sha256_hex(csv)},
        {"tool_version", kVersion},
        {"provenance", provenance},
    };
    write_file(sidecar_path(path), meta.dump(2) + "\n");
}

IndexedSeries load_series(const fs::path& path) {
    const auto csv = read_file(path);
    std::string label = path.stem().string();
    if (const auto side = sidecar_path(path); fs::exists(side)) {
        const auto meta = read_json(side);
        if (meta.contains("sha256") && meta["sha256"] != sha256_hex(csv))
            throw FormatError("checksum mismatch between '" + path.string() + "' and its sidecar");
        label = meta.value("label", label);
    }
    return parse_series_csv(csv, std::move(label));
}

std::string extrema_csv(std::span<const ExtremaRow> rows) {
    std::string out(kExtremaHeader);
    out += '\n';
    for (const auto& row : rows) {
        out += to_string(row.kind);
        out += ',';
        out += std::to_string(row.k);
        out += ',';
        if (row.r_smooth) out += format_double(*row.r_smooth);
        out += ',';
        if (row.r_raw) out += format_double(*row.r_raw);
        out += '\n';
    }
    return out;
}

std::vector<ExtremaRow> parse_extrema_csv(std::string_view text) {
    const auto lines = split_lines(text, "extrema file");
    require_header(lines[0], kExtremaHeader, "extrema file");
    std::vector<ExtremaRow> rows;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = split_fields(lines[i]);
        const auto where = row_ref("extrema file", i);
        if (fields.size() != 4) throw FormatError(where + ": expected 4 fields");
        ExtremaRow row{};
        try {
            row.kind = parse_extrema_kind(fields[0]);
        } catch (const PreconditionError& e) {
            throw FormatError(where + ": " + e.what());
        }
        row.k = parse_int(fields[1], where);
        if (!fields[2].empty()) row.r_smooth = parse_double(fields[2], where);
        if (!fields[3].empty()) row.r_raw = parse_double(fields[3], where);
        rows.push_back(row);
    }
    return rows;
}

std::vector<ExtremaRow> load_extrema(const fs::path& path) { return parse_extrema_csv(read_file(path)); }

}  // namespace stanley
