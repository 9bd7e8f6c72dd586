#include "stanley/extrema.hpp"

#include <algorithm>
#include <numeric>

#include "curated_data.hpp"
#include "stanley/error.hpp"
#include "stanley/store.hpp"

namespace stanley {

PeakConfig::PeakConfig(std::int64_t min_distance, double min_prominence)
    : min_distance_(min_distance), min_prominence_(min_prominence) {
    if (min_distance_ < 1) throw PreconditionError("min_distance must be >= 1");
    if (!(min_prominence_ > 0.0)) throw PreconditionError("min_prominence must be > 0");
}

std::string_view to_string(ExtremaKind kind) { return kind == ExtremaKind::peak ? "peak" : "trough"; }

ExtremaKind parse_extrema_kind(std::string_view name) {
    if (name == "peak") return ExtremaKind::peak;
    if (name == "trough") return ExtremaKind::trough;
    throw PreconditionError("unknown extrema kind '" + std::string(name) + "' (expected peak or trough)");
}

void validate(const ExtremaSet& set) {
    for (auto kind : {ExtremaKind::peak, ExtremaKind::trough}) {
        const auto& ks = set.of(kind);
        for (std::size_t i = 1; i < ks.size(); ++i) {
            if (ks[i] <= ks[i - 1])
                throw InvariantError(std::string(to_string(kind)) + " list is not strictly increasing at k=" +
                                     std::to_string(ks[i]));
        }
    }
}

std::vector<std::size_t> local_maxima(std::span<const double> x) {
    std::vector<std::size_t> out;
    if (x.size() < 3) return out;
    const std::size_t last = x.size() - 1;
    std::size_t i = 1;
    while (i < last) {
        if (x[i - 1] < x[i]) {
            std::size_t ahead = i + 1;
            while (ahead < last && x[ahead] == x[i]) ++ahead;
            if (x[ahead] < x[i]) out.push_back(i);
            i = ahead;
        } else {
            ++i;
        }
    }
    return out;
}

double prominence(std::span<const double> x, std::size_t peak) {
    const double height = x[peak];
    double left_min = height;
    for (std::size_t i = peak + 1; i-- > 0;) {
        if (x[i] > height) break;
        left_min = std::min(left_min, x[i]);
    }
    double right_min = height;
    for (std::size_t i = peak; i < x.size(); ++i) {
        if (x[i] > height) break;
        right_min = std::min(right_min, x[i]);
    }
    return height - std::max(left_min, right_min);
}

double prominence(const IndexedSeries& series, std::int64_t k) {
    const std::size_t at = series.index_of(k);
    const auto maxima = local_maxima(series.values());
    if (!std::binary_search(maxima.begin(), maxima.end(), at))
        throw PreconditionError("k=" + std::to_string(k) + " is not a local maximum of '" + series.label() + "'");
    return prominence(series.values(), at);
}

std::vector<double> reference::prominences(std::span<const double> x, std::span<const std::size_t> peaks) {
    std::vector<double> out;
    out.reserve(peaks.size());
    for (auto p : peaks) out.push_back(prominence(x, p));
    return out;
}

std::vector<double> prominences(std::span<const double> x, std::span<const std::size_t> peaks) {
    std::vector<double> out(peaks.size());
    const auto n = static_cast<std::int64_t>(peaks.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < n; ++i) out[i] = prominence(x, peaks[i]);
    return out;
}

namespace {

std::vector<std::size_t> select_peaks(std::span<const double> x, const PeakConfig& cfg) {
    const auto maxima = local_maxima(x);
    const auto proms = prominences(x, maxima);

    std::vector<std::size_t> cand;
    for (std::size_t i = 0; i < maxima.size(); ++i)
        if (proms[i] >= cfg.min_prominence()) cand.push_back(maxima[i]);

    // Tallest first; ties keep the earlier position first.
    std::vector<std::size_t> order(cand.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[cand[a]] > x[cand[b]]; });

    std::vector<bool> keep(cand.size(), true);
    const auto dist = static_cast<std::size_t>(cfg.min_distance());
    for (auto j : order) {
        if (!keep[j]) continue;
        for (std::size_t i = j; i-- > 0 && cand[j] - cand[i] < dist;) keep[i] = false;
        for (std::size_t i = j + 1; i < cand.size() && cand[i] - cand[j] < dist; ++i) keep[i] = false;
    }

    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < cand.size(); ++i)
        if (keep[i]) out.push_back(cand[i]);
    return out;
}

}  // namespace

ExtremaSet find_extrema(const IndexedSeries& series, const PeakConfig& peaks, const PeakConfig& troughs) {
    const auto x = series.values();
    std::vector<double> neg(x.size());
    std::transform(x.begin(), x.end(), neg.begin(), [](double v) { return -v; });

    ExtremaSet out;
    out.source = ExtremaSource::automatic;
    for (auto i : select_peaks(x, peaks)) out.peaks.push_back(series.k_at(i));
    for (auto i : select_peaks(neg, troughs)) out.troughs.push_back(series.k_at(i));
    return out;
}

ExtremaSet curated_extrema() {
    const auto rows = parse_extrema_csv(detail::kCuratedExtremaCsv);
    auto set = extrema_from_rows(rows, ExtremaSource::manual);
    validate(set);
    return set;
}

std::vector<ExtremaRow> extrema_values(const ExtremaSet& extrema, const IndexedSeries& smoothed,
                                       const IndexedSeries& raw) {
    std::vector<ExtremaRow> rows;
    for (auto kind : {ExtremaKind::peak, ExtremaKind::trough}) {
        for (auto k : extrema.of(kind)) rows.push_back({kind, k, smoothed.at_k(k), raw.at_k(k)});
    }
    return rows;
}

ExtremaSet extrema_from_rows(std::span<const ExtremaRow> rows, ExtremaSource source) {
    ExtremaSet set;
    set.source = source;
    for (const auto& row : rows) (row.kind == ExtremaKind::peak ? set.peaks : set.troughs).push_back(row.k);
    return set;
}

}  // namespace stanley
