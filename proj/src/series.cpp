#include "stanley/series.hpp"

#include <cmath>

#include "series_kernels.hpp"
#include "stanley/error.hpp"

namespace stanley {

IndexedSeries::IndexedSeries(std::string label, std::int64_t first_k, std::vector<double> values)
    : label_(std::move(label)), first_k_(first_k), values_(std::move(values)) {
    if (first_k_ < 1) throw PreconditionError("series index must start at k >= 1");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i]))
            throw PreconditionError("series '" + label_ + "' has a non-finite value at k=" +
                                    std::to_string(k_at(i)));
    }
}

double IndexedSeries::at_k(std::int64_t k) const { return values_[index_of(k)]; }

std::size_t IndexedSeries::index_of(std::int64_t k) const {
    if (!contains(k))
        throw PreconditionError("k=" + std::to_string(k) + " is outside the domain of series '" + label_ +
                                "' [" + std::to_string(first_k_) + ", " + std::to_string(last_k()) + "]");
    return static_cast<std::size_t>(k - first_k_);
}

SmoothingConfig::SmoothingConfig(std::size_t window, Edge edge) : window_(window), edge_(edge) {
    if (window_ < 1 || window_ % 2 == 0)
        throw PreconditionError("smoothing window must be odd and >= 1, got " + std::to_string(window_));
}

IndexedSeries exponent_ratio(std::span<const double> a) {
    detail::require_ratio_domain(a);
    const auto n = static_cast<std::int64_t>(a.size());
    std::vector<double> out(a.size() - 1);
#pragma omp parallel for schedule(static)
    for (std::int64_t k = 2; k <= n; ++k) out[k - 2] = detail::ratio_at(a, static_cast<std::size_t>(k));
    return IndexedSeries("ratio", 2, std::move(out));
}

IndexedSeries windowed_exponent(std::span<const double> a, std::size_t w) {
    detail::require_window_domain(a, w);
    const auto first = static_cast<std::int64_t>(w + 2);
    const auto last = static_cast<std::int64_t>(a.size() - w);
    std::vector<double> out(static_cast<std::size_t>(last - first + 1));
#pragma omp parallel for schedule(static)
    for (std::int64_t k = first; k <= last; ++k)
        out[k - first] = detail::windowed_at(a, static_cast<std::size_t>(k), w);
    return IndexedSeries("windowed_w" + std::to_string(w), first, std::move(out));
}

IndexedSeries deviation_series(std::span<const double> a) {
    detail::require_ratio_domain(a);
    const auto n = static_cast<std::int64_t>(a.size());
    std::vector<double> out(a.size() - 1);
#pragma omp parallel for schedule(static)
    for (std::int64_t k = 2; k <= n; ++k) out[k - 2] = detail::deviation_at(a, static_cast<std::size_t>(k));
    return IndexedSeries("deviation", 2, std::move(out));
}

IndexedSeries exponent_ratio(const Sequence& seq) { return exponent_ratio(seq.as_doubles()); }
IndexedSeries windowed_exponent(const Sequence& seq, std::size_t w) {
    return windowed_exponent(seq.as_doubles(), w);
}
IndexedSeries deviation_series(const Sequence& seq) { return deviation_series(seq.as_doubles()); }

IndexedSeries moving_average(const IndexedSeries& series, const SmoothingConfig& cfg) {
    if (series.empty()) throw PreconditionError("cannot smooth an empty series");
    const auto x = series.values();
    const auto n = static_cast<std::int64_t>(x.size());
    std::vector<double> out(x.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i)
        out[i] = detail::window_mean(x, static_cast<std::size_t>(i), cfg.window(), cfg.edge());
    return IndexedSeries(series.label() + "_smooth" + std::to_string(cfg.window()), series.first_k(),
                         std::move(out));
}

}  // namespace stanley
