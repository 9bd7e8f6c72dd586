#include "series_kernels.hpp"
#include "stanley/series.hpp"

namespace stanley::reference {

IndexedSeries exponent_ratio(std::span<const double> a) {
    detail::require_ratio_domain(a);
    std::vector<double> out;
    out.reserve(a.size() - 1);
    for (std::size_t k = 2; k <= a.size(); ++k) out.push_back(detail::ratio_at(a, k));
    return IndexedSeries("ratio", 2, std::move(out));
}

IndexedSeries windowed_exponent(std::span<const double> a, std::size_t w) {
    detail::require_window_domain(a, w);
    std::vector<double> out;
    for (std::size_t k = w + 2; k <= a.size() - w; ++k) out.push_back(detail::windowed_at(a, k, w));
    return IndexedSeries("windowed_w" + std::to_string(w), static_cast<std::int64_t>(w + 2), std::move(out));
}

IndexedSeries deviation_series(std::span<const double> a) {
    detail::require_ratio_domain(a);
    std::vector<double> out;
    out.reserve(a.size() - 1);
    for (std::size_t k = 2; k <= a.size(); ++k) out.push_back(detail::deviation_at(a, k));
    return IndexedSeries("deviation", 2, std::move(out));
}

IndexedSeries moving_average(const IndexedSeries& series, const SmoothingConfig& cfg) {
    if (series.empty()) throw PreconditionError("cannot smooth an empty series");
    const auto x = series.values();
    std::vector<double> out;
    out.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out.push_back(detail::window_mean(x, i, cfg.window(), cfg.edge()));
    return IndexedSeries(series.label() + "_smooth" + std::to_string(cfg.window()), series.first_k(),
                         std::move(out));
}

}  // namespace stanley::reference
