#pragma once

// Per-point formulas shared by the parallel kernels and the serial
// references, so both paths agree bit for bit.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>

#include "stanley/error.hpp"
#include "stanley/series.hpp"

namespace stanley::detail {

// a[k - 1] is a_k.
inline double ratio_at(std::span<const double> a, std::size_t k) {
    return std::log(a[k - 1]) / std::log(static_cast<double>(k));
}

// Log of a quotient rather than a difference of logs: a constant factor
// cancels before rounding, and the narrow denominators near large k do not
// amplify cancellation error.
inline double windowed_at(std::span<const double> a, std::size_t k, std::size_t w) {
    const double num = std::log(a[k + w - 1] / a[k - w - 1]);
    const double den = std::log1p(2.0 * static_cast<double>(w) / static_cast<double>(k - w));
    return num / den;
}

inline double deviation_at(std::span<const double> a, std::size_t k) {
    const double lk = std::log(static_cast<double>(k));
    return std::log(a[k - 1]) - 2.0 * lk + std::log(lk);
}

inline double window_mean(std::span<const double> x, std::size_t i, std::size_t window,
                          SmoothingConfig::Edge edge) {
    const std::size_t half = window / 2;
    const std::size_t lo = i >= half ? i - half : 0;
    const std::size_t hi = std::min(x.size() - 1, i + half);
    double sum = 0.0;
    for (std::size_t j = lo; j <= hi; ++j) sum += x[j];
    const double count = edge == SmoothingConfig::Edge::zero_pad ? static_cast<double>(window)
                                                                 : static_cast<double>(hi - lo + 1);
    return sum / count;
}

inline void require_positive_from(std::span<const double> a, std::size_t first_k) {
    for (std::size_t k = first_k; k <= a.size(); ++k) {
        if (!(a[k - 1] > 0.0) || !std::isfinite(a[k - 1]))
            throw PreconditionError("a_k must be positive and finite; fails at k=" + std::to_string(k));
    }
}

inline void require_ratio_domain(std::span<const double> a) {
    if (a.size() < 2) throw PreconditionError("series needs at least 2 terms, got " + std::to_string(a.size()));
    require_positive_from(a, 2);
}

inline void require_window_domain(std::span<const double> a, std::size_t w) {
    if (w < 1) throw PreconditionError("window w must be >= 1");
    if (a.size() < 2 * w + 2)
        throw PreconditionError("window w=" + std::to_string(w) + " needs N >= " + std::to_string(2 * w + 2) +
                                ", have N=" + std::to_string(a.size()));
    require_positive_from(a, 2);
}

}  // namespace stanley::detail
