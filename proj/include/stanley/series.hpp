#pragma once

// Derived series over a sequence a_1..a_N (1-based k, natural logs):
//   ratio      r_k   = ln a_k / ln k                                  k = 2..N
//   windowed   alpha = ln(a_{k+w}/a_{k-w}) / ln((k+w)/(k-w))          k = w+2..N-w
//   deviation  f(k)  = ln a_k - 2 ln k + ln ln k                      k = 2..N
//
// The kernels here are OpenMP-parallel. stanley::reference holds the serial
// loops they are tested against.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "stanley/sequence.hpp"

namespace stanley {

/// Values on a contiguous 1-based index range first_k, first_k + 1, ...
class IndexedSeries {
   public:
    IndexedSeries() = default;
    /// Throws PreconditionError on a non-finite value or first_k < 1.
    IndexedSeries(std::string label, std::int64_t first_k, std::vector<double> values);

    const std::string& label() const { return label_; }
    std::int64_t first_k() const { return first_k_; }
    std::int64_t last_k() const { return first_k_ + static_cast<std::int64_t>(values_.size()) - 1; }
    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }
    std::span<const double> values() const { return values_; }

    std::int64_t k_at(std::size_t i) const { return first_k_ + static_cast<std::int64_t>(i); }
    bool contains(std::int64_t k) const { return !empty() && k >= first_k_ && k <= last_k(); }
    /// Throws PreconditionError naming k when outside the domain.
    double at_k(std::int64_t k) const;
    std::size_t index_of(std::int64_t k) const;

    friend bool operator==(const IndexedSeries&, const IndexedSeries&) = default;

   private:
    std::string label_;
    std::int64_t first_k_ = 1;
    std::vector<double> values_;
};

/// Odd moving-average window.
class SmoothingConfig {
   public:
    enum class Edge {
        zero_pad,  // divide by L everywhere, out-of-range samples count as 0
        truncate,  // divide by the number of in-range samples
    };

    /// Throws PreconditionError unless window is odd and >= 1.
    explicit SmoothingConfig(std::size_t window, Edge edge = Edge::zero_pad);

    std::size_t window() const { return window_; }
    Edge edge() const { return edge_; }

   private:
    std::size_t window_;
    Edge edge_;
};

// `a` holds a_1..a_N (a[0] is a_1).
IndexedSeries exponent_ratio(std::span<const double> a);
IndexedSeries windowed_exponent(std::span<const double> a, std::size_t w);
IndexedSeries deviation_series(std::span<const double> a);

IndexedSeries exponent_ratio(const Sequence& seq);
IndexedSeries windowed_exponent(const Sequence& seq, std::size_t w);
IndexedSeries deviation_series(const Sequence& seq);

/// Same-mode convolution with a flat kernel of length L, centred.
IndexedSeries moving_average(const IndexedSeries& series, const SmoothingConfig& cfg);

namespace reference {

IndexedSeries exponent_ratio(std::span<const double> a);
IndexedSeries windowed_exponent(std::span<const double> a, std::size_t w);
IndexedSeries deviation_series(std::span<const double> a);
IndexedSeries moving_average(const IndexedSeries& series, const SmoothingConfig& cfg);

}  // namespace reference

}  // namespace stanley
