#pragma once

// Prominence- and distance-filtered local extrema of a sampled curve, plus
// the hand-curated peak/trough index lists used for the growth fits.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "stanley/series.hpp"

namespace stanley {

class PeakConfig {
   public:
    /// Throws PreconditionError unless min_distance >= 1 and min_prominence > 0.
    PeakConfig(std::int64_t min_distance, double min_prominence);

    std::int64_t min_distance() const { return min_distance_; }
    double min_prominence() const { return min_prominence_; }

   private:
    std::int64_t min_distance_;
    double min_prominence_;
};

enum class ExtremaKind { peak, trough };
enum class ExtremaSource { automatic, manual };

std::string_view to_string(ExtremaKind kind);
ExtremaKind parse_extrema_kind(std::string_view name);

struct ExtremaSet {
    std::vector<std::int64_t> peaks;    // k values, strictly increasing
    std::vector<std::int64_t> troughs;  // k values, strictly increasing
    ExtremaSource source = ExtremaSource::automatic;

    const std::vector<std::int64_t>& of(ExtremaKind kind) const {
        return kind == ExtremaKind::peak ? peaks : troughs;
    }
    friend bool operator==(const ExtremaSet&, const ExtremaSet&) = default;
};

/// Throws InvariantError unless both lists are strictly increasing.
void validate(const ExtremaSet& set);

/// Array positions of local maxima. A run of equal values with strictly
/// lower neighbours on both sides is one maximum at its left-most position;
/// the first and last samples never qualify.
std::vector<std::size_t> local_maxima(std::span<const double> x);

/// Topographic prominence of the local maximum at array position `peak`.
/// Each side extends until a strictly higher sample or the boundary; the
/// base is the larger of the two side minima.
double prominence(std::span<const double> x, std::size_t peak);

/// Prominence of the local maximum at index k. Throws PreconditionError if
/// k is not a local maximum.
double prominence(const IndexedSeries& series, std::int64_t k);

/// Peaks: local maxima with prominence >= threshold, then distance
/// suppression in decreasing height (candidates strictly closer than
/// min_distance to a kept one are dropped). Troughs: the same on -series.
ExtremaSet find_extrema(const IndexedSeries& series, const PeakConfig& peaks, const PeakConfig& troughs);

/// The hand-picked lists shipped in data/curated_extrema.csv.
ExtremaSet curated_extrema();

struct ExtremaRow {
    ExtremaKind kind;
    std::int64_t k;
    std::optional<double> r_smooth;
    std::optional<double> r_raw;

    friend bool operator==(const ExtremaRow&, const ExtremaRow&) = default;
};

/// Peaks (input order) then troughs (input order), with the smoothed and
/// raw series looked up at each k. Throws PreconditionError naming any k
/// outside either domain.
std::vector<ExtremaRow> extrema_values(const ExtremaSet& extrema, const IndexedSeries& smoothed,
                                       const IndexedSeries& raw);

/// Rebuilds a set from table rows (order within kind preserved).
ExtremaSet extrema_from_rows(std::span<const ExtremaRow> rows, ExtremaSource source);

namespace reference {

std::vector<double> prominences(std::span<const double> x, std::span<const std::size_t> peaks);

}  // namespace reference

/// Parallel counterpart of reference::prominences.
std::vector<double> prominences(std::span<const double> x, std::span<const std::size_t> peaks);

}  // namespace stanley
