#pragma once

// Plot-ready data for the three figures. Each figure is a CSV with header
// `layer,x,y` plus a FigureSpec JSON:
//   {figure_id, skip, annotations: [{type: "hline", y} |
//                                   {type: "affine", slope, intercept, x0, y0}]}

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "stanley/extrema.hpp"
#include "stanley/series.hpp"
#include "stanley/store.hpp"

namespace stanley {

enum class FigureId { windowed_exponent, peaks_troughs, deviation };

std::string_view to_string(FigureId id);
FigureId parse_figure_id(std::string_view name);

struct HLine {
    double y;
    friend bool operator==(const HLine&, const HLine&) = default;
};

/// y = slope * x + intercept, anchored at (x0, y0) on the line.
struct AffineLine {
    double slope, intercept, x0, y0;
    friend bool operator==(const AffineLine&, const AffineLine&) = default;
};

using Annotation = std::variant<HLine, AffineLine>;

class FigureSpec {
   public:
    /// Throws PreconditionError for a negative skip or annotations on a
    /// figure other than deviation.
    FigureSpec(FigureId id, std::int64_t skip, std::vector<Annotation> annotations = {});

    /// skip 0 for windowed_exponent; skip 20 for the others, and for
    /// deviation the y = -0.64 and y = -0.1 x - 0.14 guide lines.
    static FigureSpec defaults(FigureId id);

    FigureId id() const { return id_; }
    std::int64_t skip() const { return skip_; }
    const std::vector<Annotation>& annotations() const { return annotations_; }

    friend bool operator==(const FigureSpec&, const FigureSpec&) = default;

   private:
    FigureId id_;
    std::int64_t skip_;
    std::vector<Annotation> annotations_;
};

Json to_json(const FigureSpec& spec);
/// Throws FormatError on schema violations.
FigureSpec figure_spec_from_json(const Json& j);

struct FigurePoint {
    std::string layer;
    double x;
    double y;
    friend bool operator==(const FigurePoint&, const FigurePoint&) = default;
};

/// Layer "alpha": x = k, y = alpha_k; the first `skip` samples dropped.
std::vector<FigurePoint> windowed_figure(const IndexedSeries& windowed, const FigureSpec& spec);

/// Layers "raw" and "smoothed" (x = k, `skip` samples dropped at both ends)
/// and scatter layers "peak" and "trough" at the smoothed values.
std::vector<FigurePoint> peaks_troughs_figure(const IndexedSeries& raw, const IndexedSeries& smoothed,
                                              const ExtremaSet& extrema, const FigureSpec& spec);

/// Layer "deviation": x = ln k, y = f(k); the first `skip` samples dropped.
std::vector<FigurePoint> deviation_figure(const IndexedSeries& deviation, const FigureSpec& spec);

std::string figure_csv(std::span<const FigurePoint> points);
std::vector<FigurePoint> parse_figure_csv(std::string_view text);

}  // namespace stanley
