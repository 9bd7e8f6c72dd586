#include "stanley/figure.hpp"

#include <cmath>

#include "stanley/error.hpp"

namespace stanley {

std::string_view to_string(FigureId id) {
    switch (id) {
        case FigureId::windowed_exponent:
            return "windowed_exponent";
        case FigureId::peaks_troughs:
            return "peaks_troughs";
        case FigureId::deviation:
            return "deviation";
    }
    return "unknown";
}

FigureId parse_figure_id(std::string_view name) {
    if (name == "windowed_exponent") return FigureId::windowed_exponent;
    if (name == "peaks_troughs") return FigureId::peaks_troughs;
    if (name == "deviation") return FigureId::deviation;
    throw PreconditionError("unknown figure id '" + std::string(name) + "'");
}

FigureSpec::FigureSpec(FigureId id, std::int64_t skip, std::vector<Annotation> annotations)
    : id_(id), skip_(skip), annotations_(std::move(annotations)) {
    if (skip_ < 0) throw PreconditionError("figure skip must be >= 0");
    if (!annotations_.empty() && id_ != FigureId::deviation)
        throw PreconditionError("annotations are only allowed on the deviation figure");
}

FigureSpec FigureSpec::defaults(FigureId id) {
    switch (id) {
        case FigureId::windowed_exponent:
            return FigureSpec(id, 0);
        case FigureId::peaks_troughs:
            return FigureSpec(id, 20);
        case FigureId::deviation:
            // Upper guide y = -0.64; lower guide through (7, -0.84) and (10, -1.14).
            return FigureSpec(id, 20, {HLine{-0.64}, AffineLine{-0.1, -0.14, 7.0, -0.84}});
    }
    throw PreconditionError("unknown figure id");
}

Json to_json(const FigureSpec& spec) {
    Json annotations = Json::array();
    for (const auto& a : spec.annotations()) {
        if (const auto* h = std::get_if<HLine>(&a)) {
            annotations.push_back({{"type", "hline"}, {"y", h->y}});
        } else {
            const auto& l = std::get<AffineLine>(a);
            annotations.push_back(
                {{"type", "affine"}, {"slope", l.slope}, {"intercept", l.intercept}, {"x0", l.x0}, {"y0", l.y0}});
        }
    }
    return {{"figure_id", to_string(spec.id())}, {"skip", spec.skip()}, {"annotations", annotations}};
}

FigureSpec figure_spec_from_json(const Json& j) {
    try {
        std::vector<Annotation> annotations;
        for (const auto& a : j.at("annotations")) {
            const auto type = a.at("type").get<std::string>();
            if (type == "hline") {
                annotations.push_back(HLine{a.at("y").get<double>()});
            } else if (type == "affine") {
                annotations.push_back(AffineLine{a.at("slope").get<double>(), a.at("intercept").get<double>(),
                                                 a.at("x0").get<double>(), a.at("y0").get<double>()});
            } else {
                throw FormatError("unknown annotation type '" + type + "'");
            }
        }
        return FigureSpec(parse_figure_id(j.at("figure_id").get<std::string>()), j.at("skip").get<std::int64_t>(),
                          std::move(annotations));
    } catch (const Json::exception& e) {
        throw FormatError(std::string("malformed figure spec: ") + e.what());
    } catch (const PreconditionError& e) {
        throw FormatError(std::string("invalid figure spec: ") + e.what());
    }
}

namespace {

void append_layer(std::vector<FigurePoint>& out, const std::string& layer, const IndexedSeries& s,
                  std::size_t skip_front, std::size_t skip_back) {
    if (skip_front + skip_back >= s.size()) return;
    for (std::size_t i = skip_front; i < s.size() - skip_back; ++i)
        out.push_back({layer, static_cast<double>(s.k_at(i)), s.values()[i]});
}

}  // namespace

std::vector<FigurePoint> windowed_figure(const IndexedSeries& windowed, const FigureSpec& spec) {
    if (spec.id() != FigureId::windowed_exponent) throw PreconditionError("spec is not for windowed_exponent");
    std::vector<FigurePoint> out;
    append_layer(out, "alpha", windowed, static_cast<std::size_t>(spec.skip()), 0);
    return out;
}

std::vector<FigurePoint> peaks_troughs_figure(const IndexedSeries& raw, const IndexedSeries& smoothed,
                                              const ExtremaSet& extrema, const FigureSpec& spec) {
    if (spec.id() != FigureId::peaks_troughs) throw PreconditionError("spec is not for peaks_troughs");
    const auto skip = static_cast<std::size_t>(spec.skip());
    std::vector<FigurePoint> out;
    append_layer(out, "raw", raw, skip, skip);
    append_layer(out, "smoothed", smoothed, skip, skip);
    for (auto k : extrema.peaks) out.push_back({"peak", static_cast<double>(k), smoothed.at_k(k)});
    for (auto k : extrema.troughs) out.push_back({"trough", static_cast<double>(k), smoothed.at_k(k)});
    return out;
}

std::vector<FigurePoint> deviation_figure(const IndexedSeries& deviation, const FigureSpec& spec) {
    if (spec.id() != FigureId::deviation) throw PreconditionError("spec is not for deviation");
    std::vector<FigurePoint> out;
    for (std::size_t i = static_cast<std::size_t>(spec.skip()); i < deviation.size(); ++i)
        out.push_back({"deviation", std::log(static_cast<double>(deviation.k_at(i))), deviation.values()[i]});
    return out;
}

std::string figure_csv(std::span<const FigurePoint> points) {
    std::string out = "layer,x,y\n";
    for (const auto& p : points) {
        out += p.layer;
        out += ',';
        out += format_double(p.x);
        out += ',';
        out += format_double(p.y);
        out += '\n';
    }
    return out;
}

std::vector<FigurePoint> parse_figure_csv(std::string_view text) {
    if (text.empty() || text.back() != '\n') throw FormatError("figure data: empty or truncated");
    std::vector<FigurePoint> out;
    std::size_t pos = 0, line = 0;
    while (pos < text.size()) {
        const auto nl = text.find('\n', pos);
        const auto row = text.substr(pos, nl - pos);
        pos = nl + 1;
        if (line++ == 0) {
            if (row != "layer,x,y") throw FormatError("figure data: expected header 'layer,x,y'");
            continue;
        }
        const auto c1 = row.find(',');
        const auto c2 = c1 == std::string_view::npos ? c1 : row.find(',', c1 + 1);
        const auto where = "figure data line " + std::to_string(line);
        if (c2 == std::string_view::npos || row.find(',', c2 + 1) != std::string_view::npos)
            throw FormatError(where + ": expected 3 fields");
        out.push_back({std::string(row.substr(0, c1)), parse_double(row.substr(c1 + 1, c2 - c1 - 1), where),
                       parse_double(row.substr(c2 + 1), where)});
    }
    return out;
}

}  // namespace stanley
