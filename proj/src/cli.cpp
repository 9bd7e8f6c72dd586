#include "stanley/cli.hpp"

#include <chrono>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "stanley/error.hpp"
#include "stanley/extrema.hpp"
#include "stanley/figure.hpp"
#include "stanley/manifest.hpp"
#include "stanley/regression.hpp"
#include "stanley/sequence.hpp"
#include "stanley/series.hpp"
#include "stanley/store.hpp"
#include "stanley/version.hpp"

namespace stanley::cli {

namespace {

using Clock = std::chrono::steady_clock;

struct Globals {
    std::string out_dir = ".";
    std::string manifest;
    bool quiet = false;
};

struct GenerateArgs {
    std::string seed = "0,4";
    std::size_t length = 20000;
    std::string out = "sequence.csv";
    std::string strategy = "bitset-scan";
    std::size_t progress_interval = 1000;
    bool parallel = false;
};

struct AnalyzeArgs {
    std::string sequence;
    std::string which;
    std::size_t window = 20;
    std::string out;
    std::size_t verify_prefix = 2000;
};

struct ExtremaArgs {
    std::string series;
    std::size_t smooth = 25;
    bool truncate_edges = false;
    std::int64_t min_dist = 50;
    double prom_peak = 0.005;
    double prom_trough = 0.003;
    std::string curated;
    std::string out = "extrema.csv";
    std::string smoothed_out;
};

struct FitArgs {
    std::string extrema;
    std::string kind;
    std::optional<double> fix_A;
    bool sweep = false;
    std::string use = "raw";
    std::string out;
};

struct FigureArgs {
    std::string figure;
    std::string sequence;
    std::size_t window = 20;
    std::size_t smooth = 25;
    std::string extrema;
    std::optional<std::int64_t> skip;
    std::string out;
    std::size_t verify_prefix = 2000;
};

class Run {
   public:
    Run(const Globals& g, std::string command, std::ostream& err)
        : g_(g), err_(err), start_(Clock::now()) {
        manifest_.tool_version = kVersion;
        manifest_.command = std::move(command);
    }

    fs::path output(const std::string& name) const {
        const fs::path p(name);
        return p.is_absolute() ? p : fs::path(g_.out_dir) / p;
    }

    void param(const std::string& key, Json value) { manifest_.parameters[key] = std::move(value); }
    void input(const fs::path& p) { manifest_.input_hashes[p.generic_string()] = sha256_file(p); }
    void produced(const fs::path& p) { manifest_.output_files.push_back({p.generic_string(), ""}); }

    void info(const std::string& msg) const {
        if (!g_.quiet) err_ << msg << '\n';
    }

    double elapsed() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

    /// Writes the manifest next to `primary` (or at --manifest) and re-verifies it.
    void finish(const fs::path& primary) {
        manifest_.wall_clock_seconds = elapsed();
        fs::path path = g_.manifest.empty() ? fs::path(primary.string() + ".manifest.json") : fs::path(g_.manifest);
        write_manifest(manifest_, path);
        verify_manifest(path);
        info("manifest: " + path.string());
    }

   private:
    const Globals& g_;
    std::ostream& err_;
    Clock::time_point start_;
    RunManifest manifest_;
};

std::vector<Term> parse_seed(const std::string& text) {
    std::vector<Term> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_int(item, "--seed"));
    return out;
}

int cmd_generate(const Globals& g, const GenerateArgs& a, std::ostream& out, std::ostream& err) {
    Run run(g, "generate", err);
    const Seed seed(parse_seed(a.seed));
    GenerateOptions opts;
    opts.strategy = parse_strategy(a.strategy);
    opts.parallel = a.parallel;
    opts.progress_interval = a.progress_interval;
    opts.progress = g.quiet ? nullptr : &err;

    const auto seq = generate(seed, a.length, opts);
    const auto path = run.output(a.out);
    save_sequence(seq, path, {kVersion, run.elapsed()});

    run.param("seed", std::vector<Term>(seed.elements().begin(), seed.elements().end()));
    run.param("length", a.length);
    run.param("strategy", a.strategy);
    run.param("parallel", a.parallel);
    run.produced(path);
    run.produced(sidecar_path(path));
    run.finish(path);
    out << "wrote " << seq.size() << " terms to " << path.string() << " (last " << seq.terms().back() << ")\n";
    return 0;
}

int cmd_analyze(const Globals& g, const AnalyzeArgs& a, std::ostream& out, std::ostream& err) {
    Run run(g, "analyze", err);
    const auto seq = load_sequence(a.sequence, {a.verify_prefix});
    run.input(a.sequence);

    IndexedSeries series;
    Json prov = {{"source", a.sequence}, {"source_sha256", sha256_file(a.sequence)}, {"which", a.which}};
    if (a.which == "ratio") {
        series = exponent_ratio(seq);
    } else if (a.which == "windowed") {
        series = windowed_exponent(seq, a.window);
        prov["window"] = a.window;
        run.param("window", a.window);
    } else if (a.which == "deviation") {
        series = deviation_series(seq);
    } else {
        throw PreconditionError("unknown analysis '" + a.which + "'");
    }
    const auto path = run.output(a.out.empty() ? a.which + ".csv" : a.out);
    save_series(series, path, prov);

    run.param("which", a.which);
    run.produced(path);
    run.produced(sidecar_path(path));
    run.finish(path);
    out << "wrote " << series.size() << " points (k = " << series.first_k() << ".." << series.last_k() << ") to "
        << path.string() << '\n';
    return 0;
}

int cmd_extrema(const Globals& g, const ExtremaArgs& a, std::ostream& out, std::ostream& err) {
    Run run(g, "extrema", err);
    const auto raw = load_series(a.series);
    run.input(a.series);
    const SmoothingConfig smooth(a.smooth,
                                 a.truncate_edges ? SmoothingConfig::Edge::truncate : SmoothingConfig::Edge::zero_pad);
    const auto smoothed = moving_average(raw, smooth);

    ExtremaSet set;
    if (a.curated.empty()) {
        set = find_extrema(raw.size() >= 3 ? smoothed : raw, PeakConfig(a.min_dist, a.prom_peak),
                           PeakConfig(a.min_dist, a.prom_trough));
    } else if (a.curated == "builtin") {
        set = curated_extrema();
    } else {
        set = extrema_from_rows(load_extrema(a.curated), ExtremaSource::manual);
        validate(set);
        run.input(a.curated);
    }
    const auto rows = extrema_values(set, smoothed, raw);
    const auto path = run.output(a.out);
    write_file(path, extrema_csv(rows));
    run.produced(path);
    if (!a.smoothed_out.empty()) {
        const auto sp = run.output(a.smoothed_out);
        save_series(smoothed, sp, {{"source", a.series}, {"window", a.smooth}});
        run.produced(sp);
        run.produced(sidecar_path(sp));
    }

    run.param("smooth", a.smooth);
    run.param("edge", a.truncate_edges ? "truncate" : "zero-pad");
    run.param("min_dist", a.min_dist);
    run.param("prom_peak", a.prom_peak);
    run.param("prom_trough", a.prom_trough);
    run.param("source", a.curated.empty() ? "automatic" : "manual");
    run.finish(path);
    out << "wrote " << set.peaks.size() << " peaks and " << set.troughs.size() << " troughs to " << path.string()
        << '\n';
    return 0;
}

Json report_json(const GrowthFit& f) {
    return {
        {"label", f.label},
        {"subset", to_string(f.subset)},
        {"fixed_A", f.fixed_A ? Json(*f.fixed_A) : Json(nullptr)},
        {"A", f.A},
        {"B", f.B},
        {"C", f.C},
        {"r_squared", f.r_squared},
        {"n_points", f.k_values.size()},
        {"k_values", f.k_values},
        {"note", "A = 2, B = -1 corresponds to growth Theta(k^2 / log k)"},
    };
}

int cmd_fit(const Globals& g, const FitArgs& a, std::ostream& out, std::ostream& err) {
    Run run(g, "fit", err);
    const auto kind = parse_extrema_kind(a.kind);
    const auto rows = load_extrema(a.extrema);
    run.input(a.extrema);
    if (a.use != "raw" && a.use != "smooth") throw PreconditionError("--use must be raw or smooth");

    std::vector<std::int64_t> ks;
    std::vector<double> rs;
    for (const auto& row : rows) {
        if (row.kind != kind) continue;
        const auto& v = a.use == "raw" ? row.r_raw : row.r_smooth;
        if (!v) throw FormatError("extrema row k=" + std::to_string(row.k) + " has no r_" + a.use + " value");
        ks.push_back(row.k);
        rs.push_back(*v);
    }
    const FitInput input(std::string(to_string(kind)) + "s", std::move(ks), std::move(rs));
    const auto fits = a.sweep ? robustness_sweep(input, a.fix_A) : std::vector{fit_growth_model(input, a.fix_A)};

    Json reports = Json::array();
    for (const auto& f : fits) reports.push_back(report_json(f));
    const auto path = run.output(a.out.empty() ? "fit_" + a.kind + ".json" : a.out);
    write_file(path, reports.dump(2) + "\n");

    run.param("kind", a.kind);
    run.param("fix_A", a.fix_A ? Json(*a.fix_A) : Json(nullptr));
    run.param("sweep", a.sweep);
    run.param("use", a.use);
    run.produced(path);
    run.finish(path);
    for (const auto& f : fits) {
        out << input.label() << " (" << to_string(f.subset) << ", "
            << (f.fixed_A ? "A=" + format_double(*f.fixed_A) : std::string("A free")) << "): A = " << format_double(f.A)
            << " B = " << format_double(f.B) << " C = " << format_double(f.C)
            << " R^2 = " << format_double(f.r_squared) << '\n';
    }
    return 0;
}

int cmd_figure_data(const Globals& g, const FigureArgs& a, std::ostream& out, std::ostream& err) {
    Run run(g, "figure-data", err);
    const auto id = parse_figure_id(a.figure);
    auto spec = FigureSpec::defaults(id);
    if (a.skip) spec = FigureSpec(id, *a.skip, spec.annotations());

    const auto seq = load_sequence(a.sequence, {a.verify_prefix});
    run.input(a.sequence);

    std::vector<FigurePoint> points;
    switch (id) {
        case FigureId::windowed_exponent:
            points = windowed_figure(windowed_exponent(seq, a.window), spec);
            run.param("window", a.window);
            break;
        case FigureId::deviation:
            points = deviation_figure(deviation_series(seq), spec);
            break;
        case FigureId::peaks_troughs: {
            const auto raw = exponent_ratio(seq);
            const auto smoothed = moving_average(raw, SmoothingConfig(a.smooth));
            ExtremaSet set;
            if (a.extrema.empty()) {
                set = find_extrema(smoothed, PeakConfig(50, 0.005), PeakConfig(50, 0.003));
            } else {
                set = extrema_from_rows(load_extrema(a.extrema), ExtremaSource::manual);
                run.input(a.extrema);
            }
            points = peaks_troughs_figure(raw, smoothed, set, spec);
            run.param("smooth", a.smooth);
            break;
        }
    }

    const auto path = run.output(a.out.empty() ? a.figure + ".csv" : a.out);
    auto spec_path = path;
    spec_path.replace_extension(".spec.json");
    write_file(path, figure_csv(points));
    write_file(spec_path, to_json(spec).dump(2) + "\n");

    run.param("figure", a.figure);
    run.param("skip", spec.skip());
    run.produced(path);
    run.produced(spec_path);
    run.finish(path);
    out << "wrote " << points.size() << " points to " << path.string() << " and spec " << spec_path.string() << '\n';
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Greedy 3-AP-free (Stanley) sequences and their growth-rate analysis", "stanley"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    Globals g;
    app.add_option("--out-dir", g.out_dir, "Directory for relative output paths")->capture_default_str();
    app.add_option("--manifest", g.manifest, "Run manifest path (default: <output>.manifest.json)");
    app.add_flag("--quiet,-q", g.quiet, "Suppress progress and info messages");

    GenerateArgs ga;
    auto* gen = app.add_subcommand("generate", "Generate a Stanley sequence");
    gen->add_option("--seed", ga.seed, "Comma-separated AP-free seed")->capture_default_str();
    gen->add_option("--length", ga.length, "Number of terms")->capture_default_str()->check(CLI::PositiveNumber);
    gen->add_option("--out", ga.out, "Sequence CSV")->capture_default_str();
    gen->add_option("--strategy", ga.strategy, "Seen-set strategy")
        ->capture_default_str()
        ->check(CLI::IsMember({"bitset-scan", "hash-scan"}));
    gen->add_option("--progress-interval", ga.progress_interval, "Terms between progress lines (0: off)")
        ->capture_default_str();
    gen->add_flag("--parallel", ga.parallel, "Test candidate blocks concurrently (bitset-scan)");

    AnalyzeArgs aa;
    auto* ana = app.add_subcommand("analyze", "Compute a derived series from a sequence");
    ana->add_option("--sequence", aa.sequence, "Sequence CSV")->required()->check(CLI::ExistingFile);
    ana->add_option("--which", aa.which, "ratio | windowed | deviation")
        ->required()
        ->check(CLI::IsMember({"ratio", "windowed", "deviation"}));
    ana->add_option("--window", aa.window, "Half-width w of the windowed exponent")->capture_default_str();
    ana->add_option("--out", aa.out, "Series CSV (default: <which>.csv)");
    ana->add_option("--verify-prefix", aa.verify_prefix, "Terms re-verified on load")->capture_default_str();

    ExtremaArgs ea;
    auto* ext = app.add_subcommand("extrema", "Smooth r_k and locate peaks/troughs");
    ext->add_option("--series", ea.series, "r_k series CSV (from analyze --which ratio)")
        ->required()
        ->check(CLI::ExistingFile);
    ext->add_option("--smooth", ea.smooth, "Odd moving-average window L")->capture_default_str();
    ext->add_flag("--truncate-edges", ea.truncate_edges, "Average only in-range samples at the edges");
    ext->add_option("--min-dist", ea.min_dist, "Minimum separation in k")->capture_default_str();
    ext->add_option("--prom-peak", ea.prom_peak, "Minimum peak prominence")->capture_default_str();
    ext->add_option("--prom-trough", ea.prom_trough, "Minimum trough prominence")->capture_default_str();
    ext->add_option("--curated", ea.curated, "Curated extrema CSV, or 'builtin' for the shipped lists");
    ext->add_option("--out", ea.out, "Extrema CSV")->capture_default_str();
    ext->add_option("--smoothed-out", ea.smoothed_out, "Also write the smoothed series here");

    FitArgs fa;
    auto* fit = app.add_subcommand("fit", "Fit r_k ~ A + B lnln k/ln k + C/ln k");
    fit->add_option("--extrema", fa.extrema, "Extrema CSV")->required()->check(CLI::ExistingFile);
    fit->add_option("--kind", fa.kind, "peak | trough")->required()->check(CLI::IsMember({"peak", "trough"}));
    fit->add_option("--fix-A", fa.fix_A, "Hold A fixed at this value");
    fit->add_flag("--sweep", fa.sweep, "Also fit with the last and the first point removed");
    fit->add_option("--use", fa.use, "raw | smooth r values")
        ->capture_default_str()
        ->check(CLI::IsMember({"raw", "smooth"}));
    fit->add_option("--out", fa.out, "Fit report JSON (default: fit_<kind>.json)");

    FigureArgs fg;
    auto* fig = app.add_subcommand("figure-data", "Emit plot-ready data and a figure spec");
    fig->add_option("--figure", fg.figure, "windowed_exponent | peaks_troughs | deviation")
        ->required()
        ->check(CLI::IsMember({"windowed_exponent", "peaks_troughs", "deviation"}));
    fig->add_option("--sequence", fg.sequence, "Sequence CSV")->required()->check(CLI::ExistingFile);
    fig->add_option("--window", fg.window, "Windowed exponent half-width")->capture_default_str();
    fig->add_option("--smooth", fg.smooth, "Moving-average window for peaks_troughs")->capture_default_str();
    fig->add_option("--extrema", fg.extrema, "Extrema CSV for peaks_troughs (default: automatic)");
    fig->add_option("--skip", fg.skip, "Samples dropped (override the figure default)");
    fig->add_option("--out", fg.out, "Figure CSV (default: <figure>.csv)");
    fig->add_option("--verify-prefix", fg.verify_prefix, "Terms re-verified on load")->capture_default_str();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*gen) return cmd_generate(g, ga, out, err);
        if (*ana) return cmd_analyze(g, aa, out, err);
        if (*ext) return cmd_extrema(g, ea, out, err);
        if (*fit) return cmd_fit(g, fa, out, err);
        if (*fig) return cmd_figure_data(g, fg, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

}  // namespace stanley::cli
