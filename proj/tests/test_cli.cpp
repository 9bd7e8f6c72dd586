#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "stanley/cli.hpp"
#include "stanley/figure.hpp"
#include "stanley/manifest.hpp"
#include "stanley/store.hpp"
#include "tmpdir.hpp"

#include <sstream>

using namespace stanley;

namespace {

struct Result {
    int status;
    std::string out, err;
};

Result run_cli(const TempDir& dir, std::vector<std::string> args) {
    args.insert(args.begin(), {"stanley", "--out-dir", dir.path().string()});
    std::ostringstream out, err;
    const int status = stanley::cli::run(args, out, err);
    return {status, out.str(), err.str()};
}

std::string p(const TempDir& dir, const std::string& name) { return (dir / name).string(); }

}  // namespace

TEST_CASE("generate writes the sequence, sidecar and a verified manifest") {
    TempDir dir("cli_gen");
    auto r = run_cli(dir, {"generate", "--seed", "0,4", "--length", "2", "--out", "seed.csv"});
    CHECK(r.status == 0);
    CHECK(read_file(dir / "seed.csv") == "k,a_k\n1,0\n2,4\n");
    CHECK(fs::exists(dir / "seed.csv.meta.json"));
    const auto m = verify_manifest(dir / "seed.csv.manifest.json");
    CHECK(m.command == "generate");
    CHECK(m.parameters["length"] == 2);
    CHECK(m.output_files.size() == 2);
}

TEST_CASE("generate rejects a seed containing a 3-AP") {
    TempDir dir("cli_bad");
    const auto r = run_cli(dir, {"generate", "--seed", "0,2,4", "--length", "10"});
    CHECK(r.status != 0);
    CHECK(r.err.find("0, 2, 4") != std::string::npos);
    CHECK_FALSE(fs::exists(dir / "sequence.csv"));
}

TEST_CASE("generate is byte-identical across runs and strategies") {
    TempDir dir("cli_det");
    CHECK(run_cli(dir, {"-q", "generate", "--length", "700", "--out", "a.csv"}).status == 0);
    CHECK(run_cli(dir, {"-q", "generate", "--length", "700", "--out", "b.csv"}).status == 0);
    CHECK(run_cli(dir, {"-q", "generate", "--length", "700", "--out", "c.csv", "--strategy", "hash-scan"}).status == 0);
    CHECK(run_cli(dir, {"-q", "generate", "--length", "700", "--out", "d.csv", "--parallel"}).status == 0);
    const auto a = read_file(dir / "a.csv");
    CHECK(a == read_file(dir / "b.csv"));
    CHECK(a == read_file(dir / "c.csv"));
    CHECK(a == read_file(dir / "d.csv"));
}

TEST_CASE("quiet suppresses progress; default prints it") {
    TempDir dir("cli_q");
    auto loud = run_cli(dir, {"generate", "--length", "50", "--progress-interval", "10", "--out", "l.csv"});
    CHECK(loud.err.find("generated 50 / 50") != std::string::npos);
    auto quiet = run_cli(dir, {"--quiet", "generate", "--length", "50", "--progress-interval", "10", "--out", "q.csv"});
    CHECK(quiet.err.empty());
}

TEST_CASE("explicit manifest path") {
    TempDir dir("cli_m");
    CHECK(run_cli(dir, {"--manifest", p(dir, "run.json"), "generate", "--length", "20"}).status == 0);
    CHECK_NOTHROW(verify_manifest(dir / "run.json"));
}

TEST_CASE("analyze") {
    TempDir dir("cli_ana");
    REQUIRE(run_cli(dir, {"-q", "generate", "--length", "300", "--out", "s.csv"}).status == 0);

    CHECK(run_cli(dir, {"-q", "analyze", "--sequence", p(dir, "s.csv"), "--which", "windowed", "--window", "20"}).status ==
          0);
    const auto w = load_series(dir / "windowed.csv");
    CHECK(w.size() == 300 - 2 * 20 - 1);
    CHECK(w.first_k() == 22);

    CHECK(run_cli(dir, {"-q", "analyze", "--sequence", p(dir, "s.csv"), "--which", "deviation"}).status == 0);
    const auto f = load_series(dir / "deviation.csv");
    CHECK(f.first_k() == 2);
    CHECK(f.last_k() == 300);
    const auto meta = Json::parse(read_file(dir / "deviation.csv.meta.json"));
    CHECK(meta["provenance"]["source_sha256"] == sha256_file(dir / "s.csv"));

    write_file(dir / "one.csv", "k,a_k\n1,0\n");
    const auto r = run_cli(dir, {"-q", "analyze", "--sequence", p(dir, "one.csv"), "--which", "ratio"});
    CHECK(r.status != 0);
    CHECK(r.err.find("error") != std::string::npos);

    CHECK(run_cli(dir, {"-q", "analyze", "--sequence", p(dir, "s.csv"), "--which", "windowed", "--window", "200"}).status !=
          0);
}

TEST_CASE("extrema, fit and figure-data pipeline on a short run") {
    TempDir dir("cli_pipe");
    REQUIRE(run_cli(dir, {"-q", "generate", "--length", "3000", "--out", "s.csv"}).status == 0);
    REQUIRE(run_cli(dir, {"-q", "analyze", "--sequence", p(dir, "s.csv"), "--which", "ratio", "--out", "r.csv"}).status == 0);

    CHECK(run_cli(dir, {"-q", "extrema", "--series", p(dir, "r.csv"), "--out", "auto.csv", "--smoothed-out", "rs.csv"})
              .status == 0);
    const auto auto_rows = load_extrema(dir / "auto.csv");
    CHECK_FALSE(auto_rows.empty());
    const auto smoothed = load_series(dir / "rs.csv");
    for (const auto& row : auto_rows) CHECK(*row.r_smooth == smoothed.at_k(row.k));

    write_file(dir / "cur.csv",
               "kind,k,r_smooth,r_raw\npeak,293,,\npeak,480,,\npeak,750,,\npeak,1285,,\npeak,2100,,\n"
               "trough,365,,\ntrough,618,,\ntrough,1001,,\ntrough,1765,,\n");
    CHECK(run_cli(dir, {"-q", "extrema", "--series", p(dir, "r.csv"), "--curated", p(dir, "cur.csv"), "--out", "c.csv"})
              .status == 0);
    const auto rows = load_extrema(dir / "c.csv");
    REQUIRE(rows.size() == 9);
    const auto raw = load_series(dir / "r.csv");
    for (const auto& row : rows) CHECK(*row.r_raw == raw.at_k(row.k));

    auto fr = run_cli(dir, {"-q", "fit", "--extrema", p(dir, "c.csv"), "--kind", "peak", "--sweep", "--out", "fp.json"});
    CHECK(fr.status == 0);
    const auto reports = Json::parse(read_file(dir / "fp.json"));
    REQUIRE(reports.size() == 3);
    CHECK(reports[0]["subset"] == "full");
    CHECK(reports[1]["subset"] == "drop_last");
    CHECK(reports[2]["subset"] == "drop_first");
    CHECK(reports[0]["fixed_A"].is_null());
    CHECK(reports[0]["n_points"] == 5);
    CHECK(reports[1]["k_values"].back() == 1285);
    for (const char* key : {"label", "A", "B", "C", "r_squared"}) CHECK(reports[0].contains(key));

    CHECK(run_cli(dir, {"-q", "fit", "--extrema", p(dir, "c.csv"), "--kind", "trough", "--fix-A", "2"}).status == 0);
    const auto t = Json::parse(read_file(dir / "fit_trough.json"));
    CHECK(t[0]["fixed_A"] == 2.0);
    CHECK(t[0]["A"] == 2.0);

    write_file(dir / "two.csv", "kind,k,r_smooth,r_raw\npeak,293,,1.5\npeak,480,,1.6\n");
    const auto under = run_cli(dir, {"-q", "fit", "--extrema", p(dir, "two.csv"), "--kind", "peak"});
    CHECK(under.status != 0);
    CHECK(under.err.find("A free needs at least 3") != std::string::npos);

    CHECK(run_cli(dir, {"-q", "fit", "--extrema", p(dir, "cur.csv"), "--kind", "peak"}).status != 0);

    for (const char* fig : {"windowed_exponent", "peaks_troughs", "deviation"}) {
        CHECK(run_cli(dir, {"-q", "figure-data", "--figure", fig, "--sequence", p(dir, "s.csv")}).status == 0);
        const auto spec = figure_spec_from_json(Json::parse(read_file(dir / (std::string(fig) + ".spec.json"))));
        CHECK(spec.id() == parse_figure_id(fig));
        const auto pts = parse_figure_csv(read_file(dir / (std::string(fig) + ".csv")));
        CHECK_FALSE(pts.empty());
        CHECK_NOTHROW(verify_manifest(dir / (std::string(fig) + ".csv.manifest.json")));
    }
    const auto w = parse_figure_csv(read_file(dir / "windowed_exponent.csv"));
    CHECK(w.front().x == 22);
    const auto d = parse_figure_csv(read_file(dir / "deviation.csv"));
    CHECK(d.front().x == std::log(22.0));
    CHECK(d.back().x == std::log(3000.0));

    CHECK(run_cli(dir, {"-q", "figure-data", "--figure", "peaks_troughs", "--sequence", p(dir, "s.csv"), "--extrema",
                    p(dir, "c.csv"), "--out", "pt.csv"})
              .status == 0);
    std::size_t scatter = 0;
    for (const auto& pt : parse_figure_csv(read_file(dir / "pt.csv")))
        scatter += pt.layer == "peak" || pt.layer == "trough";
    CHECK(scatter == 9);
}

TEST_CASE("extrema on an empty series file is a parse error") {
    TempDir dir("cli_empty");
    write_file(dir / "empty.csv", "");
    const auto r = run_cli(dir, {"extrema", "--series", p(dir, "empty.csv")});
    CHECK(r.status != 0);
    CHECK(r.err.find("empty") != std::string::npos);
}

TEST_CASE("data files are byte-identical on re-run") {
    TempDir dir("cli_rerun");
    REQUIRE(run_cli(dir, {"-q", "generate", "--length", "400", "--out", "s.csv"}).status == 0);
    for (int i = 0; i < 2; ++i) {
        REQUIRE(run_cli(dir, {"-q", "analyze", "--sequence", p(dir, "s.csv"), "--which", "ratio",
                          "--out", "r" + std::to_string(i) + ".csv"}).status == 0);
        REQUIRE(run_cli(dir, {"-q", "extrema", "--series", p(dir, "r0.csv"), "--min-dist", "10",
                          "--out", "e" + std::to_string(i) + ".csv"}).status == 0);
    }
    CHECK(read_file(dir / "r0.csv") == read_file(dir / "r1.csv"));
    CHECK(read_file(dir / "e0.csv") == read_file(dir / "e1.csv"));
}

TEST_CASE("usage errors") {
    TempDir dir("cli_usage");
    CHECK(run_cli(dir, {}).status != 0);
    CHECK(run_cli(dir, {"generate", "--strategy", "bloom"}).status != 0);
    CHECK(run_cli(dir, {"fit", "--kind", "peak"}).status != 0);
    CHECK(run_cli(dir, {"generate", "--length", "10", "--seed", "0,x"}).status != 0);
}
