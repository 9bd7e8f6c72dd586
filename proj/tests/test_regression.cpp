#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "oracles.hpp"
#include "stanley/error.hpp"
#include "stanley/regression.hpp"

#include <cmath>
#include <random>

using namespace stanley;

namespace {

// a_k of the {0,4} sequence at the curated indices (N = 20000 run).
const std::vector<std::int64_t> kPeakK = {293, 480, 750, 1285, 2100, 3486, 5538, 9131, 14957};
const std::vector<std::int64_t> kPeakA = {8150, 19967, 45463, 123478, 312026, 784196, 1904258, 4823090, 11976983};
const std::vector<std::int64_t> kTroughK = {365, 618, 1001, 1765, 3107, 4854, 8410, 14179};
const std::vector<std::int64_t> kTroughA = {10790, 27456, 64597, 172163, 466774, 1050606, 2772751, 7028273};

FitInput curated(const char* label, const std::vector<std::int64_t>& ks, const std::vector<std::int64_t>& as) {
    std::vector<double> r;
    for (std::size_t i = 0; i < ks.size(); ++i)
        r.push_back(std::log(static_cast<double>(as[i])) / std::log(static_cast<double>(ks[i])));
    return FitInput(label, ks, r);
}

FitInput synthetic(double A, double B, double C, const std::vector<std::int64_t>& ks) {
    std::vector<double> r;
    for (auto k : ks) r.push_back(oracle::model(A, B, C, k));
    return FitInput("synthetic", ks, r);
}

struct Expected {
    double A, B, C, R2;
};

void check_fit(const GrowthFit& f, const Expected& e) {
    CHECK(std::abs(f.A - e.A) <= 1e-6);
    CHECK(std::abs(f.B - e.B) <= 1e-6);
    CHECK(std::abs(f.C - e.C) <= 1e-6);
    CHECK(std::abs(f.r_squared - e.R2) <= 1e-9);
}

}  // namespace

TEST_CASE("published fits on the curated extrema") {
    const auto peaks = curated("peaks", kPeakK, kPeakA);
    const auto troughs = curated("troughs", kTroughK, kTroughA);

    const auto pf = robustness_sweep(peaks);
    REQUIRE(pf.size() == 3);
    CHECK(pf[0].subset == FitSubset::full);
    CHECK(pf[1].subset == FitSubset::drop_last);
    CHECK(pf[2].subset == FitSubset::drop_first);
    check_fit(pf[0], {1.9471086644613707, -0.6635108713154201, -0.9061856801140058, 0.9991547825053999});
    check_fit(pf[1], {1.98416458371712, -0.9175392149489754, -0.6735972057449692, 0.9992440762971366});
    check_fit(pf[2], {1.899948394621106, -0.2899403839734418, -1.3024010728889466, 0.9990412555574135});

    const auto p2 = robustness_sweep(peaks, 2.0);
    check_fit(p2[0], {2.0, -1.0503853115520978, -0.5288618840582724, 0.99881703775137});
    check_fit(p2[1], {2.0, -1.0305224682459564, -0.565939141120064, 0.9992203523314546});
    check_fit(p2[2], {2.0, -1.0539592912295694, -0.5213961090436496, 0.9981449829774532});

    const auto tf = robustness_sweep(troughs);
    check_fit(tf[0], {1.8260681683738214, -0.43568639887707306, -0.7093619926349914, 0.9980947124803357});
    check_fit(tf[1], {1.8159989832953467, -0.3652401650649837, -0.7753932406157733, 0.9974343578780224});
    check_fit(tf[2], {1.8928451151056718, -0.9716702942910586, -0.13305801936408185, 0.9978143593204098});

    const auto t2 = robustness_sweep(troughs, 2.0);
    check_fit(t2[0], {2.0, -1.729749295822425, 0.5773223100098374, 0.9921324249943385});
    check_fit(t2[1], {2.0, -1.6982759403090761, 0.5177648430783589, 0.9923355870025801});
    check_fit(t2[2], {2.0, -1.804952644808632, 0.7353980066262816, 0.9961298225748858});
    CHECK(t2[0].fixed_A == 2.0);
    CHECK(t2[0].k_values == kTroughK);
}

TEST_CASE("three exact model points are interpolated") {
    const auto f = fit_growth_model(synthetic(2, -1, 0, {100, 1000, 10000}));
    CHECK(f.A == doctest::Approx(2).epsilon(1e-9));
    CHECK(f.B == doctest::Approx(-1).epsilon(1e-9));
    CHECK(std::abs(f.C) <= 1e-9);
    CHECK(f.r_squared == doctest::Approx(1).epsilon(1e-9));
}

TEST_CASE("sweep on exact data gives identical coefficients") {
    const auto fits = robustness_sweep(synthetic(1.9, -0.8, 0.3, {50, 200, 900, 4000, 17000}));
    for (const auto& f : fits) {
        CHECK(f.A == doctest::Approx(1.9).epsilon(1e-9));
        CHECK(f.B == doctest::Approx(-0.8).epsilon(1e-9));
        CHECK(f.C == doctest::Approx(0.3).epsilon(1e-9));
    }
    CHECK(fits[1].k_values.back() == 4000);
    CHECK(fits[2].k_values.front() == 200);
}

TEST_CASE("fit errors") {
    CHECK_THROWS_AS(fit_growth_model(synthetic(2, -1, 0, {100, 1000})), FitError);
    CHECK_NOTHROW(fit_growth_model(synthetic(2, -1, 0, {100, 1000}), 2.0));
    CHECK_THROWS_AS(fit_growth_model(synthetic(2, -1, 0, {100}), 2.0), FitError);
    CHECK_THROWS_AS(robustness_sweep(synthetic(2, -1, 0, {100, 1000, 10000})), FitError);
    // Three adjacent huge k make the columns indistinguishable.
    const std::int64_t big = 1'000'000'000'000'000;
    CHECK_THROWS_WITH_AS(fit_growth_model(synthetic(2, -1, 0, {big, big + 1, big + 2})),
                         doctest::Contains("rank deficient"), FitError);
}

TEST_CASE("fit input validation") {
    CHECK_THROWS_AS(FitInput("x", {2, 5, 9}, {1, 1, 1}), PreconditionError);
    CHECK_THROWS_AS(FitInput("x", {5, 5, 9}, {1, 1, 1}), PreconditionError);
    CHECK_THROWS_AS(FitInput("x", {5, 6}, {1}), PreconditionError);
    CHECK_THROWS_AS(FitInput("x", {5, 6}, {1, NAN}), PreconditionError);
}

TEST_CASE("degenerate ss_tot gives R^2 = 1") {
    const FitInput flat("flat", {10, 100, 1000, 10000}, {1.5, 1.5, 1.5, 1.5});
    CHECK(fit_growth_model(flat).r_squared == 1.0);
}

TEST_CASE("agreement with a long-double normal-equation oracle") {
    std::mt19937_64 rng(23);
    std::normal_distribution<double> noise(0, 0.01);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<std::int64_t> ks;
        std::int64_t k = 20 + static_cast<std::int64_t>(rng() % 50);
        for (int i = 0; i < 8; ++i) ks.push_back(k = k * 2 + static_cast<std::int64_t>(rng() % 7));
        std::vector<double> r;
        for (auto kk : ks) r.push_back(oracle::model(1.95, -0.7, -0.8, kk) + noise(rng));
        const FitInput in("noisy", ks, r);
        const auto got = fit_growth_model(in);

        const auto x = design_matrix(ks, true);
        std::vector<std::vector<long double>> ata(3, std::vector<long double>(3, 0));
        std::vector<long double> atb(3, 0);
        for (std::size_t i = 0; i < ks.size(); ++i)
            for (std::size_t a = 0; a < 3; ++a) {
                atb[a] += static_cast<long double>(x[i * 3 + a]) * r[i];
                for (std::size_t b = 0; b < 3; ++b) ata[a][b] += static_cast<long double>(x[i * 3 + a]) * x[i * 3 + b];
            }
        const auto want = oracle::solve(ata, atb);
        CHECK(got.A == doctest::Approx(want[0]).epsilon(1e-7));
        CHECK(got.B == doctest::Approx(want[1]).epsilon(1e-7));
        CHECK(got.C == doctest::Approx(want[2]).epsilon(1e-7));
    }
}

TEST_CASE("regression properties") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> ud(-2, 2);
    std::normal_distribution<double> noise(0, 0.005);

    for (int trial = 0; trial < 25; ++trial) {
        std::vector<std::int64_t> ks;
        std::int64_t k = 100 + static_cast<std::int64_t>(rng() % 200);
        for (int i = 0; i < 9; ++i) ks.push_back(k = k * 8 / 5 + static_cast<std::int64_t>(rng() % 11));
        const double A = 1.8 + 0.3 * (ud(rng) + 2) / 4, B = ud(rng), C = ud(rng);

        SUBCASE("exact recovery") {
            const auto f = fit_growth_model(synthetic(A, B, C, ks));
            CHECK(std::abs(f.A - A) <= 1e-9 * std::max(1.0, std::abs(A)));
            CHECK(std::abs(f.B - B) <= 1e-9 * std::max(1.0, std::abs(B)));
            CHECK(std::abs(f.C - C) <= 1e-9 * std::max(1.0, std::abs(C)));
        }

        std::vector<double> r;
        for (auto kk : ks) r.push_back(oracle::model(A, B, C, kk) + noise(rng));
        const FitInput in("noisy", ks, r);
        const auto free_fit = fit_growth_model(in);

        SUBCASE("residuals are orthogonal to every column") {
            const auto x = design_matrix(ks, true);
            std::vector<double> res(ks.size());
            double rnorm = 0;
            for (std::size_t i = 0; i < ks.size(); ++i) {
                res[i] = r[i] - (free_fit.A * x[i * 3] + free_fit.B * x[i * 3 + 1] + free_fit.C * x[i * 3 + 2]);
                rnorm += res[i] * res[i];
            }
            for (std::size_t c = 0; c < 3; ++c) {
                double dot = 0, cn = 0;
                for (std::size_t i = 0; i < ks.size(); ++i) {
                    dot += res[i] * x[i * 3 + c];
                    cn += x[i * 3 + c] * x[i * 3 + c];
                }
                CHECK(std::abs(dot) <= 1e-8 * std::sqrt(cn) * std::max(std::sqrt(rnorm), 1.0));
            }
        }

        SUBCASE("fixing A at its free value keeps B and C") {
            const auto fixed = fit_growth_model(in, free_fit.A);
            CHECK(std::abs(fixed.B - free_fit.B) <= 1e-9);
            CHECK(std::abs(fixed.C - free_fit.C) <= 1e-9);
        }

        SUBCASE("fixed A never beats free A") {
            CHECK(fit_growth_model(in, 2.0).r_squared <= free_fit.r_squared + 1e-12);
        }

        SUBCASE("shifting r shifts A only") {
            const double s = ud(rng);
            std::vector<double> shifted(r);
            for (auto& v : shifted) v += s;
            const auto g = fit_growth_model(FitInput("shifted", ks, shifted));
            CHECK(std::abs(g.A - (free_fit.A + s)) <= 1e-9);
            CHECK(std::abs(g.B - free_fit.B) <= 1e-9);
            CHECK(std::abs(g.C - free_fit.C) <= 1e-9);
        }
    }
}

TEST_CASE("least_squares on a plain overdetermined system") {
    // y = 1 + 2x at x = 0..3
    const std::vector<double> m = {1, 0, 1, 1, 1, 2, 1, 3};
    const std::vector<double> y = {1, 3, 5, 7};
    const auto c = least_squares(m, 4, 2, y);
    CHECK(c[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(c[1] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK_THROWS_AS(least_squares(std::vector<double>{1, 2, 2, 4, 3, 6}, 3, 2, std::vector<double>{1, 2, 3}),
                    FitError);
}
