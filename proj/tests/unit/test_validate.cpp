#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include <nlohmann/json.hpp>

#include "helios/validate.hpp"
#include "support/synthetic.hpp"

using namespace helios;

TEST_CASE("pearson") {
    std::mt19937_64 gen(1);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<double> x(500), y(500);
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = g(gen);
        y[i] = 0.5 * x[i] + g(gen);
    }
    CHECK(pearson(x, x) == doctest::Approx(1.0).epsilon(1e-15));
    std::vector<double> neg(x);
    for (auto& v : neg) v = -v;
    CHECK(pearson(x, neg) == doctest::Approx(-1.0).epsilon(1e-15));

    SUBCASE("symmetric and invariant to positive affine maps") {
        const double r = pearson(x, y);
        CHECK(pearson(y, x) == doctest::Approx(r).epsilon(1e-14));
        std::vector<double> z(y);
        for (auto& v : z) v = 3.0 * v + 100.0;
        CHECK(pearson(x, z) == doctest::Approx(r).epsilon(1e-12));
    }
    SUBCASE("matches a two-pass textbook computation") {
        long double mx = 0, my = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            mx += x[i];
            my += y[i];
        }
        mx /= x.size();
        my /= y.size();
        long double sxy = 0, sxx = 0, syy = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            sxy += (x[i] - mx) * (y[i] - my);
            sxx += (x[i] - mx) * (x[i] - mx);
            syy += (y[i] - my) * (y[i] - my);
        }
        CHECK(pearson(x, y) == doctest::Approx(static_cast<double>(sxy / std::sqrt(sxx * syy))).epsilon(1e-12));
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(pearson(std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 3}), Error);
        CHECK_THROWS_AS(pearson(std::vector<double>{1, 2}, std::vector<double>{1, 2, 3}), Error);
        CHECK_THROWS_AS(pearson(std::vector<double>{1}, std::vector<double>{1}), Error);
    }
}

TEST_CASE("daily_stat_table") {
    SUBCASE("one constant day") {
        std::map<Date, DailyProfile> days;
        const Date d = make_date(2015, 6, 17);
        days[d] = {"A", d, Season::Summer, std::vector<double>(kSamplesPerDay, 100.0)};
        const DailyStats s = daily_stat_table(days);
        CHECK(s.pooled == MeanStd{100.0, 0.0});
        CHECK(s.per_year.at(2015) == MeanStd{100.0, 0.0});
        CHECK(s.pooled_samples == MeanStd{100.0, 0.0});
    }
    SUBCASE("matches a brute-force recomputation") {
        const auto pc = helios::testing::make_planted_corpus(1, make_date(2015, 11, 1), 120, 3);
        const Corpus c = pc.corpus();
        const DailyStats s = daily_stat_table(c.days(0));
        std::map<int, std::vector<double>> means;
        std::vector<double> all, samples;
        for (const auto& p : pc.profiles) {
            double sum = 0.0;
            for (double v : p.samples) sum += v;
            means[year_of(p.date)].push_back(sum / kSamplesPerDay);
            all.push_back(sum / kSamplesPerDay);
            samples.insert(samples.end(), p.samples.begin(), p.samples.end());
        }
        const auto brute = [](const std::vector<double>& v) {
            long double m = 0;
            for (double x : v) m += x;
            m /= v.size();
            long double ss = 0;
            for (double x : v) ss += (x - m) * (x - m);
            return MeanStd{static_cast<double>(m), static_cast<double>(std::sqrt(ss / (v.size() - 1)))};
        };
        CHECK(s.days == 120);
        CHECK(s.pooled.mean == doctest::Approx(brute(all).mean).epsilon(1e-9));
        CHECK(s.pooled.std == doctest::Approx(brute(all).std).epsilon(1e-9));
        CHECK(s.pooled_samples.std == doctest::Approx(brute(samples).std).epsilon(1e-9));
        CHECK(s.pooled_samples.mean == doctest::Approx(s.pooled.mean).epsilon(1e-9));
        for (const auto& [year, v] : means) {
            CHECK(s.per_year.at(year).mean == doctest::Approx(brute(v).mean).epsilon(1e-9));
            CHECK(s.per_year.at(year).std == doctest::Approx(brute(v).std).epsilon(1e-9));
        }
    }
}

TEST_CASE("empirical CDF and KS distance") {
    const auto same = empirical_cdf(std::vector<double>{3, 1, 2, 2});
    CHECK(same.values == std::vector<double>{1, 2, 3});
    CHECK(same.cumulative == std::vector<double>{0.25, 0.75, 1.0});
    CHECK(same(0.5) == 0.0);
    CHECK(same(2.0) == 0.75);
    CHECK(same(2.5) == 0.75);
    CHECK(same(10.0) == 1.0);
    CHECK(ks_distance(same, empirical_cdf(std::vector<double>{2, 1, 3, 2})) == 0.0);
    CHECK(ks_distance(empirical_cdf(std::vector<double>{0}), empirical_cdf(std::vector<double>{1})) == 1.0);
    // Merged grid 1..6: F_a = .25,.5,.75,1,1,1; F_b = 0,0,.25,.5,.75,1.
    const auto a = empirical_cdf(std::vector<double>{1, 2, 3, 4});
    const auto b = empirical_cdf(std::vector<double>{3, 4, 5, 6});
    CHECK(ks_distance(a, b) == 0.5);
    CHECK(ks_distance(b, a) == 0.5);
    CHECK_THROWS_AS(empirical_cdf(std::vector<double>{}), Error);
}

TEST_CASE("KS distance equals a brute-force supremum over the merged grid") {
    std::mt19937_64 gen(12);
    std::uniform_int_distribution<int> u(0, 30);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> x(20 + trial), y(35);
        for (auto& v : x) v = u(gen);
        for (auto& v : y) v = u(gen) + trial % 5;
        double sup = 0.0;
        for (const auto* grid : {&x, &y}) {
            for (double t : *grid) {
                double fx = 0, fy = 0;
                for (double v : x) fx += v <= t;
                for (double v : y) fy += v <= t;
                sup = std::max(sup, std::fabs(fx / x.size() - fy / y.size()));
            }
        }
        const auto cx = empirical_cdf(x), cy = empirical_cdf(y);
        CHECK(ks_distance(cx, cy) == doctest::Approx(sup).epsilon(1e-15));
        CHECK(ks_distance(cx, cy) == ks_distance(cy, cx));
    }
}

TEST_CASE("monthly_curves") {
    SUBCASE("June only") {
        std::map<Date, DailyProfile> days;
        for (unsigned d = 1; d <= 3; ++d) {
            const Date date = make_date(2015, 6, d);
            days[date] = {"A", date, Season::Summer, std::vector<double>(kSamplesPerDay, 100.0)};
        }
        const auto m = monthly_curves(days);
        CHECK(m.pooled.size() == 1);
        CHECK(m.pooled.at(6) == 100.0);
        CHECK(m.per_year.at(2015).at(6) == 100.0);
    }
    SUBCASE("brute-force grouping") {
        const auto pc = helios::testing::make_planted_corpus(1, make_date(2015, 10, 15), 200, 4);
        const auto m = monthly_curves(pc.corpus().days(0));
        std::map<std::pair<int, unsigned>, std::pair<double, double>> acc;
        for (const auto& p : pc.profiles) {
            auto& a = acc[{year_of(p.date), month_of(p.date)}];
            for (double v : p.samples) {
                a.first += v;
                a.second += 1;
            }
        }
        std::size_t populated = 0;
        for (const auto& [ym, a] : acc) {
            CHECK(m.per_year.at(ym.first).at(ym.second) == doctest::Approx(a.first / a.second).epsilon(1e-9));
            ++populated;
        }
        std::size_t reported = 0;
        for (const auto& [y, curve] : m.per_year) reported += curve.size();
        CHECK(reported == populated);
    }
}

TEST_CASE("build_report is deterministic and writes its tables") {
    const auto obs = helios::testing::make_planted_corpus(2, make_date(2015, 1, 1), 60, 8).corpus();
    const auto sim = helios::testing::make_planted_corpus(2, make_date(2016, 1, 1), 30, 9).corpus();
    const auto r1 = build_report(obs, sim);
    const auto r2 = build_report(obs, sim);
    CHECK(report_json(r1) == report_json(r2));
    REQUIRE(r1.pearson.size() == 1);
    CHECK(r1.pearson[0].observed >= -1.0);
    CHECK(r1.pearson[0].observed <= 1.0);
    for (const auto& s : r1.stations) {
        CHECK(s.ks >= 0.0);
        CHECK(s.ks <= 1.0);
        for (std::size_t i = 1; i < s.observed_cdf.cumulative.size(); ++i) {
            CHECK(s.observed_cdf.cumulative[i] >= s.observed_cdf.cumulative[i - 1]);
        }
    }

    const auto dir = std::filesystem::temp_directory_path() / "helios_validate_test";
    std::filesystem::remove_all(dir);
    write_report(r1, dir);
    CHECK(std::filesystem::exists(dir / "report.json"));
    CHECK(std::filesystem::exists(dir / "cdf_ST1.csv"));
    CHECK(std::filesystem::exists(dir / "monthly_ST2.csv"));
    std::ifstream in(dir / "report.json");
    const auto doc = nlohmann::json::parse(in);
    CHECK(doc.at("stations").size() == 2);
    std::filesystem::remove_all(dir);

    const Corpus other({"X", "Y"}, {});
    CHECK_THROWS_AS(build_report(obs, other), Error);
}
