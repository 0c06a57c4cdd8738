#include <doctest.h>

#include <cmath>
#include <random>

#include <nlohmann/json.hpp>

#include "helios/model.hpp"
#include "helios/simulator.hpp"
#include "support/synthetic.hpp"

using namespace helios;

TEST_CASE("fit_mtpm counts consecutive pairs") {
    SUBCASE("[1,2,2,1]") {
        const auto tm = fit_mtpm(std::vector<int>{1, 2, 2, 1}, 2);
        CHECK(tm.counts == CountMatrix{{0, 1}, {1, 1}});
        CHECK(tm.matrix == ProbabilityMatrix{{0.0, 1.0}, {0.5, 0.5}});
    }
    SUBCASE("constant sequence with one state") {
        const auto tm = fit_mtpm(std::vector<int>{1, 1, 1, 1}, 1);
        CHECK(tm.matrix == ProbabilityMatrix{{1.0}});
    }
    SUBCASE("a state seen only last falls back to the marginal") {
        const auto tm = fit_mtpm(std::vector<int>{1, 2, 1, 2, 3}, 3);
        CHECK(tm.fallback == std::vector<double>{0.4, 0.4, 0.2});
        CHECK(tm.matrix[2] == tm.fallback);
        CHECK(tm.matrix[0] == std::vector<double>{0.0, 1.0, 0.0});
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(fit_mtpm(std::vector<int>{1}, 1), Error);
        CHECK_THROWS_AS(fit_mtpm(std::vector<int>{1, 2}, 0), Error);
        CHECK_THROWS_AS(fit_mtpm(std::vector<int>{1, 3}, 2), Error);
    }
}

TEST_CASE("pairs never span run boundaries") {
    const std::vector<std::vector<int>> runs{{1, 2, 2}, {1}, {2, 1}};
    const auto tm = fit_mtpm(runs, 2);
    std::uint64_t total = 0;
    for (const auto& row : tm.counts)
        for (auto c : row) total += c;
    CHECK(total == (3 - 1) + (1 - 1) + (2 - 1));
    CHECK(tm.counts == CountMatrix{{0, 1}, {1, 1}});
}

TEST_CASE("split_contiguous breaks at calendar gaps") {
    const std::vector<Date> dates{make_date(2015, 2, 27), make_date(2015, 2, 28), make_date(2015, 12, 1),
                                  make_date(2015, 12, 2), make_date(2015, 12, 4)};
    const std::vector<int> codes{1, 2, 3, 4, 5};
    CHECK(split_contiguous(dates, codes) == std::vector<std::vector<int>>{{1, 2}, {3, 4}, {5}});
}

TEST_CASE("stationary_distribution") {
    const auto pi1 = stationary_distribution(ProbabilityMatrix{{1, 0}, {0, 1}});
    CHECK(pi1[0] == doctest::Approx(0.5));
    CHECK(pi1[1] == doctest::Approx(0.5));
    const auto pi2 = stationary_distribution(ProbabilityMatrix{{0, 1}, {1, 0}});
    CHECK(pi2[0] == doctest::Approx(0.5));
    const auto pi3 = stationary_distribution(ProbabilityMatrix{{0.9, 0.1}, {0.5, 0.5}});
    CHECK(pi3[0] == doctest::Approx(5.0 / 6.0).epsilon(1e-10));
    CHECK(pi3[1] == doctest::Approx(1.0 / 6.0).epsilon(1e-10));
}

TEST_CASE("fit_mtpm recovers a known matrix from a long run") {
    const ProbabilityMatrix p{{0.5, 0.3, 0.2}, {0.1, 0.6, 0.3}, {0.4, 0.1, 0.5}};
    TransitionModel truth{Season::Summer, 3, {}, p, {1.0 / 3, 1.0 / 3, 1.0 / 3}};
    const auto codes = simulate_codes(truth, 100'000, std::uint64_t{5}, 1);
    const auto fit = fit_mtpm(codes, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(std::fabs(fit.matrix[i][j] - p[i][j]) < 0.02);
}

namespace {

ModelEnvelope fitted_envelope() {
    const auto pc = helios::testing::make_planted_corpus(3, make_date(2015, 1, 1), 365, 12);
    return fit_model(pc.corpus(), {4, 7, {}});
}

}  // namespace

TEST_CASE("fit_model produces valid per-season models") {
    const auto pc = helios::testing::make_planted_corpus(3, make_date(2015, 1, 1), 365, 12);
    std::map<Season, SeasonFit> details;
    const ModelEnvelope env = fit_model(pc.corpus(), {4, 7, {}}, &details);
    CHECK(env.seasons.size() == 4);
    for (const auto& [season, sm] : env.seasons) {
        CAPTURE(season_name(season));
        CHECK(sm.cluster_models.size() == 3);
        validate_stochastic(sm.transitions.matrix);
        CHECK(sm.state_space.r() + sm.state_space.unobserved() == 64);
        std::size_t pairs = 0;
        for (const auto& run : details.at(season).code_runs) pairs += run.size() - 1;
        std::uint64_t total = 0;
        for (const auto& row : sm.transitions.counts)
            for (auto c : row) total += c;
        CHECK(total == pairs);
    }
    // Winter spans Jan-Feb and Dec: two runs.
    CHECK(details.at(Season::Winter).code_runs.size() == 2);
}

TEST_CASE("model JSON round-trips exactly") {
    const ModelEnvelope env = fitted_envelope();
    const std::string text = dump_model(env);
    const ModelEnvelope back = load(nlohmann::json::parse(text));
    CHECK(back == env);
    CHECK(dump_model(back) == text);
    const auto doc = save(env);
    CHECK(doc.contains("schema_version"));
    CHECK(doc.at("seasons").at("summer").contains("state_space"));
    CHECK(doc.at("seasons").at("summer").contains("fallback"));
}

TEST_CASE("load rejects inconsistent documents") {
    const auto doc = save(fitted_envelope());
    SUBCASE("schema version") {
        auto bad = doc;
        bad["schema_version"] = 99;
        CHECK_THROWS_AS(load(bad), Error);
    }
    SUBCASE("row summing to 0.8") {
        auto bad = doc;
        auto& row = bad["seasons"]["summer"]["matrix"][0];
        double sum = 0.0;
        for (auto& v : row) sum += v.get<double>();
        for (auto& v : row) v = v.get<double>() * 0.8 / sum;
        CHECK_THROWS_AS(load(bad), Error);
    }
    SUBCASE("station list mismatch") {
        auto bad = doc;
        bad["seasons"]["summer"]["cluster_models"][1]["station_id"] = "ELSEWHERE";
        CHECK_THROWS_AS(load(bad), Error);
    }
    SUBCASE("dimension mismatch") {
        auto bad = doc;
        bad["seasons"]["summer"]["fallback"].erase(0);
        CHECK_THROWS_AS(load(bad), Error);
    }
    SUBCASE("matrix disagreeing with counts") {
        auto bad = doc;
        auto& counts = bad["seasons"]["summer"]["counts"];
        for (auto& row : counts) {
            std::uint64_t total = 0;
            for (auto& v : row) total += v.get<std::uint64_t>();
            if (total > 0) {
                row[0] = row[0].get<std::uint64_t>() + 5;
                break;
            }
        }
        CHECK_THROWS_AS(load(bad), Error);
    }
    SUBCASE("missing field") {
        auto bad = doc;
        bad.erase("k");
        CHECK_THROWS_AS(load(bad), Error);
    }
}
