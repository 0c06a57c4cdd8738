#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "helios/cli.hpp"
#include "helios/ingest.hpp"
#include "support/synthetic.hpp"

using namespace helios;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "helios");
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct Workspace {
    fs::path dir;
    fs::path observed;

    Workspace() {
        dir = fs::temp_directory_path() / "helios_cli_test";
        fs::remove_all(dir);
        fs::create_directories(dir);
        observed = dir / "obs.csv";
        const auto pc = helios::testing::make_planted_corpus(2, make_date(2015, 1, 1), 365, 21);
        std::ofstream out(observed);
        write_csv(out, to_records(pc.corpus()));
    }
    ~Workspace() { fs::remove_all(dir); }

    std::string path(const std::string& name) const { return (dir / name).string(); }
};

const Workspace& workspace() {
    static const Workspace w;
    return w;
}

}  // namespace

TEST_CASE("fit, simulate and validate happy path") {
    const auto& w = workspace();
    const auto fit = run({"fit", "--input", w.observed.string(), "--k", "4", "--seed", "7", "--out", w.path("model.json")});
    CHECK(fit.code == 0);
    CHECK(fs::exists(w.path("model.json")));

    const auto sim = run({"simulate", "--model", w.path("model.json"), "--corpus", w.observed.string(), "--days", "40",
                          "--start", "2020-01-01", "--seed", "3", "--out", w.path("sim.csv")});
    CHECK(sim.code == 0);
    CHECK(fs::exists(w.path("sim.csv")));
    CHECK(fs::exists(w.path("sim.days.json")));
    const Corpus simulated = load_corpus(w.path("sim.csv"));
    CHECK(simulated.alignment().size() == 40);
    CHECK(simulated.alignment().front() == make_date(2020, 1, 1));

    const auto val = run({"validate", "--observed", w.observed.string(), "--simulated", w.path("sim.csv"), "--out-dir",
                          w.path("report")});
    CHECK(val.code == 0);
    CHECK(fs::exists(w.path("report/report.json")));
    CHECK(fs::exists(w.path("report/cdf_ST1.csv")));
    CHECK(fs::exists(w.path("report/monthly_ST2.csv")));
}

TEST_CASE("ingest and features") {
    const auto& w = workspace();
    CHECK(run({"ingest", "--input", w.observed.string(), "--out", w.path("corpus.json")}).code == 0);
    CHECK(load_corpus(w.path("corpus.json")) == load_corpus(w.observed));
    CHECK(run({"features", "--input", w.path("corpus.json"), "--out", w.path("features.csv")}).code == 0);
    std::istringstream lines(slurp(w.path("features.csv")));
    std::string header;
    std::getline(lines, header);
    CHECK(header == "station_id,date,mean,std,skewness,kurtosis,mfi");
    std::size_t rows = 0;
    for (std::string line; std::getline(lines, line);) ++rows;
    CHECK(rows == 2 * 365);
}

TEST_CASE("date-range simulation") {
    const auto& w = workspace();
    REQUIRE(run({"fit", "--input", w.observed.string(), "--out", w.path("model_r.json")}).code == 0);
    const auto sim = run({"simulate", "--model", w.path("model_r.json"), "--corpus", w.observed.string(), "--from",
                          "2021-02-27", "--to", "2021-03-02", "--out", w.path("range.csv")});
    CHECK(sim.code == 0);
    CHECK(load_corpus(w.path("range.csv")).alignment().size() == 4);
}

TEST_CASE("usage errors exit 2") {
    const auto& w = workspace();
    const auto no_model = run({"simulate", "--corpus", w.observed.string(), "--days", "3", "--out", w.path("x.csv")});
    CHECK(no_model.code == 2);
    CHECK(no_model.err.find("--model") != std::string::npos);
    CHECK(run({}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({"fit", "--input", w.observed.string(), "--out", w.path("m.json"), "--frobnicate"}).code == 2);
    CHECK(run({"fit", "--input", w.observed.string(), "--out", w.path("m.json"), "--season-rule", "astronomical"}).code == 2);
    REQUIRE(run({"fit", "--input", w.observed.string(), "--out", w.path("m2.json")}).code == 0);
    CHECK(run({"simulate", "--model", w.path("m2.json"), "--corpus", w.observed.string(), "--out", w.path("x.csv")}).code == 2);
    CHECK(run({"simulate", "--model", w.path("m2.json"), "--corpus", w.observed.string(), "--days", "3", "--from",
               "2020-01-01", "--to", "2020-01-02", "--out", w.path("x.csv")})
              .code == 2);
    CHECK_FALSE(fs::exists(w.path("x.csv")));
}

TEST_CASE("domain errors exit 1 and name the module") {
    const auto& w = workspace();
    const fs::path disjoint = w.dir / "disjoint.csv";
    {
        std::ofstream out(disjoint);
        out << "timestamp,station_id,ghi_wm2\n";
        for (int m = 0; m < kMinutesPerDay; ++m) {
            out << "2015-06-17T" << (m / 60 < 10 ? "0" : "") << m / 60 << ':' << (m % 60 < 10 ? "0" : "") << m % 60 << ",A,1\n";
            out << "2015-06-18T" << (m / 60 < 10 ? "0" : "") << m / 60 << ':' << (m % 60 < 10 ? "0" : "") << m % 60 << ",B,1\n";
        }
    }
    const auto r = run({"fit", "--input", disjoint.string(), "--out", w.path("never.json")});
    CHECK(r.code == 1);
    CHECK(r.err.find("ingest") != std::string::npos);
    CHECK_FALSE(fs::exists(w.path("never.json")));
}

TEST_CASE("a failing run leaves an existing output untouched") {
    const auto& w = workspace();
    const fs::path target = w.dir / "keep.json";
    {
        std::ofstream out(target);
        out << "precious";
    }
    const fs::path bad = w.dir / "bad.csv";
    {
        std::ofstream out(bad);
        out << "timestamp,station_id,ghi_wm2\n2015-06-17T12:00,SRRL,abc\n";
    }
    CHECK(run({"fit", "--input", bad.string(), "--out", target.string()}).code == 1);
    CHECK(slurp(target) == "precious");
}

TEST_CASE("help exits 0 and writes nothing") {
    const auto& w = workspace();
    const auto before = std::distance(fs::directory_iterator(w.dir), fs::directory_iterator{});
    for (const char* sub : {"ingest", "features", "fit", "simulate", "validate"}) {
        const auto r = run({sub, "--help"});
        CHECK(r.code == 0);
        CHECK(r.out.find("--") != std::string::npos);
    }
    CHECK(run({"--help"}).code == 0);
    const auto after = std::distance(fs::directory_iterator(w.dir), fs::directory_iterator{});
    CHECK(before == after);
}

TEST_CASE("identical inputs and seeds give byte-identical outputs") {
    const auto& w = workspace();
    for (const char* tag : {"a", "b"}) {
        const std::string t = tag;
        REQUIRE(run({"fit", "--input", w.observed.string(), "--seed", "11", "--out", w.path("det_" + t + ".json")}).code == 0);
        REQUIRE(run({"simulate", "--model", w.path("det_" + t + ".json"), "--corpus", w.observed.string(), "--days", "30",
                     "--seed", "5", "--out", w.path("det_" + t + ".csv")})
                    .code == 0);
    }
    CHECK(slurp(w.path("det_a.json")) == slurp(w.path("det_b.json")));
    CHECK(slurp(w.path("det_a.csv")) == slurp(w.path("det_b.csv")));
    CHECK(slurp(w.path("det_a.days.json")) == slurp(w.path("det_b.days.json")));
}

TEST_CASE("the installed binary honors exit codes") {
    const char* bin = std::getenv("HELIOS_BIN");
    if (!bin) return;
    const std::string b = bin;
    CHECK(std::system((b + " fit --help > /dev/null").c_str()) == 0);
    CHECK(WEXITSTATUS(std::system((b + " simulate --days 3 > /dev/null 2>&1").c_str())) == 2);
}
