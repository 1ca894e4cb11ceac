#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

namespace cli = lorenz::cli;

namespace {

std::string doc_path(const std::string& name, const std::string& text) {
    auto path = std::filesystem::temp_directory_path() / ("lorenz_cli_" + name);
    std::ofstream out(path, std::ios::binary);
    out << text;
    return path.string();
}

struct run_result {
    int code;
    std::string out;
    std::string err;
};

run_result run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

const std::string file_a =
    doc_path("a.json", R"({"name":"a","p":[0.7,0.3],"q":[0.5,0.5]})");
const std::string file_b =
    doc_path("b.json", R"({"name":"b","p":[0.9,0.1],"q":[0.5,0.5]})");
const std::string file_pure =
    doc_path("pure.json", R"({"name":"pure","p":[1.0,0.0],"q":[0.5,0.5]})");
const std::string file_flat =
    doc_path("flat.json", R"({"name":"flat","p":[0.5,0.5],"q":[0.5,0.5]})");
const std::string file_bell = doc_path("bell.json", R"({"p":[0.5,0.5]})");
const std::string file_tilted = doc_path("tilted.json", R"({"p":[0.8,0.2]})");

bool contains(const std::string& text, const std::string& needle) {
    return text.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("resource documents parse and round-trip") {
    lorenz::thermo::resource a;
    a.r = {0.7, 0.3};
    a.g = {1.0 / 3.0, 2.0 / 3.0};
    a.label = "probe";
    auto back = cli::parse_resource(cli::serialize_resource(a));
    CHECK(back.label == a.label);
    CHECK(back.r == a.r);
    CHECK(back.g == a.g);

    auto thermal = cli::parse_resource(
        R"({"name":"t","energies":[0.0,1.0],"beta":0.6931471805599453,"population":[0.9,0.1]})");
    CHECK(thermal.g[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(thermal.g[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    auto anon = cli::parse_resource(R"({"p":[0.5,0.5],"q":[0.5,0.5]})");
    CHECK(anon.label.empty());
}

TEST_CASE("resource documents reject malformed input with field paths") {
    CHECK_THROWS_WITH_AS(cli::parse_resource("not json"),
                         doctest::Contains("not valid json"), std::runtime_error);
    CHECK_THROWS_WITH_AS(cli::parse_resource(R"([1,2])"),
                         doctest::Contains("not a json object"), std::runtime_error);
    CHECK_THROWS_WITH_AS(cli::parse_resource(R"({"p":[0.5,0.5],"foo":1})"),
                         doctest::Contains("field 'foo'"), std::runtime_error);
    CHECK_THROWS_WITH_AS(cli::parse_resource(R"({"p":[0.5,0.5]})"),
                         doctest::Contains("field 'q'"), std::runtime_error);
    CHECK_THROWS_WITH_AS(cli::parse_resource(R"({"p":[0.5,"x"],"q":[0.5,0.5]})"),
                         doctest::Contains("field 'p'"), std::runtime_error);
    CHECK_THROWS_WITH_AS(
        cli::parse_resource(R"({"p":[0.5,0.5],"q":[0.5,0.5],"beta":1.0})"),
        doctest::Contains("provide either"), std::runtime_error);
    CHECK_THROWS_WITH_AS(
        cli::parse_resource(
            R"({"energies":[0.0,1.0],"beta":-1.0,"population":[0.9,0.1]})"),
        doctest::Contains("field 'beta'"), std::runtime_error);
    CHECK_THROWS_WITH_AS(cli::parse_resource(R"({"p":[0.7,0.4],"q":[0.5,0.5]})"),
                         doctest::Contains("resource"), std::runtime_error);

    CHECK_THROWS_WITH_AS(cli::parse_schmidt(R"({"p":[0.7,0.4]})"),
                         doctest::Contains("schmidt"), std::runtime_error);
    CHECK(cli::parse_schmidt(R"({"p":[0.5,0.5],"q":[1.0]})").coefficients.size() == 2);
}

TEST_CASE("check reports decisions and witnesses in both formats") {
    auto res = run({"check", "--a", file_b, "--b", file_a});
    CHECK(res.code == 0);
    auto doc = nlohmann::json::parse(res.out);
    CHECK(doc.at("relatively_majorizes").get<bool>());
    CHECK(doc.at("submajorizes").get<bool>());
    CHECK(doc.at("witness_class").get<std::string>() == "stochastic");
    CHECK(doc.at("witness").is_array());
    CHECK(doc.at("witness").size() == 2);

    auto csv = run({"check", "--a", file_b, "--b", file_a, "--format", "csv"});
    CHECK(csv.code == 0);
    CHECK(contains(csv.out, "relatively_majorizes,true"));
    CHECK(contains(csv.out, "witness_0,"));

    auto rev = run({"check", "--a", file_a, "--b", file_b, "--format", "csv"});
    CHECK(rev.code == 0);
    CHECK(contains(rev.out, "relatively_majorizes,false"));
    CHECK(contains(rev.out, "submajorizes,false"));
}

TEST_CASE("region emits the worked boundary value") {
    auto res = run({"region", "--a", file_a, "--b", file_b, "--z", "1"});
    CHECK(res.code == 0);
    CHECK(contains(res.out, "0.777777778"));

    auto csv = run({"region", "--a", file_a, "--b", file_b, "--grid", "1:2:3",
                    "--format", "csv"});
    CHECK(csv.code == 0);
    CHECK(contains(csv.out, "z,lambda_star\n"));
    CHECK(contains(csv.out, "1,0.777777778\n"));
    CHECK(contains(csv.out, "1.5,"));
    CHECK(contains(csv.out, "2,"));
}

TEST_CASE("work reports value and cost optima") {
    auto res = run({"work", "--a", file_pure, "--format", "csv"});
    CHECK(res.code == 0);
    CHECK(contains(res.out, "phi,0.5"));
    CHECK(contains(res.out, "value_z_star,0.5"));
    CHECK(contains(res.out, "cost_z_star,2"));
    CHECK(contains(res.out, "cost_eps_star,0.5"));

    auto low = run({"work", "--a", file_pure, "--z", "0.5"});
    CHECK(low.code == 0);
    auto doc = nlohmann::json::parse(low.out);
    CHECK(doc.at("value_lambda_star").get<double>() == doctest::Approx(1.0));
    CHECK(!doc.contains("cost_eps_star"));
    CHECK(doc.contains("cost_z_star"));
}

TEST_CASE("approx reports the error calculus and battery scaling") {
    auto res = run({"approx", "--a", file_a, "--b", file_b});
    CHECK(res.code == 0);
    auto doc = nlohmann::json::parse(res.out);
    CHECK(doc.at("eps_star").get<double>() == doctest::Approx(0.2).epsilon(1e-9));
    CHECK(doc.at("eta_hat_star").get<double>() ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-9));
    CHECK(!doc.contains("battery_scale"));

    auto phys = run({"approx", "--a", file_a, "--b", file_b, "--beta", "1.0",
                     "--energy", "2.0", "--partition", "4.0"});
    CHECK(phys.code == 0);
    auto pdoc = nlohmann::json::parse(phys.out);
    double scale = std::exp(-2.0) / 4.0;
    CHECK(pdoc.at("battery_scale").get<double>() == doctest::Approx(scale));
    CHECK(pdoc.at("eta_physical").get<double>() ==
          doctest::Approx(scale / 3.0).epsilon(1e-9));
}

TEST_CASE("bounds emits the full suite with ids") {
    auto csv = run({"bounds", "--a", file_a, "--b", file_b, "--format", "csv"});
    CHECK(csv.code == 0);
    std::istringstream lines(csv.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "id,lhs,rhs,satisfied,skipped");
    int rows = 0;
    bool all_ok = true;
    while (std::getline(lines, line)) {
        ++rows;
        all_ok = all_ok && contains(line, ",true");
    }
    CHECK(rows == 11);
    CHECK(all_ok);
    CHECK(contains(csv.out, "fenchel,"));
    CHECK(contains(csv.out, "pinsker-excess,"));

    auto doc = nlohmann::json::parse(
        run({"bounds", "--a", file_a, "--b", file_b}).out);
    CHECK(doc.at("bounds").size() == 11);
    CHECK(doc.at("bounds")[0].at("id").get<std::string>() == "fenchel");
}

TEST_CASE("asympt reports work and erasure rate tables") {
    auto work = run({"asympt", "--a", file_pure, "--b", file_flat, "--nmax", "2",
                     "--format", "csv"});
    CHECK(work.code == 0);
    CHECK(contains(work.out, "n,rate\n"));
    CHECK(contains(work.out, "1,0.693147181\n"));
    CHECK(contains(work.out, "2,0.693147181\n"));

    auto erase = run({"asympt", "--a", file_flat, "--nmax", "2"});
    CHECK(erase.code == 0);
    auto doc = nlohmann::json::parse(erase.out);
    CHECK(doc.at("kind").get<std::string>() == "erasure");
    CHECK(doc.at("limit").get<std::string>() == "0");
    CHECK(doc.at("rates").size() == 2);

    auto inf = run({"asympt", "--a", file_pure, "--nmax", "1", "--format", "csv"});
    CHECK(inf.code == 0);
    CHECK(contains(inf.out, "1,inf"));
}

TEST_CASE("entangle reports conversion measures") {
    auto res = run({"entangle", "--a", file_tilted, "--b", file_bell, "--format",
                    "csv"});
    CHECK(res.code == 0);
    CHECK(contains(res.out, "locc_possible,false"));
    CHECK(contains(res.out, "vidal_probability,0.4"));
    CHECK(contains(res.out, "entanglement_cost,1.6"));
    CHECK(contains(res.out, "shift_bound,0.7"));

    auto back = nlohmann::json::parse(
        run({"entangle", "--a", file_bell, "--b", file_tilted}).out);
    CHECK(back.at("locc_possible").get<bool>());
    CHECK(back.at("vidal_probability").get<double>() == doctest::Approx(1.0));
    CHECK(back.contains("entropy_bound"));
}

TEST_CASE("lorenz renders curves as svg") {
    auto res = run({"lorenz", "--a", file_flat});
    CHECK(res.code == 0);
    CHECK(contains(res.out, "<svg"));
    CHECK(contains(res.out, "points=\"0,1000 500,500 1000,0\""));
    CHECK(res.out.find("<polyline") == res.out.rfind("<polyline"));
    CHECK(contains(res.out, "<circle"));

    auto both = run({"lorenz", "--a", file_a, "--b", file_b});
    CHECK(both.code == 0);
    CHECK(both.out.find("<polyline") != both.out.rfind("<polyline"));

    CHECK_THROWS_AS(cli::render_lorenz({}), std::invalid_argument);
}

TEST_CASE("out flag writes the report to a file") {
    auto target = std::filesystem::temp_directory_path() / "lorenz_cli_region.csv";
    std::filesystem::remove(target);
    auto res = run({"region", "--a", file_a, "--b", file_b, "--z", "1", "--format",
                    "csv", "--out", target.string()});
    CHECK(res.code == 0);
    CHECK(res.out.empty());
    std::ifstream in(target);
    std::stringstream body;
    body << in.rdbuf();
    CHECK(contains(body.str(), "1,0.777777778"));

    auto bad = run({"region", "--a", file_a, "--b", file_b, "--z", "1", "--out",
                    "/nonexistent-dir/x.json"});
    CHECK(bad.code == 1);
    CHECK(contains(bad.err, "cannot write"));
}

TEST_CASE("exit codes separate usage errors from data errors") {
    CHECK(run({}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({"check", "--a", file_a}).code == 2);
    CHECK(run({"check", "--a", file_a, "--b", file_b, "--wat", "1"}).code == 2);
    CHECK(run({"check", "--a", file_a, "--b"}).code == 2);
    CHECK(run({"region", "--a", file_a, "--b", file_b}).code == 2);
    CHECK(run({"region", "--a", file_a, "--b", file_b, "--z", "x"}).code == 2);
    CHECK(run({"region", "--a", file_a, "--b", file_b, "--grid", "1:2"}).code == 2);
    CHECK(run({"asympt", "--a", file_a, "--nmax", "0"}).code == 2);

    CHECK(run({"check", "--a", "/nonexistent.json", "--b", file_b}).code == 1);
    auto bad = doc_path("bad.json", R"({"p":[0.7,0.4],"q":[0.5,0.5]})");
    CHECK(run({"check", "--a", bad, "--b", file_b}).code == 1);
    CHECK(run({"work", "--a", file_a, "--lambda", "1.5"}).code == 1);

    auto help = run({"help"});
    CHECK(help.code == 0);
    CHECK(contains(help.out, "usage"));

    auto usage = run({"bogus"});
    CHECK(contains(usage.err, "unknown command"));
}

TEST_CASE("verify runs the seeded self checks deterministically") {
    auto res = run({"verify", "--seed", "7", "--cases", "40"});
    CHECK(res.code == 0);
    CHECK(contains(res.out, "submajorize decisions: 40/40"));
    CHECK(contains(res.out, "all checks passed"));

    auto again = run({"verify", "--seed", "7", "--cases", "40"});
    CHECK(again.out.substr(0, again.out.find("verified optimal solves")) ==
          res.out.substr(0, res.out.find("verified optimal solves")));
}
