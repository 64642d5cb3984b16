#include "cli.hpp"
#include "qsc/io.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace qsc;
using qsc::io::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() / ("qsc_cli_" + std::to_string(std::random_device{}()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string write(const std::string &name, const std::string &text) const {
        const auto p = path / name;
        std::ofstream(p) << text;
        return p.string();
    }
    std::string file(const std::string &name) const { return (path / name).string(); }
};

std::string slurp(const std::string &path) {
    std::ifstream in(path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

const char *kUnitFamily =
    R"({"d":1,"kappa":[0.5,0],"E00":[[[0,0]]],"E01":[[[1,0]]],"E10":[[[1,0]]],"E11":[[[0,0]]]})";

}  // namespace

TEST_CASE("combinatorics tables") {
    auto r = run({"combinatorics", "--n", "7"});
    CHECK(r.code == 0);
    CHECK(r.out.find("stirling2: 1 63 301 350 140 21 1\n") != std::string::npos);
    CHECK(r.out.find("bell: 877\n") != std::string::npos);

    r = run({"combinatorics", "--n", "0", "--format", "json"});
    CHECK(r.code == 0);
    CHECK(json::parse(r.out).at("bell") == 1);

    r = run({"combinatorics", "--n", "10", "--enumerate"});
    CHECK(r.code == 0);
    CHECK(r.out.find("bell: 115975\n") != std::string::npos);
    CHECK(r.out.find("enumerated: 115975\n") != std::string::npos);
    CHECK(r.out.find("pair_partitions: 945\n") != std::string::npos);

    r = run({"combinatorics", "--n", "200", "--format", "json"});
    CHECK(r.code == 0);
    CHECK(json::parse(r.out).at("bell").is_string());
}

TEST_CASE("combinatorics range errors exit 2") {
    CHECK(run({"combinatorics", "--n", "201"}).code == 2);
    CHECK(run({"combinatorics", "--n", "-1"}).code == 2);
    CHECK(run({"combinatorics", "--n", "15", "--enumerate"}).code == 2);
    CHECK(run({"combinatorics"}).code == 2);
    CHECK(run({"combinatorics", "--n", "x"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"nonsense"}).code == 2);
}

TEST_CASE("help exits 0") {
    const auto r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("markov-scan") != std::string::npos);
}

TEST_CASE("moments table") {
    auto r = run({"moments", "--observable", "q", "--max-order", "4", "--z", "2"});
    CHECK(r.code == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "n,closed_form,diagram_sum,oracle,abs_difference");
    std::vector<std::string> rows;
    while (std::getline(lines, line)) rows.push_back(line);
    REQUIRE(rows.size() == 5);
    // 3 |z|^4 = 48
    CHECK(rows[4].rfind("4,48,48,48,", 0) == 0);

    r = run({"moments", "--observable", "N", "--max-order", "5"});
    CHECK(r.code == 0);
    CHECK(r.out.find("\n5,52,52,52,") != std::string::npos);

    CHECK(run({"moments", "--observable", "x"}).code == 2);
    CHECK(run({"moments", "--max-order", "99"}).code == 2);
    CHECK(run({"moments", "--z", "1,abc"}).code == 2);
}

TEST_CASE("ito-coeffs document, round trip and errors") {
    TempDir dir;
    const auto input = dir.write("family.json", kUnitFamily);
    auto r = run({"ito-coeffs", "--input", input, "--output", dir.file("ito.json")});
    CHECK(r.code == 0);
    const json doc = json::parse(slurp(dir.file("ito.json")));
    CHECK(doc.at("L00") == json::parse("[[[-0.5, 0.0]]]"));
    CHECK(doc.at("unitarity_residual") == 0.0);
    CHECK(doc.at("norm_condition_warning") == false);

    // the emitted document parses back and re-emits identically
    const auto l = io::parse_ito_coefficients(doc);
    CHECK(io::matrix_to_json(l(0, 0)) == doc.at("L00"));
    const auto again = run({"ito-coeffs", "--input", input});
    CHECK(json::parse(again.out) == doc);

    const auto zero = dir.write(
        "zero.json", R"({"d":1,"kappa":[0.5,0],"E00":[[0]],"E01":[[0]],"E10":[[0]],"E11":[[0]]})");
    r = run({"ito-coeffs", "--input", zero});
    CHECK(r.code == 0);
    CHECK(json::parse(r.out).at("L11") == json::parse("[[[0.0, 0.0]]]"));

    // ||kappa E11|| = 1.2
    const auto strong = dir.write(
        "strong.json", R"({"d":1,"kappa":[0.6,0],"E00":[[0]],"E01":[[0]],"E10":[[0]],"E11":[[2]]})");
    r = run({"ito-coeffs", "--input", strong});
    CHECK(json::parse(r.out).at("norm_condition_warning") == true);
    CHECK(r.err.find("warning") != std::string::npos);

    const auto skew = dir.write(
        "skew.json", R"({"d":1,"kappa":[0.5,0],"E00":[[[0,1]]],"E01":[[1]],"E10":[[1]],"E11":[[0]]})");
    r = run({"ito-coeffs", "--input", skew});
    CHECK(r.code == 2);
    CHECK(r.err.find("E00^dagger = E00") != std::string::npos);

    CHECK(run({"ito-coeffs", "--input", dir.write("bad.json", "{not json")}).code == 2);
    CHECK(run({"ito-coeffs", "--input", dir.write("extra.json", R"({"d":1,"oops":2})")}).code == 2);
    CHECK(run({"ito-coeffs", "--input", dir.file("missing.json")}).code == 2);
}

TEST_CASE("tolerance failures exit 3") {
    TempDir dir;
    const auto input = dir.write(
        "family.json",
        R"({"d":2,"kappa":[0.4,0.3],"E00":[[0.3,[0.1,0.2]],[[0.1,-0.2],-0.4]],)"
        R"("E01":[[[0.7,0.2],0.1],[0.3,[0,0.5]]],"E10":[[[0.7,-0.2],0.3],[0.1,[0,-0.5]]],)"
        R"("E11":[[0.5,0.1],[0.1,-0.2]]})");
    CHECK(run({"ito-coeffs", "--input", input}).code == 0);
    // rounding leaves a residual of order 1e-16
    const auto r = run({"ito-coeffs", "--input", input, "--tolerance", "1e-30"});
    CHECK(r.code == 3);
    CHECK(json::parse(r.out).contains("unitarity_residual"));
    CHECK(run({"ito-coeffs", "--input", input, "--tolerance", "0"}).code == 2);

    CHECK(run({"moments", "--max-order", "6", "--tolerance", "1e-300"}).code == 3);
}

TEST_CASE("evolve three-method consistency") {
    TempDir dir;
    const auto input = dir.write("family.json", kUnitFamily);
    auto r = run({"evolve", "--input", input, "--f-const", "0.3,0.1", "--g-const", "0.2"});
    CHECK(r.code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc.at("consistent") == true);
    CHECK(doc.at("deviations").size() == 3);
    for (const auto &d : doc.at("deviations")) CHECK(d.at("deviation").get<double>() <= d.at("bound").get<double>());

    r = run({"evolve", "--input", input, "--method", "series", "--n-max", "0", "--vacuum"});
    CHECK(r.code == 0);
    const json s = json::parse(r.out).at("methods").at("series");
    CHECK(s.at("matrix") == json::parse("[[[1.0, 0.0]]]"));
    CHECK(s.at("error_bound").get<double>() > 0.0);
}

TEST_CASE("evolve Hamiltonian-only vacuum gives exp(-iHt)") {
    TempDir dir;
    const auto input = dir.write(
        "ham.json", R"({"d":1,"kappa":[0.5,0],"E00":[[2]],"E01":[[0]],"E10":[[0]],"E11":[[0]]})");
    const auto r = run({"evolve", "--input", input, "--method", "ode", "--vacuum", "--t", "0.5"});
    CHECK(r.code == 0);
    const auto m = json::parse(r.out).at("methods").at("ode").at("matrix")[0][0];
    CHECK(m[0].get<double>() == doctest::Approx(std::cos(1.0)).epsilon(1e-11));
    CHECK(m[1].get<double>() == doctest::Approx(-std::sin(1.0)).epsilon(1e-11));
}

TEST_CASE("evolve input errors") {
    TempDir dir;
    const auto input = dir.write("family.json", kUnitFamily);
    const auto step = dir.write("step.json", R"({"breakpoints":[0,0.3,1],"values":[1,2]})");
    CHECK(run({"evolve", "--input", input, "--f-step", step, "--slots", "4"}).code == 2);
    CHECK(run({"evolve", "--input", input, "--f-step", step, "--slots", "10"}).code == 0);
    CHECK(run({"evolve", "--input", input, "--method", "bogus"}).code == 2);
    CHECK(run({"evolve", "--input", input, "--vacuum", "--f-const", "1"}).code == 2);
    CHECK(run({"evolve", "--input", input, "--f-const", "1", "--f-step", step}).code == 2);
    CHECK(run({"evolve", "--input", input, "--t", "-1"}).code == 2);
}

TEST_CASE("markov-scan output") {
    auto r = run({"markov-scan", "--diagram", "4;(2,1),(4,3)"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("diagram,lambda,abs_integral,re_integral,im_integral,limit_prediction,slope_estimate\n", 0) ==
          0);
    // kappa = 1/2 so kappa^2 t^2 / 2 = 0.125
    CHECK(r.out.find("\"4;edges=(2,1),(4,3)\",0.0625,") != std::string::npos);
    CHECK(r.out.find(",0.125,") != std::string::npos);

    r = run({"markov-scan", "--diagram", "2;(2,1)", "--t", "0"});
    CHECK(r.code == 0);
    CHECK(r.out.find("\"2;edges=(2,1)\",1,0,0,0,0,nan\n") != std::string::npos);

    r = run({"markov-scan", "--all-pairs", "4"});
    CHECK(r.code == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 1 + 3 * 5);

    CHECK(run({"markov-scan", "--diagram", "2;(1,2)"}).code == 2);
    CHECK(run({"markov-scan"}).code == 2);
    CHECK(run({"markov-scan", "--diagram", "2;(2,1)", "--lambda", "0.1", "--lambda", "0.2"}).code == 2);
}

TEST_CASE("bounds report") {
    auto r = run({"bounds"});
    CHECK(r.code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc.at("all_hold") == true);
    CHECK(doc.at("xi").at("value").get<double>() == doctest::Approx(std::exp(1.0)).epsilon(1e-12));
    CHECK(doc.at("pule").size() == 4 * 5 * 3);
    CHECK(doc.at("pule")[0].at("bound") == 1.0);

    r = run({"bounds", "--xi-a", "0"});
    CHECK(r.code == 2);
    CHECK(r.err.find("||kappa E11|| < 1") != std::string::npos);
}

TEST_CASE("render writes text and svg") {
    auto r = run({"render", "--diagram", "2;(2,1)"});
    CHECK(r.code == 0);
    CHECK(r.out.find("o - o") != std::string::npos);
    r = run({"render", "--diagram", "2;(2,1)", "--format", "svg"});
    CHECK(r.out.find("<svg ") != std::string::npos);
    CHECK(r.out.find("</svg>") != std::string::npos);
    CHECK(run({"render", "--diagram", "3;(2,1)", "--format", "png"}).code == 2);
}

TEST_CASE("config file supplies defaults; flags override") {
    TempDir dir;
    const auto cfg = dir.write("cfg.json", R"({"subcommand":"combinatorics","n":5,"format":"json"})");
    auto r = run({"--config", cfg});
    CHECK(r.code == 0);
    CHECK(json::parse(r.out).at("bell") == 52);

    r = run({"--config", cfg, "--n", "6"});
    CHECK(json::parse(r.out).at("bell") == 203);

    r = run({"combinatorics", "--config=" + cfg, "--format", "text"});
    CHECK(r.out.find("bell: 52") != std::string::npos);

    const auto lists = dir.write("scan.json", R"j({"diagram":["2;(2,1)"],"lambda":[0.5,0.25],"t":2})j");
    r = run({"markov-scan", "--config", lists});
    CHECK(r.code == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 3);

    const auto flag = dir.write("flag.json", R"({"n":4,"enumerate":true})");
    r = run({"combinatorics", "--config", flag});
    CHECK(r.out.find("enumerated: 15") != std::string::npos);

    CHECK(run({"combinatorics", "--config", dir.write("bad.json", R"({"n":5,"bogus":1})")}).code == 2);
    CHECK(run({"--config", dir.write("nosub.json", R"({"n":5})")}).code == 2);
    CHECK(run({"render", "--config", cfg}).code == 2);
    CHECK(run({"--config", dir.file("missing.json")}).code == 2);
}

TEST_CASE("relative outputs land in QSC_OUTPUT_DIR") {
    TempDir dir;
    ::setenv("QSC_OUTPUT_DIR", dir.path.c_str(), 1);
    const auto r = run({"render", "--diagram", "2;(2,1)", "--output", "r.txt"});
    ::unsetenv("QSC_OUTPUT_DIR");
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    CHECK(slurp(dir.file("r.txt")).find("o - o") != std::string::npos);
}

TEST_CASE("outputs are deterministic") {
    const std::vector<std::vector<std::string>> commands{
        {"combinatorics", "--n", "30", "--format", "json"},
        {"moments", "--observable", "N", "--max-order", "6", "--z", "0.5,0.25"},
        {"markov-scan", "--all-pairs", "4", "--omega", "0.7"},
        {"bounds", "--format", "text"},
    };
    for (const auto &c : commands) {
        const auto a = run(c), b = run(c);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
    }
}
