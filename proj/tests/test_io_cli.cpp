// Tests for serialization, config handling and the command-line front end.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "run.hpp"
#include "wqed/errors.hpp"
#include "wqed/figures.hpp"
#include "wqed/io.hpp"
#include "wqed/scattering.hpp"

using namespace wqed;
using doctest::Approx;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "wqed");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = wqed::cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream in(line);
    for (std::string cell; std::getline(in, cell, ',');) out.push_back(cell);
    return out;
}

class TempDir {
public:
    TempDir() {
        std::random_device rd;
        path_ = fs::temp_directory_path() / ("wqed_test_" + std::to_string(rd()));
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    fs::path file(const std::string& name, const std::string& content) const {
        const fs::path p = path_ / name;
        std::ofstream(p) << content;
        return p;
    }
    fs::path operator/(const std::string& name) const { return path_ / name; }

private:
    fs::path path_;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

} // namespace

TEST_CASE("format_double round-trips") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 2000; ++i) {
        const double v = u(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
        CHECK(std::stod(format_double(v)) == v);
    }
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(std::numeric_limits<double>::min()) == "2.2250738585072014e-308");
}

TEST_CASE("CSV layout") {
    Table t;
    t.columns = {"name", "x", "y"};
    t.label_column = "name";
    t.labels = {"first", "second"};
    t.rows = {{1.0, 0.25}, {-2.0, 1e-20}};
    t.metadata = {{"E", 17.5}};
    CHECK(to_csv(t) == "# E=17.5\nname,x,y\nfirst,1,0.25\nsecond,-2,1e-20\n");
    CHECK(t.column("y") == std::vector<double>{0.25, 1e-20});
    CHECK_THROWS_AS(t.column_index("z"), InvalidInput);
}

TEST_CASE("JSON round-trip") {
    const Table t = bound_table(figure_params(kFigureCases[2]));
    const Table back = table_from_json(nlohmann::json::parse(to_json_string(t)));
    CHECK(back.columns == t.columns);
    CHECK(back.label_column == t.label_column);
    CHECK(back.labels == t.labels);
    CHECK(back.rows == t.rows);
    CHECK(back.metadata == t.metadata);
    CHECK(parse_output_format("json") == OutputFormat::Json);
    CHECK_THROWS_AS(parse_output_format("xml"), InvalidInput);
}

TEST_CASE("config parsing") {
    std::istringstream in("# comment\nomega = 3\n\n  G=2.5  # trailing\nconvention = minus\n");
    const auto cfg = parse_config(in, "mem");
    REQUIRE(cfg.size() == 3);
    CHECK(cfg.at("omega").value == "3");
    CHECK(cfg.at("omega").line == 2);
    CHECK(cfg.at("G").value == "2.5");
    CHECK(cfg.at("G").line == 4);

    std::istringstream dup("omega=1\nG=1\nomega=2\n");
    try {
        (void)parse_config(dup, "dup.cfg");
        FAIL("expected InvalidInput");
    } catch (const InvalidInput& e) {
        CHECK(std::string(e.what()).find("dup.cfg:3") != std::string::npos);
    }
    std::istringstream bad("omega=1\njunk\n");
    try {
        (void)parse_config(bad, "bad.cfg");
        FAIL("expected InvalidInput");
    } catch (const InvalidInput& e) {
        CHECK(std::string(e.what()).find("bad.cfg:2") != std::string::npos);
    }
}

TEST_CASE("zeta file") {
    TempDir dir;
    const auto z = read_zeta_file(dir.file("z.txt", "# couplings\n0.6 0\n\n0 0.8\n"));
    REQUIRE(z.size() == 2);
    CHECK(z[1] == std::complex<double>(0.0, 0.8));
    try {
        (void)read_zeta_file(dir.file("bad.txt", "1 0\n1 x\n"));
        FAIL("expected InvalidInput");
    } catch (const InvalidInput& e) {
        CHECK(std::string(e.what()).find("bad.txt:2") != std::string::npos);
    }
    CHECK_THROWS_AS(read_zeta_file(dir / "missing.txt"), InvalidInput);

    const auto r = run_cli({"bound", "--xi", "1", "--zeta-file", (dir / "z.txt").string(), "--omega", "0", "--Omega", "0"});
    REQUIRE(r.code == cli::kExitOk);
    // G = 1 here, compare with an explicit run
    const auto ref = run_cli({"bound", "--G", "1", "--omega", "0", "--Omega", "0"});
    CHECK(r.out == ref.out);
}

TEST_CASE("spectrum command") {
    const auto r = run_cli({"spectrum", "--k-count", "2", "--G", "0"});
    REQUIRE(r.code == cli::kExitOk);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 3);
    CHECK(ls[0] == "k,E,T,R,Re_s,Im_s,uA2,uB2");
    for (int i = 1; i <= 2; ++i) CHECK(std::stod(split(ls[i])[2]) == Approx(1.0).epsilon(1e-13));

    const auto j = run_cli({"spectrum", "--k-count", "5", "--format", "json"});
    REQUIRE(j.code == cli::kExitOk);
    const Table t = table_from_json(nlohmann::json::parse(j.out));
    CHECK(t.rows.size() == 5);
    for (const auto& row : t.rows) CHECK(row[2] + row[3] == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("units of g") {
    const auto a = run_cli({"spectrum", "--k-count", "7", "--omega", "10", "--Omega", "16", "--G", "6", "--g", "2"});
    const auto b = run_cli({"spectrum", "--k-count", "7", "--omega", "5", "--Omega", "8", "--G", "3"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("config file and flag precedence") {
    TempDir dir;
    const auto cfg = dir.file("run.cfg", "omega = 3\nOmega = 2\nG = 3\nk-count = 4\n");
    const auto from_file = run_cli({"spectrum", "--config", cfg.string()});
    const auto from_flags = run_cli({"spectrum", "--omega", "3", "--Omega", "2", "--G", "3", "--k-count", "4"});
    REQUIRE(from_file.code == 0);
    CHECK(from_file.out == from_flags.out);

    const auto overridden = run_cli({"spectrum", "--config", cfg.string(), "--G", "0"});
    REQUIRE(overridden.code == 0);
    const auto ls = lines(overridden.out);
    REQUIRE(ls.size() == 5);
    for (std::size_t i = 1; i < ls.size(); ++i) CHECK(std::stod(split(ls[i])[2]) == Approx(1.0).epsilon(1e-13));

    const auto unknown = dir.file("unknown.cfg", "omega = 3\ncolour = blue\n");
    const auto r = run_cli({"spectrum", "--config", unknown.string()});
    CHECK(r.code == cli::kExitInvalid);
    CHECK(r.err.find("unknown.cfg:2") != std::string::npos);

    const auto badval = dir.file("badval.cfg", "omega = three\n");
    const auto r2 = run_cli({"spectrum", "--config", badval.string()});
    CHECK(r2.code == cli::kExitInvalid);
    CHECK(r2.err.find("badval.cfg:1") != std::string::npos);
}

TEST_CASE("invalid input exits with 1") {
    CHECK(run_cli({"spectrum", "--G", "-1"}).code == cli::kExitInvalid);
    CHECK(run_cli({"spectrum", "--g", "0"}).code == cli::kExitInvalid);
    CHECK(run_cli({"spectrum", "--k-min", "0"}).code == cli::kExitInvalid);
    CHECK(run_cli({"spectrum", "--k-count", "1"}).code == cli::kExitInvalid);
    CHECK(run_cli({"spectrum", "--G", "2", "--xi", "1", "--n-atoms", "4"}).code == cli::kExitInvalid);
    CHECK(run_cli({"spectrum", "--format", "xml"}).code == cli::kExitInvalid);
    CHECK(run_cli({"figure", "fig1"}).code == cli::kExitInvalid);
    CHECK(run_cli({"nonsense"}).code == cli::kExitInvalid);
    CHECK(run_cli({"spectrum", "--config", "/nonexistent/run.cfg"}).code == cli::kExitInvalid);
    CHECK(run_cli({"wavepacket", "--L", "100", "--j0", "-10"}).code == cli::kExitInvalid);
}

TEST_CASE("collective coupling from xi and N") {
    const auto a = run_cli({"bound", "--xi", "1.5", "--n-atoms", "4"});
    const auto b = run_cli({"bound", "--G", "3"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("figure fig9 places both levels outside [13, 17]") {
    const auto r = run_cli({"figure", "fig9"});
    REQUIRE(r.code == cli::kExitOk);
    double E1 = 0.0, E2 = 0.0;
    for (const auto& l : lines(r.out)) {
        if (l.rfind("# E_b1=", 0) == 0) E1 = std::stod(l.substr(7));
        if (l.rfind("# E_b2=", 0) == 0) E2 = std::stod(l.substr(7));
    }
    CHECK(E1 > 17.0);
    CHECK(E2 < 13.0);
    CHECK(E1 == Approx(17.1331254403289189).epsilon(1e-14));
}

TEST_CASE("figure tables") {
    const auto grid = linear_grid(0.1, 3.0, 11);
    const Table f5 = figure_table(FigureId::Fig5d, grid);
    CHECK(f5.columns == std::vector<std::string>{"k", "T_a", "T_b", "T_c"});
    CHECK(f5.rows.size() == 11);
    const Table f7 = figure_table(FigureId::Fig7, grid);
    CHECK(f7.columns.size() == 7);
    const Table f9 = figure_table(FigureId::Fig9, grid);
    CHECK(f9.rows.size() == 61);
    CHECK(f9.column("j").front() == -30.0);
}

TEST_CASE("identical configuration gives identical bytes") {
    TempDir dir;
    const std::vector<std::string> args{"spectrum", "--omega", "3", "--Omega", "2", "--G", "3", "--k-count", "333"};
    auto a = args;
    a.insert(a.end(), {"--out", (dir / "a.csv").string()});
    auto b = args;
    b.insert(b.end(), {"--out", (dir / "b.csv").string()});
    REQUIRE(run_cli(a).code == 0);
    REQUIRE(run_cli(b).code == 0);
    CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
    CHECK(slurp(dir / "a.csv") == run_cli(args).out);
}

TEST_CASE("wavepacket command") {
    TempDir dir;
    const auto r = run_cli({"wavepacket", "--L", "400", "--sigma", "15", "--j0", "-150", "--t-final", "150", "--absorber-width", "100",
                        "--snapshot-every", "2500", "--snapshots", (dir / "snap.csv").string()});
    REQUIRE(r.code == cli::kExitOk);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() >= 2);
    const auto header = split(ls[ls.size() - 2]);
    const auto values = split(ls.back());
    REQUIRE(header.size() == values.size());
    std::size_t col = header.size();
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == "T_num") col = i;
    REQUIRE(col < header.size());
    CHECK(std::abs(std::stod(values[col]) - 36.0 / 117.0) < 0.05);
    const auto snap = lines(slurp(dir / "snap.csv"));
    CHECK(snap.front() == "t,j,prob");
    CHECK(snap.size() == 1 + 4 * 801);
}
