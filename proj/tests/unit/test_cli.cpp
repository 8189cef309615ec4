#include <doctest.h>

#include "magnetic/cli.hpp"
#include "magnetic/json_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

using namespace magnetic;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    TempDir()
    {
        path = fs::temp_directory_path() / ("magnetic_cli_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name, const std::string& text) const
    {
        std::ofstream(path / name) << text;
        return (path / name).string();
    }
    std::string at(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("check-classical passes")
{
    Run r = run({"elliptic", "check-classical", "--name", "E4D_over_E6sq", "--prec", "500"});
    CHECK(r.code == cli::kExitOk);
    Json j = Json::parse(r.out);
    CHECK(j["schema"] == 1);
    CHECK(j["status"] == "pass");
    CHECK(j["result"]["failures"] == 0);
    CHECK(j["parameters"]["prec"] == 500);
}

TEST_CASE("missing or malformed input is exit 2")
{
    TempDir tmp;
    Run r = run({"lattice", "dump", "--lattice", tmp.at("missing.json")});
    CHECK(r.code == cli::kExitInput);
    CHECK(r.err.find("missing.json") != std::string::npos);

    std::string bad = tmp.file("bad.json", "{\"gram\": [[2, 1], [1, 2]\n");
    r = run({"lattice", "dump", "--lattice", bad});
    CHECK(r.code == cli::kExitInput);
    CHECK(r.err.find("line 2") != std::string::npos);

    std::string odd = tmp.file("odd.json", "{\"gram\": [[1, 0], [0, 2]]}");
    CHECK(run({"lattice", "dump", "--lattice", odd}).code == cli::kExitInput);

    CHECK(run({"elliptic", "check-classical", "--name", "nope"}).code == cli::kExitInput);
    CHECK(run({"elliptic"}).code == cli::kExitInput);
    CHECK(run({"--format", "xml", "elliptic", "check-j"}).code == cli::kExitInput);
    std::string toml = tmp.file("bad.toml", "bogus = 3\n");
    CHECK(run({"--config", toml, "elliptic", "check-j"}).code == cli::kExitInput);
    CHECK(run({"--config", tmp.at("none.toml"), "elliptic", "check-j"}).code == cli::kExitInput);
}

TEST_CASE("form pipeline and negative control")
{
    TempDir tmp;
    std::string lattice = tmp.file("L.json", "{\"builtin\": \"U+U+E8(-1)\"}");
    std::string form = tmp.at("f.json");
    Run b = run({"--out", form, "form", "build", "--lattice", lattice, "--expr", "E4^2/Delta", "--prec", "60",
                 "--bol", "6"});
    REQUIRE(b.code == cli::kExitOk);

    Run ok = run({"form", "check-div", "--lattice", lattice, "--form", form, "--s", "6"});
    CHECK(ok.code == cli::kExitOk);
    CHECK(Json::parse(ok.out)["result"]["failed"] == 0);

    Json f = read_json_file(form);
    std::string c7 = f["components"][0]["coeffs"]["7"];
    f["components"][0]["coeffs"]["7"] = to_string(Rational(Integer(c7) + 1));
    std::string corrupted = tmp.file("bad.json", f.dump());
    Run bad = run({"form", "check-div", "--lattice", lattice, "--form", corrupted, "--s", "6"});
    CHECK(bad.code == cli::kExitCheckFailed);
    Json rep = Json::parse(bad.out);
    CHECK(rep["status"] == "fail");
    REQUIRE(rep["result"]["not_passing"].size() == 1);
    CHECK(rep["result"]["not_passing"][0]["exponent"] == "7");
    CHECK(rep["result"]["not_passing"][0]["verdict"] == "fail");

    Run m = run({"lift", "check-magnetic", "--lattice", lattice, "--form", form, "--lambda0",
                 "1,1,0,0,0,0,0,0,0,0", "--lmax", "7", "--s", "6"});
    CHECK(m.code == cli::kExitOk);
    Json mj = Json::parse(m.out);
    CHECK(mj["parameters"]["lattice_hash"].get<std::string>().size() == 16);
    CHECK(mj["result"]["hypotheses"]["cusp_space_trivial"] == "unasserted");
    CHECK(mj["result"]["hypotheses"]["input_divisibility_certified"] == true);
    CHECK(mj["result"]["entries"].size() == 7);

    Run p = run({"lift", "check-magnetic", "--lattice", lattice, "--form", form, "--lambda0",
                 "1,1,0,0,0,0,0,0,0,0", "--lmax", "10", "--s", "6"});
    CHECK(p.code == cli::kExitInput);
    CHECK(p.err.find("required precision: 101") != std::string::npos);

    Run lattice_mismatch =
        run({"form", "check-div", "--lattice", tmp.file("A.json", "{\"builtin\": \"U+U\"}"), "--form", form, "--s", "6"});
    CHECK(lattice_mismatch.code == cli::kExitInput);
}

TEST_CASE("reports are deterministic")
{
    TempDir tmp;
    std::string form = tmp.at("f.json");
    REQUIRE(run({"--out", form, "form", "build", "--lattice", tmp.file("U.json", "{\"builtin\": \"U+U\"}"),
                 "--expr", "E4", "--prec", "20"})
                .code == cli::kExitOk);
    std::vector<std::string> args{"lift", "expand", "--lattice", tmp.file("UU.json", "{\"builtin\": \"U+U\"}"),
                                  "--form", form, "--height", "4"};
    Run a = run(args);
    Run b = run(args);
    CHECK(a.code == cli::kExitOk);
    CHECK(a.out == b.out);
    CHECK(Json::parse(a.out)["result"]["non_integral"].empty());
}

TEST_CASE("config file supplies subcommand and options")
{
    TempDir tmp;
    std::string toml = tmp.file("job.toml", "format = \"table\"\n[elliptic.check-classical]\nname = \"E6D_over_E4cu\"\nprec = 40\n");
    Run r = run({"--config", toml});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out.find("n^2 | c(n) for 1 <= n < 40, 0 failures") != std::string::npos);
}

TEST_CASE("check-j surfaces failures")
{
    Run r = run({"elliptic", "check-j", "--bound", "3"});
    CHECK(r.code == cli::kExitCheckFailed);
    Json j = Json::parse(r.out);
    CHECK(j["result"]["failing"][0]["m"] == 1);
}
