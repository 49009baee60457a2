#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "qgtk/config.hpp"
#include "qgtk/suite.hpp"

namespace fs = std::filesystem;
using namespace qgtk;

namespace {
int run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + std::string(QGTK_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

fs::path scratch(const std::string& name) {
    const fs::path d = fs::temp_directory_path() / ("qgtk_cli_" + name);
    fs::remove_all(d);
    return d;
}
}  // namespace

TEST_CASE("registry names are unique and expand from all") {
    const auto all = expand_suite({"all"});
    CHECK(all.size() == check_registry().size());
    CHECK(find_check("kernel-l1") != nullptr);
    CHECK(find_check("no-such-check") == nullptr);
    CHECK(expand_suite({"kernel-l1", "all"}).front() == "kernel-l1");
}

TEST_CASE("config validation") {
    RunConfig c;
    c.suite = {"kernel-l1"};
    CHECK_NOTHROW(validate_config(c));
    c.suite = {"missing"};
    CHECK_THROWS_AS(validate_config(c), ConfigError);
    c.suite = {"kernel-l1"};
    c.n = 48;
    CHECK_THROWS_AS(validate_config(c), ConfigError);
    c.n = 32;
    c.sweep_axis = "j";
    c.sweep_check = "kernel-l1";
    c.sweep_values = {1};
    CHECK_THROWS_AS(validate_config(c), ConfigError);
    c.sweep_axis = "F";
    c.sweep_values = {1.5};
    CHECK_THROWS_AS(validate_config(c), ConfigError);
    c.sweep_values = {0.5};
    CHECK_NOTHROW(validate_config(c));
}

TEST_CASE("verify writes reports and is byte-identical across runs") {
    const fs::path a = scratch("det_a"), b = scratch("det_b");
    CHECK(run("verify gamma-decomposition kernel-l1 --n 32 --output-dir " + a.string()) == 0);
    CHECK(run("verify gamma-decomposition kernel-l1 --n 32 --output-dir " + b.string()) == 0);
    for (const char* f : {"report.csv", "gamma-decomposition.csv", "kernel-l1.csv", "kernel-l1.dat", "summary.txt"}) {
        CAPTURE(f);
        REQUIRE(fs::exists(a / f));
        CHECK(slurp(a / f) == slurp(b / f));
    }
    CHECK(slurp(a / "summary.txt").find("overall: PASS") != std::string::npos);
    CHECK(run("report --dir " + a.string()) == 0);
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST_CASE("degenerate viscosities pass the symbol identity") {
    const fs::path d = scratch("degenerate");
    CHECK(run("verify gamma-decomposition --nu 1 --nu-prime 1 --n 16 --output-dir " + d.string()) == 0);
    fs::remove_all(d);
}

TEST_CASE("usage errors exit with 1") {
    const fs::path d = scratch("usage");
    CHECK(run("verify no-such-check --output-dir " + d.string()) == 1);
    CHECK(run("verify kernel-l1 --F 2 --output-dir " + d.string()) == 1);
    CHECK(run("verify kernel-l1 --n 12 --output-dir " + d.string()) == 1);
    CHECK(run("verify kernel-l1 --bogus 1") == 1);
    CHECK(run("sweep --axis j --values 1,2 --check kernel-l1 --output-dir " + d.string()) == 1);
    CHECK(run("sweep --axis F --check kernel-l1 --output-dir " + d.string()) == 1);
    CHECK(run("") == 1);
    CHECK(run("report --dir " + d.string()) == 1);
    fs::remove_all(d);
}

TEST_CASE("a failed check exits with 2") {
    const fs::path d = scratch("failed");
    fs::create_directories(d);
    std::ofstream(d / "report.csv") << "check,part,pass,metric,value\nkernel-l1,kernel-l1,0,rows,1\n";
    CHECK(run("report --dir " + d.string()) == 2);
    fs::remove_all(d);
}

TEST_CASE("sweep over F writes one line per value") {
    const fs::path d = scratch("sweep");
    CHECK(run("sweep --axis F --values 0.25,0.5,1 --check kernel-l1 --n 32 --output-dir " + d.string()) == 0);
    const std::string s = slurp(d / "sweep.csv");
    for (const char* v : {"F,0.25", "F,0.5", "F,1"}) CHECK(s.find(v) != std::string::npos);
    CHECK(s.find("kernel-l1.l1_norm") != std::string::npos);
    CHECK(fs::exists(d / "kernel-l1_F_0.25.csv"));
    fs::remove_all(d);
}

TEST_CASE("config file, flags and environment precedence") {
    const fs::path d = scratch("config"), e = scratch("config_env"), f = scratch("config_flag");
    fs::create_directories(d);
    std::ofstream(d / "run.cfg") << "# test config\nnu = 1\nnu_prime = 1\nF = 0.5\nn = 16\noutput_dir = " << d.string() << "\n";
    CHECK(run("verify gamma-decomposition --config " + (d / "run.cfg").string() + " --F 0.25") == 0);
    CHECK(slurp(d / "config.txt").find("F = 2.500000000e-01") != std::string::npos);
    CHECK(slurp(d / "config.txt").find("nu_prime = 1.000000000e+00") != std::string::npos);
    CHECK(run("verify gamma-decomposition --config " + (d / "run.cfg").string(), "QGTK_OUTPUT_DIR=" + e.string()) == 0);
    CHECK(fs::exists(e / "report.csv"));
    CHECK(run("verify gamma-decomposition --config " + (d / "run.cfg").string() + " --output-dir " + f.string(),
              "QGTK_OUTPUT_DIR=" + e.string()) == 0);
    CHECK(fs::exists(f / "report.csv"));
    fs::remove_all(d);
    fs::remove_all(e);
    fs::remove_all(f);
}

TEST_CASE("solver subcommands write archives") {
    const fs::path d = scratch("solve"), q = scratch("solve_qg");
    CHECK(run("solve-tdqg --n 16 --t-final 0.2 --dt 0.05 --output-dir " + d.string()) == 0);
    CHECK(fs::exists(d / "manifest.json"));
    CHECK(fs::exists(d / "u_0004.bin"));
    CHECK(run("solve-qg --n 16 --t-final 0.1 --dt 0.05 --output-dir " + q.string()) == 0);
    CHECK(fs::exists(q / "u_0002.bin"));
    CHECK(run("solve-tdqg --n 16 --t-final 1 --dt 5 --v-amp 5 --output-dir " + d.string()) == 1);
    fs::remove_all(d);
    fs::remove_all(q);
}
