#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "rings/io.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out, err;
};

fs::path workdir() {
    static const fs::path d = [] {
        fs::path p = fs::temp_directory_path() / ("rings_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(p);
        return p;
    }();
    return d;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Run run(const std::string& args) {
    const char* bin = std::getenv("RINGS_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "RINGS_BIN must point at the rings executable");
    const fs::path o = workdir() / "stdout.txt", e = workdir() / "stderr.txt";
    const std::string cmd = std::string(bin) + " " + args + " >" + o.string() + " 2>" + e.string();
    const int status = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(o);
    r.err = slurp(e);
    return r;
}

std::string path(const std::string& name) { return (workdir() / name).string(); }

bool has(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("help and usage errors") {
    CHECK(run("--help").code == 0);
    CHECK(run("").code == 2);
    CHECK(run("coeffs --no-such-flag").code == 2);
    CHECK(run("frobnicate").code == 2);
}

TEST_CASE("coeffs") {
    Run r = run("coeffs --sh --gamma 1.6");
    CHECK(r.code == 0);
    CHECK(has(r.out, "kc=1\n"));
    CHECK(has(r.out, "U0=1,0\n"));
    CHECK(has(r.out, "U1=0,1\n"));
    CHECK(has(r.out, "c0=0.25\n"));
    CHECK(has(r.out, "c3=-1.95222222222\n"));
    CHECK(has(r.out, "subcritical=yes"));

    r = run("coeffs --sh --gamma 0.5");
    CHECK(r.code == 3);
    CHECK(has(r.out, "subcritical=no"));

    std::ofstream(path("bad.sys")) << "M1 = -1 1 0 -1\nM2 = 0 0 oops 0\n";
    r = run("coeffs --system " + path("bad.sys"));
    CHECK(r.code == 2);
    CHECK(has(r.err, "line 2"));

    std::ofstream(path("flat.sys")) << "M1 = -1 0 0 -1\nM2 = 0 0 -1 0\n";
    CHECK(run("coeffs --system " + path("flat.sys")).code == 2);

    std::ofstream(path("sh.sys")) << "sh gamma=1.6\n";
    r = run("coeffs --system " + path("sh.sys"));
    CHECK(r.code == 0);
    CHECK(has(r.out, "c0=0.25\n"));
    CHECK(run("coeffs --system " + path("missing.sys")).code != 0);
}

TEST_CASE("match") {
    Run r = run("match -m 2 -N 1 --compare-paper --out " + path("m21.txt"));
    CHECK(r.code == 0);
    CHECK(has(r.out, "compare-paper: PASS, 2 solutions"));
    std::ifstream in(path("m21.txt"));
    const auto rows = rings::read_solution_table(in);
    int primary = 0;
    for (const auto& row : rows) {
        CHECK(row.m == 2);
        CHECK(row.N == 1);
        CHECK(row.residual <= 1e-10);
        if (has(row.flags, "primary")) ++primary;
    }
    CHECK(primary == 2);

    r = run("match -m 3 -N 2");
    CHECK(r.code == 0);
    CHECK(has(r.err, "primary=0"));

    CHECK(run("match -m 2 -N 13").code == 2);
    CHECK(run("match -m 2 -N 6 --starts 10 --compare-paper --out " + path("m26.txt")).code == 2);
}

TEST_CASE("match output is deterministic across thread counts") {
    REQUIRE(run("match -m 2 -N 2 --threads 1 --out " + path("a.txt")).code == 0);
    REQUIRE(run("match -m 2 -N 2 --threads 3 --out " + path("b.txt")).code == 0);
    CHECK(slurp(path("a.txt")) == slurp(path("b.txt")));
}

TEST_CASE("gl") {
    Run r = run("gl --c0 1 --c3 -1 --out " + path("gl.csv"));
    CHECK(r.code == 0);
    CHECK(has(r.out, "q0=2.17985"));
    const std::string csv = slurp(path("gl.csv"));
    CHECK(has(csv, "s,q,dq\n"));
    CHECK(run("gl --c0 1 --c3 1").code == 3);
    CHECK(run("gl --sh --gamma 0.5").code == 3);
}

TEST_CASE("synthesize") {
    const std::string base = "synthesize --sh --gamma 1.6 -m 2 -N 1 --a 0,0.577 --mu 0.08 --disc 20 --points 41";
    Run r = run(base + " --out " + path("f1.csv") + " --radial " + path("radial.csv"));
    CHECK(r.code == 0);
    const auto f = rings::import_field(path("f1.csv"));
    CHECK(f.m == 2);
    CHECK(f.N == 1);
    CHECK(f.mu == 0.08);
    CHECK_FALSE(f.values.empty());
    bool has_r0 = false;
    for (const auto& kv : f.meta) has_r0 = has_r0 || kv.rfind("r0=", 0) == 0;
    CHECK(has_r0);
    CHECK(has(slurp(path("radial.csv")), "# mode=1\nr,u_n_comp0,u_n_comp1\n"));

    REQUIRE(run(base + " --out " + path("f2.csv")).code == 0);
    CHECK(slurp(path("f1.csv")) == slurp(path("f2.csv")));

    REQUIRE(run(base + " --sign -1 --out " + path("fneg.csv")).code == 0);
    const auto g = rings::import_field(path("fneg.csv"));
    REQUIRE(g.values.size() == f.values.size());
    for (std::size_t k = 0; k < f.values.size(); ++k) CHECK(g.values[k] == -f.values[k]);

    CHECK(run("synthesize -m 2 --a 0,0.577 --mu 0").code == 2);
    CHECK(run("synthesize -m 2 -N 2 --a 0,0.577 --mu 0.08").code == 2);
    CHECK(run("synthesize -m 2 --mu 0.08").code == 2);
    CHECK(run("synthesize --gamma 0.5 -m 2 --a 0,0.577 --mu 0.08").code == 3);

    REQUIRE(run("match -m 2 -N 1 --out " + path("sols.txt")).code == 0);
    r = run("synthesize --solution-file " + path("sols.txt") + " --id 1 -m 2 --mu 0.08 --points 11 --out " +
            path("f3.csv"));
    CHECK(r.code == 0);
    CHECK(run("synthesize --solution-file " + path("sols.txt") + " --id 9 -m 2 --mu 0.08").code == 2);
}

TEST_CASE("config file with flag precedence") {
    std::ofstream(path("run.ini")) << "mu = 0.04\npoints = 21\nseed = 9\n";
    REQUIRE(run("synthesize --config " + path("run.ini") + " -m 2 --a 1 --out " + path("c1.csv")).code == 0);
    auto f = rings::import_field(path("c1.csv"));
    CHECK(f.mu == 0.04);
    bool seed9 = false;
    for (const auto& kv : f.meta) seed9 = seed9 || kv == "seed=9";
    CHECK(seed9);
    REQUIRE(run("synthesize --config " + path("run.ini") + " -m 2 --a 1 --mu 0.02 --out " + path("c2.csv")).code == 0);
    CHECK(rings::import_field(path("c2.csv")).mu == 0.02);
}

TEST_CASE("verify") {
    Run r = run("verify -m 2 --a 0.447,0.365 --mus 0.08,0.02");
    CHECK(r.code == 0);
    std::istringstream in(r.out);
    std::string header, row1, row2;
    std::getline(in, header);
    std::getline(in, row1);
    std::getline(in, row2);
    CHECK(has(header, "seed_residual_l2"));
    auto second = [](const std::string& s) { return std::stod(s.substr(s.find(',') + 1)); };
    CHECK(second(row2) < second(row1));

    r = run("verify -m 2 --a 0.447,0.365 --mu 0.05 --refine --snapshot " + path("snap.csv"));
    CHECK(r.code == 0);
    CHECK(has(r.out, "0.050000000000000003,"));
    CHECK(has(slurp(path("snap.csv")), "r,mode,comp0,comp1\n"));

    CHECK(run("verify -m 2 --a 0.447,0.365 --mu 0.05 --refine --tol 1e-30").code == 4);

    r = run("verify -m 2 --a 1 --branch 0.05:0.02:3 --out " + path("branch.csv"));
    CHECK(r.code == 0);
    const std::string br = slurp(path("branch.csv"));
    CHECK(has(br, "mu,l2_norm,converged\n"));
    CHECK(has(r.out, "branch slope="));
    CHECK(run("verify -m 2 --a 1 --branch 0.05:x").code == 2);
}

TEST_CASE("continuum") {
    Run r = run("continuum -M 33 --family 5,10,20 --out " + path("alpha.csv") + " --table " + path("dist.csv"));
    CHECK(r.code == 0);
    CHECK(has(slurp(path("alpha.csv")), "t,alpha\n"));
    const std::string t = slurp(path("dist.csv"));
    CHECK(has(t, "N1,N2,sup_distance\n5,10,"));
    CHECK(has(t, "20,continuum,"));
    CHECK(run("continuum -M 8").code == 2);
}
