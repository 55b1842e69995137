#include <blockmap/numeric.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <sys/wait.h>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

std::string cli_path() {
    const char* p = std::getenv("BLOCKMAP_CLI");
    REQUIRE(p != nullptr);
    return p;
}

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string out_file =
        (fs::temp_directory_path() / ("blockmap_cli_out_" + std::to_string(::getpid()) +
                                      ".txt")).string();
    const std::string cmd = cli_path() + " " + args + " > " + out_file + " 2>/dev/null";
    const int rc = std::system(cmd.c_str());
    std::ifstream in(out_file);
    std::ostringstream ss;
    ss << in.rdbuf();
    std::remove(out_file.c_str());
    return {WEXITSTATUS(rc), ss.str()};
}

struct CacheDirGuard {
    fs::path dir;
    CacheDirGuard() : dir(fs::temp_directory_path() /
                          ("blockmap_cli_cache_" + std::to_string(::getpid()))) {
        setenv("BLOCKMAP_CACHE", dir.c_str(), 1);
    }
    ~CacheDirGuard() {
        unsetenv("BLOCKMAP_CACHE");
        std::error_code ec;
        fs::remove_all(dir, ec);
    }
};

}  // namespace

TEST_CASE("coeffs: quad mu table matches the published polynomials") {
    auto r = run("coeffs --model quad --what mu --n 4");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("n,u_power,coefficient\n") == 0);
    CHECK(r.out.find("1,1,2\n") != std::string::npos);      // m_1 = 2u
    CHECK(r.out.find("2,1,1\n") != std::string::npos);      // m_2 = u + 8u^2
    CHECK(r.out.find("2,2,8\n") != std::string::npos);
    CHECK(r.out.find("4,4,224\n") != std::string::npos);    // top of m_4
}

TEST_CASE("coeffs: quad blocks 2, 1, 2") {
    auto r = run("coeffs --model quad --what blocks --n 3");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "j,b_j\n1,2\n2,1\n3,2\n");
}

TEST_CASE("coeffs: meander component rows include (2,1,2) and (2,2,2)") {
    CacheDirGuard cache;
    auto r = run("coeffs --model meander --what components --n 2");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("2,1,2\n") != std::string::npos);
    CHECK(r.out.find("2,2,2\n") != std::string::npos);
}

TEST_CASE("critical: quad exact values in the JSON report") {
    auto r = run("critical --model quad");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"exact\": \"9/5\"") != std::string::npos);
    CHECK(r.out.find("\"exact\": \"25/432\"") != std::string::npos);
    CHECK(r.out.find("\"pass\": false") == std::string::npos);
}

TEST_CASE("critical: cubic numeric values") {
    auto r = run("critical --model cubic");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("3.02216") != std::string::npos);
    CHECK(r.out.find("0.0342879") != std::string::npos);
}

TEST_CASE("critical: bicubic without a file is a data error") {
    auto r = run("critical --model bicubic");
    CHECK(r.exit_code == 2);
}

TEST_CASE("estimate: quad (20,5) at u = 1 runs and reports") {
    auto r = run("estimate --model quad --what mu --N 20 --p 5 --u 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"estimates\"") != std::string::npos);
    // coarse value: about 2.5 at u = 1 even with N = 20
    CHECK(r.out.find("\"estimate\": 2.") != std::string::npos);
}

TEST_CASE("profile: small grid with checks") {
    auto r = run("profile --r-max 2 --points 5 --crosscheck");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("r,phi,rho,phi_contour\n") == 0);
    CHECK(r.out.find("# phi_at_20,") != std::string::npos);
    CHECK(r.out.find("# crosscheck_max_deviation,") != std::string::npos);
}

TEST_CASE("reproducibility: identical config gives byte-identical output") {
    CacheDirGuard cache;
    auto a = run("coeffs --model cubic --what mu --n 6");
    auto b = run("coeffs --model cubic --what mu --n 6");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    auto c = run("estimate --model quad --what mu --N 20 --p 5 --u-from 1 --u-to 2 --u-step 0.5");
    auto d = run("estimate --model quad --what mu --N 20 --p 5 --u-from 1 --u-to 2 --u-step 0.5");
    CHECK(c.out == d.out);
}

TEST_CASE("cache: second run reuses the stored table and matches") {
    CacheDirGuard cache;
    auto first = run("coeffs --model bicubic --what mu --n 6");
    REQUIRE(first.exit_code == 0);
    REQUIRE(fs::exists(cache.dir));
    bool found = false;
    for (const auto& e : fs::directory_iterator(cache.dir)) found = found || e.is_regular_file();
    CHECK(found);
    auto second = run("coeffs --model bicubic --what mu --n 6");
    CHECK(second.exit_code == 0);
    CHECK(second.out == first.out);
}

TEST_CASE("usage errors exit 1") {
    CHECK(run("coeffs --model nosuch").exit_code == 1);
    CHECK(run("nosuchcommand").exit_code == 1);
    CHECK(run("estimate --model quad --N 10 --p 9 --u 1").exit_code == 2);
}
