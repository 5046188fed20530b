#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#ifndef RSPIN_CLI_PATH
#define RSPIN_CLI_PATH "rspin"
#endif

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args, const std::string& env = "") {
    std::string cmd = env + (env.empty() ? "" : " ") + std::string(RSPIN_CLI_PATH) + " " + args +
                      " 2>/dev/null";
    std::array<char, 512> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (fgets(buf.data(), buf.size(), pipe)) out += buf.data();
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

}  // namespace

TEST_CASE("correlator queries match the pinned values") {
    auto r1 = run("correlator --r 3 --sector open --insertions 1:0 --k 2");
    CHECK(r1.exit_code == 0);
    CHECK(r1.out == "1\n");

    auto r2 = run("correlator --r 3 --sector extended --insertions 2:0,2:0,1:0");
    CHECK(r2.exit_code == 0);
    CHECK(r2.out == "-1/3\n");

    auto r3 = run("correlator --r 2 --sector open --insertions \"\" --k 3 --format json");
    CHECK(r3.exit_code == 0);
    CHECK(r3.out.find("\"key\": \"open:2:3:[]\"") != std::string::npos);
    CHECK(r3.out.find("\"path\": \"gd\"") != std::string::npos);

    auto r4 = run("correlator --r 4 --sector open --insertions 3:0 --k 4 --path both");
    CHECK(r4.exit_code == 0);
    CHECK(r4.out.find("match: true") != std::string::npos);

    // extended descendent key on both paths (string example value: 1)
    auto r5 = run("correlator --r 3 --sector extended --insertions 0:0,0:0,2:1 --path both");
    CHECK(r5.exit_code == 0);
    CHECK(r5.out.find("gd: 1") != std::string::npos);
    CHECK(r5.out.find("match: true") != std::string::npos);
}

TEST_CASE("cache path from the environment") {
    const std::string cache = "cli_env.cache";
    std::remove(cache.c_str());
    auto a = run("correlator --r 3 --sector open --insertions 1:0 --k 2",
                 "RSPIN_CACHE=" + cache);
    CHECK(a.exit_code == 0);
    std::ifstream f(cache);
    std::string s((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    CHECK(s.find("open:3:2:[1.0]") != std::string::npos);
    std::remove(cache.c_str());
}

TEST_CASE("exit codes follow the contract") {
    // parse error
    CHECK(run("correlator --r 3 --sector open --insertions bogus --k 1").exit_code == 2);
    CHECK(run("correlator --sector open --k 1").exit_code == 2);
    CHECK(run("nonsense").exit_code == 2);
    // truncation-reach error
    CHECK(run("correlator --r 3 --sector open --insertions 1:0 --k 2 --degree 2").exit_code == 3);
    // verify failure and success
    CHECK(run("verify --r 3 --suite hierarchy").exit_code == 0);
    CHECK(run("verify --r 2 --suite identities").exit_code == 0);
}

TEST_CASE("tables are deterministic and cache-stable") {
    const std::string t1 = "cli_table_1.out", t2 = "cli_table_2.out", cache = "cli_table.cache";
    std::remove(cache.c_str());
    auto a = run("table --r 3 --max-insertions 2 --max-desc 0 --format csv --out " + t1 +
                 " --cache " + cache);
    CHECK(a.exit_code == 0);
    auto b = run("table --r 3 --max-insertions 2 --max-desc 0 --format csv --out " + t2 +
                 " --cache " + cache);
    CHECK(b.exit_code == 0);
    std::ifstream f1(t1), f2(t2);
    std::string s1((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
    std::string s2((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
    CHECK(s1 == s2);
    CHECK(s1.rfind("key,value,path\n", 0) == 0);
    // the two-point seed row is present: <tau^2 tau^2 sigma^2> = -2/3
    CHECK(s1.find("open:3:2:[2.0,2.0],-2/3,gd") != std::string::npos);
    std::remove(t1.c_str());
    std::remove(t2.c_str());
    std::remove(cache.c_str());
}

TEST_CASE("series dumps carry the expected leading terms") {
    auto a = run("series --r 3 --target phi0 --order 1");
    CHECK(a.exit_code == 0);
    CHECK(a.out.find("\"T3\"") != std::string::npos);  // x T_r with coefficient r
    CHECK(a.out.find("\"3\"") != std::string::npos);

    auto b = run("series --r 3 --target l0 --order 0");
    CHECK(b.exit_code == 0);
    CHECK(b.out.find("\"x\"") != std::string::npos);

    auto c = run("series --r 2 --target omega:1,1 --order 0");
    CHECK(c.exit_code == 0);

    auto d = run("series --r 3 --target fext --order 2");
    CHECK(d.exit_code == 0);
    CHECK(d.out.find("t^0_0") != std::string::npos);

    CHECK(run("series --r 3 --target bogus").exit_code == 2);
}
