#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "rspin/io.hpp"
#include "rspin/validate.hpp"

using namespace rspin;
using nlohmann::json;

TEST_CASE("scalar serialization") {
    CHECK(rational_to_json(Rational(-2, 3)) == json("-2/3"));
    CHECK(rational_from_json(json("7/2")) == Rational(7, 2));
    CHECK(rational_from_json(json("5")) == Rational(5));
    CHECK_THROWS_AS(rational_from_json(json(3.5)), UsageError);

    MuScalar m = MuScalar::mu_power(3, 2, Rational(1, 2)) + MuScalar(3, Rational(-4));
    json j = mu_to_json(m);
    REQUIRE(j.size() == 2);
    CHECK(j[0] == json::array({0, 1, "-4"}));
    CHECK(j[1] == json::array({2, 1, "1/2"}));
}

TEST_CASE("series serialization is deterministic") {
    EngineConfig cfg;
    cfg.r = 2;
    cfg.nmax = 3;
    cfg.budget = 3;
    GDState st = GDState::solve(cfg);
    std::string a = series_to_json(st.phi0()).dump();
    std::string b = series_to_json(st.phi0()).dump();
    CHECK(a == b);
    CHECK(a.find("\"x\"") != std::string::npos);
}

TEST_CASE("cache file round trip and refusal") {
    const std::string path = "test_cache_roundtrip.json";
    std::remove(path.c_str());

    MemoStore memo("fp-a");
    memo.insert("open:3:2:[1.0]", Rational(1), ValuePath::Gd);
    memo.insert("open:3:1:[1.0,2.0]", Rational(-1, 3), ValuePath::Recursion);
    CacheFile::from_memo(memo).save(path);

    CacheFile loaded = CacheFile::load(path);
    CHECK(loaded.fingerprint == "fp-a");
    REQUIRE(loaded.entries.size() == 2);
    CHECK(loaded.entries.at("open:3:2:[1.0]").value == Rational(1));
    CHECK(loaded.entries.at("open:3:1:[1.0,2.0]").path == ValuePath::Recursion);

    // serialize -> parse -> serialize is the identity
    const std::string path2 = path + ".2";
    loaded.save(path2);
    std::ifstream f1(path), f2(path2);
    std::string s1((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
    std::string s2((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
    CHECK(s1 == s2);

    // corrupt content is refused
    {
        std::ofstream bad(path);
        bad << "{ not json";
    }
    CHECK_THROWS_AS(CacheFile::load(path), UsageError);

    std::remove(path.c_str());
    std::remove(path2.c_str());
}

TEST_CASE("memo fill rejects conflicting entries") {
    CacheFile f;
    f.fingerprint = "fp";
    f.entries.emplace("k", MemoStore::Entry{Rational(2), ValuePath::Gd});
    MemoStore memo("fp");
    memo.insert("k", Rational(3), ValuePath::Gd);
    CHECK_THROWS_AS(f.fill(memo), ConsistencyError);
}

TEST_CASE("extended generating series in descendent variables") {
    // the coefficient of t^0_0 t^{r-1}_0 in F_ext is the 3-point value 1
    for (int r = 2; r <= 4; ++r) {
        EngineConfig cfg;
        cfg.r = r;
        cfg.nmax = 2 * r;
        cfg.budget = 3;
        GDState st = GDState::solve(cfg);
        Series fx = fext_series(st, 3);
        const Frame& tf = fx.frame();
        Monomial m;
        m.e[tf.tvar_slot(0, 0)] = 1;
        m.e[tf.tvar_slot(r - 1, 0)] = 1;
        MuScalar c = fx.coeff(m);
        CHECK(c.is_rational());
        CHECK(c.as_rational() == Rational(1));
    }
}
