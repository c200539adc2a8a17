#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "symext/cache.hpp"

using namespace symext;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("symext_cache_test_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("cache round trip") {
    TempDir tmp;
    ResultCache cache(tmp.path);
    std::string key = ResultCache::make_key("homology_all", "d=8");
    std::string payload = R"({"d":8,"groups":{"1":{"rank":0,"torsion":[2]}}})";
    CHECK(!cache.get(key).has_value());
    cache.put(key, payload);
    auto got = cache.get(key);
    REQUIRE(got.has_value());
    CHECK(*got == payload);
    CHECK(cache.entry_count() == 1);
}

TEST_CASE("distinct keys, distinct entries") {
    TempDir tmp;
    ResultCache cache(tmp.path);
    cache.put(ResultCache::make_key("op", "a=1"), "one");
    cache.put(ResultCache::make_key("op", "a=2"), "two");
    CHECK(cache.entry_count() == 2);
    CHECK(*cache.get(ResultCache::make_key("op", "a=1")) == "one");
    CHECK(*cache.get(ResultCache::make_key("op", "a=2")) == "two");
}

TEST_CASE("version participates in the key") {
    std::string k1 = ResultCache::make_key("op", "x");
    CHECK(k1.find(kVersion) == 0);  // bumping the version changes every key
}

TEST_CASE("corrupted entries are discarded") {
    TempDir tmp;
    ResultCache cache(tmp.path);
    std::string key = ResultCache::make_key("op", "param");
    cache.put(key, "payload");
    // clobber the stored checksum
    for (const auto& entry : std::filesystem::directory_iterator(tmp.path)) {
        std::ofstream out(entry.path(), std::ios::trunc);
        out << key << "\nwrongchecksum\npayload";
    }
    CHECK(!cache.get(key).has_value());
    CHECK(cache.entry_count() == 0);  // dropped on detection
}

TEST_CASE("clear") {
    TempDir tmp;
    ResultCache cache(tmp.path);
    cache.put(ResultCache::make_key("op", "1"), "x");
    cache.put(ResultCache::make_key("op", "2"), "y");
    cache.clear();
    CHECK(cache.entry_count() == 0);
}
