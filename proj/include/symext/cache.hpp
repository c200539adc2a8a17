#pragma once

// On-disk result cache. Keys hash (library version, operation, parameter
// string); entries store the key, a payload checksum, and the payload.
// A checksum or key mismatch discards the entry so it gets recomputed.
// The cache is purely an optimization: outputs are identical without it.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

namespace symext {

inline constexpr const char* kVersion = "1.0.0";

inline std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    std::ostringstream os;
    os << std::hex << v;
    return os.str();
}

class ResultCache {
public:
    explicit ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    const std::filesystem::path& dir() const { return dir_; }

    static std::string make_key(const std::string& operation, const std::string& params) {
        return std::string(kVersion) + "|" + operation + "|" + params;
    }

    std::optional<std::string> get(const std::string& key) const {
        std::filesystem::path file = path_for(key);
        std::ifstream in(file);
        if (!in) return std::nullopt;
        std::string stored_key, checksum;
        if (!std::getline(in, stored_key) || !std::getline(in, checksum)) {
            drop(file);
            return std::nullopt;
        }
        std::ostringstream payload;
        payload << in.rdbuf();
        std::string body = payload.str();
        if (stored_key != key || checksum != hex64(fnv1a64(body))) {
            drop(file);  // corrupted or colliding entry
            return std::nullopt;
        }
        return body;
    }

    void put(const std::string& key, const std::string& payload) const {
        std::error_code ec;
        std::filesystem::create_directories(dir_, ec);
        std::filesystem::path file = path_for(key);
        std::ofstream out(file, std::ios::trunc);
        if (!out) return;  // cache failures are non-fatal
        out << key << '\n' << hex64(fnv1a64(payload)) << '\n' << payload;
    }

    void clear() const {
        std::error_code ec;
        for (const auto& entry : std::filesystem::directory_iterator(dir_, ec))
            if (entry.path().extension() == ".cache") std::filesystem::remove(entry.path(), ec);
    }

    std::size_t entry_count() const {
        std::size_t n = 0;
        std::error_code ec;
        for (const auto& entry : std::filesystem::directory_iterator(dir_, ec))
            if (entry.path().extension() == ".cache") ++n;
        return n;
    }

private:
    std::filesystem::path path_for(const std::string& key) const {
        return dir_ / (hex64(fnv1a64(key)) + ".cache");
    }

    static void drop(const std::filesystem::path& file) {
        std::error_code ec;
        std::filesystem::remove(file, ec);
    }

    std::filesystem::path dir_;
};

}  // namespace symext
