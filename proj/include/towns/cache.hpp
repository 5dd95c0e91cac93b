#pragma once

// Append-only JSONL store of search results keyed by (a, b, k, n). Later
// lines win over earlier ones for the same key.

#include "towns/search.hpp"
#include "towns/setcore.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <tuple>

namespace towns {

struct CacheEntry {
    TownSpec spec;
    int size = 0;
    SearchStatus status = SearchStatus::optimal;
    std::string witness_file;
    std::uint64_t nodes = 0;
    std::int64_t elapsed_ms = 0;
};

auto to_json_line(const CacheEntry& entry) -> std::string;
/// nullopt for lines that are not a well-formed entry.
auto parse_cache_line(const std::string& line) -> std::optional<CacheEntry>;

class ResultCache {
  public:
    using Key = std::tuple<int, int, int, int>;  // a, b, k, n

    explicit ResultCache(std::filesystem::path path);

    auto path() const -> const std::filesystem::path& { return _path; }
    /// Sibling directory holding witness family files.
    auto witness_dir() const -> std::filesystem::path;
    auto witness_path(const TownSpec& spec) const -> std::filesystem::path;

    /// Latest entry for the spec, if any. Malformed lines are skipped.
    auto lookup(const TownSpec& spec) const -> std::optional<CacheEntry>;
    auto entries() const -> std::map<Key, CacheEntry>;

    /// Writes the witness file and appends one line.
    auto record(const ExtremalResult& result) -> CacheEntry;
    void append(const CacheEntry& entry);

    static auto key(const TownSpec& spec) -> Key { return {spec.a, spec.b, spec.k, spec.n}; }

  private:
    std::filesystem::path _path;
};

} // namespace towns
