#include "towns/cache.hpp"

#include <json.hpp>

#include <fstream>

namespace towns {

auto to_json_line(const CacheEntry& entry) -> std::string
{
    nlohmann::ordered_json j;
    j["a"] = entry.spec.a;
    j["b"] = entry.spec.b;
    j["k"] = entry.spec.k;
    j["n"] = entry.spec.n;
    j["size"] = entry.size;
    j["status"] = to_string(entry.status);
    j["witness_file"] = entry.witness_file;
    j["nodes"] = entry.nodes;
    j["elapsed_ms"] = entry.elapsed_ms;
    return j.dump();
}

auto parse_cache_line(const std::string& line) -> std::optional<CacheEntry>
{
    auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        return std::nullopt;
    try {
        CacheEntry e;
        e.spec = TownSpec::make(j.at("n").get<int>(), j.at("k").get<int>(), j.at("a").get<int>(), j.at("b").get<int>());
        e.size = j.at("size").get<int>();
        auto status = j.at("status").get<std::string>();
        if (status != "optimal" && status != "lower-bound-only")
            return std::nullopt;
        e.status = status == "optimal" ? SearchStatus::optimal : SearchStatus::lower_bound_only;
        e.witness_file = j.value("witness_file", "");
        e.nodes = j.value("nodes", std::uint64_t{0});
        e.elapsed_ms = j.value("elapsed_ms", std::int64_t{0});
        return e;
    }
    catch (const nlohmann::json::exception&) {
        return std::nullopt;
    }
    catch (const SpecError&) {
        return std::nullopt;
    }
}

ResultCache::ResultCache(std::filesystem::path path) :
    _path(std::move(path))
{
}

auto ResultCache::witness_dir() const -> std::filesystem::path
{
    auto dir = _path;
    dir += ".witnesses";
    return dir;
}

auto ResultCache::witness_path(const TownSpec& spec) const -> std::filesystem::path
{
    return witness_dir() / ("a" + std::to_string(spec.a) + "-b" + std::to_string(spec.b) + "-k" +
                               std::to_string(spec.k) + "-n" + std::to_string(spec.n) + ".town");
}

auto ResultCache::entries() const -> std::map<Key, CacheEntry>
{
    std::map<Key, CacheEntry> result;
    std::ifstream in(_path);
    std::string line;
    while (std::getline(in, line))
        if (auto e = parse_cache_line(line))
            result.insert_or_assign(key(e->spec), *e);
    return result;
}

auto ResultCache::lookup(const TownSpec& spec) const -> std::optional<CacheEntry>
{
    auto all = entries();
    auto it = all.find(key(spec));
    if (it == all.end())
        return std::nullopt;
    return it->second;
}

void ResultCache::append(const CacheEntry& entry)
{
    if (_path.has_parent_path())
        std::filesystem::create_directories(_path.parent_path());
    std::ofstream out(_path, std::ios::app);
    if (!out)
        throw std::runtime_error("cannot open cache " + _path.string());
    out << to_json_line(entry) << '\n';
}

auto ResultCache::record(const ExtremalResult& result) -> CacheEntry
{
    const auto& spec = result.witness.spec();
    std::filesystem::create_directories(witness_dir());
    auto witness = witness_path(spec);
    {
        std::ofstream out(witness, std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot write witness " + witness.string());
        out << render_family(result.witness);
    }
    CacheEntry entry{spec, result.size, result.status, witness.string(), result.nodes_explored,
        static_cast<std::int64_t>(result.elapsed.count())};
    append(entry);
    return entry;
}

} // namespace towns
