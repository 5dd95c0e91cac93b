#pragma once

// Hand-rolled generators and brute-force oracles shared by the test suites.
// Oracles here deliberately avoid the library's bit tricks.

#include "towns/setcore.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

namespace towns::testing {

using Rng = std::mt19937_64;

inline auto make_rng(std::uint64_t salt = 0) -> Rng { return Rng{0x70776e73ULL ^ salt}; }

inline auto uniform(Rng& rng, int lo, int hi) -> int { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline auto random_subset(Rng& rng, int n) -> std::vector<int>
{
    std::vector<int> out;
    for (int e = 1; e <= n; ++e)
        if (rng() & 1U)
            out.push_back(e);
    return out;
}

inline auto as_set(const SetWord& s) -> std::set<int>
{
    auto e = s.elements();
    return {e.begin(), e.end()};
}

inline auto set_intersection_size(const std::set<int>& x, const std::set<int>& y) -> int
{
    std::vector<int> out;
    std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
    return static_cast<int>(out.size());
}

/// Town property recomputed from element lists.
inline auto oracle_is_town(const Family& f) -> bool
{
    const auto& s = f.spec();
    std::vector<std::set<int>> sets;
    for (const auto& m : f.members())
        sets.push_back(as_set(m));
    for (std::size_t i = 0; i < sets.size(); ++i) {
        if (static_cast<int>(sets[i].size()) % s.k != s.a)
            return false;
        for (std::size_t j = i + 1; j < sets.size(); ++j)
            if (set_intersection_size(sets[i], sets[j]) % s.k != s.b)
                return false;
    }
    return true;
}

/// Family with members relabelled by a permutation of [n].
inline auto relabel(const Family& f, const std::vector<int>& perm) -> Family
{
    Family out(f.spec());
    for (const auto& m : f.members()) {
        std::vector<int> e;
        for (int x : m.elements())
            e.push_back(perm[static_cast<std::size_t>(x - 1)]);
        std::sort(e.begin(), e.end());
        out.add(SetWord::from_elements(f.spec().n, e));
    }
    return out;
}

inline auto random_permutation(Rng& rng, int n) -> std::vector<int>
{
    std::vector<int> p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        p[static_cast<std::size_t>(i)] = i + 1;
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

inline auto reversed(const Family& f) -> Family
{
    Family out(f.spec());
    auto m = f.members();
    for (auto it = m.rbegin(); it != m.rend(); ++it)
        out.add(*it);
    return out;
}

} // namespace towns::testing
