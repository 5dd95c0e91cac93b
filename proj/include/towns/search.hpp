#pragma once

// Exact extremal sizes of (a,b)-towns: towns are exactly the cliques of the
// compatibility graph on all admissible-size subsets of [n].

#include "towns/setcore.hpp"

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace towns {

class BudgetError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Vertices: every S ⊆ [n] with |S| ≡ a (mod k), ordered by cardinality and
/// then by bitmask. Edges: S ≠ T with |S ∩ T| ≡ b (mod k).
class CompatGraph {
  public:
    static constexpr int max_n = 28;
    static constexpr std::size_t default_max_vertices = 40'000;

    /// Throws BudgetError when n > max_n or the vertex count exceeds max_vertices.
    static auto build(const TownSpec& spec, std::size_t max_vertices = default_max_vertices) -> CompatGraph;

    /// Σ C(n,c) over 0 <= c <= n with c ≡ a (mod k).
    static auto expected_vertex_count(const TownSpec& spec) -> std::uint64_t;

    auto spec() const noexcept -> const TownSpec& { return _spec; }
    auto vertex_count() const noexcept -> std::size_t { return _masks.size(); }
    auto vertex(std::size_t i) const -> SetWord { return SetWord::from_mask(_spec.n, _masks[i]); }
    auto mask(std::size_t i) const -> std::uint32_t { return _masks[i]; }
    /// Index of the vertex with this bitmask; vertex_count() when absent.
    auto index_of(std::uint32_t mask) const -> std::size_t;

    auto adjacent(std::size_t i, std::size_t j) const -> bool { return (row(i)[j / 64] >> (j % 64)) & 1U; }
    auto row(std::size_t i) const -> std::span<const std::uint64_t>
    {
        return {_adjacency.data() + i * _words, _words};
    }
    auto words_per_row() const noexcept -> std::size_t { return _words; }
    auto degree(std::size_t i) const -> std::size_t;
    auto edge_count() const -> std::size_t;

  private:
    TownSpec _spec;
    std::vector<std::uint32_t> _masks;
    std::size_t _words = 0;
    std::vector<std::uint64_t> _adjacency;
};

struct SearchBudget {
    std::uint64_t max_nodes = 100'000'000;
    std::chrono::milliseconds max_time{300'000};
};

enum class SearchStatus { optimal, lower_bound_only };
enum class BudgetTrip { none, nodes, time };

auto to_string(SearchStatus status) -> std::string;
auto to_string(BudgetTrip trip) -> std::string;

struct ExtremalResult {
    int size = 0;
    Family witness{TownSpec{}};
    SearchStatus status = SearchStatus::optimal;
    BudgetTrip tripped = BudgetTrip::none;
    /// Witness is the lexicographically smallest maximum clique of the searched
    /// (sub)graph; false only when the budget ran out while canonicalizing.
    bool canonical = true;
    std::uint64_t nodes_explored = 0;
    std::chrono::milliseconds elapsed{0};

    auto optimal() const noexcept -> bool { return status == SearchStatus::optimal; }
};

/// Maximum clique by branch and bound with greedy colouring bounds over a
/// degeneracy ordering. The witness is the lexicographically smallest maximum
/// clique under the graph's vertex order.
auto max_clique(const CompatGraph& graph, const SearchBudget& budget = {}) -> ExtremalResult;

struct SearchOptions {
    SearchBudget budget;
    /// Restrict the root to one representative {1..c} per admissible cardinality c.
    bool symmetry = true;
    /// Worker threads for the per-representative stages; results do not depend on it.
    unsigned threads = 1;
    std::size_t max_vertices = CompatGraph::default_max_vertices;
};

/// Extremal size of an (a,b)-town mod k over [n]. With symmetry on, stage c
/// searches the cliques through {1..c} that avoid the cardinalities of earlier
/// stages; any town maps into some stage by a permutation of [n].
auto extremal_search(const TownSpec& spec, const SearchOptions& options = {}) -> ExtremalResult;

/// Direct enumeration of every clique, without bounds. Throws BudgetError
/// unless n <= 6 or there are at most 64 candidate sets.
auto naive_extremal(const TownSpec& spec) -> int;

struct ConjectureFinding {
    std::string conjecture;  ///< "monotone-diagonal" or "linear-off-diagonal"
    std::string detail;
    Family witness{TownSpec{}};
};

struct ConjectureReport {
    int cells_computed = 0;
    int cells_optimal = 0;
    int monotone_checks = 0;
    int linear_checks = 0;
    std::vector<ConjectureFinding> counterexamples;
};

/// Checks E(m1,m1) >= E(m2,m2) for m1 < m2 and E(a,b) <= n for a ≢ b over
/// every optimal cell with 1 <= n <= n_max. Counterexamples are findings.
auto probe_conjectures(int k, int n_max, const SearchOptions& options = {}) -> ConjectureReport;

} // namespace towns
