#include "towns/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <numeric>
#include <optional>
#include <thread>

namespace towns {

using Word = std::uint64_t;
using Clock = std::chrono::steady_clock;

// ------------------------------------------------------------ CompatGraph

auto CompatGraph::expected_vertex_count(const TownSpec& spec) -> std::uint64_t
{
    std::uint64_t total = 0;
    for (int c = spec.a; c <= spec.n; c += spec.k) {
        std::uint64_t choose = 1;
        for (int i = 1; i <= c; ++i)
            choose = choose * static_cast<std::uint64_t>(spec.n - c + i) / static_cast<std::uint64_t>(i);
        total += choose;
    }
    return total;
}

auto CompatGraph::build(const TownSpec& spec, std::size_t max_vertices) -> CompatGraph
{
    if (spec.n > max_n)
        throw BudgetError("compatibility graph limited to n <= " + std::to_string(max_n));
    auto expected = expected_vertex_count(spec);
    if (expected > max_vertices)
        throw BudgetError("compatibility graph would have " + std::to_string(expected) + " vertices, limit " +
            std::to_string(max_vertices));

    CompatGraph g;
    g._spec = spec;
    g._masks.reserve(expected);
    for (int c = spec.a; c <= spec.n; c += spec.k) {
        if (c == 0) {
            g._masks.push_back(0);
            continue;
        }
        // Gosper's hack walks the c-subsets of [n] in increasing mask order.
        std::uint64_t m = (std::uint64_t{1} << c) - 1;
        const std::uint64_t limit = std::uint64_t{1} << spec.n;
        while (m < limit) {
            g._masks.push_back(static_cast<std::uint32_t>(m));
            std::uint64_t low = m & (~m + 1);
            std::uint64_t ripple = m + low;
            m = (((ripple ^ m) >> 2) / low) | ripple;
        }
    }

    const std::size_t count = g._masks.size();
    g._words = std::max<std::size_t>((count + 63) / 64, 1);
    g._adjacency.assign(count * g._words, 0);
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = i + 1; j < count; ++j)
            if (residue(std::popcount(g._masks[i] & g._masks[j]), spec.k) == spec.b) {
                g._adjacency[i * g._words + j / 64] |= Word{1} << (j % 64);
                g._adjacency[j * g._words + i / 64] |= Word{1} << (i % 64);
            }
    return g;
}

auto CompatGraph::index_of(std::uint32_t mask) const -> std::size_t
{
    // Vertices are sorted by (popcount, mask).
    auto key = [](std::uint32_t m) { return std::pair{std::popcount(m), m}; };
    auto it = std::lower_bound(_masks.begin(), _masks.end(), mask,
        [&](std::uint32_t x, std::uint32_t y) { return key(x) < key(y); });
    if (it == _masks.end() || *it != mask)
        return _masks.size();
    return static_cast<std::size_t>(it - _masks.begin());
}

auto CompatGraph::degree(std::size_t i) const -> std::size_t
{
    std::size_t d = 0;
    for (auto w : row(i))
        d += static_cast<std::size_t>(std::popcount(w));
    return d;
}

auto CompatGraph::edge_count() const -> std::size_t
{
    std::size_t total = 0;
    for (std::size_t i = 0; i < vertex_count(); ++i)
        total += degree(i);
    return total / 2;
}

auto to_string(SearchStatus status) -> std::string
{
    return status == SearchStatus::optimal ? "optimal" : "lower-bound-only";
}

auto to_string(BudgetTrip trip) -> std::string
{
    switch (trip) {
    case BudgetTrip::none:
        return "none";
    case BudgetTrip::nodes:
        return "nodes";
    case BudgetTrip::time:
        return "time";
    }
    return "none";
}

namespace {

// ----------------------------------------------------------------- budget

class BudgetState {
  public:
    explicit BudgetState(const SearchBudget& limits) :
        _limits(limits), _start(Clock::now())
    {
    }

    /// Counts one search node; false once any budget has tripped.
    auto tick() -> bool
    {
        auto n = _nodes.fetch_add(1, std::memory_order_relaxed) + 1;
        if (n > _limits.max_nodes)
            trip(BudgetTrip::nodes);
        else if ((n & 1023U) == 0 && Clock::now() - _start > _limits.max_time)
            trip(BudgetTrip::time);
        return _tripped.load(std::memory_order_relaxed) == 0;
    }

    auto exhausted() const -> bool { return _tripped.load(std::memory_order_relaxed) != 0; }
    auto tripped() const -> BudgetTrip { return static_cast<BudgetTrip>(_tripped.load()); }
    auto nodes() const -> std::uint64_t { return _nodes.load(); }
    auto elapsed() const -> std::chrono::milliseconds
    {
        return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - _start);
    }

  private:
    void trip(BudgetTrip why)
    {
        int expected = 0;
        _tripped.compare_exchange_strong(expected, static_cast<int>(why));
    }

    SearchBudget _limits;
    Clock::time_point _start;
    std::atomic<std::uint64_t> _nodes{0};
    std::atomic<int> _tripped{0};
};

// ------------------------------------------------------------ bit helpers

inline void set_bit(Word* b, int i) { b[i / 64] |= Word{1} << (i % 64); }
inline void clear_bit(Word* b, int i) { b[i / 64] &= ~(Word{1} << (i % 64)); }

inline auto any_bit(const Word* b, int words) -> bool
{
    for (int w = 0; w < words; ++w)
        if (b[w])
            return true;
    return false;
}

inline auto count_bits(const Word* b, int words) -> int
{
    int total = 0;
    for (int w = 0; w < words; ++w)
        total += std::popcount(b[w]);
    return total;
}

/// Induced subgraph on a list of global vertices; local index i is vertices[i].
class LocalGraph {
  public:
    LocalGraph(const CompatGraph& g, std::vector<int> vertices) :
        _vertices(std::move(vertices)), _size(static_cast<int>(_vertices.size())),
        _words(std::max(1, (_size + 63) / 64)), _rows(static_cast<std::size_t>(_size) * _words, 0)
    {
        for (int i = 0; i < _size; ++i)
            for (int j = i + 1; j < _size; ++j)
                if (g.adjacent(static_cast<std::size_t>(_vertices[i]), static_cast<std::size_t>(_vertices[j]))) {
                    set_bit(row(i), j);
                    set_bit(row(j), i);
                }
    }

    auto size() const -> int { return _size; }
    auto words() const -> int { return _words; }
    auto row(int i) -> Word* { return _rows.data() + static_cast<std::size_t>(i) * _words; }
    auto row(int i) const -> const Word* { return _rows.data() + static_cast<std::size_t>(i) * _words; }
    auto global(int i) const -> int { return _vertices[i]; }

  private:
    std::vector<int> _vertices;
    int _size;
    int _words;
    std::vector<Word> _rows;
};

/// Smallest-last ordering of the given global vertices within their induced
/// subgraph, returned with the last-removed vertex first.
auto degeneracy_order(const CompatGraph& g, const std::vector<int>& vertices) -> std::vector<int>
{
    const int m = static_cast<int>(vertices.size());
    LocalGraph local(g, vertices);
    std::vector<int> degree(m);
    for (int i = 0; i < m; ++i)
        degree[i] = count_bits(local.row(i), local.words());
    std::vector<bool> removed(m, false);
    std::vector<int> order;
    order.reserve(m);
    for (int step = 0; step < m; ++step) {
        int pick = -1;
        for (int i = 0; i < m; ++i)
            if (!removed[i] && (pick < 0 || degree[i] < degree[pick]))
                pick = i;
        removed[pick] = true;
        order.push_back(vertices[pick]);
        const Word* r = local.row(pick);
        for (int w = 0; w < local.words(); ++w)
            for (Word bits = r[w]; bits; bits &= bits - 1) {
                int j = w * 64 + std::countr_zero(bits);
                if (!removed[j])
                    --degree[j];
            }
    }
    std::reverse(order.begin(), order.end());
    return order;
}

// --------------------------------------------------------- clique engines

/// Branch and bound for a maximum clique larger than a floor value.
class MaxCliqueSearch {
  public:
    MaxCliqueSearch(const LocalGraph& g, BudgetState& budget) :
        _g(g), _budget(budget), _w(g.words())
    {
        const auto depth = static_cast<std::size_t>(g.size()) + 2;
        _candidates.assign(depth * _w, 0);
        _scratch.assign(2 * static_cast<std::size_t>(_w), 0);
        _order.resize(depth);
        _colours.resize(depth);
    }

    /// Searches for cliques strictly larger than floor. Returns the best one
    /// found (empty when none beat the floor).
    auto run(int floor) -> std::vector<int>
    {
        _best = floor;
        _best_clique.clear();
        Word* root = level(0);
        for (int i = 0; i < _g.size(); ++i)
            set_bit(root, i);
        if (_g.size() > 0)
            expand(0);
        else
            _budget.tick();
        return _best_clique;
    }

    auto aborted() const -> bool { return _aborted; }

  private:
    auto level(std::size_t depth) -> Word* { return _candidates.data() + depth * _w; }

    /// Greedy sequential colouring of P in index order; records only vertices
    /// whose colour could still lift the current clique above the incumbent.
    void colour_sort(std::size_t depth, int min_colour)
    {
        auto& order = _order[depth];
        auto& colours = _colours[depth];
        order.clear();
        colours.clear();
        Word* uncoloured = _scratch.data();
        Word* available = _scratch.data() + _w;
        std::copy_n(level(depth), _w, uncoloured);
        int colour = 0;
        while (any_bit(uncoloured, _w)) {
            ++colour;
            std::copy_n(uncoloured, _w, available);
            for (int w = 0; w < _w; ++w)
                while (available[w]) {
                    int v = w * 64 + std::countr_zero(available[w]);
                    clear_bit(uncoloured, v);
                    clear_bit(available, v);
                    const Word* nv = _g.row(v);
                    for (int x = w; x < _w; ++x)
                        available[x] &= ~nv[x];
                    if (colour >= min_colour) {
                        order.push_back(v);
                        colours.push_back(colour);
                    }
                }
        }
    }

    void expand(std::size_t depth)
    {
        if (!_budget.tick()) {
            _aborted = true;
            return;
        }
        const int here = static_cast<int>(_current.size());
        colour_sort(depth, _best - here + 1);
        Word* p = level(depth);
        Word* next = level(depth + 1);
        auto& order = _order[depth];
        auto& colours = _colours[depth];
        for (auto i = static_cast<std::ptrdiff_t>(order.size()) - 1; i >= 0; --i) {
            if (here + colours[i] <= _best)
                return;
            const int v = order[i];
            const Word* nv = _g.row(v);
            bool nonempty = false;
            for (int w = 0; w < _w; ++w) {
                next[w] = p[w] & nv[w];
                nonempty |= next[w] != 0;
            }
            _current.push_back(v);
            if (!nonempty) {
                if (here + 1 > _best) {
                    _best = here + 1;
                    _best_clique = _current;
                }
            }
            else
                expand(depth + 1);
            _current.pop_back();
            if (_aborted)
                return;
            clear_bit(p, v);
        }
    }

    const LocalGraph& _g;
    BudgetState& _budget;
    int _w;
    int _best = 0;
    bool _aborted = false;
    std::vector<int> _current;
    std::vector<int> _best_clique;
    std::vector<Word> _candidates;
    std::vector<Word> _scratch;
    std::vector<std::vector<int>> _order;
    std::vector<std::vector<int>> _colours;
};

/// Depth-first search in increasing index order for the first clique of a
/// given size, i.e. the lexicographically smallest one.
class LexFirstClique {
  public:
    LexFirstClique(const LocalGraph& g, BudgetState& budget) :
        _g(g), _budget(budget), _w(g.words())
    {
        _candidates.assign((static_cast<std::size_t>(g.size()) + 2) * _w, 0);
        _scratch.assign(2 * static_cast<std::size_t>(_w), 0);
    }

    auto find(int target) -> std::optional<std::vector<int>>
    {
        _current.clear();
        Word* root = _candidates.data();
        for (int i = 0; i < _g.size(); ++i)
            set_bit(root, i);
        if (search(0, target))
            return _current;
        return std::nullopt;
    }

    auto aborted() const -> bool { return _aborted; }

  private:
    /// Number of colours a greedy colouring of p needs, stopping at cap.
    auto colour_count(const Word* p, int cap) -> int
    {
        Word* uncoloured = _scratch.data();
        Word* available = _scratch.data() + _w;
        std::copy_n(p, _w, uncoloured);
        int colour = 0;
        while (colour < cap && any_bit(uncoloured, _w)) {
            ++colour;
            std::copy_n(uncoloured, _w, available);
            for (int w = 0; w < _w; ++w)
                while (available[w]) {
                    int v = w * 64 + std::countr_zero(available[w]);
                    clear_bit(uncoloured, v);
                    clear_bit(available, v);
                    const Word* nv = _g.row(v);
                    for (int x = w; x < _w; ++x)
                        available[x] &= ~nv[x];
                }
        }
        return colour;
    }

    auto search(std::size_t depth, int need) -> bool
    {
        if (need == 0)
            return true;
        if (!_budget.tick()) {
            _aborted = true;
            return false;
        }
        Word* p = _candidates.data() + depth * _w;
        Word* next = p + _w;
        for (int w = 0; w < _w; ++w)
            while (p[w]) {
                if (count_bits(p, _w) < need || colour_count(p, need) < need)
                    return false;
                const int v = w * 64 + std::countr_zero(p[w]);
                clear_bit(p, v);
                const Word* nv = _g.row(v);
                for (int x = 0; x < _w; ++x)
                    next[x] = p[x] & nv[x];
                _current.push_back(v);
                if (search(depth + 1, need - 1))
                    return true;
                _current.pop_back();
                if (_aborted)
                    return false;
            }
        return false;
    }

    const LocalGraph& _g;
    BudgetState& _budget;
    int _w;
    bool _aborted = false;
    std::vector<int> _current;
    std::vector<Word> _candidates;
    std::vector<Word> _scratch;
};

struct StageOutcome {
    /// Best clique found in global vertex ids, representative included.
    std::vector<int> clique;
    bool complete = false;
    bool canonical = true;
};

/// Maximum clique among `candidates` (global ids), plus `forced` when given.
/// Only cliques larger than floor (total size) are reported.
auto solve_stage(const CompatGraph& g, std::optional<int> forced, std::vector<int> candidates, int floor,
    BudgetState& budget) -> StageOutcome
{
    StageOutcome out;
    const int extra = forced ? 1 : 0;

    LocalGraph ordered(g, degeneracy_order(g, candidates));
    MaxCliqueSearch bnb(ordered, budget);
    auto found = bnb.run(floor - extra);
    out.complete = !bnb.aborted();

    if (found.empty()) {
        // Nothing in the candidate set beat the floor; the representative
        // alone may still do so.
        if (forced && floor < 1)
            out.clique = {*forced};
        return out;
    }

    for (int v : found)
        out.clique.push_back(ordered.global(v));
    if (forced)
        out.clique.push_back(*forced);
    std::sort(out.clique.begin(), out.clique.end());
    if (!out.complete) {
        out.canonical = false;
        return out;
    }

    // Canonical witness: lexicographically smallest clique of the optimal size.
    std::sort(candidates.begin(), candidates.end());
    LocalGraph natural(g, candidates);
    LexFirstClique lex(natural, budget);
    if (auto first = lex.find(static_cast<int>(found.size()))) {
        out.clique.clear();
        for (int v : *first)
            out.clique.push_back(natural.global(v));
        if (forced)
            out.clique.push_back(*forced);
        std::sort(out.clique.begin(), out.clique.end());
    }
    else
        out.canonical = false;
    return out;
}

auto witness_family(const CompatGraph& g, const std::vector<int>& clique) -> Family
{
    Family f(g.spec());
    for (int v : clique)
        f.add(g.vertex(static_cast<std::size_t>(v)));
    return f;
}

auto finish(const CompatGraph& g, const std::vector<int>& clique, bool complete, bool canonical,
    const BudgetState& budget) -> ExtremalResult
{
    ExtremalResult result;
    result.size = static_cast<int>(clique.size());
    result.witness = witness_family(g, clique);
    result.status = complete ? SearchStatus::optimal : SearchStatus::lower_bound_only;
    result.tripped = complete ? BudgetTrip::none : budget.tripped();
    result.canonical = canonical && complete;
    result.nodes_explored = std::max<std::uint64_t>(budget.nodes(), 1);
    result.elapsed = budget.elapsed();
    return result;
}

} // namespace

auto max_clique(const CompatGraph& graph, const SearchBudget& limits) -> ExtremalResult
{
    BudgetState budget(limits);
    std::vector<int> all(graph.vertex_count());
    std::iota(all.begin(), all.end(), 0);
    auto outcome = solve_stage(graph, std::nullopt, std::move(all), 0, budget);
    return finish(graph, outcome.clique, outcome.complete, outcome.canonical, budget);
}

auto extremal_search(const TownSpec& spec, const SearchOptions& options) -> ExtremalResult
{
    auto graph = CompatGraph::build(spec, options.max_vertices);
    if (!options.symmetry || graph.vertex_count() == 0)
        return max_clique(graph, options.budget);

    BudgetState budget(options.budget);

    // Admissible cardinalities, each with the prefix set {1..c} as representative.
    std::vector<int> classes;
    for (int c = spec.a; c <= spec.n; c += spec.k)
        classes.push_back(c);

    auto in_classes = [&](int v, const std::vector<bool>& live) {
        int c = std::popcount(graph.mask(static_cast<std::size_t>(v)));
        return live[static_cast<std::size_t>(c)];
    };

    // Stage order: repeatedly take the class whose representative has the
    // fewest neighbours among the classes still live.
    struct Stage {
        int rep;
        std::vector<int> candidates;
    };
    std::vector<Stage> stages;
    std::vector<bool> live(static_cast<std::size_t>(spec.n) + 1, false);
    for (int c : classes)
        live[static_cast<std::size_t>(c)] = true;
    std::vector<int> remaining = classes;
    while (!remaining.empty()) {
        std::optional<Stage> pick;
        std::size_t pick_pos = 0;
        for (std::size_t i = 0; i < remaining.size(); ++i) {
            int rep = static_cast<int>(graph.index_of(SetWord::prefix(spec.n, remaining[i]).low_word()));
            std::vector<int> cand;
            for (std::size_t v = 0; v < graph.vertex_count(); ++v)
                if (graph.adjacent(static_cast<std::size_t>(rep), v) && in_classes(static_cast<int>(v), live))
                    cand.push_back(static_cast<int>(v));
            if (!pick || cand.size() < pick->candidates.size()) {
                pick = Stage{rep, std::move(cand)};
                pick_pos = i;
            }
        }
        live[static_cast<std::size_t>(remaining[pick_pos])] = false;
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick_pos));
        stages.push_back(std::move(*pick));
    }

    std::vector<StageOutcome> outcomes(stages.size());
    if (options.threads <= 1) {
        // Sequential: each stage only looks for cliques beating the incumbent.
        int best = 0;
        for (std::size_t s = 0; s < stages.size(); ++s) {
            outcomes[s] = solve_stage(graph, stages[s].rep, stages[s].candidates, best, budget);
            best = std::max(best, static_cast<int>(outcomes[s].clique.size()));
            if (!outcomes[s].complete)
                break;
        }
    }
    else {
        // Parallel: stages are independent, each reporting its own maximum.
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t s; (s = next.fetch_add(1)) < stages.size();)
                outcomes[s] = solve_stage(graph, stages[s].rep, stages[s].candidates, 0, budget);
        };
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < std::min<std::size_t>(options.threads, stages.size()); ++t)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
    }

    // The first stage reaching the maximum supplies the witness.
    bool complete = !budget.exhausted();
    for (const auto& o : outcomes)
        complete = complete && o.complete;
    std::size_t winner = 0;
    for (std::size_t s = 1; s < outcomes.size(); ++s)
        if (outcomes[s].clique.size() > outcomes[winner].clique.size())
            winner = s;
    return finish(graph, outcomes[winner].clique, complete, outcomes[winner].canonical, budget);
}

// ------------------------------------------------------------ naive oracle

namespace {

class NaiveCliques {
  public:
    NaiveCliques(std::vector<std::uint32_t> sets, int k, int b) :
        _sets(std::move(sets)), _k(k), _b(b)
    {
    }

    auto largest() -> int
    {
        _best = 0;
        std::vector<std::size_t> chosen;
        extend(chosen, 0);
        return _best;
    }

  private:
    auto compatible(std::uint32_t x, std::uint32_t y) const -> bool
    {
        int common = 0;
        for (std::uint32_t both = x & y; both; both >>= 1)
            common += static_cast<int>(both & 1U);
        return common % _k == _b;
    }

    void extend(std::vector<std::size_t>& chosen, std::size_t from)
    {
        _best = std::max(_best, static_cast<int>(chosen.size()));
        for (std::size_t i = from; i < _sets.size(); ++i) {
            bool ok = true;
            for (auto j : chosen)
                ok = ok && compatible(_sets[i], _sets[j]);
            if (!ok)
                continue;
            chosen.push_back(i);
            extend(chosen, i + 1);
            chosen.pop_back();
        }
    }

    std::vector<std::uint32_t> _sets;
    int _k;
    int _b;
    int _best = 0;
};

} // namespace

auto naive_extremal(const TownSpec& spec) -> int
{
    if (spec.n > 20)
        throw BudgetError("naive enumeration limited to small ground sets");
    std::vector<std::uint32_t> sets;
    for (std::uint32_t m = 0; m < (1U << spec.n); ++m) {
        int size = 0;
        for (std::uint32_t x = m; x; x >>= 1)
            size += static_cast<int>(x & 1U);
        if (size % spec.k == spec.a)
            sets.push_back(m);
    }
    if (spec.n > 6 && sets.size() > 64)
        throw BudgetError("naive enumeration needs n <= 6 or at most 64 candidate sets");
    return NaiveCliques(std::move(sets), spec.k, spec.b).largest();
}

// -------------------------------------------------------------- conjectures

auto probe_conjectures(int k, int n_max, const SearchOptions& options) -> ConjectureReport
{
    ConjectureReport report;
    if (n_max < 1)
        return report;
    for (int n = 1; n <= n_max; ++n) {
        std::vector<std::vector<std::optional<ExtremalResult>>> cells(
            static_cast<std::size_t>(k), std::vector<std::optional<ExtremalResult>>(static_cast<std::size_t>(k)));
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b) {
                auto r = extremal_search(TownSpec::make(n, k, a, b), options);
                ++report.cells_computed;
                if (r.optimal()) {
                    ++report.cells_optimal;
                    cells[a][b] = std::move(r);
                }
            }

        for (int m1 = 0; m1 < k; ++m1)
            for (int m2 = m1 + 1; m2 < k; ++m2) {
                const auto& lo = cells[m1][m1];
                const auto& hi = cells[m2][m2];
                if (!lo || !hi)
                    continue;
                ++report.monotone_checks;
                if (lo->size < hi->size)
                    report.counterexamples.push_back({"monotone-diagonal",
                        "n=" + std::to_string(n) + ": E(" + std::to_string(m1) + "," + std::to_string(m1) + ")=" +
                            std::to_string(lo->size) + " < E(" + std::to_string(m2) + "," + std::to_string(m2) +
                            ")=" + std::to_string(hi->size),
                        hi->witness});
            }

        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b) {
                const auto& cell = cells[a][b];
                if (a == b || !cell)
                    continue;
                ++report.linear_checks;
                if (cell->size > n)
                    report.counterexamples.push_back({"linear-off-diagonal",
                        "n=" + std::to_string(n) + ": E(" + std::to_string(a) + "," + std::to_string(b) + ")=" +
                            std::to_string(cell->size) + " > n",
                        cell->witness});
            }
    }
    return report;
}

} // namespace towns
