#include "towns/table.hpp"

#include "towns/bounds.hpp"
#include "towns/constructions.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>
#include <utility>

namespace towns {

namespace {

auto row_order(int k) -> std::vector<std::pair<int, int>>
{
    if (k == 3)
        return {{0, 0}, {1, 1}, {2, 2}, {0, 2}, {1, 0}, {2, 1}, {0, 1}, {1, 2}, {2, 0}};
    std::vector<std::pair<int, int>> rows;
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            rows.emplace_back(a, b);
    return rows;
}

// Star and co-star sizes can coincide at one n while differing on the rest of
// the residue class; prefer the expression that is larger at n, then at n+k.
auto off_diagonal_expr(int a, int b, int k, int n, const Expr& fallback) -> Expr
{
    std::vector<Expr> candidates{fallback};
    try {
        star(a, b, k, n);
        candidates.push_back(star_size_expr(a, b, k));
    }
    catch (const SpecError&) {
    }
    try {
        co_star(a, b, k, n);
        candidates.push_back(star_size_expr(residue(n - a, k), residue(n - 2 * a + b, k), k));
    }
    catch (const SpecError&) {
    }
    auto key = [&](const Expr& e) { return std::pair(e.evaluate(n), e.evaluate(n + k)); };
    return *std::max_element(candidates.begin(), candidates.end(),
        [&](const Expr& x, const Expr& y) { return key(x) < key(y); });
}

} // namespace

auto table_cells(int k, int n, const ResultCache* cache) -> std::vector<TableCell>
{
    std::map<ResultCache::Key, CacheEntry> cached;
    if (cache)
        cached = cache->entries();

    std::vector<TableCell> cells;
    for (auto [a, b] : row_order(k)) {
        TableCell cell;
        cell.a = a;
        cell.b = b;
        cell.n = n;
        cell.n_residue = residue(n, k);

        auto lower = best_lower_bound(a, b, k, n);
        cell.lower_value = lower.family.size();
        cell.lower_generator = lower.generator;
        if (a == b)
            cell.lower_expr = hadamard_block_supported(k) ? hadamard_block_size_expr(k, a) : Expr::power(2, -a, k);
        else
            cell.lower_expr = off_diagonal_expr(a, b, k, n, lower.size_expr);

        auto upper = bound_oracle(a, b, k, n);
        cell.upper_expr = upper.bound.expr;
        cell.upper_value = upper.bound.value;
        cell.tight = upper.tight && cell.lower_value == cell.upper_value;

        auto it = cached.find({a, b, k, n});
        if (it != cached.end() && it->second.status == SearchStatus::optimal) {
            cell.exact = it->second.size;
            cell.source = "computed";
        }
        cells.push_back(std::move(cell));
    }
    return cells;
}

namespace {

auto lower_text(const TableCell& c, bool evaluate) -> std::string
{
    return evaluate ? to_decimal(c.lower_value) : c.lower_expr.render();
}

auto upper_text(const TableCell& c, bool evaluate) -> std::string
{
    return evaluate ? to_decimal(c.upper_value) : c.upper_expr.render();
}

} // namespace

auto render_table_markdown(const std::vector<TableCell>& cells, bool evaluate) -> std::string
{
    std::ostringstream out;
    if (!cells.empty()) {
        const auto& first = cells.front();
        out << "n = " << first.n << " (n ≡ " << first.n_residue << ")\n\n";
    }
    out << "| (a,b) | bounds | exact |\n|---|---|---|\n";
    for (const auto& c : cells) {
        out << "| (" << c.a << "," << c.b << ") | ";
        if (c.tight)
            out << "Tight: " << upper_text(c, evaluate);
        else
            out << "Lower: " << lower_text(c, evaluate) << " / Upper: " << upper_text(c, evaluate);
        out << " | " << (c.exact ? std::to_string(*c.exact) : std::string("-")) << " |\n";
    }
    return out.str();
}

auto render_table_csv(const std::vector<TableCell>& cells, bool evaluate) -> std::string
{
    std::ostringstream out;
    out << "a,b,n,lower,upper,tight,exact,source\n";
    for (const auto& c : cells)
        out << c.a << ',' << c.b << ',' << c.n << ",\"" << lower_text(c, evaluate) << "\",\"" << upper_text(c, evaluate)
            << "\"," << (c.tight ? "true" : "false") << ',' << (c.exact ? std::to_string(*c.exact) : std::string())
            << ',' << c.source << '\n';
    return out.str();
}

auto to_json(const std::vector<TableCell>& cells) -> std::string
{
    auto j = nlohmann::ordered_json::array();
    for (const auto& c : cells) {
        nlohmann::ordered_json row;
        row["a"] = c.a;
        row["b"] = c.b;
        row["n"] = c.n;
        row["lower_expr"] = c.lower_expr.render();
        row["lower"] = to_decimal(c.lower_value);
        row["lower_generator"] = c.lower_generator;
        row["upper_expr"] = c.upper_expr.render();
        row["upper"] = to_decimal(c.upper_value);
        row["tight"] = c.tight;
        if (c.exact)
            row["exact"] = *c.exact;
        else
            row["exact"] = nullptr;
        row["source"] = c.source;
        j.push_back(std::move(row));
    }
    return j.dump();
}

} // namespace towns
