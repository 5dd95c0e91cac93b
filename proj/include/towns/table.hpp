#pragma once

// One row per (a,b) residue pair at a fixed n: best construction, best upper
// bound, and the exact value when a cached optimal search exists.

#include "towns/cache.hpp"
#include "towns/expr.hpp"

#include <optional>
#include <string>
#include <vector>

namespace towns {

struct TableCell {
    int a = 0;
    int b = 0;
    int n = 0;
    int n_residue = 0;
    /// Symbolic lower bound. For a = b this is the asymptotically dominant
    /// Hadamard-block family even when a block family is larger at this n.
    Expr lower_expr;
    BigCount lower_value;         ///< size of best_lower_bound at n
    std::string lower_generator;  ///< generator that produced lower_value
    Expr upper_expr;
    BigCount upper_value;
    bool tight = false;  ///< upper bound certified attained and lower_value == upper_value
    std::optional<int> exact;
    std::string source = "paper";  ///< "computed" when exact came from the cache
};

/// All k² rows for ground set size n. The mod-3 table uses the grouping
/// (0,0), (1,1), (2,2), (0,2), (1,0), (2,1), (0,1), (1,2), (2,0).
auto table_cells(int k, int n, const ResultCache* cache = nullptr) -> std::vector<TableCell>;

/// Markdown; symbolic expressions unless evaluate is set.
auto render_table_markdown(const std::vector<TableCell>& cells, bool evaluate) -> std::string;
auto render_table_csv(const std::vector<TableCell>& cells, bool evaluate) -> std::string;
auto to_json(const std::vector<TableCell>& cells) -> std::string;

} // namespace towns
