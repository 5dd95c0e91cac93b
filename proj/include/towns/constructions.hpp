#pragma once

// Explicit town families: block unions, Hadamard-block eventowns, stars and
// their complements, plus a chooser for the largest applicable one.

#include "towns/expr.hpp"
#include "towns/setcore.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace towns {

/// Normalized ±1 matrix with H·Hᵀ = order·I.
struct HadamardMatrix {
    int order = 0;
    std::vector<std::int8_t> entries;

    auto at(int i, int j) const -> int { return entries[static_cast<std::size_t>(i) * order + j]; }
};

/// True iff H·Hᵀ = order·I and the first row and column are all +1.
auto is_normalized_hadamard(const HadamardMatrix& h) -> bool;

/// Paley construction I from a prime q ≡ 3 (mod 4); order q+1.
auto paley_hadamard(int q) -> HadamardMatrix;

/// [m] united with every subset of the ⌊(n-m)/k⌋ consecutive k-blocks after it;
/// 2^⌊(n-m)/k⌋ sets with spec (n, k, m, m). Leftover coordinates stay unused.
/// Throws SpecError when m >= k or m > n.
auto block_construction(int m, int k, int n) -> Family;

/// Whether frankl_odlyzko supports modulus k (an order-4k Paley matrix exists).
auto hadamard_block_supported(int k) -> bool;

/// (0,0)-town mod k of size (8k)^⌊n/4k⌋: each run of 4k coordinates contributes
/// one of the positive or negative supports of the rows of an order-4k
/// Hadamard matrix. Throws SpecError for unsupported k.
auto frankl_odlyzko(int k, int n) -> Family;

/// Adds m fresh elements n'+1..n'+m to every member. Residues shift by m.
auto augment(const Family& family, int m) -> Family;

/// Core [c] plus disjoint consecutive d-blocks, where c ≡ b is the smallest
/// non-negative and d ≡ a-b the smallest positive representative mod k.
/// Throws SpecError when c + d > n.
auto star(int a, int b, int k, int n) -> Family;

/// Complements of star(n-a, n-2a+b, k, n); an (a,b)-town of the same size.
auto co_star(int a, int b, int k, int n) -> Family;

/// Size of star(a, b, k, n) as a function of n: ⌊(n-c)/d⌋.
auto star_size_expr(int a, int b, int k) -> Expr;

/// Size of augment(frankl_odlyzko(k, n-m), m): (8k)^⌊(n-m)/4k⌋.
auto hadamard_block_size_expr(int k, int m) -> Expr;

struct LowerBoundFamily {
    std::string generator;  ///< "star", "co-star", "block", "fo-augment" or "none"
    Expr size_expr;         ///< size of this generator as a function of n
    Family family;
};

/// Largest checker-valid family among star, co-star, block and FO-augment
/// (ties keep that priority order). Empty family when nothing applies.
auto best_lower_bound(int a, int b, int k, int n) -> LowerBoundFamily;

} // namespace towns
