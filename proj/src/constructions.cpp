#include "towns/constructions.hpp"

#include "towns/algebra.hpp"

namespace towns {

namespace {

constexpr std::size_t max_generated_family = 20'000'000;

auto legendre(long long x, int q) -> int
{
    x = residue(x, q);
    if (x == 0)
        return 0;
    long long result = 1, base = x;
    for (long long e = (q - 1) / 2; e > 0; e >>= 1) {
        if (e & 1)
            result = result * base % q;
        base = base * base % q;
    }
    return result == 1 ? 1 : -1;
}

void check_residues(int a, int b, int k)
{
    if (k < 2 || a < 0 || a >= k || b < 0 || b >= k)
        throw SpecError("invalid residues a=" + std::to_string(a) + " b=" + std::to_string(b) + " for k=" +
            std::to_string(k));
}

} // namespace

auto is_normalized_hadamard(const HadamardMatrix& h) -> bool
{
    const int n = h.order;
    if (n < 1 || h.entries.size() != static_cast<std::size_t>(n) * n)
        return false;
    for (int i = 0; i < n; ++i) {
        if (h.at(0, i) != 1 || h.at(i, 0) != 1)
            return false;
        for (int j = 0; j < n; ++j)
            if (h.at(i, j) != 1 && h.at(i, j) != -1)
                return false;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            long long dot = 0;
            for (int c = 0; c < n; ++c)
                dot += h.at(i, c) * h.at(j, c);
            if (dot != (i == j ? n : 0))
                return false;
        }
    return true;
}

auto paley_hadamard(int q) -> HadamardMatrix
{
    if (!is_prime(q) || q % 4 != 3)
        throw SpecError("Paley construction needs a prime q ≡ 3 (mod 4), got " + std::to_string(q));

    // H = I + S with S = [[0, 1ᵀ], [-1, Q]] and Q the Jacobsthal matrix.
    const int order = q + 1;
    HadamardMatrix h{order, std::vector<std::int8_t>(static_cast<std::size_t>(order) * order)};
    auto set = [&](int i, int j, int v) { h.entries[static_cast<std::size_t>(i) * order + j] = static_cast<std::int8_t>(v); };
    for (int i = 0; i < order; ++i)
        for (int j = 0; j < order; ++j) {
            int s = 0;
            if (i == 0 && j > 0)
                s = 1;
            else if (j == 0 && i > 0)
                s = -1;
            else if (i > 0 && j > 0)
                s = legendre(j - i, q);
            set(i, j, s + (i == j ? 1 : 0));
        }

    for (int i = 0; i < order; ++i)
        if (h.at(i, 0) == -1)
            for (int j = 0; j < order; ++j)
                set(i, j, -h.at(i, j));
    for (int j = 0; j < order; ++j)
        if (h.at(0, j) == -1)
            for (int i = 0; i < order; ++i)
                set(i, j, -h.at(i, j));

    if (!is_normalized_hadamard(h))
        throw std::logic_error("Paley construction produced a non-Hadamard matrix");
    return h;
}

auto block_construction(int m, int k, int n) -> Family
{
    if (k < 2 || m < 0 || m >= k)
        throw SpecError("block construction needs 0 <= m < k, got m=" + std::to_string(m) + " k=" + std::to_string(k));
    if (m > n)
        throw SpecError("block construction needs m <= n");

    const int blocks = (n - m) / k;
    if (blocks >= 63 || (std::size_t{1} << blocks) > max_generated_family)
        throw SpecError("block construction too large to materialize");

    Family family(TownSpec::make(n, k, m, m));
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << blocks); ++mask) {
        auto member = SetWord::prefix(n, m);
        for (int i = 0; i < blocks; ++i)
            if ((mask >> i) & 1U)
                for (int e = m + k * i + 1; e <= m + k * (i + 1); ++e)
                    member.insert(e);
        family.add(std::move(member));
    }
    return family;
}

auto hadamard_block_supported(int k) -> bool
{
    return k >= 2 && is_prime(4LL * k - 1);
}

auto frankl_odlyzko(int k, int n) -> Family
{
    if (!hadamard_block_supported(k))
        throw SpecError("no order-" + std::to_string(4 * k) + " Hadamard source for k=" + std::to_string(k));
    if (n < 1)
        throw SpecError("ground set size must be positive");

    const int width = 4 * k;
    const int blocks = n / width;
    const auto h = paley_hadamard(width - 1);

    // Candidates inside one block: positive and negative support of each row.
    std::vector<std::vector<int>> candidates;
    for (int row = 0; row < width; ++row) {
        std::vector<int> positive, negative;
        for (int col = 0; col < width; ++col)
            (h.at(row, col) == 1 ? positive : negative).push_back(col);
        candidates.push_back(std::move(negative));
        candidates.push_back(std::move(positive));
    }

    const std::size_t radix = candidates.size();
    std::size_t total = 1;
    for (int i = 0; i < blocks; ++i) {
        total *= radix;
        if (total > max_generated_family)
            throw SpecError("Hadamard-block family too large to materialize");
    }

    Family family(TownSpec::make(n, k, 0, 0));
    std::vector<std::size_t> digits(static_cast<std::size_t>(blocks), 0);
    for (std::size_t t = 0; t < total; ++t) {
        SetWord member(n);
        for (int blk = 0; blk < blocks; ++blk)
            for (int col : candidates[digits[blk]])
                member.insert(blk * width + col + 1);
        family.add(std::move(member));
        for (int blk = blocks - 1; blk >= 0; --blk) {
            if (++digits[blk] < radix)
                break;
            digits[blk] = 0;
        }
    }
    return family;
}

auto augment(const Family& family, int m) -> Family
{
    if (m < 0)
        throw SpecError("augment needs m >= 0");
    const auto& spec = family.spec();
    const int n = spec.n + m;
    Family result(TownSpec{n, spec.k, residue(spec.a + m, spec.k), residue(spec.b + m, spec.k)});
    for (const auto& member : family.members()) {
        auto widened = member.widened(n);
        for (int e = spec.n + 1; e <= n; ++e)
            widened.insert(e);
        result.add(std::move(widened));
    }
    return result;
}

namespace {

struct StarShape {
    int core;
    int block;
};

auto star_shape(int a, int b, int k) -> StarShape
{
    check_residues(a, b, k);
    int d = residue(a - b, k);
    return {b, d == 0 ? k : d};
}

} // namespace

auto star_size_expr(int a, int b, int k) -> Expr
{
    auto [c, d] = star_shape(a, b, k);
    return Expr::linear(-c, d);
}

auto hadamard_block_size_expr(int k, int m) -> Expr
{
    return Expr::power(8 * k, -m, 4 * k);
}

auto star(int a, int b, int k, int n) -> Family
{
    auto [c, d] = star_shape(a, b, k);
    if (c + d > n)
        throw SpecError("no star exists: core " + std::to_string(c) + " plus block " + std::to_string(d) + " exceeds n=" +
            std::to_string(n));

    Family family(TownSpec::make(n, k, a, b));
    const int count = (n - c) / d;
    for (int i = 0; i < count; ++i) {
        auto member = SetWord::prefix(n, c);
        for (int e = c + i * d + 1; e <= c + (i + 1) * d; ++e)
            member.insert(e);
        family.add(std::move(member));
    }
    return family;
}

auto co_star(int a, int b, int k, int n) -> Family
{
    check_residues(a, b, k);
    return substitute(star(residue(n - a, k), residue(n - 2 * a + b, k), k, n));
}

auto best_lower_bound(int a, int b, int k, int n) -> LowerBoundFamily
{
    const auto spec = TownSpec::make(n, k, a, b);
    LowerBoundFamily best{"none", Expr::constant(0), Family(spec)};

    auto consider = [&](const char* name, Expr expr, auto&& generate) {
        std::optional<Family> family;
        try {
            family.emplace(generate());
        }
        catch (const SpecError&) {
            return;
        }
        if (family->size() > best.family.size() || (best.generator == "none" && !family->empty()))
            best = LowerBoundFamily{name, expr, std::move(*family)};
    };

    consider("star", star_size_expr(a, b, k), [&] { return star(a, b, k, n); });
    consider("co-star", star_size_expr(residue(n - a, k), residue(n - 2 * a + b, k), k),
        [&] { return co_star(a, b, k, n); });
    if (a == b) {
        consider("block", Expr::power(2, -a, k), [&] { return block_construction(a, k, n); });
        if (hadamard_block_supported(k) && n - a >= 1)
            consider("fo-augment", hadamard_block_size_expr(k, a), [&] { return augment(frankl_odlyzko(k, n - a), a); });
    }
    return best;
}

} // namespace towns
