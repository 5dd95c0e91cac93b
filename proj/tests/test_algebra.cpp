#include "support.hpp"

#include "towns/algebra.hpp"
#include "towns/constructions.hpp"

#include <doctest.h>

using namespace towns;
using namespace towns::testing;

namespace {

auto random_scalar(Rng& rng, int p) -> QuadScalar { return {uniform(rng, 0, p - 1), uniform(rng, 0, p - 1)}; }

// GF(9) = GF(3)[x]/(x^2 - 2), written out by hand for the rank oracle.
struct G9 {
    int c0, c1;
};

auto g9_add(G9 u, G9 v) -> G9 { return {(u.c0 + v.c0) % 3, (u.c1 + v.c1) % 3}; }
auto g9_neg(G9 u) -> G9 { return {(3 - u.c0) % 3, (3 - u.c1) % 3}; }
auto g9_mul(G9 u, G9 v) -> G9 { return {(u.c0 * v.c0 + 2 * u.c1 * v.c1) % 3, (u.c0 * v.c1 + u.c1 * v.c0) % 3}; }

auto g9_det(const std::vector<std::vector<G9>>& m) -> G9
{
    std::size_t n = m.size();
    if (n == 0)
        return {1, 0};
    G9 total{0, 0};
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<G9>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<G9> row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != j)
                    row.push_back(m[i][c]);
            minor.push_back(row);
        }
        auto term = g9_mul(m[0][j], g9_det(minor));
        total = g9_add(total, j % 2 == 0 ? term : g9_neg(term));
    }
    return total;
}

// Largest r with a nonzero r×r minor.
auto naive_rank(const QuadMatrix& m) -> std::size_t
{
    std::size_t best = 0;
    std::size_t rows = m.rows, cols = m.cols;
    for (std::uint32_t rs = 1; rs < (1U << rows); ++rs)
        for (std::uint32_t cs = 1; cs < (1U << cols); ++cs) {
            auto r = static_cast<std::size_t>(std::popcount(rs));
            if (r != static_cast<std::size_t>(std::popcount(cs)) || r <= best)
                continue;
            std::vector<std::vector<G9>> sub;
            for (std::size_t i = 0; i < rows; ++i) {
                if (!((rs >> i) & 1U))
                    continue;
                std::vector<G9> row;
                for (std::size_t j = 0; j < cols; ++j)
                    if ((cs >> j) & 1U)
                        row.push_back({m.at(i, j).c0, m.at(i, j).c1});
                sub.push_back(row);
            }
            auto d = g9_det(sub);
            if (d.c0 != 0 || d.c1 != 0)
                best = r;
        }
    return best;
}

auto gram_is(const QuadExt& f, const QuadMatrix& g, int diag) -> bool
{
    for (std::size_t i = 0; i < g.rows; ++i)
        for (std::size_t j = 0; j < g.cols; ++j)
            if (!(g.at(i, j) == (i == j ? f.from_int(diag) : f.zero())))
                return false;
    return true;
}

} // namespace

TEST_CASE("find_nonresidue")
{
    CHECK(find_nonresidue(3) == 2);
    CHECK(find_nonresidue(5) == 2);
    CHECK(find_nonresidue(7) == 3);
    CHECK(find_nonresidue(17) == 3);
    CHECK_THROWS_AS(find_nonresidue(9), SpecError);
    CHECK_THROWS_AS(find_nonresidue(2), SpecError);
    for (int p : {3, 5, 7, 11, 13, 23}) {
        int r = find_nonresidue(p);
        for (int y = 0; y < p; ++y)
            CHECK((y * y) % p != r);
    }
}

TEST_CASE("primes")
{
    CHECK(prime_divisors(12) == std::vector<int>{2, 3});
    CHECK(prime_divisors(7) == std::vector<int>{7});
    CHECK(is_prime(2));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(91));
}

TEST_CASE("property: field axioms in GF(p^2)")
{
    auto rng = make_rng(10);
    for (int p : {3, 5, 7}) {
        QuadExt f(p);
        for (int trial = 0; trial < 1000; ++trial) {
            auto u = random_scalar(rng, p), v = random_scalar(rng, p), w = random_scalar(rng, p);
            CHECK(f.mul(f.mul(u, v), w) == f.mul(u, f.mul(v, w)));
            CHECK(f.add(f.add(u, v), w) == f.add(u, f.add(v, w)));
            CHECK(f.mul(u, f.add(v, w)) == f.add(f.mul(u, v), f.mul(u, w)));
            CHECK(f.mul(u, v) == f.mul(v, u));
            CHECK(f.add(u, f.neg(u)) == f.zero());
            if (!QuadExt::is_zero(u))
                CHECK(f.mul(u, f.inv(u)) == f.one());
        }
    }
}

TEST_CASE("sqrt_of examples")
{
    QuadExt f(3);
    CHECK(f.sqrt_of(1) == QuadScalar{1, 0});
    CHECK(f.sqrt_of(0) == QuadScalar{0, 0});
    CHECK(f.sqrt_of(2) == QuadScalar{0, 1});
}

TEST_CASE("property: sqrt_of squares back and is the smallest (c1,c0) root")
{
    for (int p : {3, 5, 7, 11}) {
        QuadExt f(p);
        for (int v = 0; v < p; ++v) {
            auto s = f.sqrt_of(v);
            CHECK(f.mul(s, s) == f.from_int(v));
            for (const auto& e : f.elements())
                if (f.mul(e, e) == f.from_int(v))
                    CHECK(std::pair(s.c1, s.c0) <= std::pair(e.c1, e.c0));
        }
    }
}

TEST_CASE("alpha_vectors")
{
    QuadExt f(3);
    Family fam(TownSpec::make(3, 3, 2, 1), {SetWord::from_elements(3, {1, 2})});
    auto v = alpha_vectors(fam, f);
    REQUIRE(v.size() == 1);
    REQUIRE(v[0].size() == 4);
    CHECK(v[0][0] == f.one());
    CHECK(v[0][1] == f.one());
    CHECK(v[0][2] == f.zero());
    CHECK(f.mul(v[0][3], v[0][3]) == f.from_int(2));

    auto plain = alpha_vectors(Family(TownSpec::make(3, 3, 0, 0), {SetWord::from_elements(3, {1, 2, 3})}), f);
    CHECK(plain[0][3] == f.zero());
    CHECK(alpha_vectors(Family(TownSpec::make(3, 3, 0, 0)), f).empty());

    auto g = gram_matrix(f, {AlphaVector{f.one(), f.zero(), f.zero()}});
    CHECK(g.rows == 1);
    CHECK(g.at(0, 0) == f.one());
}

TEST_CASE("rank examples")
{
    QuadExt f(3);
    QuadMatrix id(5, 5);
    for (std::size_t i = 0; i < 5; ++i)
        id.at(i, i) = f.one();
    CHECK(rank(f, id) == 5);
    CHECK(rank(f, QuadMatrix(4, 6)) == 0);

    auto star = towns::star(2, 1, 3, 7);
    REQUIRE(star.size() == 6);
    auto g = gram_matrix(f, alpha_vectors(star, f));
    CHECK(rank(f, g) == 6);
}

TEST_CASE("property: rank agrees with minor expansion over GF(9)")
{
    auto rng = make_rng(11);
    QuadExt f(3);
    for (int trial = 0; trial < 150; ++trial) {
        auto rows = static_cast<std::size_t>(uniform(rng, 1, 6));
        auto cols = static_cast<std::size_t>(uniform(rng, 1, 6));
        QuadMatrix m(rows, cols);
        // bias toward low rank: sometimes copy combinations of earlier rows
        for (std::size_t i = 0; i < rows; ++i) {
            if (i > 0 && uniform(rng, 0, 2) == 0) {
                auto c = random_scalar(rng, 3);
                auto src = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(i) - 1));
                for (std::size_t j = 0; j < cols; ++j)
                    m.at(i, j) = f.mul(c, m.at(src, j));
            }
            else
                for (std::size_t j = 0; j < cols; ++j)
                    m.at(i, j) = random_scalar(rng, 3);
        }
        CHECK(rank(f, m) == naive_rank(m));
    }
}

TEST_CASE("certificate examples")
{
    auto star = towns::star(2, 1, 3, 10);
    auto c = independence_certificate(star, 3);
    CHECK(c.holds);
    CHECK(c.rank == 9);
    CHECK(c.size == 9);
    CHECK(c.gram_matches);

    auto empty = independence_certificate(Family(TownSpec::make(5, 3, 2, 1)), 3);
    CHECK(empty.holds);
    CHECK(empty.rank == 0);

    auto b = isotropy_certificate(block_construction(1, 3, 7), 3);
    CHECK(b.holds);
    CHECK(b.gram_matches);

    auto single = isotropy_certificate(Family(TownSpec::make(1, 3, 1, 1), {SetWord::from_elements(1, {1})}), 3);
    CHECK(single.holds);
    CHECK(single.rank == 1);

    auto fo = isotropy_certificate(frankl_odlyzko(3, 12), 3);
    CHECK(fo.holds);
    CHECK(fo.size == 24);

    // a family that is not a town: reported, not thrown
    Family bad(TownSpec::make(4, 3, 2, 1),
        {SetWord::from_elements(4, {1, 2}), SetWord::from_elements(4, {3, 4}), SetWord::from_elements(4, {1, 2, 3, 4})});
    auto bc = independence_certificate(bad, 3);
    CHECK_FALSE(bc.gram_matches);

    CHECK_THROWS_AS(independence_certificate(star, 5), SpecError);
    CHECK_THROWS_AS(independence_certificate(block_construction(1, 3, 7), 3), SpecError);
    CHECK_THROWS_AS(isotropy_certificate(star, 3), SpecError);
}

TEST_CASE("certificate JSON is stable")
{
    auto c = independence_certificate(towns::star(2, 1, 3, 4), 3);
    CHECK(to_json(c) ==
          R"({"kind":"independence","p":3,"r":2,"alpha":[0,1],"rank":3,"size":3,"holds":true,"gram_matches":true})");
}

TEST_CASE("property: Gram matrices and orthogonality on generated towns")
{
    for (int p : {3, 5, 7}) {
        QuadExt f(p);
        for (int n = 1; n <= 14; ++n)
            for (int a = 0; a < p; ++a)
                for (int b = 0; b < p; ++b) {
                    auto best = best_lower_bound(a, b, p, n);
                    const auto& fam = best.family;
                    REQUIRE(check_town(fam).pass);
                    auto vecs = alpha_vectors(fam, f);
                    auto g = gram_matrix(f, vecs);
                    CHECK(gram_is(f, g, a == b ? 0 : a - b));

                    AlphaVector probe(static_cast<std::size_t>(n + 1), f.zero());
                    auto alpha = alpha_for(f, b);
                    if (b != 0) {
                        for (int i = 0; i < n; ++i)
                            probe[static_cast<std::size_t>(i)] = f.one();
                        probe[static_cast<std::size_t>(n)] = f.neg(f.mul(f.from_int(a), f.inv(alpha)));
                    }
                    else
                        probe[static_cast<std::size_t>(n)] = f.one();
                    for (const auto& v : vecs)
                        CHECK(QuadExt::is_zero(dot(f, v, probe)));
                }
    }
}
