#pragma once

// Exact arithmetic in GF(p) and GF(p^2) = GF(p)[x]/(x^2 - r), alpha-extended
// characteristic vectors, and the rank / isotropy certificates built on them.

#include "towns/setcore.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace towns {

auto is_prime(long long p) -> bool;
auto prime_divisors(long long k) -> std::vector<int>;

/// Smallest r >= 2 with r^((p-1)/2) ≡ -1 (mod p). Throws SpecError unless p is an odd prime.
auto find_nonresidue(int p) -> int;

/// c0 + c1·x with 0 <= c0, c1 < p.
struct QuadScalar {
    int c0 = 0;
    int c1 = 0;

    friend auto operator==(const QuadScalar&, const QuadScalar&) -> bool = default;
};

/// GF(p^2) for odd primes p. For p = 2 the object degenerates to the prime
/// field GF(2) (r = 0) and every value it produces has c1 = 0; this is enough
/// for the certificates because every element of GF(2) is already a square.
class QuadExt {
  public:
    explicit QuadExt(int p);

    auto p() const noexcept -> int { return _p; }
    /// The non-residue defining x^2 = r; 0 for the degenerate p = 2 field.
    auto r() const noexcept -> int { return _r; }
    auto is_prime_field() const noexcept -> bool { return _p == 2; }

    auto from_int(long long v) const -> QuadScalar { return {residue(v, _p), 0}; }
    auto zero() const -> QuadScalar { return {0, 0}; }
    auto one() const -> QuadScalar { return {1 % _p, 0}; }

    auto add(QuadScalar u, QuadScalar v) const -> QuadScalar;
    auto sub(QuadScalar u, QuadScalar v) const -> QuadScalar;
    auto neg(QuadScalar u) const -> QuadScalar;
    auto mul(QuadScalar u, QuadScalar v) const -> QuadScalar;
    /// Multiplicative inverse; throws SpecError on zero.
    auto inv(QuadScalar u) const -> QuadScalar;
    static auto is_zero(QuadScalar u) -> bool { return u.c0 == 0 && u.c1 == 0; }

    /// A square root of v ∈ GF(p) inside GF(p^2). Of the two roots ±α the one
    /// with lexicographically smaller (c1, c0) is returned.
    auto sqrt_of(long long v) const -> QuadScalar;

    /// Every element, ordered by (c1, c0).
    auto elements() const -> std::vector<QuadScalar>;

  private:
    int _p;
    int _r;
};

using AlphaVector = std::vector<QuadScalar>;

/// Row-major dense matrix over GF(p^2).
struct QuadMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<QuadScalar> data;

    QuadMatrix() = default;
    QuadMatrix(std::size_t r, std::size_t c) :
        rows(r), cols(c), data(r * c)
    {
    }

    auto at(std::size_t i, std::size_t j) -> QuadScalar& { return data[i * cols + j]; }
    auto at(std::size_t i, std::size_t j) const -> const QuadScalar& { return data[i * cols + j]; }
};

/// The scalar α with α² = -b (mod p) used to extend characteristic vectors.
auto alpha_for(const QuadExt& field, int b) -> QuadScalar;

/// (1_A(1), ..., 1_A(n), α) for every member A, with α = alpha_for(field, spec.b).
auto alpha_vectors(const Family& family, const QuadExt& field) -> std::vector<AlphaVector>;

auto dot(const QuadExt& field, const AlphaVector& u, const AlphaVector& v) -> QuadScalar;
auto gram_matrix(const QuadExt& field, const std::vector<AlphaVector>& vectors) -> QuadMatrix;
auto rows_to_matrix(const std::vector<AlphaVector>& vectors) -> QuadMatrix;

/// Rank by Gaussian elimination.
auto rank(const QuadExt& field, QuadMatrix m) -> std::size_t;

struct Certificate {
    enum class Kind { independence, isotropy };

    Kind kind = Kind::independence;
    int p = 0;
    int r = 0;
    QuadScalar alpha;
    std::size_t rank = 0;  ///< rank of the alpha vectors, i.e. the span dimension
    std::size_t size = 0;  ///< |F|
    bool holds = false;
    /// Independence: Gram = (a-b)·I. Isotropy: Gram = 0.
    bool gram_matches = false;
    /// Isotropy only: maximal dimension of a totally isotropic span.
    int dimension_bound = 0;
};

/// Linear independence of the alpha vectors when p ∤ a-b.
/// Throws SpecError when p is not a prime divisor of k or p | a-b.
auto independence_certificate(const Family& family, int p) -> Certificate;

/// Total isotropy of the alpha vectors when a ≡ b (mod p).
/// Throws SpecError when p is not a prime divisor of k or a ≢ b (mod p).
auto isotropy_certificate(const Family& family, int p) -> Certificate;

/// {"kind", "p", "r", "alpha":[c0,c1], "rank", "size", "holds", ...} with fixed key order.
auto to_json(const Certificate& cert) -> std::string;

} // namespace towns
