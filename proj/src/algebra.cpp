#include "towns/algebra.hpp"

#include <json.hpp>

#include <utility>

namespace towns {

auto is_prime(long long p) -> bool
{
    if (p < 2)
        return false;
    for (long long d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

auto prime_divisors(long long k) -> std::vector<int>
{
    std::vector<int> result;
    for (long long d = 2; d * d <= k; ++d)
        if (k % d == 0) {
            result.push_back(static_cast<int>(d));
            while (k % d == 0)
                k /= d;
        }
    if (k > 1)
        result.push_back(static_cast<int>(k));
    return result;
}

namespace {

auto pow_mod(long long base, long long exp, int p) -> int
{
    long long result = 1 % p;
    base = residue(base, p);
    while (exp > 0) {
        if (exp & 1)
            result = result * base % p;
        base = base * base % p;
        exp >>= 1;
    }
    return static_cast<int>(result);
}

} // namespace

auto find_nonresidue(int p) -> int
{
    if (p < 3 || !is_prime(p))
        throw SpecError("find_nonresidue needs an odd prime, got " + std::to_string(p));
    for (int r = 2; r < p; ++r)
        if (pow_mod(r, (p - 1) / 2, p) == p - 1)
            return r;
    throw std::logic_error("no quadratic non-residue found");
}

QuadExt::QuadExt(int p) :
    _p(p), _r(0)
{
    if (!is_prime(p))
        throw SpecError("field characteristic must be prime, got " + std::to_string(p));
    if (p != 2)
        _r = find_nonresidue(p);
}

auto QuadExt::add(QuadScalar u, QuadScalar v) const -> QuadScalar
{
    return {(u.c0 + v.c0) % _p, (u.c1 + v.c1) % _p};
}

auto QuadExt::sub(QuadScalar u, QuadScalar v) const -> QuadScalar
{
    return {(u.c0 - v.c0 + _p) % _p, (u.c1 - v.c1 + _p) % _p};
}

auto QuadExt::neg(QuadScalar u) const -> QuadScalar
{
    return {(_p - u.c0) % _p, (_p - u.c1) % _p};
}

auto QuadExt::mul(QuadScalar u, QuadScalar v) const -> QuadScalar
{
    // (u0 + u1 x)(v0 + v1 x) = u0 v0 + r u1 v1 + (u0 v1 + u1 v0) x
    long long p = _p;
    long long c0 = (static_cast<long long>(u.c0) * v.c0 + static_cast<long long>(u.c1) * v.c1 % p * _r) % p;
    long long c1 = (static_cast<long long>(u.c0) * v.c1 + static_cast<long long>(u.c1) * v.c0) % p;
    return {static_cast<int>(c0), static_cast<int>(c1)};
}

auto QuadExt::inv(QuadScalar u) const -> QuadScalar
{
    if (is_zero(u))
        throw SpecError("division by zero in GF(p^2)");
    // (u0 + u1 x)^-1 = (u0 - u1 x) / (u0^2 - r u1^2); the norm is a nonzero element of GF(p).
    long long p = _p;
    long long norm = residue(static_cast<long long>(u.c0) * u.c0 - static_cast<long long>(_r) * u.c1 % p * u.c1, _p);
    long long norm_inv = pow_mod(norm, p - 2, _p);
    return {static_cast<int>(u.c0 * norm_inv % p), static_cast<int>(residue(-u.c1 * norm_inv, _p))};
}

auto QuadExt::sqrt_of(long long v) const -> QuadScalar
{
    auto target = from_int(v);
    for (const auto& x : elements())
        if (mul(x, x) == target)
            return x;
    throw std::logic_error("square root missing in GF(p^2)");
}

auto QuadExt::elements() const -> std::vector<QuadScalar>
{
    std::vector<QuadScalar> result;
    int top = is_prime_field() ? 1 : _p;
    result.reserve(static_cast<std::size_t>(top) * _p);
    for (int c1 = 0; c1 < top; ++c1)
        for (int c0 = 0; c0 < _p; ++c0)
            result.push_back({c0, c1});
    return result;
}

auto alpha_for(const QuadExt& field, int b) -> QuadScalar
{
    return field.sqrt_of(-static_cast<long long>(b));
}

auto alpha_vectors(const Family& family, const QuadExt& field) -> std::vector<AlphaVector>
{
    const int n = family.spec().n;
    const auto alpha = alpha_for(field, family.spec().b);
    std::vector<AlphaVector> result;
    result.reserve(family.size());
    for (const auto& member : family.members()) {
        AlphaVector v(static_cast<std::size_t>(n) + 1, field.zero());
        for (int e : member.elements())
            v[static_cast<std::size_t>(e) - 1] = field.one();
        v.back() = alpha;
        result.push_back(std::move(v));
    }
    return result;
}

auto dot(const QuadExt& field, const AlphaVector& u, const AlphaVector& v) -> QuadScalar
{
    if (u.size() != v.size())
        throw SpecError("dot product of vectors with different lengths");
    auto acc = field.zero();
    for (std::size_t i = 0; i < u.size(); ++i)
        acc = field.add(acc, field.mul(u[i], v[i]));
    return acc;
}

auto gram_matrix(const QuadExt& field, const std::vector<AlphaVector>& vectors) -> QuadMatrix
{
    QuadMatrix g(vectors.size(), vectors.size());
    for (std::size_t i = 0; i < vectors.size(); ++i)
        for (std::size_t j = i; j < vectors.size(); ++j)
            g.at(i, j) = g.at(j, i) = dot(field, vectors[i], vectors[j]);
    return g;
}

auto rows_to_matrix(const std::vector<AlphaVector>& vectors) -> QuadMatrix
{
    QuadMatrix m(vectors.size(), vectors.empty() ? 0 : vectors.front().size());
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (vectors[i].size() != m.cols)
            throw SpecError("ragged rows");
        for (std::size_t j = 0; j < m.cols; ++j)
            m.at(i, j) = vectors[i][j];
    }
    return m;
}

auto rank(const QuadExt& field, QuadMatrix m) -> std::size_t
{
    std::size_t r = 0;
    for (std::size_t col = 0; col < m.cols && r < m.rows; ++col) {
        std::size_t pivot = r;
        while (pivot < m.rows && QuadExt::is_zero(m.at(pivot, col)))
            ++pivot;
        if (pivot == m.rows)
            continue;
        for (std::size_t j = col; j < m.cols; ++j)
            std::swap(m.at(pivot, j), m.at(r, j));
        auto scale = field.inv(m.at(r, col));
        for (std::size_t j = col; j < m.cols; ++j)
            m.at(r, j) = field.mul(m.at(r, j), scale);
        for (std::size_t i = r + 1; i < m.rows; ++i) {
            auto factor = m.at(i, col);
            if (QuadExt::is_zero(factor))
                continue;
            for (std::size_t j = col; j < m.cols; ++j)
                m.at(i, j) = field.sub(m.at(i, j), field.mul(factor, m.at(r, j)));
        }
        ++r;
    }
    return r;
}

namespace {

void require_prime_divisor(const TownSpec& spec, int p)
{
    if (!is_prime(p))
        throw SpecError(std::to_string(p) + " is not prime");
    if (spec.k % p != 0)
        throw SpecError(std::to_string(p) + " does not divide k=" + std::to_string(spec.k));
}

auto gram_is(const QuadMatrix& g, QuadScalar diagonal) -> bool
{
    for (std::size_t i = 0; i < g.rows; ++i)
        for (std::size_t j = 0; j < g.cols; ++j)
            if (g.at(i, j) != (i == j ? diagonal : QuadScalar{}))
                return false;
    return true;
}

} // namespace

auto independence_certificate(const Family& family, int p) -> Certificate
{
    const auto& spec = family.spec();
    require_prime_divisor(spec, p);
    if (residue(spec.a - spec.b, p) == 0)
        throw SpecError("independence certificate needs p ∤ a-b");

    QuadExt field(p);
    auto vectors = alpha_vectors(family, field);
    Certificate cert;
    cert.kind = Certificate::Kind::independence;
    cert.p = p;
    cert.r = field.r();
    cert.alpha = alpha_for(field, spec.b);
    cert.size = family.size();
    cert.rank = rank(field, rows_to_matrix(vectors));
    cert.gram_matches = gram_is(gram_matrix(field, vectors), field.from_int(spec.a - spec.b));
    cert.holds = cert.rank == cert.size;
    return cert;
}

auto isotropy_certificate(const Family& family, int p) -> Certificate
{
    const auto& spec = family.spec();
    require_prime_divisor(spec, p);
    if (residue(spec.a - spec.b, p) != 0)
        throw SpecError("isotropy certificate needs a ≡ b (mod p)");

    QuadExt field(p);
    auto vectors = alpha_vectors(family, field);
    Certificate cert;
    cert.kind = Certificate::Kind::isotropy;
    cert.p = p;
    cert.r = field.r();
    cert.alpha = alpha_for(field, spec.b);
    cert.size = family.size();
    cert.rank = rank(field, rows_to_matrix(vectors));
    cert.gram_matches = gram_is(gram_matrix(field, vectors), field.zero());
    // With α = 0 the last coordinate is dead and the ambient space is GF(p^2)^n.
    cert.dimension_bound = residue(spec.b, p) == 0 ? spec.n / 2 : (spec.n + 1) / 2;
    bool binary_count_ok = cert.rank >= 64 || cert.size <= (std::uint64_t{1} << cert.rank);
    cert.holds = cert.gram_matches && cert.rank <= static_cast<std::size_t>(cert.dimension_bound) && binary_count_ok;
    return cert;
}

auto to_json(const Certificate& cert) -> std::string
{
    nlohmann::ordered_json j;
    j["kind"] = cert.kind == Certificate::Kind::independence ? "independence" : "isotropy";
    j["p"] = cert.p;
    j["r"] = cert.r;
    j["alpha"] = {cert.alpha.c0, cert.alpha.c1};
    j["rank"] = cert.rank;
    j["size"] = cert.size;
    j["holds"] = cert.holds;
    j["gram_matches"] = cert.gram_matches;
    if (cert.kind == Certificate::Kind::isotropy)
        j["dimension_bound"] = cert.dimension_bound;
    return j.dump();
}

} // namespace towns
