#include "towns/expr.hpp"

#include "towns/setcore.hpp"

#include <limits>

namespace towns {

auto Expr::constant(long long c) -> Expr
{
    Expr e;
    e._kind = Kind::constant;
    e._constant = c;
    return e;
}

auto Expr::linear(int offset, int divisor) -> Expr
{
    if (divisor < 1)
        throw SpecError("expression divisor must be positive");
    Expr e;
    e._kind = Kind::linear;
    e._offset = offset;
    e._divisor = divisor;
    return e;
}

auto Expr::power(int base, int offset, int divisor) -> Expr
{
    if (divisor < 1 || base < 1)
        throw SpecError("bad power expression");
    Expr e;
    e._kind = Kind::power;
    e._base = base;
    e._offset = offset;
    e._divisor = divisor;
    return e;
}

auto Expr::binomial(int s) -> Expr
{
    if (s < 0)
        throw SpecError("negative binomial index");
    Expr e;
    e._kind = Kind::binomial;
    e._choose = s;
    return e;
}

auto binomial(int n, int s) -> BigCount
{
    if (s < 0 || n < 0 || s > n)
        return 0;
    BigCount result = 1;
    for (int i = 1; i <= s; ++i)
        result = result * (n - s + i) / i;
    return result;
}

auto Expr::evaluate(int n) const -> BigCount
{
    switch (_kind) {
    case Kind::constant:
        return _constant;
    case Kind::linear:
        return floor_div(static_cast<long long>(n) + _offset, _divisor);
    case Kind::power: {
        auto exponent = floor_div(static_cast<long long>(n) + _offset, _divisor);
        if (exponent < 0)
            return 0;
        return boost::multiprecision::pow(BigCount(_base), static_cast<unsigned>(exponent));
    }
    case Kind::binomial:
        return towns::binomial(n, _choose);
    }
    return 0;
}

auto Expr::evaluate_u64(int n) const -> std::optional<std::uint64_t>
{
    auto v = evaluate(n);
    if (v < 0 || v > std::numeric_limits<std::uint64_t>::max())
        return std::nullopt;
    return v.convert_to<std::uint64_t>();
}

namespace {

auto shifted_n(int offset) -> std::string
{
    if (offset == 0)
        return "n";
    return offset > 0 ? "n+" + std::to_string(offset) : "n−" + std::to_string(-offset);
}

auto floor_of(int offset, int divisor) -> std::string
{
    if (divisor == 1)
        return shifted_n(offset);
    auto numerator = offset == 0 ? std::string("n") : "(" + shifted_n(offset) + ")";
    return "⌊" + numerator + "/" + std::to_string(divisor) + "⌋";
}

} // namespace

auto Expr::render() const -> std::string
{
    switch (_kind) {
    case Kind::constant:
        return std::to_string(_constant);
    case Kind::linear:
        return floor_of(_offset, _divisor);
    case Kind::power: {
        auto exponent = floor_of(_offset, _divisor);
        if (_divisor == 1 && _offset != 0)
            exponent = "(" + exponent + ")";
        return std::to_string(_base) + "^" + exponent;
    }
    case Kind::binomial:
        if (_choose == 1)
            return "n";
        return "C(n," + std::to_string(_choose) + ")";
    }
    return {};
}

auto to_decimal(const BigCount& value) -> std::string
{
    return value.str();
}

} // namespace towns
