#pragma once

// Size expressions in the ground-set size n, e.g. n-1, ⌊(n-1)/2⌋, 2^⌊n/2⌋,
// 24^⌊n/12⌋, C(n,2). Evaluated exactly.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace towns {

using BigCount = boost::multiprecision::cpp_int;

class Expr {
  public:
    enum class Kind { constant, linear, power, binomial };

    /// The constant c.
    static auto constant(long long c) -> Expr;
    /// ⌊(n + offset) / divisor⌋; plain n + offset when divisor is 1.
    static auto linear(int offset, int divisor = 1) -> Expr;
    /// base^⌊(n + offset) / divisor⌋.
    static auto power(int base, int offset = 0, int divisor = 1) -> Expr;
    /// C(n, s).
    static auto binomial(int s) -> Expr;

    auto kind() const noexcept -> Kind { return _kind; }
    auto base() const noexcept -> int { return _base; }
    auto offset() const noexcept -> int { return _offset; }
    auto divisor() const noexcept -> int { return _divisor; }

    auto evaluate(int n) const -> BigCount;
    /// Value at n when it fits in 64 bits and is non-negative.
    auto evaluate_u64(int n) const -> std::optional<std::uint64_t>;
    /// Symbolic form, e.g. "⌊(n+1)/2⌋" or "2^⌊n/2⌋".
    auto render() const -> std::string;

    friend auto operator==(const Expr&, const Expr&) -> bool = default;

  private:
    Kind _kind = Kind::constant;
    long long _constant = 0;
    int _base = 0;
    int _offset = 0;
    int _divisor = 1;
    int _choose = 0;
};

/// ⌊x / d⌋ for d > 0, rounding toward negative infinity.
constexpr auto floor_div(long long x, long long d) -> long long
{
    return x >= 0 ? x / d : -((-x + d - 1) / d);
}

auto binomial(int n, int s) -> BigCount;
auto to_decimal(const BigCount& value) -> std::string;

} // namespace towns
