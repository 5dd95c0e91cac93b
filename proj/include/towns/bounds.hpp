#pragma once

// Upper bounds on the size of (a,b)-towns mod k. Each bound is a guarded
// rule evaluated per prime divisor p of k on the reduced residues (a mod p,
// b mod p); the oracle keeps the minimum and reports every rule that fired.

#include "towns/expr.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace towns {

enum class RuleId : std::uint8_t {
    trivial,              ///< 2^n
    modular_rw,           ///< C(n,s) with s = 1: bound n when p ∤ a-b
    n_minus_1_direct,     ///< n-1 from the alpha-vector basis argument
    n_minus_1_complement, ///< n-1 from the same argument on the complement family
    two_one_schedule,     ///< (2,1): n when n ≡ 3, n-1 when n ≢ 0,3 (mod p)
    isotropy,             ///< 2^⌊n/2⌋ for a ≡ b ≡ 0, 2^⌊(n+1)/2⌋ for a ≡ b ≢ 0
    mod3_exact,           ///< exact values for (0,2), (1,0), (2,1) mod 3
};

inline constexpr RuleId all_rules[] = {RuleId::trivial, RuleId::modular_rw, RuleId::n_minus_1_direct,
    RuleId::n_minus_1_complement, RuleId::two_one_schedule, RuleId::isotropy, RuleId::mod3_exact};

auto rule_name(RuleId id) -> std::string;
/// Hypothesis under which the rule applies, stated in terms of a, b, n, p.
auto rule_anchor(RuleId id) -> std::string;

/// A bound as an expression in n together with its value at the queried n.
struct BoundValue {
    Expr expr;
    BigCount value;

    friend auto operator==(const BoundValue&, const BoundValue&) -> bool = default;
};

struct FiredRule {
    RuleId id;
    int p;  ///< prime the rule was evaluated at; 0 for the trivial bound
    BoundValue bound;
    bool tight;
};

struct BoundResult {
    BoundValue bound;
    std::vector<FiredRule> rules;
    bool tight = false;
};

/// Modular Ray-Chaudhuri–Wilson: C(n, s) for families with sizes ≡ t and
/// pairwise intersections in L (mod p). nullopt when any hypothesis fails:
/// p not prime, |L mod p| != s, s > p-1, t < 0, t ∈ L (mod p), s + t > n.
auto modular_rw(int n, int p, int s, int t, const std::set<int>& intersections) -> std::optional<BigCount>;

/// Whether the n-1 bound holds by the direct basis argument:
/// (i) p ∤ a, b, a-b, n, a²-nb-a+b, or (ii) p | a and p ∤ b, n-1.
auto rule_n_minus_1_direct(long long a, long long b, long long n, int p) -> bool;

/// The direct rule applied to the complement parameters (n-a, n-2a+b):
/// (i) p ∤ n-a, n-2a+b, a-b, n, a²-nb-a+b, or (ii) p | n-a and p ∤ n-2a+b, n-1.
auto rule_n_minus_1_substituted(long long a, long long b, long long n, int p) -> bool;

struct ScheduledBound {
    BoundValue bound;
    bool tight;
};

/// For a ≡ 2 and b ≡ 1 (mod p): n when n ≡ 3, n-1 when n ≢ 0,3; silent otherwise.
auto rule_cor_21(int a, int b, int n, int p) -> std::optional<ScheduledBound>;

/// For a ≡ b (mod p): 2^⌊n/2⌋ when a ≡ 0, else 2^⌊(n+1)/2⌋.
auto rule_eventown(int a, int b, int n, int p) -> std::optional<BoundValue>;

/// Exact mod-3 values: (0,2) → n-2/n/n-1, (1,0) → n, (2,1) → n/n-1/n-1 for n ≡ 0/1/2.
auto mod3_table(int a, int b, int n) -> std::optional<BoundValue>;

/// a² - nb - a + b, the quantity shared by a family and its complement family mod p.
auto complement_invariant(long long a, long long b, long long n) -> long long;

/// Best bound over every enabled rule and every prime divisor of k.
auto bound_oracle(int a, int b, int k, int n, const std::set<RuleId>& enabled) -> BoundResult;
auto bound_oracle(int a, int b, int k, int n) -> BoundResult;

/// {"value", "expr", "tight", "rules":[{"id","anchor","p","value","expr","tight"}]}
auto to_json(const BoundResult& result) -> std::string;

} // namespace towns
