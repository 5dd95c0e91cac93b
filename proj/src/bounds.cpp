#include "towns/bounds.hpp"

#include "towns/algebra.hpp"
#include "towns/setcore.hpp"

#include <json.hpp>

#include <algorithm>

namespace towns {

auto rule_name(RuleId id) -> std::string
{
    switch (id) {
    case RuleId::trivial:
        return "trivial";
    case RuleId::modular_rw:
        return "modular-rw";
    case RuleId::n_minus_1_direct:
        return "n-minus-1-direct";
    case RuleId::n_minus_1_complement:
        return "n-minus-1-complement";
    case RuleId::two_one_schedule:
        return "two-one-schedule";
    case RuleId::isotropy:
        return "isotropy";
    case RuleId::mod3_exact:
        return "mod3-exact";
    }
    return "unknown";
}

auto rule_anchor(RuleId id) -> std::string
{
    switch (id) {
    case RuleId::trivial:
        return "|F| <= 2^n";
    case RuleId::modular_rw:
        return "sizes ≡ t, intersections in L (mod p), t ∉ L, |L| = s <= p-1, s+t <= n  =>  |F| <= C(n,s)";
    case RuleId::n_minus_1_direct:
        return "p ∤ a, b, a-b, n, a²-nb-a+b  or  p | a, p ∤ b, n-1  =>  |F| <= n-1";
    case RuleId::n_minus_1_complement:
        return "p ∤ n-a, n-2a+b, a-b, n, a²-nb-a+b  or  p | n-a, p ∤ n-2a+b, n-1  =>  |F| <= n-1";
    case RuleId::two_one_schedule:
        return "(a,b) ≡ (2,1): |F| <= n if n ≡ 3, |F| <= n-1 if n ≢ 0,3 (mod p), both attained";
    case RuleId::isotropy:
        return "a ≡ b ≡ 0: |F| <= 2^⌊n/2⌋;  a ≡ b ≢ 0: |F| <= 2^⌊(n+1)/2⌋";
    case RuleId::mod3_exact:
        return "mod 3 exact: (0,2) n-2/n/n-1, (1,0) n, (2,1) n/n-1/n-1 for n ≡ 0/1/2";
    }
    return {};
}

namespace {

auto bound_at(Expr expr, int n) -> BoundValue
{
    auto value = expr.evaluate(n);
    if (value < 0)
        value = 0;
    return {expr, value};
}

auto divides(int p, long long x) -> bool
{
    return residue(x, p) == 0;
}

} // namespace

auto modular_rw(int n, int p, int s, int t, const std::set<int>& intersections) -> std::optional<BigCount>
{
    if (!is_prime(p) || s < 0 || s > p - 1 || t < 0)
        return std::nullopt;
    std::set<int> reduced;
    for (int l : intersections)
        reduced.insert(residue(l, p));
    if (static_cast<int>(reduced.size()) != s || static_cast<int>(intersections.size()) != s)
        return std::nullopt;
    if (reduced.contains(residue(t, p)))
        return std::nullopt;
    if (static_cast<long long>(s) + t > n)
        return std::nullopt;
    return binomial(n, s);
}

auto complement_invariant(long long a, long long b, long long n) -> long long
{
    return a * a - n * b - a + b;
}

auto rule_n_minus_1_direct(long long a, long long b, long long n, int p) -> bool
{
    bool first = !divides(p, a) && !divides(p, b) && !divides(p, a - b) && !divides(p, n) &&
        !divides(p, complement_invariant(a, b, n));
    bool second = divides(p, a) && !divides(p, b) && !divides(p, n - 1);
    return first || second;
}

auto rule_n_minus_1_substituted(long long a, long long b, long long n, int p) -> bool
{
    bool first = !divides(p, n - a) && !divides(p, n - 2 * a + b) && !divides(p, a - b) && !divides(p, n) &&
        !divides(p, complement_invariant(a, b, n));
    bool second = divides(p, n - a) && !divides(p, n - 2 * a + b) && !divides(p, n - 1);
    return first || second;
}

auto rule_cor_21(int a, int b, int n, int p) -> std::optional<ScheduledBound>
{
    if (residue(a, p) != residue(2, p) || residue(b, p) != residue(1, p))
        return std::nullopt;
    if (residue(n, p) == residue(3, p))
        return ScheduledBound{bound_at(Expr::linear(0), n), true};
    if (residue(n, p) != 0)
        return ScheduledBound{bound_at(Expr::linear(-1), n), true};
    return std::nullopt;
}

auto rule_eventown(int a, int b, int n, int p) -> std::optional<BoundValue>
{
    if (residue(a - b, p) != 0)
        return std::nullopt;
    if (residue(a, p) == 0)
        return bound_at(Expr::power(2, 0, 2), n);
    return bound_at(Expr::power(2, 1, 2), n);
}

auto mod3_table(int a, int b, int n) -> std::optional<BoundValue>
{
    a = residue(a, 3);
    b = residue(b, 3);
    const int cls = residue(n, 3);
    if (a == 0 && b == 2) {
        static constexpr int offsets[] = {-2, 0, -1};
        return bound_at(Expr::linear(offsets[cls]), n);
    }
    if (a == 1 && b == 0)
        return bound_at(Expr::linear(0), n);
    if (a == 2 && b == 1)
        return bound_at(Expr::linear(cls == 0 ? 0 : -1), n);
    return std::nullopt;
}

auto bound_oracle(int a, int b, int k, int n, const std::set<RuleId>& enabled) -> BoundResult
{
    const auto spec = TownSpec::make(n, k, a, b);
    std::vector<FiredRule> fired;
    auto on = [&](RuleId id) { return enabled.contains(id); };

    // Trivial bound always fires so the result is never empty.
    fired.push_back({RuleId::trivial, 0, bound_at(Expr::power(2), n), false});

    for (int p : prime_divisors(spec.k)) {
        const int ap = residue(spec.a, p), bp = residue(spec.b, p);
        const bool whole = p == spec.k;

        if (on(RuleId::modular_rw))
            if (auto v = modular_rw(n, p, 1, ap, {bp}))
                fired.push_back({RuleId::modular_rw, p, bound_at(Expr::binomial(1), n), false});
        if (on(RuleId::n_minus_1_direct) && rule_n_minus_1_direct(ap, bp, n, p))
            fired.push_back({RuleId::n_minus_1_direct, p, bound_at(Expr::linear(-1), n), false});
        if (on(RuleId::n_minus_1_complement) && rule_n_minus_1_substituted(ap, bp, n, p))
            fired.push_back({RuleId::n_minus_1_complement, p, bound_at(Expr::linear(-1), n), false});
        if (on(RuleId::two_one_schedule))
            if (auto s = rule_cor_21(ap, bp, n, p))
                fired.push_back({RuleId::two_one_schedule, p, s->bound, s->tight && whole});
        if (on(RuleId::isotropy))
            if (auto v = rule_eventown(ap, bp, n, p))
                fired.push_back({RuleId::isotropy, p, *v, false});
        if (on(RuleId::mod3_exact) && p == 3)
            if (auto v = mod3_table(ap, bp, n))
                fired.push_back({RuleId::mod3_exact, p, *v, whole});
    }

    BoundResult result;
    result.bound = std::min_element(fired.begin(), fired.end(), [](const FiredRule& x, const FiredRule& y) {
        return x.bound.value < y.bound.value;
    })->bound;
    result.tight = std::any_of(fired.begin(), fired.end(),
        [&](const FiredRule& r) { return r.tight && r.bound.value == result.bound.value; });
    result.rules = std::move(fired);
    return result;
}

auto bound_oracle(int a, int b, int k, int n) -> BoundResult
{
    return bound_oracle(a, b, k, n, std::set<RuleId>(std::begin(all_rules), std::end(all_rules)));
}

namespace {

void put_value(nlohmann::ordered_json& j, const BigCount& value)
{
    if (value <= std::numeric_limits<std::uint64_t>::max())
        j["value"] = value.convert_to<std::uint64_t>();
    else
        j["value"] = to_decimal(value);
}

} // namespace

auto to_json(const BoundResult& result) -> std::string
{
    nlohmann::ordered_json j;
    put_value(j, result.bound.value);
    j["expr"] = result.bound.expr.render();
    j["tight"] = result.tight;
    j["rules"] = nlohmann::ordered_json::array();
    for (const auto& rule : result.rules) {
        nlohmann::ordered_json r;
        r["id"] = rule_name(rule.id);
        r["anchor"] = rule_anchor(rule.id);
        r["p"] = rule.p;
        put_value(r, rule.bound.value);
        r["expr"] = rule.bound.expr.render();
        r["tight"] = rule.tight;
        j["rules"].push_back(std::move(r));
    }
    return j.dump();
}

} // namespace towns
