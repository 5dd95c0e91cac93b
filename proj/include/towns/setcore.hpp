#pragma once

// Sets over a ground set [n], families of such sets, and the (a,b)-town
// property modulo k.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace towns {

class SpecError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
  public:
    ParseError(int line, const std::string& message);

    /// 1-based line of the offending input, 0 when the input ended early.
    auto line() const noexcept -> int { return _line; }

  private:
    int _line;
};

/// Parameters of an (a,b)-town modulo k over the ground set [n].
struct TownSpec {
    int n = 1;
    int k = 2;
    int a = 0;
    int b = 0;

    /// Validating constructor: 1 <= n, 2 <= k, 0 <= a,b < k.
    static auto make(int n, int k, int a, int b) -> TownSpec;

    friend auto operator==(const TownSpec&, const TownSpec&) -> bool = default;
};

auto to_string(const TownSpec& spec) -> std::string;

/// Non-negative residue of x modulo m (m >= 1).
constexpr auto residue(long long x, long long m) -> int
{
    auto r = x % m;
    return static_cast<int>(r < 0 ? r + m : r);
}

/// A subset of [width] stored as a bit vector, element i at bit i-1.
/// Widths up to 128 live inline; wider sets spill to the heap.
class SetWord {
  public:
    static constexpr int inline_width = 128;

    SetWord() = default;
    explicit SetWord(int width);

    static auto from_elements(int width, std::span<const int> elements) -> SetWord;
    static auto from_elements(int width, std::initializer_list<int> elements) -> SetWord;
    /// Low `width` bits of mask; width must be at most 64.
    static auto from_mask(int width, std::uint64_t mask) -> SetWord;
    /// The prefix set {1, ..., count}.
    static auto prefix(int width, int count) -> SetWord;

    auto width() const noexcept -> int { return _width; }
    auto contains(int element) const -> bool;
    void insert(int element);
    void erase(int element);

    auto cardinality() const noexcept -> int;
    auto empty() const noexcept -> bool { return cardinality() == 0; }
    auto elements() const -> std::vector<int>;
    /// Low 64 bits; only meaningful for width <= 64.
    auto low_word() const noexcept -> std::uint64_t { return words()[0]; }

    auto complement() const -> SetWord;
    auto united_with(const SetWord& other) const -> SetWord;
    /// Same members over a larger ground set.
    auto widened(int new_width) const -> SetWord;

    auto words() const noexcept -> std::span<const std::uint64_t>;

    friend auto operator==(const SetWord& x, const SetWord& y) -> bool;
    /// Orders by width, then by the sorted element list lexicographically.
    friend auto operator<=>(const SetWord& x, const SetWord& y) -> std::strong_ordering;

  private:
    auto mutable_words() noexcept -> std::span<std::uint64_t>;
    auto word_count() const noexcept -> std::size_t { return (static_cast<std::size_t>(_width) + 63) / 64; }
    void check_element(int element) const;

    int _width = 0;
    std::array<std::uint64_t, 2> _inline{};
    std::vector<std::uint64_t> _heap;
};

auto cardinality(const SetWord& s) noexcept -> int;
/// |s ∩ t|; throws SpecError on width mismatch.
auto intersect_size(const SetWord& s, const SetWord& t) -> int;
/// Space-separated elements, or "-" for the empty set.
auto to_string(const SetWord& s) -> std::string;

struct SetWordHash {
    auto operator()(const SetWord& s) const noexcept -> std::size_t;
};

/// An ordered collection of pairwise distinct sets, each of width spec.n.
class Family {
  public:
    explicit Family(TownSpec spec);
    Family(TownSpec spec, std::vector<SetWord> members);

    /// Appends a member; throws SpecError on a width mismatch or a duplicate.
    void add(SetWord member);
    auto contains(const SetWord& member) const -> bool;

    auto spec() const noexcept -> const TownSpec& { return _spec; }
    auto members() const noexcept -> std::span<const SetWord> { return _members; }
    auto size() const noexcept -> std::size_t { return _members.size(); }
    auto empty() const noexcept -> bool { return _members.empty(); }
    auto operator[](std::size_t i) const -> const SetWord& { return _members[i]; }

    /// Same members, different parameters over the same ground set.
    auto with_spec(TownSpec spec) const -> Family;

    friend auto operator==(const Family& x, const Family& y) -> bool;

  private:
    TownSpec _spec;
    std::vector<SetWord> _members;
    std::unordered_set<SetWord, SetWordHash> _index;
};

struct Violation {
    enum class Kind { set_size, pair_intersection };

    Kind kind;
    std::size_t first;   ///< member index
    std::size_t second;  ///< second member index; equals first for set_size
    int observed;        ///< raw cardinality
    int residue;         ///< observed mod k
};

auto describe(const Violation& v, const TownSpec& spec) -> std::string;

struct CheckReport {
    bool pass = true;
    std::vector<Violation> violations;
};

/// Checks every member size and every unordered pair; reports all failures.
auto check_town(const Family& family) -> CheckReport;

/// Complements of all members, with parameters (n, k, n-a, n-2a+b) reduced mod k.
auto substitute(const Family& family) -> Family;

/// Parameters of the complement family.
auto substituted_spec(const TownSpec& spec) -> TownSpec;

/// Line-oriented family file: header "n k a b", one set per line, "-" for
/// the empty set, '#' comments.
auto parse_family(std::string_view text) -> Family;
auto render_family(const Family& family) -> std::string;

} // namespace towns
