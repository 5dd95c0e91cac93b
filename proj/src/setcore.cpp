#include "towns/setcore.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <optional>
#include <sstream>

namespace towns {

ParseError::ParseError(int line, const std::string& message) :
    std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
    _line(line)
{
}

auto TownSpec::make(int n, int k, int a, int b) -> TownSpec
{
    if (n < 1)
        throw SpecError("ground set size n must be positive, got " + std::to_string(n));
    if (k < 2)
        throw SpecError("modulus k must be at least 2, got " + std::to_string(k));
    if (a < 0 || a >= k || b < 0 || b >= k)
        throw SpecError("residues a,b must lie in [0, k), got a=" + std::to_string(a) + " b=" + std::to_string(b));
    return TownSpec{n, k, a, b};
}

auto to_string(const TownSpec& spec) -> std::string
{
    std::ostringstream out;
    out << "(" << spec.a << "," << spec.b << ")-town mod " << spec.k << " over [" << spec.n << "]";
    return out.str();
}

// ---------------------------------------------------------------- SetWord

SetWord::SetWord(int width) :
    _width(width)
{
    if (width < 0)
        throw SpecError("negative set width");
    if (width > inline_width)
        _heap.assign(word_count(), 0);
}

auto SetWord::from_elements(int width, std::span<const int> elements) -> SetWord
{
    SetWord s(width);
    for (int e : elements)
        s.insert(e);
    return s;
}

auto SetWord::from_elements(int width, std::initializer_list<int> elements) -> SetWord
{
    return from_elements(width, std::span<const int>(elements.begin(), elements.size()));
}

auto SetWord::from_mask(int width, std::uint64_t mask) -> SetWord
{
    if (width > 64)
        throw SpecError("from_mask supports widths up to 64");
    SetWord s(width);
    if (width < 64)
        mask &= (std::uint64_t{1} << width) - 1;
    s._inline[0] = mask;
    return s;
}

auto SetWord::prefix(int width, int count) -> SetWord
{
    if (count < 0 || count > width)
        throw SpecError("prefix length out of range");
    SetWord s(width);
    auto w = s.mutable_words();
    for (int i = 0; i < count; ++i)
        w[i / 64] |= std::uint64_t{1} << (i % 64);
    return s;
}

void SetWord::check_element(int element) const
{
    if (element < 1 || element > _width)
        throw SpecError("element " + std::to_string(element) + " outside [1," + std::to_string(_width) + "]");
}

auto SetWord::contains(int element) const -> bool
{
    check_element(element);
    int bit = element - 1;
    return (words()[bit / 64] >> (bit % 64)) & 1U;
}

void SetWord::insert(int element)
{
    check_element(element);
    int bit = element - 1;
    mutable_words()[bit / 64] |= std::uint64_t{1} << (bit % 64);
}

void SetWord::erase(int element)
{
    check_element(element);
    int bit = element - 1;
    mutable_words()[bit / 64] &= ~(std::uint64_t{1} << (bit % 64));
}

auto SetWord::cardinality() const noexcept -> int
{
    int total = 0;
    for (auto w : words())
        total += std::popcount(w);
    return total;
}

auto SetWord::elements() const -> std::vector<int>
{
    std::vector<int> result;
    result.reserve(static_cast<std::size_t>(cardinality()));
    auto w = words();
    for (std::size_t i = 0; i < w.size(); ++i) {
        auto bits = w[i];
        while (bits) {
            result.push_back(static_cast<int>(i * 64) + std::countr_zero(bits) + 1);
            bits &= bits - 1;
        }
    }
    return result;
}

auto SetWord::complement() const -> SetWord
{
    SetWord result(_width);
    auto src = words();
    auto dst = result.mutable_words();
    for (std::size_t i = 0; i < src.size(); ++i)
        dst[i] = ~src[i];
    if (_width == 0)
        dst[0] = 0;
    else if (_width % 64 != 0)
        dst.back() &= (std::uint64_t{1} << (_width % 64)) - 1;
    return result;
}

auto SetWord::united_with(const SetWord& other) const -> SetWord
{
    if (other._width != _width)
        throw SpecError("set width mismatch in union");
    SetWord result(*this);
    auto dst = result.mutable_words();
    auto src = other.words();
    for (std::size_t i = 0; i < src.size(); ++i)
        dst[i] |= src[i];
    return result;
}

auto SetWord::widened(int new_width) const -> SetWord
{
    if (new_width < _width)
        throw SpecError("cannot narrow a set");
    SetWord result(new_width);
    auto src = words();
    auto dst = result.mutable_words();
    std::copy(src.begin(), src.end(), dst.begin());
    return result;
}

auto SetWord::words() const noexcept -> std::span<const std::uint64_t>
{
    if (_width > inline_width)
        return _heap;
    return std::span<const std::uint64_t>(_inline.data(), std::max<std::size_t>(word_count(), 1));
}

auto SetWord::mutable_words() noexcept -> std::span<std::uint64_t>
{
    if (_width > inline_width)
        return _heap;
    return std::span<std::uint64_t>(_inline.data(), std::max<std::size_t>(word_count(), 1));
}

auto operator==(const SetWord& x, const SetWord& y) -> bool
{
    if (x._width != y._width)
        return false;
    auto xw = x.words(), yw = y.words();
    return std::equal(xw.begin(), xw.end(), yw.begin(), yw.end());
}

auto operator<=>(const SetWord& x, const SetWord& y) -> std::strong_ordering
{
    if (auto c = x._width <=> y._width; c != 0)
        return c;
    auto xw = x.words(), yw = y.words();
    for (std::size_t i = 0; i < xw.size(); ++i) {
        auto diff = xw[i] ^ yw[i];
        if (!diff)
            continue;
        // The set holding the smallest differing element comes first, unless
        // the other set has nothing beyond it (then the other is a prefix).
        auto low = diff & (~diff + 1);
        bool x_holds = xw[i] & low;
        const auto& other = x_holds ? yw : xw;
        bool other_has_more = (other[i] & ~((low << 1) - 1)) != 0;
        for (std::size_t j = i + 1; j < other.size() && !other_has_more; ++j)
            other_has_more = other[j] != 0;
        bool x_first = x_holds == other_has_more;
        return x_first ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

auto cardinality(const SetWord& s) noexcept -> int
{
    return s.cardinality();
}

auto intersect_size(const SetWord& s, const SetWord& t) -> int
{
    if (s.width() != t.width())
        throw SpecError("set width mismatch: " + std::to_string(s.width()) + " vs " + std::to_string(t.width()));
    auto sw = s.words(), tw = t.words();
    int total = 0;
    for (std::size_t i = 0; i < sw.size(); ++i)
        total += std::popcount(sw[i] & tw[i]);
    return total;
}

auto to_string(const SetWord& s) -> std::string
{
    auto elems = s.elements();
    if (elems.empty())
        return "-";
    std::string out;
    for (std::size_t i = 0; i < elems.size(); ++i) {
        if (i)
            out += ' ';
        out += std::to_string(elems[i]);
    }
    return out;
}

auto SetWordHash::operator()(const SetWord& s) const noexcept -> std::size_t
{
    std::size_t h = std::hash<int>{}(s.width());
    for (auto w : s.words())
        h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

// ----------------------------------------------------------------- Family

Family::Family(TownSpec spec) :
    _spec(spec)
{
}

Family::Family(TownSpec spec, std::vector<SetWord> members) :
    _spec(spec)
{
    _members.reserve(members.size());
    _index.reserve(members.size());
    for (auto& m : members)
        add(std::move(m));
}

void Family::add(SetWord member)
{
    if (member.width() != _spec.n)
        throw SpecError("member width " + std::to_string(member.width()) + " does not match n=" + std::to_string(_spec.n));
    if (!_index.insert(member).second)
        throw SpecError("duplicate member {" + to_string(member) + "}");
    _members.push_back(std::move(member));
}

auto Family::contains(const SetWord& member) const -> bool
{
    return _index.contains(member);
}

auto Family::with_spec(TownSpec spec) const -> Family
{
    if (spec.n != _spec.n)
        throw SpecError("with_spec cannot change the ground set size");
    Family result(*this);
    result._spec = spec;
    return result;
}

auto operator==(const Family& x, const Family& y) -> bool
{
    return x._spec == y._spec && x._members == y._members;
}

// ------------------------------------------------------------ town checks

auto describe(const Violation& v, const TownSpec& spec) -> std::string
{
    std::ostringstream out;
    if (v.kind == Violation::Kind::set_size)
        out << "set #" << v.first + 1 << " has size " << v.observed << " ≡ " << v.residue << " (mod " << spec.k
            << "), expected " << spec.a;
    else
        out << "sets #" << v.first + 1 << " and #" << v.second + 1 << " meet in " << v.observed << " ≡ " << v.residue
            << " (mod " << spec.k << "), expected " << spec.b;
    return out.str();
}

auto check_town(const Family& family) -> CheckReport
{
    const auto& spec = family.spec();
    auto members = family.members();
    CheckReport report;
    for (std::size_t i = 0; i < members.size(); ++i) {
        int size = members[i].cardinality();
        if (residue(size, spec.k) != spec.a)
            report.violations.push_back({Violation::Kind::set_size, i, i, size, residue(size, spec.k)});
    }
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            int common = intersect_size(members[i], members[j]);
            if (residue(common, spec.k) != spec.b)
                report.violations.push_back({Violation::Kind::pair_intersection, i, j, common, residue(common, spec.k)});
        }
    report.pass = report.violations.empty();
    return report;
}

auto substituted_spec(const TownSpec& spec) -> TownSpec
{
    return TownSpec{spec.n, spec.k, residue(spec.n - spec.a, spec.k), residue(spec.n - 2 * spec.a + spec.b, spec.k)};
}

auto substitute(const Family& family) -> Family
{
    Family result(substituted_spec(family.spec()));
    for (const auto& m : family.members())
        result.add(m.complement());
    return result;
}

// ------------------------------------------------------------- file format

namespace {

auto trim(std::string_view s) -> std::string_view
{
    auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
    while (!s.empty() && is_space(s.front()))
        s.remove_prefix(1);
    while (!s.empty() && is_space(s.back()))
        s.remove_suffix(1);
    return s;
}

auto split_ints(std::string_view s, int line) -> std::vector<long long>
{
    std::vector<long long> values;
    while (true) {
        s = trim(s);
        if (s.empty())
            break;
        auto end = s.find_first_of(" \t");
        auto token = s.substr(0, end);
        long long value = 0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc{} || ptr != token.data() + token.size())
            throw ParseError(line, "not an integer: '" + std::string(token) + "'");
        values.push_back(value);
        if (end == std::string_view::npos)
            break;
        s.remove_prefix(end);
    }
    return values;
}

} // namespace

auto parse_family(std::string_view text) -> Family
{
    std::optional<Family> family;
    int line_no = 0;
    while (!text.empty()) {
        auto eol = text.find('\n');
        auto raw = text.substr(0, eol);
        text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
        ++line_no;

        auto line = trim(raw);
        if (line.empty() || line.front() == '#')
            continue;

        if (!family) {
            std::vector<long long> header;
            try {
                header = split_ints(line, 0);
            }
            catch (const ParseError& e) {
                throw ParseError(line_no, std::string("malformed header: ") + e.what());
            }
            if (header.size() != 4)
                throw ParseError(line_no, "malformed header: expected 'n k a b'");
            for (auto v : header)
                if (v < 0 || v > 1'000'000)
                    throw ParseError(line_no, "malformed header: value out of range");
            try {
                family.emplace(TownSpec::make(static_cast<int>(header[0]), static_cast<int>(header[1]),
                    static_cast<int>(header[2]), static_cast<int>(header[3])));
            }
            catch (const SpecError& e) {
                throw ParseError(line_no, std::string("malformed header: ") + e.what());
            }
            continue;
        }

        int n = family->spec().n;
        SetWord member(n);
        if (line != "-") {
            auto elems = split_ints(line, line_no);
            long long previous = 0;
            for (auto e : elems) {
                if (e < 1 || e > n)
                    throw ParseError(line_no, "element " + std::to_string(e) + " outside [1," + std::to_string(n) + "]");
                if (e == previous)
                    throw ParseError(line_no, "duplicate element " + std::to_string(e));
                if (e < previous)
                    throw ParseError(line_no, "elements must be strictly increasing");
                member.insert(static_cast<int>(e));
                previous = e;
            }
        }
        if (family->contains(member))
            throw ParseError(line_no, "duplicate set {" + to_string(member) + "}");
        family->add(std::move(member));
    }
    if (!family)
        throw ParseError(0, "malformed header: missing 'n k a b' line");
    return std::move(*family);
}

auto render_family(const Family& family) -> std::string
{
    const auto& spec = family.spec();
    std::string out = std::to_string(spec.n) + " " + std::to_string(spec.k) + " " + std::to_string(spec.a) + " " +
        std::to_string(spec.b) + "\n";
    for (const auto& m : family.members()) {
        out += to_string(m);
        out += '\n';
    }
    return out;
}

} // namespace towns
