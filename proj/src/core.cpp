#include <kneser/core.hpp>

#include <algorithm>
#include <array>
#include <bit>
#include <ostream>
#include <sstream>

namespace kneser {

namespace {

constexpr int table_size = 64;

constexpr auto make_binomials()
{
    std::array<std::array<std::uint64_t, table_size>, table_size> t{};
    for (int m = 0; m < table_size; ++m) {
        t[m][0] = 1;
        for (int r = 1; r <= m; ++r)
            t[m][r] = t[m - 1][r - 1] + (r <= m - 1 ? t[m - 1][r] : 0);
    }
    return t;
}

constexpr auto binomials = make_binomials();

auto low_bits(int n) -> std::uint64_t
{
    return n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
}

// Gosper's hack: next mask with the same popcount, in increasing numeric order.
auto next_same_popcount(std::uint64_t v) -> std::uint64_t
{
    std::uint64_t t = v | (v - 1);
    return (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(v) + 1));
}

} // namespace

auto binomial(int m, int r) -> std::uint64_t
{
    if (r < 0 || m < 0 || r > m)
        return 0;
    if (m >= table_size)
        throw InvalidParameters("binomial: argument too large: " + std::to_string(m));
    return binomials[m][r];
}

auto KSubset::from_elements(int n, std::span<const int> elements) -> KSubset
{
    if (n < 1 || n > max_ground_size)
        throw InvalidParameters("ground set size out of range: " + std::to_string(n));
    std::uint64_t mask = 0;
    for (int e : elements) {
        if (e < 1 || e > n)
            throw InvalidParameters("subset element " + std::to_string(e) + " outside [1, " + std::to_string(n) + "]");
        const auto b = std::uint64_t{1} << (e - 1);
        if (mask & b)
            throw InvalidParameters("repeated subset element " + std::to_string(e));
        mask |= b;
    }
    return KSubset{n, mask};
}

auto KSubset::from_elements(int n, std::initializer_list<int> elements) -> KSubset
{
    return from_elements(n, std::span<const int>{elements.begin(), elements.size()});
}

auto KSubset::from_mask(int n, std::uint64_t mask) -> KSubset
{
    if (n < 1 || n > max_ground_size)
        throw InvalidParameters("ground set size out of range: " + std::to_string(n));
    if ((mask & ~low_bits(n)) != 0)
        throw InvalidParameters("subset mask has elements outside [1, n]");
    return KSubset{n, mask};
}

auto KSubset::k() const -> int
{
    return std::popcount(_mask);
}

auto KSubset::elements() const -> std::vector<int>
{
    std::vector<int> result;
    result.reserve(static_cast<std::size_t>(k()));
    for (std::uint64_t m = _mask; m != 0; m &= m - 1)
        result.push_back(std::countr_zero(m) + 1);
    return result;
}

auto KSubset::smallest() const -> int
{
    return _mask == 0 ? 0 : std::countr_zero(_mask) + 1;
}

auto KSubset::largest() const -> int
{
    return _mask == 0 ? 0 : 64 - std::countl_zero(_mask);
}

auto KSubset::to_string() const -> std::string
{
    std::ostringstream out;
    out << *this;
    return out.str();
}

auto operator<<(std::ostream & out, const KSubset & s) -> std::ostream &
{
    out << '{';
    bool first = true;
    for (int e : s.elements()) {
        if (! first)
            out << ',';
        out << e;
        first = false;
    }
    return out << '}';
}

void validate_parameters(int n, int k)
{
    if (k < 1 || 2 * k > n || n > max_ground_size)
        throw InvalidParameters("invalid parameters: need 1 <= k and 2k <= n <= " + std::to_string(max_ground_size)
            + " (got n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")");
}

auto enum_ksubsets(int n, int k) -> std::vector<KSubset>
{
    validate_parameters(n, k);
    std::vector<KSubset> result;
    result.reserve(binomial(n, k));
    const std::uint64_t limit = std::uint64_t{1} << n;
    for (std::uint64_t m = low_bits(k); m < limit; m = next_same_popcount(m))
        result.push_back(KSubset::from_mask(n, m));
    return result;
}

auto enum_stable(int n, int k) -> std::vector<KSubset>
{
    auto all = enum_ksubsets(n, k);
    std::erase_if(all, [](const KSubset & s) { return ! is_stable(s); });
    return all;
}

auto colex_rank(const KSubset & subset) -> std::uint64_t
{
    std::uint64_t rank = 0;
    int i = 1;
    for (int e : subset.elements())
        rank += binomial(e - 1, i++);
    return rank;
}

auto colex_unrank(std::uint64_t rank, int n, int k) -> KSubset
{
    validate_parameters(n, k);
    if (rank >= binomial(n, k))
        throw InvalidParameters("colex rank " + std::to_string(rank) + " out of range for C(" + std::to_string(n) + ","
            + std::to_string(k) + ")");
    std::uint64_t mask = 0;
    int top = n;
    for (int i = k; i >= 1; --i) {
        // largest element e with C(e-1, i) <= rank
        int e = top;
        while (binomial(e - 1, i) > rank)
            --e;
        rank -= binomial(e - 1, i);
        mask |= std::uint64_t{1} << (e - 1);
        top = e - 1;
    }
    return KSubset::from_mask(n, mask);
}

auto is_stable_mask(std::uint64_t mask, int n) -> bool
{
    if (n < 2)
        return true;
    const std::uint64_t rotated = ((mask >> 1) | ((mask & 1U) << (n - 1))) & low_bits(n);
    return (mask & rotated) == 0;
}

auto is_stable(const KSubset & subset) -> bool
{
    return is_stable_mask(subset.mask(), subset.n());
}

auto disjoint(const KSubset & a, const KSubset & b) -> bool
{
    return (a.mask() & b.mask()) == 0;
}

auto firsts(const KSubset & subset, int count) -> KSubset
{
    if (count < 0 || count > subset.k())
        throw InvalidParameters("firsts: subset has fewer than " + std::to_string(count) + " elements");
    std::uint64_t result = 0;
    std::uint64_t m = subset.mask();
    for (int i = 0; i < count; ++i) {
        std::uint64_t low = m & -m;
        result |= low;
        m ^= low;
    }
    return KSubset::from_mask(subset.n(), result);
}

auto domain_name(Domain d) -> std::string
{
    return d == Domain::all_ksubsets ? "all" : "stable";
}

auto parse_domain(const std::string & s) -> Domain
{
    if (s == "all")
        return Domain::all_ksubsets;
    if (s == "stable")
        return Domain::stable_only;
    throw InvalidParameters("unknown domain: " + s);
}

auto enum_domain(int n, int k, Domain domain) -> std::vector<KSubset>
{
    return domain == Domain::all_ksubsets ? enum_ksubsets(n, k) : enum_stable(n, k);
}

VarNumbering::VarNumbering(int n, int k, int colors, Domain domain) :
    _n(n), _k(k), _colors(colors), _domain(domain), _sets(enum_domain(n, k, domain))
{
    if (colors < 1)
        throw InvalidParameters("colors must be at least 1");
    if (_sets.empty())
        throw InvalidParameters("empty domain for n=" + std::to_string(n) + ", k=" + std::to_string(k));
    _rank_by_colex.assign(binomial(n, k), -1);
    for (std::size_t r = 0; r < _sets.size(); ++r)
        _rank_by_colex[colex_rank(_sets[r])] = static_cast<int>(r);
}

auto VarNumbering::contains(const KSubset & subset) const -> bool
{
    if (subset.n() != _n || subset.k() != _k)
        return false;
    return _rank_by_colex[colex_rank(subset)] >= 0;
}

auto VarNumbering::rank_of(const KSubset & subset) const -> int
{
    if (! contains(subset))
        throw InvalidParameters("subset " + subset.to_string() + " is outside the " + domain_name(_domain) + " domain");
    return _rank_by_colex[colex_rank(subset)];
}

auto VarNumbering::var(const KSubset & subset, int color) const -> int
{
    if (color < 1 || color > _colors)
        throw InvalidParameters("color out of range: " + std::to_string(color));
    return var(rank_of(subset), color);
}

auto VarNumbering::decode(int v) const -> Decoded
{
    if (v < 1 || v > num_vars())
        throw InvalidParameters("variable id out of range: " + std::to_string(v));
    const int rank = (v - 1) / _colors;
    return {_sets[rank], rank, (v - 1) % _colors + 1};
}

void Coloring::validate() const
{
    validate_parameters(n, k);
    if (colors < 1)
        throw InvalidParameters("coloring needs at least one color");
    const auto expected = enum_domain(n, k, domain).size();
    if (color_of.size() != expected)
        throw InvalidParameters("coloring is not total: " + std::to_string(color_of.size()) + " of "
            + std::to_string(expected) + " sets assigned");
    for (int c : color_of)
        if (c < 1 || c > colors)
            throw InvalidParameters("color out of range: " + std::to_string(c));
}

} // namespace kneser
