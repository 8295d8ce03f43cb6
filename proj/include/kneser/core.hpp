#pragma once

// Ground-set combinatorics over [n] = {1..n}: k-subsets, colex ranking,
// cyclic stability and the variable-numbering contract shared by the
// formula generators, substitutions and oracles.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace kneser {

class InvalidParameters : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Raised when a result that the mathematics guarantees fails to appear.
// Always an implementation bug, never a user error.
class InternalInconsistency : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

inline constexpr int max_ground_size = 62;

// Exact binomial coefficient; zero when r < 0 or r > m.
auto binomial(int m, int r) -> std::uint64_t;

// A k-element subset of [n], stored as a bitmask (bit i-1 set iff i is an element).
class KSubset
{
public:
    KSubset() = default;

    // Elements in any order; duplicates and values outside [1, n] are rejected.
    static auto from_elements(int n, std::span<const int> elements) -> KSubset;
    static auto from_elements(int n, std::initializer_list<int> elements) -> KSubset;
    static auto from_mask(int n, std::uint64_t mask) -> KSubset;

    auto n() const -> int { return _n; }
    auto k() const -> int;
    auto mask() const -> std::uint64_t { return _mask; }
    auto contains(int element) const -> bool { return element >= 1 && element <= _n && ((_mask >> (element - 1)) & 1U); }
    auto elements() const -> std::vector<int>;
    auto smallest() const -> int;
    auto largest() const -> int;

    auto to_string() const -> std::string;

    friend auto operator==(const KSubset &, const KSubset &) -> bool = default;
    friend auto operator<=>(const KSubset & a, const KSubset & b)
    {
        // colex order is numeric order of the masks
        return a._mask <=> b._mask;
    }

private:
    KSubset(int n, std::uint64_t mask) : _n(n), _mask(mask) {}

    int _n = 0;
    std::uint64_t _mask = 0;
};

auto operator<<(std::ostream &, const KSubset &) -> std::ostream &;

// Throws InvalidParameters unless 1 <= k and 2k <= n <= max_ground_size.
void validate_parameters(int n, int k);

// All C(n,k) subsets in colex order; position equals colex_rank.
auto enum_ksubsets(int n, int k) -> std::vector<KSubset>;

// Colex-ordered subsequence of enum_ksubsets holding only the stable sets.
auto enum_stable(int n, int k) -> std::vector<KSubset>;

// 0-based colex rank among all k-subsets of [n].
auto colex_rank(const KSubset & subset) -> std::uint64_t;
auto colex_unrank(std::uint64_t rank, int n, int k) -> KSubset;

// No two cyclically adjacent elements of [n] (the pair {n,1} included).
auto is_stable(const KSubset & subset) -> bool;
auto is_stable_mask(std::uint64_t mask, int n) -> bool;

auto disjoint(const KSubset & a, const KSubset & b) -> bool;

// The `count` smallest elements of the subset.
auto firsts(const KSubset & subset, int count) -> KSubset;

enum class Domain
{
    all_ksubsets,
    stable_only
};

auto domain_name(Domain) -> std::string;
auto parse_domain(const std::string &) -> Domain;

auto enum_domain(int n, int k, Domain domain) -> std::vector<KSubset>;

// The numbering contract: id = rank(A) * colors + color, with rank the 0-based
// colex position of A inside the domain in force (dense for stable domains).
class VarNumbering
{
public:
    VarNumbering(int n, int k, int colors, Domain domain);

    auto n() const -> int { return _n; }
    auto k() const -> int { return _k; }
    auto colors() const -> int { return _colors; }
    auto domain() const -> Domain { return _domain; }
    auto sets() const -> const std::vector<KSubset> & { return _sets; }
    auto num_vars() const -> int { return static_cast<int>(_sets.size()) * _colors; }

    // Position of a subset within the domain; throws if the subset is outside it.
    auto rank_of(const KSubset & subset) const -> int;
    auto contains(const KSubset & subset) const -> bool;

    auto var(int rank, int color) const -> int { return rank * _colors + color; }
    auto var(const KSubset & subset, int color) const -> int;

    struct Decoded
    {
        KSubset subset;
        int rank;
        int color;
    };
    auto decode(int var) const -> Decoded;

private:
    int _n, _k, _colors;
    Domain _domain;
    std::vector<KSubset> _sets;
    std::vector<int> _rank_by_colex; // all-subsets colex rank -> domain rank, -1 if absent
};

// A total map from the domain (indexed by domain rank) to colors [1, colors].
struct Coloring
{
    int n = 0;
    int k = 0;
    int colors = 0;
    Domain domain = Domain::all_ksubsets;
    std::vector<int> color_of;

    // Throws InvalidParameters if the assignment is not total or out of range.
    void validate() const;
};

} // namespace kneser
