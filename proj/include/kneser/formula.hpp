#pragma once

#include <kneser/core.hpp>

#include <compare>
#include <cstdlib>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace kneser {

// A DIMACS literal: +v or -v for a variable id v >= 1.
class Lit
{
public:
    constexpr Lit() = default;
    constexpr explicit Lit(int dimacs) : _code(dimacs) {}

    static constexpr auto pos(int var) -> Lit { return Lit{var}; }
    static constexpr auto neg(int var) -> Lit { return Lit{-var}; }

    constexpr auto var() const -> int { return _code < 0 ? -_code : _code; }
    constexpr auto positive() const -> bool { return _code > 0; }
    constexpr auto dimacs() const -> int { return _code; }
    constexpr auto operator~() const -> Lit { return Lit{-_code}; }

    friend constexpr auto operator==(Lit, Lit) -> bool = default;
    // Ordered by variable, negative before positive.
    friend constexpr auto operator<=>(Lit a, Lit b) -> std::strong_ordering
    {
        if (auto c = a.var() <=> b.var(); c != 0)
            return c;
        return a._code <=> b._code;
    }

private:
    int _code = 0;
};

// Duplicate-free, sorted set of literals.
class Clause
{
public:
    Clause() = default;
    explicit Clause(std::vector<Lit> literals);
    Clause(std::initializer_list<int> dimacs);

    auto literals() const -> std::span<const Lit> { return _lits; }
    auto size() const -> std::size_t { return _lits.size(); }
    auto empty() const -> bool { return _lits.empty(); }
    auto begin() const { return _lits.begin(); }
    auto end() const { return _lits.end(); }

    auto contains(Lit l) const -> bool;
    auto is_tautology() const -> bool;
    // True iff every literal of *this occurs in other.
    auto subsumes(const Clause & other) const -> bool;

    auto to_string() const -> std::string;

    friend auto operator==(const Clause &, const Clause &) -> bool = default;
    friend auto operator<=>(const Clause &, const Clause &) = default;

private:
    std::vector<Lit> _lits;
};

struct ClauseHash
{
    auto operator()(const Clause & c) const noexcept -> std::size_t;
};

// Resolvent of a and b on pivot variable; nullopt unless the pivot occurs
// positively in one clause and negatively in the other.
auto resolve(const Clause & a, const Clause & b, int pivot) -> std::optional<Clause>;

enum class Variant
{
    kneser,
    kneser_onto,
    schrijver,
    schrijver_onto,
    php
};

auto variant_name(Variant) -> std::string;
auto parse_variant(const std::string &) -> Variant;
auto variant_domain(Variant) -> Domain;
auto variant_has_onto(Variant) -> bool;

struct InstanceDescriptor
{
    Variant variant = Variant::kneser;
    int n = 0;
    int k = 0;
    int colors = 0;
    Domain domain = Domain::all_ksubsets;

    auto numbering() const -> VarNumbering { return VarNumbering{n, k, colors, domain}; }
    auto to_string() const -> std::string;

    friend auto operator==(const InstanceDescriptor &, const InstanceDescriptor &) -> bool = default;
};

// Chromatic-threshold color count n-2k+1 (the unsatisfiable setting).
constexpr auto default_colors(int n, int k) -> int { return n - 2 * k + 1; }

// Validates the combination and fills the domain and color count.
auto make_descriptor(Variant variant, int n, int k, std::optional<int> colors = std::nullopt) -> InstanceDescriptor;

struct Cnf
{
    std::optional<InstanceDescriptor> info;
    int num_vars = 0;
    std::vector<Clause> clauses;

    friend auto operator==(const Cnf &, const Cnf &) -> bool = default;
};

// One all-positive clause of width `colors` per domain set, in colex order.
auto gen_ant(int n, int k, int colors, Domain domain) -> std::vector<Clause>;

// For every unordered disjoint pair {A,B} of domain sets (colex(A) < colex(B))
// and every color l, the clause (-X_{A,l} | -X_{B,l}).
auto gen_not_cons(int n, int k, int colors, Domain domain) -> std::vector<Clause>;

// At-most-one color per domain set: (-X_{A,l} | -X_{A,s}) for l < s.
auto gen_onto(int n, int k, int colors, Domain domain) -> std::vector<Clause>;

// Ant, then Onto for onto variants, then the negated consequent.
auto gen_cnf(Variant variant, int n, int k, std::optional<int> colors = std::nullopt) -> Cnf;
auto gen_cnf(const InstanceDescriptor &) -> Cnf;

// Closed-form counts used to check generated instances.
auto disjoint_pair_count(int n, int k, Domain domain) -> std::uint64_t;
auto expected_clause_count(const InstanceDescriptor &) -> std::uint64_t;

class ParseError : public std::runtime_error
{
public:
    ParseError(std::size_t line, const std::string & message);
    auto line() const -> std::size_t { return _line; }

private:
    std::size_t _line;
};

void write_dimacs(const Cnf & cnf, std::ostream & sink);
auto to_dimacs(const Cnf & cnf) -> std::string;
auto parse_dimacs(std::istream & source) -> Cnf;
auto parse_dimacs(const std::string & text) -> Cnf;
auto read_dimacs_file(const std::string & path) -> Cnf;
void write_dimacs_file(const Cnf & cnf, const std::string & path);

} // namespace kneser
