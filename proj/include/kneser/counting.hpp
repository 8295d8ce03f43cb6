#pragma once

// Counting circuits: a gate-level popcount (balanced tree of ripple adders)
// and bit-level arithmetic on binary encodings, used to check the counting
// identities semantically.

#include <algorithm>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

namespace kneser {

enum class GateKind
{
    input,
    and_gate,
    or_gate,
    not_gate,
    xor_gate
};

struct Gate
{
    GateKind kind = GateKind::input;
    int a = -1; // operand gate indices (input: index of the input variable in a)
    int b = -1;
};

class CountCircuit
{
public:
    auto width() const -> int { return _n; }
    auto gates() const -> const std::vector<Gate> & { return _gates; }
    // Output gate references, least significant bit first.
    auto outputs() const -> const std::vector<int> & { return _outputs; }
    // Number of non-input gates.
    auto gate_count() const -> std::size_t { return _gates.size() - static_cast<std::size_t>(_n); }

    auto eval(const std::vector<bool> & input) const -> std::uint64_t;
    auto eval_bits(const std::vector<bool> & input) const -> std::vector<bool>;
    // 64 independent evaluations at once: bit j of every word is lane j.
    auto eval_lanes(std::span<const std::uint64_t> input) const -> std::vector<std::uint64_t>;

    void write_netlist(std::ostream & out) const;

    friend auto build_count(int n) -> CountCircuit;

private:
    auto add_gate(GateKind kind, int a, int b) -> int;

    int _n = 0;
    std::vector<Gate> _gates;
    std::vector<int> _outputs;
};

auto build_count(int n) -> CountCircuit;
auto eval_circuit(const CountCircuit & c, const std::vector<bool> & input) -> std::uint64_t;
auto circuit_size(int n) -> std::size_t;

// Bit-vector arithmetic: vectors are LSB first, of either bool or 64-lane
// words.  Every operation is expressed through and/or/xor/not only.
namespace bits {

// Complement in word type W; operands may arrive promoted to int.
template <typename W>
auto bnot(auto x) -> W
{
    if constexpr (std::is_same_v<W, bool>)
        return ! static_cast<bool>(x);
    else
        return ~static_cast<W>(x);
}

template <typename W>
auto word_of(bool b) -> W
{
    if constexpr (std::is_same_v<W, bool>)
        return b;
    else
        return b ? ~W{0} : W{0};
}

template <typename W>
auto at(const std::vector<W> & v, std::size_t i) -> W
{
    return i < v.size() ? v[i] : W{0};
}

template <typename W>
auto constant(std::uint64_t value, std::size_t width) -> std::vector<W>
{
    std::vector<W> r(width);
    for (std::size_t i = 0; i < width; ++i)
        r[i] = word_of<W>(i < 64 && ((value >> i) & 1U));
    return r;
}

template <typename W>
auto equal(const std::vector<W> & x, const std::vector<W> & y) -> W
{
    W diff{0};
    for (std::size_t i = 0; i < std::max(x.size(), y.size()); ++i)
        diff = diff | (at(x, i) ^ at(y, i));
    return bnot<W>(diff) & word_of<W>(true);
}

// x <= y, compared from the most significant bit down.
template <typename W>
auto less_equal(const std::vector<W> & x, const std::vector<W> & y) -> W
{
    W decided_less{0};
    W decided_greater{0};
    for (std::size_t i = std::max(x.size(), y.size()); i-- > 0;) {
        const W open = bnot<W>(decided_less | decided_greater);
        decided_less = decided_less | (open & bnot<W>(at(x, i)) & at(y, i));
        decided_greater = decided_greater | (open & at(x, i) & bnot<W>(at(y, i)));
    }
    return bnot<W>(decided_greater) & word_of<W>(true);
}

template <typename W>
auto add(const std::vector<W> & x, const std::vector<W> & y) -> std::vector<W>
{
    const std::size_t width = std::max(x.size(), y.size()) + 1;
    std::vector<W> r(width);
    W carry{0};
    for (std::size_t i = 0; i + 1 < width; ++i) {
        const W a = at(x, i), b = at(y, i);
        const W t = a ^ b;
        r[i] = t ^ carry;
        carry = (a & b) | (t & carry);
    }
    r[width - 1] = carry;
    return r;
}

// x - y modulo 2^width(x).
template <typename W>
auto subtract(const std::vector<W> & x, const std::vector<W> & y) -> std::vector<W>
{
    std::vector<W> r(x.size());
    W borrow{0};
    for (std::size_t i = 0; i < x.size(); ++i) {
        const W a = x[i], b = at(y, i);
        const W t = a ^ b;
        r[i] = t ^ borrow;
        borrow = (bnot<W>(a) & b) | (bnot<W>(t) & borrow);
    }
    return r;
}

template <typename W>
auto multiply(const std::vector<W> & x, const std::vector<W> & y) -> std::vector<W>
{
    std::vector<W> acc(x.size() + y.size(), W{0});
    for (std::size_t j = 0; j < y.size(); ++j) {
        std::vector<W> partial(j, W{0});
        for (std::size_t i = 0; i < x.size(); ++i)
            partial.push_back(x[i] & y[j]);
        acc = add(acc, partial);
        acc.resize(x.size() + y.size());
    }
    return acc;
}

template <typename W>
auto shift_right(const std::vector<W> & x, std::size_t amount) -> std::vector<W>
{
    if (amount >= x.size())
        return {};
    return std::vector<W>(x.begin() + static_cast<std::ptrdiff_t>(amount), x.end());
}

// C(x, 2) = x(x-1)/2; zero at x = 0 since the factor x vanishes.
template <typename W>
auto choose2(const std::vector<W> & x) -> std::vector<W>
{
    if (x.empty())
        return {};
    const auto predecessor = subtract(x, constant<W>(1, x.size()));
    return shift_right(multiply(x, predecessor), 1);
}

auto to_bits(std::uint64_t value, std::size_t width) -> std::vector<bool>;
auto from_bits(const std::vector<bool> & v) -> std::uint64_t;

} // namespace bits

struct IdentityItem
{
    int item = 0;
    std::string description;
    bool pass = true;
    bool exhaustive = true;
    std::uint64_t cases = 0;
    std::optional<std::string> counterexample;
};

struct IdentityReport
{
    int n = 0;
    std::uint64_t seed = 0;
    std::vector<IdentityItem> items;

    auto pass() const -> bool;
    void write(std::ostream & out) const;
};

struct IdentityOptions
{
    int n = 0;
    // assignments enumerated exhaustively when n is at most this (item 4: pairs, at most item4_exhaustive_limit)
    int exhaustive_limit = 16;
    int item4_exhaustive_limit = 12;
    std::uint64_t samples = 10000;
    std::uint64_t seed = 1;
};

// Semantic check of the four counting facts:
//  (1) all inputs true => Count = n
//  (2) Count over pairwise conjunctions = C(Count, 2)
//  (3) Count over the grid X_i & [i != j] = Count * (n - 1)
//  (4) X <= Y pointwise => Count(X) <= Count(Y)
auto check_count_identities(const IdentityOptions & options) -> IdentityReport;
auto check_count_identities(int n) -> IdentityReport;

} // namespace kneser
