#include <kneser/counting.hpp>
#include <kneser/core.hpp>

#include <bit>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

namespace kneser {

auto CountCircuit::add_gate(GateKind kind, int a, int b) -> int
{
    _gates.push_back({kind, a, b});
    return static_cast<int>(_gates.size()) - 1;
}

namespace {

struct Number
{
    std::vector<int> bits; // gate refs, LSB first
    std::uint64_t max = 0;
};

} // namespace

auto build_count(int n) -> CountCircuit
{
    if (n < 1)
        throw InvalidParameters("build_count: n must be at least 1");
    CountCircuit c;
    c._n = n;
    std::vector<Number> level;
    for (int i = 0; i < n; ++i) {
        c._gates.push_back({GateKind::input, i, -1});
        level.push_back({{i}, 1});
    }

    auto add = [&c](const Number & x, const Number & y) {
        Number sum;
        sum.max = x.max + y.max;
        const auto width = static_cast<std::size_t>(std::bit_width(sum.max));
        int carry = -1;
        for (std::size_t i = 0; i < width; ++i) {
            std::vector<int> terms;
            if (i < x.bits.size())
                terms.push_back(x.bits[i]);
            if (i < y.bits.size())
                terms.push_back(y.bits[i]);
            if (carry >= 0)
                terms.push_back(carry);
            const bool need_carry = i + 1 < width;
            carry = -1;
            if (terms.size() == 1)
                sum.bits.push_back(terms[0]);
            else if (terms.size() == 2) {
                sum.bits.push_back(c.add_gate(GateKind::xor_gate, terms[0], terms[1]));
                if (need_carry)
                    carry = c.add_gate(GateKind::and_gate, terms[0], terms[1]);
            }
            else if (terms.size() == 3) {
                const int t = c.add_gate(GateKind::xor_gate, terms[0], terms[1]);
                sum.bits.push_back(c.add_gate(GateKind::xor_gate, t, terms[2]));
                if (need_carry) {
                    const int g = c.add_gate(GateKind::and_gate, terms[0], terms[1]);
                    const int p = c.add_gate(GateKind::and_gate, t, terms[2]);
                    carry = c.add_gate(GateKind::or_gate, g, p);
                }
            }
            else
                throw InternalInconsistency("build_count: adder column without operands");
        }
        return sum;
    };

    while (level.size() > 1) {
        std::vector<Number> next;
        for (std::size_t i = 0; i + 1 < level.size(); i += 2)
            next.push_back(add(level[i], level[i + 1]));
        if (level.size() % 2 == 1)
            next.push_back(level.back());
        level = std::move(next);
    }
    c._outputs = level.front().bits;
    return c;
}

auto CountCircuit::eval_lanes(std::span<const std::uint64_t> input) const -> std::vector<std::uint64_t>
{
    if (input.size() != static_cast<std::size_t>(_n))
        throw InvalidParameters("circuit input width mismatch: expected " + std::to_string(_n) + ", got "
            + std::to_string(input.size()));
    std::vector<std::uint64_t> value(_gates.size());
    for (std::size_t g = 0; g < _gates.size(); ++g) {
        const auto & gate = _gates[g];
        switch (gate.kind) {
        case GateKind::input: value[g] = input[gate.a]; break;
        case GateKind::and_gate: value[g] = value[gate.a] & value[gate.b]; break;
        case GateKind::or_gate: value[g] = value[gate.a] | value[gate.b]; break;
        case GateKind::xor_gate: value[g] = value[gate.a] ^ value[gate.b]; break;
        case GateKind::not_gate: value[g] = ~value[gate.a]; break;
        }
    }
    std::vector<std::uint64_t> out;
    out.reserve(_outputs.size());
    for (int o : _outputs)
        out.push_back(value[o]);
    return out;
}

auto CountCircuit::eval_bits(const std::vector<bool> & input) const -> std::vector<bool>
{
    std::vector<std::uint64_t> words(input.begin(), input.end());
    if (words.size() != static_cast<std::size_t>(_n))
        throw InvalidParameters("circuit input width mismatch: expected " + std::to_string(_n) + ", got "
            + std::to_string(words.size()));
    const auto lanes = eval_lanes(words);
    std::vector<bool> result;
    for (auto w : lanes)
        result.push_back(w & 1U);
    return result;
}

auto CountCircuit::eval(const std::vector<bool> & input) const -> std::uint64_t
{
    return bits::from_bits(eval_bits(input));
}

void CountCircuit::write_netlist(std::ostream & out) const
{
    out << "# count circuit inputs=" << _n << " gates=" << gate_count() << " outputs=" << _outputs.size() << '\n';
    auto name = [this](int g) {
        return _gates[g].kind == GateKind::input ? "x" + std::to_string(_gates[g].a + 1) : "g" + std::to_string(g);
    };
    for (std::size_t g = 0; g < _gates.size(); ++g) {
        const auto & gate = _gates[g];
        const int id = static_cast<int>(g);
        switch (gate.kind) {
        case GateKind::input: out << "input " << name(id) << '\n'; break;
        case GateKind::and_gate: out << name(id) << " = and " << name(gate.a) << ' ' << name(gate.b) << '\n'; break;
        case GateKind::or_gate: out << name(id) << " = or " << name(gate.a) << ' ' << name(gate.b) << '\n'; break;
        case GateKind::xor_gate: out << name(id) << " = xor " << name(gate.a) << ' ' << name(gate.b) << '\n'; break;
        case GateKind::not_gate: out << name(id) << " = not " << name(gate.a) << '\n'; break;
        }
    }
    for (std::size_t i = 0; i < _outputs.size(); ++i)
        out << "output bit" << i << " = " << name(_outputs[i]) << '\n';
}

auto eval_circuit(const CountCircuit & c, const std::vector<bool> & input) -> std::uint64_t
{
    return c.eval(input);
}

auto circuit_size(int n) -> std::size_t
{
    return build_count(n).gate_count();
}

namespace bits {

auto to_bits(std::uint64_t value, std::size_t width) -> std::vector<bool>
{
    return constant<bool>(value, width);
}

auto from_bits(const std::vector<bool> & v) -> std::uint64_t
{
    std::uint64_t value = 0;
    for (std::size_t i = 0; i < v.size() && i < 64; ++i)
        if (v[i])
            value |= std::uint64_t{1} << i;
    return value;
}

} // namespace bits

auto IdentityReport::pass() const -> bool
{
    return std::all_of(items.begin(), items.end(), [](const IdentityItem & i) { return i.pass; });
}

void IdentityReport::write(std::ostream & out) const
{
    for (const auto & item : items) {
        out << "kind=count-identity item=" << item.item << " n=" << n << " mode="
            << (item.exhaustive ? "exhaustive" : "sampled") << " seed=" << seed << " cases=" << item.cases
            << " verdict=" << (item.pass ? "pass" : "fail");
        if (item.counterexample)
            out << " witness=" << *item.counterexample;
        out << '\n';
    }
}

namespace {

using Word = std::uint64_t;
using Lanes = std::vector<Word>;

// Feeds batches of up to 64 assignments; `valid` masks the live lanes.
using Batch = std::function<void(const Lanes & x, const Lanes & y, Word valid)>;

auto lane_string(const Lanes & words, int lane) -> std::string
{
    std::string s;
    for (auto w : words)
        s += ((w >> lane) & 1U) ? '1' : '0';
    return s;
}

class IdentityChecker
{
public:
    explicit IdentityChecker(int n) :
        _n(n),
        _count(build_count(n)),
        _pairs(n >= 2 ? std::optional{build_count(n * (n - 1) / 2)} : std::nullopt),
        _grid(build_count(n * n))
    {
    }

    // Returns lanes where the item holds.
    auto item1(const Lanes & x) const -> Word
    {
        Word all = ~Word{0};
        for (auto w : x)
            all &= w;
        return ~all | bits::equal(_count.eval_lanes(x), bits::constant<Word>(_n, 64 - std::countl_zero(Word(_n))));
    }

    auto item2(const Lanes & x) const -> Word
    {
        Lanes conj;
        for (int i = 0; i < _n; ++i)
            for (int j = i + 1; j < _n; ++j)
                conj.push_back(x[i] & x[j]);
        const Lanes lhs = _pairs ? _pairs->eval_lanes(conj) : Lanes{};
        return bits::equal(lhs, bits::choose2(_count.eval_lanes(x)));
    }

    auto item3(const Lanes & x) const -> Word
    {
        Lanes grid;
        for (int i = 0; i < _n; ++i)
            for (int j = 0; j < _n; ++j)
                grid.push_back(i != j ? x[i] : Word{0});
        const auto factor = bits::constant<Word>(static_cast<std::uint64_t>(_n - 1), 64 - std::countl_zero(Word(_n)));
        return bits::equal(_grid.eval_lanes(grid), bits::multiply(_count.eval_lanes(x), factor));
    }

    // Lanes violating X <= Y pointwise are vacuously fine.
    auto item4(const Lanes & x, const Lanes & y) const -> Word
    {
        Word pointwise = ~Word{0};
        for (int i = 0; i < _n; ++i)
            pointwise &= ~x[i] | y[i];
        return ~pointwise | bits::less_equal(_count.eval_lanes(x), _count.eval_lanes(y));
    }

private:
    int _n;
    CountCircuit _count;
    std::optional<CountCircuit> _pairs;
    CountCircuit _grid;
};

void record(IdentityItem & item, Word holds, Word valid, const Lanes & x, const Lanes * y)
{
    const Word failing = ~holds & valid;
    item.cases += static_cast<std::uint64_t>(std::popcount(valid));
    if (failing == 0 || item.counterexample)
        return;
    item.pass = false;
    const int lane = std::countr_zero(failing);
    std::string witness = "X=" + lane_string(x, lane);
    if (y)
        witness += ",Y=" + lane_string(*y, lane);
    item.counterexample = witness;
}

} // namespace

auto check_count_identities(const IdentityOptions & options) -> IdentityReport
{
    const int n = options.n;
    if (n < 1)
        throw InvalidParameters("check_count_identities: n must be at least 1");
    IdentityReport report;
    report.n = n;
    report.seed = options.seed;
    report.items = {
        {1, "all true implies Count = n", true, true, 0, {}},
        {2, "Count of pairwise conjunctions = C(Count, 2)", true, true, 0, {}},
        {3, "Count of grid X_i & [i != j] = Count * (n-1)", true, true, 0, {}},
        {4, "X <= Y pointwise implies Count(X) <= Count(Y)", true, true, 0, {}},
    };
    const IdentityChecker checker{n};
    std::mt19937_64 rng{options.seed};
    Lanes x(n), y(n);

    auto run_single = [&](Word valid) {
        record(report.items[0], checker.item1(x), valid, x, nullptr);
        record(report.items[1], checker.item2(x), valid, x, nullptr);
        record(report.items[2], checker.item3(x), valid, x, nullptr);
    };

    if (n <= options.exhaustive_limit) {
        const std::uint64_t total = std::uint64_t{1} << n;
        for (std::uint64_t base = 0; base < total; base += 64) {
            const std::uint64_t lanes = std::min<std::uint64_t>(64, total - base);
            const Word valid = lanes == 64 ? ~Word{0} : ((Word{1} << lanes) - 1);
            for (int i = 0; i < n; ++i) {
                Word w = 0;
                for (std::uint64_t j = 0; j < lanes; ++j)
                    w |= (((base + j) >> i) & 1U) << j;
                x[i] = w;
            }
            run_single(valid);
        }
    }
    else {
        for (int item = 0; item < 3; ++item)
            report.items[item].exhaustive = false;
        for (std::uint64_t done = 0; done < options.samples; done += 64) {
            const std::uint64_t lanes = std::min<std::uint64_t>(64, options.samples - done);
            const Word valid = lanes == 64 ? ~Word{0} : ((Word{1} << lanes) - 1);
            for (auto & w : x)
                w = rng();
            // make sure the all-true antecedent of item 1 is exercised
            if (done == 0)
                for (auto & w : x)
                    w |= 1U;
            run_single(valid);
        }
    }

    if (n <= options.item4_exhaustive_limit) {
        // every pair X subset of Y: Y over all masks, X over the submasks of Y
        std::vector<std::pair<std::uint64_t, std::uint64_t>> pending;
        pending.reserve(64);
        auto flush = [&] {
            if (pending.empty())
                return;
            for (int i = 0; i < n; ++i) {
                Word wx = 0, wy = 0;
                for (std::size_t j = 0; j < pending.size(); ++j) {
                    wx |= ((pending[j].first >> i) & 1U) << j;
                    wy |= ((pending[j].second >> i) & 1U) << j;
                }
                x[i] = wx;
                y[i] = wy;
            }
            const Word valid = pending.size() == 64 ? ~Word{0} : ((Word{1} << pending.size()) - 1);
            record(report.items[3], checker.item4(x, y), valid, x, &y);
            pending.clear();
        };
        const std::uint64_t total = std::uint64_t{1} << n;
        for (std::uint64_t ym = 0; ym < total; ++ym)
            for (std::uint64_t xm = ym;; xm = (xm - 1) & ym) {
                pending.emplace_back(xm, ym);
                if (pending.size() == 64)
                    flush();
                if (xm == 0)
                    break;
            }
        flush();
    }
    else {
        report.items[3].exhaustive = false;
        for (std::uint64_t done = 0; done < options.samples; done += 64) {
            const std::uint64_t lanes = std::min<std::uint64_t>(64, options.samples - done);
            const Word valid = lanes == 64 ? ~Word{0} : ((Word{1} << lanes) - 1);
            for (int i = 0; i < n; ++i) {
                x[i] = rng() & rng();
                y[i] = x[i] | rng();
            }
            record(report.items[3], checker.item4(x, y), valid, x, &y);
        }
    }
    return report;
}

auto check_count_identities(int n) -> IdentityReport
{
    IdentityOptions options;
    options.n = n;
    return check_count_identities(options);
}

} // namespace kneser
