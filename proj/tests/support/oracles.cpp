#include "oracles.hpp"

#include <map>
#include <random>
#include <stdexcept>

namespace kneser::testing {

auto factorial_binomial(int m, int r) -> std::uint64_t
{
    if (r < 0 || r > m)
        return 0;
    if (m > 30)
        throw std::invalid_argument("factorial_binomial: m too large");
    auto fact = [](int x) {
        unsigned __int128 f = 1;
        for (int i = 2; i <= x; ++i)
            f *= static_cast<unsigned>(i);
        return f;
    };
    return static_cast<std::uint64_t>(fact(m) / (fact(r) * fact(m - r)));
}

auto naive_popcount(std::uint64_t x) -> int
{
    int c = 0;
    for (int i = 0; i < 64; ++i)
        c += static_cast<int>((x >> i) & 1U);
    return c;
}

auto brute_force_sat(const Cnf & cnf) -> std::optional<std::uint32_t>
{
    if (cnf.num_vars > 24)
        throw std::invalid_argument("brute_force_sat: more than 24 variables");
    struct Masks
    {
        std::uint32_t pos = 0, neg = 0;
    };
    std::vector<Masks> clauses;
    for (const auto & c : cnf.clauses) {
        Masks m;
        for (auto l : c)
            (l.positive() ? m.pos : m.neg) |= 1U << (l.var() - 1);
        clauses.push_back(m);
    }
    const std::uint32_t limit = 1U << cnf.num_vars;
    for (std::uint32_t a = 0; a < limit; ++a) {
        bool ok = true;
        for (const auto & m : clauses)
            if (! ((a & m.pos) | (~a & m.neg))) {
                ok = false;
                break;
            }
        if (ok)
            return a;
    }
    return std::nullopt;
}

auto satisfies(const Cnf & cnf, const std::vector<bool> & assignment) -> bool
{
    for (const auto & c : cnf.clauses) {
        bool sat = false;
        for (auto l : c)
            if (assignment.at(static_cast<std::size_t>(l.var())) == l.positive())
                sat = true;
        if (! sat)
            return false;
    }
    return true;
}

namespace {

class Dpll
{
public:
    explicit Dpll(const Cnf & cnf) : _cnf(cnf), _value(static_cast<std::size_t>(cnf.num_vars) + 1, 0) {}

    auto run() -> ResolutionProof
    {
        const auto root = refute();
        if (root + 1 != _proof.steps.size())
            _proof.steps.push_back(_proof.steps[root]);
        return std::move(_proof);
    }

private:
    // 1 true, -1 false, 0 unassigned
    auto lit_value(Lit l) const -> int
    {
        const int v = _value[static_cast<std::size_t>(l.var())];
        return l.positive() ? v : -v;
    }

    auto input_step(const Clause & c) -> std::size_t
    {
        auto [it, fresh] = _inputs.try_emplace(c, _proof.steps.size());
        if (fresh)
            _proof.steps.push_back(ProofStep::input(c));
        return it->second;
    }

    // Index of a step whose clause is falsified by the current assignment.
    auto refute() -> std::size_t
    {
        const Clause * branch_on = nullptr;
        std::size_t best = SIZE_MAX;
        for (const auto & c : _cnf.clauses) {
            std::size_t open = 0;
            bool sat = false;
            for (auto l : c) {
                const int v = lit_value(l);
                sat = sat || v > 0;
                open += v == 0;
            }
            if (sat)
                continue;
            if (open == 0)
                return input_step(c);
            if (open < best) {
                best = open;
                branch_on = &c;
            }
        }
        if (! branch_on)
            throw std::runtime_error("dpll_refutation: formula is satisfiable");
        int var = 0;
        for (auto l : *branch_on)
            if (lit_value(l) == 0) {
                var = l.var();
                break;
            }
        auto & slot = _value[static_cast<std::size_t>(var)];
        slot = 1;
        const auto t = refute();
        if (! _proof.steps[t].clause.contains(Lit::neg(var))) {
            slot = 0;
            return t;
        }
        slot = -1;
        const auto f = refute();
        slot = 0;
        if (! _proof.steps[f].clause.contains(Lit::pos(var)))
            return f;
        auto r = resolve(_proof.steps[t].clause, _proof.steps[f].clause, var);
        _proof.steps.push_back(ProofStep::resolution(t, f, var, std::move(*r)));
        return _proof.steps.size() - 1;
    }

    const Cnf & _cnf;
    std::vector<int> _value;
    std::map<Clause, std::size_t> _inputs;
    ResolutionProof _proof;
};

} // namespace

auto dpll_refutation(const Cnf & cnf) -> ResolutionProof
{
    return trim(Dpll{cnf}.run());
}

TempDir::TempDir(const std::string & tag)
{
    std::random_device rd;
    _path = std::filesystem::temp_directory_path() / ("kneser-test-" + tag + "-" + std::to_string(rd()));
    std::filesystem::create_directories(_path);
}

TempDir::~TempDir()
{
    std::error_code ec;
    std::filesystem::remove_all(_path, ec);
}

} // namespace kneser::testing
