#include <kneser/resolution.hpp>

#include <istream>
#include <iterator>
#include <limits>

namespace kneser {

NotRupDerivable::NotRupDerivable(std::size_t lemma_index, std::size_t line, const Clause & clause) :
    std::runtime_error("lemma " + std::to_string(lemma_index) + " (line " + std::to_string(line) + ") "
        + clause.to_string() + " is not RUP-derivable"),
    _lemma(lemma_index), _line(line)
{
}

namespace {

constexpr std::size_t no_reason = std::numeric_limits<std::size_t>::max();

struct Lemma
{
    Clause clause;
    std::size_t line;
};

// Text DRAT/DRUP, or binary DRAT (detected by a NUL byte).
auto read_lemmas(std::istream & in) -> std::vector<Lemma>
{
    const std::string data{std::istreambuf_iterator<char>{in}, std::istreambuf_iterator<char>{}};
    std::vector<Lemma> lemmas;

    if (data.find('\0') != std::string::npos) {
        std::size_t pos = 0;
        std::size_t index = 0;
        while (pos < data.size()) {
            const char tag = data[pos++];
            if (tag != 'a' && tag != 'd')
                throw ParseError(index + 1, "bad binary DRAT tag");
            std::vector<Lit> lits;
            while (true) {
                unsigned long long value = 0;
                int shift = 0;
                unsigned char byte = 0;
                do {
                    if (pos >= data.size())
                        throw ParseError(index + 1, "truncated binary DRAT");
                    byte = static_cast<unsigned char>(data[pos++]);
                    value |= static_cast<unsigned long long>(byte & 0x7f) << shift;
                    shift += 7;
                } while (byte & 0x80);
                if (value == 0)
                    break;
                const int var = static_cast<int>(value >> 1);
                lits.emplace_back((value & 1) ? -var : var);
            }
            ++index;
            if (tag == 'a')
                lemmas.push_back({Clause{std::move(lits)}, index});
        }
        return lemmas;
    }

    std::size_t line_no = 0;
    std::size_t start = 0;
    std::vector<Lit> pending;
    bool deleting = false;
    std::size_t pending_line = 0;
    while (start < data.size()) {
        auto end = data.find('\n', start);
        if (end == std::string::npos)
            end = data.size();
        std::string_view line{data.data() + start, end - start};
        start = end + 1;
        ++line_no;

        std::size_t i = 0;
        auto skip_space = [&] { while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i; };
        skip_space();
        if (i == line.size() || line[i] == 'c')
            continue;
        while (i < line.size()) {
            skip_space();
            if (i == line.size())
                break;
            if (line[i] == 'd') {
                if (! pending.empty())
                    throw ParseError(line_no, "deletion marker inside a clause");
                deleting = true;
                ++i;
                continue;
            }
            std::size_t j = i;
            if (line[j] == '-')
                ++j;
            long long value = 0;
            const std::size_t digits = j;
            while (j < line.size() && line[j] >= '0' && line[j] <= '9')
                value = value * 10 + (line[j++] - '0');
            if (j == digits || (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r'))
                throw ParseError(line_no, "bad token in proof line");
            if (line[i] == '-')
                value = -value;
            i = j;
            if (pending.empty() && ! deleting)
                pending_line = line_no;
            if (value == 0) {
                if (! deleting)
                    lemmas.push_back({Clause{std::move(pending)}, pending_line ? pending_line : line_no});
                pending.clear();
                deleting = false;
                pending_line = 0;
            }
            else
                pending.emplace_back(static_cast<int>(value));
        }
    }
    if (! pending.empty())
        throw ParseError(line_no, "unterminated proof clause");
    return lemmas;
}

class RupReconstructor
{
public:
    RupReconstructor(const Cnf & cnf, ResolutionProof & proof) : _proof(proof)
    {
        grow(cnf.num_vars);
        for (const auto & c : cnf.clauses) {
            _proof.steps.push_back(ProofStep::input(c));
            if (add(c, _proof.steps.size() - 1))
                return;
        }
    }

    auto refuted() const -> bool { return _refuted; }

    // Derives a clause contained in `lemma` and adds it; false if not RUP.
    auto derive(const Clause & lemma) -> bool
    {
        if (_refuted)
            return true;
        if (lemma.is_tautology())
            return true;
        for (Lit l : lemma)
            grow(l.var());

        for (Lit l : lemma)
            if (value(~l) == 0)
                assign(~l, no_reason);
        const auto conflict = propagate();
        if (conflict == no_reason) {
            backtrack();
            return false;
        }
        const auto [derived, step] = analyze(conflict);
        backtrack();
        add(derived, step);
        return true;
    }

private:
    struct Entry
    {
        std::vector<Lit> watched; // [0], [1] are the watched literals
        std::size_t step;
    };

    static auto index(Lit l) -> std::size_t { return 2 * static_cast<std::size_t>(l.var()) + (l.positive() ? 0 : 1); }

    void grow(int vars)
    {
        if (vars < static_cast<int>(_value.size()))
            return;
        _value.resize(vars + 1, 0);
        _reason.resize(vars + 1, no_reason);
        _watches.resize(2 * (vars + 1));
    }

    auto value(Lit l) const -> int
    {
        const int v = _value[l.var()];
        return l.positive() ? v : -v;
    }

    void assign(Lit l, std::size_t reason)
    {
        _value[l.var()] = l.positive() ? 1 : -1;
        _reason[l.var()] = reason;
        _trail.push_back(l);
    }

    void backtrack()
    {
        for (Lit l : _trail) {
            _value[l.var()] = 0;
            _reason[l.var()] = no_reason;
        }
        _trail.clear();
    }

    // Returns true when the clause is empty (refutation complete).
    auto add(const Clause & c, std::size_t step) -> bool
    {
        for (Lit l : c)
            grow(l.var());
        if (c.empty()) {
            _refuted = true;
            _conclusion = step;
            return true;
        }
        const auto id = _entries.size();
        _entries.push_back({std::vector<Lit>(c.begin(), c.end()), step});
        if (c.size() == 1)
            _units.push_back(id);
        else {
            _watches[index(_entries[id].watched[0])].push_back(id);
            _watches[index(_entries[id].watched[1])].push_back(id);
        }
        return false;
    }

    auto propagate() -> std::size_t
    {
        for (auto u : _units) {
            const Lit l = _entries[u].watched[0];
            const int v = value(l);
            if (v < 0)
                return u;
            if (v == 0)
                assign(l, u);
        }
        for (std::size_t head = 0; head < _trail.size(); ++head) {
            const Lit falsified = ~_trail[head];
            auto & list = _watches[index(falsified)];
            for (std::size_t w = 0; w < list.size();) {
                const auto id = list[w];
                auto & lits = _entries[id].watched;
                if (lits[0] == falsified)
                    std::swap(lits[0], lits[1]);
                if (value(lits[0]) > 0) {
                    ++w;
                    continue;
                }
                bool moved = false;
                for (std::size_t j = 2; j < lits.size(); ++j)
                    if (value(lits[j]) >= 0) {
                        std::swap(lits[1], lits[j]);
                        _watches[index(lits[1])].push_back(id);
                        list[w] = list.back();
                        list.pop_back();
                        moved = true;
                        break;
                    }
                if (moved)
                    continue;
                if (value(lits[0]) < 0)
                    return id;
                assign(lits[0], id);
                ++w;
            }
        }
        return no_reason;
    }

    // Resolves the conflict clause against reasons in reverse trail order.
    auto analyze(std::size_t conflict) -> std::pair<Clause, std::size_t>
    {
        std::size_t step = _entries[conflict].step;
        Clause current = _proof.steps[step].clause;
        for (std::size_t t = _trail.size(); t-- > 0;) {
            const Lit lit = _trail[t];
            const auto reason = _reason[lit.var()];
            if (reason == no_reason || ! current.contains(~lit))
                continue;
            const auto reason_step = _entries[reason].step;
            auto resolvent = resolve(current, _proof.steps[reason_step].clause, lit.var());
            if (! resolvent)
                throw InternalInconsistency("rup reconstruction: reason clause does not clash with conflict on pivot");
            _proof.steps.push_back(ProofStep::resolution(step, reason_step, lit.var(), *resolvent));
            step = _proof.steps.size() - 1;
            current = std::move(*resolvent);
        }
        return {std::move(current), step};
    }

    ResolutionProof & _proof;
    std::vector<Entry> _entries;
    std::vector<std::size_t> _units;
    std::vector<std::vector<std::size_t>> _watches;
    std::vector<int> _value;
    std::vector<std::size_t> _reason;
    std::vector<Lit> _trail;
    bool _refuted = false;
    std::size_t _conclusion = 0;

public:
    auto conclusion() const -> std::size_t { return _conclusion; }
};

} // namespace

auto import_rup(const Cnf & cnf, std::istream & in) -> ResolutionProof
{
    const auto lemmas = read_lemmas(in);
    ResolutionProof proof;
    RupReconstructor rup{cnf, proof};
    for (std::size_t i = 0; i < lemmas.size() && ! rup.refuted(); ++i)
        if (! rup.derive(lemmas[i].clause))
            throw NotRupDerivable(i + 1, lemmas[i].line, lemmas[i].clause);
    if (! rup.refuted() && ! rup.derive(Clause{}))
        throw std::runtime_error("proof does not derive the empty clause");

    // The conclusion may be an earlier step (e.g. an empty input clause); make it last.
    proof.steps.resize(rup.conclusion() + 1);
    return trim(proof);
}

} // namespace kneser
