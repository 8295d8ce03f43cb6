#include <kneser/resolution.hpp>

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace kneser {

auto check_mode_name(CheckMode m) -> std::string
{
    return m == CheckMode::strict ? "strict" : "tolerant";
}

auto Verdict::to_string() const -> std::string
{
    std::ostringstream out;
    if (pass)
        out << "PASS (" << inputs << " inputs, " << resolutions << " resolutions, " << weakenings << " weakenings)";
    else {
        out << "FAIL";
        if (failed_step)
            out << " at step " << (*failed_step + 1);
        out << ": " << reason;
    }
    return out.str();
}

namespace {

class FormulaIndex
{
public:
    explicit FormulaIndex(const Cnf & cnf) : _exact(cnf.clauses.begin(), cnf.clauses.end())
    {
        for (const auto & c : cnf.clauses) {
            if (c.empty())
                _has_empty = true;
            else
                _by_first[c.literals().front().dimacs()].push_back(&c);
        }
    }

    auto contains(const Clause & c) const -> bool { return _exact.contains(c); }

    auto subsumed_by_some(const Clause & c) const -> bool
    {
        if (_has_empty || contains(c))
            return true;
        // a subsuming clause's smallest literal must occur in c
        for (Lit l : c) {
            auto it = _by_first.find(l.dimacs());
            if (it == _by_first.end())
                continue;
            for (const Clause * f : it->second)
                if (f->subsumes(c))
                    return true;
        }
        return false;
    }

private:
    std::unordered_set<Clause, ClauseHash> _exact;
    std::unordered_map<int, std::vector<const Clause *>> _by_first;
    bool _has_empty = false;
};

auto fail_at(Verdict v, std::size_t step, std::string reason) -> Verdict
{
    v.pass = false;
    v.failed_step = step;
    v.reason = std::move(reason);
    return v;
}

} // namespace

auto check_refutation(const Cnf & cnf, const ResolutionProof & proof, CheckMode mode) -> Verdict
{
    Verdict v;
    if (proof.steps.empty()) {
        v.reason = "empty proof";
        return v;
    }
    const FormulaIndex formula{cnf};

    for (std::size_t i = 0; i < proof.steps.size(); ++i) {
        const auto & step = proof.steps[i];
        for (Lit l : step.clause)
            if (l.var() > cnf.num_vars)
                return fail_at(v, i, "literal " + std::to_string(l.dimacs()) + " outside the formula's variables");

        if (step.kind == ProofStep::Kind::input) {
            ++v.inputs;
            if (formula.contains(step.clause))
                continue;
            if (mode == CheckMode::tolerant && formula.subsumed_by_some(step.clause)) {
                ++v.weakenings;
                continue;
            }
            return fail_at(v, i, "input clause " + step.clause.to_string() + " is not in the formula");
        }

        if (step.left >= i || step.right >= i)
            return fail_at(v, i, "resolution step references a later or same step");
        const auto & a = proof.steps[step.left].clause;
        const auto & b = proof.steps[step.right].clause;
        const auto resolvent = resolve(a, b, step.pivot);
        ++v.resolutions;

        if (resolvent && *resolvent == step.clause)
            continue;
        if (mode == CheckMode::tolerant) {
            if ((resolvent && resolvent->subsumes(step.clause)) || a.subsumes(step.clause) || b.subsumes(step.clause)) {
                ++v.weakenings;
                continue;
            }
        }
        if (! resolvent)
            return fail_at(v, i, "pivot " + std::to_string(step.pivot) + " does not occur with opposite signs in the parents");
        return fail_at(v, i, "recorded clause " + step.clause.to_string() + " differs from resolvent "
            + resolvent->to_string());
    }

    if (! proof.steps[proof.conclusion()].clause.empty())
        return fail_at(v, proof.conclusion(), "conclusion " + proof.steps[proof.conclusion()].clause.to_string()
            + " is not the empty clause");
    v.pass = true;
    return v;
}

auto transport(const ResolutionProof & proof, const Substitution & phi) -> ResolutionProof
{
    ResolutionProof image;
    image.steps.reserve(proof.steps.size());
    for (const auto & step : proof.steps) {
        auto clause = phi.apply(step.clause);
        if (step.kind == ProofStep::Kind::input)
            image.steps.push_back(ProofStep::input(std::move(clause)));
        else
            image.steps.push_back(ProofStep::resolution(step.left, step.right, phi(step.pivot), std::move(clause)));
    }
    return image;
}

auto trim(const ResolutionProof & proof) -> ResolutionProof
{
    if (proof.steps.empty())
        return proof;
    std::vector<char> needed(proof.steps.size(), 0);
    needed[proof.conclusion()] = 1;
    for (std::size_t i = proof.steps.size(); i-- > 0;) {
        if (! needed[i] || proof.steps[i].kind != ProofStep::Kind::resolve)
            continue;
        needed[proof.steps[i].left] = 1;
        needed[proof.steps[i].right] = 1;
    }
    std::vector<std::size_t> new_index(proof.steps.size(), 0);
    ResolutionProof result;
    for (std::size_t i = 0; i < proof.steps.size(); ++i) {
        if (! needed[i])
            continue;
        new_index[i] = result.steps.size();
        auto step = proof.steps[i];
        if (step.kind == ProofStep::Kind::resolve) {
            step.left = new_index[step.left];
            step.right = new_index[step.right];
        }
        result.steps.push_back(std::move(step));
    }
    return result;
}

auto parse_proof_format(const std::string & s) -> ProofFormat
{
    if (s == "native")
        return ProofFormat::native;
    if (s == "rup" || s == "drat" || s == "drup")
        return ProofFormat::rup;
    throw InvalidParameters("unknown proof format: " + s);
}

void emit_proof(const ResolutionProof & proof, std::ostream & out)
{
    std::string line;
    for (const auto & step : proof.steps) {
        line.clear();
        if (step.kind == ProofStep::Kind::input)
            line += "i ";
        else {
            line += "r ";
            line += std::to_string(step.left + 1);
            line += ' ';
            line += std::to_string(step.right + 1);
            line += ' ';
            line += std::to_string(step.pivot);
            line += ' ';
        }
        for (Lit l : step.clause) {
            line += std::to_string(l.dimacs());
            line += ' ';
        }
        line += "0\n";
        out << line;
    }
}

namespace {

auto parse_int(std::string_view token, std::size_t line) -> long long
{
    long long value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw ParseError(line, "bad integer '" + std::string{token} + "'");
    return value;
}

} // namespace

auto parse_native_proof(std::istream & in) -> ResolutionProof
{
    ResolutionProof proof;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream tokens{line};
        std::string tag;
        if (! (tokens >> tag) || tag[0] == 'c')
            continue;
        if (tag != "i" && tag != "r")
            throw ParseError(line_no, "unknown step tag '" + tag + "'");

        std::vector<long long> numbers;
        std::string token;
        while (tokens >> token)
            numbers.push_back(parse_int(token, line_no));
        if (numbers.empty() || numbers.back() != 0)
            throw ParseError(line_no, "step not terminated by 0");
        numbers.pop_back();

        std::size_t first_literal = 0;
        ProofStep step;
        if (tag == "r") {
            if (numbers.size() < 3)
                throw ParseError(line_no, "resolution step needs two parents and a pivot");
            const auto index = static_cast<long long>(proof.steps.size()) + 1;
            if (numbers[0] < 1 || numbers[0] >= index || numbers[1] < 1 || numbers[1] >= index)
                throw ParseError(line_no, "parent index out of range");
            if (numbers[2] < 1)
                throw ParseError(line_no, "pivot must be a positive variable");
            step.kind = ProofStep::Kind::resolve;
            step.left = static_cast<std::size_t>(numbers[0] - 1);
            step.right = static_cast<std::size_t>(numbers[1] - 1);
            step.pivot = static_cast<int>(numbers[2]);
            first_literal = 3;
        }
        std::vector<Lit> lits;
        for (std::size_t j = first_literal; j < numbers.size(); ++j) {
            if (numbers[j] == 0)
                throw ParseError(line_no, "literal 0 inside a step");
            lits.emplace_back(static_cast<int>(numbers[j]));
        }
        step.clause = Clause{std::move(lits)};
        proof.steps.push_back(std::move(step));
    }
    return proof;
}

auto parse_proof(std::istream & in, ProofFormat format, const Cnf * cnf) -> ResolutionProof
{
    if (format == ProofFormat::native)
        return parse_native_proof(in);
    if (! cnf)
        throw InvalidParameters("rup import needs the formula");
    return import_rup(*cnf, in);
}

auto read_proof_file(const std::string & path, ProofFormat format, const Cnf * cnf) -> ResolutionProof
{
    std::ifstream in{path};
    if (! in)
        throw std::runtime_error("cannot open " + path);
    return parse_proof(in, format, cnf);
}

} // namespace kneser
