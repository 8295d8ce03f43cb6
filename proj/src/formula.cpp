#include <kneser/formula.hpp>

#include <algorithm>
#include <sstream>

namespace kneser {

Clause::Clause(std::vector<Lit> literals) : _lits(std::move(literals))
{
    std::sort(_lits.begin(), _lits.end());
    _lits.erase(std::unique(_lits.begin(), _lits.end()), _lits.end());
}

Clause::Clause(std::initializer_list<int> dimacs)
{
    std::vector<Lit> lits;
    lits.reserve(dimacs.size());
    for (int d : dimacs)
        lits.emplace_back(d);
    *this = Clause{std::move(lits)};
}

auto Clause::contains(Lit l) const -> bool
{
    return std::binary_search(_lits.begin(), _lits.end(), l);
}

auto Clause::is_tautology() const -> bool
{
    for (std::size_t i = 1; i < _lits.size(); ++i)
        if (_lits[i].var() == _lits[i - 1].var())
            return true;
    return false;
}

auto Clause::subsumes(const Clause & other) const -> bool
{
    return std::includes(other._lits.begin(), other._lits.end(), _lits.begin(), _lits.end());
}

auto Clause::to_string() const -> std::string
{
    std::ostringstream out;
    for (Lit l : _lits)
        out << l.dimacs() << ' ';
    out << '0';
    return out.str();
}

auto ClauseHash::operator()(const Clause & c) const noexcept -> std::size_t
{
    std::size_t h = 0xcbf29ce484222325ULL;
    for (Lit l : c)
        h = (h ^ static_cast<std::size_t>(static_cast<unsigned>(l.dimacs()))) * 0x100000001b3ULL;
    return h;
}

auto resolve(const Clause & a, const Clause & b, int pivot) -> std::optional<Clause>
{
    const Clause * positive = nullptr;
    const Clause * negative = nullptr;
    if (a.contains(Lit::pos(pivot)) && b.contains(Lit::neg(pivot))) {
        positive = &a;
        negative = &b;
    }
    else if (b.contains(Lit::pos(pivot)) && a.contains(Lit::neg(pivot))) {
        positive = &b;
        negative = &a;
    }
    else
        return std::nullopt;

    std::vector<Lit> lits;
    lits.reserve(a.size() + b.size());
    for (Lit l : *positive)
        if (l != Lit::pos(pivot))
            lits.push_back(l);
    for (Lit l : *negative)
        if (l != Lit::neg(pivot))
            lits.push_back(l);
    return Clause{std::move(lits)};
}

auto variant_name(Variant v) -> std::string
{
    switch (v) {
    case Variant::kneser: return "kneser";
    case Variant::kneser_onto: return "kneser-onto";
    case Variant::schrijver: return "schrijver";
    case Variant::schrijver_onto: return "schrijver-onto";
    case Variant::php: return "php";
    }
    return "?";
}

auto parse_variant(const std::string & s) -> Variant
{
    for (auto v : {Variant::kneser, Variant::kneser_onto, Variant::schrijver, Variant::schrijver_onto, Variant::php})
        if (variant_name(v) == s)
            return v;
    throw InvalidParameters("unknown variant: " + s);
}

auto variant_domain(Variant v) -> Domain
{
    return (v == Variant::schrijver || v == Variant::schrijver_onto) ? Domain::stable_only : Domain::all_ksubsets;
}

auto variant_has_onto(Variant v) -> bool
{
    return v == Variant::kneser_onto || v == Variant::schrijver_onto;
}

auto InstanceDescriptor::to_string() const -> std::string
{
    std::ostringstream out;
    out << "variant=" << variant_name(variant) << " n=" << n << " k=" << k << " colors=" << colors;
    return out.str();
}

auto make_descriptor(Variant variant, int n, int k, std::optional<int> colors) -> InstanceDescriptor
{
    validate_parameters(n, k);
    if (variant == Variant::php && k != 1)
        throw InvalidParameters("variant php is the k=1 instance (got k=" + std::to_string(k) + ")");
    InstanceDescriptor d;
    d.variant = variant;
    d.n = n;
    d.k = k;
    d.colors = colors.value_or(default_colors(n, k));
    d.domain = variant_domain(variant);
    if (d.colors < 1)
        throw InvalidParameters("colors must be at least 1");
    return d;
}

auto gen_ant(int n, int k, int colors, Domain domain) -> std::vector<Clause>
{
    const VarNumbering numbering{n, k, colors, domain};
    std::vector<Clause> result;
    result.reserve(numbering.sets().size());
    for (int r = 0; r < static_cast<int>(numbering.sets().size()); ++r) {
        std::vector<Lit> lits;
        for (int l = 1; l <= colors; ++l)
            lits.push_back(Lit::pos(numbering.var(r, l)));
        result.emplace_back(std::move(lits));
    }
    return result;
}

auto gen_not_cons(int n, int k, int colors, Domain domain) -> std::vector<Clause>
{
    const VarNumbering numbering{n, k, colors, domain};
    const auto & sets = numbering.sets();
    std::vector<Clause> result;
    for (int a = 0; a < static_cast<int>(sets.size()); ++a)
        for (int b = a + 1; b < static_cast<int>(sets.size()); ++b)
            if (disjoint(sets[a], sets[b]))
                for (int l = 1; l <= colors; ++l)
                    result.push_back(Clause{std::vector{Lit::neg(numbering.var(a, l)), Lit::neg(numbering.var(b, l))}});
    return result;
}

auto gen_onto(int n, int k, int colors, Domain domain) -> std::vector<Clause>
{
    const VarNumbering numbering{n, k, colors, domain};
    std::vector<Clause> result;
    for (int r = 0; r < static_cast<int>(numbering.sets().size()); ++r)
        for (int l = 1; l <= colors; ++l)
            for (int s = l + 1; s <= colors; ++s)
                result.push_back(Clause{std::vector{Lit::neg(numbering.var(r, l)), Lit::neg(numbering.var(r, s))}});
    return result;
}

auto gen_cnf(const InstanceDescriptor & d) -> Cnf
{
    Cnf cnf;
    cnf.info = d;
    cnf.num_vars = d.numbering().num_vars();
    cnf.clauses = gen_ant(d.n, d.k, d.colors, d.domain);
    if (variant_has_onto(d.variant)) {
        auto onto = gen_onto(d.n, d.k, d.colors, d.domain);
        cnf.clauses.insert(cnf.clauses.end(), onto.begin(), onto.end());
    }
    auto cons = gen_not_cons(d.n, d.k, d.colors, d.domain);
    cnf.clauses.insert(cnf.clauses.end(), cons.begin(), cons.end());
    return cnf;
}

auto gen_cnf(Variant variant, int n, int k, std::optional<int> colors) -> Cnf
{
    return gen_cnf(make_descriptor(variant, n, k, colors));
}

auto disjoint_pair_count(int n, int k, Domain domain) -> std::uint64_t
{
    if (domain == Domain::all_ksubsets)
        return binomial(n, k) * binomial(n - k, k) / 2;
    const auto sets = enum_stable(n, k);
    std::uint64_t count = 0;
    for (std::size_t a = 0; a < sets.size(); ++a)
        for (std::size_t b = a + 1; b < sets.size(); ++b)
            count += disjoint(sets[a], sets[b]) ? 1 : 0;
    return count;
}

auto expected_clause_count(const InstanceDescriptor & d) -> std::uint64_t
{
    const std::uint64_t domain_size = d.domain == Domain::all_ksubsets ? binomial(d.n, d.k) : enum_stable(d.n, d.k).size();
    std::uint64_t total = domain_size + d.colors * disjoint_pair_count(d.n, d.k, d.domain);
    if (variant_has_onto(d.variant))
        total += domain_size * binomial(d.colors, 2);
    return total;
}

} // namespace kneser
