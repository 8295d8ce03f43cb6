#include <kneser/substitution.hpp>

#include <cctype>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace kneser {

auto Substitution::operator()(int var) const -> int
{
    if (var < 1 || var > static_cast<int>(map.size()))
        throw ContractViolation("variable " + std::to_string(var) + " is outside the substitution domain ("
            + source.to_string() + ")");
    return map[var - 1];
}

auto Substitution::operator()(Lit lit) const -> Lit
{
    const int image = (*this)(lit.var());
    return lit.positive() ? Lit::pos(image) : Lit::neg(image);
}

auto Substitution::apply(const Clause & clause) const -> Clause
{
    std::vector<Lit> lits;
    lits.reserve(clause.size());
    for (Lit l : clause)
        lits.push_back((*this)(l));
    return Clause{std::move(lits)};
}

auto identity_substitution(const InstanceDescriptor & instance) -> Substitution
{
    Substitution s{instance, instance, {}};
    const int vars = instance.numbering().num_vars();
    s.map.resize(vars);
    for (int v = 1; v <= vars; ++v)
        s.map[v - 1] = v;
    return s;
}

auto phi_set(const KSubset & a, int k) -> PhiImage
{
    const int n = a.n();
    if (a.k() != k + 1 || n < 3)
        throw InvalidParameters("phi_set: expected a " + std::to_string(k + 1) + "-subset of [n], n >= 3");
    const auto first = firsts(a, k);
    if (first.largest() <= n - 2)
        return {KSubset::from_mask(n - 2, first.mask()), PhiCase::firsts};

    // The k smallest elements reach past n-2, so both n-1 and n lie in A.
    const std::uint64_t top = (std::uint64_t{1} << (n - 2)) | (std::uint64_t{1} << (n - 1));
    if ((a.mask() & top) != top)
        throw InternalInconsistency("phi_set: case dispatch reached " + a.to_string() + " without {n-1, n}");
    const std::uint64_t rest = a.mask() & ~top;
    int lambda = n - 2;
    while ((rest >> (lambda - 1)) & 1U)
        --lambda;
    return {KSubset::from_mask(n - 2, rest | (std::uint64_t{1} << (lambda - 1))), PhiCase::top_pair};
}

auto build_phi(int k, int n, Variant variant) -> Substitution
{
    if (variant == Variant::php)
        throw InvalidParameters("build_phi: php has no (k+1) source family; use kneser");
    if (k < 1 || n < 3 || n < 2 * (k + 1))
        throw InvalidParameters("build_phi: need k >= 1, n >= 3 and n >= 2(k+1) (got k=" + std::to_string(k)
            + ", n=" + std::to_string(n) + ")");
    Substitution phi;
    phi.source = make_descriptor(variant, n, k + 1);
    phi.target = make_descriptor(variant, n - 2, k);
    const auto from = phi.source.numbering();
    const auto to = phi.target.numbering();
    phi.map.resize(from.num_vars());
    for (int r = 0; r < static_cast<int>(from.sets().size()); ++r) {
        const auto image = phi_set(from.sets()[r], k).image;
        if (! to.contains(image))
            throw ContractViolation("image " + image.to_string() + " of " + from.sets()[r].to_string()
                + " is outside the target domain");
        const int target_rank = to.rank_of(image);
        for (int color = 1; color <= from.colors(); ++color)
            phi.map[from.var(r, color) - 1] = to.var(target_rank, color);
    }
    return phi;
}

auto compose(const Substitution & a, const Substitution & b) -> Substitution
{
    if (! (a.target == b.source))
        throw ContractViolation("compose: " + a.target.to_string() + " does not match " + b.source.to_string());
    Substitution c{a.source, b.target, std::vector<int>(a.map.size())};
    for (std::size_t i = 0; i < a.map.size(); ++i)
        c.map[i] = b(a.map[i]);
    return c;
}

auto compose_phi(int k_top, int n_top, Variant variant) -> Substitution
{
    if (k_top < 1)
        throw InvalidParameters("compose_phi: k_top must be at least 1");
    if (k_top == 1)
        return identity_substitution(make_descriptor(variant, n_top, 1));
    auto result = build_phi(k_top - 1, n_top, variant);
    int n = n_top - 2;
    for (int k = k_top - 2; k >= 1; --k, n -= 2)
        result = compose(result, build_phi(k, n, variant));
    return result;
}

auto apply_to_cnf(const Substitution & phi, const Cnf & source, bool dedupe) -> Cnf
{
    if (source.info && ! (*source.info == phi.source))
        throw ContractViolation("apply_to_cnf: instance " + source.info->to_string() + " does not match "
            + phi.source.to_string());
    if (source.num_vars > static_cast<int>(phi.map.size()))
        throw ContractViolation("apply_to_cnf: instance has variables outside the substitution domain");
    Cnf image;
    image.info = phi.target;
    image.num_vars = phi.target.numbering().num_vars();
    image.clauses.reserve(source.clauses.size());
    std::unordered_set<Clause, ClauseHash> seen;
    for (const auto & clause : source.clauses) {
        auto mapped = phi.apply(clause);
        if (dedupe && ! seen.insert(mapped).second)
            continue;
        image.clauses.push_back(std::move(mapped));
    }
    return image;
}

namespace {

// Add one of n-1, n to a stable (mod n-2) set of [n-2] keeping it stable mod n.
// Returns 0 when neither element fits.
auto stable_extension(std::uint64_t c, int n, int preferred) -> int
{
    for (int e : {preferred, preferred == n - 1 ? n : n - 1}) {
        const std::uint64_t extended = c | (std::uint64_t{1} << (e - 1));
        if (is_stable_mask(extended, n))
            return e;
    }
    return 0;
}

struct TargetLiteral
{
    KSubset set;
    int color;
};

} // namespace

auto ImageReport::summary() const -> std::string
{
    std::ostringstream out;
    out << "substitution " << source.to_string() << "  ->  " << target.to_string() << '\n';
    out << "  source clauses:          " << source_clauses << '\n';
    out << "  distinct image clauses:  " << distinct_image_clauses << '\n';
    out << "  target clauses:          " << target_clauses << '\n';
    out << "  max multiplicity:        " << max_multiplicity << " (" << repeated_targets << " targets repeated)\n";
    out << "  preimage witnesses:      ant=" << ant_witnesses << " cons=" << cons_witnesses << " onto="
        << onto_witnesses << '\n';
    if (pass) {
        auto family = variant_name(target.variant);
        family[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(family[0])));
        out << "  image = " << family << "_{" << target.k << "," << target.n << "}  PASS\n";
    }
    else
        out << "  FAIL: " << counterexample.value_or("unknown") << '\n';
    return out.str();
}

void ImageReport::write_machine(std::ostream & out) const
{
    out << "kind=verify-subst variant=" << variant_name(source.variant) << " k=" << target.k << " n=" << source.n
        << " source_clauses=" << source_clauses << " image_distinct=" << distinct_image_clauses
        << " target_clauses=" << target_clauses << " max_multiplicity=" << max_multiplicity
        << " repeated_targets=" << repeated_targets << " ant_witnesses=" << ant_witnesses
        << " cons_witnesses=" << cons_witnesses << " onto_witnesses=" << onto_witnesses
        << " verdict=" << (pass ? "pass" : "fail") << '\n';
    if (counterexample)
        out << "kind=counterexample detail=\"" << *counterexample << "\"\n";
}

auto verify_image(Variant variant, int k, int n) -> ImageReport
{
    ImageReport report;
    Substitution phi;
    try {
        phi = build_phi(k, n, variant);
    }
    catch (const ContractViolation & e) {
        report.source = make_descriptor(variant, n, k + 1);
        report.target = make_descriptor(variant, n - 2, k);
        report.counterexample = e.what();
        return report;
    }
    report.source = phi.source;
    report.target = phi.target;

    const auto source_cnf = gen_cnf(phi.source);
    const auto target_cnf = gen_cnf(phi.target);
    const auto from = phi.source.numbering();
    const auto to = phi.target.numbering();
    report.source_clauses = source_cnf.clauses.size();
    report.target_clauses = target_cnf.clauses.size();

    auto fail = [&](std::string why) {
        if (! report.counterexample)
            report.counterexample = std::move(why);
    };

    // Set-level properties: disjointness and (for stable domains) stability survive the map.
    for (const auto & a : from.sets()) {
        const auto image = phi_set(a, k);
        const bool both_top = a.contains(n - 1) && a.contains(n);
        if ((image.which == PhiCase::top_pair) != both_top)
            fail("case dispatch mismatch at " + a.to_string());
        if (phi.source.domain == Domain::stable_only && ! is_stable(image.image))
            fail("stable set " + a.to_string() + " maps to unstable " + image.image.to_string());
    }

    std::unordered_map<Clause, std::size_t, ClauseHash> multiplicity;
    for (const auto & clause : source_cnf.clauses)
        ++multiplicity[phi.apply(clause)];
    report.distinct_image_clauses = multiplicity.size();

    std::unordered_set<Clause, ClauseHash> target_set(target_cnf.clauses.begin(), target_cnf.clauses.end());
    std::unordered_set<Clause, ClauseHash> source_set(source_cnf.clauses.begin(), source_cnf.clauses.end());

    for (const auto & [clause, count] : multiplicity) {
        if (! target_set.contains(clause))
            fail("image clause " + clause.to_string() + " is not a target clause");
        report.max_multiplicity = std::max(report.max_multiplicity, count);
        if (count >= 2)
            ++report.repeated_targets;
    }

    auto decode = [&](Lit l) { auto d = to.decode(l.var()); return TargetLiteral{d.subset, d.color}; };
    auto lift = [&](const KSubset & c, int extra) {
        return KSubset::from_mask(n, c.mask() | (std::uint64_t{1} << (extra - 1)));
    };
    const bool stable = phi.source.domain == Domain::stable_only;

    // Preimage of a single target set: C + {n-1}, or the stability-respecting extension.
    auto ant_preimage = [&](const KSubset & c) -> std::optional<KSubset> {
        int extra = n - 1;
        if (stable)
            extra = stable_extension(c.mask(), n, n - 1);
        if (extra == 0)
            return std::nullopt;
        return lift(c, extra);
    };

    auto check_witness = [&](const Clause & target, const Clause & preimage, const char * kind) {
        if (! source_set.contains(preimage)) {
            fail(std::string{kind} + " witness " + preimage.to_string() + " for " + target.to_string()
                + " is not a source clause");
            return false;
        }
        if (! (phi.apply(preimage) == target)) {
            fail(std::string{kind} + " witness " + preimage.to_string() + " does not map to " + target.to_string());
            return false;
        }
        return true;
    };

    for (const auto & target : target_cnf.clauses) {
        if (! multiplicity.contains(target))
            fail("target clause " + target.to_string() + " has no preimage in the image");

        const auto lits = target.literals();
        if (lits.front().positive()) {
            const auto c = decode(lits.front()).set;
            auto a = ant_preimage(c);
            if (! a) {
                fail("no stable Ant preimage for " + c.to_string());
                continue;
            }
            std::vector<Lit> pre;
            for (int color = 1; color <= from.colors(); ++color)
                pre.push_back(Lit::pos(from.var(*a, color)));
            if (check_witness(target, Clause{std::move(pre)}, "ant"))
                ++report.ant_witnesses;
            continue;
        }

        if (lits.size() != 2) {
            fail("unexpected target clause shape " + target.to_string());
            continue;
        }
        const auto x = decode(lits[0]);
        const auto y = decode(lits[1]);
        if (x.set == y.set) {
            auto a = ant_preimage(x.set);
            if (! a) {
                fail("no stable Onto preimage for " + x.set.to_string());
                continue;
            }
            Clause pre{std::vector{Lit::neg(from.var(*a, x.color)), Lit::neg(from.var(*a, y.color))}};
            if (check_witness(target, pre, "onto"))
                ++report.onto_witnesses;
            continue;
        }

        // Disjoint C, D: A = C + {n-1}, B = D + {n}, swapping the extra elements when stability demands.
        std::optional<std::pair<KSubset, KSubset>> pair;
        for (auto [ec, ed] : {std::pair{n - 1, n}, std::pair{n, n - 1}}) {
            auto a = lift(x.set, ec);
            auto b = lift(y.set, ed);
            if (! stable || (is_stable(a) && is_stable(b))) {
                pair = std::pair{a, b};
                break;
            }
        }
        if (! pair) {
            fail("no stable Cons preimage for " + target.to_string());
            continue;
        }
        Clause pre{std::vector{Lit::neg(from.var(pair->first, x.color)), Lit::neg(from.var(pair->second, y.color))}};
        if (check_witness(target, pre, "cons"))
            ++report.cons_witnesses;
    }

    report.pass = ! report.counterexample.has_value();
    return report;
}

void write_substitution(const Substitution & phi, std::ostream & out)
{
    out << "c substitution " << phi.source.to_string() << " -> " << phi.target.to_string() << '\n';
    for (std::size_t i = 0; i < phi.map.size(); ++i)
        out << (i + 1) << ' ' << phi.map[i] << '\n';
}

} // namespace kneser
