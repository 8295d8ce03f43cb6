#include <kneser/oracle.hpp>

#include <algorithm>
#include <array>
#include <bit>
#include <ostream>
#include <sstream>

namespace kneser {

auto alternative_name(const ClassAlternative & alt) -> std::string
{
    if (std::holds_alternative<DisjointPair>(alt))
        return "disjoint-pair";
    if (std::holds_alternative<CommonElement>(alt))
        return "common-element";
    return "small";
}

auto verify_alternative(const Family & family, const ClassAlternative & alt, std::size_t small_limit) -> bool
{
    auto member = [&family](const KSubset & s) { return std::find(family.begin(), family.end(), s) != family.end(); };
    if (const auto * d = std::get_if<DisjointPair>(&alt))
        return d->first != d->second && disjoint(d->first, d->second) && member(d->first) && member(d->second);
    if (const auto * c = std::get_if<CommonElement>(&alt))
        return std::all_of(family.begin(), family.end(), [c](const KSubset & s) { return s.contains(c->x); });
    const auto & s = std::get<Small>(alt);
    return s.size == family.size() && family.size() <= small_limit;
}

auto find_disjoint_pair(const Family & family) -> std::optional<DisjointPair>
{
    for (std::size_t i = 0; i < family.size(); ++i)
        for (std::size_t j = i + 1; j < family.size(); ++j)
            if ((family[i].mask() & family[j].mask()) == 0)
                return DisjointPair{family[i], family[j]};
    return std::nullopt;
}

auto common_mask(int n, const Family & family) -> std::uint64_t
{
    std::uint64_t m = n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
    for (const auto & s : family)
        m &= s.mask();
    return m;
}

auto MonoPair::to_string() const -> std::string
{
    return first.to_string() + "," + second.to_string() + " color=" + std::to_string(color);
}

auto color_classes(const Coloring & coloring) -> std::vector<Family>
{
    coloring.validate();
    const auto sets = enum_domain(coloring.n, coloring.k, coloring.domain);
    std::vector<Family> classes(static_cast<std::size_t>(coloring.colors));
    for (std::size_t i = 0; i < sets.size(); ++i)
        classes[coloring.color_of[i] - 1].push_back(sets[i]);
    return classes;
}

auto find_mono_disjoint(const Coloring & coloring) -> MonoPair
{
    if (coloring.k < 1 || coloring.k > 3)
        throw InvalidParameters("find_mono_disjoint: k must be 1, 2 or 3");
    validate_parameters(coloring.n, coloring.k);
    if (coloring.colors != default_colors(coloring.n, coloring.k))
        throw InvalidParameters("find_mono_disjoint: expected " + std::to_string(default_colors(coloring.n, coloring.k))
            + " colors");
    const auto classes = color_classes(coloring);
    for (std::size_t c = 0; c < classes.size(); ++c)
        if (auto pair = find_disjoint_pair(classes[c]))
            return {pair->first, pair->second, static_cast<int>(c) + 1};
    throw InternalInconsistency("no monochromatic disjoint pair in a " + std::to_string(coloring.colors)
        + "-coloring of the " + std::to_string(coloring.k) + "-subsets of [" + std::to_string(coloring.n) + "]");
}

namespace {

void check_family(int n, int k, const Family & family, const char * what)
{
    for (const auto & s : family)
        if (s.n() != n || s.k() != k)
            throw InvalidParameters(std::string{what} + ": member " + s.to_string() + " is not a "
                + std::to_string(k) + "-subset of [" + std::to_string(n) + "]");
}

} // namespace

auto class_trichotomy_k2(int n, const Family & family) -> ClassVerdictK2
{
    if (n < 5)
        throw InvalidParameters("class_trichotomy_k2: n must be at least 5");
    check_family(n, 2, family, "class_trichotomy_k2");
    ClassVerdictK2 verdict;
    if (auto pair = find_disjoint_pair(family))
        verdict.alternative = *pair;
    else if (const auto common = common_mask(n, family); ! family.empty() && common != 0)
        verdict.alternative = CommonElement{std::countr_zero(common) + 1};
    else if (family.size() <= 3)
        verdict.alternative = Small{family.size()};
    else
        throw InternalInconsistency("trichotomy failed for a family of " + std::to_string(family.size()) + " pairs");
    if (! verify_alternative(family, verdict.alternative, 3))
        throw InternalInconsistency("trichotomy witness does not re-verify");
    return verdict;
}

auto four_set_lemma(const KSubset & a, const KSubset & b, const KSubset & c, const KSubset & d) -> FourSetVerdict
{
    const std::array<KSubset, 4> sets{a, b, c, d};
    for (const auto & s : sets)
        if (s.k() != 2)
            throw InvalidParameters("four_set_lemma: " + s.to_string() + " is not a 2-subset");
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (sets[i] == sets[j])
                throw InvalidParameters("four_set_lemma: sets must be distinct");
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (disjoint(sets[i], sets[j]))
                return DisjointAmong{i, j};
    const auto all = a.mask() | b.mask() | c.mask() | d.mask();
    const auto meet = a.mask() & b.mask() & c.mask() & d.mask();
    if (std::popcount(all) != 5 || std::popcount(meet) != 1)
        throw InternalInconsistency("four_set_lemma: pairwise intersecting sets without a star point");
    const int n = std::max({a.n(), b.n(), c.n(), d.n()});
    return StarPoint{std::countr_zero(meet) + 1, KSubset::from_mask(n, all)};
}

auto chain_n_k2(int n, std::int64_t p, int r) -> std::int64_t
{
    return p * (n - 1) - p * (p - 1) / 2 + 3 * (r - p);
}

namespace {

struct ClassInfo
{
    std::int64_t size = 0;
    std::uint64_t common = 0;
    bool big = false; // at least four members and a common element
    std::optional<DisjointPair> pair;
};

auto class_infos(const Coloring & coloring) -> std::vector<ClassInfo>
{
    std::vector<ClassInfo> infos;
    for (const auto & family : color_classes(coloring)) {
        ClassInfo info;
        info.size = static_cast<std::int64_t>(family.size());
        info.common = family.empty() ? 0 : common_mask(coloring.n, family);
        info.big = info.size >= 4 && info.common != 0;
        info.pair = find_disjoint_pair(family);
        infos.push_back(info);
    }
    return infos;
}

void check_chain_coloring(const Coloring & coloring)
{
    if (coloring.k != 2 || coloring.domain != Domain::all_ksubsets)
        throw InvalidParameters("k = 2 chain: coloring must be over all 2-subsets");
    if (coloring.n < 5)
        throw InvalidParameters("k = 2 chain: n must be at least 5");
    if (coloring.colors != coloring.n - 3)
        throw InvalidParameters("k = 2 chain: expected n - 3 colors");
}

auto row_from(const Coloring & coloring, const std::vector<ClassInfo> & infos, const std::vector<Family> & classes, int r)
    -> ChainRowK2
{
    const int n = coloring.n;
    ChainRowK2 row;
    row.r = r;
    std::uint64_t s_mask = 0; // elements that are the whole intersection of a class with >= 4 members
    std::uint64_t q_mask = 0; // elements i with Special(i, l) for some l <= r
    for (int l = 0; l < r; ++l) {
        const auto & info = infos[l];
        row.M += info.size;
        if (info.big)
            ++row.p;
        if (info.size >= 4 && std::popcount(info.common) == 1)
            s_mask |= info.common;
        if (info.size >= 4)
            for (int i = 1; i <= n; ++i)
                if (std::all_of(classes[l].begin(), classes[l].end(), [i](const KSubset & a) { return a.contains(i); }))
                    q_mask |= std::uint64_t{1} << (i - 1);
        if (info.size <= 3) {
            row.M1 += info.size;
            ++row.Q1;
        }
        else
            row.M2 += info.size;
        if (info.pair && ! row.witness)
            row.witness = MonoPair{info.pair->first, info.pair->second, l + 1};
    }
    row.s = std::popcount(s_mask);
    row.q = std::popcount(q_mask);
    row.N = chain_n_k2(n, row.p, r);

    for (int l = 0; l < r; ++l)
        for (const auto & a : classes[l]) {
            const int first = a.smallest();
            const int second = a.largest();
            const auto & family = classes[l];
            const bool all_first = std::all_of(family.begin(), family.end(), [first](const KSubset & b) { return b.contains(first); });
            const bool all_second = std::all_of(family.begin(), family.end(), [second](const KSubset & b) { return b.contains(second); });
            if (all_first != all_second) {
                ++row.P2;
                if (family.size() >= 4)
                    ++row.P2_big;
            }
        }
    for (const auto & a : enum_ksubsets(n, 2))
        if ((a.mask() & q_mask) == a.mask())
            ++row.U;
    return row;
}

} // namespace

auto compute_chain_k2(const Coloring & coloring, int r) -> ChainRowK2
{
    check_chain_coloring(coloring);
    if (r < 0 || r > coloring.n - 3)
        throw InvalidParameters("compute_chain_k2: r must lie in [0, n-3]");
    return row_from(coloring, class_infos(coloring), color_classes(coloring), r);
}

auto finding_status_name(FindingStatus s) -> std::string
{
    switch (s) {
    case FindingStatus::pass: return "pass";
    case FindingStatus::fail: return "fail";
    case FindingStatus::vacuous: return "vacuous";
    case FindingStatus::info: return "info";
    }
    return "?";
}

auto ChainAuditK2::pass() const -> bool
{
    return count(FindingStatus::fail) == 0;
}

auto ChainAuditK2::count(FindingStatus s) const -> std::size_t
{
    return static_cast<std::size_t>(
        std::count_if(findings.begin(), findings.end(), [s](const AuditFinding & f) { return f.status == s; }));
}

void ChainAuditK2::write(std::ostream & out) const
{
    for (const auto & row : rows) {
        out << "kind=chain-row n=" << n << " r=" << row.r << " p=" << row.p << " s=" << row.s << " q=" << row.q
            << " M=" << row.M << " N=" << row.N << " M1=" << row.M1 << " M2=" << row.M2 << " Q1=" << row.Q1
            << " P2=" << row.P2 << " P2big=" << row.P2_big << " U=" << row.U;
        if (row.witness)
            out << " witness=" << row.witness->first << ',' << row.witness->second << " witness_color=" << row.witness->color;
        out << '\n';
    }
    for (const auto & f : findings) {
        out << "kind=audit-k2 n=" << n << " r=" << f.r << " check=" << f.check << " verdict=" << finding_status_name(f.status);
        if (! f.detail.empty())
            out << ' ' << f.detail;
        out << '\n';
    }
}

namespace {

auto binom(std::int64_t m) -> std::int64_t
{
    return m < 2 ? 0 : m * (m - 1) / 2;
}

auto lr(std::int64_t lhs, std::int64_t rhs) -> std::string
{
    return "lhs=" + std::to_string(lhs) + " rhs=" + std::to_string(rhs);
}

} // namespace

auto audit_k2(const Coloring & coloring) -> ChainAuditK2
{
    check_chain_coloring(coloring);
    const int n = coloring.n;
    const auto classes = color_classes(coloring);
    const auto infos = class_infos(coloring);

    ChainAuditK2 audit;
    audit.n = n;
    for (int r = 0; r <= n - 3; ++r)
        audit.rows.push_back(row_from(coloring, infos, classes, r));

    auto add = [&audit](std::string check, int r, bool ok, std::string detail) {
        audit.findings.push_back({std::move(check), r, ok ? FindingStatus::pass : FindingStatus::fail, std::move(detail)});
    };
    // Checked only when colours 1..r carry no disjoint co-coloured pair.
    auto conditional = [&audit, &add](std::string check, const ChainRowK2 & row, bool ok, std::string detail) {
        if (row.witness)
            audit.findings.push_back({std::move(check), row.r, FindingStatus::vacuous,
                "witness=" + row.witness->first.to_string() + "," + row.witness->second.to_string()});
        else
            add(std::move(check), row.r, ok, std::move(detail));
    };

    for (const auto & row : audit.rows) {
        if (row.witness && ! audit.witness_r)
            audit.witness_r = row.r;
        if (row.r > 0) {
            const auto & prev = audit.rows[row.r - 1];
            add("p-step", row.r, row.p - prev.p == 0 || row.p - prev.p == 1, lr(row.p - prev.p, 1));
            add("M-monotone", row.r, prev.M <= row.M, lr(prev.M, row.M));
            add("N-monotone", row.r, prev.N <= row.N, lr(prev.N, row.N));
        }
        add("s<=p", row.r, row.s <= row.p, lr(row.s, row.p));
        add("q=s", row.r, row.q == row.s, lr(row.q, row.s));
        add("U=C(q,2)", row.r, row.U == binom(row.q), lr(row.U, binom(row.q)));
        add("M=M1+M2", row.r, row.M == row.M1 + row.M2, lr(row.M, row.M1 + row.M2));
        add("M1<=3Q1", row.r, row.M1 <= 3 * row.Q1, lr(row.M1, 3 * row.Q1));
        add("U+P2big<=q(n-1)", row.r, row.U + row.P2_big <= row.q * (n - 1), lr(row.U + row.P2_big, row.q * (n - 1)));
        {
            const bool holds = row.U + row.P2 <= row.q * (n - 1);
            audit.findings.push_back({"U+P2<=q(n-1)", row.r, FindingStatus::info,
                std::string{holds ? "holds " : "violated "} + lr(row.U + row.P2, row.q * (n - 1))});
        }

        const auto stronger = row.s * (n - 1) - row.s * (row.s - 1) / 2 + 3 * (row.r - row.p);
        conditional("M<=N", row, row.M <= row.N, lr(row.M, row.N));
        conditional("stronger", row, row.M <= stronger, lr(row.M, stronger));
        conditional("M2<=P2", row, row.M2 <= row.P2, lr(row.M2, row.P2));
        conditional("M2<=P2big", row, row.M2 <= row.P2_big, lr(row.M2, row.P2_big));
        conditional("corollary-1", row, row.M + row.U <= row.q * (n - 1) + 3 * row.Q1,
            lr(row.M + row.U, row.q * (n - 1) + 3 * row.Q1));
    }

    const auto & last = audit.rows.back();
    const int r = n - 3;
    add("corollary-2", r, last.M == binom(n), lr(last.M, binom(n)));
    add("corollary-3", r, last.q <= n - 3, lr(last.q, n - 3));
    conditional("corollary-4", last, last.q * (n - 1) + 3 * last.Q1 + binom(n - 3) <= (n - 3) * (n - 1) + last.U,
        lr(last.q * (n - 1) + 3 * last.Q1 + binom(n - 3), static_cast<std::int64_t>(n - 3) * (n - 1) + last.U));
    const auto final_bound = final_bound_k2(n);
    add("final-bound", r, final_bound.pass(),
        "max_N=" + std::to_string(final_bound.max_n) + " at_p=" + std::to_string(final_bound.argmax_p) + " limit="
            + std::to_string(final_bound.limit));
    add("witness-exists", r, last.witness.has_value(), last.witness ? "witness=" + last.witness->to_string() : "");
    return audit;
}

auto final_bound_k2(int n) -> FinalBoundK2
{
    FinalBoundK2 result;
    result.n = n;
    result.limit = binom(n) - 3;
    result.max_n = chain_n_k2(n, 0, n - 3);
    for (int p = 1; p <= n - 3; ++p)
        if (const auto v = chain_n_k2(n, p, n - 3); v > result.max_n) {
            result.max_n = v;
            result.argmax_p = p;
        }
    return result;
}

auto final_arithmetic_k2(int n) -> bool
{
    const std::int64_t m = n;
    const bool binomial_form = binom(m) + binom(m - 3) > (m - 1) * (m - 3);
    // both sides doubled
    const bool polynomial_form = 2 * m * m - 8 * m + 12 > 2 * m * m - 8 * m + 6;
    const bool agree = 2 * (binom(m) + binom(m - 3)) == 2 * m * m - 8 * m + 12 && 2 * (m - 1) * (m - 3) == 2 * m * m - 8 * m + 6;
    return binomial_form && polynomial_form && agree;
}

auto random_coloring(int n, int k, int colors, Domain domain, Rng & rng) -> Coloring
{
    validate_parameters(n, k);
    if (colors < 1)
        throw InvalidParameters("random_coloring: need at least one color");
    Coloring c{n, k, colors, domain, {}};
    std::uniform_int_distribution<int> pick(1, colors);
    const auto size = enum_domain(n, k, domain).size();
    c.color_of.resize(size);
    for (auto & x : c.color_of)
        x = pick(rng);
    return c;
}

auto structured_coloring_k2(int n, Rng & rng) -> Coloring
{
    validate_parameters(n, 2);
    const int colors = n - 3;
    const auto sets = enum_ksubsets(n, 2);
    std::vector<int> color(sets.size(), 0);

    std::vector<int> elements(n);
    for (int i = 0; i < n; ++i)
        elements[i] = i + 1;
    std::shuffle(elements.begin(), elements.end(), rng);

    const int stars = std::uniform_int_distribution<int>(0, colors)(rng);
    std::bernoulli_distribution keep(0.9);
    int next = 1;
    for (int s = 0; s < stars; ++s, ++next)
        for (std::size_t i = 0; i < sets.size(); ++i)
            if (color[i] == 0 && sets[i].contains(elements[s]) && keep(rng))
                color[i] = next;

    std::bernoulli_distribution small(0.5);
    for (; next <= colors && small(rng); ++next) {
        // part of a triangle on three uncoloured pairs
        std::vector<int> pts(elements.begin(), elements.end());
        std::shuffle(pts.begin(), pts.end(), rng);
        const std::array<KSubset, 3> tri{KSubset::from_elements(n, {pts[0], pts[1]}),
            KSubset::from_elements(n, {pts[1], pts[2]}), KSubset::from_elements(n, {pts[0], pts[2]})};
        const int take = std::uniform_int_distribution<int>(1, 3)(rng);
        for (int t = 0; t < take; ++t) {
            const auto idx = static_cast<std::size_t>(colex_rank(tri[t]));
            if (color[idx] == 0)
                color[idx] = next;
        }
    }

    std::bernoulli_distribution anywhere(0.25);
    for (auto & c : color) {
        if (c != 0)
            continue;
        const int low = (next <= colors && ! anywhere(rng)) ? next : 1;
        c = std::uniform_int_distribution<int>(low, colors)(rng);
    }
    return Coloring{n, 2, colors, Domain::all_ksubsets, std::move(color)};
}

auto random_family_k2(int n, Rng & rng) -> Family
{
    const auto sets = enum_ksubsets(n, 2);
    std::uniform_int_distribution<int> element(1, n);
    std::bernoulli_distribution coin(0.5);
    Family family;
    switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
    case 0:
        for (const auto & s : sets)
            if (coin(rng))
                family.push_back(s);
        break;
    case 1: {
        const int centre = element(rng);
        for (const auto & s : sets)
            if (s.contains(centre) && coin(rng))
                family.push_back(s);
        break;
    }
    case 2: {
        int a = element(rng), b = element(rng), c = element(rng);
        while (b == a)
            b = element(rng);
        while (c == a || c == b)
            c = element(rng);
        for (const auto & s : {KSubset::from_elements(n, {a, b}), KSubset::from_elements(n, {b, c}), KSubset::from_elements(n, {a, c})})
            if (coin(rng))
                family.push_back(s);
        break;
    }
    default: {
        std::bernoulli_distribution sparse(3.0 / static_cast<double>(sets.size()));
        for (const auto & s : sets)
            if (sparse(rng))
                family.push_back(s);
        break;
    }
    }
    if (coin(rng) && ! sets.empty()) {
        const auto extra = sets[std::uniform_int_distribution<std::size_t>(0, sets.size() - 1)(rng)];
        if (std::find(family.begin(), family.end(), extra) == family.end())
            family.push_back(extra);
    }
    std::sort(family.begin(), family.end());
    return family;
}

auto star_family(int n, int k, int centre) -> Family
{
    Family family;
    for (const auto & s : enum_ksubsets(n, k))
        if (s.contains(centre))
            family.push_back(s);
    return family;
}

} // namespace kneser
