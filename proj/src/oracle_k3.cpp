#include <kneser/oracle.hpp>

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>

namespace kneser {

namespace {

auto members_with(const Family & family, auto predicate) -> std::size_t
{
    return static_cast<std::size_t>(std::count_if(family.begin(), family.end(), predicate));
}

// Element in [1, n] maximizing score among candidates; ties to the smallest.
auto argmax(int n, auto candidate, auto score) -> int
{
    int best = 0;
    std::size_t best_score = 0;
    for (int e = 1; e <= n; ++e) {
        if (! candidate(e))
            continue;
        const auto s = score(e);
        if (best == 0 || s > best_score) {
            best = e;
            best_score = s;
        }
    }
    return best;
}

auto bit(int e) -> std::uint64_t
{
    return std::uint64_t{1} << (e - 1);
}

} // namespace

auto greedy_abc(const Family & family) -> Triple
{
    if (family.empty())
        throw InvalidParameters("greedy_abc: empty family");
    const int n = family.front().n();
    for (const auto & w : family)
        if (w.k() != 3 || w.n() != n)
            throw InvalidParameters("greedy_abc: member " + w.to_string() + " is not a 3-subset of [" + std::to_string(n) + "]");

    Triple t;
    t.a = argmax(
        n, [](int) { return true; },
        [&](int e) { return members_with(family, [e](const KSubset & w) { return w.contains(e); }); });
    t.b = argmax(
        n,
        [&](int e) {
            return e != t.a && members_with(family, [&](const KSubset & w) { return w.contains(t.a) && w.contains(e); }) > 0;
        },
        [&](int e) { return members_with(family, [&](const KSubset & w) { return w.contains(e) && ! w.contains(t.a); }); });
    t.c = argmax(
        n,
        [&](int e) {
            return e != t.a && e != t.b
                && std::find(family.begin(), family.end(), KSubset::from_elements(n, {t.a, t.b, e})) != family.end();
        },
        [&](int e) {
            return members_with(
                family, [&](const KSubset & w) { return w.contains(e) && ! w.contains(t.a) && ! w.contains(t.b); });
        });
    if (t.b == 0 || t.c == 0)
        throw InternalInconsistency("greedy_abc: no member through the chosen elements");
    return t;
}

auto partition_abcd(const Family & family, const Triple & t) -> PartitionABCD
{
    if (family.empty())
        throw InvalidParameters("partition_abcd: empty family");
    const int n = family.front().n();
    const auto abc = KSubset::from_elements(n, {t.a, t.b, t.c});
    if (std::find(family.begin(), family.end(), abc) == family.end())
        throw InvalidParameters("partition_abcd: " + abc.to_string() + " is not a member");

    PartitionABCD parts;
    for (const auto & w : family) {
        const bool a = w.contains(t.a), b = w.contains(t.b), c = w.contains(t.c);
        if (a && ! b)
            parts.A.push_back(w);
        else if (! a && b)
            parts.B.push_back(w);
        else if (a && b)
            parts.D.push_back(w);
        else if (c)
            parts.C.push_back(w);
        else if (! parts.witness)
            parts.witness = DisjointPair{abc, w};
    }
    return parts;
}

namespace {

auto intersection(const Family & family) -> std::uint64_t
{
    std::uint64_t m = ~std::uint64_t{0};
    for (const auto & w : family)
        m &= w.mask();
    return m;
}

auto ab_case(const PartitionABCD & parts, int b) -> int
{
    const auto & B = parts.B;
    if (B.empty())
        return 1;
    for (std::size_t i = 0; i < B.size(); ++i)
        for (std::size_t j = i + 1; j < B.size(); ++j)
            if ((B[i].mask() & B[j].mask()) == bit(b))
                return 2;
    if (B.size() == 1)
        return 3;
    if (B.size() == 2)
        return 4;
    return std::popcount(intersection(B)) == 2 ? 5 : 6;
}

auto cd_case(const PartitionABCD & parts) -> int
{
    const auto & C = parts.C;
    if (C.empty())
        return 1;
    if (C.size() == 1)
        return 2;
    return std::popcount(intersection(C)) == 2 ? 3 : 4;
}

} // namespace

auto class_bound_k3(int n, const Family & family) -> ClassAnalysisK3
{
    if (n < 7)
        throw InvalidParameters("class_bound_k3: n must be at least 7");
    for (const auto & w : family)
        if (w.k() != 3 || w.n() != n)
            throw InvalidParameters("class_bound_k3: member " + w.to_string() + " is not a 3-subset of [" + std::to_string(n) + "]");

    ClassAnalysisK3 analysis;
    analysis.n = n;
    analysis.size = family.size();
    const std::size_t limit = static_cast<std::size_t>(3 * n - 8);

    if (! family.empty()) {
        analysis.chosen = greedy_abc(family);
        analysis.parts = partition_abcd(family, *analysis.chosen);
        const auto & p = analysis.parts;
        analysis.greedy_order = p.A.size() >= p.B.size() && p.B.size() >= p.C.size();
    }

    if (auto pair = find_disjoint_pair(family))
        analysis.alternative = *pair;
    else if (const auto common = common_mask(n, family); ! family.empty() && common != 0)
        analysis.alternative = CommonElement{std::countr_zero(common) + 1};
    else {
        if (! family.empty()) {
            const auto & p = analysis.parts;
            if (p.witness)
                throw InternalInconsistency("class_bound_k3: partition witness without a disjoint pair");
            const auto nn = static_cast<std::size_t>(n);
            analysis.ab_case = ab_case(p, analysis.chosen->b);
            analysis.cd_case = cd_case(p);
            analysis.a_bound = p.A.size() <= nn - 3;
            analysis.ab_bound = p.A.size() + p.B.size() <= 2 * nn - 6;
            analysis.cd_bound = p.C.size() + p.D.size() <= nn - 2;
            if (p.A.size() + p.B.size() + p.C.size() + p.D.size() != family.size())
                throw InternalInconsistency("class_bound_k3: A, B, C, D do not partition the class");
        }
        if (family.size() > limit)
            throw InternalInconsistency("class_bound_k3: intersecting family of size " + std::to_string(family.size())
                + " without a common element exceeds 3n-8");
        analysis.alternative = Small{family.size()};
    }
    if (! verify_alternative(family, analysis.alternative, limit))
        throw InternalInconsistency("class_bound_k3: witness does not re-verify");
    return analysis;
}

namespace {

// Drops element x from a mask over [n], shifting the higher elements down.
auto remove_element(std::uint64_t mask, int x) -> std::uint64_t
{
    const std::uint64_t low = mask & (bit(x) - 1);
    const std::uint64_t high = (mask >> x) << (x - 1);
    return low | high;
}

auto lift(std::uint64_t mask, const std::vector<int> & original, int n) -> KSubset
{
    std::vector<int> elements;
    for (int e = 1; e <= static_cast<int>(original.size()); ++e)
        if (mask & bit(e))
            elements.push_back(original[e - 1]);
    return KSubset::from_elements(n, elements);
}

struct Level
{
    int color;          // colour in the original coloring
    std::vector<std::uint64_t> members; // masks over the current ground set
};

} // namespace

auto find_mono_disjoint_k3(const Coloring & coloring) -> ExtractionK3
{
    const int n0 = coloring.n;
    if (coloring.k != 3 || coloring.domain != Domain::all_ksubsets)
        throw InvalidParameters("find_mono_disjoint_k3: coloring must be over all 3-subsets");
    if (n0 < 7)
        throw InvalidParameters("find_mono_disjoint_k3: n must be at least 7");
    if (coloring.colors != n0 - 5)
        throw InvalidParameters("find_mono_disjoint_k3: expected n - 5 colors");

    std::vector<Level> classes;
    {
        const auto families = color_classes(coloring);
        for (std::size_t c = 0; c < families.size(); ++c) {
            Level level{static_cast<int>(c) + 1, {}};
            for (const auto & w : families[c])
                level.members.push_back(w.mask());
            classes.push_back(std::move(level));
        }
    }
    std::vector<int> original(n0);
    for (int e = 1; e <= n0; ++e)
        original[e - 1] = e;

    ExtractionK3 result;
    int n = n0;
    auto found = [&](std::uint64_t x, std::uint64_t y, int color) {
        result.pair = MonoPair{lift(x, original, n0), lift(y, original, n0), color};
    };

    while (true) {
        if (n == 7) {
            bool done = false;
            for (const auto & level : classes) {
                for (std::size_t i = 0; i < level.members.size() && ! done; ++i)
                    for (std::size_t j = i + 1; j < level.members.size() && ! done; ++j)
                        if ((level.members[i] & level.members[j]) == 0) {
                            found(level.members[i], level.members[j], level.color);
                            done = true;
                        }
                if (done)
                    break;
            }
            if (! done)
                throw InternalInconsistency("find_mono_disjoint_k3: base case n=7 has no monochromatic disjoint pair");
            result.trace.push_back("base n=7 pair=" + result.pair.to_string());
            break;
        }

        // first colour class with a common element (an empty class has every element in common)
        std::optional<std::size_t> star;
        int x = 0;
        for (std::size_t i = 0; i < classes.size() && ! star; ++i) {
            const auto & m = classes[i].members;
            if (m.empty()) {
                star = i;
                x = n;
            }
            else if (std::uint64_t common = std::accumulate(m.begin(), m.end(), ~std::uint64_t{0}, std::bit_and<>{}); common != 0) {
                star = i;
                x = std::countr_zero(common) + 1;
            }
        }

        if (star) {
            result.trace.push_back("n=" + std::to_string(n) + " eliminate element=" + std::to_string(original[x - 1])
                + " color=" + std::to_string(classes[*star].color));
            classes.erase(classes.begin() + static_cast<std::ptrdiff_t>(*star));
            for (auto & level : classes) {
                std::vector<std::uint64_t> kept;
                for (auto m : level.members)
                    if (! (m & bit(x)))
                        kept.push_back(remove_element(m, x));
                level.members = std::move(kept);
            }
            original.erase(original.begin() + (x - 1));
            --n;
            continue;
        }

        const auto largest = std::max_element(classes.begin(), classes.end(),
            [](const Level & a, const Level & b) { return a.members.size() < b.members.size(); });
        if (largest->members.size() <= static_cast<std::size_t>(3 * n - 8))
            throw InternalInconsistency("find_mono_disjoint_k3: every class is within 3n-8 at n=" + std::to_string(n));
        Family family;
        for (auto m : largest->members)
            family.push_back(KSubset::from_mask(n, m));
        const auto analysis = class_bound_k3(n, family);
        const auto * pair = std::get_if<DisjointPair>(&analysis.alternative);
        if (! pair)
            throw InternalInconsistency("find_mono_disjoint_k3: large class without a disjoint pair");
        found(pair->first.mask(), pair->second.mask(), largest->color);
        result.trace.push_back("n=" + std::to_string(n) + " large class color=" + std::to_string(largest->color)
            + " size=" + std::to_string(family.size()) + " pair=" + result.pair.to_string());
        break;
    }

    const auto sets = enum_ksubsets(n0, 3);
    const auto color_of = [&](const KSubset & s) { return coloring.color_of[static_cast<std::size_t>(colex_rank(s))]; };
    const auto & p = result.pair;
    if (p.first == p.second || ! disjoint(p.first, p.second) || color_of(p.first) != p.color || color_of(p.second) != p.color)
        throw InternalInconsistency("find_mono_disjoint_k3: lifted pair does not re-verify: " + p.to_string());
    return result;
}

auto n3_summand_name(N3Summand s) -> std::string
{
    return s == N3Summand::definition ? "3n-7" : "3n-8";
}

auto n3_bound(int n, int p, N3Summand summand) -> std::int64_t
{
    if (n < 6 || p < 0 || p > n - 5)
        throw InvalidParameters("n3_bound: need n >= 6 and 0 <= p <= n-5");
    std::int64_t total = 0;
    for (int j = 1; j <= p; ++j)
        total += static_cast<std::int64_t>(binomial(n - j, 2));
    const std::int64_t s = summand == N3Summand::definition ? 3 * n - 7 : 3 * n - 8;
    return total + static_cast<std::int64_t>(n - 5 - p) * s;
}

auto n3_failure_p(int n, N3Summand summand) -> std::optional<int>
{
    const auto target = static_cast<std::int64_t>(binomial(n, 3));
    for (int p = 0; p <= n - 5; ++p)
        if (n3_bound(n, p, summand) >= target)
            return p;
    return std::nullopt;
}

auto structured_coloring_k3(int n, Rng & rng) -> Coloring
{
    if (n < 7)
        throw InvalidParameters("structured_coloring_k3: n must be at least 7");
    const int colors = n - 5;
    const auto sets = enum_ksubsets(n, 3);
    std::vector<int> color(sets.size(), 0);
    std::vector<int> centres(n);
    std::iota(centres.begin(), centres.end(), 1);
    std::shuffle(centres.begin(), centres.end(), rng);

    const int stars = std::uniform_int_distribution<int>(0, colors - 1)(rng);
    std::bernoulli_distribution keep(0.85);
    for (int s = 0; s < stars; ++s)
        for (std::size_t i = 0; i < sets.size(); ++i)
            if (color[i] == 0 && sets[i].contains(centres[s]) && keep(rng))
                color[i] = s + 1;
    // leftovers avoid the star colours so the stars survive
    std::uniform_int_distribution<int> any(stars + 1, colors);
    for (auto & c : color)
        if (c == 0)
            c = any(rng);
    // shuffle colour names so stars are not always the leading colours
    std::vector<int> rename(colors);
    std::iota(rename.begin(), rename.end(), 1);
    std::shuffle(rename.begin(), rename.end(), rng);
    for (auto & c : color)
        c = rename[c - 1];
    return Coloring{n, 3, colors, Domain::all_ksubsets, std::move(color)};
}

auto triangle_family_k3(int n) -> Family
{
    Family family;
    for (const auto & w : enum_ksubsets(n, 3))
        if (std::popcount(w.mask() & 0b111U) >= 2)
            family.push_back(w);
    return family;
}

auto hilton_milner_k3(int n) -> Family
{
    const auto f = KSubset::from_elements(n, {2, 3, 4});
    Family family;
    for (const auto & w : enum_ksubsets(n, 3))
        if (w == f || (w.contains(1) && ! disjoint(w, f)))
            family.push_back(w);
    return family;
}

auto sunflower_k3(int n, int kernel_size) -> Family
{
    if (kernel_size < 0 || kernel_size > 2)
        throw InvalidParameters("sunflower_k3: kernel size must be 0, 1 or 2");
    Family family;
    const int petal = 3 - kernel_size;
    std::uint64_t kernel = 0;
    for (int e = 1; e <= kernel_size; ++e)
        kernel |= bit(e);
    for (int start = kernel_size + 1; start + petal - 1 <= n; start += petal) {
        std::uint64_t m = kernel;
        for (int e = start; e < start + petal; ++e)
            m |= bit(e);
        family.push_back(KSubset::from_mask(n, m));
    }
    return family;
}

auto greedy_intersecting_k3(int n, Rng & rng) -> Family
{
    auto order = enum_ksubsets(n, 3);
    std::shuffle(order.begin(), order.end(), rng);
    Family family;
    for (const auto & w : order)
        if (std::none_of(family.begin(), family.end(), [&w](const KSubset & v) { return disjoint(v, w); }))
            family.push_back(w);
    std::sort(family.begin(), family.end());
    return family;
}

namespace {

auto from_lists(int n, std::initializer_list<std::initializer_list<int>> lists) -> Family
{
    Family family;
    for (auto l : lists)
        family.push_back(KSubset::from_elements(n, l));
    std::sort(family.begin(), family.end());
    return family;
}

} // namespace

auto structured_families_k3(int n) -> std::vector<Family>
{
    std::vector<Family> out;
    out.push_back({});
    out.push_back(from_lists(n, {{1, 2, 3}}));
    out.push_back(from_lists(n, {{1, 2, 3}, {4, 5, 6}}));
    out.push_back(star_family(n, 3, 1));
    out.push_back(star_family(n, 3, n));
    out.push_back(triangle_family_k3(n));
    out.push_back(hilton_milner_k3(n));
    for (int kernel = 0; kernel <= 2; ++kernel)
        out.push_back(sunflower_k3(n, kernel));

    // {1,2,3}, one B member {2,4,5}, and every {1,4,x}, {1,5,x}: |A| = 2n-7
    {
        Family fan = from_lists(n, {{1, 2, 3}, {2, 4, 5}});
        for (const auto & w : enum_ksubsets(n, 3))
            if (w.contains(1) && ! w.contains(2) && (w.contains(4) || w.contains(5)))
                fan.push_back(w);
        std::sort(fan.begin(), fan.end());
        out.push_back(std::move(fan));
    }
    // three B members pairwise meeting in two elements, A members covering two of {4,5,6}
    out.push_back(from_lists(n, {{1, 2, 3}, {2, 4, 5}, {2, 5, 6}, {2, 4, 6}, {1, 4, 5}, {1, 5, 6}, {1, 4, 6}}));
    out.push_back(from_lists(n, {{1, 2, 3}, {2, 4, 5}, {2, 5, 6}, {2, 4, 6}, {1, 4, 5}, {1, 5, 6}, {1, 4, 6}, {3, 4, 5}}));
    // the Fano plane on {1..7}
    out.push_back(from_lists(n, {{1, 2, 3}, {1, 4, 5}, {1, 6, 7}, {2, 4, 6}, {2, 5, 7}, {3, 4, 7}, {3, 5, 6}}));
    return out;
}

auto random_family_k3(int n, Rng & rng) -> Family
{
    const auto sets = enum_ksubsets(n, 3);
    std::bernoulli_distribution coin(0.5);
    Family family;
    auto subfamily = [&](const Family & base, double keep) {
        std::bernoulli_distribution k(keep);
        for (const auto & w : base)
            if (k(rng))
                family.push_back(w);
    };
    switch (std::uniform_int_distribution<int>(0, 4)(rng)) {
    case 0: {
        std::bernoulli_distribution sparse(4.0 / static_cast<double>(sets.size()));
        for (const auto & w : sets)
            if (sparse(rng))
                family.push_back(w);
        break;
    }
    case 1: subfamily(greedy_intersecting_k3(n, rng), 1.0); break;
    case 2: subfamily(greedy_intersecting_k3(n, rng), 0.7); break;
    case 3: subfamily(coin(rng) ? triangle_family_k3(n) : hilton_milner_k3(n), 0.8); break;
    default: subfamily(star_family(n, 3, std::uniform_int_distribution<int>(1, n)(rng)), 0.6); break;
    }
    if (coin(rng)) {
        const auto extra = sets[std::uniform_int_distribution<std::size_t>(0, sets.size() - 1)(rng)];
        if (std::find(family.begin(), family.end(), extra) == family.end())
            family.push_back(extra);
    }
    std::sort(family.begin(), family.end());
    return family;
}

} // namespace kneser
