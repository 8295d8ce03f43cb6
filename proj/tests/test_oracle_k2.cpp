#include <doctest.h>

#include "support/oracles.hpp"

#include <kneser/oracle.hpp>

#include <sstream>

using namespace kneser;

namespace {

auto pair_index(int n, int a, int b) -> std::size_t
{
    return static_cast<std::size_t>(colex_rank(KSubset::from_elements(n, {a, b})));
}

// Brute-force facts about a family of 2-subsets.
struct Facts
{
    bool has_disjoint = false;
    bool has_common = false;
    std::size_t size = 0;
};

auto facts(int n, const Family & f) -> Facts
{
    Facts out;
    out.size = f.size();
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = i + 1; j < f.size(); ++j) {
            const auto a = f[i].elements(), b = f[j].elements();
            if (a[0] != b[0] && a[0] != b[1] && a[1] != b[0] && a[1] != b[1])
                out.has_disjoint = true;
        }
    for (int x = 1; x <= n && ! f.empty(); ++x) {
        bool all = true;
        for (const auto & s : f)
            all = all && s.contains(x);
        out.has_common = out.has_common || all;
    }
    return out;
}

auto coloring_from(int n, const std::vector<int> & colors) -> Coloring
{
    Coloring c{n, 2, n - 3, Domain::all_ksubsets, colors};
    c.validate();
    return c;
}

} // namespace

TEST_CASE("trichotomy exhaustive at n = 5 with the fixed preference")
{
    const int n = 5;
    const auto sets = enum_ksubsets(n, 2);
    for (std::uint32_t m = 0; m < (1U << sets.size()); ++m) {
        Family f;
        for (std::size_t i = 0; i < sets.size(); ++i)
            if ((m >> i) & 1U)
                f.push_back(sets[i]);
        const auto v = class_trichotomy_k2(n, f);
        const auto fact = facts(n, f);
        REQUIRE(verify_alternative(f, v.alternative, 3));
        if (fact.has_disjoint)
            CHECK(std::holds_alternative<DisjointPair>(v.alternative));
        else if (fact.has_common)
            CHECK(std::holds_alternative<CommonElement>(v.alternative));
        else {
            CHECK(std::holds_alternative<Small>(v.alternative));
            CHECK(fact.size <= 3);
        }
    }
    CHECK(std::holds_alternative<Small>(class_trichotomy_k2(n, {}).alternative));
}

TEST_CASE("triangle is the only large-common-free intersecting shape")
{
    const Family triangle{KSubset::from_elements(6, {1, 2}), KSubset::from_elements(6, {1, 3}), KSubset::from_elements(6, {2, 3})};
    const auto v = class_trichotomy_k2(6, triangle);
    REQUIRE(std::holds_alternative<Small>(v.alternative));
    CHECK(std::get<Small>(v.alternative).size == 3);
    const Family star{KSubset::from_elements(6, {1, 2}), KSubset::from_elements(6, {1, 5}), KSubset::from_elements(6, {1, 6}),
        KSubset::from_elements(6, {1, 3})};
    const auto s = class_trichotomy_k2(6, star);
    REQUIRE(std::holds_alternative<CommonElement>(s.alternative));
    CHECK(std::get<CommonElement>(s.alternative).x == 1);
    CHECK_FALSE(verify_alternative(star, Small{4}, 3));
    CHECK_FALSE(verify_alternative(star, CommonElement{2}, 3));
}

TEST_CASE("four-set lemma exhaustive for n <= 7")
{
    for (int n = 4; n <= 7; ++n) {
        const auto sets = enum_ksubsets(n, 2);
        for (std::size_t a = 0; a < sets.size(); ++a)
            for (std::size_t b = a + 1; b < sets.size(); ++b)
                for (std::size_t c = b + 1; c < sets.size(); ++c)
                    for (std::size_t d = c + 1; d < sets.size(); ++d) {
                        const KSubset quad[4] = {sets[a], sets[b], sets[c], sets[d]};
                        const auto v = four_set_lemma(quad[0], quad[1], quad[2], quad[3]);
                        if (const auto * p = std::get_if<DisjointAmong>(&v)) {
                            CHECK(p->i != p->j);
                            CHECK(disjoint(quad[p->i], quad[p->j]));
                        }
                        else {
                            const auto & star = std::get<StarPoint>(v);
                            std::uint64_t u = 0, i = ~std::uint64_t{0};
                            for (const auto & s : quad) {
                                u |= s.mask();
                                i &= s.mask();
                            }
                            CHECK(std::popcount(u) == 5);
                            CHECK(std::popcount(i) == 1);
                            CHECK(i == (std::uint64_t{1} << (star.x - 1)));
                            CHECK(star.union_set.mask() == u);
                        }
                    }
    }
    const auto star = four_set_lemma(KSubset::from_elements(5, {1, 2}), KSubset::from_elements(5, {1, 3}),
        KSubset::from_elements(5, {1, 4}), KSubset::from_elements(5, {1, 5}));
    REQUIRE(std::holds_alternative<StarPoint>(star));
    CHECK(std::get<StarPoint>(star).x == 1);
    CHECK(std::holds_alternative<DisjointAmong>(four_set_lemma(KSubset::from_elements(5, {1, 2}),
        KSubset::from_elements(5, {3, 4}), KSubset::from_elements(5, {1, 3}), KSubset::from_elements(5, {2, 4}))));
    CHECK_THROWS(four_set_lemma(KSubset::from_elements(5, {1, 2}), KSubset::from_elements(5, {1, 2}),
        KSubset::from_elements(5, {1, 3}), KSubset::from_elements(5, {1, 4})));
}

TEST_CASE("chain quantities on worked colorings")
{
    SUBCASE("r = 0")
    {
        Rng rng{3};
        const auto row = compute_chain_k2(random_coloring(7, 2, 4, Domain::all_ksubsets, rng), 0);
        CHECK(row.p == 0);
        CHECK(row.M == 0);
        CHECK(row.N == 0);
        CHECK(row.U == 0);
        CHECK(row.P2 == 0);
        CHECK_FALSE(row.witness);
    }
    SUBCASE("constant colour")
    {
        const auto row = compute_chain_k2(coloring_from(6, std::vector<int>(15, 1)), 1);
        CHECK(row.M == 15);
        CHECK(row.p == 0);
        CHECK(row.N == 3);
        CHECK(row.witness);
    }
    SUBCASE("star on 1")
    {
        std::vector<int> colors(15, 2);
        for (int x = 2; x <= 6; ++x)
            colors[pair_index(6, 1, x)] = 1;
        const auto row = compute_chain_k2(coloring_from(6, colors), 1);
        CHECK(row.p == 1);
        CHECK(row.s == 1);
        CHECK(row.q == 1);
        CHECK(row.M == 5);
        CHECK(row.M2 == 5);
        CHECK(row.U == 0);
        CHECK_FALSE(row.witness);
    }
    SUBCASE("a two-member star breaks the literal counting bound")
    {
        std::vector<int> colors(15, 2);
        colors[pair_index(6, 1, 2)] = 1;
        colors[pair_index(6, 1, 3)] = 1;
        const auto row = compute_chain_k2(coloring_from(6, colors), 1);
        CHECK(row.q == 0);
        CHECK(row.P2 == 2);
        CHECK(row.P2_big == 0);
        CHECK(row.U + row.P2 > row.q * 5);
        CHECK(row.U + row.P2_big <= row.q * 5);
    }
    CHECK_THROWS_AS(compute_chain_k2(coloring_from(6, std::vector<int>(15, 1)), 4), InvalidParameters);
}

TEST_CASE("N bound and final arithmetic")
{
    for (int n = 5; n <= 40; ++n) {
        std::int64_t best = 0;
        for (int p = 0; p <= n - 3; ++p) {
            const std::int64_t expected = std::int64_t{p} * (n - 1) - std::int64_t{p} * (p - 1) / 2 + 3 * (n - 3 - p);
            CHECK(chain_n_k2(n, p, n - 3) == expected);
            best = std::max(best, expected);
        }
        const auto bound = final_bound_k2(n);
        CHECK(bound.max_n == best);
        if (n <= 30)
            CHECK(bound.limit == static_cast<std::int64_t>(testing::factorial_binomial(n, 2)) - 3);
        CHECK(bound.pass());
    }
    CHECK(final_bound_k2(6).max_n == 12);
    for (int n = 5; n <= 100; ++n)
        CHECK(final_arithmetic_k2(n));
}

TEST_CASE("audits never pass without a witness")
{
    for (int n = 6; n <= 8; ++n) {
        Rng rng{static_cast<std::uint64_t>(n)};
        for (int t = 0; t < 60; ++t) {
            const auto coloring = t % 2 ? random_coloring(n, 2, n - 3, Domain::all_ksubsets, rng) : structured_coloring_k2(n, rng);
            const auto audit = audit_k2(coloring);
            CHECK(audit.pass());
            REQUIRE(audit.witness_r);
            CHECK(audit.rows.size() == static_cast<std::size_t>(n - 2));
            for (const auto & row : audit.rows) {
                CHECK(row.U == row.q * (row.q - 1) / 2);
                CHECK(row.M == row.M1 + row.M2);
                CHECK(row.s <= row.p);
            }
            for (std::size_t r = 1; r < audit.rows.size(); ++r) {
                CHECK(audit.rows[r].M >= audit.rows[r - 1].M);
                CHECK(audit.rows[r].N >= audit.rows[r - 1].N);
            }
            const auto pair = find_mono_disjoint(coloring);
            CHECK(disjoint(pair.first, pair.second));
        }
    }
}

TEST_CASE("audit report lines")
{
    Rng rng{9};
    const auto audit = audit_k2(structured_coloring_k2(7, rng));
    std::ostringstream out;
    audit.write(out);
    CHECK(out.str().find("kind=chain-row") != std::string::npos);
    CHECK(out.str().find("kind=audit-k2") != std::string::npos);
    CHECK(audit.count(FindingStatus::fail) == 0);
}
