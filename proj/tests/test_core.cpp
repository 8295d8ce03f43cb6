#include <doctest.h>

#include "support/oracles.hpp"

#include <kneser/core.hpp>

#include <algorithm>
#include <bit>
#include <set>

using namespace kneser;

namespace {

// Cyclic adjacency checked element by element on the sorted list.
auto stable_by_definition(const KSubset & s) -> bool
{
    const auto e = s.elements();
    for (std::size_t i = 0; i + 1 < e.size(); ++i)
        if (e[i + 1] - e[i] == 1)
            return false;
    return ! (e.size() >= 2 && e.front() == 1 && e.back() == s.n());
}

} // namespace

TEST_CASE("binomial agrees with factorials")
{
    for (int m = 0; m <= 30; ++m)
        for (int r = -1; r <= m + 1; ++r)
            CHECK(binomial(m, r) == testing::factorial_binomial(m, r));
    CHECK(binomial(62, 31) == 465428353255261088ULL);
}

TEST_CASE("enumeration is colex ordered and complete")
{
    for (int n = 2; n <= 12; ++n)
        for (int k = 1; 2 * k <= n; ++k) {
            const auto sets = enum_ksubsets(n, k);
            REQUIRE(sets.size() == testing::factorial_binomial(n, k));
            CHECK(std::is_sorted(sets.begin(), sets.end()));
            CHECK(std::adjacent_find(sets.begin(), sets.end()) == sets.end());
            for (std::size_t i = 0; i < sets.size(); ++i) {
                CHECK(sets[i].k() == k);
                CHECK(colex_rank(sets[i]) == i);
                CHECK(colex_unrank(i, n, k) == sets[i]);
            }
        }
}

TEST_CASE("colex order compares largest differing element")
{
    const auto a = KSubset::from_elements(5, {1, 4});
    const auto b = KSubset::from_elements(5, {2, 3});
    const auto c = KSubset::from_elements(5, {1, 5});
    CHECK(b < a);
    CHECK(a < c);
    CHECK(colex_rank(KSubset::from_elements(5, {1, 2})) == 0);
    CHECK(colex_rank(KSubset::from_elements(5, {4, 5})) == 9);
}

TEST_CASE("stable sets match the cyclic definition and the closed-form count")
{
    for (int n = 2; n <= 14; ++n)
        for (int k = 1; 2 * k <= n; ++k) {
            const auto all = enum_ksubsets(n, k);
            const auto stable = enum_stable(n, k);
            std::vector<KSubset> expected;
            for (const auto & s : all)
                if (stable_by_definition(s))
                    expected.push_back(s);
            CHECK(stable == expected);
            // n/(n-k) * C(n-k, k)
            CHECK(stable.size() * static_cast<std::size_t>(n - k) == static_cast<std::size_t>(n) * testing::factorial_binomial(n - k, k));
            for (const auto & s : all)
                CHECK(is_stable(s) == stable_by_definition(s));
        }
    CHECK_FALSE(is_stable(KSubset::from_elements(6, {1, 6})));
    CHECK(is_stable(KSubset::from_elements(6, {1, 5})));
}

TEST_CASE("subset construction validates elements")
{
    CHECK(KSubset::from_elements(6, {5, 2, 3}) == KSubset::from_elements(6, {2, 3, 5}));
    CHECK_THROWS_AS(KSubset::from_elements(6, {0, 2}), InvalidParameters);
    CHECK_THROWS_AS(KSubset::from_elements(6, {2, 7}), InvalidParameters);
    CHECK_THROWS_AS(KSubset::from_elements(6, {2, 2}), InvalidParameters);
    const auto s = KSubset::from_elements(9, {2, 5, 9});
    CHECK(s.smallest() == 2);
    CHECK(s.largest() == 9);
    CHECK(s.elements() == std::vector<int>{2, 5, 9});
    CHECK(firsts(s, 2) == KSubset::from_elements(9, {2, 5}));
    CHECK(disjoint(s, KSubset::from_elements(9, {1, 3, 4})));
    CHECK_FALSE(disjoint(s, KSubset::from_elements(9, {1, 5})));
}

TEST_CASE("parameter validation")
{
    CHECK_NOTHROW(validate_parameters(4, 2));
    CHECK_THROWS_AS(validate_parameters(3, 2), InvalidParameters);
    CHECK_THROWS_AS(validate_parameters(5, 0), InvalidParameters);
    CHECK_THROWS_AS(validate_parameters(63, 2), InvalidParameters);
    CHECK_THROWS_AS(parse_domain("unstable"), InvalidParameters);
}

TEST_CASE("variable numbering round-trips")
{
    for (auto domain : {Domain::all_ksubsets, Domain::stable_only})
        for (int n = 4; n <= 10; ++n)
            for (int k = 1; 2 * k <= n; ++k) {
                const int colors = n - 2 * k + 1;
                const VarNumbering numbering{n, k, colors, domain};
                const auto sets = enum_domain(n, k, domain);
                CHECK(numbering.num_vars() == static_cast<int>(sets.size()) * colors);
                std::set<int> seen;
                for (std::size_t r = 0; r < sets.size(); ++r)
                    for (int c = 1; c <= colors; ++c) {
                        const int v = numbering.var(sets[r], c);
                        CHECK(v == static_cast<int>(r) * colors + c);
                        const auto d = numbering.decode(v);
                        CHECK(d.subset == sets[r]);
                        CHECK(d.color == c);
                        seen.insert(v);
                    }
                CHECK(seen.size() == static_cast<std::size_t>(numbering.num_vars()));
                CHECK(*seen.begin() == 1);
                CHECK(*seen.rbegin() == numbering.num_vars());
            }
    const VarNumbering stable{6, 2, 3, Domain::stable_only};
    CHECK_THROWS(stable.rank_of(KSubset::from_elements(6, {1, 2})));
    CHECK_FALSE(stable.contains(KSubset::from_elements(6, {1, 6})));
}

TEST_CASE("coloring validation")
{
    Coloring c{5, 2, 2, Domain::all_ksubsets, std::vector<int>(10, 1)};
    CHECK_NOTHROW(c.validate());
    c.color_of[3] = 3;
    CHECK_THROWS_AS(c.validate(), InvalidParameters);
    c.color_of.pop_back();
    CHECK_THROWS_AS(c.validate(), InvalidParameters);
}
