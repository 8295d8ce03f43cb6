#include <doctest.h>

#include <kneser/substitution.hpp>

#include <algorithm>
#include <set>
#include <sstream>

using namespace kneser;

namespace {

// Element-list form of the set map.
auto phi_by_hand(const std::vector<int> & a, int n, int k) -> std::vector<int>
{
    std::vector<int> first(a.begin(), a.begin() + k);
    if (first.back() <= n - 2)
        return first;
    std::vector<int> p;
    for (int e : a)
        if (e < n - 1)
            p.push_back(e);
    int lambda = n - 2;
    while (std::find(p.begin(), p.end(), lambda) != p.end())
        --lambda;
    p.push_back(lambda);
    std::sort(p.begin(), p.end());
    return p;
}

auto image_by_hand(const Substitution & phi, const Cnf & source) -> std::set<Clause>
{
    std::set<Clause> out;
    for (const auto & c : source.clauses) {
        std::vector<Lit> lits;
        for (auto l : c) {
            const int v = phi.map.at(static_cast<std::size_t>(l.var() - 1));
            lits.push_back(l.positive() ? Lit::pos(v) : Lit::neg(v));
        }
        out.insert(Clause{lits});
    }
    return out;
}

} // namespace

TEST_CASE("set map on worked examples")
{
    const auto a = phi_set(KSubset::from_elements(5, {4, 5}), 1);
    CHECK(a.which == PhiCase::top_pair);
    CHECK(a.image == KSubset::from_elements(3, {3}));
    const auto b = phi_set(KSubset::from_elements(8, {2, 7, 8}), 2);
    CHECK(b.which == PhiCase::top_pair);
    CHECK(b.image == KSubset::from_elements(6, {2, 6}));
    const auto c = phi_set(KSubset::from_elements(8, {1, 3, 8}), 2);
    CHECK(c.which == PhiCase::firsts);
    CHECK(c.image == KSubset::from_elements(6, {1, 3}));
    CHECK(phi_set(KSubset::from_elements(8, {5, 6, 7, 8}), 3).image == KSubset::from_elements(6, {4, 5, 6}));
    CHECK_THROWS_AS(phi_set(KSubset::from_elements(8, {1, 2}), 2), InvalidParameters);
}

TEST_CASE("set map matches the element-list definition and keeps disjointness")
{
    for (int k = 1; k <= 3; ++k)
        for (int n = 2 * k + 2; n <= 11; ++n) {
            const auto sets = enum_ksubsets(n, k + 1);
            std::vector<KSubset> images;
            for (const auto & s : sets) {
                const auto img = phi_set(s, k).image;
                CHECK(img.n() == n - 2);
                CHECK(img.elements() == phi_by_hand(s.elements(), n, k));
                images.push_back(img);
            }
            for (std::size_t i = 0; i < sets.size(); ++i)
                for (std::size_t j = i + 1; j < sets.size(); ++j)
                    if (disjoint(sets[i], sets[j]))
                        CHECK(disjoint(images[i], images[j]));
        }
}

TEST_CASE("stable sets map to stable sets")
{
    for (int k = 1; k <= 3; ++k)
        for (int n = 2 * k + 2; n <= 12; ++n)
            for (const auto & s : enum_stable(n, k + 1))
                CHECK(is_stable(phi_set(s, k).image));
}

TEST_CASE("substitution image equals the target formula")
{
    for (auto variant : {Variant::kneser, Variant::kneser_onto, Variant::schrijver, Variant::schrijver_onto})
        for (int k = 1; k <= 3; ++k)
            for (int n = 2 * k + 2; n <= 10; ++n) {
                INFO(variant_name(variant), " k=", k, " n=", n);
                const auto phi = build_phi(k, n, variant);
                CHECK(phi.source.colors == phi.target.colors);
                const auto source = gen_cnf(phi.source);
                const auto target = gen_cnf(phi.target);
                CHECK(image_by_hand(phi, source) == std::set<Clause>(target.clauses.begin(), target.clauses.end()));

                const auto report = verify_image(variant, k, n);
                CHECK(report.pass);
                CHECK(report.distinct_image_clauses == target.clauses.size());
                CHECK(report.source_clauses == source.clauses.size());
                CHECK_FALSE(report.counterexample);

                const auto applied = apply_to_cnf(phi, source, true);
                CHECK(std::set<Clause>(applied.clauses.begin(), applied.clauses.end()).size() == applied.clauses.size());
                CHECK(apply_to_cnf(phi, source, false).clauses.size() == source.clauses.size());
            }
}

TEST_CASE("report summary and machine lines")
{
    const auto report = verify_image(Variant::kneser, 1, 5);
    CHECK(report.summary().find("Kneser_{1,3}") != std::string::npos);
    CHECK(report.summary().find("PASS") != std::string::npos);
    std::ostringstream out;
    report.write_machine(out);
    CHECK(out.str().find("verdict=pass") != std::string::npos);
}

TEST_CASE("composition")
{
    const auto chain = compose_phi(3, 10, Variant::kneser);
    CHECK(chain.source == make_descriptor(Variant::kneser, 10, 3));
    CHECK(chain.target == make_descriptor(Variant::kneser, 6, 1));
    const auto manual = compose(build_phi(2, 10, Variant::kneser), build_phi(1, 8, Variant::kneser));
    CHECK(chain.map == manual.map);
    const auto id = compose_phi(1, 7, Variant::kneser);
    for (int v = 1; v <= static_cast<int>(id.map.size()); ++v)
        CHECK(id(v) == v);
    CHECK_THROWS(compose(build_phi(1, 8, Variant::kneser), build_phi(1, 8, Variant::kneser)));
    CHECK_THROWS_AS(build_phi(2, 5, Variant::kneser), InvalidParameters);
    CHECK_THROWS_AS(build_phi(1, 6, Variant::php), InvalidParameters);
}

TEST_CASE("substitution file format")
{
    const auto phi = build_phi(1, 5, Variant::kneser);
    std::ostringstream out;
    write_substitution(phi, out);
    std::istringstream in(out.str());
    std::string header;
    std::getline(in, header);
    CHECK(header.rfind("c substitution", 0) == 0);
    int s = 0, t = 0, lines = 0;
    while (in >> s >> t) {
        ++lines;
        CHECK(phi(s) == t);
    }
    CHECK(lines == static_cast<int>(phi.map.size()));
}
