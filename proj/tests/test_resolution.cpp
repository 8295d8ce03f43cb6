#include <doctest.h>

#include "support/oracles.hpp"

#include <kneser/resolution.hpp>

#include <sstream>

using namespace kneser;

namespace {

auto small_cnf() -> Cnf
{
    Cnf cnf;
    cnf.num_vars = 2;
    cnf.clauses = {Clause{1, 2}, Clause{1, -2}, Clause{-1, 2}, Clause{-1, -2}};
    return cnf;
}

auto small_proof() -> ResolutionProof
{
    ResolutionProof p;
    p.steps.push_back(ProofStep::input(Clause{1, 2}));
    p.steps.push_back(ProofStep::input(Clause{1, -2}));
    p.steps.push_back(ProofStep::resolution(0, 1, 2, Clause{1}));
    p.steps.push_back(ProofStep::input(Clause{-1, 2}));
    p.steps.push_back(ProofStep::input(Clause{-1, -2}));
    p.steps.push_back(ProofStep::resolution(3, 4, 2, Clause{-1}));
    p.steps.push_back(ProofStep::resolution(2, 5, 1, Clause{}));
    return p;
}

// Binary DRAT: 'a', literals as 2|l| + sign in little-endian base-128, then 0.
auto binary_drat(const std::vector<std::vector<int>> & lemmas) -> std::string
{
    std::string out;
    for (const auto & lemma : lemmas) {
        out.push_back('a');
        for (int l : lemma) {
            unsigned u = 2U * static_cast<unsigned>(l < 0 ? -l : l) + (l < 0 ? 1U : 0U);
            while (u > 127) {
                out.push_back(static_cast<char>((u & 127U) | 128U));
                u >>= 7;
            }
            out.push_back(static_cast<char>(u));
        }
        out.push_back('\0');
    }
    return out;
}

} // namespace

TEST_CASE("a hand-made refutation checks in both modes")
{
    const auto cnf = small_cnf();
    const auto proof = small_proof();
    const auto strict = check_refutation(cnf, proof, CheckMode::strict);
    CHECK(strict.pass);
    CHECK(strict.inputs == 4);
    CHECK(strict.resolutions == 3);
    CHECK(check_refutation(cnf, proof, CheckMode::tolerant).pass);
}

TEST_CASE("strict mode rejects malformed steps")
{
    const auto cnf = small_cnf();
    SUBCASE("input not in the formula")
    {
        auto p = small_proof();
        p.steps[0].clause = Clause{1, 2, 3};
        const auto v = check_refutation(cnf, p, CheckMode::strict);
        CHECK_FALSE(v.pass);
        CHECK(v.failed_step == 0);
        // tolerated as an input, but step 2 then records less than the resolvent
        CHECK_FALSE(check_refutation(cnf, p, CheckMode::tolerant).pass);
    }
    SUBCASE("wrong pivot")
    {
        auto p = small_proof();
        p.steps[2].pivot = 1;
        const auto v = check_refutation(cnf, p, CheckMode::strict);
        CHECK_FALSE(v.pass);
        CHECK(v.failed_step == 2);
    }
    SUBCASE("recorded clause is not the resolvent")
    {
        auto p = small_proof();
        p.steps[5].clause = Clause{-1, 2};
        CHECK_FALSE(check_refutation(cnf, p, CheckMode::strict).pass);
    }
    SUBCASE("forward reference")
    {
        auto p = small_proof();
        p.steps[2].right = 4;
        CHECK_FALSE(check_refutation(cnf, p, CheckMode::strict).pass);
    }
    SUBCASE("conclusion is not empty")
    {
        auto p = small_proof();
        p.steps.pop_back();
        const auto v = check_refutation(cnf, p, CheckMode::strict);
        CHECK_FALSE(v.pass);
        CHECK_FALSE(check_refutation(cnf, p, CheckMode::tolerant).pass);
    }
    SUBCASE("empty proof")
    {
        CHECK_FALSE(check_refutation(cnf, ResolutionProof{}, CheckMode::strict).pass);
    }
}

TEST_CASE("tolerant mode accepts weakenings")
{
    Cnf cnf;
    cnf.num_vars = 3;
    cnf.clauses = {Clause{1}, Clause{-1}, Clause{-3}, Clause{2}};

    SUBCASE("weakened input")
    {
        ResolutionProof p;
        p.steps.push_back(ProofStep::input(Clause{1, 3}));
        p.steps.push_back(ProofStep::input(Clause{-1}));
        p.steps.push_back(ProofStep::resolution(0, 1, 1, Clause{3}));
        p.steps.push_back(ProofStep::input(Clause{-3}));
        p.steps.push_back(ProofStep::resolution(2, 3, 3, Clause{}));
        CHECK_FALSE(check_refutation(cnf, p, CheckMode::strict).pass);
        const auto v = check_refutation(cnf, p, CheckMode::tolerant);
        CHECK(v.pass);
        CHECK(v.weakenings >= 1);
    }
    SUBCASE("collapsed pivot keeps a parent")
    {
        ResolutionProof p;
        p.steps.push_back(ProofStep::input(Clause{1}));
        p.steps.push_back(ProofStep::input(Clause{2}));
        p.steps.push_back(ProofStep::resolution(0, 1, 1, Clause{1}));
        p.steps.push_back(ProofStep::input(Clause{-1}));
        p.steps.push_back(ProofStep::resolution(2, 3, 1, Clause{}));
        CHECK_FALSE(check_refutation(cnf, p, CheckMode::strict).pass);
        CHECK(check_refutation(cnf, p, CheckMode::tolerant).pass);
    }
    SUBCASE("weakening must contain the resolvent")
    {
        ResolutionProof p;
        p.steps.push_back(ProofStep::input(Clause{1, 3}));
        p.steps.push_back(ProofStep::input(Clause{-1}));
        p.steps.push_back(ProofStep::resolution(0, 1, 1, Clause{}));
        CHECK_FALSE(check_refutation(cnf, p, CheckMode::tolerant).pass);
    }
}

TEST_CASE("native format round trip")
{
    const auto proof = small_proof();
    std::ostringstream out;
    emit_proof(proof, out);
    std::istringstream in(out.str());
    CHECK(parse_native_proof(in) == proof);
    std::istringstream bad("i 1 2 0\nr 1 5 2 1 0\n");
    CHECK_THROWS(parse_native_proof(bad));
}

TEST_CASE("text DRUP import reconstructs a strict refutation")
{
    const auto cnf = small_cnf();
    std::istringstream drup("1 0\nd 1 2 0\n0\n");
    const auto proof = import_rup(cnf, drup);
    CHECK(check_refutation(cnf, proof, CheckMode::strict).pass);
    CHECK(proof.steps.back().clause.empty());

    std::istringstream only_empty("0\n");
    CHECK_THROWS_AS(import_rup(cnf, only_empty), NotRupDerivable);

    Cnf weaker = cnf;
    weaker.clauses.pop_back();
    std::istringstream bogus("1 0\n0\n");
    CHECK_THROWS_AS(import_rup(weaker, bogus), NotRupDerivable);
}

TEST_CASE("binary DRAT import")
{
    const auto cnf = small_cnf();
    std::istringstream in(binary_drat({{1}, {}}));
    const auto proof = import_rup(cnf, in);
    CHECK(check_refutation(cnf, proof, CheckMode::strict).pass);
    std::istringstream strict(binary_drat({{-1}, {}}), std::ios::binary);
    CHECK(check_refutation(cnf, parse_proof(strict, ProofFormat::rup, &cnf), CheckMode::strict).pass);
}

TEST_CASE("DRUP import handles a pigeonhole refutation")
{
    // PHP with 3 pigeons and 2 holes through resolution-derivable lemmas
    const auto cnf = gen_cnf(Variant::php, 3, 1);
    std::istringstream drup("-1 0\n-3 0\n-5 0\n0\n");
    const auto proof = import_rup(cnf, drup);
    CHECK(check_refutation(cnf, proof, CheckMode::strict).pass);
}

TEST_CASE("DPLL refutations of small instances check strictly")
{
    for (const auto & cnf : {gen_cnf(Variant::kneser, 5, 2), gen_cnf(Variant::schrijver, 5, 2),
             gen_cnf(Variant::php, 5, 1), gen_cnf(Variant::kneser_onto, 6, 3)}) {
        const auto proof = testing::dpll_refutation(cnf);
        const auto strict = check_refutation(cnf, proof, CheckMode::strict);
        CHECK(strict.pass);
        CHECK(check_refutation(cnf, proof, CheckMode::tolerant).pass);
        CHECK(trim(proof) == proof);
    }
}

TEST_CASE("transport through the substitution keeps step count and checks tolerantly")
{
    for (auto variant : {Variant::kneser, Variant::schrijver, Variant::kneser_onto}) {
        const int n = variant == Variant::schrijver ? 6 : 5;
        INFO(variant_name(variant));
        const auto phi = build_phi(1, n, variant);
        const auto source = gen_cnf(phi.source);
        const auto target = gen_cnf(phi.target);
        const auto proof = testing::dpll_refutation(source);
        REQUIRE(check_refutation(source, proof, CheckMode::strict).pass);
        const auto moved = transport(proof, phi);
        CHECK(moved.size() == proof.size());
        const auto v = check_refutation(target, moved, CheckMode::tolerant);
        CHECK(v.pass);
        CHECK(v.inputs + v.resolutions + v.weakenings >= moved.size());
    }
}

TEST_CASE("trim drops unused steps")
{
    auto p = small_proof();
    p.steps.insert(p.steps.begin(), ProofStep::input(Clause{-1, -2}));
    for (auto & s : p.steps)
        if (s.kind == ProofStep::Kind::resolve) {
            ++s.left;
            ++s.right;
        }
    CHECK(check_refutation(small_cnf(), p, CheckMode::strict).pass);
    const auto t = trim(p);
    CHECK(t.size() == 7);
    CHECK(t == small_proof());
}
