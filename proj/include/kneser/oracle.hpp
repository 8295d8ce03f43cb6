#pragma once

// Semantic oracles for the k = 2 and k = 3 cases: class trichotomies, the
// k = 2 counting chain, the k = 3 class bound with its case analysis, and
// inductive extraction of a monochromatic disjoint pair.

#include <kneser/core.hpp>
#include <kneser/formula.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

namespace kneser {

using Family = std::vector<KSubset>;

struct DisjointPair
{
    KSubset first;
    KSubset second;
};

struct CommonElement
{
    int x = 0;
};

struct Small
{
    std::size_t size = 0;
};

using ClassAlternative = std::variant<DisjointPair, Small, CommonElement>;

auto alternative_name(const ClassAlternative &) -> std::string;
// Re-checks the witness carried by the alternative against the family.
auto verify_alternative(const Family & family, const ClassAlternative & alt, std::size_t small_limit) -> bool;

auto find_disjoint_pair(const Family & family) -> std::optional<DisjointPair>;
// Mask of elements common to every member; all of [n] for the empty family.
auto common_mask(int n, const Family & family) -> std::uint64_t;

struct MonoPair
{
    KSubset first;
    KSubset second;
    int color = 0;

    auto to_string() const -> std::string;
};

// Colour classes of a coloring, indexed by colour - 1.
auto color_classes(const Coloring & coloring) -> std::vector<Family>;

// Direct scan; k in {1, 2, 3}, colors = n - 2k + 1.
auto find_mono_disjoint(const Coloring & coloring) -> MonoPair;

// ---- k = 2 -----------------------------------------------------------------

struct ClassVerdictK2
{
    ClassAlternative alternative;
};

// Preference when several hold: DisjointPair, CommonElement, Small.
auto class_trichotomy_k2(int n, const Family & family) -> ClassVerdictK2;

struct DisjointAmong
{
    int i = 0; // 0-based positions in the argument list
    int j = 0;
};

struct StarPoint
{
    int x = 0;
    KSubset union_set;
};

using FourSetVerdict = std::variant<DisjointAmong, StarPoint>;

auto four_set_lemma(const KSubset & a, const KSubset & b, const KSubset & c, const KSubset & d) -> FourSetVerdict;

struct ChainRowK2
{
    int r = 0;
    std::int64_t p = 0, s = 0, q = 0;
    std::int64_t M = 0, N = 0;
    std::int64_t M1 = 0, M2 = 0, Q1 = 0;
    // P2 as literally defined, and restricted to classes with at least four members
    std::int64_t P2 = 0, P2_big = 0;
    std::int64_t U = 0;
    // first disjoint co-coloured pair among colours 1..r, if any
    std::optional<MonoPair> witness;
};

auto chain_n_k2(int n, std::int64_t p, int r) -> std::int64_t;
auto compute_chain_k2(const Coloring & coloring, int r) -> ChainRowK2;

enum class FindingStatus
{
    pass,
    fail,
    vacuous,
    info
};

auto finding_status_name(FindingStatus) -> std::string;

struct AuditFinding
{
    std::string check;
    int r = 0;
    FindingStatus status = FindingStatus::pass;
    std::string detail;
};

struct ChainAuditK2
{
    int n = 0;
    std::vector<ChainRowK2> rows;
    std::vector<AuditFinding> findings;
    // smallest r whose colours 1..r contain a disjoint co-coloured pair
    std::optional<int> witness_r;

    // No failing finding: informational and vacuous rows do not count.
    auto pass() const -> bool;
    auto count(FindingStatus) const -> std::size_t;
    void write(std::ostream & out) const;
};

// Colours n - 3, all 2-subsets.
auto audit_k2(const Coloring & coloring) -> ChainAuditK2;

// max over p in [0, n-3] of N_{n-3}, compared with C(n,2) - 3.
struct FinalBoundK2
{
    int n = 0;
    std::int64_t max_n = 0;
    int argmax_p = 0;
    std::int64_t limit = 0;
    auto pass() const -> bool { return max_n <= limit; }
};

auto final_bound_k2(int n) -> FinalBoundK2;

// C(n,2) + C(n-3,2) > (n-1)(n-3), cross-checked against 2n^2-8n+12 > 2n^2-8n+6.
auto final_arithmetic_k2(int n) -> bool;

// ---- k = 3 -----------------------------------------------------------------

struct Triple
{
    int a = 0, b = 0, c = 0;
};

auto greedy_abc(const Family & family) -> Triple;

struct PartitionABCD
{
    Family A, B, C, D;
    // a member missing a, b and c, paired with {a, b, c}
    std::optional<DisjointPair> witness;
};

auto partition_abcd(const Family & family, const Triple & t) -> PartitionABCD;

struct ClassAnalysisK3
{
    int n = 0;
    std::size_t size = 0;
    std::optional<Triple> chosen;
    PartitionABCD parts;
    ClassAlternative alternative;
    // case labels (0 when the Small path was not reached)
    int ab_case = 0;
    int cd_case = 0;
    // |A| <= n-3: recorded only, not implied in every case (|A| + |B| is what sums up)
    bool a_bound = true;
    bool ab_bound = true; // |A| + |B| <= 2n-6
    bool cd_bound = true; // |C| + |D| <= n-2
    bool greedy_order = true; // |A| >= |B| >= |C|

    auto bounds_hold() const -> bool { return ab_bound && cd_bound; }
};

// n >= 7.  Throws InternalInconsistency if no alternative holds.
auto class_bound_k3(int n, const Family & family) -> ClassAnalysisK3;

struct ExtractionK3
{
    MonoPair pair;
    std::vector<std::string> trace;
};

// Colours n - 5 over all 3-subsets, n >= 7.  Follows the induction on n.
auto find_mono_disjoint_k3(const Coloring & coloring) -> ExtractionK3;

enum class N3Summand
{
    definition, // 3n - 7
    class_bound // 3n - 8
};

auto n3_summand_name(N3Summand) -> std::string;
auto n3_bound(int n, int p, N3Summand summand) -> std::int64_t;
// Smallest p in [0, n-5] with n3_bound(n, p) >= C(n,3).
auto n3_failure_p(int n, N3Summand summand) -> std::optional<int>;

// ---- sampling ----------------------------------------------------------------

using Rng = std::mt19937_64;

auto random_coloring(int n, int k, int colors, Domain domain, Rng & rng) -> Coloring;
// Star classes on random centres first, then small classes, then uniform noise;
// keeps the no-disjoint-pair antecedent alive for several leading colours.
auto structured_coloring_k2(int n, Rng & rng) -> Coloring;
// Random 2-subset families of [n]: subfamilies of stars and triangles with noise.
auto random_family_k2(int n, Rng & rng) -> Family;

// k = 3, n - 5 colours: some colours are stars on random centres (subsets of the
// uncoloured triples through the centre), the rest are uniform over the other colours.
auto structured_coloring_k3(int n, Rng & rng) -> Coloring;

auto star_family(int n, int k, int centre) -> Family;
auto triangle_family_k3(int n) -> Family; // members meeting {1,2,3} in at least two elements
auto hilton_milner_k3(int n) -> Family;
auto sunflower_k3(int n, int kernel_size) -> Family;
auto greedy_intersecting_k3(int n, Rng & rng) -> Family;
// Fixed adversarial families: stars, triangle, Hilton-Milner, sunflowers, Fano and
// hand-built configurations that reach the individual case labels.
auto structured_families_k3(int n) -> std::vector<Family>;
auto random_family_k3(int n, Rng & rng) -> Family;

} // namespace kneser
