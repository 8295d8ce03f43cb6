#pragma once

#include <kneser/formula.hpp>

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kneser {

class ContractViolation : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// A total variable map Var(source) -> Var(target) preserving the color index.
struct Substitution
{
    InstanceDescriptor source;
    InstanceDescriptor target;
    std::vector<int> map; // map[v - 1] is the image of source variable v

    auto operator()(int var) const -> int;
    auto operator()(Lit lit) const -> Lit;
    auto apply(const Clause & clause) const -> Clause;
};

// The identity map on an instance's variables.
auto identity_substitution(const InstanceDescriptor & instance) -> Substitution;

// Which of the two defining cases sends the (k+1)-set A to a k-subset of [n-2].
enum class PhiCase
{
    firsts,      // firsts(A, k) inside [n-2]: image firsts(A, k)
    top_pair     // {n-1, n} inside A: image P + {lambda}
};

struct PhiImage
{
    KSubset image;
    PhiCase which;
};

// Set-level map for a (k+1)-subset A of [n]; the image is a k-subset of [n-2].
auto phi_set(const KSubset & a, int k) -> PhiImage;

// Phi_k : Var(variant_{k+1,n}) -> Var(variant_{k,n-2}).
auto build_phi(int k, int n, Variant variant) -> Substitution;

// Chains build_phi from k_top down to 1; k_top = 1 gives the identity.
auto compose_phi(int k_top, int n_top, Variant variant) -> Substitution;

// a then b (b.source must equal a.target).
auto compose(const Substitution & a, const Substitution & b) -> Substitution;

// Rewrites each clause variable-wise.  With dedupe, repeated image clauses
// collapse to their first occurrence.
auto apply_to_cnf(const Substitution & phi, const Cnf & source, bool dedupe) -> Cnf;

struct ImageReport
{
    InstanceDescriptor source;
    InstanceDescriptor target;
    bool pass = false;

    std::size_t source_clauses = 0;
    std::size_t distinct_image_clauses = 0;
    std::size_t target_clauses = 0;
    std::size_t max_multiplicity = 0;
    std::size_t repeated_targets = 0; // target clauses with at least two preimages
    std::size_t ant_witnesses = 0;
    std::size_t cons_witnesses = 0;
    std::size_t onto_witnesses = 0;

    std::optional<std::string> counterexample;

    auto summary() const -> std::string;
    void write_machine(std::ostream &) const;
};

// Checks that the deduplicated image of the source instance is exactly the
// target clause set, and builds an explicit preimage for every target clause
// (stable preimages for the Schrijver variants).
auto verify_image(Variant variant, int k, int n) -> ImageReport;

// Two columns "source-id target-id", one line per source variable.
void write_substitution(const Substitution & phi, std::ostream & out);

} // namespace kneser
