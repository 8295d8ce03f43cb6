#pragma once

#include <kneser/formula.hpp>
#include <kneser/substitution.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace kneser {

struct ProofStep
{
    enum class Kind
    {
        input,
        resolve
    };

    Kind kind = Kind::input;
    Clause clause;
    // 0-based indices of earlier steps, and the pivot variable (resolve only)
    std::size_t left = 0;
    std::size_t right = 0;
    int pivot = 0;

    static auto input(Clause c) -> ProofStep { return ProofStep{Kind::input, std::move(c), 0, 0, 0}; }
    static auto resolution(std::size_t left, std::size_t right, int pivot, Clause c) -> ProofStep
    {
        return ProofStep{Kind::resolve, std::move(c), left, right, pivot};
    }

    friend auto operator==(const ProofStep &, const ProofStep &) -> bool = default;
};

// A refutation whose conclusion is its final step.
struct ResolutionProof
{
    std::vector<ProofStep> steps;

    auto conclusion() const -> std::size_t { return steps.empty() ? 0 : steps.size() - 1; }
    auto size() const -> std::size_t { return steps.size(); }

    friend auto operator==(const ResolutionProof &, const ResolutionProof &) -> bool = default;
};

enum class CheckMode
{
    // Inputs verbatim in the formula, derived clauses exact resolvents.
    strict,
    // Also accepts weakenings: inputs that contain some formula clause, and
    // recorded clauses that contain the true resolvent (or a parent).
    tolerant
};

auto check_mode_name(CheckMode) -> std::string;

struct Verdict
{
    bool pass = false;
    std::optional<std::size_t> failed_step;
    std::string reason;
    std::size_t inputs = 0;
    std::size_t resolutions = 0;
    std::size_t weakenings = 0;

    explicit operator bool() const { return pass; }
    auto to_string() const -> std::string;
};

auto check_refutation(const Cnf & cnf, const ResolutionProof & proof, CheckMode mode) -> Verdict;

// Literal-wise image of every step under phi.  Step count is preserved;
// steps whose pivot collapses with another literal become weakenings.
auto transport(const ResolutionProof & proof, const Substitution & phi) -> ResolutionProof;

// Keeps only the steps the conclusion depends on, reindexed in order.
auto trim(const ResolutionProof & proof) -> ResolutionProof;

enum class ProofFormat
{
    native,
    rup
};

auto parse_proof_format(const std::string &) -> ProofFormat;

// Native text: "i <lits> 0" for inputs, "r a b p <lits> 0" for resolvents,
// with a and b the 1-based indices of earlier steps.  Lines starting 'c' are comments.
void emit_proof(const ResolutionProof & proof, std::ostream & out);
auto parse_native_proof(std::istream & in) -> ResolutionProof;

class NotRupDerivable : public std::runtime_error
{
public:
    NotRupDerivable(std::size_t lemma_index, std::size_t line, const Clause & clause);
    auto lemma_index() const -> std::size_t { return _lemma; }
    auto line() const -> std::size_t { return _line; }

private:
    std::size_t _lemma;
    std::size_t _line;
};

// Reads a DRUP/DRAT clause list (deletions ignored) and reconstructs a
// resolution refutation of cnf by unit propagation against prior clauses.
// Derived clauses are exact resolvents, so the result checks in strict mode.
auto import_rup(const Cnf & cnf, std::istream & in) -> ResolutionProof;

auto parse_proof(std::istream & in, ProofFormat format, const Cnf * cnf = nullptr) -> ResolutionProof;
auto read_proof_file(const std::string & path, ProofFormat format, const Cnf * cnf = nullptr) -> ResolutionProof;

} // namespace kneser
