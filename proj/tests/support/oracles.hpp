#pragma once

// Independent reference implementations used only by the tests.

#include <kneser/formula.hpp>
#include <kneser/resolution.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace kneser::testing {

// m! / (r! (m-r)!) in 128-bit arithmetic; m <= 30.
auto factorial_binomial(int m, int r) -> std::uint64_t;

// Bit-by-bit population count.
auto naive_popcount(std::uint64_t x) -> int;

// Truth-table satisfiability check for at most 24 variables.
// Returns a satisfying assignment (bit v-1 = value of v) or nullopt.
auto brute_force_sat(const Cnf & cnf) -> std::optional<std::uint32_t>;

// Tree-like resolution refutation built by DPLL branching.  Throws if the
// formula is satisfiable.
auto dpll_refutation(const Cnf & cnf) -> ResolutionProof;

// True iff every clause of cnf is satisfied by the assignment.
auto satisfies(const Cnf & cnf, const std::vector<bool> & assignment) -> bool;

// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir
{
public:
    explicit TempDir(const std::string & tag);
    TempDir(const TempDir &) = delete;
    auto operator=(const TempDir &) -> TempDir & = delete;
    ~TempDir();

    auto path() const -> const std::filesystem::path & { return _path; }

private:
    std::filesystem::path _path;
};

} // namespace kneser::testing
