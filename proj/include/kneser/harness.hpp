#pragma once

// External SAT solver runs and campaigns over instance grids.

#include <kneser/formula.hpp>

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace kneser {

struct SubprocessResult
{
    int exit_code = -1;
    bool timed_out = false;
    bool signaled = false;
    double seconds = 0;
    std::string output; // stdout and stderr, interleaved
};

class SubprocessError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Runs argv in its own process group; the whole group is killed at the deadline.
auto run_subprocess(const std::vector<std::string> & argv, std::chrono::duration<double> timeout) -> SubprocessResult;

class ConfigError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// How to call a solver and read its answer.  The command template is split on
// whitespace; {cnf} and {proof} are replaced by file paths.
struct SolverAdapter
{
    std::string name = "solver";
    std::string command;
    std::string proof_args; // appended when a proof is requested
    std::string sat_regex = "^s SATISFIABLE";
    std::string unsat_regex = "^s UNSATISFIABLE";
    std::string conflicts_regex = "conflicts\\s*:\\s*([0-9]+)";

    // key=value lines; '#' starts a comment.
    static auto parse(std::istream & in) -> SolverAdapter;
    static auto load(const std::filesystem::path & path) -> SolverAdapter;
    // $KNESER_SOLVER if set (a command template), else the bundled pysat wrapper.
    static auto default_adapter() -> SolverAdapter;

    auto argv(const std::string & cnf, const std::optional<std::string> & proof) const -> std::vector<std::string>;
    // Whether the command can be told where to write a proof.
    auto supports_proof() const -> bool;
};

enum class SolveResult
{
    sat,
    unsat,
    timeout,
    error
};

auto solve_result_name(SolveResult) -> std::string;

struct SolverRun
{
    InstanceDescriptor instance;
    std::size_t vars = 0;
    std::size_t clauses = 0;
    std::string command;
    double seconds = 0;
    SolveResult result = SolveResult::error;
    std::optional<std::uint64_t> conflicts;
    std::optional<std::string> proof_path;
    bool proof_checked = false;
    std::string error;
};

struct RunOptions
{
    double timeout_seconds = 60;
    bool want_proof = false;
};

// Writes cnf to cnf_file, runs the solver on it and classifies the answer.
// With want_proof an UNSAT answer's proof is imported and checked in strict mode
// (skipped for adapters without proof support).
auto run_solver(const Cnf & cnf, const std::filesystem::path & cnf_file, const SolverAdapter & solver,
    const RunOptions & options) -> SolverRun;

enum class ColorsPolicy
{
    unsat, // n - 2k + 1
    sat,   // n - 2k + 2
    both
};

auto parse_colors_policy(const std::string &) -> ColorsPolicy;
auto colors_policy_name(ColorsPolicy) -> std::string;

struct CampaignSpec
{
    Variant variant = Variant::kneser;
    int k = 2;
    int n_min = 5;
    int n_max = 8;
    ColorsPolicy colors = ColorsPolicy::unsat;
    double timeout_seconds = 60;
    int workers = 1;
    std::uint64_t seed = 1;
    bool shuffle = false; // execution order only; rows stay in grid order
    bool want_proof = false;
    std::filesystem::path out_dir = "campaign";
};

struct Campaign
{
    CampaignSpec spec;
    SolverAdapter solver;
    std::vector<SolverRun> rows;
};

auto campaign_grid(const CampaignSpec & spec) -> std::vector<InstanceDescriptor>;
auto instance_file_name(const InstanceDescriptor &) -> std::string;
auto run_campaign(const CampaignSpec & spec, const SolverAdapter & solver) -> Campaign;

inline constexpr const char * csv_header = "variant,k,n,colors,vars,clauses,result,seconds,conflicts,proof_checked";

void write_csv(const Campaign & campaign, std::ostream & out);
void write_meta(const Campaign & campaign, std::ostream & out);
auto hardware_note() -> std::string;

// Problems found in a campaign CSV (empty when it matches the schema).
auto validate_csv(std::istream & in) -> std::vector<std::string>;

} // namespace kneser
