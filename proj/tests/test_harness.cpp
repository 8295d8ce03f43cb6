#include <doctest.h>

#include "support/oracles.hpp"

#include <kneser/harness.hpp>

#include <chrono>
#include <fstream>
#include <sstream>

using namespace kneser;

namespace {

auto write_script(const std::filesystem::path & path, const std::string & body) -> std::string
{
    std::ofstream out{path};
    out << "#!/bin/sh\n" << body;
    out.close();
    std::filesystem::permissions(path, std::filesystem::perms::owner_all);
    return path.string();
}

auto adapter_for(const std::string & script) -> SolverAdapter
{
    std::istringstream in("name = fake\ncommand = " + script + " {cnf}\nproof_args = {proof}\n");
    return SolverAdapter::parse(in);
}

} // namespace

TEST_CASE("subprocess output, exit code and timeout")
{
    const auto ok = run_subprocess({"sh", "-c", "echo hello; echo oops >&2; exit 3"}, std::chrono::seconds(10));
    CHECK(ok.exit_code == 3);
    CHECK_FALSE(ok.timed_out);
    CHECK(ok.output.find("hello") != std::string::npos);
    CHECK(ok.output.find("oops") != std::string::npos);

    const auto start = std::chrono::steady_clock::now();
    // the background child keeps the pipe open; the group kill must still end the run
    const auto slow = run_subprocess({"sh", "-c", "sleep 30 & sleep 30"}, std::chrono::milliseconds(300));
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CHECK(slow.timed_out);
    CHECK(elapsed < 5.0);

    const auto missing = run_subprocess({"/nonexistent/solver"}, std::chrono::seconds(5));
    CHECK(missing.exit_code == 127);
    CHECK_THROWS_AS(run_subprocess({}, std::chrono::seconds(1)), SubprocessError);
}

TEST_CASE("solver config parsing")
{
    std::istringstream in("# comment\nname = mine\ncommand = solve --in {cnf}\nproof_args = --drup {proof}\n"
                          "sat_regex = ^SAT\nunsat_regex = ^UNSAT\n");
    const auto a = SolverAdapter::parse(in);
    CHECK(a.name == "mine");
    CHECK(a.argv("x.cnf", std::nullopt) == std::vector<std::string>{"solve", "--in", "x.cnf"});
    CHECK(a.argv("x.cnf", "x.drup") == std::vector<std::string>{"solve", "--in", "x.cnf", "--drup", "x.drup"});

    std::istringstream unknown("command = a {cnf}\ncolour = blue\n");
    CHECK_THROWS_AS(SolverAdapter::parse(unknown), ConfigError);
    std::istringstream no_cnf("command = a b\n");
    CHECK_THROWS_AS(SolverAdapter::parse(no_cnf), ConfigError);
    std::istringstream bad_regex("command = a {cnf}\nsat_regex = ([\n");
    CHECK_THROWS_AS(SolverAdapter::parse(bad_regex), ConfigError);
    std::istringstream no_eq("command a {cnf}\n");
    CHECK_THROWS_AS(SolverAdapter::parse(no_eq), ConfigError);
    CHECK_THROWS_AS(SolverAdapter::load("/nonexistent/solver.conf"), ConfigError);
}

TEST_CASE("answers from a scripted solver")
{
    testing::TempDir dir{"harness"};
    const auto cnf = gen_cnf(Variant::kneser, 5, 2);
    RunOptions options;
    options.timeout_seconds = 10;

    SUBCASE("UNSAT with a checked proof")
    {
        const auto script = write_script(dir.path() / "unsat.sh",
            "echo 'c conflicts: 7'\necho 's UNSATISFIABLE'\n"
            "if [ -n \"$2\" ]; then printf '0\\n' > \"$2\"; fi\nexit 20\n");
        options.want_proof = true;
        const auto run = run_solver(cnf, dir.path() / "a.cnf", adapter_for(script), options);
        CHECK(run.result == SolveResult::unsat);
        CHECK(run.conflicts == 7);
        REQUIRE(run.proof_path);
        // the empty lemma alone is not RUP for this formula
        CHECK_FALSE(run.proof_checked);
        CHECK(run.error.find("proof check") != std::string::npos);
        CHECK(run.vars == 20);
        CHECK(run.clauses == 40);
    }
    SUBCASE("SAT")
    {
        const auto script = write_script(dir.path() / "sat.sh", "echo 's SATISFIABLE'\nexit 10\n");
        const auto run = run_solver(cnf, dir.path() / "b.cnf", adapter_for(script), options);
        CHECK(run.result == SolveResult::sat);
        CHECK_FALSE(run.conflicts);
        CHECK(run.error.empty());
    }
    SUBCASE("garbage output is an error")
    {
        const auto script = write_script(dir.path() / "junk.sh", "echo 'no answer here'\n");
        const auto run = run_solver(cnf, dir.path() / "c.cnf", adapter_for(script), options);
        CHECK(run.result == SolveResult::error);
        CHECK_FALSE(run.error.empty());
    }
    SUBCASE("timeout")
    {
        const auto script = write_script(dir.path() / "hang.sh", "sleep 30\n");
        options.timeout_seconds = 0.3;
        const auto run = run_solver(cnf, dir.path() / "d.cnf", adapter_for(script), options);
        CHECK(run.result == SolveResult::timeout);
        CHECK(run.seconds < 5.0);
    }
}

TEST_CASE("bundled solver produces checkable proofs")
{
    testing::TempDir dir{"pysat"};
    RunOptions options;
    options.timeout_seconds = 60;
    options.want_proof = true;
    const auto solver = SolverAdapter::default_adapter();
    const auto unsat = run_solver(gen_cnf(Variant::kneser, 6, 2), dir.path() / "u.cnf", solver, options);
    CHECK(unsat.result == SolveResult::unsat);
    CHECK(unsat.proof_checked);
    CHECK(unsat.conflicts);
    const auto sat = run_solver(gen_cnf(Variant::kneser, 6, 2, 4), dir.path() / "s.cnf", solver, options);
    CHECK(sat.result == SolveResult::sat);
    CHECK_FALSE(sat.proof_checked);
}

TEST_CASE("campaign grid, files and CSV schema")
{
    testing::TempDir dir{"campaign"};
    const auto script = write_script(dir.path() / "answer.sh",
        "n=$(sed -n 's/^c variant=.* n=\\([0-9]*\\) .*/\\1/p' \"$1\")\n"
        "c=$(sed -n 's/^c variant=.* colors=\\([0-9]*\\).*/\\1/p' \"$1\")\n"
        "if [ \"$c\" -eq $((n - 3)) ]; then echo 's UNSATISFIABLE'; else echo 's SATISFIABLE'; fi\n");
    CampaignSpec spec;
    spec.n_min = 5;
    spec.n_max = 7;
    spec.colors = ColorsPolicy::both;
    spec.workers = 3;
    spec.shuffle = true;
    spec.timeout_seconds = 10;
    spec.out_dir = dir.path() / "out";
    const auto grid = campaign_grid(spec);
    REQUIRE(grid.size() == 6);
    CHECK(grid[0].colors == 2);
    CHECK(grid[1].colors == 3);
    CHECK(instance_file_name(grid[0]) == "kneser_k2_n5_c2.cnf");

    const auto campaign = run_campaign(spec, adapter_for(script));
    REQUIRE(campaign.rows.size() == 6);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(campaign.rows[i].instance == grid[i]);
        CHECK(campaign.rows[i].result == (i % 2 ? SolveResult::sat : SolveResult::unsat));
        CHECK(std::filesystem::exists(spec.out_dir / "instances" / instance_file_name(grid[i])));
    }
    std::ifstream csv{spec.out_dir / "results.csv"};
    CHECK(validate_csv(csv).empty());
    std::ifstream meta{spec.out_dir / "results.meta"};
    std::stringstream text;
    text << meta.rdbuf();
    CHECK(text.str().find("hardware=") != std::string::npos);
    CHECK(text.str().find("timing=wall-clock") != std::string::npos);
}

TEST_CASE("CSV validation catches schema problems")
{
    const std::string header = std::string{csv_header} + "\n";
    std::istringstream good(header + "kneser,2,5,2,20,40,UNSAT,0.010,12,true\nkneser,2,6,3,45,,TIMEOUT,1.0,,false\n");
    const auto problems = validate_csv(good);
    REQUIRE(problems.size() == 1); // clauses field empty on the second row
    std::istringstream ok(header + "kneser,2,5,2,20,40,UNSAT,0.010,12,true\nschrijver,2,5,2,10,15,SAT,1.5,,false\n");
    CHECK(validate_csv(ok).empty());
    std::istringstream wrong_vars(header + "kneser,2,5,2,21,40,UNSAT,0.010,12,true\n");
    CHECK(validate_csv(wrong_vars).size() == 1);
    std::istringstream bad_result(header + "kneser,2,5,2,20,40,MAYBE,0.010,12,yes\n");
    CHECK(validate_csv(bad_result).size() == 2);
    std::istringstream bad_header("variant,k\n");
    CHECK(validate_csv(bad_header).size() == 1);
    std::istringstream short_row(header + "kneser,2,5\n");
    CHECK(validate_csv(short_row).size() == 1);
}
