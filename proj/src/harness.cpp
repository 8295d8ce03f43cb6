#include <kneser/harness.hpp>
#include <kneser/resolution.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <random>
#include <regex>
#include <sstream>
#include <thread>

#include <sys/utsname.h>

#ifndef KNESER_TOOLS_DIR
#define KNESER_TOOLS_DIR "tools"
#endif

namespace kneser {

namespace {

auto trim_space(std::string s) -> std::string
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

auto split_words(const std::string & s) -> std::vector<std::string>
{
    std::istringstream in{s};
    std::vector<std::string> words;
    std::string w;
    while (in >> w)
        words.push_back(w);
    return words;
}

auto replace_all(std::string s, const std::string & from, const std::string & to) -> std::string
{
    for (auto pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size()))
        s.replace(pos, from.size(), to);
    return s;
}

auto compile(const std::string & pattern, const std::string & key) -> std::regex
{
    try {
        return std::regex{pattern};
    }
    catch (const std::regex_error & e) {
        throw ConfigError("bad " + key + " '" + pattern + "': " + e.what());
    }
}

} // namespace

auto SolverAdapter::parse(std::istream & in) -> SolverAdapter
{
    SolverAdapter a;
    a.command.clear();
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim_space(line);
        if (line.empty() || line[0] == '#')
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected key=value");
        const auto key = trim_space(line.substr(0, eq));
        const auto value = trim_space(line.substr(eq + 1));
        if (key == "name")
            a.name = value;
        else if (key == "command")
            a.command = value;
        else if (key == "proof_args")
            a.proof_args = value;
        else if (key == "sat_regex")
            a.sat_regex = value;
        else if (key == "unsat_regex")
            a.unsat_regex = value;
        else if (key == "conflicts_regex")
            a.conflicts_regex = value;
        else
            throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    if (a.command.find("{cnf}") == std::string::npos)
        throw ConfigError("command must contain {cnf}");
    compile(a.sat_regex, "sat_regex");
    compile(a.unsat_regex, "unsat_regex");
    compile(a.conflicts_regex, "conflicts_regex");
    return a;
}

auto SolverAdapter::load(const std::filesystem::path & path) -> SolverAdapter
{
    std::ifstream in{path};
    if (! in)
        throw ConfigError("cannot open solver config " + path.string());
    return parse(in);
}

auto SolverAdapter::default_adapter() -> SolverAdapter
{
    SolverAdapter a;
    if (const char * env = std::getenv("KNESER_SOLVER"); env && *env) {
        a.name = "env";
        a.command = env;
        if (a.command.find("{cnf}") == std::string::npos)
            a.command += " {cnf}";
        if (a.command.find("{proof}") == std::string::npos)
            a.proof_args = "--proof {proof}";
        return a;
    }
    a.name = "glucose4";
    a.command = std::string{"python3 "} + KNESER_TOOLS_DIR + "/pysat_solver.py --solver glucose4 {cnf}";
    a.proof_args = "--proof {proof}";
    return a;
}

auto SolverAdapter::argv(const std::string & cnf, const std::optional<std::string> & proof) const
    -> std::vector<std::string>
{
    std::string line = command;
    if (proof && ! proof_args.empty() && line.find("{proof}") == std::string::npos)
        line += " " + proof_args;
    std::vector<std::string> out;
    for (auto & word : split_words(line)) {
        if (! proof && word.find("{proof}") != std::string::npos)
            continue;
        word = replace_all(std::move(word), "{cnf}", cnf);
        if (proof)
            word = replace_all(std::move(word), "{proof}", *proof);
        out.push_back(std::move(word));
    }
    return out;
}

auto SolverAdapter::supports_proof() const -> bool
{
    return command.find("{proof}") != std::string::npos || proof_args.find("{proof}") != std::string::npos;
}

auto solve_result_name(SolveResult r) -> std::string
{
    switch (r) {
    case SolveResult::sat: return "SAT";
    case SolveResult::unsat: return "UNSAT";
    case SolveResult::timeout: return "TIMEOUT";
    case SolveResult::error: return "ERROR";
    }
    return "ERROR";
}

auto run_solver(const Cnf & cnf, const std::filesystem::path & cnf_file, const SolverAdapter & solver,
    const RunOptions & options) -> SolverRun
{
    SolverRun run;
    if (cnf.info)
        run.instance = *cnf.info;
    run.vars = static_cast<std::size_t>(cnf.num_vars);
    run.clauses = cnf.clauses.size();

    if (cnf_file.has_parent_path())
        std::filesystem::create_directories(cnf_file.parent_path());
    write_dimacs_file(cnf, cnf_file.string());
    std::optional<std::string> proof;
    if (options.want_proof && solver.supports_proof()) {
        proof = cnf_file.string() + ".drup";
        std::filesystem::remove(*proof);
    }
    const auto argv = solver.argv(cnf_file.string(), proof);
    for (const auto & a : argv)
        run.command += (run.command.empty() ? "" : " ") + a;

    SubprocessResult sub;
    try {
        sub = run_subprocess(argv, std::chrono::duration<double>(options.timeout_seconds));
    }
    catch (const SubprocessError & e) {
        run.error = e.what();
        return run;
    }
    run.seconds = sub.seconds;
    if (sub.timed_out) {
        run.result = SolveResult::timeout;
        return run;
    }

    const auto sat = compile(solver.sat_regex, "sat_regex");
    const auto unsat = compile(solver.unsat_regex, "unsat_regex");
    const auto conflicts = compile(solver.conflicts_regex, "conflicts_regex");
    bool saw_sat = false, saw_unsat = false;
    std::istringstream lines{sub.output};
    std::string line;
    while (std::getline(lines, line)) {
        if (std::regex_search(line, unsat))
            saw_unsat = true;
        else if (std::regex_search(line, sat))
            saw_sat = true;
        std::smatch m;
        if (! run.conflicts && std::regex_search(line, m, conflicts) && m.size() > 1)
            run.conflicts = std::stoull(m[1].str());
    }
    if (saw_unsat == saw_sat) {
        run.error = "unparseable solver output (exit " + std::to_string(sub.exit_code) + "): "
            + sub.output.substr(0, 200);
        return run;
    }
    run.result = saw_unsat ? SolveResult::unsat : SolveResult::sat;

    if (proof && run.result == SolveResult::unsat) {
        run.proof_path = proof;
        try {
            const auto refutation = read_proof_file(*proof, ProofFormat::rup, &cnf);
            const auto verdict = check_refutation(cnf, refutation, CheckMode::strict);
            run.proof_checked = verdict.pass;
            if (! verdict.pass)
                run.error = "proof check: " + verdict.to_string();
        }
        catch (const std::exception & e) {
            run.error = std::string{"proof check: "} + e.what();
        }
    }
    return run;
}

auto parse_colors_policy(const std::string & s) -> ColorsPolicy
{
    if (s == "unsat")
        return ColorsPolicy::unsat;
    if (s == "sat")
        return ColorsPolicy::sat;
    if (s == "both")
        return ColorsPolicy::both;
    throw InvalidParameters("unknown colors policy: " + s + " (expected unsat, sat or both)");
}

auto colors_policy_name(ColorsPolicy p) -> std::string
{
    switch (p) {
    case ColorsPolicy::unsat: return "unsat";
    case ColorsPolicy::sat: return "sat";
    case ColorsPolicy::both: return "both";
    }
    return "unsat";
}

auto campaign_grid(const CampaignSpec & spec) -> std::vector<InstanceDescriptor>
{
    if (spec.n_min > spec.n_max)
        throw InvalidParameters("campaign: empty n range");
    std::vector<InstanceDescriptor> grid;
    for (int n = spec.n_min; n <= spec.n_max; ++n) {
        const int base = default_colors(n, spec.k);
        if (spec.colors != ColorsPolicy::sat)
            grid.push_back(make_descriptor(spec.variant, n, spec.k, base));
        if (spec.colors != ColorsPolicy::unsat)
            grid.push_back(make_descriptor(spec.variant, n, spec.k, base + 1));
    }
    return grid;
}

auto instance_file_name(const InstanceDescriptor & d) -> std::string
{
    return variant_name(d.variant) + "_k" + std::to_string(d.k) + "_n" + std::to_string(d.n) + "_c"
        + std::to_string(d.colors) + ".cnf";
}

auto run_campaign(const CampaignSpec & spec, const SolverAdapter & solver) -> Campaign
{
    Campaign campaign{spec, solver, {}};
    const auto grid = campaign_grid(spec);
    const auto instances = spec.out_dir / "instances";
    std::filesystem::create_directories(instances);

    std::vector<std::size_t> order(grid.size());
    std::iota(order.begin(), order.end(), 0);
    if (spec.shuffle) {
        std::mt19937_64 rng{spec.seed};
        std::shuffle(order.begin(), order.end(), rng);
    }

    // each worker fills only its own slots; no locking needed
    std::vector<SolverRun> rows(grid.size());
    std::atomic<std::size_t> next{0};
    const RunOptions options{spec.timeout_seconds, spec.want_proof};
    auto work = [&] {
        for (std::size_t i = next++; i < order.size(); i = next++) {
            const auto & desc = grid[order[i]];
            auto & row = rows[order[i]];
            try {
                row = run_solver(gen_cnf(desc), instances / instance_file_name(desc), solver, options);
            }
            catch (const std::exception & e) {
                row.instance = desc;
                row.error = e.what();
            }
            row.instance = desc;
        }
    };
    {
        std::vector<std::jthread> pool;
        const int workers = std::max(1, std::min<int>(spec.workers, static_cast<int>(grid.size())));
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(work);
    }
    campaign.rows = std::move(rows);

    std::ofstream csv{spec.out_dir / "results.csv"};
    write_csv(campaign, csv);
    std::ofstream meta{spec.out_dir / "results.meta"};
    write_meta(campaign, meta);
    return campaign;
}

void write_csv(const Campaign & campaign, std::ostream & out)
{
    out << csv_header << '\n';
    for (const auto & r : campaign.rows) {
        std::ostringstream seconds;
        seconds << std::fixed << std::setprecision(3) << r.seconds;
        out << variant_name(r.instance.variant) << ',' << r.instance.k << ',' << r.instance.n << ',' << r.instance.colors
            << ',' << r.vars << ',' << r.clauses << ',' << solve_result_name(r.result) << ',' << seconds.str() << ','
            << (r.conflicts ? std::to_string(*r.conflicts) : "") << ',' << (r.proof_checked ? "true" : "false") << '\n';
    }
}

auto hardware_note() -> std::string
{
    std::string model = "unknown";
    std::ifstream cpuinfo{"/proc/cpuinfo"};
    std::string line;
    while (std::getline(cpuinfo, line))
        if (line.rfind("model name", 0) == 0) {
            model = trim_space(line.substr(line.find(':') + 1));
            break;
        }
    std::string os = "unknown";
    if (utsname u{}; ::uname(&u) == 0)
        os = std::string{u.sysname} + " " + u.release + " " + u.machine;
    return "cpu=" + model + "; threads=" + std::to_string(std::thread::hardware_concurrency()) + "; os=" + os;
}

void write_meta(const Campaign & campaign, std::ostream & out)
{
    const auto & s = campaign.spec;
    out << "variant=" << variant_name(s.variant) << '\n'
        << "k=" << s.k << '\n'
        << "n_min=" << s.n_min << '\n'
        << "n_max=" << s.n_max << '\n'
        << "colors=" << colors_policy_name(s.colors) << '\n'
        << "timeout_seconds=" << s.timeout_seconds << '\n'
        << "workers=" << s.workers << '\n'
        << "seed=" << s.seed << '\n'
        << "shuffle=" << (s.shuffle ? "true" : "false") << '\n'
        << "proof=" << (s.want_proof ? "true" : "false") << '\n'
        << "solver=" << campaign.solver.name << '\n'
        << "solver_command=" << campaign.solver.command << '\n'
        << "timing=wall-clock\n"
        << "hardware=" << hardware_note() << '\n';
    for (const auto & r : campaign.rows)
        if (! r.error.empty())
            out << "error " << instance_file_name(r.instance) << ": " << r.error << '\n';
}

auto validate_csv(std::istream & in) -> std::vector<std::string>
{
    std::vector<std::string> problems;
    std::string line;
    if (! std::getline(in, line) || line != csv_header) {
        problems.push_back("bad header: '" + line + "'");
        return problems;
    }
    std::size_t row = 1;
    auto is_uint = [](const std::string & s) {
        return ! s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    while (std::getline(in, line)) {
        ++row;
        const auto where = "row " + std::to_string(row) + ": ";
        std::vector<std::string> f;
        std::string field;
        std::istringstream fields{line};
        while (std::getline(fields, field, ','))
            f.push_back(field);
        if (! line.empty() && line.back() == ',')
            f.emplace_back();
        if (f.size() != 10) {
            problems.push_back(where + "expected 10 fields, got " + std::to_string(f.size()));
            continue;
        }
        try {
            for (int i : {1, 2, 3, 4, 5})
                if (! is_uint(f[i]))
                    throw std::invalid_argument("field " + std::to_string(i + 1) + " not a count");
            const auto desc = make_descriptor(parse_variant(f[0]), std::stoi(f[2]), std::stoi(f[1]), std::stoi(f[3]));
            if (std::stoull(f[4]) != static_cast<std::uint64_t>(desc.numbering().num_vars()))
                problems.push_back(where + "vars does not match the instance");
            if (std::stoull(f[5]) != expected_clause_count(desc))
                problems.push_back(where + "clauses does not match the instance");
            if (f[6] != "SAT" && f[6] != "UNSAT" && f[6] != "TIMEOUT" && f[6] != "ERROR")
                problems.push_back(where + "bad result '" + f[6] + "'");
            std::size_t used = 0;
            if (std::stod(f[7], &used) < 0 || used != f[7].size())
                problems.push_back(where + "bad seconds '" + f[7] + "'");
            if (! f[8].empty() && ! is_uint(f[8]))
                problems.push_back(where + "bad conflicts '" + f[8] + "'");
            if (f[9] != "true" && f[9] != "false")
                problems.push_back(where + "bad proof_checked '" + f[9] + "'");
        }
        catch (const std::exception & e) {
            problems.push_back(where + e.what());
        }
    }
    return problems;
}

} // namespace kneser
