#include <kneser/core.hpp>
#include <kneser/counting.hpp>
#include <kneser/formula.hpp>
#include <kneser/harness.hpp>
#include <kneser/oracle.hpp>
#include <kneser/resolution.hpp>
#include <kneser/substitution.hpp>

#include <CLI11.hpp>

#include <bit>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

using namespace kneser;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_usage = 2;

// Writes to the named file, or stdout when the name is empty or "-".
class Output
{
public:
    explicit Output(const std::string & path)
    {
        if (! path.empty() && path != "-") {
            _file.open(path);
            if (! _file)
                throw std::runtime_error("cannot write " + path);
        }
    }

    auto stream() -> std::ostream & { return _file.is_open() ? _file : std::cout; }

private:
    std::ofstream _file;
};

auto to_variant(const std::string & s) -> Variant
{
    return parse_variant(s);
}

struct GenArgs
{
    std::string variant = "kneser";
    int n = 5, k = 2;
    std::optional<int> colors;
    std::string out;
};

auto cmd_gen(const GenArgs & a) -> int
{
    const auto cnf = gen_cnf(make_descriptor(to_variant(a.variant), a.n, a.k, a.colors));
    Output out{a.out};
    write_dimacs(cnf, out.stream());
    if (! a.out.empty() && a.out != "-")
        std::cout << cnf.info->to_string() << " vars=" << cnf.num_vars << " clauses=" << cnf.clauses.size() << " -> "
                  << a.out << '\n';
    return exit_ok;
}

struct SubstArgs
{
    std::string variant = "kneser";
    int n = 5, k = 1;
    std::string out;
    std::string report;
};

auto cmd_subst(const SubstArgs & a) -> int
{
    const auto phi = build_phi(a.k, a.n, to_variant(a.variant));
    Output out{a.out};
    write_substitution(phi, out.stream());
    return exit_ok;
}

auto cmd_verify_subst(const SubstArgs & a) -> int
{
    const auto report = verify_image(to_variant(a.variant), a.k, a.n);
    std::cout << report.summary();
    if (! a.report.empty()) {
        Output out{a.report};
        report.write_machine(out.stream());
    }
    return report.pass ? exit_ok : exit_failed;
}

struct ProofArgs
{
    std::string cnf;
    std::string proof;
    std::string format = "rup";
    std::string mode = "strict";
    std::string emit;
};

auto parse_mode(const std::string & s) -> CheckMode
{
    if (s == "strict")
        return CheckMode::strict;
    if (s == "tolerant")
        return CheckMode::tolerant;
    throw InvalidParameters("unknown check mode: " + s);
}

auto cmd_check_proof(const ProofArgs & a) -> int
{
    const auto cnf = read_dimacs_file(a.cnf);
    const auto proof = read_proof_file(a.proof, parse_proof_format(a.format), &cnf);
    const auto verdict = check_refutation(cnf, proof, parse_mode(a.mode));
    std::cout << "kind=check-proof cnf=" << a.cnf << " steps=" << proof.size() << " mode=" << a.mode
              << " verdict=" << (verdict.pass ? "pass" : "fail") << '\n'
              << verdict.to_string() << '\n';
    if (! a.emit.empty()) {
        Output out{a.emit};
        emit_proof(proof, out.stream());
    }
    return verdict.pass ? exit_ok : exit_failed;
}

struct TransportArgs
{
    std::string variant = "kneser";
    int n = 5, k = 1;
    std::string proof;
    std::string format = "rup";
    std::string out;
    std::string solver_config;
    double timeout = 120;
};

auto load_solver(const std::string & config) -> SolverAdapter
{
    return config.empty() ? SolverAdapter::default_adapter() : SolverAdapter::load(config);
}

auto cmd_transport(const TransportArgs & a) -> int
{
    const auto variant = to_variant(a.variant);
    const auto phi = build_phi(a.k, a.n, variant);
    const auto source = gen_cnf(phi.source);
    const auto target = gen_cnf(phi.target);

    std::string proof_file = a.proof;
    std::string format = a.format;
    if (proof_file.empty()) {
        const auto dir = std::filesystem::temp_directory_path() / ("kneser-transport-" + std::to_string(::getpid()));
        RunOptions options{a.timeout, true};
        const auto run = run_solver(source, dir / instance_file_name(phi.source), load_solver(a.solver_config), options);
        if (run.result != SolveResult::unsat || ! run.proof_path) {
            std::cerr << "solver did not refute " << phi.source.to_string() << ": " << solve_result_name(run.result)
                      << ' ' << run.error << '\n';
            return exit_failed;
        }
        proof_file = *run.proof_path;
        format = "rup";
    }
    const auto proof = read_proof_file(proof_file, parse_proof_format(format), &source);
    const auto source_verdict = check_refutation(source, proof, CheckMode::strict);
    const auto image = transport(proof, phi);
    const auto verdict = check_refutation(target, image, CheckMode::tolerant);
    std::cout << "kind=transport source=\"" << phi.source.to_string() << "\" target=\"" << phi.target.to_string()
              << "\" source_steps=" << proof.size() << " image_steps=" << image.size()
              << " source_check=" << (source_verdict.pass ? "pass" : "fail")
              << " image_check=" << (verdict.pass ? "pass" : "fail") << '\n'
              << "image: " << verdict.to_string() << '\n';
    if (! a.out.empty()) {
        Output out{a.out};
        emit_proof(image, out.stream());
    }
    return source_verdict.pass && verdict.pass && image.size() <= proof.size() ? exit_ok : exit_failed;
}

struct CircuitArgs
{
    int n = 8;
    std::string out;
    bool check = false;
};

auto cmd_count_circuit(const CircuitArgs & a) -> int
{
    const auto circuit = build_count(a.n);
    if (a.out.empty() && ! a.check) {
        circuit.write_netlist(std::cout);
        return exit_ok;
    }
    if (! a.out.empty()) {
        Output out{a.out};
        circuit.write_netlist(out.stream());
    }
    std::cout << "kind=count-circuit n=" << a.n << " gates=" << circuit.gate_count()
              << " outputs=" << circuit.outputs().size();
    if (a.check) {
        if (a.n > 24)
            throw InvalidParameters("--check enumerates 2^n inputs; n must be at most 24");
        bool ok = true;
        const std::uint64_t total = std::uint64_t{1} << a.n;
        for (std::uint64_t base = 0; base < total && ok; base += 64) {
            std::vector<std::uint64_t> lanes(a.n, 0);
            const auto live = std::min<std::uint64_t>(64, total - base);
            for (int i = 0; i < a.n; ++i)
                for (std::uint64_t j = 0; j < live; ++j)
                    lanes[i] |= (((base + j) >> i) & 1U) << j;
            const auto out = circuit.eval_lanes(lanes);
            for (std::uint64_t j = 0; j < live && ok; ++j) {
                std::uint64_t v = 0;
                for (std::size_t b = 0; b < out.size(); ++b)
                    v |= ((out[b] >> j) & 1U) << b;
                ok = v == static_cast<std::uint64_t>(std::popcount(base + j));
            }
        }
        std::cout << " popcount_check=" << (ok ? "pass" : "fail") << '\n';
        return ok ? exit_ok : exit_failed;
    }
    std::cout << '\n';
    return exit_ok;
}

struct IdentityArgs
{
    int n = 8;
    std::uint64_t seed = 1;
    std::uint64_t samples = 10000;
    int exhaustive_limit = 16;
    int item4_limit = 12;
};

auto cmd_identities(const IdentityArgs & a) -> int
{
    IdentityOptions options;
    options.n = a.n;
    options.seed = a.seed;
    options.samples = a.samples;
    options.exhaustive_limit = a.exhaustive_limit;
    options.item4_exhaustive_limit = a.item4_limit;
    const auto report = check_count_identities(options);
    report.write(std::cout);
    return report.pass() ? exit_ok : exit_failed;
}

struct SweepArgs
{
    int n = 5;
    std::uint64_t seed = 1;
    std::uint64_t samples = 100000;
    std::uint64_t colorings = 1000;
    bool exhaustive = false;
    bool n3 = false;
};

auto family_string(const Family & f) -> std::string
{
    std::string s = "[";
    for (std::size_t i = 0; i < f.size(); ++i)
        s += (i ? " " : "") + f[i].to_string();
    return s + "]";
}

auto cmd_oracle_k2(const SweepArgs & a) -> int
{
    const auto sets = enum_ksubsets(a.n, 2);
    std::map<std::string, std::uint64_t> tally;
    std::uint64_t families = 0;
    std::optional<std::string> failure;
    auto run = [&](const Family & f) {
        ++families;
        try {
            ++tally[alternative_name(class_trichotomy_k2(a.n, f).alternative)];
        }
        catch (const InternalInconsistency & e) {
            if (! failure)
                failure = family_string(f) + ": " + e.what();
        }
    };
    const bool exhaustive = a.exhaustive || sets.size() <= 15;
    if (exhaustive) {
        if (sets.size() > 24)
            throw InvalidParameters("exhaustive sweep needs C(n,2) <= 24");
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << sets.size()); ++m) {
            Family f;
            for (std::size_t i = 0; i < sets.size(); ++i)
                if ((m >> i) & 1U)
                    f.push_back(sets[i]);
            run(f);
        }
    }
    else {
        Rng rng{a.seed};
        for (std::uint64_t i = 0; i < a.samples; ++i)
            run(random_family_k2(a.n, rng));
    }
    std::cout << "kind=trichotomy-k2 n=" << a.n << " mode=" << (exhaustive ? "exhaustive" : "sampled") << " seed=" << a.seed
              << " families=" << families << " disjoint-pair=" << tally["disjoint-pair"]
              << " common-element=" << tally["common-element"] << " small=" << tally["small"]
              << " verdict=" << (failure ? "fail" : "pass");
    if (failure)
        std::cout << " witness=" << *failure;
    std::cout << '\n';

    bool four_ok = true;
    if (a.n <= 7) {
        std::uint64_t tuples = 0;
        for (std::size_t i = 0; i < sets.size(); ++i)
            for (std::size_t j = i + 1; j < sets.size(); ++j)
                for (std::size_t k = j + 1; k < sets.size(); ++k)
                    for (std::size_t l = k + 1; l < sets.size(); ++l) {
                        ++tuples;
                        try {
                            four_set_lemma(sets[i], sets[j], sets[k], sets[l]);
                        }
                        catch (const InternalInconsistency &) {
                            four_ok = false;
                        }
                    }
        std::cout << "kind=four-set-lemma n=" << a.n << " tuples=" << tuples << " verdict=" << (four_ok ? "pass" : "fail")
                  << '\n';
    }
    return ! failure && four_ok ? exit_ok : exit_failed;
}

auto cmd_oracle_k3(const SweepArgs & a) -> int
{
    if (a.n3) {
        const auto target = binomial(a.n, 3);
        std::cout << "kind=n3-table n=" << a.n << " C(n,3)=" << target << '\n';
        for (int p = 0; p <= a.n - 5; ++p)
            std::cout << "kind=n3-row n=" << a.n << " p=" << p << " N(3n-7)=" << n3_bound(a.n, p, N3Summand::definition)
                      << " N(3n-8)=" << n3_bound(a.n, p, N3Summand::class_bound) << '\n';
        bool all = true;
        for (auto s : {N3Summand::definition, N3Summand::class_bound}) {
            const auto p = n3_failure_p(a.n, s);
            all = all && p;
            std::cout << "kind=n3-failure n=" << a.n << " summand=" << n3_summand_name(s)
                      << " p=" << (p ? std::to_string(*p) : "none") << '\n';
        }
        return all ? exit_ok : exit_failed;
    }

    Rng rng{a.seed};
    std::map<std::string, std::uint64_t> tally;
    std::map<std::pair<int, int>, std::uint64_t> cases;
    std::uint64_t bound_failures = 0, order_failures = 0, a_bound_misses = 0;
    std::optional<std::string> failure;
    auto run = [&](const Family & f) {
        try {
            const auto r = class_bound_k3(a.n, f);
            ++tally[alternative_name(r.alternative)];
            if (r.ab_case)
                ++cases[{r.ab_case, r.cd_case}];
            if (! r.bounds_hold())
                ++bound_failures;
            if (! r.greedy_order)
                ++order_failures;
            if (! r.a_bound)
                ++a_bound_misses;
        }
        catch (const InternalInconsistency & e) {
            if (! failure)
                failure = family_string(f) + ": " + e.what();
        }
    };
    for (const auto & f : structured_families_k3(a.n))
        run(f);
    for (std::uint64_t i = 0; i < a.samples; ++i)
        run(random_family_k3(a.n, rng));
    std::cout << "kind=class-bound-k3 n=" << a.n << " seed=" << a.seed << " random=" << a.samples
              << " disjoint-pair=" << tally["disjoint-pair"] << " common-element=" << tally["common-element"]
              << " small=" << tally["small"] << " bound_failures=" << bound_failures
              << " order_failures=" << order_failures << " a_bound_misses=" << a_bound_misses
              << " verdict=" << (failure || bound_failures || order_failures ? "fail" : "pass");
    if (failure)
        std::cout << " witness=" << *failure;
    std::cout << '\n';
    for (const auto & [key, count] : cases)
        std::cout << "kind=k3-cases n=" << a.n << " ab_case=" << key.first << " cd_case=" << key.second
                  << " count=" << count << '\n';

    std::uint64_t extracted = 0, inductive = 0;
    std::optional<std::string> extraction_failure;
    for (std::uint64_t i = 0; i < a.colorings; ++i) {
        const auto coloring = i % 2 ? random_coloring(a.n, 3, a.n - 5, Domain::all_ksubsets, rng)
                                    : structured_coloring_k3(a.n, rng);
        try {
            const auto e = find_mono_disjoint_k3(coloring);
            ++extracted;
            if (e.trace.size() > 1)
                ++inductive;
        }
        catch (const InternalInconsistency & e) {
            if (! extraction_failure)
                extraction_failure = e.what();
        }
    }
    std::cout << "kind=extract-k3 n=" << a.n << " colorings=" << a.colorings << " verified=" << extracted
              << " inductive=" << inductive << " verdict=" << (extraction_failure ? "fail" : "pass") << '\n';
    return failure || bound_failures || order_failures || extraction_failure ? exit_failed : exit_ok;
}

struct AuditArgs
{
    int k = 2;
    int n = 6;
    std::uint64_t seed = 1;
    std::uint64_t samples = 100;
    std::string report;
};

auto cmd_audit(const AuditArgs & a) -> int
{
    if (a.k != 2)
        throw InvalidParameters("audit: only --k 2 has a counting chain");
    const std::string path = a.report.empty()
        ? "audit-k2-n" + std::to_string(a.n) + "-seed" + std::to_string(a.seed) + ".txt"
        : a.report;
    Output out{path};
    Rng rng{a.seed};
    std::bernoulli_distribution structured(0.5);
    std::size_t failing = 0, vacuous = 0, checked = 0, informational_violations = 0;
    for (std::uint64_t i = 0; i < a.samples; ++i) {
        const bool use_structured = structured(rng);
        const auto coloring = use_structured ? structured_coloring_k2(a.n, rng)
                                             : random_coloring(a.n, 2, a.n - 3, Domain::all_ksubsets, rng);
        const auto audit = audit_k2(coloring);
        out.stream() << "kind=audit-sample n=" << a.n << " seed=" << a.seed << " index=" << i
                     << " generator=" << (use_structured ? "structured" : "uniform")
                     << " witness_r=" << (audit.witness_r ? std::to_string(*audit.witness_r) : "none")
                     << " verdict=" << (audit.pass() ? "pass" : "fail") << '\n';
        audit.write(out.stream());
        failing += audit.count(FindingStatus::fail);
        vacuous += audit.count(FindingStatus::vacuous);
        checked += audit.count(FindingStatus::pass);
        for (const auto & f : audit.findings)
            if (f.status == FindingStatus::info && f.detail.rfind("violated", 0) == 0)
                ++informational_violations;
    }
    const bool arithmetic = final_arithmetic_k2(a.n);
    std::cout << "kind=audit-k2 n=" << a.n << " seed=" << a.seed << " samples=" << a.samples << " passed=" << checked
              << " vacuous=" << vacuous << " failed=" << failing
              << " literal_P2_violations=" << informational_violations
              << " final_arithmetic=" << (arithmetic ? "pass" : "fail") << " report=" << path
              << " verdict=" << (failing == 0 && arithmetic ? "pass" : "fail") << '\n';
    return failing == 0 && arithmetic ? exit_ok : exit_failed;
}

struct WitnessArgs
{
    int k = 2;
    int n = 5;
    std::uint64_t seed = 1;
    std::string method;
};

auto cmd_witness(const WitnessArgs & a) -> int
{
    Rng rng{a.seed};
    const auto coloring = random_coloring(a.n, a.k, default_colors(a.n, a.k), Domain::all_ksubsets, rng);
    const auto method = a.method.empty() ? (a.k == 3 ? "inductive" : "scan") : a.method;
    if (method == "inductive") {
        if (a.k != 3)
            throw InvalidParameters("witness: the inductive method is for k = 3");
        const auto result = find_mono_disjoint_k3(coloring);
        for (const auto & t : result.trace)
            std::cout << "kind=trace " << t << '\n';
        std::cout << "kind=witness k=3 n=" << a.n << " seed=" << a.seed << " pair=" << result.pair.to_string()
                  << " verdict=pass\n";
        return exit_ok;
    }
    if (method != "scan")
        throw InvalidParameters("witness: method must be scan or inductive");
    const auto pair = find_mono_disjoint(coloring);
    std::cout << "kind=witness k=" << a.k << " n=" << a.n << " seed=" << a.seed << " pair=" << pair.to_string()
              << " verdict=pass\n";
    return exit_ok;
}

struct BenchArgs
{
    std::string variant = "kneser";
    int k = 2;
    int n_min = 5, n_max = 8;
    std::string colors = "unsat";
    double timeout = 60;
    int workers = 1;
    std::uint64_t seed = 1;
    bool shuffle = false;
    bool proof = false;
    std::string out = "campaign";
    std::string solver_config;
};

auto cmd_bench(const BenchArgs & a) -> int
{
    CampaignSpec spec;
    spec.variant = to_variant(a.variant);
    spec.k = a.k;
    spec.n_min = a.n_min;
    spec.n_max = a.n_max;
    spec.colors = parse_colors_policy(a.colors);
    spec.timeout_seconds = a.timeout;
    spec.workers = a.workers;
    spec.seed = a.seed;
    spec.shuffle = a.shuffle;
    spec.want_proof = a.proof;
    spec.out_dir = a.out;
    const auto campaign = run_campaign(spec, load_solver(a.solver_config));
    write_csv(campaign, std::cout);
    bool consistent = true;
    for (const auto & r : campaign.rows) {
        const bool unsat_expected = r.instance.colors == default_colors(r.instance.n, r.instance.k);
        if ((r.result == SolveResult::unsat && ! unsat_expected) || (r.result == SolveResult::sat && unsat_expected))
            consistent = false;
        if (! r.error.empty())
            std::cerr << instance_file_name(r.instance) << ": " << r.error << '\n';
    }
    std::cerr << "results in " << (spec.out_dir / "results.csv").string() << '\n';
    return consistent ? exit_ok : exit_failed;
}

} // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"Kneser formula workbench: instances, substitutions, proofs, counting and oracles"};
    app.require_subcommand(1);
    std::function<int()> action;

    GenArgs gen;
    auto * g = app.add_subcommand("gen", "emit a DIMACS instance");
    g->add_option("--variant", gen.variant, "kneser, kneser-onto, schrijver, schrijver-onto or php")->capture_default_str();
    g->add_option("--n", gen.n, "ground set size")->capture_default_str();
    g->add_option("--k", gen.k, "subset size")->capture_default_str();
    g->add_option("--colors", gen.colors, "number of colors (default n-2k+1)");
    g->add_option("-o,--output", gen.out, "output file (default stdout)");
    g->callback([&] { action = [&] { return cmd_gen(gen); }; });

    SubstArgs subst;
    auto * s = app.add_subcommand("subst", "emit the substitution map from (k+1, n) to (k, n-2)");
    s->add_option("--variant", subst.variant, "kneser or schrijver (with optional -onto)")->capture_default_str();
    s->add_option("--n", subst.n, "ground set size of the source")->capture_default_str();
    s->add_option("--k", subst.k, "subset size of the target")->capture_default_str();
    s->add_option("-o,--output", subst.out, "output file (default stdout)");
    s->callback([&] { action = [&] { return cmd_subst(subst); }; });

    auto * vs = app.add_subcommand("verify-subst", "check the image of (k+1, n) is exactly (k, n-2)");
    vs->add_option("--variant", subst.variant, "kneser or schrijver (with optional -onto)")->capture_default_str();
    vs->add_option("--n", subst.n, "ground set size of the source")->capture_default_str();
    vs->add_option("--k", subst.k, "subset size of the target")->capture_default_str();
    vs->add_option("--report", subst.report, "machine-readable report file");
    vs->callback([&] { action = [&] { return cmd_verify_subst(subst); }; });

    TransportArgs tr;
    auto * t = app.add_subcommand("transport", "map a refutation of (k+1, n) to one of (k, n-2) and check it");
    t->add_option("--variant", tr.variant, "kneser or schrijver (with optional -onto)")->capture_default_str();
    t->add_option("--n", tr.n, "ground set size of the source")->capture_default_str();
    t->add_option("--k", tr.k, "subset size of the target")->capture_default_str();
    t->add_option("--proof", tr.proof, "source refutation (default: obtain one from the solver)");
    t->add_option("--format", tr.format, "native or rup")->capture_default_str();
    t->add_option("--solver-config", tr.solver_config, "solver adapter config (key=value)");
    t->add_option("--timeout", tr.timeout, "solver timeout in seconds")->capture_default_str();
    t->add_option("-o,--output", tr.out, "write the transported proof (native format)");
    t->callback([&] { action = [&] { return cmd_transport(tr); }; });

    ProofArgs pr;
    auto * cp = app.add_subcommand("check-proof", "check a resolution refutation of a DIMACS formula");
    cp->add_option("--cnf", pr.cnf, "formula")->required();
    cp->add_option("--proof", pr.proof, "proof file")->required();
    cp->add_option("--format", pr.format, "native, rup, drup or drat")->capture_default_str();
    cp->add_option("--mode", pr.mode, "strict or tolerant")->capture_default_str();
    cp->add_option("--emit", pr.emit, "write the (reconstructed) proof in native format");
    cp->callback([&] { action = [&] { return cmd_check_proof(pr); }; });

    CircuitArgs cc;
    auto * c = app.add_subcommand("count-circuit", "build the popcount circuit and print its netlist");
    c->add_option("--n", cc.n, "number of inputs")->capture_default_str();
    c->add_option("-o,--output", cc.out, "netlist file (default stdout)");
    c->add_flag("--check", cc.check, "compare against popcount on all 2^n inputs");
    c->callback([&] { action = [&] { return cmd_count_circuit(cc); }; });

    IdentityArgs id;
    auto * i = app.add_subcommand("identities", "check the four counting identities");
    i->add_option("--n", id.n, "number of inputs")->capture_default_str();
    i->add_option("--seed", id.seed, "random seed for sampled checks")->capture_default_str();
    i->add_option("--samples", id.samples, "samples when not exhaustive")->capture_default_str();
    i->add_option("--exhaustive-limit", id.exhaustive_limit, "largest n for exhaustive items 1-3")->capture_default_str();
    i->add_option("--item4-limit", id.item4_limit, "largest n for exhaustive item 4")->capture_default_str();
    i->callback([&] { action = [&] { return cmd_identities(id); }; });

    SweepArgs k2;
    auto * o2 = app.add_subcommand("oracle-k2", "sweep the k=2 class trichotomy and the four-set lemma");
    o2->add_option("--n", k2.n, "ground set size")->capture_default_str();
    o2->add_option("--seed", k2.seed, "random seed")->capture_default_str();
    o2->add_option("--samples", k2.samples, "random families when not exhaustive")->capture_default_str();
    o2->add_flag("--exhaustive", k2.exhaustive, "enumerate every family (automatic for n <= 6)");
    o2->callback([&] { action = [&] { return cmd_oracle_k2(k2); }; });

    SweepArgs k3;
    k3.n = 7;
    k3.samples = 10000;
    auto * o3 = app.add_subcommand("oracle-k3", "sweep the k=3 class bound and inductive extraction");
    o3->add_option("--n", k3.n, "ground set size")->capture_default_str();
    o3->add_option("--seed", k3.seed, "random seed")->capture_default_str();
    o3->add_option("--samples", k3.samples, "random families")->capture_default_str();
    o3->add_option("--colorings", k3.colorings, "random colorings for extraction")->capture_default_str();
    o3->add_flag("--n3", k3.n3, "print the N(3) bound table instead");
    o3->callback([&] { action = [&] { return cmd_oracle_k3(k3); }; });

    AuditArgs au;
    auto * ad = app.add_subcommand("audit", "audit the k=2 counting chain on sampled colorings");
    ad->add_option("--k", au.k, "subset size (2)")->capture_default_str();
    ad->add_option("--n", au.n, "ground set size")->capture_default_str();
    ad->add_option("--seed", au.seed, "random seed")->capture_default_str();
    ad->add_option("--samples", au.samples, "colorings to audit")->capture_default_str();
    ad->add_option("--report", au.report, "report file (default audit-k2-n<N>-seed<S>.txt)");
    ad->callback([&] { action = [&] { return cmd_audit(au); }; });

    WitnessArgs wi;
    auto * w = app.add_subcommand("witness", "find a monochromatic disjoint pair in a random coloring");
    w->add_option("--k", wi.k, "subset size (1, 2 or 3)")->capture_default_str();
    w->add_option("--n", wi.n, "ground set size")->capture_default_str();
    w->add_option("--seed", wi.seed, "random seed")->capture_default_str();
    w->add_option("--method", wi.method, "scan or inductive (default: inductive for k=3)");
    w->callback([&] { action = [&] { return cmd_witness(wi); }; });

    BenchArgs be;
    auto * b = app.add_subcommand("bench", "run a solver campaign and write CSV");
    b->add_option("--variant", be.variant, "instance family")->capture_default_str();
    b->add_option("--k", be.k, "subset size")->capture_default_str();
    b->add_option("--n-min", be.n_min, "smallest n")->capture_default_str();
    b->add_option("--n-max", be.n_max, "largest n")->capture_default_str();
    b->add_option("--colors", be.colors, "unsat (n-2k+1), sat (n-2k+2) or both")->capture_default_str();
    b->add_option("--timeout", be.timeout, "per-run timeout in seconds")->capture_default_str();
    b->add_option("--workers", be.workers, "concurrent solver processes")->capture_default_str();
    b->add_option("--seed", be.seed, "seed for --shuffle")->capture_default_str();
    b->add_flag("--shuffle", be.shuffle, "randomize execution order");
    b->add_flag("--proof", be.proof, "request and check DRUP proofs");
    b->add_option("--out", be.out, "output directory")->capture_default_str();
    b->add_option("--solver-config", be.solver_config, "solver adapter config (default $KNESER_SOLVER or pysat)");
    b->callback([&] { action = [&] { return cmd_bench(be); }; });

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError & e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        return action();
    }
    catch (const InvalidParameters & e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const ParseError & e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const ConfigError & e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const std::exception & e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_failed;
    }
}
