#include <kneser/formula.hpp>

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace kneser {

namespace {

constexpr const char * numbering_line = "c numbering=colex-rank*colors+color rank=0-based-within-domain";
constexpr const char * onto_line = "c onto=conjunctive-at-most-one alternative=disjunctive-not-emitted";

auto key_values(const std::string & body) -> std::map<std::string, std::string>
{
    std::map<std::string, std::string> kv;
    std::istringstream in{body};
    std::string token;
    while (in >> token) {
        auto eq = token.find('=');
        if (eq != std::string::npos)
            kv[token.substr(0, eq)] = token.substr(eq + 1);
    }
    return kv;
}

auto to_int(const std::string & s, std::size_t line, const char * what) -> int
{
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ParseError(line, std::string{"bad "} + what + ": '" + s + "'");
    return value;
}

} // namespace

ParseError::ParseError(std::size_t line, const std::string & message) :
    std::runtime_error("line " + std::to_string(line) + ": " + message), _line(line)
{
}

void write_dimacs(const Cnf & cnf, std::ostream & out)
{
    if (cnf.info) {
        const auto & d = *cnf.info;
        out << "c variant=" << variant_name(d.variant) << " n=" << d.n << " k=" << d.k << " colors=" << d.colors << '\n';
        out << "c domain=" << domain_name(d.domain) << '\n';
        out << numbering_line << '\n';
        if (variant_has_onto(d.variant))
            out << onto_line << '\n';
    }
    out << "p cnf " << cnf.num_vars << ' ' << cnf.clauses.size() << '\n';
    std::string buffer;
    for (const auto & clause : cnf.clauses) {
        buffer.clear();
        for (Lit l : clause) {
            buffer += std::to_string(l.dimacs());
            buffer += ' ';
        }
        buffer += "0\n";
        out << buffer;
    }
}

auto to_dimacs(const Cnf & cnf) -> std::string
{
    std::ostringstream out;
    write_dimacs(cnf, out);
    return out.str();
}

auto parse_dimacs(std::istream & in) -> Cnf
{
    Cnf cnf;
    std::map<std::string, std::string> meta;
    std::optional<Domain> domain;
    bool have_header = false;
    std::size_t expected_clauses = 0;
    std::vector<Lit> pending;
    std::size_t line_no = 0;
    std::string line;

    while (std::getline(in, line)) {
        ++line_no;
        if (! line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (line[0] == 'c') {
            if (have_header)
                continue;
            auto kv = key_values(line.substr(1));
            if (kv.contains("variant"))
                meta = kv;
            else if (kv.contains("domain"))
                try {
                    domain = parse_domain(kv["domain"]);
                }
                catch (const InvalidParameters & e) {
                    throw ParseError(line_no, e.what());
                }
            continue;
        }
        if (line[0] == 'p') {
            if (have_header)
                throw ParseError(line_no, "duplicate problem line");
            std::istringstream p{line};
            std::string tag, fmt, vars, clauses, extra;
            p >> tag >> fmt >> vars >> clauses;
            if (tag != "p" || fmt != "cnf" || clauses.empty() || (p >> extra))
                throw ParseError(line_no, "malformed problem line: '" + line + "'");
            cnf.num_vars = to_int(vars, line_no, "variable count");
            const int c = to_int(clauses, line_no, "clause count");
            if (cnf.num_vars < 0 || c < 0)
                throw ParseError(line_no, "negative count in problem line");
            expected_clauses = static_cast<std::size_t>(c);
            cnf.clauses.reserve(expected_clauses);
            have_header = true;
            continue;
        }
        if (! have_header)
            throw ParseError(line_no, "clause data before problem line");
        std::istringstream body{line};
        std::string token;
        while (body >> token) {
            const int lit = to_int(token, line_no, "literal");
            if (lit == 0) {
                if (cnf.clauses.size() == expected_clauses)
                    throw ParseError(line_no, "more clauses than declared");
                cnf.clauses.emplace_back(std::move(pending));
                pending.clear();
            }
            else {
                if (lit > cnf.num_vars || -lit > cnf.num_vars)
                    throw ParseError(line_no, "literal " + token + " exceeds declared variable count");
                pending.emplace_back(lit);
            }
        }
    }
    if (! have_header)
        throw ParseError(line_no, "missing problem line");
    if (! pending.empty())
        throw ParseError(line_no, "unterminated final clause");
    if (cnf.clauses.size() != expected_clauses)
        throw ParseError(line_no, "declared " + std::to_string(expected_clauses) + " clauses, found "
            + std::to_string(cnf.clauses.size()));

    if (! meta.empty()) {
        try {
            InstanceDescriptor d;
            d.variant = parse_variant(meta.at("variant"));
            d.n = to_int(meta.at("n"), 1, "n");
            d.k = to_int(meta.at("k"), 1, "k");
            d.colors = to_int(meta.at("colors"), 1, "colors");
            d.domain = domain.value_or(variant_domain(d.variant));
            if (d.numbering().num_vars() != cnf.num_vars)
                throw ParseError(line_no, "variable count does not match the instance metadata");
            cnf.info = d;
        }
        catch (const std::out_of_range &) {
            throw ParseError(1, "incomplete instance metadata line");
        }
        catch (const InvalidParameters & e) {
            throw ParseError(1, e.what());
        }
    }
    return cnf;
}

auto parse_dimacs(const std::string & text) -> Cnf
{
    std::istringstream in{text};
    return parse_dimacs(in);
}

auto read_dimacs_file(const std::string & path) -> Cnf
{
    std::ifstream in{path};
    if (! in)
        throw std::runtime_error("cannot open " + path);
    return parse_dimacs(in);
}

void write_dimacs_file(const Cnf & cnf, const std::string & path)
{
    std::ofstream out{path, std::ios::binary};
    if (! out)
        throw std::runtime_error("cannot write " + path);
    write_dimacs(cnf, out);
}

} // namespace kneser
