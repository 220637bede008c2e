#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <nilnov/charorder.hpp>
#include <nilnov/error.hpp>
#include <nilnov/groupring.hpp>
#include <nilnov/homology.hpp>
#include <nilnov/iterfrac.hpp>
#include <nilnov/novikov.hpp>
#include <nilnov/pcgroup.hpp>
#include <nilnov/presentations.hpp>
#include <nilnov/subgroup.hpp>
#include <nilnov/text.hpp>

using namespace nilnov;

namespace
{

constexpr const char *format_version = "1";

constexpr int exit_ok = 0;
constexpr int exit_error = 1;
constexpr int exit_inconclusive = 2;

struct Options {
    std::string verb;
    std::vector<std::string> inputs;
    std::string group_file;
    std::string chi_file;
    std::string quotient = "nq1";
    std::string map;
    std::string frontier;
    std::optional<unsigned> m_max;
    std::string field = "Q";
    std::string signs;
    bool sweep = false;
    std::size_t cls = 1;
    std::size_t degree = 2;
    std::size_t rank = 0;
    unsigned jobs = 1;
};

Field parse_field(const std::string &s)
{
    if (s == "Q" || s == "0") {
        return Field::rationals();
    }
    std::string digits = (!s.empty() && (s[0] == 'F' || s[0] == 'f')) ? s.substr(1) : s;
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
        throw InvalidArgument("field must be Q, F<p> or a prime, got '" + s + "'");
    }
    return Field::prime(std::stoul(digits));
}

unsigned effective_m_max(const Options &o)
{
    if (o.m_max) {
        return *o.m_max;
    }
    if (const char *env = std::getenv("NILNOV_MMAX")) {
        const auto v = text::parse_integer(env);
        if (v < 1 || !v.fits_uint_p()) {
            throw InvalidArgument("NILNOV_MMAX must be a positive integer");
        }
        return static_cast<unsigned>(v.get_ui());
    }
    return default_m_max;
}

Trunc effective_trunc(const Options &o, std::size_t levels)
{
    Trunc t;
    t.m_max = effective_m_max(o);
    if (o.frontier.empty()) {
        t.frontier.assign(levels, default_frontier_entry);
        return t;
    }
    std::string s = o.frontier;
    for (auto &c : s) {
        if (c == ',' || c == '(' || c == ')') {
            c = ' ';
        }
    }
    for (const auto &tok : text::split_ws(s)) {
        t.frontier.push_back(text::parse_rational(tok));
    }
    if (t.frontier.size() == 1 && levels > 1) {
        t.frontier.assign(levels, t.frontier[0]);
    }
    if (t.frontier.size() != levels) {
        throw InvalidArgument("frontier needs " + std::to_string(levels) + " entries");
    }
    for (const auto &x : t.frontier) {
        if (x <= 0) {
            throw InvalidArgument("frontier entries must be positive");
        }
    }
    return t;
}

std::vector<int> parse_signs(const std::string &s, std::size_t levels)
{
    if (s.empty()) {
        return std::vector<int>(levels, 1);
    }
    if (s.size() != levels || s.find_first_not_of("+-") != std::string::npos) {
        throw InvalidArgument("sign pattern must be " + std::to_string(levels) + " characters from '+-'");
    }
    std::vector<int> out;
    for (char c : s) {
        out.push_back(c == '+' ? 1 : -1);
    }
    return out;
}

struct Header {
    std::string frontier = "-";
    std::string m_max = "-";
    std::string field = "-";
    std::string signs = "-";
};

void print_header(const Options &o, const Header &h)
{
    std::cout << "# nilnov report format " << format_version << '\n';
    std::cout << "# verb: " << o.verb << '\n';
    std::cout << "# inputs:";
    if (!o.group_file.empty()) {
        std::cout << " group=" << o.group_file;
    }
    if (!o.chi_file.empty()) {
        std::cout << " char=" << o.chi_file;
    }
    for (const auto &i : o.inputs) {
        std::cout << " \"" << i << '"';
    }
    std::cout << '\n';
    std::cout << "# frontier: " << h.frontier << '\n';
    std::cout << "# m_max: " << h.m_max << '\n';
    std::cout << "# field: " << h.field << '\n';
    std::cout << "# signs: " << h.signs << '\n';
}

const std::string &input(const Options &o, std::size_t k, const char *what)
{
    if (o.inputs.size() <= k) {
        throw InvalidArgument(std::string("missing argument: ") + what);
    }
    return o.inputs[k];
}

PcGroupPtr load_group(const std::string &path)
{
    return parse_pc(text::read_file(path));
}

MultiChar load_chi(const Options &o, const PcGroupPtr &g)
{
    if (o.chi_file.empty()) {
        throw InvalidArgument("a multicharacter file is required (--char)");
    }
    return parse_mchar(text::read_file(o.chi_file), g);
}

QuotientMap load_quotient(const Options &o, const Presentation &p)
{
    if (o.quotient == "self" || o.quotient == "nq1") {
        return nilpotent_quotient(p, 1);
    }
    if (o.quotient == "nq2") {
        return nilpotent_quotient(p, 2);
    }
    auto target = load_group(o.quotient);
    if (o.map.empty()) {
        throw InvalidArgument("--map is required with a target group file");
    }
    return parse_quotient_map(o.map, p, std::move(target));
}

std::string join_frontier(const DegTuple &d)
{
    std::string s = "(";
    for (std::size_t i = 0; i < d.size(); ++i) {
        s += (i ? "," : "") + d[i].get_str();
    }
    return s + ")";
}

int run_collect(const Options &o)
{
    const auto g = load_group(input(o, 0, "group file"));
    print_header(o, {});
    std::cout << g->format(g->collect(parse_word(*g, input(o, 1, "word")))) << '\n';
    return exit_ok;
}

int run_order(const Options &o)
{
    const auto g = load_group(input(o, 0, "group file"));
    const auto chi = load_chi(o, g);
    const auto ord = LexOrder::from_multichar(chi);
    print_header(o, {"-", "-", "-", chi.sign_pattern()});
    const Elt x = g->collect(parse_word(*g, input(o, 1, "first element")));
    const Elt y = g->collect(parse_word(*g, input(o, 2, "second element")));
    std::cout << to_string(ord.compare(x, y)) << '\n';
    return exit_ok;
}

int run_fit_char(const Options &o)
{
    if (o.rank == 0) {
        throw InvalidArgument("--rank is required");
    }
    std::vector<intmat::IntVec> chain;
    for (const auto &tok : text::split_ws(input(o, 0, "chain"))) {
        std::string s = tok;
        for (auto &c : s) {
            if (c == ',') {
                c = ' ';
            }
        }
        intmat::IntVec v;
        for (const auto &x : text::split_ws(s)) {
            v.push_back(text::parse_integer(x));
        }
        if (v.size() != o.rank) {
            throw InvalidArgument("chain entry '" + tok + "' does not have rank " + std::to_string(o.rank));
        }
        chain.push_back(std::move(v));
    }
    print_header(o, {});
    const auto v = fit_character(o.rank, chain);
    for (std::size_t k = 0; k < v.size(); ++k) {
        std::cout << (k ? " " : "") << v[k].get_str();
    }
    std::cout << '\n';
    return exit_ok;
}

int run_lcs(const Options &o)
{
    const auto g = load_group(input(o, 0, "group file"));
    const auto bound = std::max<std::size_t>(o.cls, g->num_levels() + 1);
    const auto s = lower_central_series(g, bound);
    print_header(o, {});
    for (std::size_t k = 0; k < s.gamma.terms.size(); ++k) {
        std::cout << "gamma_" << k + 1 << " = " << s.gamma.terms[k].describe() << "   isolator = "
                  << s.isolators.terms[k].describe() << '\n';
    }
    if (s.gamma.class_bound_exceeded) {
        std::cout << "# class bound exceeds the nilpotency class; trailing terms are trivial\n";
    }
    return exit_ok;
}

int run_refine(const Options &o)
{
    const auto g = load_group(input(o, 0, "group file"));
    const auto s = free_abelianization_refine(g);
    print_header(o, {});
    for (std::size_t k = 0; k < s.terms.size(); ++k) {
        std::cout << "K_" << k << " = " << s.terms[k].describe() << "   hirsch " << s.terms[k].hirsch_length() << '\n';
    }
    return exit_ok;
}

int run_ring_mul(const Options &o)
{
    const auto g = load_group(input(o, 0, "group file"));
    const Field f = parse_field(o.field);
    print_header(o, {"-", "-", f.name(), "-"});
    const auto x = parse_ring(input(o, 1, "first element"), g, f);
    const auto y = parse_ring(input(o, 2, "second element"), g, f);
    std::cout << ring_mul(x, y).format() << '\n';
    return exit_ok;
}

int run_nov_invert(const Options &o)
{
    if (o.group_file.empty()) {
        throw InvalidArgument("--group is required");
    }
    const auto g = load_group(o.group_file);
    const Field f = parse_field(o.field);
    const auto chi = load_chi(o, g).with_signs(parse_signs(o.signs, g->num_levels()));
    const auto t = effective_trunc(o, g->num_levels());
    print_header(o, {t.frontier_str(), std::to_string(t.m_max), f.name(), chi.sign_pattern()});
    const NovSeries beta(parse_ring(input(o, 0, "ring element"), g, f), chi, t);
    std::cout << nov_invert(beta).format() << '\n';
    return exit_ok;
}

int run_expand(const Options &o)
{
    if (o.group_file.empty()) {
        throw InvalidArgument("--group is required");
    }
    const auto g = load_group(o.group_file);
    const Field f = parse_field(o.field);
    const auto chi = load_chi(o, g).with_signs(parse_signs(o.signs, g->num_levels()));
    const auto t = effective_trunc(o, g->num_levels());
    print_header(o, {t.frontier_str(), std::to_string(t.m_max), f.name(), chi.sign_pattern()});
    const auto frac = parse_iterfrac(input(o, 0, "fraction"), g, f);
    std::cout << expand(*frac, chi, t).format() << '\n';
    return exit_ok;
}

int run_fox(const Options &o)
{
    const auto p = parse_presentation(text::read_file(input(o, 0, "presentation file")));
    const Field f = parse_field(o.field);
    const auto q = load_quotient(o, p);
    const auto c = fox_complex(q, f);
    print_header(o, {"-", "-", f.name(), "-"});
    std::cout << "quotient: " << q.target()->name() << "  " << q.describe() << '\n';
    std::cout << "ranks: " << c.ranks[0] << ' ' << c.ranks[1] << ' ' << c.ranks[2] << '\n';
    for (std::size_t g = 0; g < c.ranks[1]; ++g) {
        std::cout << "d1[" << c.gen_names[g] << "] = " << c.d1[g].format() << '\n';
    }
    for (std::size_t r = 0; r < c.ranks[2]; ++r) {
        for (std::size_t g = 0; g < c.ranks[1]; ++g) {
            std::cout << "d2[" << c.gen_names[g] << "][" << c.relator_names[r] << "] = " << c.d2[g][r].format() << '\n';
        }
    }
    bool identity = true;
    for (const auto &r : p.relators()) {
        identity = identity && p.fox_identity_holds(r);
    }
    std::cout << "fox identity: " << (identity ? "holds" : "FAILS") << '\n';
    std::cout << "d1 d2 = 0: " << (c.boundary_squares_to_zero() ? "holds" : "FAILS") << '\n';
    return exit_ok;
}

int run_nq(const Options &o)
{
    const auto p = parse_presentation(text::read_file(input(o, 0, "presentation file")));
    const auto q = nilpotent_quotient(p, o.cls);
    print_header(o, {});
    std::cout << q.target()->to_pcg();
    std::cout << "# map: " << q.describe() << '\n';
    return exit_ok;
}

int run_betti(const Options &o)
{
    const auto p = parse_presentation(text::read_file(input(o, 0, "presentation file")));
    const Field f = parse_field(o.field);
    const auto c = fox_complex(load_quotient(o, p), Field::rationals());
    const auto r = betti(c, f);
    print_header(o, {"-", "-", f.name(), "-"});
    std::cout << "betti";
    for (auto b : r.ranks) {
        std::cout << ' ' << b;
    }
    std::cout << '\n';
    return exit_ok;
}

void print_report_table(const std::vector<RankReport> &reports)
{
    std::cout << "pattern  degree  verdict                   stable  frontier  doubled  ranks\n";
    for (const auto &r : reports) {
        for (std::size_t d = 0; d < r.verdicts.size(); ++d) {
            if (d != r.degree) {
                continue;
            }
            std::ostringstream ranks;
            if (r.ranks_known) {
                for (std::size_t k = 0; k < r.ranks.size(); ++k) {
                    ranks << (k ? "," : "") << r.ranks[k];
                }
            } else {
                ranks << "?";
            }
            std::string v = to_string(r.verdicts[d]);
            v.resize(std::max<std::size_t>(v.size(), 24), ' ');
            std::string pat = r.sign_pattern;
            pat.resize(std::max<std::size_t>(pat.size(), 7), ' ');
            std::cout << pat << "  " << d << "       " << v << "  " << (r.stable[d] ? "yes" : "no ") << "     "
                      << r.trunc.frontier_str() << "  " << join_frontier(r.doubled_frontier) << "  " << ranks.str()
                      << '\n';
        }
    }
    for (const auto &r : reports) {
        const auto d = r.degree;
        if (r.witnesses.size() > d && r.witnesses[d]) {
            std::cout << "witness " << r.sign_pattern << ' ' << d << ':';
            for (const auto &x : *r.witnesses[d]) {
                std::cout << " [" << x.format() << ']';
            }
            std::cout << '\n';
        }
        if (!r.note.empty()) {
            std::cout << "note " << r.sign_pattern << ": " << r.note << '\n';
        }
    }
    for (const auto &r : reports) {
        std::cout << "verdict " << r.sign_pattern << ' ' << r.degree << ' ' << to_string(r.verdict()) << ' '
                  << r.trunc.frontier_str() << '\n';
    }
}

int run_nov_h(const Options &o)
{
    const auto p = parse_presentation(text::read_file(input(o, 0, "presentation file")));
    const Field f = parse_field(o.field);
    const auto q = load_quotient(o, p);
    const auto chi = load_chi(o, q.target());
    const auto t = effective_trunc(o, q.target()->num_levels());
    const auto c = fox_complex(q, f);
    std::vector<std::vector<int>> patterns;
    if (o.sweep) {
        patterns = sign_patterns(chi.size());
    } else {
        patterns.push_back(parse_signs(o.signs, chi.size()));
    }
    print_header(o, {t.frontier_str(), std::to_string(t.m_max), f.name(), o.sweep ? "sweep" : chi.with_signs(patterns[0]).sign_pattern()});
    std::vector<RankReport> reports;
    for (const auto &s : patterns) {
        reports.push_back(nov_cohomology(c, chi.with_signs(s), o.degree, t));
    }
    print_report_table(reports);
    bool inconclusive = false;
    for (const auto &r : reports) {
        inconclusive = inconclusive || r.verdict() == Verdict::inconclusive;
    }
    return inconclusive ? exit_inconclusive : exit_ok;
}

int run_theorem_f(const Options &o)
{
    const auto p = parse_presentation(text::read_file(input(o, 0, "presentation file")));
    const Field f = parse_field(o.field);
    const auto q = load_quotient(o, p);
    const auto chi = load_chi(o, q.target());
    const auto t = effective_trunc(o, q.target()->num_levels());
    if (!o.sweep) {
        std::cerr << "note: theorem-f always evaluates every sign pattern\n";
    }
    print_header(o, {t.frontier_str(), std::to_string(t.m_max), f.name(), "sweep"});
    const auto v = theorem_f(q, chi, o.degree, t, f, o.jobs);
    std::cout << "quotient: " << q.target()->name() << "  " << q.describe() << '\n';
    print_report_table(v.reports);
    std::cout << "conclusion: " << to_string(v.conclusion) << '\n';
    if (v.conclusion == Conclusion::cd_drop) {
        std::cout << "# the kernel of the quotient map has cohomological dimension < " << o.degree
                  << " over " << f.name() << ", assuming the finiteness hypothesis\n";
    }
    return v.conclusion == Conclusion::inconclusive ? exit_inconclusive : exit_ok;
}

int run_euler(const Options &o)
{
    const auto p = parse_presentation(text::read_file(input(o, 0, "presentation file")));
    const auto q = load_quotient(o, p);
    const Field f = parse_field(o.field);
    const auto c = fox_complex(q, f);
    std::vector<RankReport> reports{betti(c, Field::rationals()), betti(c, Field::prime(2))};
    Header h{"-", "-", f.name(), "-"};
    if (!o.chi_file.empty()) {
        const auto chi = load_chi(o, q.target());
        const auto t = effective_trunc(o, q.target()->num_levels());
        h = {t.frontier_str(), std::to_string(t.m_max), f.name(), "sweep"};
        for (const auto &s : sign_patterns(chi.size())) {
            reports.push_back(nov_cohomology(c, chi.with_signs(s), 0, t));
        }
    }
    print_header(o, h);
    const auto e = euler_check(c, reports);
    std::cout << "euler characteristic: " << e.euler_characteristic << '\n';
    std::cout << "alternating sums:";
    for (auto s : e.sums) {
        std::cout << ' ' << s;
    }
    std::cout << "\nconsistent: yes\n";
    return exit_ok;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Exact group-ring, Novikov-ring and Novikov-homology computations"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App *s) {
        s->add_option("inputs", o.inputs, "Input files and expressions");
        s->add_option("--field", o.field, "Coefficient field: Q, F<p> or a prime");
    };
    auto novikov_opts = [&](CLI::App *s) {
        s->add_option("--char,--chi", o.chi_file, "Multicharacter file (.mchar)");
        s->add_option("--frontier", o.frontier, "Truncation frontier, e.g. 5 or 3,3");
        s->add_option("--mmax", o.m_max, "Cap on geometric-series terms");
        s->add_option("--signs", o.signs, "Sign pattern such as +- ");
    };
    auto quotient_opts = [&](CLI::App *s) {
        s->add_option("--quotient", o.quotient, "self, nq1, nq2 or a target .pcg file");
        s->add_option("--map", o.map, "Generator images for a target file, e.g. \"a=t b=1\"");
    };

    struct Verb {
        const char *name;
        const char *help;
        int (*run)(const Options &);
    };
    const std::vector<Verb> verbs{
        {"collect", "Normal form of a word: collect <group.pcg> <word>", run_collect},
        {"order", "Compare two elements: order <group.pcg> <g> <h> --char <file>", run_order},
        {"fit-char", "Fit a character to a chain: fit-char --rank n \"0,1 1,0 1,1\"", run_fit_char},
        {"lcs", "Lower central series and isolators: lcs <group.pcg> [-c bound]", run_lcs},
        {"refine", "Free-abelianisation refinement: refine <group.pcg>", run_refine},
        {"ring-mul", "Group-ring product: ring-mul <group.pcg> <x> <y>", run_ring_mul},
        {"nov-invert", "Certified Novikov inverse: nov-invert --group <pcg> --char <file> <beta>", run_nov_invert},
        {"expand", "Expand an iterated fraction: expand --group <pcg> --char <file> <fraction>", run_expand},
        {"fox", "Fox-calculus chain complex: fox <pres.fpg> [--quotient q]", run_fox},
        {"nq", "Nilpotent quotient: nq <pres.fpg> -c 1|2", run_nq},
        {"betti", "Betti numbers: betti <pres.fpg> [--field]", run_betti},
        {"nov-h", "Novikov cohomology: nov-h <pres.fpg> --char <file> -d n [--signs|--sweep]", run_nov_h},
        {"theorem-f", "Sign-swept vanishing criterion: theorem-f <pres.fpg> --char <file> -d n", run_theorem_f},
        {"euler", "Euler-characteristic consistency: euler <pres.fpg> [--char <file>]", run_euler},
    };
    std::vector<std::pair<CLI::App *, const Verb *>> subs;
    for (const auto &v : verbs) {
        auto *s = app.add_subcommand(v.name, v.help);
        common(s);
        subs.emplace_back(s, &v);
        const std::string name = v.name;
        if (name == "order" || name == "nov-invert" || name == "expand" || name == "nov-h" || name == "theorem-f" ||
            name == "euler") {
            novikov_opts(s);
        }
        if (name == "nov-invert" || name == "expand") {
            s->add_option("--group", o.group_file, "Group file (.pcg)");
        }
        if (name == "fox" || name == "betti" || name == "nov-h" || name == "theorem-f" || name == "euler") {
            quotient_opts(s);
        }
        if (name == "nov-h" || name == "theorem-f") {
            s->add_option("-d,--degree", o.degree, "Cohomological degree");
            s->add_flag("--sweep", o.sweep, "Evaluate every sign pattern");
        }
        if (name == "theorem-f") {
            s->add_option("--jobs", o.jobs, "Sign patterns evaluated concurrently");
        }
        if (name == "lcs" || name == "nq") {
            s->add_option("-c,--class", o.cls, "Class bound");
        }
        if (name == "fit-char") {
            s->add_option("--rank", o.rank, "Lattice rank");
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? exit_ok : exit_error;
    }
    for (const auto &[s, v] : subs) {
        if (s->parsed()) {
            o.verb = v->name;
            std::ostringstream report;
            auto *saved = std::cout.rdbuf(report.rdbuf());
            try {
                const int rc = v->run(o);
                std::cout.rdbuf(saved);
                std::cout << report.str();
                return rc;
            } catch (const Error &e) {
                std::cout.rdbuf(saved);
                std::cerr << "error: " << e.what() << '\n';
                return exit_error;
            }
        }
    }
    return exit_error;
}
