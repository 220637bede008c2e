// Acceptance run: one PASS/FAIL line per criterion.
//
//   acceptance [--cli <path to nilnov>] [--expected-fail N]...
//
// Exits 0 when every criterion passes except those named with
// --expected-fail, which must fail.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nilnov/charorder.hpp>
#include <nilnov/error.hpp>
#include <nilnov/groupring.hpp>
#include <nilnov/homology.hpp>
#include <nilnov/iterfrac.hpp>
#include <nilnov/novikov.hpp>
#include <nilnov/presentations.hpp>

#include "random_fracs.hpp"
#include "support.hpp"

using namespace nilnov;
using namespace nilnov::testing;

namespace
{

struct Outcome {
    bool pass = false;
    std::string detail;
};

const std::vector<std::string> corpus{"torus.fpg", "f2.fpg", "bs12.fpg", "mapping_torus.fpg"};

Presentation load(const std::string &name)
{
    return parse_presentation(read_data(name));
}

QuotientMap abelian(const std::string &name)
{
    return nilpotent_quotient(load(name), 1);
}

RatVec random_vec(Rng &rng, std::size_t n)
{
    RatVec v(n);
    while (std::all_of(v.begin(), v.end(), [](const mpq_class &x) { return x == 0; })) {
        for (auto &x : v) {
            x = mpq_class(uniform(rng, -5, 5), uniform(rng, 1, 4));
            x.canonicalize();
        }
    }
    return v;
}

MultiChar random_chi(Rng &rng, const PcGroupPtr &g)
{
    std::vector<Char> cs;
    for (std::size_t i = 0; i < g->num_levels(); ++i) {
        cs.push_back({i, random_vec(rng, g->level_rank(i))});
    }
    return MultiChar(g, cs);
}

Cmp flip(Cmp c)
{
    return c == Cmp::less ? Cmp::greater : c == Cmp::greater ? Cmp::less : Cmp::equal;
}

Outcome collection_oracle()
{
    const auto h = heisenberg();
    Rng rng(1001);
    for (int k = 0; k < 1000; ++k) {
        const Word w = random_word(rng, *h, 12, 5);
        if (!(uni_normal_form(h->collect(w)) == uni_word(w))) {
            return {false, "word " + std::to_string(k) + " disagrees with its matrix"};
        }
    }
    return {true, "1000 words agree with unitriangular matrices"};
}

Outcome order_axioms()
{
    Rng rng(1002);
    for (const auto &g : {heisenberg(), free_abelian(3)}) {
        for (int k = 0; k < 1000; ++k) {
            const auto ord = LexOrder::from_multichar(random_chi(rng, g));
            const Elt x = random_elt(rng, *g), y = random_elt(rng, *g), z = random_elt(rng, *g);
            const Cmp xy = ord.compare(x, y);
            const bool ok = (xy == Cmp::equal) == (x == y) && ord.compare(y, x) == flip(xy) &&
                            ord.compare(g->mul(z, x), g->mul(z, y)) == xy &&
                            ord.compare(g->mul(x, z), g->mul(y, z)) == xy;
            if (!ok) {
                return {false, g->name() + " triple " + std::to_string(k)};
            }
        }
    }
    return {true, "1000 triples each in H3 and Z^3"};
}

Outcome chain_fitting()
{
    const auto z3 = free_abelian(3);
    Rng rng(1003);
    for (int k = 0; k < 200; ++k) {
        const auto ord = LexOrder::from_multichar(random_chi(rng, z3));
        std::vector<intmat::IntVec> chain;
        const auto len = uniform(rng, 1, 6);
        while (static_cast<long>(chain.size()) < len) {
            intmat::IntVec v{uniform(rng, -4, 4), uniform(rng, -4, 4), uniform(rng, -4, 4)};
            if (std::find(chain.begin(), chain.end(), v) == chain.end()) {
                chain.push_back(v);
            }
        }
        std::sort(chain.begin(), chain.end(),
                  [&](const auto &a, const auto &b) { return ord.compare_level(0, a, b) == Cmp::less; });
        const Char c{0, fit_character(3, chain)};
        for (std::size_t j = 0; j + 1 < chain.size(); ++j) {
            if (!(c(chain[j]) < c(chain[j + 1]))) {
                return {false, "chain " + std::to_string(k) + " not preserved"};
            }
        }
    }
    return {true, "200 chains, zero failures"};
}

// 1 / beta as a level-0 fraction whose coefficients are the deeper parts.
IterFracPtr reciprocal(const RingElt &beta)
{
    const auto &g = *beta.group();
    std::map<Elt, RingElt> by_part;
    for (const auto &[e, c] : beta.terms()) {
        const Elt part = g.from_level_vector(0, g.level_vector(e, 0));
        auto [it, fresh] = by_part.try_emplace(part, RingElt(beta.group(), beta.field()));
        it->second.add_term(g.mul(g.inverse(part), e), c);
    }
    std::vector<FracTerm> den;
    for (const auto &[part, coef] : by_part) {
        den.push_back({IterFrac::leaf(coef), part});
    }
    return IterFrac::node(0, {{IterFrac::leaf(RingElt::one(beta.group(), beta.field())), g.identity()}}, den);
}

// Residuals of beta against an inverse computed independently at a much
// deeper working box, on beta's certificate region.
bool clears_both(const NovSeries &beta)
{
    const auto &chi = beta.chi();
    const auto &T = beta.trunc().frontier;
    auto box = working_box(T, beta.body(), chi);
    for (std::size_t i = 1; i < box.size(); ++i) {
        box[i] = T[i] + 64 * (box[i] - T[i]);
    }
    const auto gamma = invert_truncated(beta.body(), chi, box, 4096);
    const auto one = RingElt::one(beta.body().group(), beta.body().field());
    const auto md = min_degrees(beta.body(), chi);
    DegTuple lo(md.size());
    for (std::size_t i = 0; i < md.size(); ++i) {
        lo[i] = T[i] + std::min(mpq_class(0), md[i]);
    }
    return truncate(ring_mul(beta.body(), gamma) - one, chi, lo).is_zero() &&
           truncate(ring_mul(gamma, beta.body()) - one, chi, lo).is_zero() &&
           truncate(gamma, chi, T) == nov_invert(beta).body();
}

Outcome inversion_certificates()
{
    Rng rng(1004);
    const auto q = Field::rationals();
    const std::vector<std::pair<PcGroupPtr, long>> groups{{parse_pc(read_data("z.pcg")), 6}, {heisenberg(), 3}};
    int done = 0;
    for (const auto &[g, t] : groups) {
        for (int k = 0; k < 50; ++k) {
            RingElt beta(g, q);
            while (beta.size() < 2) {
                beta.add_term(random_elt(rng, *g, 3, 2), FieldElem(q, uniform(rng, 1, 4) * (uniform(rng, 0, 1) ? 1 : -1)));
            }
            const auto ord = LexOrder::from_multichar(random_chi(rng, g));
            const auto chi = fit_multicharacter({reciprocal(beta)}, ord);
            const Trunc trunc = Trunc::uniform(g->num_levels(), t);
            try {
                const NovSeries b(beta, chi, trunc);
                const auto gamma = nov_invert(b);
                const auto fine = nov_invert(NovSeries(beta, chi, trunc.doubled()));
                if (!clears_both(b)) {
                    return {false, "residual of " + beta.format() + " does not clear"};
                }
                if (!(truncate(fine.body(), chi, trunc.frontier) == gamma.body())) {
                    return {false, "doubling changes the inverse of " + beta.format() + " under " + chi.to_mchar()};
                }
            } catch (const Error &e) {
                return {false, beta.format() + " under " + chi.to_mchar() + ": " + e.what()};
            }
            ++done;
        }
    }
    return {true, std::to_string(done) + " elements over Z and H3, both residuals clear"};
}

Outcome multicharacter_fitting()
{
    const auto h = heisenberg();
    Rng rng(1005);
    for (int k = 0; k < 50; ++k) {
        const auto f = random_tree(rng, h, Field::rationals());
        const auto ord = LexOrder::from_multichar(random_chi(rng, h));
        try {
            const auto chi = fit_multicharacter({f}, ord);
            if (!is_compatible(chi, *f, ord)) {
                return {false, "fitted multicharacter incompatible with " + f->format()};
            }
        } catch (const Error &e) {
            return {false, f->format() + ": " + e.what()};
        }
    }
    return {true, "50 trees, zero failures"};
}

Outcome field_betti()
{
    const std::vector<std::pair<std::string, std::vector<long>>> expected{
        {"torus.fpg", {1, 2, 1}}, {"f2.fpg", {1, 2}}, {"bs12.fpg", {1, 1, 0}}};
    for (const Field f : {Field::rationals(), Field::prime(2)}) {
        for (const auto &[file, ranks] : expected) {
            const auto got = betti(fox_complex(abelian(file), Field::rationals()), f).ranks;
            if (got != ranks) {
                return {false, file + " over " + f.name()};
            }
        }
    }
    return {true, "Z^2 (1,2,1), F2 (1,2), BS(1,2) (1,1,0) over Q and F2"};
}

Outcome torus_vanishing()
{
    const auto q = abelian("torus.fpg");
    const auto c = fox_complex(q, Field::rationals());
    for (const char *chi : {"char 0: a=1 b=0", "char 0: a=0 b=1", "char 0: a=1 b=1", "char 0: a=1 b=-1"}) {
        const auto r = nov_cohomology(c, parse_mchar(chi, q.target()), 2, Trunc::uniform(1, 8));
        for (std::size_t d = 0; d < 3; ++d) {
            if (r.verdicts[d] != Verdict::vanishes || !r.stable[d] || r.doubled_frontier != DegTuple{16}) {
                return {false, std::string(chi) + " degree " + std::to_string(d) + ": " + to_string(r.verdicts[d])};
            }
        }
    }
    return {true, "4 characters, degrees 0-2, stable at (8) and (16)"};
}

Outcome mapping_torus_criterion()
{
    const auto q = abelian("mapping_torus.fpg");
    const auto v = theorem_f(q, parse_mchar("char 0: t=1", q.target()), 2, Trunc::uniform(1, 8));
    if (v.conclusion != Conclusion::cd_drop || v.reports.size() != 2) {
        return {false, to_string(v.conclusion)};
    }
    return {true, "cd-drop certified for +/-; kernel F2 has cd 1 < 2"};
}

Outcome baumslag_solitar_asymmetry()
{
    const auto q = abelian("bs12.fpg");
    const auto c = fox_complex(q, Field::rationals());
    const auto chi = parse_mchar("char 0: t=1", q.target());
    const auto plus = nov_cohomology(c, chi.with_signs({1}), 1, Trunc::uniform(1, 8));
    const auto minus = nov_cohomology(c, chi.with_signs({-1}), 1, Trunc::uniform(1, 8));
    const std::string seen = "+chi " + to_string(plus.verdict()) + ", -chi " + to_string(minus.verdict());
    const bool ok = plus.verdict() == Verdict::vanishes && plus.stable[1] && minus.verdict() == Verdict::witness &&
                    minus.stable[1];
    return {ok, seen + (ok ? "" : "; t - 2 is a unit over Q for both signs")};
}

Outcome euler_consistency()
{
    std::size_t checked = 0;
    for (const auto &file : corpus) {
        const auto q = abelian(file);
        for (const Field f : {Field::rationals(), Field::prime(2)}) {
            const auto c = fox_complex(q, f);
            std::vector<RankReport> reports{betti(c, Field::rationals()), betti(c, Field::prime(2))};
            for (std::size_t g = 0; g < q.target()->num_gens(); ++g) {
                RatVec v(q.target()->num_gens(), 0);
                v[g] = 1;
                const MultiChar chi(q.target(), {Char{0, v}});
                for (const auto &s : sign_patterns(1)) {
                    reports.push_back(nov_cohomology(c, chi.with_signs(s), 0, Trunc::uniform(1, 8)));
                }
            }
            try {
                const auto e = euler_check(c, reports);
                checked += e.sums.size();
            } catch (const InconsistentReport &e) {
                return {false, file + " over " + f.name() + ": " + e.what()};
            }
        }
    }
    return {true, std::to_string(checked) + " reports agree with the Euler characteristic"};
}

Outcome fox_identity()
{
    std::size_t relators = 0;
    for (const auto &file : corpus) {
        const auto p = load(file);
        for (const auto &r : p.relators()) {
            if (!p.fox_identity_holds(r)) {
                return {false, file + ": " + p.format_word(r)};
            }
            ++relators;
        }
        for (const Field f : {Field::rationals(), Field::prime(2)}) {
            for (std::size_t c = 1; c <= 2; ++c) {
                if (!fox_complex(nilpotent_quotient(p, c), f).boundary_squares_to_zero()) {
                    return {false, file + ": d1 d2 != 0"};
                }
            }
        }
    }
    return {true, std::to_string(relators) + " relators, d1 d2 = 0 on every complex"};
}

std::string run_capture(const std::string &cmd, int &status)
{
    std::string out;
    FILE *pipe = popen((cmd + " 2>&1").c_str(), "r");
    if (!pipe) {
        status = -1;
        return out;
    }
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        out.append(buf.data(), n);
    }
    status = pclose(pipe);
    return out;
}

Outcome cli_determinism(const std::string &cli)
{
    if (cli.empty()) {
        return {false, "no CLI given (--cli)"};
    }
    const std::string d = NILNOV_DATA_DIR;
    const std::vector<std::string> runs{
        "collect " + d + "/heis.pcg 'b a'",
        "nov-invert --group " + d + "/z.pcg --chi " + d + "/chi_z.mchar '1 - t' --frontier 5",
        "expand --group " + d + "/heis.pcg --chi " + d + "/chi_heis.mchar '(1 - (1 - c)^-1 a)^-1' --frontier 3,4",
        "theorem-f " + d + "/torus.fpg --quotient self --char " + d + "/chi_ab.mchar -d 2 --sweep",
        "theorem-f " + d + "/mapping_torus.fpg --char " + d + "/chi_t.mchar -d 2 --sweep --jobs 2",
        "nov-h " + d + "/bs12.fpg --char " + d + "/chi_t.mchar -d 1 --sweep",
        "betti " + d + "/bs12.fpg --field F2",
        "euler " + d + "/f2.fpg --char " + d + "/chi_ab.mchar",
        "fox " + d + "/mapping_torus.fpg",
        "nq " + d + "/f2.fpg -c 2",
    };
    for (const auto &r : runs) {
        int first_status = 0;
        const std::string first = run_capture(cli + " " + r, first_status);
        for (int k = 1; k < 3; ++k) {
            int status = 0;
            if (run_capture(cli + " " + r, status) != first || status != first_status) {
                return {false, "output differs: " + r};
            }
        }
    }
    return {true, std::to_string(runs.size()) + " CLI runs byte-identical over 3 repetitions"};
}

} // namespace

int main(int argc, char **argv)
{
    std::string cli;
    std::set<int> expected_fail;
    for (int k = 1; k < argc; ++k) {
        const std::string a = argv[k];
        if (a == "--cli" && k + 1 < argc) {
            cli = argv[++k];
        } else if (a == "--expected-fail" && k + 1 < argc) {
            expected_fail.insert(std::stoi(argv[++k]));
        } else {
            std::cerr << "usage: acceptance [--cli path] [--expected-fail N]...\n";
            return 1;
        }
    }

    struct Criterion {
        const char *name;
        double budget; // seconds, 0 for none
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {"collection agrees with the matrix oracle", 5, collection_oracle},
        {"order axioms", 5, order_axioms},
        {"character fitting preserves chains", 0, chain_fitting},
        {"inversion certificates", 30, inversion_certificates},
        {"multicharacter fitting is compatible", 0, multicharacter_fitting},
        {"field Betti numbers", 1, field_betti},
        {"Novikov vanishing for Z^2", 10, torus_vanishing},
        {"criterion on the mapping torus", 10, mapping_torus_criterion},
        {"sign asymmetry for BS(1,2)", 10, baumslag_solitar_asymmetry},
        {"Euler consistency", 0, euler_consistency},
        {"Fox identity", 0, fox_identity},
        {"CLI determinism", 0, [&] { return cli_determinism(cli); }},
    };

    int unexpected = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const int id = static_cast<int>(k) + 1;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[k].run();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (o.pass && criteria[k].budget > 0 && secs > criteria[k].budget) {
            o.pass = false;
            o.detail += "; over the time budget";
        }
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(2);
        line << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << criteria[k].name << " (" << o.detail
             << ", " << secs << " s)";
        if (expected_fail.count(id)) {
            line << (o.pass ? " [unexpected pass]" : " [expected failure]");
        }
        std::cout << line.str() << std::endl;
        if (o.pass == static_cast<bool>(expected_fail.count(id))) {
            ++unexpected;
        }
    }
    return unexpected == 0 ? 0 : 1;
}
