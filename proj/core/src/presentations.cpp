#include <nilnov/presentations.hpp>

#include <algorithm>
#include <set>

#include <nilnov/error.hpp>
#include <nilnov/subgroup.hpp>
#include <nilnov/text.hpp>

namespace nilnov
{

FreeWord free_reduce(const FreeWord &w)
{
    FreeWord out;
    for (const auto &l : w) {
        if (!out.empty() && out.back().gen == l.gen && out.back().sign == -l.sign) {
            out.pop_back();
        } else {
            out.push_back(l);
        }
    }
    return out;
}

FreeWord free_inverse(const FreeWord &w)
{
    FreeWord out;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        out.push_back({it->gen, -it->sign});
    }
    return out;
}

FreeRing free_add(const FreeRing &a, const FreeRing &b, const mpz_class &k)
{
    FreeRing out = a;
    for (const auto &[w, c] : b) {
        auto &slot = out[w];
        slot += k * c;
        if (slot == 0) {
            out.erase(w);
        }
    }
    return out;
}

FreeRing free_mul(const FreeRing &a, const FreeRing &b)
{
    FreeRing out;
    for (const auto &[u, c] : a) {
        for (const auto &[v, d] : b) {
            FreeWord uv = u;
            uv.insert(uv.end(), v.begin(), v.end());
            out = free_add(out, FreeRing{{free_reduce(uv), c * d}});
        }
    }
    return out;
}

FreeRing fox_derivative(const FreeWord &w, std::size_t g)
{
    FreeRing out;
    FreeWord prefix;
    for (const auto &l : w) {
        if (l.gen == g && l.sign > 0) {
            out = free_add(out, FreeRing{{free_reduce(prefix), 1}});
        }
        prefix.push_back(l);
        if (l.gen == g && l.sign < 0) {
            out = free_add(out, FreeRing{{free_reduce(prefix), 1}}, -1);
        }
    }
    return out;
}

Presentation::Presentation(std::string name, std::vector<std::string> gens, std::vector<FreeWord> relators)
    : name_(std::move(name)), gens_(std::move(gens))
{
    std::set<std::string> seen;
    for (const auto &g : gens_) {
        if (!seen.insert(g).second) {
            throw InvalidArgument("duplicate generator '" + g + "'");
        }
    }
    for (const auto &r : relators) {
        for (const auto &l : r) {
            if (l.gen >= gens_.size()) {
                throw UnknownGenerator("relator letter out of range");
            }
        }
        relators_.push_back(free_reduce(r));
    }
}

std::size_t Presentation::gen_index(std::string_view name) const
{
    auto it = std::find(gens_.begin(), gens_.end(), name);
    if (it == gens_.end()) {
        throw UnknownGenerator("'" + std::string(name) + "' is not a generator of " + name_);
    }
    return static_cast<std::size_t>(it - gens_.begin());
}

std::string Presentation::format_word(const FreeWord &w) const
{
    if (w.empty()) {
        return "1";
    }
    std::string out;
    for (std::size_t k = 0; k < w.size();) {
        std::size_t j = k;
        long e = 0;
        while (j < w.size() && w[j].gen == w[k].gen && w[j].sign == w[k].sign) {
            e += w[j].sign;
            ++j;
        }
        if (!out.empty()) {
            out += ' ';
        }
        out += gens_[w[k].gen];
        if (e != 1) {
            out += "^" + std::to_string(e);
        }
        k = j;
    }
    return out;
}

intmat::IntMat Presentation::exponent_matrix() const
{
    intmat::IntMat m;
    for (const auto &r : relators_) {
        intmat::IntVec row(gens_.size(), 0);
        for (const auto &l : r) {
            row[l.gen] += l.sign;
        }
        m.push_back(std::move(row));
    }
    return m;
}

bool Presentation::fox_identity_holds(const FreeWord &r) const
{
    FreeRing lhs;
    for (std::size_t g = 0; g < gens_.size(); ++g) {
        const FreeRing gm1{{FreeWord{{g, 1}}, 1}, {FreeWord{}, -1}};
        lhs = free_add(lhs, free_mul(fox_derivative(r, g), gm1));
    }
    FreeRing rhs{{free_reduce(r), 1}};
    rhs = free_add(rhs, FreeRing{{FreeWord{}, 1}}, -1);
    return lhs == rhs;
}

namespace
{

FreeWord parse_free_word(const std::vector<std::string> &gens, std::string_view src,
                         std::size_t line, std::size_t column0)
{
    FreeWord w;
    for (const auto &t : text::word_tokens(src, line, column0)) {
        auto it = std::find(gens.begin(), gens.end(), t.name);
        if (it == gens.end()) {
            throw UnknownGenerator("'" + t.name + "' (line " + std::to_string(line) + ", column " +
                                   std::to_string(t.column) + ")");
        }
        const auto g = static_cast<std::size_t>(it - gens.begin());
        const int sign = t.exp > 0 ? 1 : -1;
        for (mpz_class k = abs(t.exp); k > 0; --k) {
            w.push_back({g, sign});
        }
    }
    return w;
}

} // namespace

Presentation parse_presentation(std::string_view src)
{
    std::string name = "G";
    std::vector<std::string> gens;
    bool have_gens = false;
    std::vector<FreeWord> rels;
    for (const auto &ln : text::lines(src)) {
        const auto &s = ln.content;
        const auto words = text::split_ws(s);
        if (words[0] == "group") {
            if (words.size() != 2 || !text::is_identifier(words[1])) {
                throw SyntaxError("expected 'group <name>'", ln.number, 1);
            }
            name = words[1];
        } else if (words[0] == "gens") {
            if (have_gens) {
                throw SyntaxError("generators declared twice", ln.number, 1);
            }
            have_gens = true;
            for (std::size_t k = 1; k < words.size(); ++k) {
                if (!text::is_identifier(words[k])) {
                    throw SyntaxError("bad generator name '" + words[k] + "'", ln.number, 1);
                }
                gens.push_back(words[k]);
            }
        } else if (words[0] == "rel") {
            if (!have_gens) {
                throw SyntaxError("'rel' before 'gens'", ln.number, 1);
            }
            const auto body = s.substr(3);
            const auto eq = body.find('=');
            FreeWord r = parse_free_word(gens, body.substr(0, eq), ln.number, 4);
            if (eq != std::string::npos) {
                const FreeWord rhs = parse_free_word(gens, body.substr(eq + 1), ln.number, 4 + eq + 1);
                const FreeWord inv = free_inverse(rhs);
                r.insert(r.end(), inv.begin(), inv.end());
            }
            rels.push_back(std::move(r));
        } else {
            throw SyntaxError("unknown directive '" + words[0] + "'", ln.number, 1);
        }
    }
    if (!have_gens) {
        throw SyntaxError("missing 'gens' line", 1, 1);
    }
    return Presentation(std::move(name), std::move(gens), std::move(rels));
}

QuotientMap::QuotientMap(Presentation source, PcGroupPtr target, std::vector<Elt> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images))
{
    if (images_.size() != source_.num_gens()) {
        throw InvalidArgument("quotient map needs one image per generator");
    }
    for (const auto &g : images_) {
        for (const auto &s : g.syllables()) {
            if (s.gen >= target_->num_gens()) {
                throw MismatchedGroup("generator image outside the target group");
            }
        }
    }
    for (const auto &r : source_.relators()) {
        const Elt e = image(r);
        if (!e.is_identity()) {
            throw RelatorNotKilled("relator " + source_.format_word(r) + " maps to " + target_->format(e));
        }
    }
}

Elt QuotientMap::image(const FreeWord &w) const
{
    const auto &G = *target_;
    Elt out;
    for (const auto &l : w) {
        out = G.mul(out, l.sign > 0 ? images_[l.gen] : G.inverse(images_[l.gen]));
    }
    return out;
}

RingElt QuotientMap::project(const FreeRing &x, Field field) const
{
    RingElt out(target_, field);
    for (const auto &[w, c] : x) {
        out.add_term(image(w), FieldElem(field, mpq_class(c)));
    }
    return out;
}

std::string QuotientMap::describe() const
{
    std::string out;
    for (std::size_t g = 0; g < images_.size(); ++g) {
        if (g) {
            out += ' ';
        }
        out += source_.gens()[g] + "=" + target_->format(images_[g]);
    }
    return out;
}

QuotientMap parse_quotient_map(std::string_view mapping, const Presentation &p, PcGroupPtr target)
{
    std::vector<Elt> images(p.num_gens());
    std::vector<bool> given(p.num_gens(), false);
    // Split "g=word g=word" at tokens containing '='.
    const auto toks = text::split_ws(mapping);
    std::size_t k = 0;
    while (k < toks.size()) {
        const auto eq = toks[k].find('=');
        if (eq == std::string::npos) {
            throw SyntaxError("expected <gen>=<word>", 1, 1);
        }
        const auto g = p.gen_index(toks[k].substr(0, eq));
        if (given[g]) {
            throw InvalidArgument("image of '" + p.gens()[g] + "' given twice");
        }
        given[g] = true;
        std::string word = toks[k].substr(eq + 1);
        ++k;
        while (k < toks.size() && toks[k].find('=') == std::string::npos) {
            word += " " + toks[k];
            ++k;
        }
        images[g] = target->collect(parse_word(*target, word));
    }
    return QuotientMap(p, std::move(target), std::move(images));
}

namespace
{

// Names for the generators of a free quotient Z^n -> Z^k given by `map`.
std::vector<std::string> quotient_names(const intmat::IntMat &map, const std::vector<std::string> &source,
                                        const std::string &fallback)
{
    std::vector<std::string> out;
    for (std::size_t j = 0; j < map.size(); ++j) {
        std::size_t p = 0;
        while (map[j][p] == 0) {
            ++p;
        }
        out.push_back(map[j][p] == 1 ? source[p] : fallback + std::to_string(j + 1));
    }
    return out;
}

intmat::IntVec apply_map(const intmat::IntMat &map, const intmat::IntVec &v)
{
    intmat::IntVec out(map.size(), 0);
    for (std::size_t j = 0; j < map.size(); ++j) {
        for (std::size_t k = 0; k < v.size(); ++k) {
            out[j] += map[j][k] * v[k];
        }
    }
    return out;
}

QuotientMap abelian_quotient(const Presentation &p)
{
    const auto n = p.num_gens();
    const auto phi = intmat::free_quotient_map(p.exponent_matrix(), n);
    const auto names = quotient_names(phi, p.gens(), "x");
    std::vector<std::vector<std::string>> levels;
    if (!names.empty()) {
        levels.push_back(names);
    }
    auto target = PcGroup::create(p.name() + "_ab", levels, {});
    std::vector<Elt> images;
    for (std::size_t g = 0; g < n; ++g) {
        intmat::IntVec e(n, 0);
        e[g] = 1;
        images.push_back(names.empty() ? Elt{} : target->from_level_vector(0, apply_map(phi, e)));
    }
    return QuotientMap(p, std::move(target), std::move(images));
}

} // namespace

QuotientMap nilpotent_quotient(const Presentation &p, std::size_t c)
{
    if (c == 0 || c > 2) {
        throw ClassUnsupported("nilpotent quotients are available for class 1 and 2 only, got " + std::to_string(c));
    }
    const auto n = p.num_gens();
    if (c == 1 || n < 2) {
        return abelian_quotient(p);
    }
    // Free class-2 group on the generators: x_j x_i = x_i x_j c_j_i.
    std::vector<std::string> comm_names;
    std::vector<std::tuple<std::string, std::string, Word>> rels;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            comm_names.push_back("c_" + p.gens()[j] + "_" + p.gens()[i]);
        }
    }
    {
        std::size_t k = 0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j, ++k) {
                rels.emplace_back(p.gens()[j], p.gens()[i], Word{{n + k, 1}});
            }
        }
    }
    auto F = PcGroup::create(p.name() + "_free2", {p.gens(), comm_names}, rels);
    std::vector<Elt> free_images;
    for (std::size_t g = 0; g < n; ++g) {
        free_images.push_back(F->gen(g));
    }
    const Presentation free_pres(p.name(), p.gens(), {});
    const QuotientMap into_free(free_pres, F, free_images);
    std::vector<Elt> rel_images;
    for (const auto &r : p.relators()) {
        rel_images.push_back(into_free.image(r));
    }
    const Subgroup kernel = isolator(Subgroup::normal_closure(F, rel_images));

    const auto phi0 = intmat::free_quotient_map(kernel.lattice(0), n);
    const auto m = comm_names.size();
    const auto phi1 = intmat::free_quotient_map(kernel.lattice(1), m);
    const auto names0 = quotient_names(phi0, p.gens(), "x");
    const auto names1 = quotient_names(phi1, comm_names, "z");
    if (names1.empty()) {
        return abelian_quotient(p);
    }
    const auto sec0 = intmat::right_inverse(phi0, n);
    std::vector<Elt> lifts;
    for (const auto &s : sec0) {
        lifts.push_back(F->from_level_vector(0, s));
    }
    std::vector<std::tuple<std::string, std::string, Word>> qrels;
    const auto k0 = names0.size();
    for (std::size_t l = 0; l < k0; ++l) {
        for (std::size_t j = l + 1; j < k0; ++j) {
            const auto v = apply_map(phi1, F->level_vector(F->commutator(lifts[j], lifts[l]), 1));
            Word w;
            for (std::size_t t = 0; t < v.size(); ++t) {
                if (v[t] != 0) {
                    w.push_back(Syllable{k0 + t, v[t]});
                }
            }
            if (!w.empty()) {
                qrels.emplace_back(names0[j], names0[l], std::move(w));
            }
        }
    }
    auto target = PcGroup::create(p.name() + "_nq2", {names0, names1}, qrels);
    std::vector<Elt> images;
    for (std::size_t g = 0; g < n; ++g) {
        intmat::IntVec e(n, 0);
        e[g] = 1;
        const auto u = apply_map(phi0, e);
        Elt section;
        for (std::size_t j = 0; j < k0; ++j) {
            section = F->mul(section, F->power(lifts[j], u[j]));
        }
        const Elt z = kernel.sift(F->mul(F->inverse(section), F->gen(g)));
        if (F->leading_level(z) < 1) {
            throw ClassUnsupported("internal: level-0 residue after sifting");
        }
        const auto v = apply_map(phi1, F->level_vector(z, 1));
        images.push_back(target->mul(target->from_level_vector(0, u), target->from_level_vector(1, v)));
    }
    return QuotientMap(p, std::move(target), std::move(images));
}

bool FreeChainComplex::boundary_squares_to_zero() const
{
    for (std::size_t r = 0; r < ranks[2]; ++r) {
        RingElt s(target, field);
        for (std::size_t g = 0; g < ranks[1]; ++g) {
            s += d2[g][r] * d1[g];
        }
        if (!s.is_zero()) {
            return false;
        }
    }
    return true;
}

long FreeChainComplex::euler_characteristic() const
{
    return static_cast<long>(ranks[0]) - static_cast<long>(ranks[1]) + static_cast<long>(ranks[2]);
}

FreeChainComplex fox_complex(const QuotientMap &q, Field field)
{
    const auto &P = q.source();
    FreeChainComplex c;
    c.ranks = {1, P.num_gens(), P.relators().size()};
    c.target = q.target();
    c.field = field;
    c.gen_names = P.gens();
    const auto one = RingElt::one(q.target(), field);
    for (std::size_t g = 0; g < P.num_gens(); ++g) {
        c.d1.push_back(RingElt::monomial(q.target(), q.images()[g], FieldElem(field, 1)) - one);
    }
    c.d2.assign(P.num_gens(), {});
    for (const auto &r : P.relators()) {
        c.relator_names.push_back(P.format_word(r));
        for (std::size_t g = 0; g < P.num_gens(); ++g) {
            c.d2[g].push_back(q.project(fox_derivative(r, g), field));
        }
    }
    if (!c.boundary_squares_to_zero()) {
        throw RelatorNotKilled("d1 d2 does not vanish in the target group ring");
    }
    return c;
}

} // namespace nilnov
