#include <nilnov/pcgroup.hpp>

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>

#include <nilnov/error.hpp>
#include <nilnov/text.hpp>

namespace nilnov
{

mpz_class Elt::exponent(std::size_t gen) const
{
    for (const auto &s : syllables_) {
        if (s.gen == gen) {
            return s.exp;
        }
        if (s.gen > gen) {
            break;
        }
    }
    return 0;
}

bool operator<(const Elt &a, const Elt &b)
{
    const auto &x = a.syllables();
    const auto &y = b.syllables();
    const std::size_t n = std::min(x.size(), y.size());
    for (std::size_t k = 0; k < n; ++k) {
        if (x[k].gen != y[k].gen) {
            return x[k].gen < y[k].gen;
        }
        if (x[k].exp != y[k].exp) {
            return x[k].exp < y[k].exp;
        }
    }
    return x.size() < y.size();
}

std::shared_ptr<const PcGroup> PcGroup::create(std::string name, const std::vector<std::vector<std::string>> &levels,
                                               const std::vector<std::tuple<std::string, std::string, Word>> &relations)
{
    std::shared_ptr<PcGroup> g(new PcGroup());
    g->name_ = std::move(name);
    g->level_begin_.push_back(0);
    for (std::size_t i = 0; i < levels.size(); ++i) {
        for (const auto &n : levels[i]) {
            if (g->has_gen(n)) {
                throw InvalidArgument("duplicate generator '" + n + "'");
            }
            g->names_.push_back(n);
            g->level_.push_back(i);
        }
        g->level_begin_.push_back(g->names_.size());
    }

    struct Pending {
        std::size_t y, x;
        Word tail;
    };
    std::vector<Pending> pending;
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto &[ys, xs, w] : relations) {
        const auto y = g->index_of(ys);
        const auto x = g->index_of(xs);
        if (!(x < y)) {
            throw AdaptationError("conj " + ys + " " + xs + ": the second generator must precede the first");
        }
        if (!seen.insert({y, x}).second) {
            throw InvalidArgument("duplicate relation for " + ys + " " + xs);
        }
        for (const auto &s : w) {
            if (s.gen >= g->num_gens()) {
                throw UnknownGenerator("generator index out of range");
            }
            if (g->level_of(s.gen) <= g->level_of(y)) {
                throw AdaptationError("conj " + ys + " " + xs + ": tail generator '" + g->gen_name(s.gen) +
                                      "' is not deeper than level " + std::to_string(g->level_of(y)));
            }
        }
        pending.push_back({y, x, w});
    }
    // Tails only involve deeper generators, so collect them deepest first.
    std::sort(pending.begin(), pending.end(), [](const Pending &a, const Pending &b) {
        return a.y != b.y ? a.y > b.y : a.x > b.x;
    });
    for (const auto &p : pending) {
        Elt t = g->collect(p.tail);
        if (!t.is_identity()) {
            g->tails_[{p.y, p.x}] = t;
        }
        g->relations_.push_back({p.y, p.x, std::move(t)});
    }
    std::sort(g->relations_.begin(), g->relations_.end(),
              [](const Relation &a, const Relation &b) { return a.y != b.y ? a.y < b.y : a.x < b.x; });
    g->check_consistency();
    return g;
}

std::size_t PcGroup::index_of(std::string_view name) const
{
    for (std::size_t k = 0; k < names_.size(); ++k) {
        if (names_[k] == name) {
            return k;
        }
    }
    throw UnknownGenerator("'" + std::string(name) + "' is not a generator of " + name_);
}

bool PcGroup::has_gen(std::string_view name) const
{
    return std::find(names_.begin(), names_.end(), name) != names_.end();
}

const Elt &PcGroup::tail(std::size_t y, std::size_t x) const
{
    static const Elt trivial;
    auto it = tails_.find({y, x});
    return it == tails_.end() ? trivial : it->second;
}

Elt PcGroup::gen(std::size_t g, const mpz_class &e) const
{
    if (g >= num_gens()) {
        throw UnknownGenerator("generator index out of range");
    }
    if (e == 0) {
        return Elt{};
    }
    return Elt({Syllable{g, e}});
}

Elt PcGroup::apply_images(const std::vector<Elt> &images, const Elt &h) const
{
    Elt out;
    for (const auto &s : h.syllables()) {
        out = mul(out, power(images[s.gen], s.exp));
    }
    return out;
}

const std::vector<Elt> &PcGroup::aut_images(std::size_t x, std::size_t k, bool backward) const
{
    const auto key = std::make_tuple(x, k, backward);
    {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        auto it = aut_cache_.find(key);
        if (it != aut_cache_.end()) {
            return *it->second;
        }
    }
    auto images = std::make_shared<std::vector<Elt>>(num_gens());
    if (k == 0) {
        if (!backward) {
            // x^-1 y x = y w
            for (std::size_t y = x + 1; y < num_gens(); ++y) {
                (*images)[y] = mul(gen(y), tail(y, x));
            }
        } else {
            // x y x^-1 = y * (x w x^-1)^-1, deeper generators first
            for (std::size_t y = num_gens(); y-- > x + 1;) {
                const Elt &w = tail(y, x);
                Elt cw;
                for (const auto &s : w.syllables()) {
                    cw = mul(cw, power((*images)[s.gen], s.exp));
                }
                (*images)[y] = mul(gen(y), inverse(cw));
            }
        }
    } else {
        const auto &half = aut_images(x, k - 1, backward);
        for (std::size_t y = x + 1; y < num_gens(); ++y) {
            (*images)[y] = apply_images(half, half[y]);
        }
    }
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto [it, inserted] = aut_cache_.emplace(key, std::move(images));
    return *it->second;
}

Elt PcGroup::conj_by_gen_power(std::size_t x, const mpz_class &e, const Elt &h) const
{
    if (e == 0 || h.is_identity()) {
        return h;
    }
    const bool inv = e < 0;
    mpz_class m = abs(e);
    Elt out = h;
    for (std::size_t k = 0; m != 0; ++k) {
        if (mpz_odd_p(m.get_mpz_t())) {
            out = apply_images(aut_images(x, k, inv), out);
        }
        m >>= 1;
    }
    return out;
}

void PcGroup::mul_syllable(std::vector<Syllable> &acc, std::size_t x, const mpz_class &e) const
{
    if (e == 0) {
        return;
    }
    auto split = std::find_if(acc.begin(), acc.end(), [x](const Syllable &s) { return s.gen > x; });
    Elt suffix(std::vector<Syllable>(split, acc.end()));
    acc.erase(split, acc.end());
    if (!acc.empty() && acc.back().gen == x) {
        acc.back().exp += e;
        if (acc.back().exp == 0) {
            acc.pop_back();
        }
    } else {
        acc.push_back({x, e});
    }
    if (!suffix.is_identity()) {
        Elt moved = conj_by_gen_power(x, e, suffix);
        acc.insert(acc.end(), moved.syllables().begin(), moved.syllables().end());
    }
}

Elt PcGroup::collect(const Word &w) const
{
    std::vector<Syllable> acc;
    for (const auto &s : w) {
        if (s.gen >= num_gens()) {
            throw UnknownGenerator("generator index out of range");
        }
        mul_syllable(acc, s.gen, s.exp);
    }
    return Elt(std::move(acc));
}

Elt PcGroup::mul(const Elt &a, const Elt &b) const
{
    std::vector<Syllable> acc = a.syllables();
    for (const auto &s : b.syllables()) {
        mul_syllable(acc, s.gen, s.exp);
    }
    return Elt(std::move(acc));
}

Elt PcGroup::inverse(const Elt &a) const
{
    std::vector<Syllable> acc;
    for (auto it = a.syllables().rbegin(); it != a.syllables().rend(); ++it) {
        mul_syllable(acc, it->gen, -it->exp);
    }
    return Elt(std::move(acc));
}

Elt PcGroup::power(const Elt &a, const mpz_class &e) const
{
    if (e == 0 || a.is_identity()) {
        return Elt{};
    }
    if (a.syllables().size() == 1) {
        return Elt({Syllable{a.syllables()[0].gen, a.syllables()[0].exp * e}});
    }
    Elt base = e < 0 ? inverse(a) : a;
    mpz_class m = abs(e);
    Elt out;
    while (m != 0) {
        if (mpz_odd_p(m.get_mpz_t())) {
            out = mul(out, base);
        }
        m >>= 1;
        if (m != 0) {
            base = mul(base, base);
        }
    }
    return out;
}

Elt PcGroup::commutator(const Elt &a, const Elt &b) const
{
    return mul(mul(inverse(a), inverse(b)), mul(a, b));
}

Elt PcGroup::conjugate(const Elt &a, const Elt &t) const
{
    return mul(mul(t, a), inverse(t));
}

std::size_t PcGroup::leading_level(const Elt &a) const
{
    return a.is_identity() ? num_levels() : level_of(a.syllables().front().gen);
}

intmat::IntVec PcGroup::level_vector(const Elt &a, std::size_t i) const
{
    intmat::IntVec v(level_rank(i), 0);
    for (const auto &s : a.syllables()) {
        if (level_of(s.gen) == i) {
            v[s.gen - level_begin(i)] = s.exp;
        }
    }
    return v;
}

Elt PcGroup::from_level_vector(std::size_t i, const intmat::IntVec &v) const
{
    std::vector<Syllable> syl;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k] != 0) {
            syl.push_back({level_begin(i) + k, v[k]});
        }
    }
    return Elt(std::move(syl));
}

std::string PcGroup::format(const Elt &a) const
{
    if (a.is_identity()) {
        return "1";
    }
    std::string out;
    for (const auto &s : a.syllables()) {
        if (!out.empty()) {
            out += ' ';
        }
        out += names_[s.gen];
        if (s.exp != 1) {
            out += '^' + s.exp.get_str();
        }
    }
    return out;
}

std::string PcGroup::to_pcg() const
{
    std::ostringstream out;
    out << "pcgroup " << name_ << '\n';
    for (std::size_t i = 0; i < num_levels(); ++i) {
        out << "level " << i << ':';
        for (std::size_t g = level_begin(i); g < level_end(i); ++g) {
            out << ' ' << names_[g];
        }
        out << '\n';
    }
    for (const auto &r : relations_) {
        if (!r.tail.is_identity()) {
            out << "conj " << names_[r.y] << ' ' << names_[r.x] << " = " << format(r.tail) << '\n';
        }
    }
    return out.str();
}

void PcGroup::check_consistency() const
{
    const std::size_t n = num_gens();
    if (n > 16) {
        return;
    }
    const int signs[] = {1, -1};
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            for (std::size_t c = b + 1; c < n; ++c) {
                for (int ea : signs) {
                    for (int eb : signs) {
                        for (int ec : signs) {
                            Elt x = gen(a, ea), y = gen(b, eb), z = gen(c, ec);
                            if (mul(mul(z, y), x) != mul(z, mul(y, x))) {
                                throw InvalidArgument("inconsistent presentation at generators " + names_[a] + ", " +
                                                      names_[b] + ", " + names_[c]);
                            }
                        }
                    }
                }
            }
            for (int ea : signs) {
                Elt x = gen(a, ea), y = gen(b);
                if (mul(mul(y, x), inverse(x)) != y) {
                    throw InvalidArgument("inconsistent presentation at generators " + names_[a] + ", " + names_[b]);
                }
            }
        }
    }
}

Word parse_word(const PcGroup &g, std::string_view text)
{
    Word w;
    for (const auto &t : text::word_tokens(text, 1)) {
        if (t.exp == 0) {
            continue;
        }
        w.push_back({g.index_of(t.name), t.exp});
    }
    return w;
}

PcGroupPtr parse_pc(std::string_view src)
{
    const auto ls = text::lines(src);
    if (ls.empty()) {
        throw SyntaxError("empty input", 1, 1);
    }
    auto head = text::split_ws(ls[0].content);
    if (head.size() != 2 || head[0] != "pcgroup" || !text::is_identifier(head[1])) {
        throw SyntaxError("expected 'pcgroup <name>'", ls[0].number, 1);
    }
    std::vector<std::vector<std::string>> levels;
    std::vector<std::pair<std::size_t, std::string>> conj_lines;
    std::map<std::string, std::size_t> known;
    for (std::size_t k = 1; k < ls.size(); ++k) {
        const auto &ln = ls[k];
        if (ln.content.rfind("level", 0) == 0) {
            if (!conj_lines.empty()) {
                throw SyntaxError("level lines must precede conj lines", ln.number, 1);
            }
            auto colon = ln.content.find(':');
            if (colon == std::string::npos) {
                throw SyntaxError("expected 'level <i>: <gens>'", ln.number, 1);
            }
            auto idx = text::split_ws(ln.content.substr(5, colon - 5));
            if (idx.size() != 1) {
                throw SyntaxError("expected a level index", ln.number, 6);
            }
            auto i = text::parse_integer(idx[0], ln.number, 7);
            if (i != static_cast<long>(levels.size())) {
                throw SyntaxError("levels must be listed as 0, 1, 2, ... in order", ln.number, 7);
            }
            auto gens = text::split_ws(ln.content.substr(colon + 1));
            if (gens.empty()) {
                throw SyntaxError("level without generators", ln.number, colon + 2);
            }
            for (const auto &gname : gens) {
                if (!text::is_identifier(gname)) {
                    throw SyntaxError("bad generator name '" + gname + "'", ln.number, colon + 2);
                }
                if (known.count(gname)) {
                    throw SyntaxError("duplicate generator '" + gname + "'", ln.number, colon + 2);
                }
                known[gname] = levels.size();
            }
            levels.push_back(std::move(gens));
        } else if (ln.content.rfind("conj", 0) == 0) {
            conj_lines.emplace_back(k, ln.content);
        } else {
            throw SyntaxError("unrecognised line '" + ln.content + "'", ln.number, 1);
        }
    }
    if (levels.empty()) {
        throw SyntaxError("no level lines", ls[0].number, 1);
    }
    std::vector<std::tuple<std::string, std::string, Word>> rels;
    // Generator indices follow level order, which we can compute up front.
    std::map<std::string, std::size_t> index;
    for (const auto &lvl : levels) {
        for (const auto &gname : lvl) {
            index.emplace(gname, index.size());
        }
    }
    for (const auto &[k, content] : conj_lines) {
        const auto number = ls[k].number;
        auto eq = content.find('=');
        if (eq == std::string::npos) {
            throw SyntaxError("expected 'conj <y> <x> = <word>'", number, 1);
        }
        auto lhs = text::split_ws(content.substr(4, eq - 4));
        if (lhs.size() != 2) {
            throw SyntaxError("expected two generators before '='", number, 6);
        }
        for (const auto &gname : lhs) {
            if (!index.count(gname)) {
                throw UnknownGenerator("'" + gname + "' (line " + std::to_string(number) + ")");
            }
        }
        Word w;
        for (const auto &t : text::word_tokens(std::string_view(content).substr(eq + 1), number, eq + 2)) {
            auto it = index.find(t.name);
            if (it == index.end()) {
                throw UnknownGenerator("'" + t.name + "' (line " + std::to_string(number) + ")");
            }
            if (t.exp != 0) {
                w.push_back({it->second, t.exp});
            }
        }
        rels.emplace_back(lhs[0], lhs[1], std::move(w));
    }
    return PcGroup::create(head[1], levels, rels);
}

} // namespace nilnov
