#include <nilnov/iterfrac.hpp>

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include <nilnov/error.hpp>
#include <nilnov/text.hpp>

namespace nilnov
{

namespace
{

bool is_scalar(const IterFrac &f)
{
    if (!f.is_leaf()) {
        return false;
    }
    const auto &t = f.value().terms();
    return t.empty() || (t.size() == 1 && t.begin()->first.is_identity());
}

FieldElem scalar_of(const IterFrac &f)
{
    return f.value().coeff(Elt{});
}

std::size_t support_level(const PcGroup &G, const RingElt &r)
{
    std::size_t l = G.num_levels();
    for (const auto &[g, c] : r.terms()) {
        l = std::min(l, G.leading_level(g));
    }
    return l;
}

} // namespace

IterFracPtr IterFrac::leaf(RingElt value)
{
    std::shared_ptr<IterFrac> f(new IterFrac());
    f->value_ = std::move(value);
    return f;
}

IterFracPtr IterFrac::node(std::size_t level, std::vector<FracTerm> alpha, std::vector<FracTerm> beta)
{
    if (beta.empty()) {
        throw InvalidFraction("empty denominator");
    }
    const auto group = beta.front().coef->group();
    const auto field = beta.front().coef->field();
    const auto &G = *group;
    if (level >= G.num_levels()) {
        throw InvalidFraction("node level " + std::to_string(level) + " out of range");
    }
    for (const auto *side : {&alpha, &beta}) {
        for (const auto &t : *side) {
            if (t.coef->group() != group || !(t.coef->field() == field)) {
                throw InvalidFraction("fraction mixes groups or fields");
            }
            if (G.leading_level(t.part) < level) {
                throw InvalidFraction("group part " + G.format(t.part) + " is not in level " +
                                      std::to_string(level) + " of the series");
            }
            if (t.coef->is_leaf()) {
                if (support_level(G, t.coef->value()) <= level) {
                    throw InvalidFraction("coefficient " + t.coef->value().format() + " is not supported below level " +
                                          std::to_string(level));
                }
            } else if (t.coef->level() <= level) {
                throw InvalidFraction("coefficient fraction at level " + std::to_string(t.coef->level()) +
                                      " inside a level-" + std::to_string(level) + " fraction");
            }
        }
    }
    std::shared_ptr<IterFrac> f(new IterFrac());
    f->node_ = true;
    f->value_ = RingElt(group, field);
    f->level_ = level;
    f->alpha_ = std::move(alpha);
    f->beta_ = std::move(beta);
    return f;
}

std::size_t IterFrac::height() const
{
    if (is_leaf()) {
        return 0;
    }
    std::size_t h = 0;
    for (const auto *side : {&alpha_, &beta_}) {
        for (const auto &t : *side) {
            h = std::max(h, t.coef->height());
        }
    }
    return h + 1;
}

std::string IterFrac::format() const
{
    if (is_leaf()) {
        return "(" + value_.format() + ")";
    }
    const auto &G = *group();
    auto side = [&](const std::vector<FracTerm> &terms) {
        std::string out;
        for (std::size_t k = 0; k < terms.size(); ++k) {
            const auto &t = terms[k];
            if (is_scalar(*t.coef)) {
                out += format_coeff_term(scalar_of(*t.coef), G.format(t.part), k == 0);
            } else {
                out += (k ? " + " : "") + t.coef->format() + "*" + G.format(t.part);
            }
        }
        return out.empty() ? std::string("0") : out;
    };
    return "((" + side(alpha_) + ")*(" + side(beta_) + ")^-1)";
}

IterFracPtr conjugate(const IterFracPtr &f, const Elt &w)
{
    if (w.is_identity()) {
        return f;
    }
    const auto &G = *f->group();
    const Elt winv = G.inverse(w);
    if (f->is_leaf()) {
        return IterFrac::leaf(f->value().left_mul(w).right_mul(winv));
    }
    auto side = [&](const std::vector<FracTerm> &terms) {
        std::vector<FracTerm> out;
        for (const auto &t : terms) {
            out.push_back({conjugate(t.coef, w), G.mul(G.mul(w, t.part), winv)});
        }
        return out;
    };
    return IterFrac::node(f->level(), side(f->alpha()), side(f->beta()));
}

IterFracPtr scale(const IterFracPtr &f, const FieldElem &c)
{
    if (f->is_leaf()) {
        return IterFrac::leaf(f->value().scaled(c));
    }
    std::vector<FracTerm> alpha;
    for (const auto &t : f->alpha()) {
        alpha.push_back({scale(t.coef, c), t.part});
    }
    return IterFrac::node(f->level(), std::move(alpha), f->beta());
}

namespace
{

using Terms = std::vector<FracTerm>;

class FracParser
{
public:
    FracParser(std::string_view src, PcGroupPtr group, Field field)
        : src_(src), group_(std::move(group)), field_(field)
    {
    }

    IterFracPtr run()
    {
        auto terms = sum();
        skip_ws();
        if (pos_ != src_.size()) {
            fail("unexpected '" + std::string(1, src_[pos_]) + "'");
        }
        return finish(std::move(terms));
    }

private:
    [[noreturn]] void fail(const std::string &what) const { throw SyntaxError(what, 1, pos_ + 1); }

    void skip_ws()
    {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
            ++pos_;
        }
    }

    bool peek(char c)
    {
        skip_ws();
        return pos_ < src_.size() && src_[pos_] == c;
    }

    IterFracPtr scalar(const mpq_class &q) const
    {
        return IterFrac::leaf(RingElt::scalar(group_, FieldElem(field_, q)));
    }

    Terms sum()
    {
        Terms out;
        int sign = 1;
        if (peek('-')) {
            ++pos_;
            sign = -1;
        } else if (peek('+')) {
            ++pos_;
        }
        while (true) {
            auto t = term();
            for (auto &x : t) {
                if (sign < 0) {
                    x.coef = scale(x.coef, FieldElem(field_, -1));
                }
                out.push_back(std::move(x));
            }
            if (peek('+')) {
                ++pos_;
                sign = 1;
            } else if (peek('-')) {
                ++pos_;
                sign = -1;
            } else {
                break;
            }
        }
        return out;
    }

    Terms term()
    {
        Terms acc = factor();
        while (true) {
            skip_ws();
            if (pos_ >= src_.size() || src_[pos_] == '+' || src_[pos_] == '-' || src_[pos_] == ')') {
                return acc;
            }
            if (src_[pos_] == '*') {
                ++pos_;
            }
            acc = product(acc, factor());
        }
    }

    Terms product(const Terms &x, const Terms &y) const
    {
        const auto &G = *group_;
        Terms out;
        for (const auto &a : x) {
            for (const auto &b : y) {
                if (is_scalar(*b.coef)) {
                    out.push_back({scale(a.coef, scalar_of(*b.coef)), G.mul(a.part, b.part)});
                } else if (is_scalar(*a.coef)) {
                    out.push_back(
                        {scale(conjugate(b.coef, a.part), scalar_of(*a.coef)), G.mul(a.part, b.part)});
                } else {
                    throw InvalidFraction("a term may contain at most one fraction");
                }
            }
        }
        return out;
    }

    Terms factor()
    {
        skip_ws();
        if (pos_ >= src_.size()) {
            fail("unexpected end of input");
        }
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const auto start = pos_;
            while (pos_ < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '/')) {
                ++pos_;
            }
            return {{scalar(text::parse_rational(src_.substr(start, pos_ - start), 1, start + 1)), Elt{}}};
        }
        if (c == '(') {
            ++pos_;
            auto inner = sum();
            if (!peek(')')) {
                fail("expected ')'");
            }
            ++pos_;
            if (peek('^')) {
                const auto at = pos_;
                ++pos_;
                skip_ws();
                if (src_.substr(pos_, 2) != "-1") {
                    pos_ = at;
                    fail("only '^-1' may follow a parenthesised expression");
                }
                pos_ += 2;
                return invert(std::move(inner));
            }
            return inner;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const auto start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                ++pos_;
            }
            const auto name = src_.substr(start, pos_ - start);
            mpz_class e = 1;
            if (pos_ < src_.size() && src_[pos_] == '^') {
                const auto es = ++pos_;
                if (pos_ < src_.size() && (src_[pos_] == '-' || src_[pos_] == '+')) {
                    ++pos_;
                }
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                    ++pos_;
                }
                e = text::parse_integer(src_.substr(es, pos_ - es), 1, es + 1);
            }
            return {{scalar(1), group_->gen(group_->index_of(name), e)}};
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    // Scalar-coefficient terms merged into one ring element; fraction terms kept.
    Terms normalise(Terms terms) const
    {
        RingElt flat(group_, field_);
        Terms fracs;
        for (auto &t : terms) {
            if (t.coef->is_leaf()) {
                flat += t.coef->value().right_mul(t.part);
            } else {
                fracs.push_back(std::move(t));
            }
        }
        Terms out;
        for (const auto &[g, c] : flat.terms()) {
            out.push_back({IterFrac::leaf(RingElt::scalar(group_, c)), g});
        }
        for (auto &t : fracs) {
            out.push_back(std::move(t));
        }
        return out;
    }

    std::size_t node_level(const Terms &terms) const
    {
        const auto &G = *group_;
        long level = static_cast<long>(G.num_levels()) - 1;
        for (const auto &t : terms) {
            level = std::min(level, static_cast<long>(G.leading_level(t.part)));
            if (!t.coef->is_leaf()) {
                level = std::min(level, static_cast<long>(t.coef->level()) - 1);
            } else if (!is_scalar(*t.coef)) {
                level = std::min(level, static_cast<long>(support_level(G, t.coef->value())) - 1);
            }
        }
        if (level < 0) {
            throw InvalidFraction("fractions at the same level cannot be added; use a common denominator");
        }
        return static_cast<std::size_t>(level);
    }

    Terms invert(Terms terms) const
    {
        terms = normalise(std::move(terms));
        if (terms.empty()) {
            throw InvalidFraction("inverse of zero");
        }
        if (terms.size() == 1 && terms[0].part.is_identity()) {
            const auto &f = terms[0].coef;
            if (is_scalar(*f)) {
                return {{scalar(scalar_of(*f).inverse().value()), Elt{}}};
            }
            if (!f->is_leaf() && !f->alpha().empty()) {
                return {{IterFrac::node(f->level(), f->beta(), f->alpha()), Elt{}}};
            }
        }
        const auto level = node_level(terms);
        return {{IterFrac::node(level, {{scalar(1), Elt{}}}, std::move(terms)), Elt{}}};
    }

    IterFracPtr finish(Terms terms) const
    {
        terms = normalise(std::move(terms));
        bool all_leaf = true;
        for (const auto &t : terms) {
            all_leaf = all_leaf && t.coef->is_leaf();
        }
        if (all_leaf) {
            RingElt r(group_, field_);
            for (const auto &t : terms) {
                r += t.coef->value().right_mul(t.part);
            }
            return IterFrac::leaf(std::move(r));
        }
        if (terms.size() == 1 && terms[0].part.is_identity()) {
            return terms[0].coef;
        }
        const auto level = node_level(terms);
        return IterFrac::node(level, std::move(terms), {{scalar(1), Elt{}}});
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    PcGroupPtr group_;
    Field field_;
};

// A non-scalar leaf as the fraction value / 1 at its leading level, with
// coefficients split off level by level; null for scalars.
IterFracPtr leaf_as_node(const RingElt &v)
{
    const auto &G = *v.group();
    std::size_t level = G.num_levels();
    for (const auto &[e, c] : v.terms()) {
        if (!e.is_identity()) {
            level = std::min(level, G.leading_level(e));
        }
    }
    if (level == G.num_levels()) {
        return nullptr;
    }
    std::map<Elt, RingElt> by_part;
    for (const auto &[e, c] : v.terms()) {
        const Elt part = G.from_level_vector(level, G.level_vector(e, level));
        auto it = by_part.try_emplace(part, RingElt(v.group(), v.field())).first;
        it->second.add_term(G.mul(G.inverse(part), e), c);
    }
    std::vector<FracTerm> alpha;
    for (const auto &[part, coef] : by_part) {
        alpha.push_back({IterFrac::leaf(coef), part});
    }
    return IterFrac::node(level, std::move(alpha), {{IterFrac::leaf(RingElt::one(v.group(), v.field())), G.identity()}});
}

// First node whose supports are not strictly ordered by chi, or null.
const IterFrac *first_incompatible(const MultiChar &chi, const IterFrac &f, const LexOrder &ord)
{
    if (f.is_leaf()) {
        const auto node = leaf_as_node(f.value());
        return node && first_incompatible(chi, *node, ord) ? &f : nullptr;
    }
    const auto &G = *chi.group();
    const auto i = f.level();
    std::set<intmat::IntVec> supp;
    for (const auto *side : {&f.alpha(), &f.beta()}) {
        for (const auto &t : *side) {
            supp.insert(G.level_vector(t.part, i));
        }
    }
    std::vector<intmat::IntVec> sorted(supp.begin(), supp.end());
    std::sort(sorted.begin(), sorted.end(), [&](const auto &a, const auto &b) {
        return ord.compare_level(i, a, b) == Cmp::less;
    });
    const auto &ch = chi.component(i);
    for (std::size_t k = 0; k + 1 < sorted.size(); ++k) {
        if (!(ch(sorted[k]) < ch(sorted[k + 1]))) {
            return &f;
        }
    }
    for (const auto *side : {&f.alpha(), &f.beta()}) {
        for (const auto &t : *side) {
            if (const auto *bad = first_incompatible(chi, *t.coef, ord)) {
                return bad;
            }
        }
    }
    return nullptr;
}

void collect_supports(const IterFrac &f, std::vector<std::set<intmat::IntVec>> &out)
{
    if (f.is_leaf()) {
        if (const auto node = leaf_as_node(f.value())) {
            collect_supports(*node, out);
        }
        return;
    }
    const auto &G = *f.group();
    for (const auto *side : {&f.alpha(), &f.beta()}) {
        for (const auto &t : *side) {
            out[f.level()].insert(G.level_vector(t.part, f.level()));
            collect_supports(*t.coef, out);
        }
    }
}

} // namespace

IterFracPtr parse_iterfrac(std::string_view text, PcGroupPtr group, Field field)
{
    return FracParser(text, std::move(group), field).run();
}

bool is_compatible(const MultiChar &chi, const IterFrac &f, const LexOrder &ord)
{
    return first_incompatible(chi, f, ord) == nullptr;
}

bool is_compatible(const MultiChar &chi, const IterFrac &f)
{
    return is_compatible(chi, f, LexOrder::from_multichar(chi));
}

MultiChar fit_multicharacter(const std::vector<IterFracPtr> &fracs, const LexOrder &ord)
{
    const auto &G = ord.group();
    std::vector<std::set<intmat::IntVec>> supports(G->num_levels());
    for (const auto &f : fracs) {
        if (f->group() != G) {
            throw MismatchedGroup("fraction and order live over different groups");
        }
        collect_supports(*f, supports);
    }
    std::vector<Char> comps;
    for (std::size_t i = 0; i < G->num_levels(); ++i) {
        const auto n = G->level_rank(i);
        std::vector<intmat::IntVec> chain(supports[i].begin(), supports[i].end());
        if (chain.size() < 2) {
            comps.push_back({i, RatVec(n, 0)});
            continue;
        }
        std::sort(chain.begin(), chain.end(), [&](const auto &a, const auto &b) {
            return ord.compare_level(i, a, b) == Cmp::less;
        });
        comps.push_back({i, fit_character(n, chain)});
    }
    MultiChar chi(G, std::move(comps));
    for (const auto &f : fracs) {
        if (!is_compatible(chi, *f, ord)) {
            throw Infeasible("internal: fitted multicharacter is not compatible");
        }
    }
    return chi;
}

namespace
{

struct Expander {
    const MultiChar &chi;
    unsigned m_max;

    RingElt side(const std::vector<FracTerm> &terms, const DegTuple &frontier) const
    {
        RingElt out(chi.group(), terms.front().coef->field());
        for (const auto &t : terms) {
            out += eval(*t.coef, frontier).right_mul(t.part);
        }
        return truncate(out, chi, frontier);
    }

    RingElt eval(const IterFrac &f, const DegTuple &frontier) const
    {
        if (f.is_leaf()) {
            return f.value();
        }
        RingElt parts(chi.group(), f.field());
        for (const auto *s : {&f.alpha(), &f.beta()}) {
            for (const auto &t : *s) {
                parts.add_term(t.part, FieldElem(f.field(), 1));
            }
        }
        const auto inner = working_box(frontier, parts, chi);
        const RingElt a = f.alpha().empty() ? RingElt(chi.group(), f.field()) : side(f.alpha(), inner);
        const RingElt b = side(f.beta(), inner);
        const RingElt inv = invert_truncated(b, chi, working_box(inner, b, chi), m_max);
        const RingElt r = truncate(a * inv, chi, frontier);
        if (!clears(r * b - a, chi, frontier, min_degrees(b, chi))) {
            throw CertificateFailure("expansion of " + f.format() + " does not satisfy r*beta = alpha below the frontier");
        }
        return r;
    }
};

} // namespace

NovSeries expand(const IterFrac &f, const MultiChar &chi, const Trunc &t)
{
    if (f.group() != chi.group()) {
        throw MismatchedGroup("fraction and multicharacter live over different groups");
    }
    if (const auto *bad = first_incompatible(chi, f, LexOrder::from_multichar(chi))) {
        throw IncompatibleCharacter("multicharacter does not separate the supports of " + bad->format());
    }
    return NovSeries(Expander{chi, t.m_max}.eval(f, t.frontier), chi, t, f.is_leaf());
}

} // namespace nilnov
