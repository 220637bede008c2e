#include <nilnov/groupring.hpp>

#include <cctype>

#include <nilnov/error.hpp>
#include <nilnov/text.hpp>

namespace nilnov
{

RingElt RingElt::one(PcGroupPtr group, Field field)
{
    return scalar(std::move(group), FieldElem(field, 1));
}

RingElt RingElt::scalar(PcGroupPtr group, const FieldElem &c)
{
    return monomial(std::move(group), Elt{}, c);
}

RingElt RingElt::monomial(PcGroupPtr group, const Elt &g, const FieldElem &c)
{
    RingElt r(std::move(group), c.field());
    r.add_term(g, c);
    return r;
}

FieldElem RingElt::coeff(const Elt &g) const
{
    auto it = terms_.find(g);
    return it == terms_.end() ? FieldElem(field_, 0) : it->second;
}

void RingElt::add_term(const Elt &g, const FieldElem &c)
{
    if (c.is_zero()) {
        return;
    }
    auto [it, fresh] = terms_.try_emplace(g, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }
}

void RingElt::check_compatible(const RingElt &o) const
{
    if (group_ != o.group_) {
        throw MismatchedGroup("ring elements over different groups");
    }
    if (!(field_ == o.field_)) {
        throw MismatchedField(field_.name() + " vs " + o.field_.name());
    }
}

RingElt &RingElt::operator+=(const RingElt &o)
{
    check_compatible(o);
    for (const auto &[g, c] : o.terms_) {
        add_term(g, c);
    }
    return *this;
}

RingElt &RingElt::operator-=(const RingElt &o)
{
    check_compatible(o);
    for (const auto &[g, c] : o.terms_) {
        add_term(g, -c);
    }
    return *this;
}

RingElt RingElt::operator+(const RingElt &o) const
{
    RingElt r = *this;
    return r += o;
}

RingElt RingElt::operator-(const RingElt &o) const
{
    RingElt r = *this;
    return r -= o;
}

RingElt RingElt::operator-() const
{
    RingElt r = *this;
    for (auto &[g, c] : r.terms_) {
        c = -c;
    }
    return r;
}

RingElt RingElt::operator*(const RingElt &o) const
{
    check_compatible(o);
    RingElt r(group_, field_);
    for (const auto &[g, c] : terms_) {
        for (const auto &[h, d] : o.terms_) {
            r.add_term(group_->mul(g, h), c * d);
        }
    }
    return r;
}

RingElt RingElt::scaled(const FieldElem &c) const
{
    RingElt r(group_, field_);
    for (const auto &[g, d] : terms_) {
        r.add_term(g, d * c);
    }
    return r;
}

RingElt RingElt::left_mul(const Elt &g) const
{
    RingElt r(group_, field_);
    for (const auto &[h, c] : terms_) {
        r.add_term(group_->mul(g, h), c);
    }
    return r;
}

RingElt RingElt::right_mul(const Elt &g) const
{
    RingElt r(group_, field_);
    for (const auto &[h, c] : terms_) {
        r.add_term(group_->mul(h, g), c);
    }
    return r;
}

bool operator==(const RingElt &a, const RingElt &b)
{
    return a.group_ == b.group_ && a.field_ == b.field_ && a.terms_ == b.terms_;
}

std::string format_coeff_term(const FieldElem &c, const std::string &word, bool first)
{
    mpq_class v = c.value();
    std::string out;
    if (v < 0) {
        out = first ? "-" : " - ";
        v = -v;
    } else if (!first) {
        out = " + ";
    }
    if (word == "1") {
        return out + v.get_str();
    }
    if (v == 1) {
        return out + word;
    }
    return out + v.get_str() + "*" + word;
}

std::string RingElt::format() const
{
    if (terms_.empty()) {
        return "0";
    }
    std::string out;
    bool first = true;
    for (const auto &[g, c] : terms_) {
        out += format_coeff_term(c, group_->format(g), first);
        first = false;
    }
    return out;
}

RingElt ring_mul(const RingElt &x, const RingElt &y)
{
    return x * y;
}

FieldElem augment(const RingElt &x)
{
    FieldElem s(x.field(), 0);
    for (const auto &[g, c] : x.terms()) {
        s += c;
    }
    return s;
}

RingElt parse_ring(std::string_view src, PcGroupPtr group, Field field)
{
    RingElt out(group, field);
    // Split on top-level signs; a sign right after '^' belongs to an exponent.
    std::size_t k = 0;
    int sign = 1;
    std::size_t body = 0;
    bool have = false;
    auto flush = [&](std::size_t end) {
        const auto term = text::trim(src.substr(body, end - body));
        if (term.empty()) {
            if (have) {
                throw SyntaxError("empty term", 1, body + 1);
            }
            return;
        }
        std::size_t p = 0;
        while (p < term.size() && (std::isdigit(static_cast<unsigned char>(term[p])) || term[p] == '/')) {
            ++p;
        }
        mpq_class c = 1;
        if (p > 0) {
            c = text::parse_rational(term.substr(0, p), 1, body + 1);
        }
        std::string rest = term.substr(p);
        auto r = text::trim(rest);
        if (!r.empty() && r[0] == '*') {
            if (p == 0) {
                throw SyntaxError("'*' without a coefficient", 1, body + 1);
            }
            r = text::trim(r.substr(1));
        }
        const Elt g = group->collect(parse_word(*group, r));
        out.add_term(g, FieldElem(field, c * sign));
    };
    for (; k < src.size(); ++k) {
        const char ch = src[k];
        if ((ch == '+' || ch == '-') && (k == 0 || src[k - 1] != '^')) {
            const bool leading = text::trim(src.substr(body, k - body)).empty() && !have;
            if (!leading) {
                flush(k);
            }
            sign = ch == '-' ? -1 : 1;
            body = k + 1;
            have = true;
        }
    }
    flush(src.size());
    if (text::trim(src).empty()) {
        throw SyntaxError("empty ring element", 1, 1);
    }
    return out;
}

DegTuple deg_tuple(const MultiChar &chi, const Elt &g)
{
    const auto &G = *chi.group();
    DegTuple d(G.num_levels(), 0);
    for (const auto &s : g.syllables()) {
        if (s.gen >= G.num_gens()) {
            throw MismatchedGroup("element does not belong to the character's group");
        }
        const auto i = G.level_of(s.gen);
        d[i] += chi.component(i).values[s.gen - G.level_begin(i)] * s.exp;
    }
    return d;
}

std::string format_deg(const DegTuple &d)
{
    std::string out = "(";
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (i) {
            out += ",";
        }
        out += d[i].get_str();
    }
    return out + ")";
}

} // namespace nilnov
