#ifndef NILNOV_GROUPRING_HPP
#define NILNOV_GROUPRING_HPP

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include <nilnov/charorder.hpp>
#include <nilnov/field.hpp>
#include <nilnov/pcgroup.hpp>

namespace nilnov
{

// Finite sum of field multiples of group elements. Zero coefficients are
// never stored.
class RingElt
{
public:
    using Terms = std::map<Elt, FieldElem>;

    RingElt() = default;
    RingElt(PcGroupPtr group, Field field) : group_(std::move(group)), field_(field) {}

    static RingElt one(PcGroupPtr group, Field field);
    static RingElt scalar(PcGroupPtr group, const FieldElem &c);
    static RingElt monomial(PcGroupPtr group, const Elt &g, const FieldElem &c);

    const PcGroupPtr &group() const { return group_; }
    Field field() const { return field_; }
    const Terms &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    FieldElem coeff(const Elt &g) const;

    void add_term(const Elt &g, const FieldElem &c);

    RingElt operator+(const RingElt &o) const;
    RingElt operator-(const RingElt &o) const;
    RingElt operator*(const RingElt &o) const;
    RingElt operator-() const;
    RingElt &operator+=(const RingElt &o);
    RingElt &operator-=(const RingElt &o);

    RingElt scaled(const FieldElem &c) const;
    // g * x and x * g.
    RingElt left_mul(const Elt &g) const;
    RingElt right_mul(const Elt &g) const;

    friend bool operator==(const RingElt &a, const RingElt &b);

    // `c*word + ...` with terms in normal-form order; "0" when empty.
    std::string format() const;

    void check_compatible(const RingElt &o) const;

private:
    PcGroupPtr group_;
    Field field_{};
    Terms terms_;
};

RingElt ring_mul(const RingElt &x, const RingElt &y);

// Sum of the coefficients.
FieldElem augment(const RingElt &x);

// Parse `<coeff>*<word> + ...`. Coefficients are integers or p/q and may be
// omitted; words are collected. Throws SyntaxError, UnknownGenerator.
RingElt parse_ring(std::string_view text, PcGroupPtr group, Field field);

// Per-level character values of an element's normal form.
using DegTuple = std::vector<mpq_class>;

DegTuple deg_tuple(const MultiChar &chi, const Elt &g);
std::string format_deg(const DegTuple &d);
std::string format_coeff_term(const FieldElem &c, const std::string &word, bool first);

} // namespace nilnov

#endif
