#include <nilnov/field.hpp>

#include <nilnov/error.hpp>

namespace nilnov
{

Field Field::prime(unsigned long p)
{
    if (p < 2 || mpz_probab_prime_p(mpz_class(p).get_mpz_t(), 30) == 0) {
        throw InvalidArgument(std::to_string(p) + " is not a prime");
    }
    return Field{p};
}

FieldElem::FieldElem(Field f, const mpq_class &value) : field_(f), value_(value)
{
    value_.canonicalize();
    if (f.p != 0) {
        const mpz_class p(f.p);
        mpz_class num = value_.get_num() % p;
        mpz_class den = value_.get_den() % p;
        if (den == 0) {
            throw InvalidArgument("denominator of " + value.get_str() + " vanishes mod " + std::to_string(f.p));
        }
        mpz_class inv;
        mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
        mpz_class r = (num * inv) % p;
        if (r < 0) {
            r += p;
        }
        value_ = mpq_class(r);
    }
}

void FieldElem::check(const FieldElem &o) const
{
    if (!(field_ == o.field_)) {
        throw MismatchedField(field_.name() + " vs " + o.field_.name());
    }
}

FieldElem FieldElem::operator+(const FieldElem &o) const
{
    check(o);
    return FieldElem(field_, value_ + o.value_);
}

FieldElem FieldElem::operator-(const FieldElem &o) const
{
    check(o);
    return FieldElem(field_, value_ - o.value_);
}

FieldElem FieldElem::operator*(const FieldElem &o) const
{
    check(o);
    return FieldElem(field_, value_ * o.value_);
}

FieldElem FieldElem::operator-() const
{
    return FieldElem(field_, -value_);
}

FieldElem FieldElem::inverse() const
{
    if (is_zero()) {
        throw InvalidArgument("inverse of zero");
    }
    return FieldElem(field_, 1 / value_);
}

} // namespace nilnov
