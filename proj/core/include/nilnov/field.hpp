#ifndef NILNOV_FIELD_HPP
#define NILNOV_FIELD_HPP

#include <string>

#include <gmpxx.h>

namespace nilnov
{

// Coefficient field: Q when p == 0, otherwise F_p for a prime p.
struct Field {
    unsigned long p = 0;

    static Field rationals() { return Field{0}; }
    static Field prime(unsigned long p);

    bool is_rational() const { return p == 0; }
    std::string name() const { return p == 0 ? "Q" : "F" + std::to_string(p); }

    friend bool operator==(const Field &a, const Field &b) { return a.p == b.p; }
};

// Exact scalar in canonical form: reduced fraction, or residue in [0, p).
class FieldElem
{
public:
    FieldElem() = default;
    FieldElem(Field f, const mpq_class &value);
    FieldElem(Field f, long value) : FieldElem(f, mpq_class(value)) {}

    Field field() const { return field_; }
    const mpq_class &value() const { return value_; }
    bool is_zero() const { return value_ == 0; }
    bool is_one() const { return value_ == 1; }

    FieldElem operator+(const FieldElem &o) const;
    FieldElem operator-(const FieldElem &o) const;
    FieldElem operator*(const FieldElem &o) const;
    FieldElem operator-() const;
    FieldElem inverse() const;

    FieldElem &operator+=(const FieldElem &o) { return *this = *this + o; }
    FieldElem &operator-=(const FieldElem &o) { return *this = *this - o; }
    FieldElem &operator*=(const FieldElem &o) { return *this = *this * o; }

    friend bool operator==(const FieldElem &a, const FieldElem &b)
    {
        return a.field_ == b.field_ && a.value_ == b.value_;
    }

    std::string str() const { return value_.get_str(); }

private:
    void check(const FieldElem &o) const;

    Field field_{};
    mpq_class value_{0};
};

} // namespace nilnov

#endif
