#ifndef NILNOV_PRESENTATIONS_HPP
#define NILNOV_PRESENTATIONS_HPP

#include <array>
#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include <nilnov/field.hpp>
#include <nilnov/groupring.hpp>
#include <nilnov/pcgroup.hpp>

namespace nilnov
{

struct Letter {
    std::size_t gen;
    int sign; // +1 or -1

    friend auto operator<=>(const Letter &, const Letter &) = default;
};

using FreeWord = std::vector<Letter>;

FreeWord free_reduce(const FreeWord &w);
FreeWord free_inverse(const FreeWord &w);

// Integer combination of reduced free words.
using FreeRing = std::map<FreeWord, mpz_class>;

FreeRing free_mul(const FreeRing &a, const FreeRing &b);
FreeRing free_add(const FreeRing &a, const FreeRing &b, const mpz_class &k = 1);

// Fox derivative d w / d x_g.
FreeRing fox_derivative(const FreeWord &w, std::size_t g);

class Presentation
{
public:
    Presentation(std::string name, std::vector<std::string> gens, std::vector<FreeWord> relators);

    const std::string &name() const { return name_; }
    const std::vector<std::string> &gens() const { return gens_; }
    const std::vector<FreeWord> &relators() const { return relators_; }
    std::size_t num_gens() const { return gens_.size(); }
    std::size_t gen_index(std::string_view name) const;

    std::string format_word(const FreeWord &w) const;
    // Relator exponent sums, one row per relator.
    intmat::IntMat exponent_matrix() const;

    // sum_g (dr/dg)(g - 1) == r - 1 in the free group ring.
    bool fox_identity_holds(const FreeWord &r) const;

private:
    std::string name_;
    std::vector<std::string> gens_;
    std::vector<FreeWord> relators_;
};

// .fpg format. Throws SyntaxError, UnknownGenerator.
Presentation parse_presentation(std::string_view text);

// Homomorphism from the presented group onto a polycyclic group.
class QuotientMap
{
public:
    // Throws RelatorNotKilled, MismatchedGroup.
    QuotientMap(Presentation source, PcGroupPtr target, std::vector<Elt> images);

    const Presentation &source() const { return source_; }
    const PcGroupPtr &target() const { return target_; }
    const std::vector<Elt> &images() const { return images_; }

    Elt image(const FreeWord &w) const;
    RingElt project(const FreeRing &x, Field field) const;
    // "a=t b=1"
    std::string describe() const;

private:
    Presentation source_;
    PcGroupPtr target_;
    std::vector<Elt> images_;
};

// Map given as "g=word g=word ...", unnamed generators going to the identity.
QuotientMap parse_quotient_map(std::string_view mapping, const Presentation &p, PcGroupPtr target);

// Torsion-free nilpotent quotient of class at most c (c = 1 or 2).
// Throws ClassUnsupported.
QuotientMap nilpotent_quotient(const Presentation &p, std::size_t c);

// 0 -> P2 -> P1 -> P0 -> k with P0 = kQ, P1 = kQ^gens, P2 = kQ^relators.
struct FreeChainComplex {
    std::array<std::size_t, 3> ranks{};
    PcGroupPtr target;
    Field field;
    std::vector<std::string> gen_names;
    std::vector<std::string> relator_names;
    std::vector<RingElt> d1;              // d1[g] = g - 1
    std::vector<std::vector<RingElt>> d2; // d2[g][r] = dr/dg

    // 3 when there are relators, otherwise 2.
    std::size_t length() const { return ranks[2] > 0 ? 3 : 2; }
    // sum_g d2[g][r] d1[g] == 0 for every r.
    bool boundary_squares_to_zero() const;
    long euler_characteristic() const;
};

// Throws RelatorNotKilled when d1 d2 != 0 after projection.
FreeChainComplex fox_complex(const QuotientMap &q, Field field);

} // namespace nilnov

#endif
