#ifndef NILNOV_NOVIKOV_HPP
#define NILNOV_NOVIKOV_HPP

#include <cstddef>
#include <string>

#include <nilnov/charorder.hpp>
#include <nilnov/groupring.hpp>

namespace nilnov
{

inline constexpr unsigned default_m_max = 64;
inline constexpr long default_frontier_entry = 8;

// A term with degree tuple d is retained when d[i] < frontier[i] for every i.
struct Trunc {
    DegTuple frontier;
    unsigned m_max = default_m_max;

    static Trunc uniform(std::size_t levels, const mpq_class &t, unsigned m_max = default_m_max);
    Trunc doubled() const;
    bool retains(const DegTuple &d) const;
    // "(8,8)"
    std::string frontier_str() const;
};

// Drop every term the truncation does not retain.
RingElt truncate(const RingElt &x, const MultiChar &chi, const DegTuple &frontier);

// Componentwise minimum of the degree tuples of the support (zeros when empty).
DegTuple min_degrees(const RingElt &x, const MultiChar &chi);

// Truncated element of the nested Novikov ring: `body` plus unspecified terms
// outside the retained box.
class NovSeries
{
public:
    // An exact series keeps its whole (finite) body; otherwise the body is
    // truncated to the frontier and only the retained terms are known.
    NovSeries(RingElt body, MultiChar chi, Trunc trunc, bool exact = true);

    const RingElt &body() const { return body_; }
    RingElt retained() const;
    const MultiChar &chi() const { return chi_; }
    const Trunc &trunc() const { return trunc_; }
    bool exact() const { return exact_; }

    // Retained terms ordered by degree tuple, then normal form, with an O(...)
    // tail.
    std::string format() const;

private:
    RingElt body_;
    MultiChar chi_;
    Trunc trunc_;
    bool exact_ = true;
};

NovSeries nov_mul(const NovSeries &x, const NovSeries &y);

// Inverse of beta up to its frontier. Before truncation to the frontier the
// working-precision inverse has passed the two-sided certificate; the deeper
// levels of the working box are widened when it does not. Throws NoStrictMinimum, TruncationInsufficient,
// CertificateFailure.
NovSeries nov_invert(const NovSeries &beta);

// Approximate inverse retained on `box`, without the certificate.
RingElt invert_truncated(const RingElt &beta, const MultiChar &chi, const DegTuple &box, unsigned m_max);

// Working box for products involving x: frontier plus a margin covering the
// spread of x's degrees.
DegTuple working_box(const DegTuple &frontier, const RingElt &x, const MultiChar &chi);

// True when every term of r that lies in the box frontier + min(0, mindeg) is
// zero, i.e. r vanishes up to the frontier seen through a factor with the
// given minimal degrees.
bool clears(const RingElt &r, const MultiChar &chi, const DegTuple &frontier, const DegTuple &mindeg);

} // namespace nilnov

#endif
