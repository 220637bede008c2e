#ifndef NILNOV_HOMOLOGY_HPP
#define NILNOV_HOMOLOGY_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <nilnov/charorder.hpp>
#include <nilnov/field.hpp>
#include <nilnov/novikov.hpp>
#include <nilnov/presentations.hpp>

namespace nilnov
{

enum class Verdict { vanishes, witness, inconclusive };

// "vanishes-at-truncation", "nonvanishing-witness", "inconclusive"
std::string to_string(Verdict v);

struct RankReport {
    enum class Kind { field, novikov };

    Kind kind = Kind::field;
    Field field;
    // Dimensions of H^i (equal to those of H_i) for i < length of the complex.
    std::vector<long> ranks;
    // Ranks of d1 and d2 (of their duals for Novikov coefficients).
    std::vector<std::size_t> boundary_ranks;
    bool ranks_known = true;

    // Novikov coefficients only.
    std::string sign_pattern;
    std::size_t degree = 0;
    std::vector<Verdict> verdicts;
    // Cocycle representing a nonzero class, one entry per basis element.
    std::vector<std::optional<std::vector<RingElt>>> witnesses;
    std::vector<bool> stable;
    Trunc trunc;
    DegTuple doubled_frontier;
    std::string note;

    Verdict verdict() const { return verdicts.at(degree); }
    long alternating_sum() const;
};

// Betti numbers with trivial coefficients in `field`.
RankReport betti(const FreeChainComplex &c, Field field);

// Cohomology of Hom(P, Nov) for the Novikov ring of chi, at truncation t and
// at the doubled frontier. Verdicts are filled in for every degree; `degree`
// selects the one reported by verdict().
RankReport nov_cohomology(const FreeChainComplex &c, const MultiChar &chi, std::size_t degree, const Trunc &t);

enum class Conclusion { cd_drop, obstruction, inconclusive };

// "cd-drop-certified-at-truncation", "obstruction-found", "inconclusive"
std::string to_string(Conclusion c);

struct CriterionVerdict {
    std::size_t degree = 0;
    std::vector<std::string> patterns;
    std::vector<RankReport> reports;
    Conclusion conclusion = Conclusion::inconclusive;
};

// All sign patterns of chi in the order + before -, first level most
// significant.
std::vector<std::vector<int>> sign_patterns(std::size_t levels);

// Runs nov_cohomology in degree d over every sign pattern, with up to `jobs`
// patterns in flight. The user asserts the finiteness hypothesis on the
// presented group. Throws DimensionMismatch for d > 2.
CriterionVerdict theorem_f(const QuotientMap &q, const MultiChar &chi, std::size_t d, const Trunc &t,
                           Field field = Field::rationals(), unsigned jobs = 1);

struct EulerCheck {
    long euler_characteristic = 0;
    std::vector<long> sums; // alternating rank sums of the reports with known ranks
};

// Throws InconsistentReport when some report disagrees with the complex.
EulerCheck euler_check(const FreeChainComplex &c, const std::vector<RankReport> &reports);

} // namespace nilnov

#endif
