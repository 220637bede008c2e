#ifndef NILNOV_CHARORDER_HPP
#define NILNOV_CHARORDER_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include <nilnov/intmat.hpp>
#include <nilnov/pcgroup.hpp>

namespace nilnov
{

using RatVec = std::vector<mpq_class>;

// Homomorphism Q_i / Q_{i+1} -> Q given by its values on the level-i
// generators.
struct Char {
    std::size_t level = 0;
    RatVec values;

    bool is_zero() const;
    mpq_class operator()(const intmat::IntVec &v) const;
};

// One component per level of the group's central series.
class MultiChar
{
public:
    MultiChar() = default;
    MultiChar(PcGroupPtr group, std::vector<Char> components);

    static MultiChar zero(PcGroupPtr group);

    const PcGroupPtr &group() const { return group_; }
    const std::vector<Char> &components() const { return components_; }
    const Char &component(std::size_t i) const { return components_.at(i); }
    std::size_t size() const { return components_.size(); }

    // Component i multiplied by signs[i] (each +1 or -1).
    MultiChar with_signs(const std::vector<int> &signs) const;
    const std::vector<int> &signs() const { return signs_; }
    std::string sign_pattern() const;

    std::string to_mchar() const;

    friend bool operator==(const MultiChar &a, const MultiChar &b)
    {
        if (a.group_ != b.group_ || a.components_.size() != b.components_.size()) {
            return false;
        }
        for (std::size_t i = 0; i < a.components_.size(); ++i) {
            if (a.components_[i].values != b.components_[i].values) {
                return false;
            }
        }
        return true;
    }

private:
    PcGroupPtr group_;
    std::vector<Char> components_;
    std::vector<int> signs_;
};

// Parse the .mchar format against a group. Levels without a line are zero.
MultiChar parse_mchar(std::string_view text, PcGroupPtr group);

enum class Cmp { less, equal, greater };

std::string to_string(Cmp c);

// Bi-invariant order on a torsion-free nilpotent group, lexicographic with
// respect to the stored central series. The order on each level lattice is the
// lexicographic order of a stack of rational characters whose stacked matrix
// has full rank, so the order is total.
class LexOrder
{
public:
    LexOrder(PcGroupPtr group, std::vector<std::vector<RatVec>> stacks);

    // Primary character per level taken from chi, completed to full rank with
    // coordinate characters.
    static LexOrder from_multichar(const MultiChar &chi);

    const PcGroupPtr &group() const { return group_; }
    const std::vector<RatVec> &stack(std::size_t level) const { return stacks_.at(level); }

    // Order on a single level lattice.
    Cmp compare_level(std::size_t level, const intmat::IntVec &a, const intmat::IntVec &b) const;
    Cmp sign_level(std::size_t level, const intmat::IntVec &v) const;
    Cmp compare(const Elt &g, const Elt &h) const;

    // Reverse the order at every level where signs[i] == -1.
    LexOrder reversed(const std::vector<int> &signs) const;

private:
    PcGroupPtr group_;
    std::vector<std::vector<RatVec>> stacks_;
};

// Character v with <v, chain[k]> < <v, chain[k+1]> for every k, found by exact
// Fourier-Motzkin elimination with simplest-rational back-substitution.
// Throws Infeasible.
RatVec fit_character(std::size_t rank, const std::vector<intmat::IntVec> &chain);

// Simplest rational (least denominator, then least absolute numerator) in the
// open interval (lo, hi); absent bounds are infinite.
mpq_class simplest_between(const std::optional<mpq_class> &lo, const std::optional<mpq_class> &hi);

} // namespace nilnov

#endif
