#ifndef NILNOV_SUBGROUP_HPP
#define NILNOV_SUBGROUP_HPP

#include <cstddef>
#include <string>
#include <vector>

#include <nilnov/intmat.hpp>
#include <nilnov/pcgroup.hpp>

namespace nilnov
{

// A subgroup of a PcGroup stored as an induced polycyclic sequence: for every
// level i, elements of Q_i whose level-i exponent vectors form an HNF basis of
// the lattice (S cap Q_i) Q_{i+1} / Q_{i+1}.
class Subgroup
{
public:
    explicit Subgroup(PcGroupPtr group);

    static Subgroup whole(PcGroupPtr group);
    static Subgroup generated_by(PcGroupPtr group, const std::vector<Elt> &gens);
    static Subgroup normal_closure(PcGroupPtr group, const std::vector<Elt> &gens);

    const PcGroup &group() const { return *group_; }
    const PcGroupPtr &group_ptr() const { return group_; }

    bool contains(const Elt &g) const;
    bool is_trivial() const;
    // Sum of the level lattice ranks.
    std::size_t hirsch_length() const;
    // Leading-vector lattice at level i, in HNF.
    intmat::IntMat lattice(std::size_t level) const;
    const std::vector<Elt> &level_elements(std::size_t level) const { return levels_.at(level).elements; }
    std::vector<Elt> generators() const;

    bool is_normal() const;
    bool operator==(const Subgroup &other) const;
    // True when every element of `other` lies in this subgroup.
    bool contains_subgroup(const Subgroup &other) const;

    std::string describe() const;

    // Sift g through the sequence; returns the remainder (identity iff g is a
    // member).
    Elt sift(const Elt &g) const;
    // Adds an element and closes under commutators with the sequence (and with
    // the group generators when `normal`).
    void add(const Elt &g, bool normal);

private:
    struct Level {
        std::vector<Elt> elements;
        intmat::IntMat leads;
    };

    // Inserts without closing; returns true if the subgroup grew.
    bool insert(Elt g);
    void close(bool normal);

    PcGroupPtr group_;
    std::vector<Level> levels_;
};

struct SubgroupSeries {
    std::vector<Subgroup> terms; // terms[0] is the largest
    // Set when a requested class bound exceeds the group's class; the
    // remaining terms are trivial.
    bool class_bound_exceeded = false;
};

// gamma_1 = G, gamma_{k+1} = [G, gamma_k] for k < c, plus the isolators of
// each term.
struct LowerCentralSeries {
    SubgroupSeries gamma;
    SubgroupSeries isolators;
};

LowerCentralSeries lower_central_series(PcGroupPtr group, std::size_t class_bound);

// Isolator { g : g^m in N for some m > 0 } of a normal subgroup.
Subgroup isolator(const Subgroup &normal);

// G = K_0 > K_1 > ... > 1 with K_{j+1} the kernel of K_j -> K_j^ab (x) Q.
SubgroupSeries free_abelianization_refine(PcGroupPtr group);

} // namespace nilnov

#endif
