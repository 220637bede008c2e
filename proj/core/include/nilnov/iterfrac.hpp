#ifndef NILNOV_ITERFRAC_HPP
#define NILNOV_ITERFRAC_HPP

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <nilnov/charorder.hpp>
#include <nilnov/groupring.hpp>
#include <nilnov/novikov.hpp>

namespace nilnov
{

class IterFrac;
using IterFracPtr = std::shared_ptr<const IterFrac>;

// coefficient * group part
struct FracTerm {
    IterFracPtr coef;
    Elt part;
};

// Either a ring element (leaf) or alpha * beta^-1 at some level i, where the
// group parts lie in Q_i and the coefficients are fractions over Q_{i+1}.
class IterFrac
{
public:
    static IterFracPtr leaf(RingElt value);
    // Throws InvalidFraction when the level conditions fail or beta is empty.
    static IterFracPtr node(std::size_t level, std::vector<FracTerm> alpha, std::vector<FracTerm> beta);

    bool is_leaf() const { return !node_; }
    const RingElt &value() const { return value_; }
    std::size_t level() const { return level_; }
    const std::vector<FracTerm> &alpha() const { return alpha_; }
    const std::vector<FracTerm> &beta() const { return beta_; }
    const PcGroupPtr &group() const { return value_.group(); }
    Field field() const { return value_.field(); }

    // Number of node levels on the longest path.
    std::size_t height() const;

    std::string format() const;

private:
    IterFrac() = default;

    bool node_ = false;
    RingElt value_; // leaf value, or the zero element carrying group and field
    std::size_t level_ = 0;
    std::vector<FracTerm> alpha_;
    std::vector<FracTerm> beta_;
};

// w f w^-1
IterFracPtr conjugate(const IterFracPtr &f, const Elt &w);
IterFracPtr scale(const IterFracPtr &f, const FieldElem &c);

// Expression grammar:
//   sum    := ['-'] term (('+' | '-') term)*
//   term   := factor (['*'] factor)*
//   factor := rational | gen['^'int] | '(' sum ')' ['^-1']
// Products may combine at most one non-scalar fraction per term.
IterFracPtr parse_iterfrac(std::string_view text, PcGroupPtr group, Field field);

// Every node's supports, as level vectors, are strictly ordered by the node
// level's character in the order `ord`. A non-scalar leaf counts as the
// fraction leaf / 1 at its leading level.
bool is_compatible(const MultiChar &chi, const IterFrac &f, const LexOrder &ord);
// Same, with the order derived from chi itself (chi injective on supports).
bool is_compatible(const MultiChar &chi, const IterFrac &f);

MultiChar fit_multicharacter(const std::vector<IterFracPtr> &fracs, const LexOrder &ord);

// Series expansion of f. The result r satisfies r * beta = alpha up to the
// frontier at every node. Throws IncompatibleCharacter and inversion errors.
NovSeries expand(const IterFrac &f, const MultiChar &chi, const Trunc &t);

} // namespace nilnov

#endif
