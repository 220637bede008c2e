#ifndef NILNOV_PCGROUP_HPP
#define NILNOV_PCGROUP_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include <nilnov/intmat.hpp>

namespace nilnov
{

struct Syllable {
    std::size_t gen;
    mpz_class exp;

    friend bool operator==(const Syllable &a, const Syllable &b) { return a.gen == b.gen && a.exp == b.exp; }
};

// An unnormalised product of generator powers.
using Word = std::vector<Syllable>;

// Normal form of a group element: generator indices strictly increasing,
// exponents nonzero. The empty list is the identity.
class Elt
{
public:
    Elt() = default;
    explicit Elt(std::vector<Syllable> syllables) : syllables_(std::move(syllables)) {}

    const std::vector<Syllable> &syllables() const noexcept { return syllables_; }
    std::vector<Syllable> &syllables() noexcept { return syllables_; }
    bool is_identity() const noexcept { return syllables_.empty(); }

    // Exponent of generator `gen` (zero when absent).
    mpz_class exponent(std::size_t gen) const;

    friend bool operator==(const Elt &a, const Elt &b) { return a.syllables_ == b.syllables_; }
    friend bool operator<(const Elt &a, const Elt &b);

private:
    std::vector<Syllable> syllables_;
};

// Torsion-free polycyclic presentation adapted to a central series
// 1 = Q_n <= ... <= Q_0 = Q. Generators are ordered by level; the level-i
// generators give a basis of the free Abelian quotient Q_i / Q_{i+1}.
//
// Relations have the form y x = x y w for y after x, with w supported on
// generators strictly deeper than y. Missing relations mean y and x commute.
class PcGroup : public std::enable_shared_from_this<PcGroup>
{
public:
    struct Relation {
        std::size_t y;
        std::size_t x;
        Elt tail;
    };

    // `levels[i]` lists the generator names of level i. Relations refer to
    // generator names. Throws AdaptationError/UnknownGenerator/InvalidArgument.
    static std::shared_ptr<const PcGroup> create(std::string name, const std::vector<std::vector<std::string>> &levels,
                                                 const std::vector<std::tuple<std::string, std::string, Word>> &relations);

    const std::string &name() const noexcept { return name_; }
    std::size_t num_gens() const noexcept { return names_.size(); }
    std::size_t num_levels() const noexcept { return level_begin_.size() - 1; }
    const std::string &gen_name(std::size_t g) const { return names_.at(g); }
    std::size_t level_of(std::size_t g) const { return level_.at(g); }
    // Generators of level i occupy [level_begin(i), level_end(i)).
    std::size_t level_begin(std::size_t i) const { return level_begin_.at(i); }
    std::size_t level_end(std::size_t i) const { return level_begin_.at(i + 1); }
    std::size_t level_rank(std::size_t i) const { return level_end(i) - level_begin(i); }
    std::size_t index_of(std::string_view name) const;
    bool has_gen(std::string_view name) const;
    const std::vector<Relation> &relations() const noexcept { return relations_; }
    // Tail w of y x = x y w (identity when the pair commutes).
    const Elt &tail(std::size_t y, std::size_t x) const;

    Elt identity() const { return Elt{}; }
    Elt gen(std::size_t g, const mpz_class &e = 1) const;
    Elt collect(const Word &w) const;
    Elt mul(const Elt &a, const Elt &b) const;
    Elt inverse(const Elt &a) const;
    Elt power(const Elt &a, const mpz_class &e) const;
    // [a, b] = a^-1 b^-1 a b
    Elt commutator(const Elt &a, const Elt &b) const;
    // t a t^-1
    Elt conjugate(const Elt &a, const Elt &t) const;

    // Shallowest level with a nonzero syllable; num_levels() for the identity.
    std::size_t leading_level(const Elt &a) const;
    // Exponent vector of the level-i syllables.
    intmat::IntVec level_vector(const Elt &a, std::size_t i) const;
    // Product of level-i generator powers with the given exponents.
    Elt from_level_vector(std::size_t i, const intmat::IntVec &v) const;

    std::string format(const Elt &a) const;
    // Source text in .pcg syntax; parse_pc(to_pcg()) reproduces the group.
    std::string to_pcg() const;

private:
    PcGroup() = default;

    void mul_syllable(std::vector<Syllable> &acc, std::size_t x, const mpz_class &e) const;
    // x^-e h x^e for h supported on generators after x.
    Elt conj_by_gen_power(std::size_t x, const mpz_class &e, const Elt &h) const;
    const std::vector<Elt> &aut_images(std::size_t x, std::size_t k, bool inverse) const;
    Elt apply_images(const std::vector<Elt> &images, const Elt &h) const;
    void check_consistency() const;

    std::string name_;
    std::vector<std::string> names_;
    std::vector<std::size_t> level_;
    std::vector<std::size_t> level_begin_;
    std::vector<Relation> relations_;
    std::map<std::pair<std::size_t, std::size_t>, Elt> tails_;

    // Images of generators under conjugation by x^(+-2^k); filled lazily.
    mutable std::mutex cache_mutex_;
    mutable std::map<std::tuple<std::size_t, std::size_t, bool>, std::shared_ptr<const std::vector<Elt>>> aut_cache_;
};

using PcGroupPtr = std::shared_ptr<const PcGroup>;

// Parse the .pcg format. Throws SyntaxError, AdaptationError, UnknownGenerator.
PcGroupPtr parse_pc(std::string_view text);

// Parse a word in the token syntax `g` / `g^k` against a name lookup.
Word parse_word(const PcGroup &g, std::string_view text);

} // namespace nilnov

#endif
