#ifndef NILNOV_TESTS_SUPPORT_HPP
#define NILNOV_TESTS_SUPPORT_HPP

#include <array>
#include <random>
#include <string>

#include <gmpxx.h>

#include <nilnov/pcgroup.hpp>
#include <nilnov/text.hpp>

namespace nilnov::testing
{

inline std::string data_path(const std::string &name)
{
    return std::string(NILNOV_DATA_DIR) + "/" + name;
}

inline std::string read_data(const std::string &name)
{
    return text::read_file(data_path(name));
}

inline PcGroupPtr heisenberg()
{
    return parse_pc(read_data("heis.pcg"));
}

inline PcGroupPtr free_abelian(std::size_t n)
{
    std::string s = "pcgroup Z" + std::to_string(n) + "\nlevel 0:";
    for (std::size_t k = 0; k < n; ++k) {
        s += " x" + std::to_string(k + 1);
    }
    return parse_pc(s + "\n");
}

using Rng = std::mt19937_64;

inline long uniform(Rng &rng, long lo, long hi)
{
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline Word random_word(Rng &rng, const PcGroup &g, std::size_t max_len, long max_exp)
{
    Word w;
    const auto len = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(max_len)));
    for (std::size_t k = 0; k < len; ++k) {
        long e = 0;
        while (e == 0) {
            e = uniform(rng, -max_exp, max_exp);
        }
        w.push_back({static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(g.num_gens()) - 1)), e});
    }
    return w;
}

inline Elt random_elt(Rng &rng, const PcGroup &g, std::size_t max_len = 6, long max_exp = 3)
{
    return g.collect(random_word(rng, g, max_len, max_exp));
}

// Upper unitriangular 3x3 integer matrices, stored as the entries (x, y, z)
// of [[1, x, z], [0, 1, y], [0, 0, 1]].
struct Uni3 {
    mpz_class x, y, z;

    friend bool operator==(const Uni3 &, const Uni3 &) = default;
};

inline Uni3 operator*(const Uni3 &m, const Uni3 &n)
{
    return {m.x + n.x, m.y + n.y, m.z + n.z + m.x * n.y};
}

inline Uni3 uni_power(const Uni3 &m, const mpz_class &e)
{
    // [[1,x,z],[0,1,y]]^e has corner e z + e(e-1)/2 x y
    return {e * m.x, e * m.y, e * m.z + e * (e - 1) / 2 * m.x * m.y};
}

// a -> E12, b -> E23, c -> E13^-1 realises b a = a b c.
inline Uni3 uni_gen(std::size_t g)
{
    switch (g) {
    case 0:
        return {1, 0, 0};
    case 1:
        return {0, 1, 0};
    default:
        return {0, 0, -1};
    }
}

inline Uni3 uni_word(const Word &w)
{
    Uni3 m{0, 0, 0};
    for (const auto &s : w) {
        m = m * uni_power(uni_gen(s.gen), s.exp);
    }
    return m;
}

inline Uni3 uni_normal_form(const Elt &e)
{
    const mpz_class x = e.exponent(0), y = e.exponent(1), z = e.exponent(2);
    return {x, y, x * y - z};
}

} // namespace nilnov::testing

#endif
