#ifndef NILNOV_INTMAT_HPP
#define NILNOV_INTMAT_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include <gmpxx.h>

// Exact integer lattice utilities. Matrices are stored as lists of rows and a
// lattice is the Z-span of its rows.
namespace nilnov::intmat
{

using IntVec = std::vector<mpz_class>;
using IntMat = std::vector<IntVec>;

bool is_zero(const IntVec &v);

// Row-style Hermite normal form of the span of `rows` (each of length n).
// Pivots are positive, entries above a pivot are reduced into [0, pivot), and
// zero rows are dropped.
IntMat hnf(IntMat rows, std::size_t n);

// Integer coefficients c with sum_k c[k] * basis[k] == v, if any.
std::optional<IntVec> solve(const IntMat &basis, const IntVec &v, std::size_t n);

bool contains(const IntMat &basis, const IntVec &v, std::size_t n);

// Basis (in HNF) of { y in Z^n : A y = 0 } for an m x n matrix A.
IntMat kernel(const IntMat &a, std::size_t n);

// Basis (in HNF) of the saturation { v : k v in L for some k != 0 }.
IntMat saturate(const IntMat &lattice, std::size_t n);

// Rank over Q.
std::size_t rank(const IntMat &rows, std::size_t n);

// Surjection Z^n -> Z^k whose kernel is the saturation of `lattice`, given as
// a k x n matrix in HNF. Its rows span the annihilator of the lattice.
IntMat free_quotient_map(const IntMat &lattice, std::size_t n);

// An integer right inverse of a surjective k x n map M: n-vectors p_j with
// M p_j = e_j.
IntMat right_inverse(const IntMat &map, std::size_t n);

// Representatives of the finite group sat(L) / L, each as a vector in Z^n.
// The lattice must have finite index in its saturation (always true).
std::vector<IntVec> saturation_coset_reps(const IntMat &lattice, std::size_t n);

// Index [sat(L) : L].
mpz_class saturation_index(const IntMat &lattice, std::size_t n);

IntVec add(const IntVec &a, const IntVec &b);
IntVec scale(const IntVec &a, const mpz_class &k);

} // namespace nilnov::intmat

#endif
