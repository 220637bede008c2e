#include <nilnov/intmat.hpp>

#include <algorithm>
#include <cassert>
#include <utility>

namespace nilnov::intmat
{

namespace
{

// Echelon form with transform. On return rows[0..rank) are the echelon rows
// (pivots taken among the first `pivot_cols` columns), and transform * input
// == rows, where transform is unimodular.
struct Echelon {
    IntMat rows;
    IntMat transform;
    std::vector<std::size_t> pivots;
};

void combine(IntVec &x, IntVec &y, const mpz_class &s, const mpz_class &t, const mpz_class &u, const mpz_class &v)
{
    // (x, y) <- (s x + t y, u x + v y)
    for (std::size_t k = 0; k < x.size(); ++k) {
        mpz_class nx = s * x[k] + t * y[k];
        mpz_class ny = u * x[k] + v * y[k];
        x[k] = std::move(nx);
        y[k] = std::move(ny);
    }
}

void axpy(IntVec &y, const mpz_class &a, const IntVec &x)
{
    for (std::size_t k = 0; k < y.size(); ++k) {
        y[k] -= a * x[k];
    }
}

Echelon echelon(IntMat rows, std::size_t pivot_cols, bool track)
{
    const std::size_t m = rows.size();
    IntMat tr;
    if (track) {
        tr.assign(m, IntVec(m, 0));
        for (std::size_t i = 0; i < m; ++i) {
            tr[i][i] = 1;
        }
    }
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < pivot_cols && r < m; ++c) {
        for (std::size_t i = r + 1; i < m; ++i) {
            if (rows[i][c] == 0) {
                continue;
            }
            if (rows[r][c] == 0) {
                std::swap(rows[r], rows[i]);
                if (track) {
                    std::swap(tr[r], tr[i]);
                }
                continue;
            }
            mpz_class g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), rows[r][c].get_mpz_t(), rows[i][c].get_mpz_t());
            mpz_class u = rows[i][c] / g;
            mpz_class v = -(rows[r][c] / g);
            combine(rows[r], rows[i], s, t, u, v);
            if (track) {
                combine(tr[r], tr[i], s, t, u, v);
            }
        }
        if (rows[r][c] == 0) {
            continue;
        }
        if (rows[r][c] < 0) {
            for (auto &x : rows[r]) {
                x = -x;
            }
            if (track) {
                for (auto &x : tr[r]) {
                    x = -x;
                }
            }
        }
        for (std::size_t j = 0; j < r; ++j) {
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), rows[j][c].get_mpz_t(), rows[r][c].get_mpz_t());
            if (q != 0) {
                axpy(rows[j], q, rows[r]);
                if (track) {
                    axpy(tr[j], q, tr[r]);
                }
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(rows), std::move(tr), std::move(pivots)};
}

} // namespace

bool is_zero(const IntVec &v)
{
    return std::all_of(v.begin(), v.end(), [](const mpz_class &x) { return x == 0; });
}

IntMat hnf(IntMat rows, std::size_t n)
{
    for ([[maybe_unused]] const auto &r : rows) {
        assert(r.size() == n);
    }
    auto e = echelon(std::move(rows), n, false);
    e.rows.resize(e.pivots.size());
    return std::move(e.rows);
}

std::optional<IntVec> solve(const IntMat &basis, const IntVec &v, std::size_t n)
{
    if (basis.empty()) {
        return is_zero(v) ? std::optional<IntVec>(IntVec{}) : std::nullopt;
    }
    auto e = echelon(basis, n, true);
    IntVec rest = v;
    IntVec x(e.pivots.size(), 0);
    for (std::size_t j = 0; j < e.pivots.size(); ++j) {
        const auto c = e.pivots[j];
        if (rest[c] == 0) {
            continue;
        }
        if (!mpz_divisible_p(rest[c].get_mpz_t(), e.rows[j][c].get_mpz_t())) {
            return std::nullopt;
        }
        x[j] = rest[c] / e.rows[j][c];
        axpy(rest, x[j], e.rows[j]);
    }
    if (!is_zero(rest)) {
        return std::nullopt;
    }
    IntVec coeffs(basis.size(), 0);
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (x[j] == 0) {
            continue;
        }
        for (std::size_t k = 0; k < basis.size(); ++k) {
            coeffs[k] += x[j] * e.transform[j][k];
        }
    }
    return coeffs;
}

bool contains(const IntMat &basis, const IntVec &v, std::size_t n)
{
    return solve(basis, v, n).has_value();
}

IntMat kernel(const IntMat &a, std::size_t n)
{
    const std::size_t m = a.size();
    IntMat rows(n, IntVec(m + n, 0));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < m; ++i) {
            rows[j][i] = a[i][j];
        }
        rows[j][m + j] = 1;
    }
    auto e = echelon(std::move(rows), m, false);
    IntMat ker;
    for (std::size_t j = e.pivots.size(); j < n; ++j) {
        ker.emplace_back(e.rows[j].begin() + static_cast<std::ptrdiff_t>(m), e.rows[j].end());
    }
    return hnf(std::move(ker), n);
}

IntMat saturate(const IntMat &lattice, std::size_t n)
{
    return kernel(kernel(lattice, n), n);
}

std::size_t rank(const IntMat &rows, std::size_t n)
{
    return hnf(rows, n).size();
}

IntMat free_quotient_map(const IntMat &lattice, std::size_t n)
{
    return kernel(lattice, n);
}

IntMat right_inverse(const IntMat &map, std::size_t n)
{
    // Columns of the map, echelonised with transform: T * map^T = [H; 0].
    // For a surjection the saturated quotient forces H to be unimodular.
    const std::size_t k = map.size();
    IntMat cols(n, IntVec(k, 0));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < k; ++i) {
            cols[j][i] = map[i][j];
        }
    }
    IntMat result;
    for (std::size_t i = 0; i < k; ++i) {
        IntVec target(k, 0);
        target[i] = 1;
        auto c = solve(cols, target, k);
        assert(c.has_value() && "map is not surjective");
        result.push_back(std::move(*c));
    }
    return result;
}

namespace
{

// L expressed in the coordinates of the HNF basis of sat(L), echelonised.
IntMat lattice_in_saturation(const IntMat &lattice, const IntMat &sat, std::size_t n)
{
    IntMat coords;
    for (const auto &row : lattice) {
        auto c = solve(sat, row, n);
        assert(c.has_value());
        coords.push_back(std::move(*c));
    }
    return hnf(std::move(coords), sat.size());
}

} // namespace

mpz_class saturation_index(const IntMat &lattice, std::size_t n)
{
    const auto sat = saturate(lattice, n);
    const auto h = lattice_in_saturation(lattice, sat, n);
    mpz_class index = 1;
    for (std::size_t j = 0; j < h.size(); ++j) {
        index *= h[j][j];
    }
    return index;
}

std::vector<IntVec> saturation_coset_reps(const IntMat &lattice, std::size_t n)
{
    const auto sat = saturate(lattice, n);
    const auto h = lattice_in_saturation(lattice, sat, n);
    const std::size_t k = sat.size();
    // h is square upper triangular with positive diagonal; the box
    // 0 <= x_j < h[j][j] is a transversal.
    std::vector<IntVec> reps;
    IntVec x(k, 0);
    while (true) {
        IntVec v(n, 0);
        for (std::size_t j = 0; j < k; ++j) {
            if (x[j] != 0) {
                for (std::size_t c = 0; c < n; ++c) {
                    v[c] += x[j] * sat[j][c];
                }
            }
        }
        reps.push_back(std::move(v));
        std::size_t j = 0;
        for (; j < k; ++j) {
            x[j] += 1;
            if (x[j] < h[j][j]) {
                break;
            }
            x[j] = 0;
        }
        if (j == k) {
            break;
        }
    }
    return reps;
}

IntVec add(const IntVec &a, const IntVec &b)
{
    IntVec r(a);
    for (std::size_t k = 0; k < r.size(); ++k) {
        r[k] += b[k];
    }
    return r;
}

IntVec scale(const IntVec &a, const mpz_class &k)
{
    IntVec r(a);
    for (auto &x : r) {
        x *= k;
    }
    return r;
}

} // namespace nilnov::intmat
