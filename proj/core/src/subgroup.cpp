#include <nilnov/subgroup.hpp>

#include <cassert>
#include <optional>
#include <utility>

#include <nilnov/error.hpp>

namespace nilnov
{

using intmat::IntMat;
using intmat::IntVec;

Subgroup::Subgroup(PcGroupPtr group) : group_(std::move(group)), levels_(group_->num_levels()) {}

Subgroup Subgroup::whole(PcGroupPtr group)
{
    std::vector<Elt> gens;
    for (std::size_t g = 0; g < group->num_gens(); ++g) {
        gens.push_back(group->gen(g));
    }
    return generated_by(std::move(group), gens);
}

Subgroup Subgroup::generated_by(PcGroupPtr group, const std::vector<Elt> &gens)
{
    Subgroup s(std::move(group));
    for (const auto &g : gens) {
        s.insert(g);
    }
    s.close(false);
    return s;
}

Subgroup Subgroup::normal_closure(PcGroupPtr group, const std::vector<Elt> &gens)
{
    Subgroup s(std::move(group));
    for (const auto &g : gens) {
        s.insert(g);
    }
    s.close(true);
    return s;
}

Elt Subgroup::sift(const Elt &g0) const
{
    const auto &G = *group_;
    Elt g = g0;
    while (!g.is_identity()) {
        const auto i = G.leading_level(g);
        const auto &lvl = levels_[i];
        auto c = intmat::solve(lvl.leads, G.level_vector(g, i), G.level_rank(i));
        if (!c) {
            return g;
        }
        Elt h;
        for (std::size_t k = 0; k < c->size(); ++k) {
            h = G.mul(h, G.power(lvl.elements[k], (*c)[k]));
        }
        g = G.mul(G.inverse(h), g);
        assert(G.leading_level(g) > i);
    }
    return g;
}

bool Subgroup::contains(const Elt &g) const
{
    return sift(g).is_identity();
}

bool Subgroup::insert(Elt g)
{
    const auto &G = *group_;
    g = sift(g);
    if (g.is_identity()) {
        return false;
    }
    const auto i = G.leading_level(g);
    const auto n = G.level_rank(i);
    auto &lvl = levels_[i];

    std::vector<IntVec> rows = lvl.leads;
    std::vector<Elt> elems = lvl.elements;
    rows.push_back(G.level_vector(g, i));
    elems.push_back(std::move(g));
    const std::size_t m = rows.size();

    // Integer echelon on the leading vectors, mirrored on the elements.
    auto combine = [&](std::size_t a, std::size_t b, const mpz_class &s, const mpz_class &t, const mpz_class &u,
                       const mpz_class &v) {
        for (std::size_t k = 0; k < n; ++k) {
            mpz_class x = s * rows[a][k] + t * rows[b][k];
            mpz_class y = u * rows[a][k] + v * rows[b][k];
            rows[a][k] = std::move(x);
            rows[b][k] = std::move(y);
        }
        Elt ea = G.mul(G.power(elems[a], s), G.power(elems[b], t));
        Elt eb = G.mul(G.power(elems[a], u), G.power(elems[b], v));
        elems[a] = std::move(ea);
        elems[b] = std::move(eb);
    };
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        for (std::size_t j = r + 1; j < m; ++j) {
            if (rows[j][c] == 0) {
                continue;
            }
            if (rows[r][c] == 0) {
                std::swap(rows[r], rows[j]);
                std::swap(elems[r], elems[j]);
                continue;
            }
            mpz_class gcd, s, t;
            mpz_gcdext(gcd.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), rows[r][c].get_mpz_t(), rows[j][c].get_mpz_t());
            combine(r, j, s, t, rows[j][c] / gcd, -(rows[r][c] / gcd));
        }
        if (rows[r][c] == 0) {
            continue;
        }
        if (rows[r][c] < 0) {
            for (auto &x : rows[r]) {
                x = -x;
            }
            elems[r] = G.inverse(elems[r]);
        }
        for (std::size_t j = 0; j < r; ++j) {
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), rows[j][c].get_mpz_t(), rows[r][c].get_mpz_t());
            if (q != 0) {
                for (std::size_t k = 0; k < n; ++k) {
                    rows[j][k] -= q * rows[r][k];
                }
                elems[j] = G.mul(elems[j], G.power(elems[r], -q));
            }
        }
        ++r;
    }
    lvl.leads.assign(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(r));
    lvl.elements.assign(elems.begin(), elems.begin() + static_cast<std::ptrdiff_t>(r));
    for (std::size_t j = r; j < m; ++j) {
        insert(elems[j]);
    }
    return true;
}

void Subgroup::close(bool normal)
{
    const auto &G = *group_;
    bool changed = true;
    while (changed) {
        changed = false;
        const auto elems = generators();
        for (std::size_t a = 0; a < elems.size() && !changed; ++a) {
            for (std::size_t b = 0; b < a && !changed; ++b) {
                changed = insert(G.commutator(elems[a], elems[b])) ||
                          insert(G.commutator(elems[a], G.inverse(elems[b])));
            }
            if (normal) {
                for (std::size_t x = 0; x < G.num_gens() && !changed; ++x) {
                    changed = insert(G.commutator(elems[a], G.gen(x))) ||
                              insert(G.commutator(elems[a], G.gen(x, -1)));
                }
            }
        }
    }
}

void Subgroup::add(const Elt &g, bool normal)
{
    if (insert(g)) {
        close(normal);
    }
}

bool Subgroup::is_trivial() const
{
    for (const auto &lvl : levels_) {
        if (!lvl.elements.empty()) {
            return false;
        }
    }
    return true;
}

std::size_t Subgroup::hirsch_length() const
{
    std::size_t h = 0;
    for (const auto &lvl : levels_) {
        h += lvl.elements.size();
    }
    return h;
}

IntMat Subgroup::lattice(std::size_t level) const
{
    return levels_.at(level).leads;
}

std::vector<Elt> Subgroup::generators() const
{
    std::vector<Elt> out;
    for (const auto &lvl : levels_) {
        out.insert(out.end(), lvl.elements.begin(), lvl.elements.end());
    }
    return out;
}

bool Subgroup::is_normal() const
{
    const auto &G = *group_;
    for (const auto &u : generators()) {
        for (std::size_t x = 0; x < G.num_gens(); ++x) {
            if (!contains(G.conjugate(u, G.gen(x))) || !contains(G.conjugate(u, G.gen(x, -1)))) {
                return false;
            }
        }
    }
    return true;
}

bool Subgroup::contains_subgroup(const Subgroup &other) const
{
    for (const auto &g : other.generators()) {
        if (!contains(g)) {
            return false;
        }
    }
    return true;
}

bool Subgroup::operator==(const Subgroup &other) const
{
    return group_ == other.group_ && contains_subgroup(other) && other.contains_subgroup(*this);
}

std::string Subgroup::describe() const
{
    const auto gens = generators();
    if (gens.empty()) {
        return "1";
    }
    std::string out = "<";
    for (std::size_t k = 0; k < gens.size(); ++k) {
        if (k) {
            out += ", ";
        }
        out += group_->format(gens[k]);
    }
    return out + ">";
}

namespace
{

// Tries to find g with level-i vector v and g^e in `n`, adjusting deeper
// levels one at a time. Deeper levels of `n` must already be isolated.
std::optional<Elt> torsion_lift(const Subgroup &n, std::size_t i, const IntVec &v, const mpz_class &e)
{
    const auto &G = n.group();
    Elt g = G.from_level_vector(i, v);
    while (true) {
        const Elt rem = n.sift(G.power(g, e));
        if (rem.is_identity()) {
            return g;
        }
        const auto j = G.leading_level(rem);
        if (j <= i) {
            return std::nullopt;
        }
        // Find u with e u + w in L_j, i.e. w in L_j + e Z^k.
        const auto k = G.level_rank(j);
        IntMat rows = n.lattice(j);
        const std::size_t base = rows.size();
        for (std::size_t c = 0; c < k; ++c) {
            IntVec r(k, 0);
            r[c] = e;
            rows.push_back(std::move(r));
        }
        auto coeffs = intmat::solve(rows, G.level_vector(rem, j), k);
        if (!coeffs) {
            return std::nullopt;
        }
        IntVec u(k, 0);
        for (std::size_t c = 0; c < k; ++c) {
            u[c] = -(*coeffs)[base + c];
        }
        g = G.mul(g, G.from_level_vector(j, u));
    }
}

} // namespace

Subgroup isolator(const Subgroup &normal)
{
    const auto &G = normal.group();
    Subgroup n = normal;
    for (std::size_t i = G.num_levels(); i-- > 0;) {
        bool grew = true;
        while (grew) {
            grew = false;
            const auto lat = n.lattice(i);
            const auto reps = intmat::saturation_coset_reps(lat, G.level_rank(i));
            if (reps.size() <= 1) {
                break;
            }
            const mpz_class e = static_cast<unsigned long>(reps.size());
            for (const auto &v : reps) {
                if (intmat::is_zero(v)) {
                    continue;
                }
                if (auto g = torsion_lift(n, i, v, e)) {
                    n.add(*g, true);
                    grew = true;
                    break;
                }
            }
        }
    }
    return n;
}

LowerCentralSeries lower_central_series(PcGroupPtr group, std::size_t class_bound)
{
    if (class_bound == 0) {
        throw InvalidArgument("class bound must be at least 1");
    }
    LowerCentralSeries out;
    out.gamma.terms.push_back(Subgroup::whole(group));
    std::size_t trivial_terms = 0;
    for (std::size_t k = 1; k < class_bound; ++k) {
        const auto &prev = out.gamma.terms.back();
        std::vector<Elt> gens;
        for (const auto &u : prev.generators()) {
            for (std::size_t x = 0; x < group->num_gens(); ++x) {
                gens.push_back(group->commutator(u, group->gen(x)));
            }
        }
        out.gamma.terms.push_back(Subgroup::normal_closure(group, gens));
        if (out.gamma.terms.back().is_trivial()) {
            ++trivial_terms;
        }
    }
    out.gamma.class_bound_exceeded = trivial_terms > 1;
    out.isolators.class_bound_exceeded = out.gamma.class_bound_exceeded;
    for (const auto &t : out.gamma.terms) {
        out.isolators.terms.push_back(isolator(t));
    }
    return out;
}

SubgroupSeries free_abelianization_refine(PcGroupPtr group)
{
    SubgroupSeries out;
    out.terms.push_back(Subgroup::whole(group));
    while (!out.terms.back().is_trivial()) {
        const auto gens = out.terms.back().generators();
        std::vector<Elt> comms;
        for (std::size_t a = 0; a < gens.size(); ++a) {
            for (std::size_t b = 0; b < a; ++b) {
                comms.push_back(group->commutator(gens[a], gens[b]));
            }
        }
        auto next = isolator(Subgroup::normal_closure(group, comms));
        assert(next.hirsch_length() < out.terms.back().hirsch_length());
        out.terms.push_back(std::move(next));
    }
    return out;
}

} // namespace nilnov
