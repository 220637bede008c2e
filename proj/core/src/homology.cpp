#include <nilnov/homology.hpp>

#include <algorithm>
#include <future>
#include <tuple>

#include <nilnov/error.hpp>

namespace nilnov
{

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::vanishes:
        return "vanishes-at-truncation";
    case Verdict::witness:
        return "nonvanishing-witness";
    case Verdict::inconclusive:
        return "inconclusive";
    }
    return "?";
}

std::string to_string(Conclusion c)
{
    switch (c) {
    case Conclusion::cd_drop:
        return "cd-drop-certified-at-truncation";
    case Conclusion::obstruction:
        return "obstruction-found";
    case Conclusion::inconclusive:
        return "inconclusive";
    }
    return "?";
}

long RankReport::alternating_sum() const
{
    long s = 0;
    for (std::size_t i = 0; i < ranks.size(); ++i) {
        s += (i % 2 == 0 ? 1 : -1) * ranks[i];
    }
    return s;
}

namespace
{

using Matrix = std::vector<std::vector<RingElt>>;

std::size_t field_rank(std::vector<std::vector<FieldElem>> m)
{
    std::size_t r = 0;
    const std::size_t cols = m.empty() ? 0 : m[0].size();
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && m[p][c].is_zero()) {
            ++p;
        }
        if (p == m.size()) {
            continue;
        }
        std::swap(m[r], m[p]);
        const FieldElem inv = m[r][c].inverse();
        for (std::size_t j = r + 1; j < m.size(); ++j) {
            if (m[j][c].is_zero()) {
                continue;
            }
            const FieldElem f = m[j][c] * inv;
            for (std::size_t k = c; k < cols; ++k) {
                m[j][k] -= f * m[r][k];
            }
        }
        ++r;
    }
    return r;
}

} // namespace

RankReport betti(const FreeChainComplex &c, Field field)
{
    auto aug = [&](const RingElt &x) { return FieldElem(field, augment(x).value()); };
    std::vector<std::vector<FieldElem>> m1(1, std::vector<FieldElem>(c.ranks[1], FieldElem(field, 0)));
    for (std::size_t g = 0; g < c.ranks[1]; ++g) {
        m1[0][g] = aug(c.d1[g]);
    }
    std::vector<std::vector<FieldElem>> m2(c.ranks[1], std::vector<FieldElem>(c.ranks[2], FieldElem(field, 0)));
    for (std::size_t g = 0; g < c.ranks[1]; ++g) {
        for (std::size_t r = 0; r < c.ranks[2]; ++r) {
            m2[g][r] = aug(c.d2[g][r]);
        }
    }
    const auto rk1 = field_rank(m1);
    const auto rk2 = field_rank(m2);
    RankReport rep;
    rep.kind = RankReport::Kind::field;
    rep.field = field;
    rep.boundary_ranks = {rk1, rk2};
    rep.ranks = {static_cast<long>(c.ranks[0] - rk1), static_cast<long>(c.ranks[1] - rk1 - rk2)};
    if (c.length() == 3) {
        rep.ranks.push_back(static_cast<long>(c.ranks[2] - rk2));
    }
    return rep;
}

namespace
{

struct Elimination {
    std::size_t rank = 0;
    bool complete = true;
    std::string note;
    std::vector<bool> pivot_col;
    Matrix colops; // cols x cols
};

class Eliminator
{
public:
    Eliminator(const MultiChar &chi, DegTuple frontier, DegTuple work, unsigned m_max)
        : chi_(chi), frontier_(std::move(frontier)), work_(std::move(work)), m_max_(m_max)
    {
    }

    bool visible(const RingElt &x) const { return !truncate(x, chi_, frontier_).is_zero(); }

    RingElt cut(const RingElt &x) const { return truncate(x, chi_, work_); }

    Elimination run(Matrix a, std::size_t rows, std::size_t cols, const PcGroupPtr &group, Field field) const
    {
        Elimination e;
        e.pivot_col.assign(cols, false);
        e.colops.assign(cols, std::vector<RingElt>(cols, RingElt(group, field)));
        for (std::size_t k = 0; k < cols; ++k) {
            e.colops[k][k] = RingElt::one(group, field);
        }
        std::vector<bool> row_done(rows, false);
        while (true) {
            std::vector<std::tuple<DegTuple, std::size_t, std::size_t>> cands;
            for (std::size_t r = 0; r < rows; ++r) {
                for (std::size_t c = 0; c < cols; ++c) {
                    if (row_done[r] || e.pivot_col[c]) {
                        continue;
                    }
                    const RingElt v = truncate(a[r][c], chi_, frontier_);
                    if (v.is_zero()) {
                        continue;
                    }
                    DegTuple lo;
                    bool first = true;
                    for (const auto &[g, x] : v.terms()) {
                        auto d = deg_tuple(chi_, g);
                        if (first || d < lo) {
                            lo = std::move(d);
                        }
                        first = false;
                    }
                    cands.emplace_back(std::move(lo), c, r);
                }
            }
            if (cands.empty()) {
                break;
            }
            std::sort(cands.begin(), cands.end());
            std::optional<RingElt> inv;
            std::size_t p = 0, q = 0;
            std::string failures;
            for (const auto &[d, c, r] : cands) {
                try {
                    inv = nov_invert(NovSeries(a[r][c], chi_, Trunc{work_, m_max_})).body();
                    p = r;
                    q = c;
                    break;
                } catch (const NoStrictMinimum &) {
                } catch (const TruncationInsufficient &x) {
                    failures = x.what();
                } catch (const CertificateFailure &x) {
                    failures = x.what();
                }
            }
            if (!inv) {
                e.complete = false;
                std::size_t col = std::get<1>(cands.front());
                e.note = failures.empty() ? "NoPivot: no entry has a unique minimal term (column " +
                                                std::to_string(col) + ")"
                                          : failures;
                break;
            }
            for (std::size_t r = 0; r < rows; ++r) {
                if (r == p || row_done[r] || a[r][q].is_zero()) {
                    continue;
                }
                const RingElt f = cut(a[r][q] * *inv);
                for (std::size_t j = 0; j < cols; ++j) {
                    if (!e.pivot_col[j] && j != q && !a[p][j].is_zero()) {
                        a[r][j] = cut(a[r][j] - f * a[p][j]);
                    }
                }
                a[r][q] = RingElt(group, field);
            }
            for (std::size_t j = 0; j < cols; ++j) {
                if (j == q || e.pivot_col[j] || a[p][j].is_zero()) {
                    continue;
                }
                const RingElt g = cut(*inv * a[p][j]);
                for (std::size_t k = 0; k < cols; ++k) {
                    if (!e.colops[k][q].is_zero()) {
                        e.colops[k][j] = cut(e.colops[k][j] - e.colops[k][q] * g);
                    }
                }
                a[p][j] = RingElt(group, field);
            }
            row_done[p] = true;
            e.pivot_col[q] = true;
            ++e.rank;
        }
        return e;
    }

private:
    const MultiChar &chi_;
    DegTuple frontier_;
    DegTuple work_;
    unsigned m_max_;
};

DegTuple work_frontier(const FreeChainComplex &c, const MultiChar &chi, const DegTuple &frontier)
{
    DegTuple spread(frontier.size(), 0);
    auto visit = [&](const RingElt &x) {
        for (const auto &[g, v] : x.terms()) {
            const auto d = deg_tuple(chi, g);
            for (std::size_t i = 0; i < d.size(); ++i) {
                spread[i] = std::max(spread[i], mpq_class(abs(d[i])));
            }
        }
    };
    for (const auto &x : c.d1) {
        visit(x);
    }
    for (const auto &row : c.d2) {
        for (const auto &x : row) {
            visit(x);
        }
    }
    const long steps = static_cast<long>(std::max(c.ranks[1], c.ranks[2])) + 1;
    DegTuple w = frontier;
    for (std::size_t i = 0; i < w.size(); ++i) {
        w[i] += (2 * spread[i] + 1) * steps;
    }
    return w;
}

struct Pass {
    std::vector<Verdict> verdicts;
    std::vector<std::optional<std::vector<RingElt>>> witnesses;
    std::vector<long> ranks;
    std::vector<std::size_t> boundary_ranks;
    bool ranks_known = true;
    std::string note;
};

Pass cohomology_pass(const FreeChainComplex &c, const MultiChar &chi, const Trunc &t)
{
    const auto &G = c.target;
    const Field k = c.field;
    const auto r0 = c.ranks[0], r1 = c.ranks[1], r2 = c.ranks[2];
    const Eliminator elim(chi, t.frontier, work_frontier(c, chi, t.frontier), t.m_max);

    Matrix a1(r1, std::vector<RingElt>(r0, RingElt(G, k)));
    for (std::size_t g = 0; g < r1; ++g) {
        a1[g][0] = c.d1[g];
    }
    Matrix a2(r2, std::vector<RingElt>(r1, RingElt(G, k)));
    for (std::size_t r = 0; r < r2; ++r) {
        for (std::size_t g = 0; g < r1; ++g) {
            a2[r][g] = c.d2[g][r];
        }
    }
    const auto e1 = elim.run(a1, r1, r0, G, k);
    const auto e2 = elim.run(a2, r2, r1, G, k);

    Pass out;
    const std::size_t len = c.length();
    out.boundary_ranks = {e1.rank, e2.rank};
    out.ranks_known = e1.complete && e2.complete;
    out.note = !e1.complete ? "d1: " + e1.note : (!e2.complete ? "d2: " + e2.note : "");
    out.ranks = {static_cast<long>(r0 - e1.rank), static_cast<long>(r1 - e1.rank - e2.rank)};
    if (len == 3) {
        out.ranks.push_back(static_cast<long>(r2 - e2.rank));
    }

    // Is v outside the span of the columns of `span`?
    auto escapes = [&](const Matrix &span, std::size_t span_rank, const std::vector<RingElt> &v) -> std::optional<bool> {
        const std::size_t rows = v.size();
        const std::size_t cols = span.empty() ? 1 : span[0].size() + 1;
        Matrix m(rows, std::vector<RingElt>(cols, RingElt(G, k)));
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t j = 0; j + 1 < cols; ++j) {
                m[r][j] = span[r][j];
            }
            m[r][cols - 1] = v[r];
        }
        const auto e = elim.run(m, rows, cols, G, k);
        if (!e.complete) {
            return std::nullopt;
        }
        return e.rank > span_rank;
    };
    auto column = [](const Matrix &m, std::size_t j) {
        std::vector<RingElt> v;
        for (const auto &row : m) {
            v.push_back(row[j]);
        }
        return v;
    };

    out.verdicts.assign(len, Verdict::inconclusive);
    out.witnesses.assign(len, std::nullopt);
    for (std::size_t d = 0; d < len; ++d) {
        const bool known = d == 0 ? e1.complete : (d == 1 ? e1.complete && e2.complete : e2.complete);
        if (!known) {
            continue;
        }
        if (out.ranks[d] == 0) {
            out.verdicts[d] = Verdict::vanishes;
            continue;
        }
        if (d == 0) {
            for (std::size_t j = 0; j < r0 && !out.witnesses[d]; ++j) {
                if (!e1.pivot_col[j]) {
                    out.witnesses[d] = column(e1.colops, j);
                }
            }
        } else if (d == 1) {
            for (std::size_t j = 0; j < r1 && !out.witnesses[d]; ++j) {
                if (e2.pivot_col[j]) {
                    continue;
                }
                auto v = column(e2.colops, j);
                if (escapes(a1, e1.rank, v).value_or(false)) {
                    out.witnesses[d] = std::move(v);
                }
            }
        } else {
            for (std::size_t r = 0; r < r2 && !out.witnesses[d]; ++r) {
                std::vector<RingElt> v(r2, RingElt(G, k));
                v[r] = RingElt::one(G, k);
                if (escapes(a2, e2.rank, v).value_or(false)) {
                    out.witnesses[d] = std::move(v);
                }
            }
        }
        out.verdicts[d] = out.witnesses[d] ? Verdict::witness : Verdict::inconclusive;
    }
    return out;
}

} // namespace

RankReport nov_cohomology(const FreeChainComplex &c, const MultiChar &chi, std::size_t degree, const Trunc &t)
{
    if (chi.group() != c.target) {
        throw MismatchedGroup("multicharacter and complex live over different groups");
    }
    if (degree >= c.length()) {
        throw DimensionMismatch("degree " + std::to_string(degree) + " exceeds the length of the complex");
    }
    if (std::all_of(chi.components().begin(), chi.components().end(), [](const Char &x) { return x.is_zero(); })) {
        throw InvalidArgument("the zero multicharacter does not define a Novikov ring");
    }
    const Pass base = cohomology_pass(c, chi, t);
    const Trunc twice = t.doubled();
    const Pass fine = cohomology_pass(c, chi, twice);

    RankReport rep;
    rep.kind = RankReport::Kind::novikov;
    rep.field = c.field;
    rep.ranks = base.ranks;
    rep.boundary_ranks = base.boundary_ranks;
    rep.ranks_known = base.ranks_known;
    rep.sign_pattern = chi.sign_pattern();
    rep.degree = degree;
    rep.verdicts = base.verdicts;
    rep.witnesses = base.witnesses;
    rep.trunc = t;
    rep.doubled_frontier = twice.frontier;
    rep.note = base.note;
    for (std::size_t d = 0; d < base.verdicts.size(); ++d) {
        rep.stable.push_back(base.verdicts[d] == fine.verdicts[d]);
    }
    return rep;
}

std::vector<std::vector<int>> sign_patterns(std::size_t levels)
{
    std::vector<std::vector<int>> out;
    const std::size_t total = std::size_t{1} << levels;
    for (std::size_t m = 0; m < total; ++m) {
        std::vector<int> s(levels);
        for (std::size_t i = 0; i < levels; ++i) {
            s[i] = (m >> (levels - 1 - i)) & 1 ? -1 : 1;
        }
        out.push_back(std::move(s));
    }
    return out;
}

CriterionVerdict theorem_f(const QuotientMap &q, const MultiChar &chi, std::size_t d, const Trunc &t, Field field,
                           unsigned jobs)
{
    if (d > 2) {
        throw DimensionMismatch("complexes from presentations have length at most 2, degree " + std::to_string(d) +
                                " is unsupported");
    }
    if (chi.group() != q.target()) {
        throw MismatchedGroup("multicharacter is not defined on the quotient");
    }
    const FreeChainComplex c = fox_complex(q, field);
    const auto patterns = sign_patterns(chi.size());
    CriterionVerdict out;
    out.degree = d;
    out.reports.resize(patterns.size());
    auto run = [&](std::size_t i) {
        const MultiChar s = chi.with_signs(patterns[i]);
        if (d >= c.length()) {
            // The top cochain group is zero.
            RankReport rep;
            rep.kind = RankReport::Kind::novikov;
            rep.field = field;
            rep.sign_pattern = s.sign_pattern();
            rep.degree = d;
            rep.verdicts.assign(d + 1, Verdict::inconclusive);
            rep.verdicts[d] = Verdict::vanishes;
            rep.witnesses.assign(d + 1, std::nullopt);
            rep.stable.assign(d + 1, true);
            rep.trunc = t;
            rep.doubled_frontier = t.doubled().frontier;
            rep.ranks_known = false;
            rep.note = "cochain group in degree " + std::to_string(d) + " is zero";
            return rep;
        }
        return nov_cohomology(c, s, d, t);
    };
    jobs = std::max(1u, jobs);
    for (std::size_t start = 0; start < patterns.size(); start += jobs) {
        std::vector<std::future<RankReport>> batch;
        for (std::size_t i = start; i < std::min(patterns.size(), start + jobs); ++i) {
            batch.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, run, i));
        }
        for (std::size_t i = 0; i < batch.size(); ++i) {
            out.reports[start + i] = batch[i].get();
        }
    }
    bool all_vanish = true, any_witness = false;
    for (const auto &r : out.reports) {
        out.patterns.push_back(r.sign_pattern);
        all_vanish = all_vanish && r.verdict() == Verdict::vanishes && r.stable.at(d);
        any_witness = any_witness || r.verdict() == Verdict::witness;
    }
    out.conclusion = all_vanish ? Conclusion::cd_drop : (any_witness ? Conclusion::obstruction : Conclusion::inconclusive);
    return out;
}

EulerCheck euler_check(const FreeChainComplex &c, const std::vector<RankReport> &reports)
{
    EulerCheck out;
    out.euler_characteristic = c.euler_characteristic();
    for (const auto &r : reports) {
        if (!r.ranks_known) {
            continue;
        }
        const long s = r.alternating_sum();
        out.sums.push_back(s);
        if (s != out.euler_characteristic) {
            throw InconsistentReport("alternating rank sum " + std::to_string(s) + " differs from the Euler characteristic " +
                                     std::to_string(out.euler_characteristic));
        }
    }
    return out;
}

} // namespace nilnov
