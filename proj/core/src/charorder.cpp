#include <nilnov/charorder.hpp>

#include <algorithm>
#include <set>
#include <sstream>

#include <nilnov/error.hpp>
#include <nilnov/text.hpp>

namespace nilnov
{

bool Char::is_zero() const
{
    return std::all_of(values.begin(), values.end(), [](const mpq_class &q) { return q == 0; });
}

mpq_class Char::operator()(const intmat::IntVec &v) const
{
    mpq_class s = 0;
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (v[k] != 0) {
            s += values[k] * v[k];
        }
    }
    return s;
}

MultiChar::MultiChar(PcGroupPtr group, std::vector<Char> components)
    : group_(std::move(group)), components_(std::move(components)), signs_(components_.size(), 1)
{
    if (components_.size() != group_->num_levels()) {
        throw InvalidArgument("multicharacter has " + std::to_string(components_.size()) + " components, series has " +
                              std::to_string(group_->num_levels()) + " levels");
    }
    for (std::size_t i = 0; i < components_.size(); ++i) {
        if (components_[i].level != i || components_[i].values.size() != group_->level_rank(i)) {
            throw InvalidArgument("component " + std::to_string(i) + " does not match level " + std::to_string(i));
        }
    }
}

MultiChar MultiChar::zero(PcGroupPtr group)
{
    std::vector<Char> comps;
    for (std::size_t i = 0; i < group->num_levels(); ++i) {
        comps.push_back({i, RatVec(group->level_rank(i), 0)});
    }
    return MultiChar(std::move(group), std::move(comps));
}

MultiChar MultiChar::with_signs(const std::vector<int> &signs) const
{
    if (signs.size() != components_.size()) {
        throw InvalidArgument("sign pattern length does not match the number of components");
    }
    MultiChar out = *this;
    for (std::size_t i = 0; i < signs.size(); ++i) {
        if (signs[i] != 1 && signs[i] != -1) {
            throw InvalidArgument("signs must be +1 or -1");
        }
        if (signs[i] == -1) {
            for (auto &v : out.components_[i].values) {
                v = -v;
            }
        }
        out.signs_[i] = signs_[i] * signs[i];
    }
    return out;
}

std::string MultiChar::sign_pattern() const
{
    std::string s;
    for (int x : signs_) {
        s += x > 0 ? '+' : '-';
    }
    return s;
}

std::string MultiChar::to_mchar() const
{
    std::ostringstream out;
    for (const auto &c : components_) {
        out << "char " << c.level << ':';
        for (std::size_t k = 0; k < c.values.size(); ++k) {
            out << ' ' << group_->gen_name(group_->level_begin(c.level) + k) << '=' << c.values[k].get_str();
        }
        out << '\n';
    }
    return out.str();
}

MultiChar parse_mchar(std::string_view src, PcGroupPtr group)
{
    auto chi = MultiChar::zero(group);
    std::vector<Char> comps = chi.components();
    std::vector<bool> seen(comps.size(), false);
    for (const auto &ln : text::lines(src)) {
        const auto &s = ln.content;
        if (s.rfind("char", 0) != 0) {
            throw SyntaxError("expected 'char <i>: <gen>=<rational> ...'", ln.number, 1);
        }
        auto colon = s.find(':');
        if (colon == std::string::npos) {
            throw SyntaxError("missing ':'", ln.number, 1);
        }
        auto idx = text::split_ws(s.substr(4, colon - 4));
        if (idx.size() != 1) {
            throw SyntaxError("expected a level index", ln.number, 5);
        }
        auto i = text::parse_integer(idx[0], ln.number, 6);
        if (i < 0 || i >= static_cast<long>(comps.size())) {
            throw SyntaxError("level " + idx[0] + " out of range", ln.number, 6);
        }
        const auto level = static_cast<std::size_t>(i.get_ui());
        if (seen[level]) {
            throw SyntaxError("level " + idx[0] + " given twice", ln.number, 6);
        }
        seen[level] = true;
        for (const auto &tok : text::split_ws(s.substr(colon + 1))) {
            auto eq = tok.find('=');
            if (eq == std::string::npos) {
                throw SyntaxError("expected <gen>=<rational>, got '" + tok + "'", ln.number, colon + 2);
            }
            const auto gen = group->index_of(tok.substr(0, eq));
            if (group->level_of(gen) != level) {
                throw InvalidArgument("generator '" + tok.substr(0, eq) + "' is not on level " +
                                      std::to_string(level));
            }
            comps[level].values[gen - group->level_begin(level)] =
                text::parse_rational(tok.substr(eq + 1), ln.number, colon + 2);
        }
    }
    return MultiChar(std::move(group), std::move(comps));
}

std::string to_string(Cmp c)
{
    switch (c) {
    case Cmp::less:
        return "less";
    case Cmp::equal:
        return "equal";
    case Cmp::greater:
        return "greater";
    }
    return "?";
}

namespace
{

std::size_t rational_rank(std::vector<RatVec> rows)
{
    std::size_t r = 0;
    const std::size_t n = rows.empty() ? 0 : rows[0].size();
    for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][c] == 0) {
            ++p;
        }
        if (p == rows.size()) {
            continue;
        }
        std::swap(rows[r], rows[p]);
        for (std::size_t j = r + 1; j < rows.size(); ++j) {
            if (rows[j][c] == 0) {
                continue;
            }
            mpq_class f = rows[j][c] / rows[r][c];
            for (std::size_t k = c; k < n; ++k) {
                rows[j][k] -= f * rows[r][k];
            }
        }
        ++r;
    }
    return r;
}

} // namespace

LexOrder::LexOrder(PcGroupPtr group, std::vector<std::vector<RatVec>> stacks)
    : group_(std::move(group)), stacks_(std::move(stacks))
{
    if (stacks_.size() != group_->num_levels()) {
        throw InvalidArgument("order needs one character stack per level");
    }
    for (std::size_t i = 0; i < stacks_.size(); ++i) {
        for (const auto &row : stacks_[i]) {
            if (row.size() != group_->level_rank(i)) {
                throw InvalidArgument("character length does not match level " + std::to_string(i));
            }
        }
        if (rational_rank(stacks_[i]) != group_->level_rank(i)) {
            throw InvalidArgument("order at level " + std::to_string(i) + " is not injective on the level lattice");
        }
    }
}

LexOrder LexOrder::from_multichar(const MultiChar &chi)
{
    const auto &G = *chi.group();
    std::vector<std::vector<RatVec>> stacks;
    for (std::size_t i = 0; i < G.num_levels(); ++i) {
        const auto n = G.level_rank(i);
        std::vector<RatVec> stack;
        if (!chi.component(i).is_zero()) {
            stack.push_back(chi.component(i).values);
        }
        for (std::size_t k = 0; k < n && rational_rank(stack) < n; ++k) {
            RatVec e(n, 0);
            e[k] = 1;
            auto trial = stack;
            trial.push_back(e);
            if (rational_rank(trial) > rational_rank(stack)) {
                stack = std::move(trial);
            }
        }
        stacks.push_back(std::move(stack));
    }
    return LexOrder(chi.group(), std::move(stacks));
}

Cmp LexOrder::sign_level(std::size_t level, const intmat::IntVec &v) const
{
    for (const auto &row : stacks_[level]) {
        mpq_class s = 0;
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (v[k] != 0) {
                s += row[k] * v[k];
            }
        }
        if (s > 0) {
            return Cmp::greater;
        }
        if (s < 0) {
            return Cmp::less;
        }
    }
    return Cmp::equal;
}

Cmp LexOrder::compare_level(std::size_t level, const intmat::IntVec &a, const intmat::IntVec &b) const
{
    intmat::IntVec d(a);
    for (std::size_t k = 0; k < d.size(); ++k) {
        d[k] -= b[k];
    }
    return sign_level(level, d);
}

Cmp LexOrder::compare(const Elt &g, const Elt &h) const
{
    const auto &G = *group_;
    const Elt k = G.mul(G.inverse(h), g);
    const auto i = G.leading_level(k);
    if (i == G.num_levels()) {
        return Cmp::equal;
    }
    return sign_level(i, G.level_vector(k, i));
}

LexOrder LexOrder::reversed(const std::vector<int> &signs) const
{
    auto stacks = stacks_;
    for (std::size_t i = 0; i < signs.size() && i < stacks.size(); ++i) {
        if (signs[i] == -1) {
            for (auto &row : stacks[i]) {
                for (auto &x : row) {
                    x = -x;
                }
            }
        }
    }
    return LexOrder(group_, std::move(stacks));
}

mpq_class simplest_between(const std::optional<mpq_class> &lo, const std::optional<mpq_class> &hi)
{
    if ((!lo || *lo < 0) && (!hi || *hi > 0)) {
        return 0;
    }
    if (hi && *hi <= 0) {
        std::optional<mpq_class> nlo, nhi;
        nlo = -*hi;
        if (lo) {
            nhi = -*lo;
        }
        return -simplest_between(nlo, nhi);
    }
    // Here 0 <= lo.
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), lo->get_num_mpz_t(), lo->get_den_mpz_t());
    if (!hi || mpq_class(fl + 1) < *hi) {
        return mpq_class(fl + 1);
    }
    std::optional<mpq_class> rlo = mpq_class(1) / (*hi - fl);
    std::optional<mpq_class> rhi;
    if (*lo != fl) {
        rhi = mpq_class(1) / (*lo - fl);
    }
    mpq_class r = mpq_class(fl) + mpq_class(1) / simplest_between(rlo, rhi);
    r.canonicalize();
    return r;
}

namespace
{

RatVec normalise(RatVec a)
{
    for (const auto &x : a) {
        if (x != 0) {
            const mpq_class s = abs(x);
            for (auto &y : a) {
                y /= s;
            }
            break;
        }
    }
    return a;
}

} // namespace

RatVec fit_character(std::size_t rank, const std::vector<intmat::IntVec> &chain)
{
    for (const auto &p : chain) {
        if (p.size() != rank) {
            throw InvalidArgument("chain entry has the wrong length");
        }
    }
    if (chain.size() <= 1) {
        RatVec v(rank, 0);
        if (rank > 0) {
            v[0] = 1;
        }
        return v;
    }
    // Constraints a . v > 0 from consecutive differences.
    std::vector<std::vector<RatVec>> systems(rank + 1);
    {
        std::set<RatVec> s;
        for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
            RatVec a(rank);
            for (std::size_t c = 0; c < rank; ++c) {
                a[c] = mpq_class(chain[k + 1][c] - chain[k][c]);
            }
            s.insert(normalise(std::move(a)));
        }
        systems[0].assign(s.begin(), s.end());
    }
    for (std::size_t var = 0; var < rank; ++var) {
        std::vector<RatVec> pos, neg;
        std::set<RatVec> next;
        for (const auto &a : systems[var]) {
            if (a[var] > 0) {
                pos.push_back(a);
            } else if (a[var] < 0) {
                neg.push_back(a);
            } else {
                next.insert(a);
            }
        }
        for (const auto &p : pos) {
            for (const auto &n : neg) {
                RatVec c(rank);
                for (std::size_t k = 0; k < rank; ++k) {
                    c[k] = -n[var] * p[k] + p[var] * n[k];
                }
                next.insert(normalise(std::move(c)));
            }
        }
        systems[var + 1].assign(next.begin(), next.end());
    }
    if (!systems[rank].empty()) {
        throw Infeasible("no homomorphism to Q strictly preserves the chain");
    }
    RatVec v(rank, 0);
    for (std::size_t var = rank; var-- > 0;) {
        std::optional<mpq_class> lo, hi;
        for (const auto &a : systems[var]) {
            mpq_class rest = 0;
            for (std::size_t k = var + 1; k < rank; ++k) {
                rest += a[k] * v[k];
            }
            if (a[var] == 0) {
                continue;
            }
            mpq_class bound = -rest / a[var];
            if (a[var] > 0) {
                if (!lo || bound > *lo) {
                    lo = bound;
                }
            } else if (!hi || bound < *hi) {
                hi = bound;
            }
        }
        if (lo && hi && !(*lo < *hi)) {
            throw Infeasible("empty interval during back-substitution");
        }
        v[var] = simplest_between(lo, hi);
    }
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
        mpq_class a = 0, b = 0;
        for (std::size_t c = 0; c < rank; ++c) {
            a += v[c] * chain[k][c];
            b += v[c] * chain[k + 1][c];
        }
        if (!(a < b)) {
            throw Infeasible("internal: fitted character does not preserve the chain");
        }
    }
    return v;
}

} // namespace nilnov
