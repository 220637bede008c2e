#include <nilnov/novikov.hpp>

#include <algorithm>
#include <map>
#include <optional>

#include <nilnov/error.hpp>

namespace nilnov
{

Trunc Trunc::uniform(std::size_t levels, const mpq_class &t, unsigned m_max)
{
    return Trunc{DegTuple(levels, t), m_max};
}

Trunc Trunc::doubled() const
{
    Trunc t = *this;
    for (auto &x : t.frontier) {
        x *= 2;
    }
    return t;
}

bool Trunc::retains(const DegTuple &d) const
{
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (!(d[i] < frontier[i])) {
            return false;
        }
    }
    return true;
}

std::string Trunc::frontier_str() const
{
    std::string out = "(";
    for (std::size_t i = 0; i < frontier.size(); ++i) {
        if (i) {
            out += ",";
        }
        out += frontier[i].get_str();
    }
    return out + ")";
}

RingElt truncate(const RingElt &x, const MultiChar &chi, const DegTuple &frontier)
{
    RingElt out(x.group(), x.field());
    const Trunc t{frontier, 1};
    for (const auto &[g, c] : x.terms()) {
        if (t.retains(deg_tuple(chi, g))) {
            out.add_term(g, c);
        }
    }
    return out;
}

DegTuple min_degrees(const RingElt &x, const MultiChar &chi)
{
    DegTuple m(chi.size(), 0);
    bool first = true;
    for (const auto &[g, c] : x.terms()) {
        const auto d = deg_tuple(chi, g);
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (first || d[i] < m[i]) {
                m[i] = d[i];
            }
        }
        first = false;
    }
    return m;
}

NovSeries::NovSeries(RingElt body, MultiChar chi, Trunc trunc, bool exact)
    : chi_(std::move(chi)), trunc_(std::move(trunc)), exact_(exact)
{
    if (body.group() != chi_.group()) {
        throw MismatchedGroup("series body and multicharacter live over different groups");
    }
    if (trunc_.frontier.size() != chi_.size()) {
        throw InvalidArgument("frontier has " + std::to_string(trunc_.frontier.size()) + " entries, expected " +
                              std::to_string(chi_.size()));
    }
    if (trunc_.m_max < 1) {
        throw InvalidArgument("m_max must be positive");
    }
    body_ = exact_ ? std::move(body) : truncate(body, chi_, trunc_.frontier);
}

RingElt NovSeries::retained() const
{
    return truncate(body_, chi_, trunc_.frontier);
}

std::string NovSeries::format() const
{
    std::vector<std::pair<DegTuple, const std::pair<const Elt, FieldElem> *>> terms;
    for (const auto &t : body_.terms()) {
        auto d = deg_tuple(chi_, t.first);
        if (trunc_.retains(d)) {
            terms.emplace_back(std::move(d), &t);
        }
    }
    std::sort(terms.begin(), terms.end(), [](const auto &a, const auto &b) {
        if (a.first != b.first) {
            return a.first < b.first;
        }
        return a.second->first < b.second->first;
    });
    std::string out;
    bool first = true;
    for (const auto &[d, t] : terms) {
        out += format_coeff_term(t->second, body_.group()->format(t->first), first);
        first = false;
    }
    std::string f = trunc_.frontier_str();
    f = f.substr(1, f.size() - 2);
    return out + (first ? "" : " + ") + "O(" + f + ")";
}

NovSeries nov_mul(const NovSeries &x, const NovSeries &y)
{
    if (!(x.chi() == y.chi())) {
        throw MismatchedCharacter("series carry different multicharacters");
    }
    const auto mx = min_degrees(x.body(), x.chi());
    const auto my = min_degrees(y.body(), y.chi());
    Trunc t;
    t.m_max = std::min(x.trunc().m_max, y.trunc().m_max);
    for (std::size_t i = 0; i < mx.size(); ++i) {
        const mpq_class a = x.trunc().frontier[i] + (x.exact() ? 0 : std::min(mpq_class(0), my[i]));
        const mpq_class b = y.trunc().frontier[i] + (y.exact() ? 0 : std::min(mpq_class(0), mx[i]));
        t.frontier.push_back(std::min(a, b));
    }
    return NovSeries(x.body() * y.body(), x.chi(), t, x.exact() && y.exact());
}

DegTuple working_box(const DegTuple &frontier, const RingElt &x, const MultiChar &chi)
{
    DegTuple spread(frontier.size(), 0);
    for (const auto &[g, c] : x.terms()) {
        const auto d = deg_tuple(chi, g);
        for (std::size_t i = 0; i < d.size(); ++i) {
            spread[i] = std::max(spread[i], mpq_class(abs(d[i])));
        }
    }
    DegTuple box = frontier;
    for (std::size_t i = 0; i < box.size(); ++i) {
        box[i] += 2 * spread[i] + 1;
    }
    return box;
}

bool clears(const RingElt &r, const MultiChar &chi, const DegTuple &frontier, const DegTuple &mindeg)
{
    DegTuple region = frontier;
    for (std::size_t i = 0; i < region.size(); ++i) {
        region[i] += std::min(mpq_class(0), mindeg[i]);
    }
    const Trunc t{region, 1};
    for (const auto &[g, c] : r.terms()) {
        if (t.retains(deg_tuple(chi, g))) {
            return false;
        }
    }
    return true;
}

namespace
{

struct Inverter {
    const MultiChar &chi;
    const DegTuple &box;
    unsigned m_max;

    RingElt cut(const RingElt &x) const { return truncate(x, chi, box); }

    RingElt invert(const RingElt &beta, std::size_t level) const
    {
        const auto &G = *chi.group();
        if (beta.is_zero()) {
            throw NoStrictMinimum("zero has no inverse");
        }
        if (level == G.num_levels()) {
            if (beta.size() != 1 || !beta.terms().begin()->first.is_identity()) {
                throw NoStrictMinimum("internal: expected a scalar at the bottom level");
            }
            return RingElt::scalar(beta.group(), beta.terms().begin()->second.inverse());
        }
        // Group the support by class in Q_level / Q_level+1.
        std::map<intmat::IntVec, RingElt> classes;
        for (const auto &[g, c] : beta.terms()) {
            auto key = G.level_vector(g, level);
            auto it = classes.try_emplace(std::move(key), beta.group(), beta.field()).first;
            it->second.add_term(g, c);
        }
        const auto &chi_l = chi.component(level);
        const RingElt *minimal = nullptr;
        mpq_class best;
        bool tied = false;
        for (const auto &[v, part] : classes) {
            const mpq_class val = chi_l(v);
            if (minimal == nullptr || val < best) {
                minimal = &part;
                best = val;
                tied = false;
            } else if (val == best) {
                tied = true;
            }
        }
        if (tied) {
            throw NoStrictMinimum("minimal value " + best.get_str() + " of the level-" + std::to_string(level) +
                                  " character is attained by several classes of the support");
        }
        const RingElt rest = beta - *minimal;
        const Elt g0 = minimal->terms().begin()->first;
        const Elt g0inv = G.inverse(g0);
        const RingElt y = minimal->left_mul(g0inv);
        const RingElt min_inv = cut(invert(y, level + 1).right_mul(g0inv));
        if (rest.is_zero()) {
            return min_inv;
        }
        const RingElt p = cut(-(min_inv * rest));
        RingElt sum = min_inv;
        RingElt power = RingElt::one(beta.group(), beta.field());
        for (unsigned m = 1;; ++m) {
            power = cut(power * p);
            if (power.is_zero()) {
                break;
            }
            if (m > m_max) {
                throw TruncationInsufficient("geometric series still nonzero after m_max = " +
                                             std::to_string(m_max) + " terms at level " + std::to_string(level));
            }
            sum += cut(power * min_inv);
        }
        return sum;
    }
};

} // namespace

RingElt invert_truncated(const RingElt &beta, const MultiChar &chi, const DegTuple &box, unsigned m_max)
{
    return Inverter{chi, box, m_max}.invert(beta, 0);
}

NovSeries nov_invert(const NovSeries &beta)
{
    constexpr unsigned max_widenings = 4;
    const auto &chi = beta.chi();
    const auto &T = beta.trunc().frontier;
    const RingElt one = RingElt::one(chi.group(), beta.body().field());
    const auto mindeg = min_degrees(beta.body(), chi);
    const auto base = working_box(T, beta.body(), chi);
    // Products shift deeper degrees by amounts bounded by the shallower
    // extent of the box, so only deeper levels are widened, until the
    // certified result is unchanged by a further widening.
    std::optional<RingElt> previous;
    for (unsigned attempt = 0; attempt <= max_widenings; ++attempt) {
        DegTuple box = base;
        for (std::size_t i = 1; i < box.size(); ++i) {
            box[i] = T[i] + mpq_class(mpz_class(1) << (attempt * i)) * (base[i] - T[i]);
        }
        const RingElt raw = invert_truncated(beta.body(), chi, box, beta.trunc().m_max);
        if (!clears(beta.body() * raw - one, chi, T, mindeg) || !clears(raw * beta.body() - one, chi, T, mindeg)) {
            previous.reset();
            continue;
        }
        RingElt kept = truncate(raw, chi, T);
        if (box.size() == 1 || (previous && *previous == kept)) {
            return NovSeries(std::move(kept), chi, beta.trunc(), false);
        }
        previous = std::move(kept);
    }
    throw CertificateFailure("residual of the inverse does not clear the frontier " + beta.trunc().frontier_str());
}

} // namespace nilnov
