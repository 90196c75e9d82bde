#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "f2core.hpp"

namespace conjcheck {

struct RingMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InhomogeneousInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One polynomial generator. nilpotency = 0 means no bound; m >= 2 means g^m = 0.
struct Generator {
    std::string name;
    unsigned degree = 1;
    unsigned nilpotency = 0;
};

// Immutable description of a graded polynomial quotient ring over F2:
// generators with degrees and nilpotency bounds plus a truncation degree D.
// Everything of total degree > D is cut off (and flagged, see GradedPolynomial).
class RingSpec {
public:
    RingSpec(std::vector<Generator> gens, unsigned truncation_degree)
        : gens_(std::move(gens)), truncation_(truncation_degree)
    {
        if (truncation_ == 0)
            throw std::invalid_argument("RingSpec: truncation degree must be positive");
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            const auto& g = gens_[i];
            if (g.name.empty() || !(std::isalpha(static_cast<unsigned char>(g.name[0])) || g.name[0] == '_'))
                throw std::invalid_argument("RingSpec: bad generator name '" + g.name + "'");
            for (char ch : g.name)
                if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'))
                    throw std::invalid_argument("RingSpec: bad generator name '" + g.name + "'");
            if (g.degree == 0)
                throw std::invalid_argument("RingSpec: generator degree must be positive");
            if (g.nilpotency == 1)
                throw std::invalid_argument("RingSpec: nilpotency bound 1 makes the generator zero");
            for (std::size_t j = 0; j < i; ++j)
                if (gens_[j].name == g.name)
                    throw std::invalid_argument("RingSpec: duplicate generator '" + g.name + "'");
        }
    }

    std::size_t arity() const noexcept { return gens_.size(); }
    const Generator& gen(std::size_t i) const { return gens_[i]; }
    const std::vector<Generator>& generators() const noexcept { return gens_; }
    unsigned truncation() const noexcept { return truncation_; }

    std::optional<std::size_t> find(const std::string& name) const
    {
        for (std::size_t i = 0; i < gens_.size(); ++i)
            if (gens_[i].name == name)
                return i;
        return std::nullopt;
    }

private:
    std::vector<Generator> gens_;
    unsigned truncation_;
};

using RingPtr = std::shared_ptr<const RingSpec>;

inline RingPtr make_ring(std::vector<Generator> gens, unsigned truncation_degree)
{
    return std::make_shared<const RingSpec>(std::move(gens), truncation_degree);
}

using Exponents = std::vector<std::uint32_t>;

inline unsigned monomial_degree(const RingSpec& ring, const Exponents& e)
{
    unsigned d = 0;
    for (std::size_t i = 0; i < e.size(); ++i)
        d += e[i] * ring.gen(i).degree;
    return d;
}

// Fixed term order: total degree first, then lexicographic on exponents.
// Terms are stored ascending; printing walks them in reverse (leading first).
inline bool grlex_less(const RingSpec& ring, const Exponents& a, const Exponents& b)
{
    const unsigned da = monomial_degree(ring, a), db = monomial_degree(ring, b);
    if (da != db)
        return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Element of the quotient ring: an F2-set of monomials (presence = coefficient 1).
// `truncated` records whether any contribution was dropped for exceeding the
// truncation degree anywhere in this value's history; quotient relations
// (nilpotency) are exact and do not taint.
class GradedPolynomial {
public:
    GradedPolynomial() = default;

    static GradedPolynomial zero(RingPtr ring) { return GradedPolynomial(std::move(ring)); }

    static GradedPolynomial one(RingPtr ring)
    {
        GradedPolynomial p(ring);
        p.terms_.push_back(Exponents(ring->arity(), 0));
        return p;
    }

    // Single monomial, reduced in the quotient. Nilpotency kills it exactly;
    // exceeding the truncation degree yields a tainted zero.
    static GradedPolynomial monomial(RingPtr ring, Exponents e)
    {
        if (e.size() != ring->arity())
            throw RingMismatch("monomial: exponent arity mismatch");
        GradedPolynomial p(ring);
        for (std::size_t i = 0; i < e.size(); ++i) {
            const unsigned nil = ring->gen(i).nilpotency;
            if (nil != 0 && e[i] >= nil)
                return p;  // exact zero
        }
        if (monomial_degree(*ring, e) > ring->truncation()) {
            p.truncated_ = true;
            return p;
        }
        p.terms_.push_back(std::move(e));
        return p;
    }

    static GradedPolynomial generator(RingPtr ring, std::size_t idx)
    {
        Exponents e(ring->arity(), 0);
        e.at(idx) = 1;
        return monomial(std::move(ring), std::move(e));
    }

    const RingPtr& ring() const noexcept { return ring_; }
    const std::vector<Exponents>& terms() const noexcept { return terms_; }
    bool truncated() const noexcept { return truncated_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    void mark_truncated() noexcept { truncated_ = true; }

    bool operator==(const GradedPolynomial& o) const
    {
        return ring_ == o.ring_ && terms_ == o.terms_;
    }
    bool operator!=(const GradedPolynomial& o) const { return !(*this == o); }

    GradedPolynomial operator+(const GradedPolynomial& o) const
    {
        require_same_ring(o);
        GradedPolynomial out(ring_);
        out.truncated_ = truncated_ || o.truncated_;
        auto less = [this](const Exponents& a, const Exponents& b) { return grlex_less(*ring_, a, b); };
        std::set_symmetric_difference(terms_.begin(), terms_.end(), o.terms_.begin(), o.terms_.end(),
                                      std::back_inserter(out.terms_), less);
        return out;
    }

    GradedPolynomial& operator+=(const GradedPolynomial& o)
    {
        *this = *this + o;
        return *this;
    }

    bool homogeneous() const
    {
        if (terms_.empty())
            return true;
        const unsigned d = monomial_degree(*ring_, terms_.front());
        for (const auto& t : terms_)
            if (monomial_degree(*ring_, t) != d)
                return false;
        return true;
    }

    // Degree of a nonzero homogeneous element.
    std::optional<unsigned> degree() const
    {
        if (terms_.empty() || !homogeneous())
            return std::nullopt;
        return monomial_degree(*ring_, terms_.front());
    }

    unsigned max_degree() const
    {
        unsigned d = 0;
        for (const auto& t : terms_)
            d = std::max(d, monomial_degree(*ring_, t));
        return d;
    }

    GradedPolynomial component(unsigned d) const
    {
        GradedPolynomial out(ring_);
        out.truncated_ = truncated_;
        for (const auto& t : terms_)
            if (monomial_degree(*ring_, t) == d)
                out.terms_.push_back(t);
        return out;
    }

    // Internal: adopt an unsorted, possibly repeated term list mod 2.
    static GradedPolynomial from_raw_terms(RingPtr ring, std::vector<Exponents> terms, bool truncated)
    {
        GradedPolynomial p(ring);
        p.truncated_ = truncated;
        auto less = [&ring](const Exponents& a, const Exponents& b) { return grlex_less(*ring, a, b); };
        std::sort(terms.begin(), terms.end(), less);
        for (std::size_t i = 0; i < terms.size();) {
            std::size_t j = i;
            while (j < terms.size() && terms[j] == terms[i])
                ++j;
            if ((j - i) % 2 == 1)
                p.terms_.push_back(terms[i]);
            i = j;
        }
        return p;
    }

    void require_same_ring(const GradedPolynomial& o) const
    {
        if (ring_ != o.ring_)
            throw RingMismatch("operands live in different rings");
    }

private:
    explicit GradedPolynomial(RingPtr ring) : ring_(std::move(ring)) {}

    RingPtr ring_;
    std::vector<Exponents> terms_;
    bool truncated_ = false;
};

// Cup product in the quotient ring.
inline GradedPolynomial multiply(const GradedPolynomial& p, const GradedPolynomial& q)
{
    p.require_same_ring(q);
    const RingPtr& ring = p.ring();
    const unsigned D = ring->truncation();
    std::vector<Exponents> raw;
    raw.reserve(p.terms().size() * q.terms().size());
    bool taint = p.truncated() || q.truncated();
    for (const auto& a : p.terms()) {
        for (const auto& b : q.terms()) {
            Exponents e(a.size());
            bool dead = false;
            for (std::size_t i = 0; i < a.size(); ++i) {
                e[i] = a[i] + b[i];
                const unsigned nil = ring->gen(i).nilpotency;
                if (nil != 0 && e[i] >= nil) {
                    dead = true;  // exact quotient relation
                    break;
                }
            }
            if (dead)
                continue;
            if (monomial_degree(*ring, e) > D) {
                taint = true;
                continue;
            }
            raw.push_back(std::move(e));
        }
    }
    return GradedPolynomial::from_raw_terms(ring, std::move(raw), taint);
}

inline GradedPolynomial operator*(const GradedPolynomial& p, const GradedPolynomial& q)
{
    return multiply(p, q);
}

inline GradedPolynomial pow(const GradedPolynomial& p, unsigned e)
{
    GradedPolynomial acc = GradedPolynomial::one(p.ring());
    for (unsigned i = 0; i < e; ++i)
        acc = acc * p;
    return acc;
}

namespace detail {

// Expand the total square of one monomial:
//   Sq(prod g_i^{e_i}) = prod_i (g_i + g_i^2)^{e_i}
//                      = prod_i sum_{j: C(e_i,j) odd} g_i^{e_i + j}.
// `keep` decides which expanded degrees are collected; dropping a term that
// `keep` rejects is not a truncation event (the caller didn't ask for it).
template <typename Keep>
inline void expand_total_sq_monomial(const RingSpec& ring, const Exponents& m,
                                     std::vector<Exponents>& out, bool& taint, Keep keep)
{
    const std::size_t nv = m.size();
    std::vector<std::vector<std::uint32_t>> choices(nv);
    for (std::size_t i = 0; i < nv; ++i) {
        for (std::uint32_t j = 0; j <= m[i]; ++j)
            if (binom_mod2(m[i], j))
                choices[i].push_back(m[i] + j);
        if (choices[i].empty())
            return;  // cannot happen: j = 0 always contributes
    }
    std::vector<std::size_t> idx(nv, 0);
    Exponents e(nv);
    while (true) {
        bool dead = false;
        for (std::size_t i = 0; i < nv; ++i) {
            e[i] = choices[i][idx[i]];
            const unsigned nil = ring.gen(i).nilpotency;
            if (nil != 0 && e[i] >= nil) {
                dead = true;
                break;
            }
        }
        if (!dead) {
            const unsigned d = monomial_degree(ring, e);
            if (keep(d)) {
                if (d > ring.truncation())
                    taint = true;
                else
                    out.push_back(e);
            }
        }
        // odometer step
        std::size_t pos = 0;
        while (pos < nv && ++idx[pos] == choices[pos].size()) {
            idx[pos] = 0;
            ++pos;
        }
        if (pos == nv)
            break;
    }
}

}  // namespace detail

// Total Steenrod square: the ring homomorphism with Sq(g) = g + g^2 on every
// generator. Output is inhomogeneous; components beyond the truncation degree
// are dropped and taint the result.
inline GradedPolynomial total_sq(const GradedPolynomial& p)
{
    const RingPtr& ring = p.ring();
    std::vector<Exponents> raw;
    bool taint = p.truncated();
    for (const auto& m : p.terms())
        detail::expand_total_sq_monomial(*ring, m, raw, taint, [](unsigned) { return true; });
    return GradedPolynomial::from_raw_terms(ring, std::move(raw), taint);
}

// Single Steenrod square Sq^k on a homogeneous element: the degree-(d+k)
// component of the total square. Exact (untainted) whenever d+k fits under
// the truncation degree, regardless of where the full total square would end.
inline GradedPolynomial sq_k(const GradedPolynomial& p, unsigned k)
{
    if (p.is_zero())
        return p;
    if (!p.homogeneous())
        throw InhomogeneousInput("sq_k: input must be homogeneous");
    const unsigned d = *p.degree();
    const RingPtr& ring = p.ring();
    const unsigned target = d + k;
    std::vector<Exponents> raw;
    bool taint = p.truncated();
    if (target > ring->truncation()) {
        GradedPolynomial out = GradedPolynomial::zero(ring);
        out.mark_truncated();
        return out;
    }
    for (const auto& m : p.terms())
        detail::expand_total_sq_monomial(*ring, m, raw, taint, [target](unsigned deg) { return deg == target; });
    return GradedPolynomial::from_raw_terms(ring, std::move(raw), taint);
}

// All monomials of the given total degree, respecting nilpotency bounds,
// in ascending term order.
inline std::vector<Exponents> monomial_basis(const RingSpec& ring, unsigned degree)
{
    std::vector<Exponents> out;
    Exponents cur(ring.arity(), 0);
    auto rec = [&](auto&& self, std::size_t pos, unsigned remaining) -> void {
        if (pos == ring.arity()) {
            if (remaining == 0)
                out.push_back(cur);
            return;
        }
        const auto& g = ring.gen(pos);
        const unsigned max_e = [&] {
            unsigned cap = remaining / g.degree;
            if (g.nilpotency != 0)
                cap = std::min(cap, g.nilpotency - 1);
            return cap;
        }();
        for (unsigned e = 0; e <= max_e; ++e) {
            cur[pos] = e;
            self(self, pos + 1, remaining - e * g.degree);
        }
        cur[pos] = 0;
    };
    if (degree <= ring.truncation())
        rec(rec, 0, degree);
    std::sort(out.begin(), out.end(),
              [&ring](const Exponents& a, const Exponents& b) { return grlex_less(ring, a, b); });
    return out;
}

// ---- textual format: monomials `t1^2*t2*u^3`, sums ` + `, zero `0` ----

inline std::string to_string(const GradedPolynomial& p)
{
    if (p.is_zero())
        return "0";
    const RingSpec& ring = *p.ring();
    std::string out;
    const auto& ts = p.terms();
    for (std::size_t ti = ts.size(); ti-- > 0;) {
        if (!out.empty())
            out += " + ";
        const Exponents& e = ts[ti];
        std::string mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0)
                continue;
            if (!mono.empty())
                mono += '*';
            mono += ring.gen(i).name;
            if (e[i] > 1) {
                mono += '^';
                mono += std::to_string(e[i]);
            }
        }
        out += mono.empty() ? "1" : mono;
    }
    return out;
}

inline GradedPolynomial parse_polynomial(RingPtr ring, const std::string& text)
{
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t");
        const auto b = s.find_last_not_of(" \t");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    GradedPolynomial acc = GradedPolynomial::zero(ring);
    std::string body = trim(text);
    if (body.empty())
        throw ParseError("empty polynomial");
    if (body == "0")
        return acc;
    std::size_t start = 0;
    while (start <= body.size()) {
        std::size_t plus = body.find('+', start);
        std::string term = trim(body.substr(start, plus == std::string::npos ? std::string::npos : plus - start));
        if (term.empty())
            throw ParseError("empty term in polynomial");
        Exponents e(ring->arity(), 0);
        if (term != "1") {
            std::size_t fs = 0;
            while (fs <= term.size()) {
                std::size_t star = term.find('*', fs);
                std::string factor = trim(term.substr(fs, star == std::string::npos ? std::string::npos : star - fs));
                if (factor.empty())
                    throw ParseError("empty factor in '" + term + "'");
                std::string name = factor;
                unsigned exp = 1;
                if (auto caret = factor.find('^'); caret != std::string::npos) {
                    name = trim(factor.substr(0, caret));
                    const std::string es = trim(factor.substr(caret + 1));
                    try {
                        exp = static_cast<unsigned>(std::stoul(es));
                    } catch (const std::exception&) {
                        throw ParseError("bad exponent in '" + factor + "'");
                    }
                }
                auto idx = ring->find(name);
                if (!idx)
                    throw ParseError("unknown generator '" + name + "'");
                e[*idx] += exp;
                if (star == std::string::npos)
                    break;
                fs = star + 1;
            }
        }
        acc += GradedPolynomial::monomial(ring, std::move(e));
        if (plus == std::string::npos)
            break;
        start = plus + 1;
    }
    return acc;
}

}  // namespace conjcheck
