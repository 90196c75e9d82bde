#pragma once

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "f2core.hpp"
#include "polyring.hpp"
#include "report.hpp"

namespace conjcheck {

// Composite Sq^{i1} ... Sq^{ik} with positive exponents; the empty sequence
// is the unit of the Steenrod algebra.
struct SqMonomial {
    std::vector<unsigned> exps;

    unsigned degree() const { return std::accumulate(exps.begin(), exps.end(), 0u); }

    bool admissible() const
    {
        for (std::size_t j = 0; j + 1 < exps.size(); ++j)
            if (exps[j] < 2 * exps[j + 1])
                return false;
        return true;
    }

    // excess = i1 - (i2 + ... + ik); zero for the unit
    int excess() const
    {
        if (exps.empty())
            return 0;
        int e = static_cast<int>(exps[0]);
        for (std::size_t j = 1; j < exps.size(); ++j)
            e -= static_cast<int>(exps[j]);
        return e;
    }

    bool operator==(const SqMonomial& o) const { return exps == o.exps; }
};

// Total order on monomials: degree ascending, excess descending, then lex.
// Within one admissible degree this is the listing order of admissible_basis.
inline bool sq_mono_less(const SqMonomial& a, const SqMonomial& b)
{
    const unsigned da = a.degree(), db = b.degree();
    if (da != db)
        return da < db;
    const int ea = a.excess(), eb = b.excess();
    if (ea != eb)
        return ea > eb;
    return std::lexicographical_compare(a.exps.begin(), a.exps.end(), b.exps.begin(), b.exps.end());
}

// F2-sum of composites of Steenrod squares.
class SteenrodElement {
public:
    SteenrodElement() = default;

    static SteenrodElement zero() { return SteenrodElement(); }

    static SteenrodElement unit()
    {
        SteenrodElement e;
        e.terms_.push_back(SqMonomial{});
        return e;
    }

    static SteenrodElement sq(unsigned i)
    {
        if (i == 0)
            return unit();
        SteenrodElement e;
        e.terms_.push_back(SqMonomial{{i}});
        return e;
    }

    static SteenrodElement from_terms(std::vector<SqMonomial> terms)
    {
        SteenrodElement e;
        std::sort(terms.begin(), terms.end(), sq_mono_less);
        for (std::size_t i = 0; i < terms.size();) {
            std::size_t j = i;
            while (j < terms.size() && terms[j] == terms[i])
                ++j;
            if ((j - i) % 2 == 1)
                e.terms_.push_back(terms[i]);
            i = j;
        }
        return e;
    }

    const std::vector<SqMonomial>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    bool homogeneous() const
    {
        if (terms_.empty())
            return true;
        const unsigned d = terms_.front().degree();
        for (const auto& t : terms_)
            if (t.degree() != d)
                return false;
        return true;
    }

    std::optional<unsigned> degree() const
    {
        if (terms_.empty() || !homogeneous())
            return std::nullopt;
        return terms_.front().degree();
    }

    bool normalized() const
    {
        for (const auto& t : terms_)
            if (!t.admissible())
                return false;
        return true;
    }

    bool operator==(const SteenrodElement& o) const { return terms_ == o.terms_; }
    bool operator!=(const SteenrodElement& o) const { return !(*this == o); }

    SteenrodElement operator+(const SteenrodElement& o) const
    {
        SteenrodElement out;
        std::set_symmetric_difference(terms_.begin(), terms_.end(), o.terms_.begin(), o.terms_.end(),
                                      std::back_inserter(out.terms_), sq_mono_less);
        return out;
    }

    SteenrodElement& operator+=(const SteenrodElement& o)
    {
        *this = *this + o;
        return *this;
    }

    // Composition, distributed over the F2 sums. Sq^0 factors disappear.
    SteenrodElement operator*(const SteenrodElement& o) const
    {
        std::vector<SqMonomial> raw;
        raw.reserve(terms_.size() * o.terms_.size());
        for (const auto& a : terms_) {
            for (const auto& b : o.terms_) {
                SqMonomial m;
                m.exps.reserve(a.exps.size() + b.exps.size());
                for (unsigned x : a.exps)
                    if (x != 0)
                        m.exps.push_back(x);
                for (unsigned x : b.exps)
                    if (x != 0)
                        m.exps.push_back(x);
                raw.push_back(std::move(m));
            }
        }
        return from_terms(std::move(raw));
    }

private:
    std::vector<SqMonomial> terms_;  // sorted unique under sq_mono_less
};

namespace detail {

// Adem relation for an inadmissible pair Sq^a Sq^b (a < 2b):
//   Sq^a Sq^b = sum_c C(b-c-1, a-2c) Sq^{a+b-c} Sq^c.
inline std::vector<SqMonomial> adem_pair(unsigned a, unsigned b)
{
    std::vector<SqMonomial> out;
    for (unsigned c = 0; 2 * c <= a; ++c) {
        if (binom_mod2(static_cast<long long>(b) - c - 1, static_cast<long long>(a) - 2 * c)) {
            if (c == 0)
                out.push_back(SqMonomial{{a + b}});
            else
                out.push_back(SqMonomial{{a + b - c, c}});
        }
    }
    return out;
}

inline std::vector<SqMonomial> normalize_monomial(const SqMonomial& m);

inline std::map<std::vector<unsigned>, std::vector<SqMonomial>>& adem_memo()
{
    static std::map<std::vector<unsigned>, std::vector<SqMonomial>> memo;
    return memo;
}

inline std::mutex& adem_memo_mutex()
{
    static std::mutex mu;
    return mu;
}

// Rewrite the leftmost inadmissible adjacent pair and recurse; every Adem
// application strictly raises the moment sum_j j*i_j, so this terminates.
inline std::vector<SqMonomial> normalize_monomial_uncached(const SqMonomial& m)
{
    for (std::size_t j = 0; j + 1 < m.exps.size(); ++j) {
        if (m.exps[j] < 2 * m.exps[j + 1]) {
            std::vector<SqMonomial> acc;
            for (const auto& rep : adem_pair(m.exps[j], m.exps[j + 1])) {
                SqMonomial next;
                next.exps.assign(m.exps.begin(), m.exps.begin() + j);
                next.exps.insert(next.exps.end(), rep.exps.begin(), rep.exps.end());
                next.exps.insert(next.exps.end(), m.exps.begin() + j + 2, m.exps.end());
                auto sub = normalize_monomial(next);
                acc.insert(acc.end(), sub.begin(), sub.end());
            }
            // cancel duplicates mod 2
            std::sort(acc.begin(), acc.end(), sq_mono_less);
            std::vector<SqMonomial> out;
            for (std::size_t i = 0; i < acc.size();) {
                std::size_t k = i;
                while (k < acc.size() && acc[k] == acc[i])
                    ++k;
                if ((k - i) % 2 == 1)
                    out.push_back(acc[i]);
                i = k;
            }
            return out;
        }
    }
    return {m};
}

inline std::vector<SqMonomial> normalize_monomial(const SqMonomial& m)
{
    if (m.admissible())
        return {m};
    {
        std::lock_guard<std::mutex> lock(adem_memo_mutex());
        auto it = adem_memo().find(m.exps);
        if (it != adem_memo().end())
            return it->second;
    }
    auto res = normalize_monomial_uncached(m);
    {
        std::lock_guard<std::mutex> lock(adem_memo_mutex());
        adem_memo().emplace(m.exps, res);
    }
    return res;
}

}  // namespace detail

// Unique admissible-basis representative. Idempotent and degree-preserving.
inline SteenrodElement adem_normalize(const SteenrodElement& e)
{
    std::vector<SqMonomial> raw;
    for (const auto& m : e.terms()) {
        auto part = detail::normalize_monomial(m);
        raw.insert(raw.end(), part.begin(), part.end());
    }
    return SteenrodElement::from_terms(std::move(raw));
}

// All admissible monomials of degree d, ordered by decreasing excess then lex.
inline std::vector<SqMonomial> admissible_basis(unsigned d)
{
    std::vector<SqMonomial> out;
    std::vector<unsigned> cur;
    auto rec = [&](auto&& self, unsigned remaining, unsigned max_first) -> void {
        if (remaining == 0) {
            out.push_back(SqMonomial{cur});
            return;
        }
        for (unsigned i1 = std::min(remaining, max_first); i1 >= 1; --i1) {
            cur.push_back(i1);
            self(self, remaining - i1, i1 / 2);
            cur.pop_back();
        }
    };
    rec(rec, d, d);
    std::sort(out.begin(), out.end(), sq_mono_less);
    return out;
}

// Action on a homogeneous polynomial: composites apply right to left via sq_k.
inline GradedPolynomial act(const SteenrodElement& e, const GradedPolynomial& p)
{
    GradedPolynomial acc = GradedPolynomial::zero(p.ring());
    for (const auto& m : e.terms()) {
        GradedPolynomial q = p;
        for (std::size_t j = m.exps.size(); j-- > 0;)
            q = sq_k(q, m.exps[j]);
        acc += q;
    }
    return acc;
}

// Degreewise check that evaluation on the product of n degree-1 generators is
// injective on the Steenrod algebra in degrees <= max_degree (<= n).
inline VerificationReport injectivity_report(unsigned n, unsigned max_degree)
{
    if (max_degree > n)
        throw std::invalid_argument("injectivity_report: max degree must be <= n");
    VerificationReport rep;
    rep.subject = "sq-injectivity";
    rep.model = "rp-infinity^" + std::to_string(n);
    rep.max_degree = max_degree;

    std::vector<Generator> gens;
    for (unsigned i = 1; i <= n; ++i)
        gens.push_back({"t" + std::to_string(i), 1, 0});
    const unsigned trunc = std::max(1u, n + max_degree);
    RingPtr ring = make_ring(std::move(gens), trunc);

    GradedPolynomial top = GradedPolynomial::one(ring);
    for (unsigned i = 0; i < n; ++i)
        top = top * GradedPolynomial::generator(ring, i);

    for (unsigned m = 0; m <= max_degree; ++m) {
        const auto basis = admissible_basis(m);
        const auto target_monos = monomial_basis(*ring, n + m);
        F2Matrix mat(target_monos.size(), basis.size());
        for (std::size_t c = 0; c < basis.size(); ++c) {
            const auto img = act(SteenrodElement::from_terms({basis[c]}), top);
            for (const auto& t : img.terms()) {
                const auto it = std::lower_bound(target_monos.begin(), target_monos.end(), t,
                                                 [&ring](const Exponents& a, const Exponents& b) {
                                                     return grlex_less(*ring, a, b);
                                                 });
                mat.set(static_cast<std::size_t>(it - target_monos.begin()), c, true);
            }
            ++rep.classes_checked;
        }
        const std::size_t rk = mat.rank();
        rep.notes.push_back("degree " + std::to_string(m) + ": basis " + std::to_string(basis.size()) +
                            ", rank " + std::to_string(rk));
        if (rk != basis.size())
            rep.fail({"degree " + std::to_string(m), "rank " + std::to_string(basis.size()),
                      "rank " + std::to_string(rk)});
    }
    return rep;
}

// ---- textual format: `Sq^4 Sq^2 + Sq^5 Sq^1`, unit `1`, zero `0` ----

inline std::string to_string(const SqMonomial& m)
{
    if (m.exps.empty())
        return "1";
    std::string out;
    for (std::size_t j = 0; j < m.exps.size(); ++j) {
        if (j)
            out += ' ';
        out += "Sq^" + std::to_string(m.exps[j]);
    }
    return out;
}

inline std::string to_string(const SteenrodElement& e)
{
    if (e.is_zero())
        return "0";
    std::string out;
    for (const auto& m : e.terms()) {
        if (!out.empty())
            out += " + ";
        out += to_string(m);
    }
    return out;
}

inline SteenrodElement parse_steenrod(const std::string& text)
{
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t");
        const auto b = s.find_last_not_of(" \t");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string body = trim(text);
    if (body.empty())
        throw ParseError("empty Steenrod element");
    if (body == "0")
        return SteenrodElement::zero();
    std::vector<SqMonomial> raw;
    std::size_t start = 0;
    while (start <= body.size()) {
        const std::size_t plus = body.find('+', start);
        const std::string term =
            trim(body.substr(start, plus == std::string::npos ? std::string::npos : plus - start));
        if (term.empty())
            throw ParseError("empty term in Steenrod element");
        SqMonomial m;
        if (term != "1") {
            std::istringstream iss(term);
            std::string tok;
            while (iss >> tok) {
                if (tok.rfind("Sq^", 0) != 0)
                    throw ParseError("bad factor '" + tok + "' (expected Sq^<i>)");
                unsigned i = 0;
                try {
                    i = static_cast<unsigned>(std::stoul(tok.substr(3)));
                } catch (const std::exception&) {
                    throw ParseError("bad exponent in '" + tok + "'");
                }
                if (i == 0)
                    continue;  // Sq^0 is the identity
                m.exps.push_back(i);
            }
        }
        raw.push_back(std::move(m));
        if (plus == std::string::npos)
            break;
        start = plus + 1;
    }
    return SteenrodElement::from_terms(std::move(raw));
}

}  // namespace conjcheck
