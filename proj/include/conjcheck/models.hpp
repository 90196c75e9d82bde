#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "polyring.hpp"
#include "steenrod.hpp"

namespace conjcheck {

struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidFixedDim : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InfiniteEnumeration : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Element of H^*(fixed set) tensor F2[u]: a polynomial in the fring extended
// by the degree-1 equivariant parameter u (always the last generator), with
// coefficient extraction per power of u.
class EquivariantClass {
public:
    EquivariantClass(RingPtr fring, GradedPolynomial value_in_fring_u)
        : fring_(std::move(fring)), val_(std::move(value_in_fring_u))
    {
    }

    const GradedPolynomial& poly() const noexcept { return val_; }
    const RingPtr& base_ring() const noexcept { return fring_; }
    bool truncated() const noexcept { return val_.truncated(); }

    // coefficient of u^j, as an element of the fring
    GradedPolynomial coeff(unsigned j) const
    {
        const std::size_t u_idx = fring_->arity();
        GradedPolynomial out = GradedPolynomial::zero(fring_);
        if (val_.truncated())
            out.mark_truncated();
        for (const auto& t : val_.terms()) {
            if (t[u_idx] != j)
                continue;
            Exponents e(t.begin(), t.begin() + u_idx);
            out += GradedPolynomial::monomial(fring_, std::move(e));
        }
        return out;
    }

    unsigned u_degree() const
    {
        const std::size_t u_idx = fring_->arity();
        unsigned d = 0;
        for (const auto& t : val_.terms())
            d = std::max(d, static_cast<unsigned>(t[u_idx]));
        return d;
    }

    bool operator==(const EquivariantClass& o) const { return val_ == o.val_; }
    bool operator!=(const EquivariantClass& o) const { return !(*this == o); }

private:
    RingPtr fring_;
    GradedPolynomial val_;
};

enum class ModelKind { Projective, Spheres };

// A candidate conjugation space, given by generators and the two structure
// maps the checks need: kappa on generators and the composite r_G(sigma(-))
// on generators. H_G^*(X) itself is never materialized; everything factors
// through H^*(X^tau) tensor F2[u].
struct ConjugationModel {
    ModelKind kind = ModelKind::Projective;
    std::string name;

    RingPtr xring;    // H^*(X), all generators in even degree
    RingPtr xring_u;  // H^*(X) tensor F2[u]
    RingPtr fring;    // H^*(X^tau)
    RingPtr fring_u;  // H^*(X^tau) tensor F2[u]

    std::vector<std::optional<std::size_t>> kappa_gen;  // xring gen -> fring gen
    std::vector<GradedPolynomial> rgsigma_gen;          // r_G(sigma(g)) in fring_u
    bool claims_conjugation = false;

    // model parameters, kept for serialization
    unsigned projective_n = 0;
    std::vector<std::pair<unsigned, unsigned>> sphere_factors;  // (ambient, fixed)

    std::size_t u_index() const { return fring->arity(); }

    GradedPolynomial u_power(unsigned j) const
    {
        Exponents e(fring_u->arity(), 0);
        e[fring->arity()] = j;
        return GradedPolynomial::monomial(fring_u, std::move(e));
    }

    GradedPolynomial embed_f(const GradedPolynomial& p) const
    {
        if (p.ring() != fring)
            throw RingMismatch("embed_f: expected an fring element");
        GradedPolynomial out = GradedPolynomial::zero(fring_u);
        if (p.truncated())
            out.mark_truncated();
        for (const auto& t : p.terms()) {
            Exponents e = t;
            e.push_back(0);
            out += GradedPolynomial::monomial(fring_u, std::move(e));
        }
        return out;
    }

    bool kappa_defined_on(const GradedPolynomial& x) const
    {
        for (const auto& t : x.terms())
            for (std::size_t i = 0; i < t.size(); ++i)
                if (t[i] != 0 && !kappa_gen[i])
                    return false;
        return true;
    }

    // Multiplicative (hence degreewise) extension of the generator assignment.
    GradedPolynomial kappa(const GradedPolynomial& x) const
    {
        if (x.ring() != xring)
            throw RingMismatch("kappa: expected an xring element");
        GradedPolynomial out = GradedPolynomial::zero(fring);
        if (x.truncated())
            out.mark_truncated();
        for (const auto& t : x.terms()) {
            Exponents e(fring->arity(), 0);
            for (std::size_t i = 0; i < t.size(); ++i) {
                if (t[i] == 0)
                    continue;
                if (!kappa_gen[i])
                    throw ModelError("kappa undefined on generator " + xring->gen(i).name);
                e[*kappa_gen[i]] += t[i];
            }
            out += GradedPolynomial::monomial(fring, std::move(e));
        }
        return out;
    }

    EquivariantClass rg_sigma(const GradedPolynomial& x) const
    {
        if (x.ring() != xring)
            throw RingMismatch("rg_sigma: expected an xring element");
        GradedPolynomial acc = GradedPolynomial::zero(fring_u);
        if (x.truncated())
            acc.mark_truncated();
        for (const auto& t : x.terms()) {
            GradedPolynomial prod = GradedPolynomial::one(fring_u);
            for (std::size_t i = 0; i < t.size(); ++i)
                for (std::uint32_t rep = 0; rep < t[i]; ++rep)
                    prod = prod * rgsigma_gen[i];
            acc += prod;
        }
        return EquivariantClass(fring, acc);
    }

    // r_G extended over H^*(X) tensor F2[u]: u maps to u.
    EquivariantClass rg_on_xu(const GradedPolynomial& p) const
    {
        if (p.ring() != xring_u)
            throw RingMismatch("rg_on_xu: expected an xring_u element");
        const std::size_t uix = xring->arity();
        GradedPolynomial acc = GradedPolynomial::zero(fring_u);
        if (p.truncated())
            acc.mark_truncated();
        for (const auto& t : p.terms()) {
            GradedPolynomial prod = u_power(t[uix]);
            for (std::size_t i = 0; i < uix; ++i)
                for (std::uint32_t rep = 0; rep < t[i]; ++rep)
                    prod = prod * rgsigma_gen[i];
            acc += prod;
        }
        return EquivariantClass(fring, acc);
    }

    // The ordinary restriction r = p o r_G o sigma, with p realized as u -> 0.
    GradedPolynomial restrict_r(const GradedPolynomial& x) const
    {
        return rg_sigma(x).coeff(0);
    }

    std::vector<GradedPolynomial> basis_classes(unsigned degree) const
    {
        std::vector<GradedPolynomial> out;
        for (auto& e : monomial_basis(*xring, degree))
            out.push_back(GradedPolynomial::monomial(xring, e));
        return out;
    }
};

namespace detail {

inline void validate_model(const ConjugationModel& m)
{
    for (const auto& g : m.xring->generators())
        if (g.degree % 2 != 0)
            throw ModelError("xring generator " + g.name + " has odd degree");
    for (std::size_t i = 0; i < m.xring->arity(); ++i) {
        const unsigned d = m.xring->gen(i).degree;
        const auto& img = m.rgsigma_gen[i];
        if (!img.is_zero() && (!img.homogeneous() || *img.degree() != d))
            throw ModelError("rg_sigma image of " + m.xring->gen(i).name +
                             " is not homogeneous of the right degree");
        if (m.kappa_gen[i] && m.fring->gen(*m.kappa_gen[i]).degree * 2 != d)
            throw ModelError("kappa image of " + m.xring->gen(i).name + " does not halve the degree");
        if (m.claims_conjugation) {
            if (!m.kappa_gen[i])
                throw ModelError("claims-conjugation model with undefined kappa");
            const EquivariantClass cls(m.fring, img);
            const unsigned half = d / 2;
            if (cls.u_degree() > half)
                throw ModelError("claims-conjugation model violates the leading-term bound");
            const GradedPolynomial lead = cls.coeff(half);
            const GradedPolynomial kg = m.kappa(GradedPolynomial::generator(m.xring, i));
            if (lead != kg)
                throw ModelError("leading u-coefficient of rg_sigma(g) differs from kappa(g)");
        }
    }
}

}  // namespace detail

// X = (CP^infinity)^n with complex conjugation: generators v_i of degree 2,
// fixed set (RP^infinity)^n with t_i of degree 1, kappa(v_i) = t_i and
// r_G(sigma(v_i)) = t_i u + t_i^2, all truncated at degree D.
inline ConjugationModel projective_model(unsigned n, unsigned truncation_degree)
{
    if (n == 0)
        throw std::invalid_argument("projective_model: n must be positive");
    if (truncation_degree < 2)
        throw std::invalid_argument("projective_model: truncation degree must be >= 2");

    ConjugationModel m;
    m.kind = ModelKind::Projective;
    m.name = "projective(n=" + std::to_string(n) + ")";
    m.projective_n = n;
    m.claims_conjugation = true;

    std::vector<Generator> xg, fg;
    for (unsigned i = 1; i <= n; ++i) {
        xg.push_back({"v" + std::to_string(i), 2, 0});
        fg.push_back({"t" + std::to_string(i), 1, 0});
    }
    m.xring = make_ring(xg, truncation_degree);
    xg.push_back({"u", 1, 0});
    m.xring_u = make_ring(std::move(xg), truncation_degree);
    m.fring = make_ring(fg, truncation_degree);
    fg.push_back({"u", 1, 0});
    m.fring_u = make_ring(std::move(fg), truncation_degree);

    for (unsigned i = 0; i < n; ++i) {
        m.kappa_gen.push_back(i);
        const GradedPolynomial t = GradedPolynomial::generator(m.fring_u, i);
        m.rgsigma_gen.push_back(t * m.u_power(1) + t * t);
    }
    detail::validate_model(m);
    return m;
}

struct SphereFactor {
    unsigned ambient = 0;  // d: the sphere S^d in X
    unsigned fixed = 0;    // f: the fixed sphere S^f inside it
};

// X = product of spheres S^{d_i} with a componentwise involution fixing
// S^{f_i} in the i-th factor. r_G(s_d tensor 1) = s_f u^{d-f}; kappa pairs
// each ambient generator with the unique fixed generator of half its degree
// (the factor's own one when d = 2f). claims_conjugation iff d_i = 2 f_i
// throughout.
inline ConjugationModel sphere_product_model(const std::vector<SphereFactor>& factors,
                                             unsigned truncation_degree = 0)
{
    if (factors.empty())
        throw std::invalid_argument("sphere_product_model: need at least one factor");
    unsigned top = 0;
    for (const auto& f : factors) {
        if (f.fixed < 1 || f.fixed > f.ambient)
            throw InvalidFixedDim("sphere_product_model: need 1 <= f <= d");
        if (f.ambient % 2 != 0)
            throw InvalidFixedDim("sphere_product_model: ambient dimension must be even");
        top += f.ambient;
    }
    const unsigned D = truncation_degree ? truncation_degree : 2 * top;

    ConjugationModel m;
    m.kind = ModelKind::Spheres;
    m.claims_conjugation = true;
    for (const auto& f : factors) {
        m.sphere_factors.emplace_back(f.ambient, f.fixed);
        if (f.ambient != 2 * f.fixed)
            m.claims_conjugation = false;
    }
    {
        std::string desc;
        for (const auto& f : factors) {
            if (!desc.empty())
                desc += ";";
            desc += std::to_string(f.ambient) + "," + std::to_string(f.fixed);
        }
        m.name = "spheres(" + desc + ")";
    }

    auto factor_name = [&factors](unsigned dim, std::size_t idx, bool ambient) {
        unsigned count = 0;
        for (const auto& f : factors)
            if ((ambient ? f.ambient : f.fixed) == dim)
                ++count;
        std::string base = "s" + std::to_string(dim);
        if (count > 1)
            base += "_" + std::to_string(idx + 1);
        return base;
    };

    std::vector<Generator> xg, fg;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        xg.push_back({factor_name(factors[i].ambient, i, true), factors[i].ambient, 2});
        fg.push_back({factor_name(factors[i].fixed, i, false), factors[i].fixed, 2});
    }
    m.xring = make_ring(xg, D);
    {
        auto xgu = xg;
        xgu.push_back({"u", 1, 0});
        m.xring_u = make_ring(std::move(xgu), D);
    }
    m.fring = make_ring(fg, D);
    {
        auto fgu = fg;
        fgu.push_back({"u", 1, 0});
        m.fring_u = make_ring(std::move(fgu), D);
    }

    // kappa: factor-wise when d = 2f, otherwise the unique generator of half
    // the degree if there is one.
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (factors[i].ambient == 2 * factors[i].fixed) {
            m.kappa_gen.push_back(i);
            continue;
        }
        const unsigned want = factors[i].ambient / 2;
        std::optional<std::size_t> found;
        bool unique = true;
        for (std::size_t j = 0; j < factors.size(); ++j) {
            if (factors[j].fixed == want) {
                if (found)
                    unique = false;
                found = j;
            }
        }
        m.kappa_gen.push_back(unique && found ? found : std::optional<std::size_t>{});
    }

    for (std::size_t i = 0; i < factors.size(); ++i) {
        const GradedPolynomial sf = GradedPolynomial::generator(m.fring_u, i);
        m.rgsigma_gen.push_back(sf * m.u_power(factors[i].ambient - factors[i].fixed));
    }
    detail::validate_model(m);
    return m;
}

// SQ(z) = sum_{i=0}^{n} Sq^i(z) u^{n-i} for z homogeneous of degree n.
inline EquivariantClass homogenised_total_sq(const ConjugationModel& m, const GradedPolynomial& z,
                                             unsigned n)
{
    if (z.ring() != m.fring)
        throw RingMismatch("homogenised_total_sq: expected an fring element");
    if (!z.is_zero() && (!z.homogeneous() || *z.degree() != n))
        throw InhomogeneousInput("homogenised_total_sq: z must be homogeneous of degree n");
    GradedPolynomial acc = GradedPolynomial::zero(m.fring_u);
    for (unsigned i = 0; i <= n; ++i) {
        const GradedPolynomial sq_i = act(SteenrodElement::sq(i), z);
        acc += m.embed_f(sq_i) * m.u_power(n - i);
    }
    return EquivariantClass(m.fring, acc);
}

// All r_G-images of additive degree-preserving sections, per basis class of
// the given degree: r_G(x tensor 1) plus any subset of the correction images
// r_G(c tensor u^{d - deg c}) over lower-degree basis classes c.
struct SectionCandidates {
    GradedPolynomial cls;                       // the basis class x
    std::vector<GradedPolynomial> sigma_values; // candidates in xring_u
    std::vector<EquivariantClass> images;       // their r_G images
};

inline std::vector<SectionCandidates> enumerate_sections(const ConjugationModel& m, unsigned degree)
{
    std::vector<GradedPolynomial> corrections;  // in xring_u
    for (unsigned d = 0; d < degree; ++d) {
        for (const auto& e : monomial_basis(*m.xring, d)) {
            Exponents eu = e;
            eu.push_back(degree - d);
            corrections.push_back(GradedPolynomial::monomial(m.xring_u, std::move(eu)));
        }
    }
    if (corrections.size() > 20)
        throw InfiniteEnumeration("enumerate_sections: " + std::to_string(corrections.size()) +
                                  " correction classes; graded pieces too large to enumerate");

    std::vector<SectionCandidates> out;
    for (const auto& e : monomial_basis(*m.xring, degree)) {
        SectionCandidates sc{GradedPolynomial::monomial(m.xring, e), {}, {}};
        Exponents eu = e;
        eu.push_back(0);
        const GradedPolynomial base = GradedPolynomial::monomial(m.xring_u, std::move(eu));
        const std::size_t count = std::size_t{1} << corrections.size();
        for (std::size_t mask = 0; mask < count; ++mask) {
            GradedPolynomial sigma = base;
            for (std::size_t j = 0; j < corrections.size(); ++j)
                if ((mask >> j) & 1)
                    sigma += corrections[j];
            sc.images.push_back(m.rg_on_xu(sigma));
            sc.sigma_values.push_back(std::move(sigma));
        }
        out.push_back(std::move(sc));
    }
    return out;
}

}  // namespace conjcheck
