#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace conjcheck {

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NoSolvingK : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// C(n,k) mod 2 via the digitwise rule: 1 iff the binary digits of k are
// bitwise contained in those of n. Zero for k < 0 or k > n.
inline int binom_mod2(long long n, long long k) noexcept
{
    if (k < 0 || k > n)
        return 0;
    return ((k & n) == k) ? 1 : 0;
}

// Smallest usable k for the even-index step of the coefficient recursion:
// 2k <= i and C(n,2k) != C(n-i,2k) mod 2. The 2-adic candidate (2k = largest
// power of 2 dividing i) is tried first, then an ascending scan.
inline unsigned pick_k(unsigned n, unsigned i)
{
    if (i == 0 || i % 2 != 0 || i > n)
        throw std::invalid_argument("pick_k: need i even with 0 < i <= n");
    const unsigned two_adic = i & (~i + 1u);  // lowest set bit of i
    const unsigned k0 = two_adic / 2;
    if (k0 >= 1 && binom_mod2(n, 2 * k0) != binom_mod2(static_cast<long long>(n) - i, 2 * k0))
        return k0;
    for (unsigned k = 1; 2 * k <= i; ++k)
        if (binom_mod2(n, 2 * k) != binom_mod2(static_cast<long long>(n) - i, 2 * k))
            return k;
    throw NoSolvingK("pick_k: no k <= i/2 with C(n,2k) != C(n-i,2k) for n=" + std::to_string(n) +
                     ", i=" + std::to_string(i));
}

// Bit vector over GF(2), word-packed.
class F2Vector {
public:
    F2Vector() = default;
    explicit F2Vector(std::size_t n) : size_(n), words_((n + 63) / 64, 0) {}

    std::size_t size() const noexcept { return size_; }

    bool get(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }

    void set(std::size_t i, bool v)
    {
        const std::uint64_t mask = std::uint64_t{1} << (i % 64);
        if (v)
            words_[i / 64] |= mask;
        else
            words_[i / 64] &= ~mask;
    }

    F2Vector& operator^=(const F2Vector& o)
    {
        if (o.size_ != size_)
            throw DimensionMismatch("F2Vector xor: size mismatch");
        for (std::size_t w = 0; w < words_.size(); ++w)
            words_[w] ^= o.words_[w];
        return *this;
    }

    bool is_zero() const noexcept
    {
        for (auto w : words_)
            if (w)
                return false;
        return true;
    }

    bool operator==(const F2Vector& o) const noexcept
    {
        return size_ == o.size_ && words_ == o.words_;
    }

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

// Dense GF(2) matrix, bit-packed row-major.
class F2Matrix {
public:
    F2Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), wpr_(std::max<std::size_t>(1, (cols + 63) / 64)),
          bits_(rows * wpr_, 0)
    {
    }

    static F2Matrix identity(std::size_t n)
    {
        F2Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m.set(i, i, true);
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    bool get(std::size_t r, std::size_t c) const
    {
        return (bits_[r * wpr_ + c / 64] >> (c % 64)) & 1u;
    }

    void set(std::size_t r, std::size_t c, bool v)
    {
        const std::uint64_t mask = std::uint64_t{1} << (c % 64);
        if (v)
            bits_[r * wpr_ + c / 64] |= mask;
        else
            bits_[r * wpr_ + c / 64] &= ~mask;
    }

    void xor_row(std::size_t dst, std::size_t src)
    {
        for (std::size_t w = 0; w < wpr_; ++w)
            bits_[dst * wpr_ + w] ^= bits_[src * wpr_ + w];
    }

    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        for (std::size_t w = 0; w < wpr_; ++w)
            std::swap(bits_[a * wpr_ + w], bits_[b * wpr_ + w]);
    }

    std::size_t rank() const;

private:
    std::size_t rows_, cols_, wpr_;
    std::vector<std::uint64_t> bits_;
};

enum class SolveKind { Unique, Underdetermined, Inconsistent };

struct LinearSolveResult {
    SolveKind kind = SolveKind::Inconsistent;
    std::size_t rank = 0;
    std::optional<F2Vector> solution;  // a particular solution, absent if inconsistent
    std::vector<F2Vector> kernel;      // basis of the null space
};

// Gaussian elimination over GF(2) with deterministic pivoting: columns are
// processed left to right and the first available row supplies the pivot.
inline LinearSolveResult solve_linear(const F2Matrix& m_in, const F2Vector& b_in)
{
    if (b_in.size() != m_in.rows())
        throw DimensionMismatch("solve_linear: rhs length != rows");

    F2Matrix m = m_in;
    F2Vector b = b_in;
    const std::size_t rows = m.rows(), cols = m.cols();

    std::vector<std::size_t> pivot_col;
    std::size_t pr = 0;  // next pivot row
    for (std::size_t c = 0; c < cols && pr < rows; ++c) {
        std::size_t piv = rows;
        for (std::size_t r = pr; r < rows; ++r)
            if (m.get(r, c)) {
                piv = r;
                break;
            }
        if (piv == rows)
            continue;
        m.swap_rows(pr, piv);
        {
            const bool bp = b.get(pr), bv = b.get(piv);
            // rows were swapped above; mirror on b
            if (pr != piv) {
                b.set(pr, bv);
                b.set(piv, bp);
            }
        }
        for (std::size_t r = 0; r < rows; ++r) {
            if (r != pr && m.get(r, c)) {
                m.xor_row(r, pr);
                b.set(r, b.get(r) ^ b.get(pr));
            }
        }
        pivot_col.push_back(c);
        ++pr;
    }

    LinearSolveResult res;
    res.rank = pivot_col.size();

    for (std::size_t r = res.rank; r < rows; ++r)
        if (b.get(r))
            return res;  // inconsistent: zero row with nonzero rhs

    F2Vector sol(cols);
    for (std::size_t r = 0; r < pivot_col.size(); ++r)
        sol.set(pivot_col[r], b.get(r));
    res.solution = sol;

    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_col)
        is_pivot[c] = true;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f])
            continue;
        F2Vector v(cols);
        v.set(f, true);
        for (std::size_t r = 0; r < pivot_col.size(); ++r)
            if (m.get(r, f))
                v.set(pivot_col[r], true);
        res.kernel.push_back(std::move(v));
    }
    res.kind = res.kernel.empty() ? SolveKind::Unique : SolveKind::Underdetermined;
    return res;
}

inline std::size_t F2Matrix::rank() const
{
    F2Matrix m = *this;
    std::size_t pr = 0;
    for (std::size_t c = 0; c < cols_ && pr < rows_; ++c) {
        std::size_t piv = rows_;
        for (std::size_t r = pr; r < rows_; ++r)
            if (m.get(r, c)) {
                piv = r;
                break;
            }
        if (piv == rows_)
            continue;
        m.swap_rows(pr, piv);
        for (std::size_t r = pr + 1; r < rows_; ++r)
            if (m.get(r, c))
                m.xor_row(r, pr);
        ++pr;
    }
    return pr;
}

// Matrix-vector product, used by tests to validate solver output.
inline F2Vector mat_vec(const F2Matrix& m, const F2Vector& x)
{
    if (x.size() != m.cols())
        throw DimensionMismatch("mat_vec: vector length != cols");
    F2Vector y(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        bool acc = false;
        for (std::size_t c = 0; c < m.cols(); ++c)
            acc ^= (m.get(r, c) && x.get(c));
        y.set(r, acc);
    }
    return y;
}

}  // namespace conjcheck
