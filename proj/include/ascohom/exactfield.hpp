#ifndef ASCOHOM_EXACTFIELD_HPP
#define ASCOHOM_EXACTFIELD_HPP

// Prime-field arithmetic and dense exact linear algebra over F_p.

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace ascohom {

/// Deterministic trial-division primality test; moduli are below 2^31.
constexpr bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

/// Element of F_p. Carries its modulus so mixed-field arithmetic is caught.
class Fp {
   public:
    constexpr Fp() noexcept = default;

    /// Reduces an arbitrary signed integer into [0, p). The modulus is trusted;
    /// use PrimeField to validate it.
    constexpr Fp(std::int64_t value, std::uint32_t p) noexcept
        : v_(static_cast<std::uint32_t>(((value % static_cast<std::int64_t>(p)) + p) % p)), p_(p) {}

    constexpr std::uint32_t value() const noexcept { return v_; }
    constexpr std::uint32_t modulus() const noexcept { return p_; }
    constexpr bool is_zero() const noexcept { return v_ == 0; }

    /// Symmetric representative in (-p/2, p/2], handy for printing.
    constexpr std::int64_t signed_value() const noexcept {
        return v_ > p_ / 2 ? static_cast<std::int64_t>(v_) - p_ : v_;
    }

    friend constexpr bool operator==(Fp a, Fp b) noexcept { return a.v_ == b.v_ && a.p_ == b.p_; }

    constexpr Fp operator-() const noexcept { return raw(v_ == 0 ? 0 : p_ - v_, p_); }
    friend constexpr Fp operator+(Fp a, Fp b) noexcept {
        std::uint32_t s = a.v_ + b.v_;
        return raw(s >= a.p_ ? s - a.p_ : s, a.p_);
    }
    friend constexpr Fp operator-(Fp a, Fp b) noexcept { return a + (-b); }
    friend constexpr Fp operator*(Fp a, Fp b) noexcept {
        return raw(static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.v_) * b.v_ % a.p_), a.p_);
    }
    friend Fp operator/(Fp a, Fp b) { return a * b.inv(); }
    Fp& operator+=(Fp b) noexcept { return *this = *this + b; }
    Fp& operator-=(Fp b) noexcept { return *this = *this - b; }
    Fp& operator*=(Fp b) noexcept { return *this = *this * b; }

    constexpr Fp pow(std::uint64_t e) const noexcept {
        Fp base = *this, acc = raw(1 % p_, p_);
        while (e) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    Fp inv() const {
        if (v_ == 0) throw precondition_error("DivisionByZero", "inverse of zero in F_" + std::to_string(p_));
        return pow(p_ - 2);
    }

    friend std::ostream& operator<<(std::ostream& os, Fp a) { return os << a.v_; }

   private:
    static constexpr Fp raw(std::uint32_t v, std::uint32_t p) noexcept {
        Fp r;
        r.v_ = v;
        r.p_ = p;
        return r;
    }
    std::uint32_t v_ = 0;
    std::uint32_t p_ = 2;
};

/// Computation context for F_p; validates the modulus once.
class PrimeField {
   public:
    explicit PrimeField(std::uint64_t p) : p_(static_cast<std::uint32_t>(p)) {
        if (p >= (1ULL << 31) || !is_prime(p))
            throw precondition_error("InvalidModulus", std::to_string(p) + " is not a prime below 2^31");
    }
    std::uint32_t p() const noexcept { return p_; }
    Fp operator()(std::int64_t v) const noexcept { return Fp(v, p_); }
    Fp zero() const noexcept { return Fp(0, p_); }
    Fp one() const noexcept { return Fp(1, p_); }

   private:
    std::uint32_t p_;
};

/// Dense row-major matrix over F_p.
class MatrixFp {
   public:
    MatrixFp() = default;
    MatrixFp(std::size_t rows, std::size_t cols, std::uint32_t p)
        : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {}

    /// Row-list constructor; entries are reduced mod p.
    MatrixFp(std::initializer_list<std::initializer_list<std::int64_t>> rows, std::uint32_t p) : p_(p) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            ensure(r.size() == cols_, "RaggedMatrix", "rows of unequal length");
            for (auto v : r) data_.push_back(Fp(v, p).value());
        }
    }

    static MatrixFp identity(std::size_t n, std::uint32_t p) {
        MatrixFp m(n, n, p);
        for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1 % p;
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::uint32_t modulus() const noexcept { return p_; }

    Fp at(std::size_t i, std::size_t j) const noexcept { return Fp(data_[i * cols_ + j], p_); }
    void set(std::size_t i, std::size_t j, Fp v) noexcept { data_[i * cols_ + j] = v.value(); }
    void add_to(std::size_t i, std::size_t j, Fp v) noexcept { set(i, j, at(i, j) + v); }

    std::span<std::uint32_t> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
    std::span<const std::uint32_t> row(std::size_t i) const noexcept { return {data_.data() + i * cols_, cols_}; }

    bool is_zero() const noexcept {
        return std::all_of(data_.begin(), data_.end(), [](auto v) { return v == 0; });
    }

    MatrixFp transpose() const {
        MatrixFp t(cols_, rows_, p_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.data_[j * rows_ + i] = data_[i * cols_ + j];
        return t;
    }

    friend MatrixFp operator*(const MatrixFp& a, const MatrixFp& b) {
        ensure(a.cols_ == b.rows_, "ShapeMismatch", "matrix product dimensions");
        MatrixFp c(a.rows_, b.cols_, a.p_);
        std::vector<std::uint64_t> acc(b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            std::fill(acc.begin(), acc.end(), 0);
            for (std::size_t k = 0; k < a.cols_; ++k) {
                std::uint64_t aik = a.data_[i * a.cols_ + k];
                if (!aik) continue;
                const std::uint32_t* brow = b.data_.data() + k * b.cols_;
                for (std::size_t j = 0; j < b.cols_; ++j) acc[j] = (acc[j] + aik * brow[j]) % a.p_;
            }
            for (std::size_t j = 0; j < b.cols_; ++j) c.data_[i * c.cols_ + j] = static_cast<std::uint32_t>(acc[j]);
        }
        return c;
    }

    friend MatrixFp operator-(const MatrixFp& a, const MatrixFp& b) {
        ensure(a.rows_ == b.rows_ && a.cols_ == b.cols_, "ShapeMismatch", "matrix difference");
        MatrixFp c = a;
        for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] = (a.data_[i] + a.p_ - b.data_[i]) % a.p_;
        return c;
    }

    friend bool operator==(const MatrixFp& a, const MatrixFp& b) = default;

    /// Columns of `b` appended to the right of `a`.
    static MatrixFp hstack(const MatrixFp& a, const MatrixFp& b) {
        ensure(a.rows_ == b.rows_, "ShapeMismatch", "hstack row counts");
        MatrixFp c(a.rows_, a.cols_ + b.cols_, a.p_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            std::copy(a.row(i).begin(), a.row(i).end(), c.row(i).begin());
            std::copy(b.row(i).begin(), b.row(i).end(), c.row(i).begin() + static_cast<std::ptrdiff_t>(a.cols_));
        }
        return c;
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    static MatrixFp from_columns(const std::vector<std::vector<Fp>>& cols, std::size_t rows, std::uint32_t p) {
        MatrixFp m(rows, cols.size(), p);
        for (std::size_t j = 0; j < cols.size(); ++j) {
            ensure(cols[j].size() == rows, "ShapeMismatch", "column length");
            for (std::size_t i = 0; i < rows; ++i) m.set(i, j, cols[j][i]);
        }
        return m;
    }

    std::vector<Fp> column(std::size_t j) const {
        std::vector<Fp> v;
        v.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v.push_back(at(i, j));
        return v;
    }

   private:
    std::size_t rows_ = 0, cols_ = 0;
    std::uint32_t p_ = 2;
    std::vector<std::uint32_t> data_;
};

inline std::vector<Fp> operator*(const MatrixFp& m, std::span<const Fp> v) {
    ensure(m.cols() == v.size(), "ShapeMismatch", "matrix-vector product");
    std::vector<Fp> out(m.rows(), Fp(0, m.modulus()));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::uint64_t acc = 0;
        auto r = m.row(i);
        for (std::size_t j = 0; j < m.cols(); ++j) acc = (acc + static_cast<std::uint64_t>(r[j]) * v[j].value()) % m.modulus();
        out[i] = Fp(static_cast<std::int64_t>(acc), m.modulus());
    }
    return out;
}

/// Reduced row echelon form. Pivots are the first nonzero entry in column
/// order, so the result (and everything derived from it) is deterministic.
struct RowEchelon {
    MatrixFp reduced;
    std::vector<std::size_t> pivot_cols;
    int sign = 1;  // parity of row swaps
    Fp pivot_product;
};

inline RowEchelon row_reduce(MatrixFp m) {
    const std::uint32_t p = m.modulus();
    RowEchelon out;
    out.pivot_product = Fp(1, p);
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t piv = r;
        while (piv < m.rows() && m.row(piv)[c] == 0) ++piv;
        if (piv == m.rows()) continue;
        if (piv != r) {
            std::swap_ranges(m.row(piv).begin(), m.row(piv).end(), m.row(r).begin());
            out.sign = -out.sign;
        }
        Fp lead = m.at(r, c);
        out.pivot_product *= lead;
        std::uint64_t inv = lead.inv().value();
        auto prow = m.row(r);
        for (auto& x : prow) x = static_cast<std::uint32_t>(x * inv % p);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r) continue;
            auto irow = m.row(i);
            std::uint64_t f = irow[c];
            if (!f) continue;
            std::uint64_t nf = p - f;
            for (std::size_t j = c; j < m.cols(); ++j) irow[j] = static_cast<std::uint32_t>((irow[j] + nf * prow[j]) % p);
        }
        out.pivot_cols.push_back(c);
        ++r;
    }
    out.reduced = std::move(m);
    return out;
}

inline std::size_t rank(const MatrixFp& m) { return row_reduce(m).pivot_cols.size(); }

/// Rank via elimination on columns; kept separate from row_reduce so the two
/// routes can cross-check each other.
inline std::size_t rank_by_columns(MatrixFp m) {
    std::size_t rank = 0;
    std::vector<bool> used(m.cols(), false);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::size_t piv = m.cols();
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!used[j] && m.at(i, j).value() != 0) {
                piv = j;
                break;
            }
        if (piv == m.cols()) continue;
        used[piv] = true;
        ++rank;
        Fp inv = m.at(i, piv).inv();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j == piv || m.at(i, j).is_zero()) continue;
            Fp f = m.at(i, j) * inv;
            for (std::size_t k = i; k < m.rows(); ++k) m.set(k, j, m.at(k, j) - f * m.at(k, piv));
        }
    }
    return rank;
}

/// Canonical basis of the right kernel, read off the reduced echelon form:
/// one vector per free column with a 1 in that slot.
inline std::vector<std::vector<Fp>> kernel_basis(const MatrixFp& m) {
    const std::uint32_t p = m.modulus();
    RowEchelon re = row_reduce(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : re.pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<Fp>> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<Fp> v(m.cols(), Fp(0, p));
        v[f] = Fp(1, p);
        for (std::size_t r = 0; r < re.pivot_cols.size(); ++r) v[re.pivot_cols[r]] = -re.reduced.at(r, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

inline Fp determinant(const MatrixFp& m) {
    ensure(m.rows() == m.cols(), "NotSquare", "determinant of a non-square matrix");
    RowEchelon re = row_reduce(m);
    if (re.pivot_cols.size() < m.rows()) return Fp(0, m.modulus());
    Fp d = re.pivot_product;
    return re.sign < 0 ? -d : d;
}

/// [rank(N^0), rank(N^1), ..., rank(N^p)] for a nilpotent operator N with N^p = 0.
inline std::vector<std::size_t> nilpotent_rank_sequence(const MatrixFp& n, std::uint32_t p) {
    ensure(n.rows() == n.cols(), "NotSquare", "nilpotent operator must be square");
    std::vector<std::size_t> seq{n.rows()};
    MatrixFp power = MatrixFp::identity(n.rows(), n.modulus());
    for (std::uint32_t k = 1; k <= p; ++k) {
        power = power * n;
        seq.push_back(rank(power));
    }
    if (seq.back() != 0)
        throw internal_error("NotNilpotent", "rank of N^" + std::to_string(p) + " is " + std::to_string(seq.back()));
    return seq;
}

/// Kronecker-delta helper used all over the oracle code.
inline std::vector<Fp> unit_vector(std::size_t n, std::size_t i, std::uint32_t p) {
    std::vector<Fp> v(n, Fp(0, p));
    v[i] = Fp(1, p);
    return v;
}

}  // namespace ascohom

#endif
