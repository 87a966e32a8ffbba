#ifndef ASCOHOM_ORACLE_ASALGEBRA_HPP
#define ASCOHOM_ORACLE_ASALGEBRA_HPP

// k(x)[y] / (y^p - y - f): elements are sum_{i<p} c_i y^i.

#include <cstdint>
#include <vector>

#include "../rational.hpp"

namespace ascohom {

/// Binomial coefficient C(n, k) reduced mod p (Pascal's rule, exact).
inline Fp binomial_mod(std::uint32_t n, std::uint32_t k, std::uint32_t p) {
    if (k > n) return Fp(0, p);
    std::vector<Fp> row{Fp(1, p)};
    for (std::uint32_t r = 1; r <= n; ++r) {
        std::vector<Fp> next(r + 1, Fp(1, p));
        for (std::uint32_t j = 1; j < r; ++j) next[j] = row[j - 1] + row[j];
        row = std::move(next);
    }
    return row[k];
}

class ASElement {
   public:
    ASElement(const RationalFunction& f) : f_(f), c_(f.modulus(), RationalFunction(f.modulus())) {}  // NOLINT

    static ASElement y_power(const RationalFunction& f, std::uint32_t i) {
        ASElement y(f);
        y.c_[1] = RationalFunction::constant(1, f.modulus());
        ASElement acc(f);
        acc.c_[0] = RationalFunction::constant(1, f.modulus());
        for (std::uint32_t k = 0; k < i; ++k) acc = acc * y;
        return acc;
    }

    static ASElement constant(const RationalFunction& f, const RationalFunction& c) {
        ASElement e(f);
        e.c_[0] = c;
        return e;
    }

    std::uint32_t p() const noexcept { return f_.modulus(); }
    const RationalFunction& coeff(std::size_t i) const { return c_.at(i); }
    void set_coeff(std::size_t i, RationalFunction v) { c_.at(i) = std::move(v); }

    friend ASElement operator+(ASElement a, const ASElement& b) {
        for (std::size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
        return a;
    }
    friend ASElement operator-(ASElement a, const ASElement& b) {
        for (std::size_t i = 0; i < a.c_.size(); ++i) a.c_[i] -= b.c_[i];
        return a;
    }

    friend ASElement operator*(const ASElement& a, const ASElement& b) {
        const std::size_t p = a.c_.size();
        std::vector<RationalFunction> prod(2 * p - 1, RationalFunction(a.p()));
        for (std::size_t i = 0; i < p; ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < p; ++j)
                if (!b.c_[j].is_zero()) prod[i + j] += a.c_[i] * b.c_[j];
        }
        // y^k = y^(k-p) (y + f) for k >= p, applied from the top down
        for (std::size_t k = prod.size(); k-- > p;) {
            if (prod[k].is_zero()) continue;
            prod[k - p + 1] += prod[k];
            prod[k - p] += prod[k] * a.f_;
            prod[k] = RationalFunction(a.p());
        }
        ASElement out(a.f_);
        for (std::size_t i = 0; i < p; ++i) out.c_[i] = prod[i];
        return out;
    }

    /// sigma^j : y -> y + j.
    ASElement sigma(std::int64_t j) const {
        const std::uint32_t p = this->p();
        ASElement out(f_);
        Fp s(j, p);
        for (std::uint32_t i = 0; i < p; ++i) {
            if (c_[i].is_zero()) continue;
            // (y + s)^i = sum_l C(i, l) s^(i-l) y^l
            for (std::uint32_t l = 0; l <= i; ++l) {
                Fp coef = binomial_mod(i, l, p) * s.pow(i - l);
                if (!coef.is_zero()) out.c_[l] += coef * c_[i];
            }
        }
        return out;
    }

    /// Trace sum_{j in F_p} sigma^j(e); lands in k(x).
    RationalFunction trace() const {
        ASElement acc(f_);
        for (std::uint32_t j = 0; j < p(); ++j) acc = acc + sigma(j);
        for (std::size_t i = 1; i < acc.c_.size(); ++i)
            ensure(acc.c_[i].is_zero(), "TraceNotInBase", "trace has a nonzero y-coefficient");
        return acc.c_[0];
    }

    friend bool operator==(const ASElement& a, const ASElement& b) { return a.c_ == b.c_ && a.f_ == b.f_; }

   private:
    RationalFunction f_;
    std::vector<RationalFunction> c_;
};

/// tr(y^i) from the closed-form table, valid for 0 <= i <= 2(p-1).
inline Fp trace_table(std::uint32_t i, std::uint32_t p) {
    if (i > 2 * (p - 1)) throw internal_error("TraceDegreeOverflow", "trace table only covers i <= 2(p-1)");
    if (i == 0 || i % (p - 1) != 0) return Fp(0, p);
    return Fp(-1, p);
}

}  // namespace ascohom

#endif
