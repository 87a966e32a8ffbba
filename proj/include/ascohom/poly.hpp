#ifndef ASCOHOM_POLY_HPP
#define ASCOHOM_POLY_HPP

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <tuple>
#include <string>
#include <utility>
#include <vector>

#include "exactfield.hpp"

namespace ascohom {

// Dense univariate polynomial over F_p, little-endian, never with trailing zeros.
class Poly {
   public:
    explicit Poly(std::uint32_t p = 2) : p_(p) {}

    Poly(std::vector<std::int64_t> coeffs, std::uint32_t p) : p_(p) {
        c_.reserve(coeffs.size());
        for (auto v : coeffs) c_.push_back(Fp(v, p).value());
        trim();
    }

    static Poly constant(Fp c) {
        Poly r(c.modulus());
        if (!c.is_zero()) r.c_.push_back(c.value());
        return r;
    }
    static Poly constant(std::int64_t c, std::uint32_t p) { return constant(Fp(c, p)); }
    static Poly monomial(Fp c, std::size_t k) {
        Poly r(c.modulus());
        if (c.is_zero()) return r;
        r.c_.assign(k + 1, 0);
        r.c_[k] = c.value();
        return r;
    }
    static Poly x(std::uint32_t p) { return monomial(Fp(1, p), 1); }
    /// x - a
    static Poly linear(Fp a) { return Poly({-static_cast<std::int64_t>(a.value()), 1}, a.modulus()); }

    std::uint32_t modulus() const noexcept { return p_; }
    bool is_zero() const noexcept { return c_.empty(); }
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    std::size_t size() const noexcept { return c_.size(); }
    Fp coeff(std::size_t i) const noexcept { return Fp(i < c_.size() ? c_[i] : 0, p_); }
    Fp lead() const noexcept { return c_.empty() ? Fp(0, p_) : Fp(c_.back(), p_); }
    bool is_one() const noexcept { return c_.size() == 1 && c_[0] == 1; }
    bool is_constant() const noexcept { return c_.size() <= 1; }
    bool is_monic() const noexcept { return !c_.empty() && c_.back() == 1; }

    /// Coefficients as integers in [0, p).
    std::vector<std::int64_t> coefficients() const { return {c_.begin(), c_.end()}; }

    void set_coeff(std::size_t i, Fp v) {
        if (i >= c_.size()) c_.resize(i + 1, 0);
        c_[i] = v.value();
        trim();
    }

    friend bool operator==(const Poly& a, const Poly& b) = default;

    /// Canonical order: degree first, then little-endian coefficients.
    friend bool operator<(const Poly& a, const Poly& b) {
        if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
        return a.c_ < b.c_;
    }

    Poly operator-() const {
        Poly r = *this;
        for (auto& v : r.c_) v = v ? p_ - v : 0;
        return r;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        Poly r(a.p_);
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < r.c_.size(); ++i) {
            std::uint32_t s = (i < a.c_.size() ? a.c_[i] : 0) + (i < b.c_.size() ? b.c_[i] : 0);
            r.c_[i] = s >= a.p_ ? s - a.p_ : s;
        }
        r.trim();
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r(a.p_);
        if (a.is_zero() || b.is_zero()) return r;
        std::vector<std::uint64_t> acc(a.c_.size() + b.c_.size() - 1, 0);
        const std::uint64_t p = a.p_;
        // Delay reduction while the accumulator cannot overflow.
        const std::uint64_t lim = ~std::uint64_t{0} - (p - 1) * (p - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            std::uint64_t ai = a.c_[i];
            if (!ai) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                std::uint64_t& s = acc[i + j];
                s += ai * b.c_[j];
                if (s >= lim) s %= p;
            }
        }
        r.c_.resize(acc.size());
        for (std::size_t i = 0; i < acc.size(); ++i) r.c_[i] = static_cast<std::uint32_t>(acc[i] % p);
        r.trim();
        return r;
    }

    friend Poly operator*(Fp s, const Poly& a) {
        Poly r(a.p_);
        if (s.is_zero()) return r;
        r.c_.resize(a.c_.size());
        for (std::size_t i = 0; i < a.c_.size(); ++i) r.c_[i] = (Fp(a.c_[i], a.p_) * s).value();
        return r;
    }

    Poly& operator+=(const Poly& b) { return *this = *this + b; }
    Poly& operator-=(const Poly& b) { return *this = *this - b; }
    Poly& operator*=(const Poly& b) { return *this = *this * b; }

    /// Euclidean division: *this = q*g + r with deg r < deg g.
    std::pair<Poly, Poly> divmod(const Poly& g) const {
        if (g.is_zero()) throw precondition_error("DivisionByZero", "polynomial division by zero");
        Poly r = *this;
        Poly q(p_);
        if (r.degree() < g.degree()) return {q, r};
        const std::size_t dg = static_cast<std::size_t>(g.degree());
        q.c_.assign(r.c_.size() - dg, 0);
        const std::uint64_t inv = g.lead().inv().value();
        const std::uint64_t p = p_;
        for (std::size_t k = r.c_.size(); k-- > dg;) {
            std::uint64_t coef = r.c_[k] * inv % p;
            if (!coef) continue;
            q.c_[k - dg] = static_cast<std::uint32_t>(coef);
            std::uint64_t neg = p - coef;
            for (std::size_t j = 0; j <= dg; ++j)
                r.c_[k - dg + j] = static_cast<std::uint32_t>((r.c_[k - dg + j] + neg * g.c_[j]) % p);
        }
        q.trim();
        r.trim();
        return {q, r};
    }
    friend Poly operator/(const Poly& a, const Poly& b) { return a.divmod(b).first; }
    friend Poly operator%(const Poly& a, const Poly& b) { return a.divmod(b).second; }

    Poly monic() const {
        if (is_zero()) return *this;
        return lead().inv() * *this;
    }

    Poly derivative() const {
        Poly r(p_);
        if (c_.size() <= 1) return r;
        r.c_.resize(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i)
            r.c_[i - 1] = (Fp(c_[i], p_) * Fp(static_cast<std::int64_t>(i % p_), p_)).value();
        r.trim();
        return r;
    }

    Fp eval(Fp a) const {
        Fp acc(0, p_);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * a + Fp(c_[i], p_);
        return acc;
    }

    /// f(x + a)
    Poly taylor_shift(Fp a) const {
        Poly r = *this;
        const std::size_t n = r.c_.size();
        const std::uint64_t p = p_, av = a.value();
        if (av == 0) return r;
        for (std::size_t i = 0; i + 1 < n; ++i)
            for (std::size_t j = n - 1; j > i; --j)
                r.c_[j - 1] = static_cast<std::uint32_t>((r.c_[j - 1] + av * r.c_[j]) % p);
        return r;
    }

    /// x^deg f(1/x); the constant term becomes nonzero exactly when f(0) != 0.
    Poly reversed() const {
        Poly r = *this;
        std::reverse(r.c_.begin(), r.c_.end());
        r.trim();
        return r;
    }

    /// Largest k with x^k | f (f nonzero).
    std::size_t low_order() const {
        std::size_t k = 0;
        while (k < c_.size() && c_[k] == 0) ++k;
        return k;
    }

    /// f / x^k, assuming x^k | f.
    Poly shift_down(std::size_t k) const {
        Poly r(p_);
        if (k >= c_.size()) return r;
        r.c_.assign(c_.begin() + static_cast<std::ptrdiff_t>(k), c_.end());
        return r;
    }

    /// f mod x^k
    Poly truncated(std::size_t k) const {
        Poly r = *this;
        if (r.c_.size() > k) r.c_.resize(k);
        r.trim();
        return r;
    }

    /// g with g(x)^p = f, defined when f' = 0 (coefficients live at multiples of p).
    Poly pth_root() const {
        Poly r(p_);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            if (i % p_ != 0) throw internal_error("NotAPthPower", "polynomial has nonzero derivative");
            r.set_coeff(i / p_, Fp(c_[i], p_));  // a^p = a on F_p
        }
        return r;
    }

    std::string to_string(char var = 'x') const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (!c_[i]) continue;
            if (!first) os << " + ";
            first = false;
            if (c_[i] != 1 || i == 0) os << c_[i];
            if (i >= 1) os << var;
            if (i >= 2) os << '^' << i;
        }
        return os.str();
    }
    friend std::ostream& operator<<(std::ostream& os, const Poly& f) { return os << f.to_string(); }

   private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::uint32_t p_;
    std::vector<std::uint32_t> c_;
};

inline Poly pow(Poly base, std::uint64_t e) {
    Poly acc = Poly::constant(1, base.modulus());
    while (e) {
        if (e & 1) acc *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return acc;
}

inline Poly powmod(Poly base, std::uint64_t e, const Poly& m) {
    Poly acc = Poly::constant(1, base.modulus()) % m;
    base = base % m;
    while (e) {
        if (e & 1) acc = acc * base % m;
        e >>= 1;
        if (e) base = base * base % m;
    }
    return acc;
}

/// Monic gcd (zero only if both inputs are zero).
inline Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// Returns (g, s, t) with s*a + t*b = g = monic gcd(a, b).
inline std::tuple<Poly, Poly, Poly> extended_gcd(const Poly& a, const Poly& b) {
    const std::uint32_t p = a.modulus();
    Poly r0 = a, r1 = b;
    Poly s0 = Poly::constant(1, p), s1(p);
    Poly t0(p), t1 = Poly::constant(1, p);
    while (!r1.is_zero()) {
        auto [q, r] = r0.divmod(r1);
        r0 = std::exchange(r1, r);
        s0 = std::exchange(s1, s0 - q * s1);
        t0 = std::exchange(t1, t0 - q * t1);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    Fp li = r0.lead().inv();
    return {li * r0, li * s0, li * t0};
}

/// Inverse of a modulo m; requires gcd(a, m) = 1.
inline Poly invmod(const Poly& a, const Poly& m) {
    auto [g, s, t] = extended_gcd(a % m, m);
    if (!g.is_one()) throw internal_error("NotInvertible", "polynomial not invertible modulo " + m.to_string());
    return s % m;
}

/// Multiplicity of the irreducible q in f (f nonzero).
inline int multiplicity(Poly f, const Poly& q) {
    if (f.is_zero()) throw precondition_error("UndefinedForZero", "multiplicity in the zero polynomial");
    int k = 0;
    while (true) {
        auto [quo, rem] = f.divmod(q);
        if (!rem.is_zero()) return k;
        f = std::move(quo);
        ++k;
    }
}

}  // namespace ascohom

#endif
