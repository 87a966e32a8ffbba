#ifndef ASCOHOM_RATIONAL_HPP
#define ASCOHOM_RATIONAL_HPP

#include <algorithm>
#include <climits>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "factor.hpp"
#include "poly.hpp"

namespace ascohom {

/// Element of F_p(x) kept as num/den with den monic and gcd(num, den) = 1,
/// so equality is component equality.
class RationalFunction {
   public:
    explicit RationalFunction(std::uint32_t p = 2) : num_(p), den_(Poly::constant(1, p)) {}
    RationalFunction(const Poly& num) : num_(num), den_(Poly::constant(1, num.modulus())) {}  // NOLINT
    RationalFunction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    static RationalFunction constant(Fp c) { return RationalFunction(Poly::constant(c)); }
    static RationalFunction constant(std::int64_t c, std::uint32_t p) { return constant(Fp(c, p)); }
    static RationalFunction x(std::uint32_t p) { return RationalFunction(Poly::x(p)); }
    /// c * x^k for any integer k.
    static RationalFunction monomial(Fp c, int k) {
        const std::uint32_t p = c.modulus();
        if (k >= 0) return RationalFunction(Poly::monomial(c, static_cast<std::size_t>(k)));
        return RationalFunction(Poly::constant(c), Poly::monomial(Fp(1, p), static_cast<std::size_t>(-k)));
    }

    std::uint32_t modulus() const noexcept { return num_.modulus(); }
    const Poly& num() const noexcept { return num_; }
    const Poly& den() const noexcept { return den_; }
    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_constant() const noexcept { return num_.is_constant() && den_.is_constant(); }
    bool is_polynomial() const noexcept { return den_.is_one(); }
    Fp constant_value() const noexcept { return num_.coeff(0); }

    friend bool operator==(const RationalFunction&, const RationalFunction&) = default;

    RationalFunction operator-() const { return raw(-num_, den_); }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
        Poly g = gcd(a.den_, b.den_);
        Poly ad = a.den_ / g;
        Poly bd = b.den_ / g;
        return RationalFunction(a.num_ * bd + b.num_ * ad, ad * b.den_);
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        if (a.is_zero() || b.is_zero()) return RationalFunction(a.modulus());
        // cross-cancel first so the products stay reduced
        Poly g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
        return RationalFunction((a.num_ / g1) * (b.num_ / g2), (a.den_ / g2) * (b.den_ / g1));
    }
    friend RationalFunction operator*(Fp s, const RationalFunction& a) {
        if (s.is_zero()) return RationalFunction(a.modulus());
        return raw(s * a.num_, a.den_);
    }

    RationalFunction inverse() const {
        if (is_zero()) throw precondition_error("DivisionByZero", "inverse of the zero function");
        return RationalFunction(den_, num_);
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) { return a * b.inverse(); }

    RationalFunction& operator+=(const RationalFunction& b) { return *this = *this + b; }
    RationalFunction& operator-=(const RationalFunction& b) { return *this = *this - b; }
    RationalFunction& operator*=(const RationalFunction& b) { return *this = *this * b; }

    RationalFunction pow(std::int64_t e) const {
        if (e < 0) return inverse().pow(-e);
        return raw(ascohom::pow(num_, static_cast<std::uint64_t>(e)), ascohom::pow(den_, static_cast<std::uint64_t>(e)));
    }

    RationalFunction derivative() const {
        return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
    }

    std::string to_string() const {
        if (den_.is_one()) return num_.to_string();
        return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
    }
    friend std::ostream& operator<<(std::ostream& os, const RationalFunction& f) { return os << f.to_string(); }

   private:
    // Caller guarantees the pair is already reduced.
    static RationalFunction raw(Poly n, Poly d) {
        RationalFunction r(n.modulus());
        r.num_ = std::move(n);
        r.den_ = std::move(d);
        if (r.num_.is_zero()) r.den_ = Poly::constant(1, r.num_.modulus());
        return r;
    }

    void normalize() {
        if (den_.is_zero()) throw precondition_error("DivisionByZero", "zero denominator");
        if (num_.is_zero()) {
            den_ = Poly::constant(1, num_.modulus());
            return;
        }
        Poly g = gcd(num_, den_);
        if (!g.is_one()) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
        if (!den_.is_monic()) {
            Fp li = den_.lead().inv();
            num_ = li * num_;
            den_ = li * den_;
        }
    }

    Poly num_, den_;
};

/// Closed point of P^1: a monic irreducible polynomial, or infinity.
class Place {
   public:
    static Place infinity(std::uint32_t p) { return Place(std::nullopt, p); }

    static Place finite(const Poly& q) {
        if (!q.is_monic() || !is_irreducible(q))
            throw precondition_error("NotIrreducible", q.to_string() + " is not monic irreducible");
        return Place(q, q.modulus());
    }

    static Place rational(Fp a) { return Place(Poly::linear(a), a.modulus()); }

    bool is_infinity() const noexcept { return !q_.has_value(); }
    const Poly& poly() const {
        if (!q_) throw internal_error("InfinitePlace", "place at infinity has no polynomial");
        return *q_;
    }
    int degree() const noexcept { return q_ ? q_->degree() : 1; }
    std::uint32_t modulus() const noexcept { return p_; }

    /// The F_p-point a of a degree-1 finite place x - a.
    Fp point() const {
        if (is_infinity() || degree() != 1)
            throw precondition_error("NonRationalPlace", "place " + to_string() + " is not a finite rational point");
        return -q_->coeff(0);
    }

    friend bool operator==(const Place& a, const Place& b) { return a.q_ == b.q_ && a.p_ == b.p_; }

    /// Finite places in canonical polynomial order, infinity last.
    friend bool operator<(const Place& a, const Place& b) {
        if (a.is_infinity() || b.is_infinity()) return !a.is_infinity() && b.is_infinity();
        return *a.q_ < *b.q_;
    }

    std::string to_string() const { return q_ ? q_->to_string() : "inf"; }
    friend std::ostream& operator<<(std::ostream& os, const Place& q) { return os << q.to_string(); }

   private:
    Place(std::optional<Poly> q, std::uint32_t p) : q_(std::move(q)), p_(p) {}
    std::optional<Poly> q_;
    std::uint32_t p_;
};

inline int ord_at(const Poly& f, const Place& q) {
    if (f.is_zero()) throw precondition_error("UndefinedForZero", "valuation of zero");
    if (q.is_infinity()) return -f.degree();
    return multiplicity(f, q.poly());
}

inline int ord_at(const RationalFunction& f, const Place& q) {
    if (f.is_zero()) throw precondition_error("UndefinedForZero", "valuation of zero");
    if (q.is_infinity()) return f.den().degree() - f.num().degree();
    return multiplicity(f.num(), q.poly()) - multiplicity(f.den(), q.poly());
}

/// ord with the zero function sent to a large sentinel (for min-rule code).
inline constexpr int kOrdInfinity = INT_MAX / 4;
inline int ord_or_inf(const RationalFunction& f, const Place& q) { return f.is_zero() ? kOrdInfinity : ord_at(f, q); }

/// Represents coefficient * dx.
struct DifferentialForm {
    RationalFunction coefficient;
    friend bool operator==(const DifferentialForm&, const DifferentialForm&) = default;
};

/// ord_Q(g dx); dx has a double pole at infinity.
inline int ord_at(const DifferentialForm& w, const Place& q) {
    return ord_at(w.coefficient, q) + (q.is_infinity() ? -2 : 0);
}

inline DifferentialForm d(const RationalFunction& f) { return {f.derivative()}; }

/// Truncated Laurent expansion at a degree-1 place in the parameter t = x - a
/// (or t = 1/x at infinity): f = sum_{j >= start} coeffs[j - start] t^j.
struct Laurent {
    int start = kOrdInfinity;
    std::vector<Fp> coeffs;
    std::uint32_t p = 2;

    /// Coefficient of t^j; zero below the valuation, error past the truncation.
    Fp operator[](int j) const {
        if (j < start) return Fp(0, p);
        auto k = static_cast<std::size_t>(j - start);
        ensure(k < coeffs.size(), "LaurentTruncated", "coefficient beyond truncation requested");
        return coeffs[k];
    }
};

namespace detail {

// Power series a/b mod t^n with b(0) != 0.
inline std::vector<Fp> series_quotient(const Poly& a, const Poly& b, std::size_t n) {
    const std::uint32_t p = a.modulus();
    std::vector<Fp> out(n, Fp(0, p));
    Fp b0inv = b.coeff(0).inv();
    const std::size_t db = b.size();
    for (std::size_t k = 0; k < n; ++k) {
        Fp acc = a.coeff(k);
        for (std::size_t j = 1; j < db && j <= k; ++j) acc -= b.coeff(j) * out[k - j];
        out[k] = acc * b0inv;
    }
    return out;
}

}  // namespace detail

/// Coefficients of t^start .. t^last (start = ord).
inline Laurent laurent(const RationalFunction& f, const Place& q, int last) {
    const std::uint32_t p = f.modulus();
    Laurent out;
    out.p = p;
    if (f.is_zero()) return out;
    Poly n(p), dn(p);
    int start = 0;
    if (q.is_infinity()) {
        n = f.num().reversed();
        dn = f.den().reversed();
        start = f.den().degree() - f.num().degree();
    } else {
        Fp a = q.point();
        n = f.num().taylor_shift(a);
        dn = f.den().taylor_shift(a);
        std::size_t vn = n.low_order(), vd = dn.low_order();
        n = n.shift_down(vn);
        dn = dn.shift_down(vd);
        start = static_cast<int>(vn) - static_cast<int>(vd);
    }
    out.start = start;
    if (last >= start) out.coeffs = detail::series_quotient(n, dn, static_cast<std::size_t>(last - start + 1));
    return out;
}

/// Residue at a degree-1 place.
inline Fp residue_at(const DifferentialForm& w, const Place& q) {
    const std::uint32_t p = w.coefficient.modulus();
    if (q.degree() != 1)
        throw precondition_error("NonRationalPlace", "residue at a place of degree " + std::to_string(q.degree()));
    if (w.coefficient.is_zero()) return Fp(0, p);
    if (q.is_infinity()) {
        // x = 1/u, dx = -du/u^2
        Laurent l = laurent(w.coefficient, q, 1);
        return -l[1];
    }
    Laurent l = laurent(w.coefficient, q, -1);
    return l[-1];
}

/// Places where f has a pole, with the pole order; finite places in canonical
/// order, then infinity.
inline std::vector<std::pair<Place, int>> pole_divisor(const RationalFunction& f) {
    if (f.is_zero()) throw precondition_error("UndefinedForZero", "pole divisor of zero");
    std::vector<std::pair<Place, int>> out;
    for (const auto& fac : factor(f.den())) out.emplace_back(Place::finite(fac.poly), fac.multiplicity);
    int inf = f.num().degree() - f.den().degree();
    if (inf > 0) out.emplace_back(Place::infinity(f.modulus()), inf);
    return out;
}

/// Full divisor of a nonzero f: every place with nonzero order.
inline std::vector<std::pair<Place, int>> divisor(const RationalFunction& f) {
    if (f.is_zero()) throw precondition_error("UndefinedForZero", "divisor of zero");
    std::vector<std::pair<Place, int>> out;
    for (const auto& fac : factor(f.num())) out.emplace_back(Place::finite(fac.poly), fac.multiplicity);
    for (const auto& fac : factor(f.den())) out.emplace_back(Place::finite(fac.poly), -fac.multiplicity);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    int inf = f.den().degree() - f.num().degree();
    if (inf != 0) out.emplace_back(Place::infinity(f.modulus()), inf);
    return out;
}

/// { g : ord_Q(g) >= bound(Q) at listed places, ord >= 0 elsewhere } on P^1.
/// Every element is (zeros * h) / poles with deg h <= max_degree.
struct RiemannRochSpace {
    Poly zeros;  // forced vanishing
    Poly poles;  // allowed poles
    int max_degree = -1;

    std::size_t dimension() const noexcept { return max_degree < 0 ? 0 : static_cast<std::size_t>(max_degree) + 1; }

    RationalFunction element(std::size_t k) const {
        return RationalFunction(zeros * Poly::monomial(Fp(1, zeros.modulus()), k), poles);
    }

    std::vector<RationalFunction> basis() const {
        std::vector<RationalFunction> b;
        for (std::size_t k = 0; k < dimension(); ++k) b.push_back(element(k));
        return b;
    }

    /// Coordinates of g in the monomial basis, or nullopt when g is not in the space.
    std::optional<std::vector<Fp>> coordinates(const RationalFunction& g) const {
        const std::uint32_t p = zeros.modulus();
        std::vector<Fp> out(dimension(), Fp(0, p));
        if (g.is_zero()) return out;
        RationalFunction h = g * RationalFunction(poles, zeros);
        if (!h.is_polynomial() || h.num().degree() > max_degree) return std::nullopt;
        for (std::size_t k = 0; k < out.size(); ++k) out[k] = h.num().coeff(k);
        return out;
    }
};

inline RiemannRochSpace riemann_roch_space(const std::vector<std::pair<Place, int>>& constraints, std::uint32_t p) {
    std::map<Place, int> bound;
    for (const auto& [q, b] : constraints) {
        auto [it, fresh] = bound.emplace(q, b);
        if (!fresh) it->second = std::max(it->second, b);
    }
    RiemannRochSpace s{Poly::constant(1, p), Poly::constant(1, p), 0};
    int n = 0;
    int at_inf = 0;
    for (const auto& [q, b] : bound) {
        if (q.is_infinity()) {
            at_inf = b;
            continue;
        }
        if (b < 0) s.poles *= pow(q.poly(), static_cast<std::uint64_t>(-b));
        if (b > 0) s.zeros *= pow(q.poly(), static_cast<std::uint64_t>(b));
        n -= b * q.degree();
    }
    s.max_degree = std::max(-1, n - at_inf);
    return s;
}

}  // namespace ascohom

#endif
