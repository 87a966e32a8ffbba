#ifndef ASCOHOM_ELLIPTIC_HPP
#define ASCOHOM_ELLIPTIC_HPP

// Base curves for towers: the projective line, or an elliptic curve
// w^2 = (x - r1)(x - r2)(x - r3) with elements a + b w, a, b in F_p(x).
// Only what the tower valuations need: arithmetic, d/dx, and orders at the
// places lying over x = r_i and x = infinity.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "rational.hpp"

namespace ascohom {

class BaseCurve {
   public:
    enum class Kind { ProjectiveLine, Elliptic };

    static BaseCurve projective_line(std::uint32_t p) {
        PrimeField check(p);
        (void)check;
        BaseCurve c;
        c.kind_ = Kind::ProjectiveLine;
        c.p_ = p;
        c.cubic_ = RationalFunction(p);
        return c;
    }

    static BaseCurve elliptic(std::array<std::int64_t, 3> roots, std::uint32_t p) {
        PrimeField check(p);
        (void)check;
        if (p == 2) throw precondition_error("BadCharacteristic", "elliptic base needs p > 2");
        BaseCurve c;
        c.kind_ = Kind::Elliptic;
        c.p_ = p;
        Poly cubic = Poly::constant(1, p);
        for (std::size_t i = 0; i < 3; ++i) {
            c.roots_[i] = Fp(roots[i], p);
            for (std::size_t j = 0; j < i; ++j)
                if (c.roots_[i] == c.roots_[j])
                    throw precondition_error("RootsNotDistinct", "roots of the cubic must be pairwise distinct mod p");
            cubic = cubic * Poly::linear(c.roots_[i]);
        }
        c.cubic_ = RationalFunction(cubic);
        return c;
    }

    Kind kind() const noexcept { return kind_; }
    bool is_elliptic() const noexcept { return kind_ == Kind::Elliptic; }
    std::uint32_t p() const noexcept { return p_; }
    int genus() const noexcept { return is_elliptic() ? 1 : 0; }
    const RationalFunction& cubic() const noexcept { return cubic_; }
    const std::array<Fp, 3>& roots() const noexcept { return roots_; }

    /// ord(dx) at the place over q.
    int ord_dx(const Place& q) const {
        if (!is_elliptic()) return q.is_infinity() ? -2 : 0;
        return q.is_infinity() ? -3 : 1;
    }

    /// Number of geometric points of the base over q.
    int points_over(const Place& q) const { return is_elliptic() ? 1 : q.degree(); }

    /// Places of the elliptic curve we can evaluate at: the 2-torsion points and O.
    bool supports(const Place& q) const {
        if (!is_elliptic()) return true;
        if (q.is_infinity()) return true;
        if (q.degree() != 1) return false;
        for (const auto& r : roots_)
            if (q.point() == r) return true;
        return false;
    }

    std::string describe() const {
        if (!is_elliptic()) return "P1";
        return "w^2 = " + cubic_.to_string();
    }

   private:
    BaseCurve() : roots_{Fp(0, 2), Fp(0, 2), Fp(0, 2)} {}

    Kind kind_ = Kind::ProjectiveLine;
    std::uint32_t p_ = 2;
    RationalFunction cubic_;
    std::array<Fp, 3> roots_;
};

/// a + b w in the function field of the base (b = 0 on the projective line).
class BaseElement {
   public:
    explicit BaseElement(std::uint32_t p = 2) : a_(p), b_(p) {}
    BaseElement(RationalFunction a) : a_(std::move(a)), b_(a_.modulus()) {}  // NOLINT
    BaseElement(RationalFunction a, RationalFunction b) : a_(std::move(a)), b_(std::move(b)) {}

    const RationalFunction& a() const noexcept { return a_; }
    const RationalFunction& b() const noexcept { return b_; }
    std::uint32_t modulus() const noexcept { return a_.modulus(); }
    bool is_zero() const noexcept { return a_.is_zero() && b_.is_zero(); }

    friend bool operator==(const BaseElement&, const BaseElement&) = default;

    friend BaseElement operator+(const BaseElement& u, const BaseElement& v) { return {u.a_ + v.a_, u.b_ + v.b_}; }
    friend BaseElement operator-(const BaseElement& u, const BaseElement& v) { return {u.a_ - v.a_, u.b_ - v.b_}; }
    BaseElement operator-() const { return {-a_, -b_}; }
    friend BaseElement operator*(Fp s, const BaseElement& u) { return {s * u.a_, s * u.b_}; }

    /// (a + bw)(a' + b'w) = aa' + bb'c + (ab' + a'b) w.
    BaseElement mul(const BaseElement& v, const BaseCurve& curve) const {
        if (!curve.is_elliptic()) return BaseElement(a_ * v.a_);
        return {a_ * v.a_ + b_ * v.b_ * curve.cubic(), a_ * v.b_ + v.a_ * b_};
    }

    /// d/dx, using dw/dx = c'/(2w) = (c'/(2c)) w.
    BaseElement derivative(const BaseCurve& curve) const {
        if (!curve.is_elliptic() || b_.is_zero()) return {a_.derivative(), b_.derivative()};
        const std::uint32_t p = modulus();
        RationalFunction ratio = curve.cubic().derivative() / (Fp(2, p) * curve.cubic());
        return {a_.derivative(), b_.derivative() + b_ * ratio};
    }

    /// Order at the base point over q. On the elliptic curve the two summands
    /// have orders of different parity, so the minimum is attained once.
    int ord(const Place& q, const BaseCurve& curve) const {
        if (is_zero()) return kOrdInfinity;
        if (!curve.is_elliptic()) return ord_at(a_, q);
        if (!curve.supports(q)) throw precondition_error("UnsupportedPlace", "elliptic valuations are implemented only over the roots and infinity, not " + q.to_string());
        int oa = a_.is_zero() ? kOrdInfinity : 2 * ord_at(a_, q);
        int ob = kOrdInfinity;
        if (!b_.is_zero()) ob = 2 * ord_at(b_, q) + (q.is_infinity() ? -3 : 1);
        return std::min(oa, ob);
    }

    /// Order of the differential (d/dx of this) dx.
    int ord_d(const Place& q, const BaseCurve& curve) const {
        BaseElement dv = derivative(curve);
        if (dv.is_zero()) return kOrdInfinity;
        return dv.ord(q, curve) + curve.ord_dx(q);
    }

    /// Places of P^1 (the x-line) where a or b has a pole.
    std::vector<Place> x_poles() const {
        std::vector<Place> out;
        for (const auto* g : {&a_, &b_}) {
            if (g->is_zero()) continue;
            for (const auto& [q, n] : pole_divisor(*g)) {
                bool seen = false;
                for (const auto& s : out) seen = seen || s == q;
                if (!seen) out.push_back(q);
            }
        }
        return out;
    }

    std::string to_string() const {
        if (b_.is_zero()) return a_.to_string();
        return a_.to_string() + " + (" + b_.to_string() + ")*w";
    }

   private:
    RationalFunction a_, b_;
};

}  // namespace ascohom

#endif
