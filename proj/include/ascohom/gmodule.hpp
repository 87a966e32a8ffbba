#ifndef ASCOHOM_GMODULE_HPP
#define ASCOHOM_GMODULE_HPP

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "exactfield.hpp"

namespace ascohom {

/// Multiset of indecomposable k[Z/p]-modules: counts[i-1] copies of J_i.
class JordanType {
   public:
    explicit JordanType(std::uint32_t p = 2) : counts_(p, 0) {}

    std::uint32_t p() const noexcept { return static_cast<std::uint32_t>(counts_.size()); }
    std::size_t count(std::size_t i) const { return i >= 1 && i <= counts_.size() ? counts_[i - 1] : 0; }
    void add(std::size_t i, std::size_t n = 1) {
        ensure(i >= 1 && i <= counts_.size(), "BadBlockSize", "J_" + std::to_string(i) + " does not exist for this p");
        counts_[i - 1] += n;
    }
    const std::vector<std::size_t>& counts() const noexcept { return counts_; }

    std::size_t dim() const noexcept {
        std::size_t d = 0;
        for (std::size_t i = 0; i < counts_.size(); ++i) d += (i + 1) * counts_[i];
        return d;
    }
    bool empty() const noexcept { return dim() == 0; }

    friend bool operator==(const JordanType&, const JordanType&) = default;

    friend JordanType operator+(JordanType a, const JordanType& b) {
        ensure(a.p() == b.p(), "ShapeMismatch", "direct sum of Jordan types for different p");
        for (std::size_t i = 0; i < a.counts_.size(); ++i) a.counts_[i] += b.counts_[i];
        return a;
    }

    /// "{J4:1, J3:1, J1:1}", largest blocks first; "{}" when empty.
    std::string to_string() const {
        std::ostringstream os;
        os << '{';
        bool first = true;
        for (std::size_t i = counts_.size(); i-- > 0;) {
            if (!counts_[i]) continue;
            if (!first) os << ", ";
            first = false;
            os << 'J' << i + 1 << ':' << counts_[i];
        }
        os << '}';
        return os.str();
    }
    friend std::ostream& operator<<(std::ostream& os, const JordanType& j) { return os << j.to_string(); }

   private:
    std::vector<std::size_t> counts_;
};

/// Jordan type from the ranks [r_0, ..., r_p] of the powers of a nilpotent
/// operator: r_{k-1} - r_k blocks have size >= k.
inline JordanType jordan_from_ranks(const std::vector<std::size_t>& r, std::uint32_t p) {
    ensure(r.size() == p + 1 && r.back() == 0, "NotNilpotent", "rank sequence does not reach zero by step p");
    JordanType j(p);
    for (std::size_t k = 1; k <= p; ++k) {
        ensure(r[k] <= r[k - 1], "BadRankSequence", "ranks of powers must not increase");
        std::size_t ge_k = r[k - 1] - r[k];
        std::size_t ge_next = k < p ? r[k] - r[k + 1] : 0;
        ensure(ge_k >= ge_next, "BadRankSequence", "rank differences must not increase");
        if (ge_k > ge_next) j.add(k, ge_k - ge_next);
    }
    return j;
}

/// Jordan type of the nilpotent operator n (typically sigma - 1) with n^p = 0.
inline JordanType jordan_type(const MatrixFp& n, std::uint32_t p) { return jordan_from_ranks(nilpotent_rank_sequence(n, p), p); }

/// Finite group given by its multiplication table, elements indexed 0..n-1.
class GroupTable {
   public:
    GroupTable(std::uint32_t p, std::size_t n, std::vector<std::uint32_t> mult, std::vector<std::string> labels,
               std::string name)
        : p_(p), n_(n), mult_(std::move(mult)), labels_(std::move(labels)), name_(std::move(name)) {
        if (!is_prime(p)) throw precondition_error("InvalidModulus", std::to_string(p) + " is not prime");
        std::size_t q = 1;
        while (q < n_) q *= p_;
        if (q != n_)
            throw precondition_error("NotAPGroup", "group order " + std::to_string(n_) + " is not a power of " + std::to_string(p_));
        ensure(mult_.size() == n_ * n_ && labels_.size() == n_, "BadTable", "table dimensions");
        validate();
    }

    /// Built-in groups: "cyclic:<n>", "elem-abelian:<p>:<r>", "heisenberg:<p>".
    /// If ambient_p is nonzero the group order must be a power of it.
    static GroupTable from_selector(const std::string& selector, std::uint32_t ambient_p = 0);

    static GroupTable cyclic(std::size_t n, std::uint32_t p) {
        std::vector<std::uint32_t> m(n * n);
        std::vector<std::string> labels;
        for (std::size_t a = 0; a < n; ++a) {
            labels.push_back(std::to_string(a));
            for (std::size_t b = 0; b < n; ++b) m[a * n + b] = static_cast<std::uint32_t>((a + b) % n);
        }
        return GroupTable(p, n, std::move(m), std::move(labels), "cyclic:" + std::to_string(n));
    }

    static GroupTable elementary_abelian(std::uint32_t p, std::size_t rank) {
        std::size_t n = 1;
        for (std::size_t i = 0; i < rank; ++i) n *= p;
        std::vector<std::uint32_t> m(n * n);
        std::vector<std::string> labels;
        for (std::size_t a = 0; a < n; ++a) {
            labels.push_back(coords_label(a, p, rank));
            for (std::size_t b = 0; b < n; ++b) {
                std::size_t c = 0, scale = 1, x = a, y = b;
                for (std::size_t i = 0; i < rank; ++i) {
                    c += ((x % p + y % p) % p) * scale;
                    x /= p;
                    y /= p;
                    scale *= p;
                }
                m[a * n + b] = static_cast<std::uint32_t>(c);
            }
        }
        return GroupTable(p, n, std::move(m), std::move(labels), "elem-abelian:" + std::to_string(p) + ":" + std::to_string(rank));
    }

    /// Upper unitriangular 3x3 matrices over F_p as triples (x, y, z) with
    /// (x,y,z)(x',y',z') = (x+x', y+y', z+z'+x*y'). Index = x + p*y + p^2*z.
    static GroupTable heisenberg(std::uint32_t p) {
        const std::size_t n = std::size_t{p} * p * p;
        std::vector<std::uint32_t> m(n * n);
        std::vector<std::string> labels;
        for (std::size_t a = 0; a < n; ++a) {
            labels.push_back(coords_label(a, p, 3));
            const std::size_t x = a % p, y = a / p % p, z = a / p / p;
            for (std::size_t b = 0; b < n; ++b) {
                const std::size_t x2 = b % p, y2 = b / p % p, z2 = b / p / p;
                m[a * n + b] = static_cast<std::uint32_t>(heisenberg_index(p, x + x2, y + y2, z + z2 + x * y2));
            }
        }
        return GroupTable(p, n, std::move(m), std::move(labels), "heisenberg:" + std::to_string(p));
    }

    static std::size_t heisenberg_index(std::uint32_t p, std::size_t x, std::size_t y, std::size_t z) {
        return x % p + p * (y % p) + std::size_t{p} * p * (z % p);
    }

    std::uint32_t p() const noexcept { return p_; }
    std::size_t order() const noexcept { return n_; }
    std::size_t identity() const noexcept { return identity_; }
    const std::string& name() const noexcept { return name_; }
    const std::string& label(std::size_t g) const { return labels_.at(g); }
    std::size_t mul(std::size_t a, std::size_t b) const noexcept { return mult_[a * n_ + b]; }
    std::size_t inv(std::size_t a) const noexcept { return inverse_[a]; }

    /// Sorted element list of the subgroup generated by gens.
    std::vector<std::size_t> subgroup_generated(const std::vector<std::size_t>& gens) const {
        std::vector<bool> in(n_, false);
        std::vector<std::size_t> elems{identity_};
        in[identity_] = true;
        for (std::size_t i = 0; i < elems.size(); ++i)
            for (auto g : gens) {
                std::size_t h = mul(elems[i], g);
                if (!in[h]) {
                    in[h] = true;
                    elems.push_back(h);
                }
            }
        std::sort(elems.begin(), elems.end());
        return elems;
    }

    bool is_subgroup(const std::vector<std::size_t>& h) const {
        std::vector<bool> in(n_, false);
        for (auto x : h) in.at(x) = true;
        if (!in[identity_]) return false;
        for (auto a : h)
            for (auto b : h)
                if (!in[mul(a, inv(b))]) return false;
        return true;
    }

    bool is_normal(const std::vector<std::size_t>& h) const {
        std::vector<bool> in(n_, false);
        for (auto x : h) in.at(x) = true;
        for (std::size_t g = 0; g < n_; ++g)
            for (auto x : h)
                if (!in[mul(mul(g, x), inv(g))]) return false;
        return true;
    }

    bool is_abelian(const std::vector<std::size_t>& h) const {
        for (auto a : h)
            for (auto b : h)
                if (mul(a, b) != mul(b, a)) return false;
        return true;
    }

    std::size_t element_order(std::size_t g) const {
        std::size_t k = 1, x = g;
        while (x != identity_) {
            x = mul(x, g);
            ++k;
        }
        return k;
    }

    /// Human-readable isomorphism type for the small p-groups that occur here.
    std::string describe(const std::vector<std::size_t>& h) const {
        const std::size_t n = h.size();
        std::size_t k = 0, q = 1;
        while (q < n) {
            q *= p_;
            ++k;
        }
        const std::string ps = std::to_string(p_);
        if (n == 1) return "1";
        std::size_t exponent = 1;
        for (auto g : h) exponent = std::max(exponent, element_order(g));
        const bool ab = is_abelian(h);
        if (k == 1) return "Z/" + ps;
        if (ab && exponent == n) return "Z/" + ps + "^" + std::to_string(k);
        if (ab && exponent == p_) {
            std::string s = "Z/" + ps;
            for (std::size_t i = 1; i < k; ++i) s += " x Z/" + ps;
            return s;
        }
        if (!ab && k == 3 && exponent == p_) return "E(" + ps + "^3)";
        return "group of order " + ps + "^" + std::to_string(k);
    }

   private:
    static std::string coords_label(std::size_t a, std::uint32_t p, std::size_t rank) {
        std::string s = "(";
        for (std::size_t i = 0; i < rank; ++i) {
            if (i) s += ',';
            s += std::to_string(a % p);
            a /= p;
        }
        return s + ")";
    }

    void validate() {
        // identity
        identity_ = n_;
        for (std::size_t e = 0; e < n_ && identity_ == n_; ++e) {
            bool ok = true;
            for (std::size_t a = 0; a < n_ && ok; ++a) ok = mul(e, a) == a && mul(a, e) == a;
            if (ok) identity_ = e;
        }
        if (identity_ == n_) throw precondition_error("NotAGroup", name_ + ": no identity element");
        inverse_.assign(n_, n_);
        for (std::size_t a = 0; a < n_; ++a)
            for (std::size_t b = 0; b < n_; ++b)
                if (mul(a, b) == identity_ && mul(b, a) == identity_) inverse_[a] = b;
        for (auto v : inverse_)
            if (v == n_) throw precondition_error("NotAGroup", name_ + ": element without inverse");
        if (n_ <= 729) {
            for (std::size_t a = 0; a < n_; ++a)
                for (std::size_t b = 0; b < n_; ++b) {
                    const std::size_t ab = mul(a, b);
                    for (std::size_t c = 0; c < n_; ++c)
                        if (mul(ab, c) != mul(a, mul(b, c)))
                            throw precondition_error("NotAGroup", name_ + ": multiplication is not associative");
                }
        }
    }

    std::uint32_t p_;
    std::size_t n_;
    std::vector<std::uint32_t> mult_;
    std::vector<std::string> labels_;
    std::string name_;
    std::size_t identity_ = 0;
    std::vector<std::size_t> inverse_;
};

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline std::uint64_t parse_count(const std::string& s, const std::string& context) {
    if (s.empty() || s.size() > 9 || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
        throw parse_error("BadSelector", "expected a positive integer in '" + context + "'");
    return std::stoull(s);
}

inline std::uint32_t prime_of_power(std::uint64_t n) {
    for (std::uint64_t d = 2; d <= n; ++d)
        if (n % d == 0) {
            std::uint64_t m = n;
            while (m % d == 0) m /= d;
            return m == 1 ? static_cast<std::uint32_t>(d) : 0;
        }
    return 0;
}

}  // namespace detail

inline GroupTable GroupTable::from_selector(const std::string& selector, std::uint32_t ambient_p) {
    auto parts = detail::split(selector, ':');
    std::uint32_t p = 0;
    auto check_p = [&](std::uint32_t q) {
        if (ambient_p && q != ambient_p)
            throw precondition_error("NotAPGroup", "group '" + selector + "' is not a " + std::to_string(ambient_p) + "-group");
    };
    if (parts[0] == "cyclic" && parts.size() == 2) {
        std::uint64_t n = detail::parse_count(parts[1], selector);
        p = ambient_p ? ambient_p : detail::prime_of_power(n);
        if (p == 0) throw precondition_error("NotAPGroup", "order " + parts[1] + " is not a prime power");
        return GroupTable::cyclic(n, p);  // the constructor rejects orders that are not powers of p
    }
    if (parts[0] == "elem-abelian" && parts.size() == 3) {
        p = static_cast<std::uint32_t>(detail::parse_count(parts[1], selector));
        if (!is_prime(p)) throw precondition_error("InvalidModulus", parts[1] + " is not prime");
        check_p(p);
        return GroupTable::elementary_abelian(p, detail::parse_count(parts[2], selector));
    }
    if (parts[0] == "heisenberg" && parts.size() == 2) {
        p = static_cast<std::uint32_t>(detail::parse_count(parts[1], selector));
        if (!is_prime(p)) throw precondition_error("InvalidModulus", parts[1] + " is not prime");
        check_p(p);
        return GroupTable::heisenberg(p);
    }
    throw parse_error("BadSelector", "unknown group selector '" + selector + "'");
}

struct GroupDeterminantResult {
    int sign = 1;
    std::size_t trials = 0;
};

/// Tests det[x_{gh}] = s * (sum_g x_g)^{#G} at random points of F_p^G.
inline GroupDeterminantResult group_determinant_check(const GroupTable& g, std::size_t trials, std::uint64_t seed) {
    const std::uint32_t p = g.p();
    const std::size_t n = g.order();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> dist(0, p - 1);
    GroupDeterminantResult out;
    int sign = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        std::vector<Fp> x(n, Fp(0, p));
        Fp sum(0, p);
        do {
            sum = Fp(0, p);
            for (auto& v : x) {
                v = Fp(dist(rng), p);
                sum += v;
            }
        } while (sum.is_zero());
        MatrixFp m(n, n, p);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) m.set(a, b, x[g.mul(a, b)]);
        Fp ratio = determinant(m) / sum.pow(n);
        int s = ratio == Fp(1, p) ? 1 : (ratio == Fp(-1, p) ? -1 : 0);
        if (s == 0 || (sign != 0 && s != sign)) {
            std::ostringstream os;
            os << g.name() << ": det/(sum x)^" << n << " = " << ratio << " at x = [";
            for (std::size_t i = 0; i < n; ++i) os << (i ? "," : "") << x[i];
            os << "]";
            throw mismatch_error("IdentityViolated", os.str());
        }
        sign = s;
        ++out.trials;
    }
    out.sign = sign == 0 ? 1 : sign;
    return out;
}

struct ModuleDims {
    std::size_t i_xy = 0;                    // dim I_{X/Y}
    std::size_t j_xy = 0;                    // dim J_{X/Y}
    std::vector<std::size_t> relative;       // dim I_{G,G_Q} per stabilizer
};

/// Dimensions of the relative augmentation ideals and of ker(sum: (+)_Q I_{G,G_Q} -> I_G).
inline ModuleDims module_dims(const GroupTable& g, const std::vector<std::vector<std::size_t>>& stabilizers) {
    ModuleDims out;
    std::vector<std::size_t> all_gens;
    std::size_t total = 0;
    for (const auto& h : stabilizers) {
        if (!g.is_subgroup(h)) throw precondition_error("NotASubgroup", "stabilizer is not a subgroup");
        if (!g.is_normal(h)) throw precondition_error("NotNormal", "stabilizer of order " + std::to_string(h.size()) + " is not normal");
        const std::size_t d = g.order() - g.order() / h.size();
        out.relative.push_back(d);
        total += d;
        all_gens.insert(all_gens.end(), h.begin(), h.end());
    }
    if (g.subgroup_generated(all_gens).size() != g.order())
        throw precondition_error("StabilizersDontGenerate", "the stabilizers generate a proper subgroup");
    out.i_xy = total - (g.order() - 1);
    out.j_xy = out.i_xy;
    return out;
}

}  // namespace ascohom

#endif
