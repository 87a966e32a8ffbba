#ifndef ASCOHOM_CORPUS_HPP
#define ASCOHOM_CORPUS_HPP

// The reference covers of P^1 used by the verification suite.

#include <string>
#include <vector>

#include "rational.hpp"

namespace ascohom {

struct CorpusEntry {
    std::string name;
    RationalFunction f;
};

namespace detail {
inline RationalFunction xpow(int k, std::uint32_t p) { return RationalFunction::monomial(Fp(1, p), k); }
inline RationalFunction simple_pole(std::int64_t a, std::uint32_t p) {
    return RationalFunction(Poly::constant(1, p), Poly::linear(Fp(a, p)));
}
}  // namespace detail

inline std::vector<CorpusEntry> reference_corpus() {
    using detail::simple_pole;
    using detail::xpow;
    return {
        {"p3-x^2", xpow(2, 3)},
        {"p3-1/x", xpow(-1, 3)},
        {"p3-1/x+1/(x-1)", simple_pole(0, 3) + simple_pole(1, 3)},
        {"p3-x^-5", xpow(-5, 3)},
        {"p3-x^-6+x^-5", xpow(-6, 3) + xpow(-5, 3)},
        {"p5-1/x+x^3", xpow(-1, 5) + xpow(3, 5)},
        {"p5-1/x+1/(x-1)+1/(x-2)", simple_pole(0, 5) + simple_pole(1, 5) + simple_pole(2, 5)},
        {"p5-x^7", xpow(7, 5)},
        {"p7-x^3", xpow(3, 7)},
        {"p7-1/x+x^4", xpow(-1, 7) + xpow(4, 7)},
    };
}

}  // namespace ascohom

#endif
