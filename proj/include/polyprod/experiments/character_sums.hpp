#pragma once

// Weil-bound diagnostics for sums of (P(n) / lp).

#include <polyprod/core_arith.hpp>
#include <polyprod/polynomials/roots.hpp>
#include <polyprod/products.hpp>

#include <cmath>
#include <cstdlib>
#include <string>

namespace polyprod {

struct WeilRatio {
    i64 sum = 0;
    double bound = 0;  // D^2 (N/(lp) + 1) sqrt(lp) log(lp), implied constant 1
    double ratio = 0;  // |sum| / bound
};

inline double weil_bound(int degree, u64 l, u64 p, u64 N) {
    const double lp = static_cast<double>(l) * static_cast<double>(p);
    const double D = degree;
    return D * D * (static_cast<double>(N) / lp + 1.0) * std::sqrt(lp) * std::log(lp);
}

inline WeilRatio weil_ratio(const IntPoly& P, u64 l, u64 p, u64 M, u64 N) {
    if (P.degree() < 1) fail(ErrorKind::invalid_argument, "P must be non-constant");
    for (u64 q : {l, p}) {
        if (q == 2 || !is_prime(q)) fail(ErrorKind::invalid_argument, std::to_string(q) + " is not an odd prime");
    }
    if (l == p) fail(ErrorKind::invalid_argument, "l and p must be distinct");
    for (u64 q : {l, p}) {
        const ModPoly r = ModPoly::reduce(P, q);
        if (r.is_zero() || is_square_poly_mod(r))
            fail(ErrorKind::precondition, "P is a perfect square modulo " + std::to_string(q));
    }
    const u64 lp = l * p;
    const ModPoly r = ModPoly::reduce(P, lp);  // Horner mod lp; primality is not needed for evaluation
    WeilRatio w;
    for (u64 n = M + 1; n <= M + N; ++n) w.sum += jacobi(r(n), lp);
    w.bound = weil_bound(P.degree(), l, p, N);
    w.ratio = static_cast<double>(std::llabs(w.sum)) / w.bound;
    return w;
}

}  // namespace polyprod
