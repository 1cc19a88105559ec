#pragma once

#include <polyprod/core_arith.hpp>

namespace polyprod {

/// Capelli's criterion over Q for x^d - a: irreducible iff a is not a p-th
/// power for any prime p | d, and a is not of the form -4 b^4 when 4 | d.
/// For integer a a rational p-th power is an integer one, and -4 b^4 = a
/// forces b to be an integer.
inline bool binomial_irreducible_over_Q(unsigned d, const BigInt& a) {
    if (d < 2) fail(ErrorKind::invalid_argument, "binomial degree must be at least 2");
    if (sgn(a) == 0) fail(ErrorKind::invalid_argument, "binomial constant must be nonzero");
    for (const auto& [q, e] : factorize(BigInt(d)).entries) {
        if (is_perfect_kth_power(a, static_cast<unsigned>(q.get_ui()))) return false;
    }
    if (d % 4 == 0 && mpz_divisible_ui_p(a.get_mpz_t(), 4)) {
        BigInt quarter = divexact(-a, BigInt(4));
        if (sgn(quarter) >= 0 && is_perfect_kth_power(quarter, 4)) return false;
    }
    return true;
}

}  // namespace polyprod
