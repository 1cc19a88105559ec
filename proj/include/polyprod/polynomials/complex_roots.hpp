#pragma once

// Simultaneous (Aberth-Ehrlich) root approximation for integer polynomials.

#include <polyprod/error.hpp>
#include <polyprod/polynomials/int_poly.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <utility>
#include <vector>

namespace polyprod {

using Complex = std::complex<long double>;

struct ComplexRootOptions {
    long double tol = 1e-10L;
    int max_iterations = 1000;
};

class ConvergenceError : public Error {
  public:
    ConvergenceError(std::vector<Complex> best)
        : Error(ErrorKind::no_convergence, "root iteration did not converge"), best_(std::move(best)) {}
    const std::vector<Complex>& best_iterate() const { return best_; }

  private:
    std::vector<Complex> best_;
};

namespace detail {

inline long double to_long_double(const BigInt& v) { return static_cast<long double>(v.get_d()); }

inline std::pair<Complex, Complex> eval_with_derivative(const std::vector<long double>& c, Complex z) {
    Complex f = 0, df = 0;
    for (std::size_t i = c.size(); i-- > 0;) {
        df = df * z + f;
        f = f * z + c[i];
    }
    return {f, df};
}

}  // namespace detail

/// deg f approximations of the complex roots of squarefree f. Each returned
/// root satisfies |f(beta)| < tol * max|coeff|.
inline std::vector<Complex> complex_roots(const IntPoly& f, ComplexRootOptions opt = {}) {
    if (f.degree() < 1) fail(ErrorKind::invalid_argument, "complex_roots needs degree >= 1");
    if (f.degree() > 1 && sgn(discriminant(f)) == 0) fail(ErrorKind::invalid_argument, "repeated roots");

    const std::size_t n = static_cast<std::size_t>(f.degree());
    std::vector<long double> c(n + 1);
    long double max_abs = 0;
    for (std::size_t i = 0; i <= n; ++i) {
        c[i] = detail::to_long_double(f.coeffs()[i]);
        max_abs = std::max(max_abs, std::fabs(c[i]));
    }

    // Cauchy bound radius.
    long double cauchy = 0;
    for (std::size_t i = 0; i < n; ++i) cauchy = std::max(cauchy, std::fabs(c[i] / c[n]));
    const long double radius = 1 + cauchy;

    std::vector<Complex> z(n);
    for (std::size_t k = 0; k < n; ++k) {
        long double angle = 2 * std::numbers::pi_v<long double> * static_cast<long double>(k) /
                                static_cast<long double>(n) +
                            0.4L;
        z[k] = std::polar(radius, angle);
    }

    const long double target = opt.tol * max_abs;
    for (int iter = 0; iter < opt.max_iterations; ++iter) {
        bool done = true;
        long double max_step = 0;
        for (std::size_t k = 0; k < n; ++k) {
            auto [fz, dfz] = detail::eval_with_derivative(c, z[k]);
            if (std::abs(fz) < target * 1e-3L) continue;
            done = false;
            Complex ratio = fz / dfz;
            Complex sum = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j != k) sum += 1.0L / (z[k] - z[j]);
            }
            Complex step = ratio / (1.0L - ratio * sum);
            z[k] -= step;
            max_step = std::max(max_step, std::abs(step));
        }
        bool residual_ok = true;
        for (std::size_t k = 0; k < n && residual_ok; ++k) {
            residual_ok = std::abs(detail::eval_with_derivative(c, z[k]).first) < target;
        }
        if (done || (residual_ok && max_step < 1e-15L)) {
            if (residual_ok) return z;
        }
    }
    bool residual_ok = true;
    for (std::size_t k = 0; k < n && residual_ok; ++k) {
        residual_ok = std::abs(detail::eval_with_derivative(c, z[k]).first) < target;
    }
    if (residual_ok) return z;
    throw ConvergenceError(std::move(z));
}

}  // namespace polyprod
