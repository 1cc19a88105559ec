#pragma once

// Univariate polynomials with arbitrary-precision integer coefficients,
// stored in ascending degree order (c0, c1, ..., cd).

#include <polyprod/bigint.hpp>
#include <polyprod/error.hpp>

#include <algorithm>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace polyprod {

class IntPoly {
  public:
    IntPoly() = default;

    explicit IntPoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

    IntPoly(std::initializer_list<long> coeffs) {
        coeffs_.reserve(coeffs.size());
        for (long c : coeffs) coeffs_.emplace_back(c);
        normalize();
    }

    static IntPoly constant(const BigInt& c) { return IntPoly(std::vector<BigInt>{c}); }

    static IntPoly monomial(const BigInt& c, std::size_t deg) {
        std::vector<BigInt> v(deg + 1);
        v[deg] = c;
        return IntPoly(std::move(v));
    }

    /// x^d - a
    static IntPoly binomial(std::size_t d, const BigInt& a) {
        std::vector<BigInt> v(d + 1);
        v[0] = -a;
        v[d] = 1;
        return IntPoly(std::move(v));
    }

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<BigInt>& coeffs() const { return coeffs_; }

    BigInt coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigInt(0); }

    const BigInt& lead() const {
        if (is_zero()) fail(ErrorKind::invalid_argument, "zero polynomial has no leading coefficient");
        return coeffs_.back();
    }

    /// Horner evaluation, exact.
    BigInt operator()(const BigInt& x) const {
        BigInt acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            acc *= x;
            acc += *it;
        }
        return acc;
    }

    /// Non-negative gcd of the coefficients (0 for the zero polynomial).
    BigInt content() const {
        BigInt g = 0;
        for (const auto& c : coeffs_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        return g;
    }

    IntPoly derivative() const {
        if (coeffs_.size() < 2) return {};
        std::vector<BigInt> d(coeffs_.size() - 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
        return IntPoly(std::move(d));
    }

    /// P(x + k) by repeated synthetic division (Taylor shift).
    IntPoly shifted(const BigInt& k) const {
        std::vector<BigInt> c = coeffs_;
        if (sgn(k) == 0 || c.size() < 2) return IntPoly(std::move(c));
        const std::size_t n = c.size();
        for (std::size_t i = 0; i + 1 < n; ++i) {
            for (std::size_t j = n - 1; j-- > i;) c[j] += k * c[j + 1];
        }
        return IntPoly(std::move(c));
    }

    IntPoly divexact_scalar(const BigInt& s) const {
        std::vector<BigInt> c(coeffs_.size());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = divexact(coeffs_[i], s);
        return IntPoly(std::move(c));
    }

    IntPoly primitive_part() const {
        if (is_zero()) return {};
        BigInt g = content();
        if (sgn(lead()) < 0) g = -g;
        return divexact_scalar(g);
    }

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
        std::vector<BigInt> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
        return IntPoly(std::move(c));
    }

    friend IntPoly operator-(const IntPoly& a, const IntPoly& b) {
        std::vector<BigInt> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
        return IntPoly(std::move(c));
    }

    friend IntPoly operator-(const IntPoly& a) {
        std::vector<BigInt> c(a.coeffs_.size());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = -a.coeffs_[i];
        return IntPoly(std::move(c));
    }

    friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<BigInt> c(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (sgn(a.coeffs_[i]) == 0) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
                mpz_addmul(c[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
            }
        }
        return IntPoly(std::move(c));
    }

    friend IntPoly operator*(const BigInt& s, const IntPoly& a) {
        std::vector<BigInt> c(a.coeffs_.size());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = s * a.coeffs_[i];
        return IntPoly(std::move(c));
    }

    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.coeffs_ == b.coeffs_; }

  private:
    void normalize() {
        while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
    }

    std::vector<BigInt> coeffs_;
};

inline BigInt evaluate(const IntPoly& f, const BigInt& x) { return f(x); }

/// Human-readable form in descending degree, e.g. "2x^3-x+5". The output is
/// accepted back by parse_polynomial.
inline std::string to_string(const IntPoly& f) {
    if (f.is_zero()) return "0";
    std::string out;
    for (int i = f.degree(); i >= 0; --i) {
        const BigInt& c = f.coeffs()[static_cast<std::size_t>(i)];
        if (sgn(c) == 0) continue;
        BigInt a = abs(c);
        if (sgn(c) < 0) {
            out += '-';
        } else if (!out.empty()) {
            out += '+';
        }
        if (i == 0 || a != 1) out += a.get_str();
        if (i >= 1) out += 'x';
        if (i >= 2) out += '^' + std::to_string(i);
    }
    return out;
}

/// lc(B)^(deg A - deg B + 1) * A mod B, exact over Z.
inline IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) fail(ErrorKind::invalid_argument, "pseudo-division by zero polynomial");
    if (a.degree() < b.degree()) return a;
    std::vector<BigInt> r = a.coeffs();
    const int db = b.degree();
    const BigInt& lb = b.lead();
    int e = a.degree() - db + 1;
    for (int dr = a.degree(); dr >= db; --dr) {
        BigInt lr = r[static_cast<std::size_t>(dr)];
        for (auto& c : r) c *= lb;
        if (sgn(lr) != 0) {
            const std::size_t shift = static_cast<std::size_t>(dr - db);
            for (int j = 0; j <= db; ++j) {
                mpz_submul(r[shift + static_cast<std::size_t>(j)].get_mpz_t(), lr.get_mpz_t(),
                           b.coeffs()[static_cast<std::size_t>(j)].get_mpz_t());
            }
        }
        --e;
        r.pop_back();
    }
    // Each step multiplied by lb once; e counts the steps still owed.
    if (e > 0) {
        BigInt f = pow(lb, static_cast<unsigned long>(e));
        for (auto& c : r) c *= f;
    }
    return IntPoly(std::move(r));
}

/// Res(A, B) over Z by the subresultant PRS (Collins / Brown), fraction-free.
inline BigInt resultant(IntPoly a, IntPoly b) {
    if (a.is_zero() || b.is_zero()) return 0;
    BigInt ca = a.content(), cb = b.content();
    a = a.divexact_scalar(ca);
    b = b.divexact_scalar(cb);
    BigInt g = 1, h = 1;
    int s = 1;
    BigInt t = pow(ca, static_cast<unsigned long>(b.degree())) *
               pow(cb, static_cast<unsigned long>(a.degree()));
    if (a.degree() < b.degree()) {
        std::swap(a, b);
        if ((a.degree() & 1) && (b.degree() & 1)) s = -s;
    }
    while (b.degree() > 0) {
        const int delta = a.degree() - b.degree();
        if ((a.degree() & 1) && (b.degree() & 1)) s = -s;
        IntPoly r = pseudo_remainder(a, b);
        a = std::move(b);
        if (r.is_zero()) return 0;
        BigInt denom = g * pow(h, static_cast<unsigned long>(delta));
        b = r.divexact_scalar(denom);
        g = a.lead();
        if (delta > 0) {
            h = divexact(pow(g, static_cast<unsigned long>(delta)),
                         pow(h, static_cast<unsigned long>(delta - 1)));
        }
    }
    // b is a nonzero constant here.
    const int da = a.degree();
    if (da == 0) return s * t;  // both constant after swap: Res = 1 times contents
    h = divexact(pow(b.lead(), static_cast<unsigned long>(da)), pow(h, static_cast<unsigned long>(da - 1)));
    return s * t * h;
}

/// disc(f) = (-1)^(d(d-1)/2) Res(f, f') / lc(f).
inline BigInt discriminant(const IntPoly& f) {
    if (f.degree() < 1) fail(ErrorKind::invalid_argument, "discriminant needs degree >= 1");
    const long d = f.degree();
    if (d == 1) return 1;
    BigInt r = divexact(resultant(f, f.derivative()), f.lead());
    return ((d * (d - 1) / 2) & 1) ? BigInt(-r) : r;
}

}  // namespace polyprod
