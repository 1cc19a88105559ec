#pragma once

// Root counting and extraction in F_p, squarefree decomposition and
// polynomial-square detection.

#include <polyprod/core_arith.hpp>
#include <polyprod/polynomials/mod_poly.hpp>

#include <algorithm>
#include <utility>
#include <vector>

namespace polyprod {

/// Below this modulus roots_mod scans every residue; above it, it splits
/// gcd(x^p - x, f) algebraically.
inline constexpr u64 kRootScanThreshold = 100'000;

/// gcd(x^p - x, f): the product of the distinct linear factors of f.
inline ModPoly linear_part(const ModPoly& f) {
    if (f.is_zero()) fail(ErrorKind::invalid_argument, "zero polynomial");
    const u64 p = f.modulus();
    ModPoly m = f.monic();
    if (m.degree() < 1) return ModPoly::constant(p, 1);
    ModPoly xp = powmod(ModPoly::x(p), p, m);
    return gcd(xp - ModPoly::x(p), m);
}

/// Number of distinct roots of f in F_p.
inline std::size_t count_roots_mod(const ModPoly& f) {
    return static_cast<std::size_t>(linear_part(f).degree());
}

namespace detail {

inline void split_linear(const ModPoly& g, std::vector<u64>& out) {
    const u64 p = g.modulus();
    if (g.degree() <= 0) return;
    if (g.degree() == 1) {
        // monic: x + c
        out.push_back(sub_mod(0, g[0], p));
        return;
    }
    const u64 half = (p - 1) / 2;
    for (u64 delta = 0;; ++delta) {
        ModPoly shifted = ModPoly(p, std::vector<u64>{delta % p, 1});
        ModPoly t = powmod(shifted, half, g) - ModPoly::constant(p, 1);
        ModPoly h = gcd(t, g);
        if (h.degree() > 0 && h.degree() < g.degree()) {
            split_linear(h, out);
            split_linear(g / h, out);
            return;
        }
    }
}

}  // namespace detail

/// Sorted distinct roots of f in F_p.
inline std::vector<u64> roots_mod(const ModPoly& f, u64 scan_threshold = kRootScanThreshold) {
    if (f.is_zero()) fail(ErrorKind::invalid_argument, "zero polynomial");
    const u64 p = f.modulus();
    std::vector<u64> roots;
    if (f.degree() < 1) return roots;
    if (p < scan_threshold || p == 2) {
        for (u64 x = 0; x < p; ++x) {
            if (f(x) == 0) roots.push_back(x);
        }
        return roots;
    }
    ModPoly g = linear_part(f);
    if (g[0] == 0) {
        roots.push_back(0);
        g = g / ModPoly::x(p);
    }
    detail::split_linear(g.monic(), roots);
    std::sort(roots.begin(), roots.end());
    return roots;
}

/// Squarefree decomposition of f: pairwise coprime monic factors g_i with
/// f = lc(f) * prod g_i^(m_i). Handles the p-th power parts characteristic-p
/// style by taking p-th roots of coefficients.
inline std::vector<std::pair<ModPoly, u64>> squarefree_decomposition(const ModPoly& f) {
    if (f.is_zero()) fail(ErrorKind::invalid_argument, "zero polynomial");
    const u64 p = f.modulus();
    std::vector<std::pair<ModPoly, u64>> out;
    ModPoly m = f.monic();
    u64 scale = 1;
    while (m.degree() > 0) {
        ModPoly c = gcd(m, m.derivative());
        ModPoly w = m / c;
        u64 i = 1;
        while (w.degree() > 0) {
            ModPoly y = gcd(w, c);
            ModPoly factor = w / y;
            if (factor.degree() > 0) out.emplace_back(factor.monic(), i * scale);
            w = std::move(y);
            c = c / w;
            ++i;
        }
        if (c.degree() <= 0) break;
        // c is a polynomial in x^p; since a^p = a in F_p its p-th root just
        // keeps every p-th coefficient.
        std::vector<u64> root;
        for (std::size_t k = 0; k < c.coeffs().size(); k += p) root.push_back(c.coeffs()[k]);
        m = ModPoly(p, std::move(root)).monic();
        scale *= p;
    }
    return out;
}

/// True iff f = g^2 for some g in F_p[x]; p must be odd.
inline bool is_square_poly_mod(const ModPoly& f) {
    if (f.is_zero()) fail(ErrorKind::invalid_argument, "zero polynomial");
    const u64 p = f.modulus();
    if (p == 2) fail(ErrorKind::invalid_argument, "square detection requires an odd prime");
    if (jacobi(f.lead(), p) != 1) return false;
    for (const auto& [g, mult] : squarefree_decomposition(f)) {
        if (mult & 1) return false;
    }
    return true;
}

}  // namespace polyprod
