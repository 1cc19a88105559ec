#pragma once

#include <polyprod/polynomials/complex_roots.hpp>
#include <polyprod/polynomials/int_poly.hpp>
#include <polyprod/polynomials/irreducibility.hpp>
#include <polyprod/polynomials/mod_poly.hpp>
#include <polyprod/polynomials/roots.hpp>
