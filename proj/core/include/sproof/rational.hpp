#pragma once

#include <gmpxx.h>

#include <vector>

#include "sproof/interval.hpp"

namespace sproof {

// Outward-rounded enclosure of an exact rational.
Interval to_interval(const mpq_class& q);
double round_down(const mpq_class& q);
double round_up(const mpq_class& q);

// Polynomial with rational coefficients in the monomial basis (index = power).
using RatPoly = std::vector<mpq_class>;

mpq_class eval(const RatPoly& p, const mpq_class& x);
// Bernstein coefficients of p restricted to [a, b], degree max(deg p, 0).
std::vector<mpq_class> bernstein_on(const RatPoly& p, const mpq_class& a, const mpq_class& b);

}  // namespace sproof
