#pragma once

#include <gmpxx.h>

#include <vector>

#include "sproof/interval_matrix.hpp"
#include "sproof/rational.hpp"

namespace sproof {

// One-dimensional exact data on (0,1). P_k is the shifted Legendre polynomial
// of degree k (P_k(1) = 1); psi_i = x(1-x) P_i' / (i(i+1)), i >= 1, so that
// psi_i = (P_{i-1} - P_{i+1}) / (2(2i+1)) and psi_i' = -P_i.
namespace legendre {

// Coefficients in the P basis, index = degree.
using PCoeffs = std::vector<mpq_class>;

// Coefficient of P_{m+n-2k} in P_m P_n.
mpq_class linearization(int m, int n, int k);

PCoeffs psi(int i);
PCoeffs psi_second_derivative(int i);
PCoeffs product(const PCoeffs& a, const PCoeffs& b);
// (a, b)_{L2(0,1)}
mpq_class inner(const PCoeffs& a, const PCoeffs& b);

RatPoly monomial_P(int k);
RatPoly monomial_psi(int i);

mpq_class stiffness_exact(int i, int j);
mpq_class mass_exact(int i, int j);

}  // namespace legendre

// Enclosures of P_i(x) and psi_i(x) over an interval x in [0,1]. Interval
// arguments are handled through exact Bernstein coefficients on [x.lo, x.hi].
Interval shifted_legendre_eval(int i, const Interval& x);
Interval basis_eval(int i, const Interval& x);

struct Gram1D {
    IMatrix stiffness;  // (psi_i', psi_j')
    IMatrix mass;       // (psi_i, psi_j)
};

Gram1D gram_matrices(int n);

// Per-degree interval tables shared by the 2D algebra. Thread-safe cache.
class BasisTables {
public:
    static const BasisTables& get(int n);

    int n() const { return n_; }
    const Gram1D& gram() const { return gram_; }
    // Rows m = 0..2n+2, columns (k-1)*n + (l-1): integral of P_m psi_k psi_l.
    const IMatrix& triple() const { return triple_; }
    // P-basis coefficients of psi_i (rows i-1, columns m = 0..n+1).
    const IMatrix& psi_to_p() const { return psi_to_p_; }
    // P-basis coefficients of psi_i'' (rows i-1, columns m = 0..n+1).
    const IMatrix& psi_dd_to_p() const { return psi_dd_to_p_; }
    // Integral of psi_i over (0,1).
    const IVector& psi_integral() const { return psi_integral_; }

private:
    explicit BasisTables(int n);
    int n_;
    Gram1D gram_;
    IMatrix triple_;
    IMatrix psi_to_p_;
    IMatrix psi_dd_to_p_;
    IVector psi_integral_;
};

// Interval linearization coefficients for products of series up to degree dmax.
class LinearizationTable {
public:
    static const LinearizationTable& get(int dmax);
    int dmax() const { return dmax_; }
    // Coefficient of P_{m+n-2k} in P_m P_n, 0 <= k <= min(m, n).
    const Interval& operator()(int m, int n, int k) const;

private:
    explicit LinearizationTable(int dmax);
    int dmax_;
    std::vector<std::size_t> offset_;
    std::vector<Interval> data_;
};

// Bernstein coefficients of P_0..P_d (rows) on [0,1] at degree d (columns).
const IMatrix& bernstein_of_legendre(int d);

}  // namespace sproof
