#pragma once

#include <Eigen/Dense>
#include <string>

#include "sproof/interval_matrix.hpp"

namespace sproof {

// Two-dimensional Legendre series sum_{m,n <= degree} c_mn P_m(x) P_n(y) with
// interval coefficients. Products grow the degree exactly; nothing is truncated.
class PSeries2 {
public:
    explicit PSeries2(int degree);
    explicit PSeries2(IMatrix coeffs);

    int degree() const { return static_cast<int>(c_.rows()) - 1; }
    const IMatrix& coeffs() const { return c_; }
    Interval& operator()(int m, int n) { return c_(static_cast<std::size_t>(m), static_cast<std::size_t>(n)); }
    const Interval& operator()(int m, int n) const {
        return c_(static_cast<std::size_t>(m), static_cast<std::size_t>(n));
    }

private:
    IMatrix c_;
};

PSeries2 operator+(const PSeries2& a, const PSeries2& b);
PSeries2 operator-(const PSeries2& a, const PSeries2& b);
PSeries2 operator*(const Interval& s, const PSeries2& a);
PSeries2 operator*(const PSeries2& a, const PSeries2& b);

// Exact L2((0,1)^2) norm from the diagonal Legendre Gram matrix.
Interval l2_norm_sq(const PSeries2& a);
Interval l2_norm(const PSeries2& a);

struct LinfOptions {
    int initial_grid = 64;        // cells per direction
    double refine_tol = 1e-3;     // refine cells wider than tol * current max
    std::size_t max_cells = 1000000;
    int max_level = 16;
};

// Rigorous upper bound of sup |a| over [0,1]^2 from Bernstein coefficients on
// an adaptively refined grid.
double linf_ub(const PSeries2& a, const LinfOptions& opt = {});

// Function in V_h^N: sum_{i,j=1..N} c_ij psi_i(x) psi_j(y).
// Flattened index of (i,j) is (i-1)*N + (j-1).
class SpectralFn {
public:
    explicit SpectralFn(int n);
    SpectralFn(int n, IMatrix coeffs);
    static SpectralFn from_vector(int n, const IVector& v);
    static SpectralFn from_point(int n, const Eigen::VectorXd& v);

    int n() const { return n_; }
    const IMatrix& coeffs() const { return c_; }
    // 1-based (i, j)
    const Interval& operator()(int i, int j) const {
        return c_(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1));
    }
    Interval& operator()(int i, int j) { return c_(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)); }
    IVector to_vector() const;
    Eigen::VectorXd mid_vector() const;

    PSeries2 to_p() const;
    PSeries2 laplacian() const;
    PSeries2 dx() const;
    PSeries2 dy() const;

    // Non-rigorous floating evaluation of the coefficient midpoints.
    double eval_mid(double x, double y) const;

private:
    int n_;
    IMatrix c_;
};

SpectralFn operator+(const SpectralFn& a, const SpectralFn& b);
SpectralFn operator*(const Interval& s, const SpectralFn& a);

// 2D Gram matrices in the flattened basis: stiffness (grad, grad) and mass.
IMatrix stiffness_2d(int n);
IMatrix mass_2d(int n);

// (w psi_l, psi_k) for a Legendre-series weight w, k, l in V_h^N.
IMatrix weighted_gram(const PSeries2& w, int n);
// Gram matrix of multiplication by 2u (the Emden derivative weight f'(u) = 2u).
IMatrix weighted_gram(const SpectralFn& u, int n);

// (g, psi_k)_{L2} for all k in V_h^N.
IVector project_psi(const PSeries2& g, int n);

struct FnNorms {
    Interval h10;
    Interval l2;
    Interval linf;  // [0, upper bound]
    Interval l4;
};

FnNorms fn_norms(const SpectralFn& u, const LinfOptions& opt = {});
Interval h10_norm(const SpectralFn& u);

// Coefficient files: rows (i, j, lo, hi) with hexadecimal-float endpoints.
std::string to_csv(const SpectralFn& u);
SpectralFn from_csv(const std::string& text);
std::string to_json(const SpectralFn& u);
SpectralFn from_json(const std::string& text);

}  // namespace sproof
