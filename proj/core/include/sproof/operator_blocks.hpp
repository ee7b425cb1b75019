#pragma once

#include <map>
#include <string>

#include "sproof/constants.hpp"
#include "sproof/interval_matrix.hpp"
#include "sproof/spectral_fn.hpp"

namespace sproof {

// f(u) = c0 + c1 u + c2 u^2. Emden: c2 = 1.
struct Nonlinearity {
    double c0 = 0.0;
    double c1 = 0.0;
    double c2 = 1.0;

    static Nonlinearity emden() { return {0.0, 0.0, 1.0}; }
    // "emden" or "poly:c0,c1,c2" (also "poly:c0,c1" and "poly:c0").
    static Nonlinearity parse(const std::string& spec);
    std::string describe() const;
    bool is_linear() const { return c2 == 0.0; }

    PSeries2 value(const SpectralFn& u) const;       // f(u)
    PSeries2 derivative(const SpectralFn& u) const;  // f'(u) = c1 + 2 c2 u
    double value(double u) const { return c0 + c1 * u + c2 * u * u; }
    double derivative(double u) const { return c1 + 2.0 * c2 * u; }
};

// Linearization of -Delta u = f(u) at an enclosed approximation u_hat.
struct LinearizedProblem {
    SpectralFn u_hat{1};
    Nonlinearity f;
    int n = 0;
    ConstantProvider constants;

    IMatrix L;     // 2D stiffness (grad psi_l, grad psi_k)
    IMatrix M;     // 2D mass
    IMatrix Q;     // (f'(u_hat)^2 psi_l, psi_k)
    IMatrix G;     // L - (f'(u_hat) psi_l, psi_k)
    IMatrix Ginv;  // verified inverse of G

    PSeries2 fprime{0};
    Interval fprime_inf;  // [0, ub] of sup |f'(u_hat)|
    Interval u_inf;       // [0, ub] of sup |u_hat|
    Interval C_P, C_4, C_N;
};

// Throws InconclusiveError when G cannot be certified nonsingular.
LinearizedProblem assemble_linearization(const SpectralFn& u_hat, const Nonlinearity& f,
                                         const ConstantProvider& constants, const LinfOptions& linf = {});

// Upper bound of ||T^-1|| in H^1_0 via the generalized eigenvalues of (G, L).
Interval t_inverse_norm(const LinearizedProblem& p);
// Pure variant for given matrices; L must be symmetric positive definite.
Interval t_inverse_norm(const IMatrix& g, const IMatrix& l);

struct TailBounds {
    Interval tau_Y;
    Interval tau_Z;
    Interval kappa_pp;
    Interval tau_Z_matrix;
    Interval tau_Z_fallback;
    std::string tau_Z_chain;
};

TailBounds tail_bounds(const LinearizedProblem& p);

struct BlockNormBounds {
    std::string variant;  // "schur" or "schur-alt"
    bool valid = false;   // L nonsingular established
    Interval K_T, tau_Y, tau_Z, kappa_pp, kappa;
    Interval eta;          // alt only
    Interval g_inv;        // alt only: bound of the tail Neumann inverse
    Interval sh_inv;       // alt only: bound of S_h^-1
    Interval tail_factor;  // multiplier of the tail part: 1/(1-kappa)
    Interval h11, h12, h21, h22;
    std::map<std::string, std::string> chains;
};

// Formula layers, usable with synthetic inputs. Throw InconclusiveError when
// the Neumann hypothesis fails.
BlockNormBounds assemble_schur(const Interval& K_T, const Interval& tau_Y, const Interval& tau_Z,
                               const Interval& kappa_pp);
BlockNormBounds assemble_schur_kappa(const Interval& K_T, const Interval& tau_Y, const Interval& tau_Z,
                                     const Interval& kappa_pp, const Interval& kappa);
BlockNormBounds assemble_schur_alt(const Interval& K_T, const Interval& tau_Y, const Interval& tau_Z,
                                   const Interval& kappa_pp);

BlockNormBounds schur_bounds(const LinearizedProblem& p);
BlockNormBounds schur_bounds_alt(const LinearizedProblem& p);

// Euclidean-norm bound of [[h11, h12], [h21, h22]].
Interval l_inverse_norm(const BlockNormBounds& b);

// C with ||phi - R_h phi||_{H^1_0} <= C ||L phi||_{L2}.
Interval ritz_error_constant(const LinearizedProblem& p, const BlockNormBounds& b);
Interval ritz_error_constant(const BlockNormBounds& b, const Interval& C_N, const Interval& C_P,
                             const Interval& fprime_inf);

}  // namespace sproof
