#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sproof/linalg.hpp"
#include "sproof/operator_blocks.hpp"

namespace sproof {

struct NewtonOptions {
    int max_steps = 50;
    double rel_tol = 1e-12;
};

// Default seed: a positive bump for Emden, zero otherwise.
SpectralFn default_seed(const Nonlinearity& f, int n);

// Floating Newton iterate for the Galerkin system (grad u, grad v) = (f(u), v).
// Not rigorous. Throws std::runtime_error on divergence.
SpectralFn galerkin_approx(const Nonlinearity& f, int n, const std::optional<SpectralFn>& seed = std::nullopt,
                           const NewtonOptions& opt = {});

// Galerkin residual L c - (f(u), psi) with interval arithmetic.
IVector galerkin_residual(const Nonlinearity& f, const IVector& c, int n);

// Krawczyk enclosure of an exact Galerkin solution near u0. Throws
// InconclusiveError when no enclosure is found.
SpectralFn enclose_approx(const Nonlinearity& f, const SpectralFn& u0, const InflationOptions& opt = {});

// ||Delta u + f(u)||_{L2}, exact polynomial integration.
Interval residual_l2(const SpectralFn& u_hat, const Nonlinearity& f);
// delta_perp = C_N ||Delta u + f(u)||_{L2}.
Interval residual_tail(const SpectralFn& u_hat, const Nonlinearity& f, const Interval& C_N);

struct CandidateSet {
    SpectralFn W_h{1};
    Interval alpha{0.0};
};

struct NonlinearImage {
    PSeries2 poly{0};  // -c2 w_h^2 over the box
    IVector projected;  // (poly, psi_k)
    Interval wh_inf;    // [0, sup |w_h|]
    Interval poly_l2;   // [., sup ||poly||_{L2}]
    Interval cross;     // ||2 c2 w_h w_perp||_{L2} bound
    Interval tail_sq;   // ||c2 w_perp^2||_{L2} bound
};

// G(w) = f'(u)w + f(u) - f(u + w) = -c2 w^2 for every w in W.
NonlinearImage nonlinear_image(const CandidateSet& w, const Nonlinearity& f, const Interval& C_N,
                               const Interval& C_4, const LinfOptions& linf = {});

struct IterationRecord {
    int iteration = 0;
    double wh_max_rad = 0.0;
    double alpha = 0.0;
    bool included = false;
};

struct VerificationCertificate {
    std::string method;  // fixed-point | kantorovich | in-classic
    std::string status;  // verified | verified-unique | inconclusive | failed-hypothesis
    std::string message;
    int n = 0;
    Nonlinearity f;
    SpectralFn u_hat{1};
    SpectralFn W_h{1};
    Interval rho, alpha, sup_wh;
    Interval beta, omega;
    Interval delta_perp, residual_l2;
    Interval K;        // l_inverse_norm
    Interval ritz_C;   // ritz_error_constant
    BlockNormBounds bounds;
    std::vector<BlockNormBounds> extra_bounds;
    ConstantValue C_P, C_4, C_N;
    std::vector<IterationRecord> iterations;

    bool verified() const { return status == "verified" || status == "verified-unique"; }
};

struct FixedPointOptions {
    int max_iterations = 30;
    double radius_inflation = 1.05;
    double alpha_inflation = 1.1;
    double absolute_inflation = 1e-300;
    std::string box_conversion = "functional";  // or "cauchy-schwarz"
    LinfOptions linf;
};

VerificationCertificate fixed_point_verify(const LinearizedProblem& p, const BlockNormBounds& b,
                                           const Interval& delta_perp, const FixedPointOptions& opt = {});

struct KantorovichResult {
    std::string status;  // verified-unique | failed-hypothesis
    Interval beta_omega;
    Interval rho;         // (1 - sqrt(1 - 2 beta omega)) / omega
    Interval uniqueness;  // 2 beta
};

KantorovichResult kantorovich_radius(const Interval& beta, const Interval& omega);

enum class KantorovichMode { Block, InClassic };

VerificationCertificate kantorovich_verify(const LinearizedProblem& p, const BlockNormBounds& b,
                                           const Interval& delta_perp, KantorovichMode mode);

// Image of the pure residual (0, r_perp) under H: finite and tail bounds.
// Only h12 and h22 enter.
struct ResidualImage {
    Interval finite;
    Interval tail;
};
ResidualImage residual_image(const Interval& h12, const Interval& h22, const Interval& r_perp);

}  // namespace sproof
