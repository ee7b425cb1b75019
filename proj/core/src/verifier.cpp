#include "sproof/verifier.hpp"

#include <cmath>
#include <sstream>

namespace sproof {

namespace {

Interval I(double x) { return Interval(x); }

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

// sqrt((A B A^T)_ii) for every i.
IVector row_norms(const IMatrix& a, const IMatrix& b) {
    const IMatrix ab = a * b;
    IVector out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Interval s(0.0);
        for (std::size_t k = 0; k < a.cols(); ++k) s += ab(i, k) * a(i, k);
        out[i] = sqrt(nonneg(s));
    }
    return out;
}

// Upper bound of sup x^T A x over the box x (A symmetric positive semidefinite).
double quad_form_ub(const IMatrix& a, const IVector& x) {
    const double direct = dot(x, a * x).hi();
    IVector m(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) m[i] = Interval(x[i].mag());
    IMatrix am(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) am(i, j) = Interval(a(i, j).mag());
    const double magnitude = dot(m, am * m).hi();
    return std::max(0.0, std::min(direct, magnitude));
}

// [x, x], or [0, inf] once the iteration has diverged.
Interval upper_point(double x) { return std::isfinite(x) ? Interval(x) : Interval(0.0, INFINITY); }

Interval inflate_about_mid(const Interval& x, double factor, double absolute) {
    const double m = x.mid();
    const double r = rnd::add_up(rnd::mul_up(std::max(x.rad(), 0.0), factor), absolute);
    return Interval(m) + Interval(-r, r);
}

// Lipschitz-type constant: ||H (A^-1 (2 c2 v phi))|| <= omega ||v|| ||phi||.
Interval block_omega(const BlockNormBounds& b, const Interval& C_P, const Interval& C_N, const Interval& C_4,
                     double c2) {
    const Interval two_c2(2.0 * std::fabs(c2));
    const Interval a_h = two_c2 * sqr(C_4) * C_P;
    const Interval a_p = two_c2 * C_N * sqr(C_4);
    const Interval top = b.h11 * a_h + b.h12 * a_p;
    const Interval bottom = b.h21 * a_h + b.h22 * a_p;
    return sqrt(sqr(top) + sqr(bottom));
}

VerificationCertificate base_certificate(const LinearizedProblem& p, const BlockNormBounds& b,
                                         const Interval& delta_perp, const std::string& method) {
    VerificationCertificate c;
    c.method = method;
    c.n = p.n;
    c.f = p.f;
    c.u_hat = p.u_hat;
    c.W_h = SpectralFn(p.n);
    c.delta_perp = delta_perp;
    c.bounds = b;
    c.C_P = p.constants.C_P();
    c.C_4 = p.constants.C_4();
    c.C_N = p.constants.C_N(p.n);
    c.K = l_inverse_norm(b);
    c.ritz_C = ritz_error_constant(p, b);
    return c;
}

}  // namespace

SpectralFn default_seed(const Nonlinearity& f, int n) {
    SpectralFn s(n);
    if (f.c2 > 0.0 && f.c0 == 0.0 && f.c1 == 0.0) s(1, 1) = Interval(140.0 * 140.0 / 45.0 / f.c2);
    return s;
}

IVector galerkin_residual(const Nonlinearity& f, const IVector& c, int n) {
    const SpectralFn u = SpectralFn::from_vector(n, c);
    return stiffness_2d(n) * c - project_psi(f.value(u), n);
}

namespace {

IMatrix galerkin_jacobian(const Nonlinearity& f, const IVector& c, int n) {
    const SpectralFn u = SpectralFn::from_vector(n, c);
    return stiffness_2d(n) - weighted_gram(f.derivative(u), n);
}

}  // namespace

SpectralFn galerkin_approx(const Nonlinearity& f, int n, const std::optional<SpectralFn>& seed,
                           const NewtonOptions& opt) {
    if (n < 1) throw DimensionError("galerkin_approx: N must be >= 1");
    SpectralFn s = seed ? *seed : default_seed(f, n);
    if (s.n() != n) throw DimensionError("galerkin_approx: seed degree mismatch");
    Eigen::VectorXd c = s.mid_vector();
    for (int step = 0; step <= opt.max_steps; ++step) {
        const IVector ci = ivec(c);
        const Eigen::VectorXd r = mid(galerkin_residual(f, ci, n));
        if (!r.allFinite()) break;
        if (r.norm() <= opt.rel_tol * c.norm()) return SpectralFn::from_point(n, c);
        if (step == opt.max_steps) break;
        const Eigen::MatrixXd j = galerkin_jacobian(f, ci, n).mid();
        c -= j.partialPivLu().solve(r);
        if (!c.allFinite()) break;
    }
    throw std::runtime_error("galerkin_approx: Newton did not converge in " + std::to_string(opt.max_steps) +
                             " steps; try a different seed");
}

SpectralFn enclose_approx(const Nonlinearity& f, const SpectralFn& u0, const InflationOptions& opt) {
    const int n = u0.n();
    const VectorMap fm = [&f, n](const IVector& c) { return galerkin_residual(f, c, n); };
    const JacobianMap jm = [&f, n](const IVector& c) { return galerkin_jacobian(f, c, n); };
    const Enclosure e = krawczyk_solve(fm, jm, u0.mid_vector(), opt);
    return SpectralFn::from_vector(n, e.value);
}

Interval residual_l2(const SpectralFn& u_hat, const Nonlinearity& f) {
    return l2_norm(u_hat.laplacian() + f.value(u_hat));
}

Interval residual_tail(const SpectralFn& u_hat, const Nonlinearity& f, const Interval& C_N) {
    return C_N * residual_l2(u_hat, f);
}

NonlinearImage nonlinear_image(const CandidateSet& w, const Nonlinearity& f, const Interval& C_N,
                               const Interval& C_4, const LinfOptions& linf) {
    const int n = w.W_h.n();
    const Interval c2(f.c2), ac2(std::fabs(f.c2));
    const Interval alpha(w.alpha.hi());
    const PSeries2 wp = w.W_h.to_p();
    const PSeries2 w2 = wp * wp;
    NonlinearImage r;
    r.poly = (-c2) * w2;
    r.projected = project_psi(r.poly, n);
    r.wh_inf = Interval(0.0, linf_ub(wp, linf));
    r.poly_l2 = ac2 * l2_norm(w2);
    r.cross = I(2.0) * ac2 * Interval(r.wh_inf.hi()) * C_N * alpha;
    r.tail_sq = ac2 * sqr(C_4) * sqr(alpha);
    return r;
}

ResidualImage residual_image(const Interval& h12, const Interval& h22, const Interval& r_perp) {
    return {h12 * r_perp, h22 * r_perp};
}

VerificationCertificate fixed_point_verify(const LinearizedProblem& p, const BlockNormBounds& b,
                                           const Interval& delta_perp, const FixedPointOptions& opt) {
    VerificationCertificate cert = base_certificate(p, b, delta_perp, "fixed-point");
    cert.residual_l2 = residual_l2(p.u_hat, p.f);
    const std::size_t dim = static_cast<std::size_t>(p.n * p.n);
    const Interval s = b.tail_factor;
    const Interval C_N = p.C_N;

    const IVector zl2 = row_norms(p.Ginv, p.M);
    IVector coupling;
    if (opt.box_conversion == "functional") {
        coupling = C_N * row_norms(p.Ginv, p.Q);
    } else if (opt.box_conversion == "cauchy-schwarz") {
        const IMatrix linv = verified_inverse(p.L);
        coupling.resize(dim);
        for (std::size_t i = 0; i < dim; ++i) coupling[i] = b.K_T * b.tau_Y * sqrt(nonneg(linv(i, i)));
    } else {
        throw std::invalid_argument("unknown box conversion: " + opt.box_conversion);
    }

    struct Image {
        SpectralFn W;
        Interval alpha;
    };
    const auto image = [&](const CandidateSet& w) {
        const NonlinearImage g = nonlinear_image(w, p.f, C_N, p.C_4, opt.linf);
        IVector v = p.Ginv * g.projected;
        const Interval spread = g.cross + g.tail_sq;
        for (std::size_t i = 0; i < dim; ++i) {
            const double e = (spread * zl2[i]).hi();
            v[i] = v[i] + Interval(-e, e);
        }
        const Interval b_norm = delta_perp + C_N * (g.poly_l2 + g.cross + g.tail_sq);
        const Interval zv = C_N * sqrt(upper_point(quad_form_ub(p.Q, v)));
        const Interval alpha_new = upper_point((s * (b_norm + zv)).hi());
        for (std::size_t i = 0; i < dim; ++i) {
            const double e = (coupling[i] * alpha_new).hi();
            v[i] = v[i] + Interval(-e, e);
        }
        return Image{SpectralFn::from_vector(p.n, v), alpha_new};
    };
    const auto finish = [&](const Image& img, const CandidateSet& cand) {
        cert.W_h = img.W;
        cert.alpha = img.alpha;
        cert.sup_wh = Interval(h10_norm(img.W).hi());
        cert.rho = sqrt(sqr(cert.sup_wh) + sqr(cert.alpha));
        const Interval rho_cand = sqrt(sqr(Interval(h10_norm(cand.W_h).hi())) + sqr(Interval(cand.alpha.hi())));
        cert.omega = block_omega(b, p.C_P, C_N, p.C_4, p.f.c2);
        const Interval lip = cert.omega * rho_cand;
        if (lip.hi() < 1.0) {
            cert.status = "verified-unique";
            cert.message = "inclusion with contraction bound " + fmt(lip.hi());
        } else {
            cert.status = "verified";
            cert.message = "inclusion; contraction bound " + fmt(lip.hi()) + " >= 1";
        }
    };

    CandidateSet cand{SpectralFn(p.n), Interval(0.0)};
    Image img = image(cand);
    if (p.f.is_linear()) {
        // The image does not depend on w: it is the unique solution set.
        cert.iterations.push_back({0, rad(img.W.to_vector()).maxCoeff(), img.alpha.hi(), true});
        finish(img, CandidateSet{img.W, img.alpha});
        cert.status = "verified-unique";
        cert.message = "linear problem: image independent of the candidate";
        return cert;
    }
    for (int it = 1; it <= opt.max_iterations && std::isfinite(img.alpha.hi()); ++it) {
        CandidateSet next{SpectralFn(p.n), Interval(0.0)};
        for (int i = 1; i <= p.n; ++i)
            for (int j = 1; j <= p.n; ++j)
                next.W_h(i, j) = inflate_about_mid(img.W(i, j), opt.radius_inflation, opt.absolute_inflation);
        next.alpha = Interval(rnd::add_up(rnd::mul_up(img.alpha.hi(), opt.alpha_inflation), opt.absolute_inflation));
        cand = next;
        img = image(cand);
        const bool ok = interior_of(img.W.to_vector(), cand.W_h.to_vector()) && img.alpha.hi() < cand.alpha.lo();
        cert.iterations.push_back({it, rad(img.W.to_vector()).maxCoeff(), img.alpha.hi(), ok});
        if (!std::isfinite(img.alpha.hi())) break;
        if (ok) {
            finish(img, cand);
            return cert;
        }
    }
    cert.W_h = img.W;
    cert.alpha = img.alpha;
    cert.status = "inconclusive";
    cert.message = "no inclusion after " + std::to_string(opt.max_iterations) + " iterations";
    if (std::isfinite(img.alpha.hi())) {
        cert.sup_wh = Interval(h10_norm(img.W).hi());
        cert.rho = sqrt(sqr(cert.sup_wh) + sqr(cert.alpha));
    }
    return cert;
}

KantorovichResult kantorovich_radius(const Interval& beta, const Interval& omega) {
    if (beta.lo() < 0.0 || omega.lo() < 0.0) throw std::invalid_argument("kantorovich: beta and omega must be >= 0");
    KantorovichResult r;
    r.beta_omega = beta * omega;
    r.uniqueness = I(2.0) * beta;
    if (!(r.beta_omega.hi() < 0.5)) {
        r.status = "failed-hypothesis";
        r.rho = Interval(0.0, INFINITY);
        return r;
    }
    r.status = "verified-unique";
    r.rho = I(2.0) * beta / (I(1.0) + sqrt(I(1.0) - I(2.0) * r.beta_omega));
    return r;
}

VerificationCertificate kantorovich_verify(const LinearizedProblem& p, const BlockNormBounds& b,
                                           const Interval& delta_perp, KantorovichMode mode) {
    VerificationCertificate cert =
        base_certificate(p, b, delta_perp, mode == KantorovichMode::Block ? "kantorovich" : "in-classic");
    cert.residual_l2 = residual_l2(p.u_hat, p.f);
    if (mode == KantorovichMode::Block) {
        const ResidualImage ri = residual_image(b.h12, b.h22, delta_perp);
        cert.beta = sqrt(sqr(ri.finite) + sqr(ri.tail));
        cert.omega = block_omega(b, p.C_P, p.C_N, p.C_4, p.f.c2);
    } else {
        cert.beta = cert.K * delta_perp;
        cert.omega = cert.K * I(2.0 * std::fabs(p.f.c2)) * sqr(p.C_4) * p.C_P;
    }
    const KantorovichResult r = kantorovich_radius(cert.beta, cert.omega);
    cert.status = r.status;
    cert.rho = r.rho;
    cert.message = "beta*omega = " + fmt(r.beta_omega.hi());
    if (r.status == "failed-hypothesis") cert.message += " >= 1/2";
    return cert;
}

}  // namespace sproof
