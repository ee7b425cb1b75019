#include "sproof/operator_blocks.hpp"

#include <cmath>
#include <sstream>

#include "sproof/linalg.hpp"

namespace sproof {

namespace {

Interval I(double x) { return Interval(x); }

PSeries2 constant_series(double c) {
    PSeries2 p(0);
    p(0, 0) = Interval(c);
    return p;
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

}  // namespace

Nonlinearity Nonlinearity::parse(const std::string& spec) {
    if (spec == "emden") return emden();
    if (spec.rfind("poly:", 0) != 0) throw std::invalid_argument("unknown problem: " + spec);
    std::vector<double> c;
    std::istringstream is(spec.substr(5));
    std::string tok;
    while (std::getline(is, tok, ',')) {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size() || !std::isfinite(v)) throw std::invalid_argument("bad coefficient: " + tok);
        c.push_back(v);
    }
    if (c.empty() || c.size() > 3)
        throw std::invalid_argument("poly: expects 1 to 3 coefficients c0,c1,c2 (degree <= 2 supported)");
    c.resize(3, 0.0);
    return {c[0], c[1], c[2]};
}

std::string Nonlinearity::describe() const {
    if (c0 == 0.0 && c1 == 0.0 && c2 == 1.0) return "emden";
    return "poly:" + fmt(c0) + "," + fmt(c1) + "," + fmt(c2);
}

PSeries2 Nonlinearity::value(const SpectralFn& u) const {
    const PSeries2 p = u.to_p();
    PSeries2 r = constant_series(c0) + Interval(c1) * p;
    if (c2 != 0.0) r = r + Interval(c2) * (p * p);
    return r;
}

PSeries2 Nonlinearity::derivative(const SpectralFn& u) const {
    return constant_series(c1) + Interval(2.0 * c2) * u.to_p();
}

LinearizedProblem assemble_linearization(const SpectralFn& u_hat, const Nonlinearity& f,
                                         const ConstantProvider& constants, const LinfOptions& linf) {
    for (int i = 1; i <= u_hat.n(); ++i)
        for (int j = 1; j <= u_hat.n(); ++j)
            if (!std::isfinite(u_hat(i, j).lo()) || !std::isfinite(u_hat(i, j).hi()))
                throw std::invalid_argument("assemble_linearization: non-finite coefficient");
    LinearizedProblem p;
    p.u_hat = u_hat;
    p.f = f;
    p.n = u_hat.n();
    p.constants = constants;
    p.C_P = constants.C_P().value;
    p.C_4 = constants.C_4().value;
    p.C_N = constants.C_N(p.n).value;

    p.L = stiffness_2d(p.n);
    p.M = mass_2d(p.n);
    p.fprime = f.derivative(u_hat);
    p.G = p.L - weighted_gram(p.fprime, p.n);
    p.Q = weighted_gram(p.fprime * p.fprime, p.n);
    p.fprime_inf = Interval(0.0, linf_ub(p.fprime, linf));
    p.u_inf = Interval(0.0, linf_ub(u_hat.to_p(), linf));
    try {
        p.Ginv = verified_inverse(p.G);
    } catch (const InconclusiveError& e) {
        throw InconclusiveError(std::string("T nonsingularity not verified: ") + e.what());
    }
    return p;
}

Interval t_inverse_norm(const IMatrix& g, const IMatrix& l) {
    const EigenBounds eb = gen_eig_bounds(g, l);
    Interval m = abs(eb.values.front());
    for (const Interval& v : eb.values) m = min(m, abs(v));
    if (!(m.lo() > 0.0)) throw InconclusiveError("t_inverse_norm: eigenvalue enclosure contains zero");
    return I(1.0) / m;
}

Interval t_inverse_norm(const LinearizedProblem& p) { return t_inverse_norm(p.G, p.L); }

TailBounds tail_bounds(const LinearizedProblem& p) {
    TailBounds t;
    const Interval fp(p.fprime_inf.hi());
    t.kappa_pp = fp * sqr(p.C_N);
    t.tau_Y = fp * p.C_N * p.C_P;
    t.tau_Z_fallback = fp * p.C_P * p.C_N;
    double lmax = INFINITY;
    try {
        lmax = gen_eig_bounds(p.Q, p.L).lambda_max_ub();
    } catch (const InconclusiveError&) {
    }
    if (std::isfinite(lmax)) {
        t.tau_Z_matrix = p.C_N * sqrt(Interval(std::max(lmax, 0.0)));
    } else {
        t.tau_Z_matrix = Interval::entire();
    }
    if (t.tau_Z_matrix.hi() <= t.tau_Z_fallback.hi()) {
        t.tau_Z = t.tau_Z_matrix;
        t.tau_Z_chain = "C_N*sqrt(lambda_max(Q,L))";
    } else {
        t.tau_Z = t.tau_Z_fallback;
        t.tau_Z_chain = "||f'(u)||_inf*C_P*C_N";
    }
    return t;
}

BlockNormBounds assemble_schur_kappa(const Interval& K_T, const Interval& tau_Y, const Interval& tau_Z,
                                     const Interval& kappa_pp, const Interval& kappa) {
    BlockNormBounds b;
    b.variant = "schur";
    b.K_T = K_T;
    b.tau_Y = tau_Y;
    b.tau_Z = tau_Z;
    b.kappa_pp = kappa_pp;
    b.kappa = kappa;
    if (!(kappa.hi() < 1.0))
        throw InconclusiveError("schur_bounds: kappa = " + fmt(kappa.hi()) + " >= 1, S invertibility not established");
    const Interval s = I(1.0) / (I(1.0) - kappa);
    b.tail_factor = s;
    b.h11 = K_T + K_T * tau_Y * s * tau_Z * K_T;
    b.h12 = K_T * tau_Y * s;
    b.h21 = s * tau_Z * K_T;
    b.h22 = s;
    b.valid = true;
    b.chains["kappa"] = "kappa_pp + tau_Z*K_T*tau_Y";
    b.chains["s_inv"] = "1/(1-kappa)";
    return b;
}

BlockNormBounds assemble_schur(const Interval& K_T, const Interval& tau_Y, const Interval& tau_Z,
                               const Interval& kappa_pp) {
    return assemble_schur_kappa(K_T, tau_Y, tau_Z, kappa_pp, kappa_pp + tau_Z * K_T * tau_Y);
}

BlockNormBounds assemble_schur_alt(const Interval& K_T, const Interval& tau_Y, const Interval& tau_Z,
                                   const Interval& kappa_pp) {
    BlockNormBounds b;
    b.variant = "schur-alt";
    b.K_T = K_T;
    b.tau_Y = tau_Y;
    b.tau_Z = tau_Z;
    b.kappa_pp = kappa_pp;
    b.kappa = kappa_pp + tau_Z * K_T * tau_Y;
    if (!(kappa_pp.hi() < 1.0))
        throw InconclusiveError("schur_bounds_alt: kappa_pp = " + fmt(kappa_pp.hi()) + " >= 1");
    b.g_inv = I(1.0) / (I(1.0) - kappa_pp);
    b.eta = K_T * tau_Y * tau_Z * b.g_inv;
    if (!(b.eta.hi() < 1.0))
        throw InconclusiveError("schur_bounds_alt: eta = " + fmt(b.eta.hi()) + " >= 1, S_h invertibility not established");
    b.sh_inv = K_T / (I(1.0) - b.eta);
    b.h11 = b.sh_inv;
    b.h12 = b.sh_inv * tau_Y * b.g_inv;
    b.h21 = b.g_inv * tau_Z * b.sh_inv;
    b.h22 = b.g_inv + b.g_inv * tau_Z * b.sh_inv * tau_Y * b.g_inv;
    b.tail_factor = b.g_inv / (I(1.0) - b.eta);
    b.valid = true;
    b.chains["g_inv"] = "1/(1-kappa_pp)";
    b.chains["eta"] = "K_T*tau_Y*tau_Z*g_inv";
    b.chains["sh_inv"] = "K_T/(1-eta)";
    return b;
}

namespace {

void add_problem_chains(BlockNormBounds& b, const TailBounds& t) {
    b.chains["K_T"] = "1/min|mu|, mu in eig(G, L)";
    b.chains["kappa_pp"] = "||f'(u)||_inf*C_N^2";
    b.chains["tau_Y"] = "||f'(u)||_inf*C_N*C_P";
    b.chains["tau_Z"] = t.tau_Z_chain;
}

}  // namespace

BlockNormBounds schur_bounds(const LinearizedProblem& p) {
    const Interval kt = t_inverse_norm(p);
    const TailBounds t = tail_bounds(p);
    BlockNormBounds b = assemble_schur(kt, t.tau_Y, t.tau_Z, t.kappa_pp);
    add_problem_chains(b, t);
    return b;
}

BlockNormBounds schur_bounds_alt(const LinearizedProblem& p) {
    const Interval kt = t_inverse_norm(p);
    const TailBounds t = tail_bounds(p);
    BlockNormBounds b = assemble_schur_alt(kt, t.tau_Y, t.tau_Z, t.kappa_pp);
    add_problem_chains(b, t);
    return b;
}

Interval l_inverse_norm(const BlockNormBounds& b) {
    if (!b.valid) throw InconclusiveError("l_inverse_norm: block bounds not valid");
    IMatrix h(2, 2);
    h(0, 0) = Interval(b.h11.hi());
    h(0, 1) = Interval(b.h12.hi());
    h(1, 0) = Interval(b.h21.hi());
    h(1, 1) = Interval(b.h22.hi());
    return Interval(spectral_norm_ub(h, true).ub);
}

Interval ritz_error_constant(const BlockNormBounds& b, const Interval& C_N, const Interval& C_P,
                             const Interval& fprime_inf) {
    if (!b.valid) throw InconclusiveError("ritz_error_constant: block bounds not valid");
    const Interval fp(fprime_inf.hi());
    if (b.variant == "schur-alt")
        return b.g_inv * C_N * (I(1.0) + fp * sqr(C_P) * b.sh_inv * (I(1.0) + fp * sqr(C_N) * b.g_inv));
    return b.tail_factor * C_N * (I(1.0) + fp * sqr(C_P) * b.K_T);
}

Interval ritz_error_constant(const LinearizedProblem& p, const BlockNormBounds& b) {
    return ritz_error_constant(b, p.C_N, p.C_P, p.fprime_inf);
}

}  // namespace sproof
