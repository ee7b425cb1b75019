// Acceptance checks: one PASS/FAIL/SKIP line per criterion.
// Usage: acceptance [--long]
#include <gmpxx.h>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "oracle.hpp"
#include "sproof/legendre.hpp"
#include "sproof/linalg.hpp"
#include "sproof/report.hpp"
#include "sproof/verifier.hpp"

using namespace sproof;

namespace {

enum class Outcome { Pass, Fail, Skip };

struct Result {
    Outcome outcome;
    std::string detail;
};

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

std::string g17(double x) { return fmt("%.17g", x); }

// ---------------------------------------------------------------- 1, 3

struct N10Runs {
    PipelineResult result;
    const VerificationCertificate* fixed_point = nullptr;
    const VerificationCertificate* in_classic = nullptr;
};

const N10Runs& n10() {
    static N10Runs r = [] {
        N10Runs x;
        RunConfig c;
        c.n = 10;
        c.method = "all";
        x.result = run_pipeline(c);
        for (const auto& run : x.result.runs) {
            if (run.cert.method == "fixed-point") x.fixed_point = &run.cert;
            if (run.cert.method == "in-classic") x.in_classic = &run.cert;
        }
        return x;
    }();
    return r;
}

Result criterion1() {
    const auto& r = n10();
    if (!r.fixed_point) return {Outcome::Fail, "no fixed-point run: " + r.result.error};
    const auto& c = *r.fixed_point;
    const bool ok = c.verified() && c.rho.hi() <= 0.6 && c.alpha.hi() <= 0.2 && c.sup_wh.hi() <= 0.62;
    std::string d = "status=" + c.status + " rho<=" + g17(c.rho.hi()) + " alpha<=" + g17(c.alpha.hi()) +
                    " sup|W_h|<=" + g17(c.sup_wh.hi());
    return {ok ? Outcome::Pass : Outcome::Fail, d};
}

Result criterion3() {
    const auto& r = n10();
    if (!r.fixed_point || !r.in_classic) return {Outcome::Fail, "missing runs: " + r.result.error};
    const auto& in = *r.in_classic;
    const auto& fp = *r.fixed_point;
    const double ref = 1.4392104268509974;
    const bool window = in.verified() && in.rho.hi() >= ref / 2 && in.rho.lo() <= ref * 2;
    const bool order = in.verified() && fp.verified() && in.rho.lo() > fp.rho.hi();
    std::string d = "rho_IN in " + g17(in.rho.lo()) + ".." + g17(in.rho.hi()) + " (window " + g17(ref / 2) + ".." +
                    g17(ref * 2) + (window ? " met" : " NOT met") + "), rho_IN > rho_fp " +
                    (order ? "holds" : "FAILS") + " (rho_fp<=" + g17(fp.rho.hi()) + ")";
    return {window && order ? Outcome::Pass : Outcome::Fail, d};
}

// ---------------------------------------------------------------- 2

struct TableEntry {
    int i, j;
    double lo, hi;
};

// Tabulated enclosures at N = 10; the midpoint of each must lie in the computed enclosure.
const TableEntry kTable[] = {
    {1, 1, 366.41347081895184, 366.41347081895185},   {1, 3, -152.70136885545534, -152.70136885545533},
    {1, 5, 51.382705998217821, 51.382705998217822},   {1, 7, -10.392549718360467, -10.392549718360466},
    {1, 9, 1.9380281340343454, 1.9380281340343455},   {3, 1, -152.70136885545534, -152.70136885545533},
    {3, 3, 106.20657076035649, 106.2065707603565},    {3, 5, -47.023341096245762, -47.023341096245761},
    {3, 7, 11.162739755211422, 11.162739755211423},   {3, 9, -2.6041048653346190, -2.6041048653346189},
    {5, 1, 51.382705998217821, 51.382705998217822},   {5, 3, -47.023341096245762, -47.023341096245761},
    {5, 5, 23.641006455857048, 23.641006455857049},   {5, 7, -6.3938382475479739, -6.3938382475479738},
    {5, 9, 1.6155288237675205, 1.6155288237675206},   {7, 1, -10.392549718360467, -10.392549718360466},
    {7, 3, 11.162739755211422, 11.162739755211423},   {7, 5, -6.3938382475479739, -6.3938382475479738},
    {7, 7, 2.1188319066907441, 2.1188319066907442},   {7, 9, -0.60157547075875415, -0.60157547075875414},
    {9, 1, 1.9380281340343454, 1.9380281340343455},   {9, 3, -2.6041048653346190, -2.6041048653346189},
    {9, 5, 1.6155288237675205, 1.6155288237675206},   {9, 7, -0.60157547075875414, -0.60157547075875414},
    {9, 9, 0.19637850130539317, 0.19637850130539318},
};

Result criterion2() {
    const auto& r = n10();
    if (!r.fixed_point) return {Outcome::Fail, "no run: " + r.result.error};
    const SpectralFn& u = r.fixed_point->u_hat;
    int contained = 0;
    std::string miss;
    for (const auto& e : kTable) {
        const mpq_class mid = (mpq_class(e.lo) + mpq_class(e.hi)) / 2;
        if (oracle::contains(u(e.i, e.j), mid)) ++contained;
        else miss += " (" + std::to_string(e.i) + "," + std::to_string(e.j) + ")";
    }
    const double w11 = u(1, 1).width_up();
    const int total = static_cast<int>(sizeof kTable / sizeof kTable[0]);
    const bool ok = contained == total && w11 <= 1e-10;
    return {ok ? Outcome::Pass : Outcome::Fail,
            std::to_string(contained) + "/" + std::to_string(total) + " midpoints enclosed" +
                (miss.empty() ? "" : ", missing" + miss) + "; width(u_11)=" + fmt("%.3g", w11)};
}

// ---------------------------------------------------------------- 4

// Index of (i, j) in the degree-m flattening.
std::size_t flat(int i, int j, int m) { return static_cast<std::size_t>((i - 1) * m + (j - 1)); }

Result criterion4() {
    const int n = 6, m = 2 * n;
    const IMatrix l_m = stiffness_2d(m);
    const IMatrix l_n = stiffness_2d(n);
    std::string d;
    bool ok = true;
    for (double c0 : {1.0, 5.0, 10.0, 20.0, 40.0}) {
        const Nonlinearity f{c0, 0.0, 1.0};
        const SpectralFn zero_n(n), zero_m(m);
        const SpectralFn u_hat = enclose_approx(f, galerkin_approx(f, n, zero_n));
        const LinearizedProblem p = assemble_linearization(u_hat, f, ConstantProvider());
        BlockNormBounds b;
        try {
            b = schur_bounds(p);
        } catch (const InconclusiveError&) {
            b = schur_bounds_alt(p);
        }
        const VerificationCertificate cert = fixed_point_verify(p, b, residual_tail(u_hat, f, p.C_N));
        if (!cert.verified()) {
            ok = false;
            d += " c0=" + g17(c0) + ":" + cert.status;
            continue;
        }
        // Degree-2N Galerkin solution, enclosed.
        const SpectralFn u_m = enclose_approx(f, galerkin_approx(f, m, zero_m));
        // Ritz projection onto V_N: L_N c = (grad u_m, grad psi_k), k in V_N.
        const IVector cm = u_m.to_vector();
        IVector rhs(static_cast<std::size_t>(n * n));
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                Interval s(0.0);
                for (std::size_t q = 0; q < cm.size(); ++q) s += l_m(flat(i, j, m), q) * cm[q];
                rhs[flat(i, j, n)] = s;
            }
        const IVector c = verified_solve(l_n, rhs).value;
        bool inside = true;
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                const Interval box = u_hat(i, j) + cert.W_h(i, j);
                if (!c[flat(i, j, n)].subset_of(box)) inside = false;
            }
        // ||(I - R_h) u_m||^2 = ||u_m||^2 - ||R_h u_m||^2 (Pythagoras in H10).
        const Interval full = dot(cm, l_m * cm);
        const Interval proj = dot(c, l_n * c);
        const Interval tail_sq = full - proj;
        const bool tail_ok = tail_sq.hi() <= sqr(Interval(cert.alpha.hi())).lo();
        ok = ok && inside && tail_ok;
        d += " c0=" + g17(c0) + ":" + (inside ? "box" : "BOX-MISS") + "/" +
             (tail_ok ? "tail" : "TAIL-MISS(" + fmt("%.3g", std::sqrt(std::max(tail_sq.hi(), 0.0))) + ">" +
                                     fmt("%.3g", cert.alpha.hi()) + ")");
    }
    return {ok ? Outcome::Pass : Outcome::Fail, "N=6, surrogate degree 12;" + d};
}

// ---------------------------------------------------------------- 5

Result criterion5() {
    const int n = 3, m = 6;
    const int dim = m * m;
    const Nonlinearity f{10.0, 0.0, 1.0};
    const SpectralFn u_hat = enclose_approx(f, galerkin_approx(f, n, SpectralFn(n)));
    const PSeries2 fprime = f.derivative(u_hat);

    // Exact stiffness in the degree-m flattening.
    std::vector<std::vector<mpq_class>> ls(dim, std::vector<mpq_class>(dim));
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= m; ++j)
            for (int k = 1; k <= m; ++k)
                for (int l = 1; l <= m; ++l)
                    ls[flat(i, j, m)][flat(k, l, m)] = legendre::stiffness_exact(i, k) * legendre::mass_exact(j, l) +
                                                       legendre::mass_exact(i, k) * legendre::stiffness_exact(j, l);
    std::vector<int> hs, ps;
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= m; ++j) (i <= n && j <= n ? hs : ps).push_back(static_cast<int>(flat(i, j, m)));
    const int dh = static_cast<int>(hs.size()), dp = static_cast<int>(ps.size());

    // Exact H10-orthogonal complement: phi_e = e - sum_h x_h e_h with L_hh x = L_he.
    std::vector<std::vector<mpq_class>> a(dh, std::vector<mpq_class>(dh + dp));
    for (int r = 0; r < dh; ++r) {
        for (int c = 0; c < dh; ++c) a[r][c] = ls[hs[r]][hs[c]];
        for (int c = 0; c < dp; ++c) a[r][dh + c] = ls[hs[r]][ps[c]];
    }
    for (int c = 0; c < dh; ++c) {
        int piv = c;
        while (sgn(a[piv][c]) == 0) ++piv;
        std::swap(a[piv], a[c]);
        for (int r = 0; r < dh; ++r) {
            if (r == c || sgn(a[r][c]) == 0) continue;
            const mpq_class q = a[r][c] / a[c][c];
            for (int k = c; k < dh + dp; ++k) a[r][k] -= q * a[c][k];
        }
    }
    // Rows of R: new basis vectors in standard coefficients, h block first.
    std::vector<std::vector<mpq_class>> rmat(dim, std::vector<mpq_class>(dim, 0));
    for (int r = 0; r < dh; ++r) rmat[r][hs[r]] = 1;
    for (int c = 0; c < dp; ++c) {
        rmat[dh + c][ps[c]] = 1;
        for (int r = 0; r < dh; ++r) rmat[dh + c][hs[r]] = -a[r][dh + c] / a[r][r];
    }
    IMatrix R(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) R(r, c) = oracle::enclose(rmat[r][c]);
    // L in the new basis, exact then enclosed; block diagonal by construction.
    IMatrix L(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) {
            mpq_class s = 0;
            for (int k = 0; k < dim; ++k) {
                if (sgn(rmat[r][k]) == 0) continue;
                for (int l = 0; l < dim; ++l)
                    if (sgn(rmat[c][l]) != 0) s += rmat[r][k] * ls[k][l] * rmat[c][l];
            }
            if (r < dh && c >= dh && sgn(s) != 0) return {Outcome::Fail, "complement not H10-orthogonal"};
            L(r, c) = oracle::enclose(s);
        }
    const IMatrix F = R * weighted_gram(fprime, m) * R.transpose();

    const auto block = [](const IMatrix& x, int r0, int c0, int rows, int cols) {
        IMatrix b(rows, cols);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) b(r, c) = x(r0 + r, c0 + c);
        return b;
    };
    const IMatrix Lh = block(L, 0, 0, dh, dh), Lp = block(L, dh, dh, dp, dp);
    const IMatrix Lh_inv = verified_inverse(Lh), Lp_inv = verified_inverse(Lp);
    const IMatrix T = IMatrix::identity(dh) - Lh_inv * block(F, 0, 0, dh, dh);
    const IMatrix Y = Lh_inv * block(F, 0, dh, dh, dp);
    const IMatrix Z = Lp_inv * block(F, dh, 0, dp, dh);
    const IMatrix T_inv = verified_inverse(T);
    const IMatrix S = IMatrix::identity(dp) - Lp_inv * block(F, dh, dh, dp, dp) - Z * (T_inv * Y);
    const IMatrix S_inv = verified_inverse(S);
    const IMatrix H12 = T_inv * Y * S_inv;
    const IMatrix H11 = T_inv + H12 * Z * T_inv;
    const IMatrix H21 = S_inv * Z * T_inv;
    const IMatrix& H22 = S_inv;
    const IMatrix D = L - F;

    std::mt19937_64 rng(20240601);
    std::normal_distribution<double> g;
    int agree = 0;
    double max_width = 0.0;
    for (int t = 0; t < 10; ++t) {
        Eigen::VectorXd bv(dim);
        for (int k = 0; k < dim; ++k) bv(k) = g(rng);
        const IVector b = ivec(bv);
        const IVector direct = verified_solve(D, b).value;
        IVector bh(b.begin(), b.begin() + dh), bp(b.begin() + dh, b.end());
        const IVector gh = Lh_inv * bh, gp = Lp_inv * bp;
        const IVector xh = H11 * gh + H12 * gp;
        const IVector xp = H21 * gh + H22 * gp;
        bool ok = true;
        for (int k = 0; k < dh; ++k) ok = ok && xh[k].intersects(direct[k]);
        for (int k = 0; k < dp; ++k) ok = ok && xp[k].intersects(direct[dh + k]);
        for (const auto& v : xh) max_width = std::max(max_width, v.width_up());
        for (const auto& v : xp) max_width = std::max(max_width, v.width_up());
        agree += ok;
    }
    return {agree == 10 ? Outcome::Pass : Outcome::Fail,
            std::to_string(agree) + "/10 right-hand sides agree (N=3, surrogate degree 6); max block width " +
                fmt("%.3g", max_width)};
}

// ---------------------------------------------------------------- 6

double random_double(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> mant(-1.0, 1.0);
    std::uniform_int_distribution<int> ex(-40, 40);
    return std::ldexp(mant(rng), ex(rng));
}

Result criterion6() {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    long violations = 0;
    const long cases = 1000000;
    for (long k = 0; k < cases; ++k) {
        double a1 = random_double(rng), b1 = random_double(rng);
        double a2 = a1, b2 = b1;
        if (k % 2) {
            a2 = random_double(rng);
            b2 = random_double(rng);
        }
        const Interval A(std::min(a1, a2), std::max(a1, a2)), B(std::min(b1, b2), std::max(b1, b2));
        const mpq_class x = mpq_class(A.lo()) + mpq_class(unit(rng)) * (mpq_class(A.hi()) - mpq_class(A.lo()));
        const mpq_class y = mpq_class(B.lo()) + mpq_class(unit(rng)) * (mpq_class(B.hi()) - mpq_class(B.lo()));
        switch (k % 5) {
            case 0: violations += !oracle::contains(A + B, x + y); break;
            case 1: violations += !oracle::contains(A - B, x - y); break;
            case 2: violations += !oracle::contains(A * B, x * y); break;
            case 3:
                if (!B.contains_zero()) violations += !oracle::contains(A / B, x / y);
                break;
            default: {
                const Interval s = sqrt(abs(A));
                const mpq_class ax = abs(x);
                const mpq_class lo(s.lo()), hi(s.hi());
                violations += !(cmp(lo * lo, ax) <= 0 && cmp(ax, hi * hi) <= 0);
            }
        }
    }

    // Grams against the monomial-basis symbolic oracle, N <= 6.
    long gram_bad = 0;
    for (int n = 1; n <= 6; ++n) {
        const Gram1D g1 = gram_matrices(n);
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                const auto r = static_cast<std::size_t>(i - 1), c = static_cast<std::size_t>(j - 1);
                const mpq_class s = oracle::stiffness(i, j), mm = oracle::mass(i, j);
                gram_bad += !oracle::contains(g1.stiffness(r, c), s) || !oracle::contains(g1.mass(r, c), mm);
                gram_bad += !(oracle::enclose(s).subset_of(g1.stiffness(r, c)) || g1.stiffness(r, c).width_up() <= 4e-16 * std::max(1.0, std::fabs(s.get_d())));
                gram_bad += !(oracle::enclose(mm).subset_of(g1.mass(r, c)) || g1.mass(r, c).width_up() <= 4e-16 * std::max(1.0, std::fabs(mm.get_d())));
                if (i == j) gram_bad += !oracle::contains(g1.stiffness(r, c), mpq_class(1, 2 * i + 1));
            }
        const IMatrix l2 = stiffness_2d(n), m2 = mass_2d(n);
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                for (int k = 1; k <= n; ++k)
                    for (int l = 1; l <= n; ++l) {
                        const mpq_class m = oracle::mass(i, k) * oracle::mass(j, l);
                        const mpq_class s = oracle::stiffness(i, k) * oracle::mass(j, l) + oracle::mass(i, k) * oracle::stiffness(j, l);
                        gram_bad += !oracle::contains(m2(flat(i, j, n), flat(k, l, n)), m);
                        gram_bad += !oracle::contains(l2(flat(i, j, n), flat(k, l, n)), s);
                    }
    }
    const Gram1D g2 = gram_matrices(2);
    gram_bad += !oracle::contains(g2.mass(0, 0), mpq_class(1, 30)) + !oracle::contains(g2.mass(1, 1), mpq_class(1, 210));

    // Norm and eigenvalue bounds against long double oracles.
    using MatL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
    std::normal_distribution<double> nd;
    std::uniform_int_distribution<int> dim(2, 12);
    long norm_bad = 0;
    for (int t = 0; t < 100; ++t) {
        const int n = dim(rng);
        Eigen::MatrixXd a(n, n), r(n, n);
        for (int k = 0; k < a.size(); ++k) a.data()[k] = nd(rng);
        for (int k = 0; k < r.size(); ++k) r.data()[k] = nd(rng);
        const MatL al = a.cast<long double>();
        const long double sv = Eigen::JacobiSVD<MatL>(al).singularValues()(0);
        norm_bad += static_cast<long double>(spectral_norm_ub(IMatrix(a)).ub) < sv;
        norm_bad += static_cast<long double>(spectral_norm_ub(IMatrix(a), true).ub) < sv;
        norm_bad += static_cast<long double>(norm1_ub(IMatrix(a))) < al.cwiseAbs().colwise().sum().maxCoeff();
        norm_bad += static_cast<long double>(norm_inf_ub(IMatrix(a))) < al.cwiseAbs().rowwise().sum().maxCoeff();
        const Eigen::MatrixXd s = a + a.transpose();
        const Eigen::MatrixXd b = r * r.transpose() + n * Eigen::MatrixXd::Identity(n, n);
        Eigen::GeneralizedSelfAdjointEigenSolver<MatL> es(s.cast<long double>(), b.cast<long double>());
        const EigenBounds e = gen_eig_bounds(IMatrix(s), IMatrix(b));
        norm_bad += static_cast<long double>(e.lambda_min_lb()) > es.eigenvalues()(0);
        norm_bad += static_cast<long double>(e.lambda_max_ub()) < es.eigenvalues()(n - 1);
    }
    const bool ok = violations == 0 && gram_bad == 0 && norm_bad == 0;
    return {ok ? Outcome::Pass : Outcome::Fail,
            std::to_string(cases) + " interval cases, " + std::to_string(violations) + " violations; Gram mismatches " +
                std::to_string(gram_bad) + "; norm/eigen bounds below oracle " + std::to_string(norm_bad) + "/600"};
}

// ---------------------------------------------------------------- 7

Result criterion7() {
    const KantorovichResult r = kantorovich_radius(Interval(0.1), Interval(1.0));
    const bool a = r.status == "verified-unique" && r.rho.contains(0.10557280900008414);
    const bool b = kantorovich_radius(Interval(0.5), Interval(1.0)).status == "failed-hypothesis" &&
                   kantorovich_radius(Interval(1.0), Interval(0.6)).status == "failed-hypothesis" &&
                   kantorovich_radius(Interval(0.25), Interval(2.0)).status == "failed-hypothesis";
    const KantorovichResult z = kantorovich_radius(Interval(0.1), Interval(0.0));
    const bool c = z.rho.contains(0.1) && z.rho.width_up() <= 1e-16;
    return {a && b && c ? Outcome::Pass : Outcome::Fail,
            "rho(0.1,1) in [" + g17(r.rho.lo()) + ", " + g17(r.rho.hi()) + "]; failed-hypothesis cases " +
                (b ? "ok" : "WRONG") + "; omega=0 gives beta " + (c ? "ok" : "WRONG")};
}

// ---------------------------------------------------------------- 8

Result criterion8(bool long_mode) {
    if (!long_mode) return {Outcome::Skip, "N=40 run needs --long"};
    RunConfig c;
    c.n = 40;
    const PipelineResult r = run_pipeline(c);
    if (r.runs.empty() || !r.runs[0].cert.verified())
        return {Outcome::Fail, r.runs.empty() ? r.error : r.runs[0].cert.status + ": " + r.runs[0].cert.message};
    const auto& cert = r.runs[0].cert;
    double w = 0.0;
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) w = std::max(w, cert.W_h(i, j).width_up());
    return {w <= 1e-8 ? Outcome::Pass : Outcome::Fail,
            "rho<=" + g17(cert.rho.hi()) + ", max low-mode (i,j<=3) W_h width " + fmt("%.3g", w)};
}

}  // namespace

int main(int argc, char** argv) {
    bool long_mode = false;
    for (int k = 1; k < argc; ++k)
        if (std::strcmp(argv[k], "--long") == 0) long_mode = true;

    const std::vector<std::pair<std::string, std::function<Result()>>> criteria = {
        {"1 Emden N=10 end-to-end proof", criterion1},
        {"2 u_hat enclosure fidelity", criterion2},
        {"3 IN comparison", criterion3},
        {"4 truncated-surrogate soundness", criterion4},
        {"5 block-inverse identity", criterion5},
        {"6 property suites", criterion6},
        {"7 Kantorovich arithmetic", criterion7},
        {"8 Emden N=40 (optional)", [long_mode] { return criterion8(long_mode); }},
    };
    int failures = 0;
    for (const auto& [name, fn] : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Result r;
        try {
            r = fn();
        } catch (const std::exception& e) {
            r = {Outcome::Fail, std::string("exception: ") + e.what()};
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const char* tag = r.outcome == Outcome::Pass ? "PASS" : r.outcome == Outcome::Fail ? "FAIL" : "SKIP";
        std::printf("[%s] criterion %s: %s (%.1f s)\n", tag, name.c_str(), r.detail.c_str(), s);
        std::fflush(stdout);
        failures += r.outcome == Outcome::Fail;
    }
    return failures == 0 ? 0 : 1;
}
