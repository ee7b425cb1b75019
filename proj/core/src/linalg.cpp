#include "sproof/linalg.hpp"

#include <algorithm>
#include <cfloat>
#include <sstream>

namespace sproof {

namespace {

void require_square(const IMatrix& a, const char* what) {
    if (a.rows() != a.cols()) throw DimensionError(std::string(what) + ": matrix not square");
}

Eigen::MatrixXd approximate_inverse(const Eigen::MatrixXd& m, const char* what) {
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
    const Eigen::MatrixXd r = lu.inverse();
    if (!r.allFinite()) throw SingularJacobianError(std::string(what) + ": midpoint matrix is numerically singular");
    const double rcond = lu.rcond();
    if (!(rcond > 1e-15)) {
        std::ostringstream os;
        os << what << ": midpoint matrix is numerically singular (rcond " << rcond << ")";
        throw SingularJacobianError(os.str());
    }
    return r;
}

void inflate_in_place(IMatrix& y, double e, double absolute) {
    for (std::size_t i = 0; i < y.rows(); ++i)
        for (std::size_t j = 0; j < y.cols(); ++j) {
            const Interval& v = y(i, j);
            y(i, j) = inflate(v, rnd::add_up(rnd::mul_up(e, v.mag()), absolute));
        }
}

bool interior(const IMatrix& a, const IMatrix& b) {
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!a(i, j).interior_of(b(i, j))) return false;
    return true;
}

IMatrix column(const IVector& v) {
    IMatrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
}

// Krawczyk iteration on the correction: find Y with z + C Y in int(Y).
// `cy` evaluates C(Y) Y, where C may depend on Y.
bool krawczyk_loop(const IMatrix& z, const std::function<IMatrix(const IMatrix&)>& cy,
                   const InflationOptions& opt, IMatrix& out, int& iterations) {
    IMatrix y = z;
    double e = opt.relative;
    for (int k = 0; k <= opt.max_retries; ++k) {
        inflate_in_place(y, e, opt.absolute);
        const IMatrix kk = z + cy(y);
        iterations = k + 1;
        if (interior(kk, y)) {
            out = kk;
            return true;
        }
        y = kk;
        e *= 2.0;
    }
    return false;
}

}  // namespace

IMatrix verified_solve(const IMatrix& a, const IMatrix& b, const InflationOptions& opt) {
    require_square(a, "verified_solve");
    if (b.rows() != a.rows()) throw DimensionError("verified_solve: right-hand side size mismatch");
    const std::size_t n = a.rows();
    const Eigen::MatrixXd am = a.mid();
    const Eigen::MatrixXd r = approximate_inverse(am, "verified_solve");
    const Eigen::MatrixXd bm = b.mid();
    Eigen::MatrixXd xt = r * bm;
    for (int it = 0; it < 2; ++it) xt += r * (bm - am * xt);
    if (!xt.allFinite()) throw InconclusiveError("verified_solve: approximate solution not finite");

    const IMatrix ir(r);
    const IMatrix ixt(xt);
    const IMatrix z = ir * (b - a * ixt);
    const IMatrix c = IMatrix::identity(n) - ir * a;
    IMatrix k;
    int iterations = 0;
    if (!krawczyk_loop(z, [&](const IMatrix& y) { return c * y; }, opt, k, iterations))
        throw InconclusiveError("verified_solve: residual contraction failed");
    return ixt + k;
}

Enclosure verified_solve(const IMatrix& a, const IVector& b, const InflationOptions& opt) {
    if (b.size() != a.rows()) throw DimensionError("verified_solve: right-hand side size mismatch");
    const IMatrix x = verified_solve(a, column(b), opt);
    Enclosure e;
    e.value = x.col(0);
    e.flag = EnclosureFlag::ProvedUniqueInBox;
    return e;
}

IMatrix verified_inverse(const IMatrix& a, const InflationOptions& opt) {
    require_square(a, "verified_inverse");
    return verified_solve(a, IMatrix::identity(a.rows()), opt);
}

Enclosure krawczyk_solve(const VectorMap& f, const JacobianMap& jac, const Eigen::VectorXd& x0,
                         const InflationOptions& opt) {
    const std::size_t n = static_cast<std::size_t>(x0.size());
    if (n == 0) throw DimensionError("krawczyk_solve: empty initial vector");

    Eigen::VectorXd x = x0;
    Eigen::MatrixXd r;
    for (int it = 0; it < 30; ++it) {
        const IVector xi = ivec(x);
        const IMatrix j = jac(xi);
        if (j.rows() != n || j.cols() != n) throw DimensionError("krawczyk_solve: Jacobian shape mismatch");
        r = approximate_inverse(j.mid(), "krawczyk_solve");
        const Eigen::VectorXd fx = mid(f(xi));
        if (static_cast<std::size_t>(fx.size()) != n) throw DimensionError("krawczyk_solve: F size mismatch");
        const Eigen::VectorXd dx = r * fx;
        x -= dx;
        if (!x.allFinite()) throw InconclusiveError("krawczyk_solve: Newton refinement diverged");
        if (dx.norm() <= 1e-15 * std::max(1.0, x.norm())) break;
    }
    const IVector xt = ivec(x);
    r = approximate_inverse(jac(xt).mid(), "krawczyk_solve");
    const IMatrix ir(r);
    const IMatrix z = column(-1.0 * (ir * f(xt)));
    const IMatrix id = IMatrix::identity(n);

    auto cy = [&](const IMatrix& y) {
        const IVector box = xt + y.col(0);
        const IMatrix c = id - ir * jac(box);
        return column(c * y.col(0));
    };
    IMatrix k;
    int iterations = 0;
    if (!krawczyk_loop(z, cy, opt, k, iterations))
        throw InconclusiveError("krawczyk_solve: Krawczyk inclusion test failed");
    Enclosure e;
    e.value = xt + k.col(0);
    e.flag = EnclosureFlag::ProvedUniqueInBox;
    e.iterations = iterations;
    return e;
}

double EigenBounds::min_abs_lb() const {
    double best = INFINITY;
    for (const Interval& v : values) best = std::fmin(best, v.mig());
    return best;
}

EigenBounds gen_eig_bounds(const IMatrix& a, const IMatrix& b) {
    require_square(a, "gen_eig_bounds");
    require_square(b, "gen_eig_bounds");
    if (a.rows() != b.rows()) throw DimensionError("gen_eig_bounds: size mismatch");
    const std::size_t n = a.rows();

    Eigen::MatrixXd am = a.mid(), bm = b.mid();
    am = 0.5 * (am + am.transpose()).eval();
    bm = 0.5 * (bm + bm.transpose()).eval();
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(am, bm);
    if (es.info() != Eigen::Success)
        throw InconclusiveError("gen_eig_bounds: B is not numerically positive definite");
    const IMatrix x(es.eigenvectors());
    const IMatrix xt = x.transpose();

    const IMatrix bp = xt * (b * x);
    const IMatrix ap = xt * (a * x);

    const IMatrix e = bp - IMatrix::identity(n);
    const double eps = rnd::sqrt_up(rnd::mul_up(norm1_ub(e), norm_inf_ub(e)));
    if (!(eps < 1.0)) throw InconclusiveError("gen_eig_bounds: B could not be verified positive definite");

    std::vector<double> d(n);
    IMatrix off = ap;
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = ap(i, i).mid();
        off(i, i) = ap(i, i) - Interval(d[i]);
    }
    const double weyl = rnd::sqrt_up(rnd::mul_up(norm1_ub(off), norm_inf_ub(off)));
    std::sort(d.begin(), d.end());

    const Interval theta(rnd::div_down(1.0, rnd::add_up(1.0, eps)), rnd::div_up(1.0, rnd::sub_down(1.0, eps)));
    EigenBounds out;
    out.eps = eps;
    out.weyl = weyl;
    out.values.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const Interval lam(rnd::sub_down(d[k], weyl), rnd::add_up(d[k], weyl));
        out.values.push_back(theta * lam);
    }
    return out;
}

NormBound spectral_norm_ub(const IMatrix& m, bool sharp) {
    NormBound nb;
    nb.ub = rnd::sqrt_up(rnd::mul_up(norm1_ub(m), norm_inf_ub(m)));
    nb.method = "sqrt(norm1*norminf)";
    if (sharp) {
        try {
            const IMatrix mtm = m.transpose() * m;
            const EigenBounds eb = gen_eig_bounds(mtm, IMatrix::identity(m.cols()));
            const double s = rnd::sqrt_up(std::fmax(eb.lambda_max_ub(), 0.0));
            if (s < nb.ub) {
                nb.ub = s;
                nb.method = "sqrt(lambda_max(M^T M))";
            }
        } catch (const InconclusiveError&) {
        }
    }
    return nb;
}

}  // namespace sproof
