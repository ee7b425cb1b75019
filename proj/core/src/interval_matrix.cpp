#include "sproof/interval_matrix.hpp"

#include <cfloat>
#include <string>

namespace sproof {

namespace {

constexpr double kUnitRoundoff = 0x1p-53;
constexpr double kEta = 0x1p-1074;  // smallest subnormal

void require_same_shape(const IMatrix& a, const IMatrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError(std::string(what) + ": shape mismatch");
}

// gamma_k = k u / (1 - k u), rounded up.
double gamma_up(std::size_t k) {
    const double ku = rnd::mul_up(static_cast<double>(k), kUnitRoundoff);
    if (ku >= 0.5) throw DimensionError("inner dimension too large for the product error bound");
    return rnd::div_up(ku, rnd::sub_down(1.0, ku));
}

// Upper bound of the exact value of a nonnegative GEMM from its floating result.
// Underflow in k products adds at most k*eta; relative error at most gamma_k.
Eigen::MatrixXd nonneg_gemm_ub(const Eigen::MatrixXd& p, const Eigen::MatrixXd& q) {
    const std::size_t k = static_cast<std::size_t>(p.cols());
    const double g = rnd::add_up(1.0, rnd::mul_up(2.0, gamma_up(k + 1)));
    const double under = rnd::mul_up(static_cast<double>(k), kEta);
    Eigen::MatrixXd z = p * q;
    for (Eigen::Index i = 0; i < z.size(); ++i) z.data()[i] = rnd::mul_up(rnd::add_up(z.data()[i], under), g);
    return z;
}

bool all_finite(const IMatrix& a) {
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!std::isfinite(a(i, j).lo()) || !std::isfinite(a(i, j).hi())) return false;
    return true;
}

}  // namespace

IMatrix::IMatrix(std::size_t rows, std::size_t cols, const Interval& fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
    if (rows == 0 || cols == 0) throw DimensionError("matrix dimensions must be positive");
}

IMatrix::IMatrix(const Eigen::MatrixXd& point) : IMatrix(point.rows(), point.cols()) {
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = Interval(point(i, j));
}

IMatrix IMatrix::from_mid_rad(const Eigen::MatrixXd& mid, const Eigen::MatrixXd& rad) {
    IMatrix r(mid.rows(), mid.cols());
    for (std::size_t i = 0; i < r.rows_; ++i)
        for (std::size_t j = 0; j < r.cols_; ++j)
            r(i, j) = Interval(rnd::sub_down(mid(i, j), rad(i, j)), rnd::add_up(mid(i, j), rad(i, j)));
    return r;
}

IMatrix IMatrix::identity(std::size_t n) {
    IMatrix r(n, n);
    for (std::size_t i = 0; i < n; ++i) r(i, i) = Interval(1.0);
    return r;
}

Eigen::MatrixXd IMatrix::mid() const {
    Eigen::MatrixXd m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).mid();
    return m;
}

Eigen::MatrixXd IMatrix::rad() const {
    Eigen::MatrixXd m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).rad();
    return m;
}

Eigen::MatrixXd IMatrix::mag() const {
    Eigen::MatrixXd m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).mag();
    return m;
}

IMatrix IMatrix::transpose() const {
    IMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IVector IMatrix::row(std::size_t i) const {
    return IVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

IVector IMatrix::col(std::size_t j) const {
    IVector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

IVector IMatrix::diagonal() const {
    const std::size_t n = std::min(rows_, cols_);
    IVector d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = (*this)(i, i);
    return d;
}

IVector ivec(const Eigen::VectorXd& v) {
    IVector r(static_cast<std::size_t>(v.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = Interval(v(static_cast<Eigen::Index>(i)));
    return r;
}

Eigen::VectorXd mid(const IVector& v) {
    Eigen::VectorXd r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r(static_cast<Eigen::Index>(i)) = v[i].mid();
    return r;
}

Eigen::VectorXd rad(const IVector& v) {
    Eigen::VectorXd r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r(static_cast<Eigen::Index>(i)) = v[i].rad();
    return r;
}

IVector operator+(const IVector& a, const IVector& b) {
    if (a.size() != b.size()) throw DimensionError("vector add: size mismatch");
    IVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

IVector operator-(const IVector& a, const IVector& b) {
    if (a.size() != b.size()) throw DimensionError("vector sub: size mismatch");
    IVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

IVector operator*(const Interval& s, const IVector& a) {
    IVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

Interval dot(const IVector& a, const IVector& b) {
    if (a.size() != b.size()) throw DimensionError("dot: size mismatch");
    Interval s(0.0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

IMatrix operator+(const IMatrix& a, const IMatrix& b) {
    require_same_shape(a, b, "matrix add");
    IMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
    return r;
}

IMatrix operator-(const IMatrix& a, const IMatrix& b) {
    require_same_shape(a, b, "matrix sub");
    IMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
    return r;
}

IMatrix operator*(const Interval& s, const IMatrix& a) {
    IMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = s * a(i, j);
    return r;
}

IMatrix matmul_naive(const IMatrix& a, const IMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("matmul: inner dimension mismatch");
    IMatrix r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Interval s(0.0);
            for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
            r(i, j) = s;
        }
    return r;
}

IMatrix operator*(const IMatrix& a, const IMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("matmul: inner dimension mismatch");
    if (!all_finite(a) || !all_finite(b)) return matmul_naive(a, b);

    const Eigen::MatrixXd ma = a.mid(), ra = a.rad(), mb = b.mid(), rb = b.rad();
    const Eigen::MatrixXd c = ma * mb;
    const Eigen::MatrixXd ama = ma.cwiseAbs();
    Eigen::MatrixXd amb_rb = mb.cwiseAbs();
    for (Eigen::Index i = 0; i < amb_rb.size(); ++i) amb_rb.data()[i] = rnd::add_up(amb_rb.data()[i], rb.data()[i]);

    const std::size_t k = a.cols();
    const double g = gamma_up(k);
    const double under = rnd::mul_up(static_cast<double>(k), kEta);
    const Eigen::MatrixXd x = nonneg_gemm_ub(ama, mb.cwiseAbs());
    const bool ra_zero = ra.isZero(0.0), rb_zero = rb.isZero(0.0);
    Eigen::MatrixXd y = Eigen::MatrixXd::Zero(c.rows(), c.cols());
    if (!rb_zero) y = nonneg_gemm_ub(ama, rb);
    Eigen::MatrixXd y2;
    if (!ra_zero) y2 = nonneg_gemm_ub(ra, amb_rb);

    IMatrix r(a.rows(), b.cols());
    for (Eigen::Index i = 0; i < c.rows(); ++i)
        for (Eigen::Index j = 0; j < c.cols(); ++j) {
            double rr = rnd::add_up(rnd::mul_up(g, x(i, j)), under);
            rr = rnd::add_up(rr, y(i, j));
            if (!ra_zero) rr = rnd::add_up(rr, y2(i, j));
            r(i, j) = Interval(rnd::sub_down(c(i, j), rr), rnd::add_up(c(i, j), rr));
        }
    return r;
}

IVector operator*(const IMatrix& a, const IVector& x) {
    if (a.cols() != x.size()) throw DimensionError("matvec: size mismatch");
    IVector r(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Interval s(0.0);
        for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * x[k];
        r[i] = s;
    }
    return r;
}

double norm1_ub(const IMatrix& a) {
    double best = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.rows(); ++i) s = rnd::add_up(s, a(i, j).mag());
        best = std::fmax(best, s);
    }
    return best;
}

double norm_inf_ub(const IMatrix& a) {
    double best = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) s = rnd::add_up(s, a(i, j).mag());
        best = std::fmax(best, s);
    }
    return best;
}

bool subset_of(const IVector& a, const IVector& b) {
    if (a.size() != b.size()) throw DimensionError("subset: size mismatch");
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].subset_of(b[i])) return false;
    return true;
}

bool interior_of(const IVector& a, const IVector& b) {
    if (a.size() != b.size()) throw DimensionError("interior: size mismatch");
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].interior_of(b[i])) return false;
    return true;
}

IVector hull(const IVector& a, const IVector& b) {
    if (a.size() != b.size()) throw DimensionError("hull: size mismatch");
    IVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = hull(a[i], b[i]);
    return r;
}

}  // namespace sproof
