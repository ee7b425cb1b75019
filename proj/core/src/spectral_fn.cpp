#include "sproof/spectral_fn.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>
#include <map>
#include <sstream>

#include "json.hpp"
#include "sproof/legendre.hpp"

namespace sproof {

namespace {

std::size_t sz(int v) { return static_cast<std::size_t>(v); }

IMatrix embed(const IMatrix& m, std::size_t size) {
    IMatrix r(size, size);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
    return r;
}

// P-basis coefficients of psi_i' = -P_i (rows i-1, columns 0..n+1).
IMatrix dpsi_to_p(int n) {
    IMatrix d(sz(n), sz(n + 2));
    for (int i = 1; i <= n; ++i) d(sz(i - 1), sz(i)) = Interval(-1.0);
    return d;
}

const Interval kHalf(0.5);
// Cells narrower than this are never refined.
constexpr double kAbsTol = 1e-280;

// One de Casteljau split at t = 1/2 of every row of a Bernstein matrix.
void split_rows(const IMatrix& b, IMatrix& left, IMatrix& right) {
    const std::size_t d = b.cols() - 1;
    left = IMatrix(b.rows(), b.cols());
    right = IMatrix(b.rows(), b.cols());
    std::vector<Interval> c(d + 1);
    for (std::size_t m = 0; m < b.rows(); ++m) {
        for (std::size_t j = 0; j <= d; ++j) c[j] = b(m, j);
        left(m, 0) = c[0];
        right(m, d) = c[d];
        for (std::size_t r = 1; r <= d; ++r) {
            for (std::size_t j = 0; j + r <= d; ++j) c[j] = kHalf * (c[j] + c[j + 1]);
            left(m, r) = c[0];
            right(m, d - r) = c[d - r];
        }
    }
}

// Bernstein matrices of P_0..P_d on dyadic cells [idx/2^level, (idx+1)/2^level].
class DyadicBernstein {
public:
    explicit DyadicBernstein(int d) : d_(d) { nodes_[{0, 0}] = bernstein_of_legendre(d); }

    const IMatrix& at(int level, long idx) {
        auto it = nodes_.find({level, idx});
        if (it != nodes_.end()) return it->second;
        const IMatrix& parent = at(level - 1, idx / 2);
        IMatrix l, r;
        split_rows(parent, l, r);
        nodes_[{level, idx - idx % 2}] = std::move(l);
        nodes_[{level, idx - idx % 2 + 1}] = std::move(r);
        return nodes_.at({level, idx});
    }

private:
    int d_;
    std::map<std::pair<int, long>, IMatrix> nodes_;
};

struct Cell {
    int level;
    long ix, iy;
    Interval range;
    double corner_lb;
};

Cell eval_cell(DyadicBernstein& db, const IMatrix& u, int level, long ix, long iy) {
    const IMatrix& bx = db.at(level, ix);
    const IMatrix& by = db.at(level, iy);
    const IMatrix b = bx.transpose() * (u * by);
    double lo = INFINITY, hi = -INFINITY;
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            lo = std::fmin(lo, b(i, j).lo());
            hi = std::fmax(hi, b(i, j).hi());
        }
    const std::size_t d = b.rows() - 1;
    const double corner = std::fmax(std::fmax(b(0, 0).mig(), b(0, d).mig()), std::fmax(b(d, 0).mig(), b(d, d).mig()));
    return Cell{level, ix, iy, Interval(lo, hi), corner};
}

}  // namespace

PSeries2::PSeries2(int degree) : c_(sz(degree + 1), sz(degree + 1)) {}

PSeries2::PSeries2(IMatrix coeffs) : c_(std::move(coeffs)) {
    if (c_.rows() != c_.cols()) throw DimensionError("PSeries2: coefficient matrix must be square");
}

PSeries2 operator+(const PSeries2& a, const PSeries2& b) {
    const std::size_t s = std::max(a.coeffs().rows(), b.coeffs().rows());
    return PSeries2(embed(a.coeffs(), s) + embed(b.coeffs(), s));
}

PSeries2 operator-(const PSeries2& a, const PSeries2& b) {
    const std::size_t s = std::max(a.coeffs().rows(), b.coeffs().rows());
    return PSeries2(embed(a.coeffs(), s) - embed(b.coeffs(), s));
}

PSeries2 operator*(const Interval& s, const PSeries2& a) { return PSeries2(s * a.coeffs()); }

PSeries2 operator*(const PSeries2& a, const PSeries2& b) {
    const int da = a.degree(), db = b.degree(), dc = da + db;
    const LinearizationTable& lin = LinearizationTable::get(std::max(da, db));
    // y-direction first: t[m][p][s] = sum_{n,q} a_mn b_pq lin(n,q -> s)
    const std::size_t na = sz(da + 1), nb = sz(db + 1), nc = sz(dc + 1);
    std::vector<Interval> t(na * nb * nc, Interval(0.0));
    for (int m = 0; m <= da; ++m)
        for (int p = 0; p <= db; ++p) {
            Interval* row = &t[(sz(m) * nb + sz(p)) * nc];
            for (int n = 0; n <= da; ++n) {
                const Interval& amn = a(m, n);
                if (amn.lo() == 0.0 && amn.hi() == 0.0) continue;
                for (int q = 0; q <= db; ++q) {
                    const Interval& bpq = b(p, q);
                    if (bpq.lo() == 0.0 && bpq.hi() == 0.0) continue;
                    const Interval ab = amn * bpq;
                    for (int k = 0; k <= std::min(n, q); ++k) row[sz(n + q - 2 * k)] += ab * lin(n, q, k);
                }
            }
        }
    PSeries2 c(dc);
    for (int m = 0; m <= da; ++m)
        for (int p = 0; p <= db; ++p) {
            const Interval* row = &t[(sz(m) * nb + sz(p)) * nc];
            for (int k = 0; k <= std::min(m, p); ++k) {
                const Interval& w = lin(m, p, k);
                const int r = m + p - 2 * k;
                for (int s = 0; s <= dc; ++s) {
                    const Interval& v = row[sz(s)];
                    if (v.lo() == 0.0 && v.hi() == 0.0) continue;
                    c(r, s) += w * v;
                }
            }
        }
    return c;
}

Interval l2_norm_sq(const PSeries2& a) {
    Interval s(0.0);
    for (int m = 0; m <= a.degree(); ++m)
        for (int n = 0; n <= a.degree(); ++n) {
            const Interval& c = a(m, n);
            if (c.lo() == 0.0 && c.hi() == 0.0) continue;
            s += sqr(c) / Interval(static_cast<double>((2 * m + 1) * (2 * n + 1)));
        }
    return s;
}

Interval l2_norm(const PSeries2& a) { return sqrt(nonneg(l2_norm_sq(a))); }

namespace {

double linf_point_ub(const IMatrix& u, const LinfOptions& opt, double floor);

}  // namespace

double linf_ub(const PSeries2& a, const LinfOptions& opt) {
    if (a.degree() == 0) return a(0, 0).mag();
    // |P_m| <= 1 on [0,1]: the coefficient radii contribute at most their sum.
    const Eigen::MatrixXd m = a.coeffs().mid();
    const Eigen::MatrixXd r = a.coeffs().rad();
    double radsum = 0.0;
    for (Eigen::Index i = 0; i < r.rows(); ++i)
        for (Eigen::Index j = 0; j < r.cols(); ++j) radsum = rnd::add_up(radsum, r(i, j));
    return rnd::add_up(linf_point_ub(IMatrix(m), opt, radsum), radsum);
}

namespace {

double linf_point_ub(const IMatrix& u, const LinfOptions& opt, double floor) {
    const int d = static_cast<int>(u.rows()) - 1;
    DyadicBernstein db(d);
    int level0 = 0;
    while ((1L << level0) < opt.initial_grid) ++level0;
    const long n0 = 1L << level0;

    std::vector<Cell> cells;
    cells.reserve(static_cast<std::size_t>(n0 * n0));
    for (long ix = 0; ix < n0; ++ix)
        for (long iy = 0; iy < n0; ++iy) cells.push_back(eval_cell(db, u, level0, ix, iy));

    for (;;) {
        double ub = 0.0, lb = 0.0;
        for (const Cell& c : cells) {
            ub = std::fmax(ub, c.range.mag());
            lb = std::fmax(lb, c.corner_lb);
        }
        std::vector<Cell> next;
        std::size_t refined = 0;
        for (const Cell& c : cells) {
            const bool candidate = c.range.mag() > lb && c.range.width_up() > std::fmax(opt.refine_tol * (ub + floor), kAbsTol) &&
                                   c.level < opt.max_level;
            if (candidate && cells.size() + 3 * (refined + 1) <= opt.max_cells) {
                ++refined;
                for (int k = 0; k < 4; ++k)
                    next.push_back(eval_cell(db, u, c.level + 1, 2 * c.ix + (k & 1), 2 * c.iy + (k >> 1)));
            } else {
                next.push_back(c);
            }
        }
        cells.swap(next);
        if (refined == 0) return ub;
    }
}

}  // namespace

SpectralFn::SpectralFn(int n) : n_(n), c_(sz(n), sz(n)) {
    if (n < 1) throw DimensionError("SpectralFn: N must be >= 1");
}

SpectralFn::SpectralFn(int n, IMatrix coeffs) : n_(n), c_(std::move(coeffs)) {
    if (c_.rows() != sz(n) || c_.cols() != sz(n)) throw DimensionError("SpectralFn: coefficient shape mismatch");
}

SpectralFn SpectralFn::from_vector(int n, const IVector& v) {
    if (v.size() != sz(n * n)) throw DimensionError("SpectralFn: vector length mismatch");
    SpectralFn f(n);
    for (std::size_t k = 0; k < v.size(); ++k) f.c_(k / sz(n), k % sz(n)) = v[k];
    return f;
}

SpectralFn SpectralFn::from_point(int n, const Eigen::VectorXd& v) { return from_vector(n, ivec(v)); }

IVector SpectralFn::to_vector() const {
    IVector v(sz(n_ * n_));
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = c_(k / sz(n_), k % sz(n_));
    return v;
}

Eigen::VectorXd SpectralFn::mid_vector() const { return mid(to_vector()); }

PSeries2 SpectralFn::to_p() const {
    const IMatrix& psi = BasisTables::get(n_).psi_to_p();
    return PSeries2(psi.transpose() * (c_ * psi));
}

PSeries2 SpectralFn::laplacian() const {
    const BasisTables& t = BasisTables::get(n_);
    const IMatrix& psi = t.psi_to_p();
    const IMatrix& dd = t.psi_dd_to_p();
    return PSeries2(dd.transpose() * (c_ * psi) + psi.transpose() * (c_ * dd));
}

PSeries2 SpectralFn::dx() const {
    const IMatrix& psi = BasisTables::get(n_).psi_to_p();
    return PSeries2(dpsi_to_p(n_).transpose() * (c_ * psi));
}

PSeries2 SpectralFn::dy() const {
    const IMatrix& psi = BasisTables::get(n_).psi_to_p();
    return PSeries2(psi.transpose() * (c_ * dpsi_to_p(n_)));
}

double SpectralFn::eval_mid(double x, double y) const {
    auto psis = [this](double s) {
        const double t = 2.0 * s - 1.0;
        std::vector<double> p(sz(n_ + 2));
        p[0] = 1.0;
        p[1] = t;
        for (int k = 1; k + 1 <= n_ + 1; ++k)
            p[sz(k + 1)] = ((2.0 * k + 1.0) * t * p[sz(k)] - k * p[sz(k - 1)]) / (k + 1.0);
        std::vector<double> v(sz(n_));
        for (int i = 1; i <= n_; ++i) v[sz(i - 1)] = (p[sz(i - 1)] - p[sz(i + 1)]) / (2.0 * (2.0 * i + 1.0));
        return v;
    };
    const std::vector<double> px = psis(x), py = psis(y);
    double s = 0.0;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) s += c_(sz(i), sz(j)).mid() * px[sz(i)] * py[sz(j)];
    return s;
}

SpectralFn operator+(const SpectralFn& a, const SpectralFn& b) {
    if (a.n() != b.n()) throw DimensionError("SpectralFn add: degree mismatch");
    return SpectralFn(a.n(), a.coeffs() + b.coeffs());
}

SpectralFn operator*(const Interval& s, const SpectralFn& a) { return SpectralFn(a.n(), s * a.coeffs()); }

namespace {

// A (x) B in the flattened (i-1)*N + (j-1) ordering.
IMatrix kron(const IMatrix& a, const IMatrix& b) {
    const std::size_t n = a.rows();
    IMatrix r(n * n, n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const Interval& aik = a(i, k);
            if (aik.lo() == 0.0 && aik.hi() == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t l = 0; l < n; ++l) r(i * n + j, k * n + l) = aik * b(j, l);
        }
    return r;
}

}  // namespace

IMatrix stiffness_2d(int n) {
    const Gram1D& g = BasisTables::get(n).gram();
    return kron(g.stiffness, g.mass) + kron(g.mass, g.stiffness);
}

IMatrix mass_2d(int n) {
    const Gram1D& g = BasisTables::get(n).gram();
    return kron(g.mass, g.mass);
}

IMatrix weighted_gram(const PSeries2& w, int n) {
    const BasisTables& t = BasisTables::get(n);
    const std::size_t rows = std::min(sz(w.degree() + 1), t.triple().rows());
    IMatrix tri(rows, sz(n * n));
    IMatrix u(rows, rows);
    for (std::size_t m = 0; m < rows; ++m) {
        for (std::size_t c = 0; c < tri.cols(); ++c) tri(m, c) = t.triple()(m, c);
        for (std::size_t q = 0; q < rows; ++q) u(m, q) = w.coeffs()(m, q);
    }
    const IMatrix y = u * tri;
    const IMatrix z = tri.transpose() * y;
    const std::size_t nn = sz(n);
    IMatrix out(nn * nn, nn * nn);
    for (std::size_t k1 = 0; k1 < nn; ++k1)
        for (std::size_t l1 = 0; l1 < nn; ++l1)
            for (std::size_t k2 = 0; k2 < nn; ++k2)
                for (std::size_t l2 = 0; l2 < nn; ++l2)
                    out(k1 * nn + k2, l1 * nn + l2) = z(k1 * nn + l1, k2 * nn + l2);
    return out;
}

IMatrix weighted_gram(const SpectralFn& u, int n) { return weighted_gram(Interval(2.0) * u.to_p(), n); }

IVector project_psi(const PSeries2& g, int n) {
    const IMatrix& psi = BasisTables::get(n).psi_to_p();
    // column m of psi scaled by 1/(2m+1) gives the integral of P_m psi_i.
    const std::size_t cols = std::min(psi.cols(), g.coeffs().rows());
    IMatrix a(sz(n), cols);
    for (std::size_t i = 0; i < sz(n); ++i)
        for (std::size_t m = 0; m < cols; ++m)
            if (!(psi(i, m).lo() == 0.0 && psi(i, m).hi() == 0.0))
                a(i, m) = psi(i, m) / Interval(static_cast<double>(2 * m + 1));
    IMatrix gs(cols, cols);
    for (std::size_t m = 0; m < cols; ++m)
        for (std::size_t q = 0; q < cols; ++q) gs(m, q) = g.coeffs()(m, q);
    const IMatrix r = a * (gs * a.transpose());
    IVector out(sz(n * n));
    for (std::size_t i = 0; i < sz(n); ++i)
        for (std::size_t j = 0; j < sz(n); ++j) out[i * sz(n) + j] = r(i, j);
    return out;
}

Interval h10_norm(const SpectralFn& u) {
    return sqrt(nonneg(l2_norm_sq(u.dx()) + l2_norm_sq(u.dy())));
}

FnNorms fn_norms(const SpectralFn& u, const LinfOptions& opt) {
    FnNorms r;
    r.h10 = h10_norm(u);
    const PSeries2 p = u.to_p();
    r.l2 = l2_norm(p);
    r.linf = Interval(0.0, linf_ub(p, opt));
    r.l4 = sqrt(l2_norm(p * p));
    return r;
}

std::string to_csv(const SpectralFn& u) {
    std::ostringstream os;
    os << "i,j,lo,hi\n";
    for (int i = 1; i <= u.n(); ++i)
        for (int j = 1; j <= u.n(); ++j)
            os << i << ',' << j << ',' << to_hex(u(i, j).lo()) << ',' << to_hex(u(i, j).hi()) << '\n';
    return os.str();
}

SpectralFn from_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::vector<std::tuple<int, int, double, double>> rows;
    int n = 0;
    while (std::getline(is, line)) {
        if (line.empty() || line.rfind("i,", 0) == 0) continue;
        std::istringstream ls(line);
        std::string f[4];
        for (auto& s : f)
            if (!std::getline(ls, s, ',')) throw std::invalid_argument("coefficient CSV: malformed row: " + line);
        const int i = std::stoi(f[0]), j = std::stoi(f[1]);
        rows.emplace_back(i, j, from_hex(f[2]), from_hex(f[3]));
        n = std::max({n, i, j});
    }
    if (n < 1) throw std::invalid_argument("coefficient CSV: no rows");
    SpectralFn u(n);
    for (const auto& [i, j, lo, hi] : rows) u(i, j) = Interval(lo, hi);
    return u;
}

std::string to_json(const SpectralFn& u) {
    nlohmann::json j;
    j["N"] = u.n();
    nlohmann::json arr = nlohmann::json::array();
    for (int i = 1; i <= u.n(); ++i)
        for (int k = 1; k <= u.n(); ++k)
            arr.push_back({i, k, {to_hex(u(i, k).lo()), to_hex(u(i, k).hi())}});
    j["coeffs"] = arr;
    return j.dump(1);
}

SpectralFn from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    const int n = j.at("N").get<int>();
    SpectralFn u(n);
    for (const auto& e : j.at("coeffs")) {
        const int i = e.at(0).get<int>(), k = e.at(1).get<int>();
        if (i < 1 || i > n || k < 1 || k > n) throw std::invalid_argument("coefficient JSON: index out of range");
        u(i, k) = Interval(from_hex(e.at(2).at(0).get<std::string>()), from_hex(e.at(2).at(1).get<std::string>()));
    }
    return u;
}

}  // namespace sproof
