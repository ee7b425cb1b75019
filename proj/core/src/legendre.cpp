#include "sproof/legendre.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

namespace sproof {

namespace legendre {

namespace {

mpq_class lambda(int k) {
    mpz_class c;
    mpz_bin_uiui(c.get_mpz_t(), 2 * static_cast<unsigned long>(k), static_cast<unsigned long>(k));
    mpz_class den = 1;
    den <<= 2 * k;
    mpq_class r(c, den);
    r.canonicalize();
    return r;
}

mpz_class binom(int n, int k) {
    mpz_class c;
    mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return c;
}

}  // namespace

mpq_class linearization(int m, int n, int k) {
    if (k < 0 || k > std::min(m, n)) return 0;
    mpq_class r = lambda(m - k) * lambda(k) * lambda(n - k) / lambda(m + n - k);
    mpq_class w(2 * (m + n - 2 * k) + 1, 2 * (m + n - k) + 1);
    w.canonicalize();
    r *= w;
    return r;
}

PCoeffs psi(int i) {
    PCoeffs c(static_cast<std::size_t>(i + 2), 0);
    const mpq_class s(1, 2 * (2 * i + 1));
    c[static_cast<std::size_t>(i - 1)] = s;
    c[static_cast<std::size_t>(i + 1)] = -s;
    return c;
}

PCoeffs psi_second_derivative(int i) {
    PCoeffs c(static_cast<std::size_t>(std::max(i, 1)), 0);
    for (int k = i - 1; k >= 0; k -= 2) c[static_cast<std::size_t>(k)] = -2 * (2 * k + 1);
    return c;
}

PCoeffs product(const PCoeffs& a, const PCoeffs& b) {
    if (a.empty() || b.empty()) return {};
    PCoeffs c(a.size() + b.size() - 1, 0);
    for (std::size_t m = 0; m < a.size(); ++m) {
        if (sgn(a[m]) == 0) continue;
        for (std::size_t n = 0; n < b.size(); ++n) {
            if (sgn(b[n]) == 0) continue;
            const mpq_class ab = a[m] * b[n];
            const int mi = static_cast<int>(m), ni = static_cast<int>(n);
            for (int k = 0; k <= std::min(mi, ni); ++k)
                c[static_cast<std::size_t>(mi + ni - 2 * k)] += ab * linearization(mi, ni, k);
        }
    }
    return c;
}

mpq_class inner(const PCoeffs& a, const PCoeffs& b) {
    mpq_class s = 0;
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t m = 0; m < n; ++m)
        if (sgn(a[m]) != 0 && sgn(b[m]) != 0) s += a[m] * b[m] / (2 * static_cast<long>(m) + 1);
    return s;
}

RatPoly monomial_P(int k) {
    RatPoly p(static_cast<std::size_t>(k + 1));
    for (int j = 0; j <= k; ++j) {
        mpq_class c(binom(k, j) * binom(k + j, j));
        if ((k + j) % 2 != 0) c = -c;
        p[static_cast<std::size_t>(j)] = c;
    }
    return p;
}

RatPoly monomial_psi(int i) {
    const RatPoly p = monomial_P(i);
    // derivative
    RatPoly d(p.size() > 1 ? p.size() - 1 : 1, 0);
    for (std::size_t j = 1; j < p.size(); ++j) d[j - 1] = p[j] * static_cast<long>(j);
    // times x(1-x) / (i(i+1))
    RatPoly r(d.size() + 2, 0);
    const mpq_class s(1, static_cast<long>(i) * (i + 1));
    for (std::size_t j = 0; j < d.size(); ++j) {
        r[j + 1] += d[j] * s;
        r[j + 2] -= d[j] * s;
    }
    return r;
}

mpq_class stiffness_exact(int i, int j) {
    if (i != j) return 0;
    return mpq_class(1, 2 * i + 1);
}

mpq_class mass_exact(int i, int j) { return inner(psi(i), psi(j)); }

}  // namespace legendre

namespace {

void require_unit(const Interval& x) {
    if (x.lo() < 0.0 || x.hi() > 1.0) throw DomainError("evaluation point outside [0,1]");
}

Interval range_of(const RatPoly& p, const Interval& x) {
    require_unit(x);
    if (x.is_point()) return to_interval(eval(p, mpq_class(x.lo())));
    const std::vector<mpq_class> b = bernstein_on(p, mpq_class(x.lo()), mpq_class(x.hi()));
    const auto [mn, mx] = std::minmax_element(b.begin(), b.end());
    return Interval(round_down(*mn), round_up(*mx));
}

}  // namespace

Interval shifted_legendre_eval(int i, const Interval& x) {
    if (i < 0) throw DomainError("Legendre index must be nonnegative");
    return range_of(legendre::monomial_P(i), x);
}

Interval basis_eval(int i, const Interval& x) {
    if (i < 1) throw DomainError("basis index must be >= 1");
    return range_of(legendre::monomial_psi(i), x);
}

Gram1D gram_matrices(int n) {
    if (n < 1) throw DimensionError("gram_matrices: N must be >= 1");
    const std::size_t sz = static_cast<std::size_t>(n);
    Gram1D g{IMatrix(sz, sz), IMatrix(sz, sz)};
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            g.stiffness(i - 1, j - 1) = to_interval(legendre::stiffness_exact(i, j));
            if (std::abs(i - j) == 0 || std::abs(i - j) == 2)
                g.mass(i - 1, j - 1) = to_interval(legendre::mass_exact(i, j));
        }
    return g;
}

BasisTables::BasisTables(int n)
    : n_(n),
      gram_(gram_matrices(n)),
      triple_(static_cast<std::size_t>(2 * n + 3), static_cast<std::size_t>(n * n)),
      psi_to_p_(static_cast<std::size_t>(n), static_cast<std::size_t>(n + 2)),
      psi_dd_to_p_(static_cast<std::size_t>(n), static_cast<std::size_t>(n + 2)),
      psi_integral_(static_cast<std::size_t>(n), Interval(0.0)) {
    std::vector<legendre::PCoeffs> psis;
    for (int i = 1; i <= n; ++i) psis.push_back(legendre::psi(i));
    for (int k = 1; k <= n; ++k)
        for (int l = k; l <= n; ++l) {
            const legendre::PCoeffs e = legendre::product(psis[static_cast<std::size_t>(k - 1)],
                                                          psis[static_cast<std::size_t>(l - 1)]);
            for (std::size_t m = 0; m < e.size(); ++m) {
                if (sgn(e[m]) == 0) continue;
                const Interval v = to_interval(e[m] / (2 * static_cast<long>(m) + 1));
                triple_(m, static_cast<std::size_t>((k - 1) * n + (l - 1))) = v;
                triple_(m, static_cast<std::size_t>((l - 1) * n + (k - 1))) = v;
            }
        }
    for (int i = 1; i <= n; ++i) {
        const legendre::PCoeffs& p = psis[static_cast<std::size_t>(i - 1)];
        for (std::size_t m = 0; m < p.size(); ++m)
            if (sgn(p[m]) != 0) psi_to_p_(static_cast<std::size_t>(i - 1), m) = to_interval(p[m]);
        const legendre::PCoeffs dd = legendre::psi_second_derivative(i);
        for (std::size_t m = 0; m < dd.size(); ++m)
            if (sgn(dd[m]) != 0) psi_dd_to_p_(static_cast<std::size_t>(i - 1), m) = to_interval(dd[m]);
        psi_integral_[static_cast<std::size_t>(i - 1)] = to_interval(p[0]);
    }
}

const BasisTables& BasisTables::get(int n) {
    if (n < 1) throw DimensionError("BasisTables: N must be >= 1");
    static std::mutex mu;
    static std::map<int, std::unique_ptr<BasisTables>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, std::unique_ptr<BasisTables>(new BasisTables(n))).first;
    return *it->second;
}

LinearizationTable::LinearizationTable(int dmax) : dmax_(dmax) {
    const std::size_t d = static_cast<std::size_t>(dmax + 1);
    offset_.resize(d * d + 1);
    std::size_t off = 0;
    for (int m = 0; m <= dmax; ++m)
        for (int n = 0; n <= dmax; ++n) {
            offset_[static_cast<std::size_t>(m) * d + static_cast<std::size_t>(n)] = off;
            off += static_cast<std::size_t>(std::min(m, n) + 1);
        }
    offset_[d * d] = off;
    data_.resize(off);
    for (int m = 0; m <= dmax; ++m)
        for (int n = 0; n <= m; ++n)
            for (int k = 0; k <= n; ++k) {
                const Interval v = to_interval(legendre::linearization(m, n, k));
                data_[offset_[static_cast<std::size_t>(m) * d + static_cast<std::size_t>(n)] +
                      static_cast<std::size_t>(k)] = v;
                data_[offset_[static_cast<std::size_t>(n) * d + static_cast<std::size_t>(m)] +
                      static_cast<std::size_t>(k)] = v;
            }
}

const Interval& LinearizationTable::operator()(int m, int n, int k) const {
    const std::size_t d = static_cast<std::size_t>(dmax_ + 1);
    return data_[offset_[static_cast<std::size_t>(m) * d + static_cast<std::size_t>(n)] + static_cast<std::size_t>(k)];
}

const LinearizationTable& LinearizationTable::get(int dmax) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<LinearizationTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.lower_bound(dmax);
    if (it == cache.end())
        it = cache.emplace(dmax, std::unique_ptr<LinearizationTable>(new LinearizationTable(dmax))).first;
    return *it->second;
}

const IMatrix& bernstein_of_legendre(int d) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<IMatrix>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(d);
    if (it != cache.end()) return *it->second;
    const std::size_t sz = static_cast<std::size_t>(d + 1);
    auto m = std::make_unique<IMatrix>(sz, sz);
    for (int k = 0; k <= d; ++k) {
        RatPoly p = legendre::monomial_P(k);
        p.resize(sz, 0);
        const std::vector<mpq_class> b = bernstein_on(p, 0, 1);
        for (std::size_t j = 0; j < sz; ++j) (*m)(static_cast<std::size_t>(k), j) = to_interval(b[j]);
    }
    return *cache.emplace(d, std::move(m)).first->second;
}

}  // namespace sproof
