#include "sproof/rational.hpp"

#include <cmath>

namespace sproof {

namespace {

// mpq_get_d truncates toward zero; returns the truncation plus the sign of
// (q - truncation).
double truncate(const mpq_class& q, int& side) {
    const double d = q.get_d();
    const int c = cmp(q, mpq_class(d));
    side = c;
    return d;
}

}  // namespace

double round_down(const mpq_class& q) {
    int side = 0;
    const double d = truncate(q, side);
    return side < 0 ? rnd::next_down(d) : d;
}

double round_up(const mpq_class& q) {
    int side = 0;
    const double d = truncate(q, side);
    return side > 0 ? rnd::next_up(d) : d;
}

Interval to_interval(const mpq_class& q) {
    int side = 0;
    const double d = truncate(q, side);
    if (side == 0) return Interval(d);
    return side > 0 ? Interval(d, rnd::next_up(d)) : Interval(rnd::next_down(d), d);
}

mpq_class eval(const RatPoly& p, const mpq_class& x) {
    mpq_class acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::vector<mpq_class> bernstein_on(const RatPoly& p, const mpq_class& a, const mpq_class& b) {
    const std::size_t d = p.empty() ? 0 : p.size() - 1;
    const mpq_class h = b - a;
    // Taylor shift to x = a + h t: coefficients in t.
    std::vector<mpq_class> t(p.begin(), p.end());
    if (t.empty()) t.push_back(0);
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = t.size() - 1; j > i; --j) t[j - 1] += a * t[j];
    mpq_class hp = 1;
    for (std::size_t i = 0; i < t.size(); ++i) {
        t[i] *= hp;
        hp *= h;
    }
    // Monomial to Bernstein: b_j = sum_{i<=j} C(j,i)/C(d,i) t_i.
    std::vector<mpq_class> out(d + 1);
    std::vector<mpz_class> cd(d + 1);
    for (std::size_t i = 0; i <= d; ++i) mpz_bin_uiui(cd[i].get_mpz_t(), d, i);
    for (std::size_t j = 0; j <= d; ++j) {
        mpq_class s = 0;
        mpz_class cji;
        for (std::size_t i = 0; i <= j; ++i) {
            mpz_bin_uiui(cji.get_mpz_t(), j, i);
            mpq_class w(cji, cd[i]);
            w.canonicalize();
            s += w * t[i];
        }
        out[j] = s;
    }
    return out;
}

}  // namespace sproof
