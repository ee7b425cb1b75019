#include "sproof/interval.hpp"

#include <cfloat>
#include <cstdio>
#include <cstdlib>
#include <ostream>

namespace sproof {

namespace {

// Below this magnitude the FMA residual of a product or quotient may not be
// exactly representable, so we nudge unconditionally.
constexpr double kTiny = 0x1p-900;

void check_nan(double x) {
    if (std::isnan(x)) throw DomainError("interval endpoint is NaN");
}

}  // namespace

namespace rnd {

const char* strategy() { return "error-free-transform+nextafter"; }

double add_up(double a, double b) {
    const double s = a + b;
    if (std::isinf(s)) {
        if (std::isfinite(a) && std::isfinite(b) && s < 0) return -DBL_MAX;
        return s;
    }
    const double bp = s - a;
    const double err = (a - (s - bp)) + (b - bp);
    return err > 0 ? next_up(s) : s;
}

double add_down(double a, double b) {
    const double s = a + b;
    if (std::isinf(s)) {
        if (std::isfinite(a) && std::isfinite(b) && s > 0) return DBL_MAX;
        return s;
    }
    const double bp = s - a;
    const double err = (a - (s - bp)) + (b - bp);
    return err < 0 ? next_down(s) : s;
}

double sub_up(double a, double b) { return add_up(a, -b); }
double sub_down(double a, double b) { return add_down(a, -b); }

double mul_up(double a, double b) {
    if (a == 0.0 || b == 0.0) return 0.0;
    const double p = a * b;
    if (std::isinf(p)) {
        if (std::isfinite(a) && std::isfinite(b) && p < 0) return -DBL_MAX;
        return p;
    }
    if (std::fabs(p) < kTiny) return next_up(p);
    const double e = std::fma(a, b, -p);
    return e > 0 ? next_up(p) : p;
}

double mul_down(double a, double b) {
    if (a == 0.0 || b == 0.0) return 0.0;
    const double p = a * b;
    if (std::isinf(p)) {
        if (std::isfinite(a) && std::isfinite(b) && p > 0) return DBL_MAX;
        return p;
    }
    if (std::fabs(p) < kTiny) return next_down(p);
    const double e = std::fma(a, b, -p);
    return e < 0 ? next_down(p) : p;
}

double div_up(double a, double b) {
    if (a == 0.0) return 0.0;
    const double q = a / b;
    if (std::isinf(q)) {
        if (std::isfinite(a) && q < 0) return -DBL_MAX;
        return q;
    }
    if (std::isinf(b)) return 0.0;  // limit value at an unbounded endpoint
    if (std::fabs(q) < kTiny || std::fabs(a) < kTiny) return next_up(q);
    const double r = std::fma(-q, b, a);
    if (r == 0.0) return q;
    return ((r > 0) == (b > 0)) ? next_up(q) : q;
}

double div_down(double a, double b) {
    if (a == 0.0) return 0.0;
    const double q = a / b;
    if (std::isinf(q)) {
        if (std::isfinite(a) && q > 0) return DBL_MAX;
        return q;
    }
    if (std::isinf(b)) return 0.0;
    if (std::fabs(q) < kTiny || std::fabs(a) < kTiny) return next_down(q);
    const double r = std::fma(-q, b, a);
    if (r == 0.0) return q;
    return ((r > 0) == (b > 0)) ? q : next_down(q);
}

double sqrt_up(double a) {
    if (a == 0.0) return 0.0;
    const double s = std::sqrt(a);
    if (std::isinf(s)) return s;
    if (a < kTiny) return next_up(s);
    const double r = std::fma(-s, s, a);
    return r > 0 ? next_up(s) : s;
}

double sqrt_down(double a) {
    if (a == 0.0) return 0.0;
    const double s = std::sqrt(a);
    if (std::isinf(s)) return DBL_MAX;
    if (a < kTiny) return std::fmax(0.0, next_down(s));
    const double r = std::fma(-s, s, a);
    return r < 0 ? next_down(s) : s;
}

}  // namespace rnd

Interval::Interval(double x) : lo_(x), hi_(x) {
    check_nan(x);
    if (std::isinf(x)) throw DomainError("point interval at infinity");
}

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
    check_nan(lo);
    check_nan(hi);
    if (lo > hi) throw DomainError("interval with lo > hi");
    if (lo == INFINITY || hi == -INFINITY) throw DomainError("interval endpoint at wrong infinity");
}

Interval Interval::hull(double a, double b) { return Interval(std::fmin(a, b), std::fmax(a, b)); }

Interval Interval::symmetric(double r) {
    const double m = std::fabs(r);
    return Interval(-m, m);
}

Interval Interval::entire() { return Interval(-INFINITY, INFINITY); }

double Interval::mid() const {
    if (std::isinf(lo_) || std::isinf(hi_)) {
        if (std::isinf(lo_) && std::isinf(hi_)) return 0.0;
        return std::isinf(lo_) ? hi_ : lo_;
    }
    double m = 0.5 * (lo_ + hi_);
    if (std::isinf(m)) m = 0.5 * lo_ + 0.5 * hi_;
    return std::fmin(std::fmax(m, lo_), hi_);
}

double Interval::rad() const {
    const double m = mid();
    return std::fmax(rnd::sub_up(m, lo_), rnd::sub_up(hi_, m));
}

double Interval::mig() const {
    if (contains_zero()) return 0.0;
    return std::fmin(std::fabs(lo_), std::fabs(hi_));
}

Interval& Interval::operator+=(const Interval& o) { return *this = *this + o; }
Interval& Interval::operator-=(const Interval& o) { return *this = *this - o; }
Interval& Interval::operator*=(const Interval& o) { return *this = *this * o; }
Interval& Interval::operator/=(const Interval& o) { return *this = *this / o; }

Interval operator-(const Interval& a) { return Interval(-a.hi(), -a.lo()); }

Interval operator+(const Interval& a, const Interval& b) {
    return Interval(rnd::add_down(a.lo(), b.lo()), rnd::add_up(a.hi(), b.hi()));
}

Interval operator-(const Interval& a, const Interval& b) {
    return Interval(rnd::sub_down(a.lo(), b.hi()), rnd::sub_up(a.hi(), b.lo()));
}

Interval operator*(const Interval& a, const Interval& b) {
    const double al = a.lo(), ah = a.hi(), bl = b.lo(), bh = b.hi();
    if (al >= 0 && bl >= 0) return Interval(rnd::mul_down(al, bl), rnd::mul_up(ah, bh));
    const double lo = std::fmin(std::fmin(rnd::mul_down(al, bl), rnd::mul_down(al, bh)),
                                std::fmin(rnd::mul_down(ah, bl), rnd::mul_down(ah, bh)));
    const double hi = std::fmax(std::fmax(rnd::mul_up(al, bl), rnd::mul_up(al, bh)),
                                std::fmax(rnd::mul_up(ah, bl), rnd::mul_up(ah, bh)));
    return Interval(lo, hi);
}

Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero()) throw DomainError("division by an interval containing zero");
    const double al = a.lo(), ah = a.hi(), bl = b.lo(), bh = b.hi();
    const double lo = std::fmin(std::fmin(rnd::div_down(al, bl), rnd::div_down(al, bh)),
                                std::fmin(rnd::div_down(ah, bl), rnd::div_down(ah, bh)));
    const double hi = std::fmax(std::fmax(rnd::div_up(al, bl), rnd::div_up(al, bh)),
                                std::fmax(rnd::div_up(ah, bl), rnd::div_up(ah, bh)));
    return Interval(lo, hi);
}

Interval sqr(const Interval& a) {
    if (a.lo() >= 0) return Interval(rnd::mul_down(a.lo(), a.lo()), rnd::mul_up(a.hi(), a.hi()));
    if (a.hi() <= 0) return Interval(rnd::mul_down(a.hi(), a.hi()), rnd::mul_up(a.lo(), a.lo()));
    const double m = a.mag();
    return Interval(0.0, rnd::mul_up(m, m));
}

Interval sqrt(const Interval& a) {
    if (a.lo() < 0) throw DomainError("sqrt of an interval with negative lower endpoint");
    return Interval(rnd::sqrt_down(a.lo()), rnd::sqrt_up(a.hi()));
}

Interval abs(const Interval& a) {
    if (a.lo() >= 0) return a;
    if (a.hi() <= 0) return -a;
    return Interval(0.0, a.mag());
}

Interval hull(const Interval& a, const Interval& b) {
    return Interval(std::fmin(a.lo(), b.lo()), std::fmax(a.hi(), b.hi()));
}

Interval intersect(const Interval& a, const Interval& b) {
    if (!a.intersects(b)) throw DomainError("empty intersection");
    return Interval(std::fmax(a.lo(), b.lo()), std::fmin(a.hi(), b.hi()));
}

Interval max(const Interval& a, const Interval& b) {
    return Interval(std::fmax(a.lo(), b.lo()), std::fmax(a.hi(), b.hi()));
}

Interval min(const Interval& a, const Interval& b) {
    return Interval(std::fmin(a.lo(), b.lo()), std::fmin(a.hi(), b.hi()));
}

Interval nonneg(const Interval& a) {
    if (a.hi() < 0) throw DomainError("quantity expected nonnegative has negative upper bound");
    return Interval(std::fmax(a.lo(), 0.0), a.hi());
}

Interval inflate(const Interval& a, double delta) {
    return Interval(rnd::sub_down(a.lo(), delta), rnd::add_up(a.hi(), delta));
}

Interval pi() {
    constexpr double lo = 0x1.921fb54442d18p+1;
    return Interval(lo, rnd::next_up(lo));
}

bool operator==(const Interval& a, const Interval& b) { return a.lo() == b.lo() && a.hi() == b.hi(); }

std::string to_hex(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%a", x);
    return buf;
}

double from_hex(const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') throw std::invalid_argument("not a float literal: " + s);
    return v;
}

std::ostream& operator<<(std::ostream& os, const Interval& a) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "[%.17g, %.17g]", a.lo(), a.hi());
    return os << buf;
}

}  // namespace sproof
