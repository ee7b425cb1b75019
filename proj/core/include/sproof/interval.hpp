#pragma once

#include <cmath>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace sproof {

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Directed-rounding primitives. Results are rigorous lower/upper bounds of the
// exact real result, computed in round-to-nearest with error-free transforms.
namespace rnd {
double add_down(double a, double b);
double add_up(double a, double b);
double sub_down(double a, double b);
double sub_up(double a, double b);
double mul_down(double a, double b);
double mul_up(double a, double b);
double div_down(double a, double b);
double div_up(double a, double b);
double sqrt_down(double a);
double sqrt_up(double a);

inline double next_up(double x) { return std::nextafter(x, INFINITY); }
inline double next_down(double x) { return std::nextafter(x, -INFINITY); }

// Name of the rounding strategy, recorded in certificates.
const char* strategy();
}  // namespace rnd

class Interval {
public:
    constexpr Interval() = default;
    Interval(double x);  // NOLINT(google-explicit-constructor)
    Interval(double lo, double hi);

    static Interval hull(double a, double b);
    static Interval symmetric(double r);  // [-r, r]
    static Interval entire();

    double lo() const { return lo_; }
    double hi() const { return hi_; }

    double mid() const;
    // Upper bound on the radius about mid().
    double rad() const;
    double width_up() const { return rnd::sub_up(hi_, lo_); }
    double mag() const { return std::fmax(std::fabs(lo_), std::fabs(hi_)); }
    double mig() const;

    bool is_point() const { return lo_ == hi_; }
    bool contains(double x) const { return lo_ <= x && x <= hi_; }
    bool contains_zero() const { return lo_ <= 0.0 && 0.0 <= hi_; }
    bool subset_of(const Interval& o) const { return o.lo_ <= lo_ && hi_ <= o.hi_; }
    bool interior_of(const Interval& o) const { return o.lo_ < lo_ && hi_ < o.hi_; }
    bool intersects(const Interval& o) const { return lo_ <= o.hi_ && o.lo_ <= hi_; }

    Interval& operator+=(const Interval& o);
    Interval& operator-=(const Interval& o);
    Interval& operator*=(const Interval& o);
    Interval& operator/=(const Interval& o);

private:
    double lo_ = 0.0;
    double hi_ = 0.0;
};

Interval operator-(const Interval& a);
Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
Interval operator/(const Interval& a, const Interval& b);

Interval sqr(const Interval& a);
Interval sqrt(const Interval& a);
Interval abs(const Interval& a);
Interval hull(const Interval& a, const Interval& b);
// Throws DomainError when the intersection is empty.
Interval intersect(const Interval& a, const Interval& b);
Interval max(const Interval& a, const Interval& b);
Interval min(const Interval& a, const Interval& b);
// Raises the lower endpoint to 0 when the quantity is known to be nonnegative
// but rounding produced a slightly negative lower bound. Throws if hi < 0.
Interval nonneg(const Interval& a);
// Widen by delta on both sides (outward rounded).
Interval inflate(const Interval& a, double delta);

// Rigorous enclosure of pi.
Interval pi();

bool operator==(const Interval& a, const Interval& b);

// Exact hexadecimal float formatting ("%a") and parsing.
std::string to_hex(double x);
double from_hex(const std::string& s);

std::ostream& operator<<(std::ostream& os, const Interval& a);

}  // namespace sproof
