#include <gmpxx.h>
#include <gtest/gtest.h>

#include <cfloat>
#include <cmath>
#include <random>

#include "oracle.hpp"
#include "sproof/interval.hpp"

using sproof::Interval;
using oracle::contains;

namespace {

double ulp(double x) { return std::nextafter(std::fabs(x), INFINITY) - std::fabs(x); }

double random_double(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> m(-1.0, 1.0);
    std::uniform_int_distribution<int> e(-60, 60);
    return std::ldexp(m(rng), e(rng));
}

}  // namespace

TEST(Interval, Construction) {
    EXPECT_THROW(Interval(2.0, 1.0), sproof::DomainError);
    EXPECT_THROW(Interval(NAN), sproof::DomainError);
    EXPECT_THROW(Interval(0.0, NAN), sproof::DomainError);
    EXPECT_NO_THROW(Interval(-INFINITY, INFINITY));
    const Interval a(1.0, 3.0);
    EXPECT_EQ(a.mid(), 2.0);
    EXPECT_GE(a.rad(), 1.0);
    EXPECT_TRUE(a.contains(1.0));
    EXPECT_FALSE(a.contains(3.5));
}

TEST(Interval, BasicOps) {
    EXPECT_EQ(Interval(1, 2) + Interval(3, 4), Interval(4, 6));
    EXPECT_EQ(Interval(-1, 2) * Interval(3, 4), Interval(-4, 8));
    EXPECT_EQ(Interval(1, 2) - Interval(3, 4), Interval(-3, -1));
    EXPECT_EQ(sqr(Interval(-2, 1)), Interval(0, 4));
    EXPECT_EQ(sqrt(Interval(4, 9)), Interval(2, 3));
    EXPECT_EQ(sqrt(Interval(0.0)), Interval(0.0));
    EXPECT_EQ(abs(Interval(-3, 1)), Interval(0, 3));
}

TEST(Interval, DivisionEnclosesOneTenth) {
    const Interval q = Interval(1.0) / Interval(10.0);
    EXPECT_TRUE(contains(q, mpq_class(1, 10)));
    EXPECT_LE(q.width_up(), 2 * ulp(0.1));
}

TEST(Interval, DomainErrors) {
    EXPECT_THROW(Interval(1.0) / Interval(-1.0, 1.0), sproof::DomainError);
    EXPECT_THROW(sqrt(Interval(-1.0, 4.0)), sproof::DomainError);
    EXPECT_THROW(intersect(Interval(0, 1), Interval(2, 3)), sproof::DomainError);
}

TEST(Interval, SqrtTwoWidth) {
    const Interval r = sqrt(Interval(2.0));
    EXPECT_LE(mpq_class(r.lo()) * mpq_class(r.lo()), 2);
    EXPECT_GE(mpq_class(r.hi()) * mpq_class(r.hi()), 2);
    EXPECT_LE(r.width_up(), 2 * ulp(std::sqrt(2.0)));
}

TEST(Interval, PiEnclosure) {
    const Interval p = sproof::pi();
    // pi = 3.14159265358979323846...
    EXPECT_TRUE(contains(p, mpq_class("314159265358979323846/100000000000000000000")));
    EXPECT_LE(p.width_up(), 1e-15);
}

TEST(Interval, HexRoundTrip) {
    std::mt19937_64 rng(7);
    for (int k = 0; k < 1000; ++k) {
        const double x = random_double(rng);
        EXPECT_EQ(sproof::from_hex(sproof::to_hex(x)), x);
    }
    EXPECT_THROW(sproof::from_hex("0x1.8p+1junk"), std::invalid_argument);
}

TEST(Interval, OverflowAndUnderflow) {
    const Interval big = Interval(DBL_MAX) * Interval(2.0);
    EXPECT_EQ(big.hi(), INFINITY);
    EXPECT_LE(big.lo(), DBL_MAX);
    const Interval tiny = Interval(DBL_MIN) * Interval(DBL_MIN);
    EXPECT_LE(tiny.lo(), 0.0);
    EXPECT_GT(tiny.hi(), 0.0);
    const Interval sub = Interval(4.9e-324) / Interval(3.0);
    EXPECT_LE(sub.lo(), 0.0);
    EXPECT_GE(sub.hi(), 4.9e-324 / 3.0);
}

TEST(Interval, ContainmentFuzzPointOperands) {
    std::mt19937_64 rng(12345);
    for (int k = 0; k < 20000; ++k) {
        const double a = random_double(rng), b = random_double(rng);
        const mpq_class qa(a), qb(b);
        ASSERT_TRUE(contains(Interval(a) + Interval(b), qa + qb));
        ASSERT_TRUE(contains(Interval(a) - Interval(b), qa - qb));
        ASSERT_TRUE(contains(Interval(a) * Interval(b), qa * qb));
        if (b != 0.0) ASSERT_TRUE(contains(Interval(a) / Interval(b), qa / qb));
        const Interval s = sqrt(Interval(std::fabs(a)));
        ASSERT_LE(mpq_class(s.lo()) * mpq_class(s.lo()), abs(qa));
        ASSERT_GE(mpq_class(s.hi()) * mpq_class(s.hi()), abs(qa));
        // width <= 2 ulp of the exact value
        const Interval m = Interval(a) * Interval(b);
        ASSERT_LE(m.hi() - m.lo(), 2 * ulp(a * b) + 1e-320);
    }
}

TEST(Interval, ContainmentFuzzIntervalOperands) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> t(0.0, 1.0);
    for (int k = 0; k < 20000; ++k) {
        const double a1 = random_double(rng), a2 = random_double(rng);
        const double b1 = random_double(rng), b2 = random_double(rng);
        const Interval A(std::min(a1, a2), std::max(a1, a2)), B(std::min(b1, b2), std::max(b1, b2));
        // a random rational point inside each operand
        const mpq_class ta(t(rng)), tb(t(rng));
        const mpq_class x = mpq_class(A.lo()) + ta * (mpq_class(A.hi()) - mpq_class(A.lo()));
        const mpq_class y = mpq_class(B.lo()) + tb * (mpq_class(B.hi()) - mpq_class(B.lo()));
        ASSERT_TRUE(contains(A + B, x + y));
        ASSERT_TRUE(contains(A - B, x - y));
        ASSERT_TRUE(contains(A * B, x * y));
        if (!B.contains_zero()) ASSERT_TRUE(contains(A / B, x / y));
        ASSERT_TRUE(contains(sqr(A), x * x));
    }
}

TEST(Interval, Monotonicity) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-10, 10), w(0, 1);
    for (int k = 0; k < 5000; ++k) {
        const double a = u(rng), b = u(rng), ra = w(rng), rb = w(rng);
        const Interval A(a, a + ra), B(b, b + rb);
        const Interval A2(a - w(rng), a + ra + w(rng)), B2(b - w(rng), b + rb + w(rng));
        ASSERT_TRUE((A + B).subset_of(A2 + B2));
        ASSERT_TRUE((A - B).subset_of(A2 - B2));
        ASSERT_TRUE((A * B).subset_of(A2 * B2));
        if (!B2.contains_zero()) ASSERT_TRUE((A / B).subset_of(A2 / B2));
    }
}

TEST(Interval, SetOps) {
    EXPECT_EQ(hull(Interval(0, 1), Interval(3, 4)), Interval(0, 4));
    EXPECT_EQ(intersect(Interval(0, 2), Interval(1, 3)), Interval(1, 2));
    EXPECT_TRUE(Interval(1, 2).interior_of(Interval(0, 3)));
    EXPECT_FALSE(Interval(0, 2).interior_of(Interval(0, 3)));
    EXPECT_EQ(nonneg(Interval(-1e-20, 1.0)).lo(), 0.0);
    EXPECT_THROW(nonneg(Interval(-2.0, -1.0)), sproof::DomainError);
    const Interval inf = inflate(Interval(1.0), 0.5);
    EXPECT_LE(inf.lo(), 0.5);
    EXPECT_GE(inf.hi(), 1.5);
}

TEST(Interval, StrategyNamed) { EXPECT_STRNE(sproof::rnd::strategy(), ""); }
