#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "sproof/interval.hpp"

namespace sproof {

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

using IVector = std::vector<Interval>;

// Dense row-major matrix of intervals.
class IMatrix {
public:
    IMatrix() = default;
    IMatrix(std::size_t rows, std::size_t cols, const Interval& fill = Interval(0.0));
    explicit IMatrix(const Eigen::MatrixXd& point);
    // Builds [mid - rad, mid + rad] with outward rounding.
    static IMatrix from_mid_rad(const Eigen::MatrixXd& mid, const Eigen::MatrixXd& rad);
    static IMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0; }

    Interval& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Interval& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Eigen::MatrixXd mid() const;
    // Upper bounds of the radii about mid().
    Eigen::MatrixXd rad() const;
    // Upper bounds of |a| entrywise.
    Eigen::MatrixXd mag() const;

    IMatrix transpose() const;
    IVector row(std::size_t i) const;
    IVector col(std::size_t j) const;
    IVector diagonal() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Interval> data_;
};

IVector ivec(const Eigen::VectorXd& v);
Eigen::VectorXd mid(const IVector& v);
Eigen::VectorXd rad(const IVector& v);

IVector operator+(const IVector& a, const IVector& b);
IVector operator-(const IVector& a, const IVector& b);
IVector operator*(const Interval& s, const IVector& a);
Interval dot(const IVector& a, const IVector& b);

IMatrix operator+(const IMatrix& a, const IMatrix& b);
IMatrix operator-(const IMatrix& a, const IMatrix& b);
IMatrix operator*(const Interval& s, const IMatrix& a);

// Midpoint-radius product: one floating GEMM for the midpoint plus a priori
// bounds for rounding and radius propagation. Falls back to the naive product
// when entries are unbounded.
IMatrix operator*(const IMatrix& a, const IMatrix& b);
IMatrix matmul_naive(const IMatrix& a, const IMatrix& b);
IVector operator*(const IMatrix& a, const IVector& x);

// Upper bounds of the induced 1- and infinity-norms over all members.
double norm1_ub(const IMatrix& a);
double norm_inf_ub(const IMatrix& a);

// Element-wise hull and subset tests.
bool subset_of(const IVector& a, const IVector& b);
bool interior_of(const IVector& a, const IVector& b);
IVector hull(const IVector& a, const IVector& b);

}  // namespace sproof
