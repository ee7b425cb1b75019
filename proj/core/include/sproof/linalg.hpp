#pragma once

#include <Eigen/Dense>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sproof/interval_matrix.hpp"

namespace sproof {

// A verification step could not be completed; this says nothing about the
// mathematical truth of the claim being checked.
class InconclusiveError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SingularJacobianError : public InconclusiveError {
public:
    using InconclusiveError::InconclusiveError;
};

enum class EnclosureFlag { ProvedUniqueInBox, EnclosureOnly };

struct Enclosure {
    IVector value;
    EnclosureFlag flag = EnclosureFlag::EnclosureOnly;
    int iterations = 0;
};

struct InflationOptions {
    double relative = 1e-12;
    double absolute = 1e-300;
    int max_retries = 10;  // the relative factor doubles on each retry
};

// Encloses every solution of Ax = b for all A in A, b in b. Success proves
// every member of A nonsingular.
Enclosure verified_solve(const IMatrix& a, const IVector& b, const InflationOptions& opt = {});
// Multiple right-hand sides (columns of B).
IMatrix verified_solve(const IMatrix& a, const IMatrix& b, const InflationOptions& opt = {});
IMatrix verified_inverse(const IMatrix& a, const InflationOptions& opt = {});

using VectorMap = std::function<IVector(const IVector&)>;
using JacobianMap = std::function<IMatrix(const IVector&)>;

// Krawczyk operator with epsilon-inflation around a floating Newton refinement
// of x0. Success proves a unique zero of F in the returned box.
Enclosure krawczyk_solve(const VectorMap& f, const JacobianMap& jac, const Eigen::VectorXd& x0,
                         const InflationOptions& opt = {});

struct NormBound {
    double ub = 0.0;
    std::string method;
};

// Upper bound of the 2-norm of every member of M. The default uses
// sqrt(||M||_1 ||M||_inf); `sharp` also tries sqrt(lambda_max(M^T M)).
NormBound spectral_norm_ub(const IMatrix& m, bool sharp = false);

struct EigenBounds {
    // Enclosures of the generalized eigenvalues in ascending order.
    std::vector<Interval> values;
    double eps = 0.0;  // ||X^T B X - I||_2 bound used in the congruence
    double weyl = 0.0;  // off-diagonal perturbation bound

    double lambda_min_lb() const { return values.front().lo(); }
    double lambda_max_ub() const { return values.back().hi(); }
    // Lower bound of min |lambda|; 0 if some enclosure contains 0.
    double min_abs_lb() const;
};

// Bounds for the eigenvalues of A x = lambda B x for all symmetric members
// A in A and B in B. Throws InconclusiveError when B cannot be verified
// positive definite.
EigenBounds gen_eig_bounds(const IMatrix& a, const IMatrix& b);

}  // namespace sproof
