#pragma once

#include <Eigen/Dense>

namespace genmetrics {

struct SymmetricEigen {
    Eigen::VectorXd values;   // ascending
    Eigen::MatrixXd vectors;  // columns; empty when not requested
};

// LAPACK dsyevd on the lower triangle. Throws NonConvergentEigensolve.
SymmetricEigen symmetric_eigen(const Eigen::MatrixXd& matrix, bool want_vectors);

}  // namespace genmetrics
