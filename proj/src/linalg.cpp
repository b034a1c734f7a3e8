#include "genmetrics/linalg.hpp"

#include <lapacke.h>

#include <string>

#include "genmetrics/error.hpp"

namespace genmetrics {

SymmetricEigen symmetric_eigen(const Eigen::MatrixXd& matrix, bool want_vectors) {
    if (matrix.rows() != matrix.cols())
        throw Error(ErrorCode::DimensionMismatch, "eigensolve needs a square matrix");
    const auto n = static_cast<lapack_int>(matrix.rows());
    SymmetricEigen out;
    out.values.resize(n);
    if (n == 0) return out;
    Eigen::MatrixXd work = matrix;
    const lapack_int info =
        LAPACKE_dsyevd(LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', 'L', n, work.data(), n, out.values.data());
    if (info != 0)
        throw Error(ErrorCode::NonConvergentEigensolve, "dsyevd failed with info=" + std::to_string(info));
    if (want_vectors) out.vectors = std::move(work);
    return out;
}

}  // namespace genmetrics
