#pragma once

#include <vector>
#include <span>
#include <cstddef>

namespace grapde::linalg {

// Dense row-major matrix. Everything here is desk-scale (n up to a few
// thousand for the eigensolver, far less for constraint assembly).
struct Mat {
    int rows = 0, cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}

    double& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    double at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
};

Mat matmul(const Mat& A, const Mat& B);
Mat transpose(const Mat& A);
std::vector<double> matvec(const Mat& A, std::span<const double> x);

// Cyclic Jacobi eigendecomposition of a symmetric matrix.
// Eigenvalues ascending; V's columns are the corresponding eigenvectors.
void jacobi_eigh(const Mat& A_sym, std::vector<double>& evals, Mat& V);

// Solve A x = b with partial-pivot LU. Returns false when A is singular to
// working precision (pivot below tol * max|A|).
bool lu_solve(Mat A, std::vector<double> b, std::vector<double>& x, double tol = 1e-13);

// Orthonormal basis (columns) of null(C), via eigendecomposition of CtC.
// Rows of C are scaled to unit norm first. rel_tol is relative to the largest
// eigenvalue of CtC (or 1 if C == 0).
Mat nullspace(const Mat& C, double rel_tol = 1e-12);

// Row-echelon rank with partial pivoting; used as an independent rank oracle.
int rank_gauss(Mat C, double rel_tol = 1e-10);

} // namespace grapde::linalg
