#include "grapde/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace grapde::linalg {

Mat matmul(const Mat& A, const Mat& B) {
    if (A.cols != B.rows) throw std::invalid_argument("matmul: shape mismatch");
    Mat C(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            double aik = A.at(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < B.cols; ++j) C.at(i, j) += aik * B.at(k, j);
        }
    return C;
}

Mat transpose(const Mat& A) {
    Mat T(A.cols, A.rows);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) T.at(j, i) = A.at(i, j);
    return T;
}

std::vector<double> matvec(const Mat& A, std::span<const double> x) {
    if (static_cast<int>(x.size()) != A.cols) throw std::invalid_argument("matvec: shape mismatch");
    std::vector<double> y(A.rows, 0.0);
    for (int i = 0; i < A.rows; ++i) {
        double s = 0.0;
        for (int j = 0; j < A.cols; ++j) s += A.at(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

void jacobi_eigh(const Mat& A_sym, std::vector<double>& evals, Mat& V) {
    if (A_sym.rows != A_sym.cols) throw std::invalid_argument("jacobi_eigh: matrix not square");
    const int n = A_sym.rows;
    Mat A = A_sym;
    V = Mat(n, n);
    for (int i = 0; i < n; ++i) V.at(i, i) = 1.0;

    double scale = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) scale = std::max(scale, std::abs(A.at(i, j)));
    if (scale == 0.0) scale = 1.0;

    const int max_sweeps = 128;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += A.at(i, j) * A.at(i, j);
        if (std::sqrt(off) <= 1e-15 * scale * n) break;

        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = A.at(p, q);
                if (std::abs(apq) <= 1e-300) continue;
                double app = A.at(p, p), aqq = A.at(q, q);
                double tau = (aqq - app) / (2.0 * apq);
                double t = (tau >= 0.0 ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                       : 1.0 / (tau - std::sqrt(1.0 + tau * tau)));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                for (int k = 0; k < n; ++k) {
                    double akp = A.at(k, p), akq = A.at(k, q);
                    A.at(k, p) = c * akp - s * akq;
                    A.at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = A.at(p, k), aqk = A.at(q, k);
                    A.at(p, k) = c * apk - s * aqk;
                    A.at(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    double vkp = V.at(k, p), vkq = V.at(k, q);
                    V.at(k, p) = c * vkp - s * vkq;
                    V.at(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> d(n);
    for (int i = 0; i < n; ++i) d[i] = A.at(i, i);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return d[i] < d[j]; });

    evals.resize(n);
    Mat Vs(n, n);
    for (int j = 0; j < n; ++j) {
        evals[j] = d[order[j]];
        for (int i = 0; i < n; ++i) Vs.at(i, j) = V.at(i, order[j]);
    }
    V = std::move(Vs);
}

bool lu_solve(Mat A, std::vector<double> b, std::vector<double>& x, double tol) {
    if (A.rows != A.cols || static_cast<int>(b.size()) != A.rows)
        throw std::invalid_argument("lu_solve: shape mismatch");
    const int n = A.rows;
    double scale = 0.0;
    for (double v : A.a) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return false;

    std::vector<int> piv(n);
    std::iota(piv.begin(), piv.end(), 0);
    for (int k = 0; k < n; ++k) {
        int imax = k;
        double vmax = std::abs(A.at(k, k));
        for (int i = k + 1; i < n; ++i) {
            double v = std::abs(A.at(i, k));
            if (v > vmax) { vmax = v; imax = i; }
        }
        if (vmax <= tol * scale) return false;
        if (imax != k) {
            for (int j = 0; j < n; ++j) std::swap(A.at(k, j), A.at(imax, j));
            std::swap(b[k], b[imax]);
        }
        for (int i = k + 1; i < n; ++i) {
            double f = A.at(i, k) / A.at(k, k);
            A.at(i, k) = f;
            for (int j = k + 1; j < n; ++j) A.at(i, j) -= f * A.at(k, j);
            b[i] -= f * b[k];
        }
    }
    x.assign(n, 0.0);
    for (int i = n - 1; i >= 0; --i) {
        double s = b[i];
        for (int j = i + 1; j < n; ++j) s -= A.at(i, j) * x[j];
        x[i] = s / A.at(i, i);
    }
    return true;
}

Mat nullspace(const Mat& C, double rel_tol) {
    const int m = C.cols;
    Mat R = C;
    for (int i = 0; i < R.rows; ++i) {
        double nrm = 0.0;
        for (int j = 0; j < m; ++j) nrm += R.at(i, j) * R.at(i, j);
        nrm = std::sqrt(nrm);
        if (nrm > 0.0)
            for (int j = 0; j < m; ++j) R.at(i, j) /= nrm;
    }
    Mat G = matmul(transpose(R), R); // m x m, PSD
    std::vector<double> ev;
    Mat V;
    jacobi_eigh(G, ev, V);
    double emax = ev.empty() ? 0.0 : std::max(0.0, ev.back());
    double cut = std::max(emax, 1.0) * rel_tol;
    int dim = 0;
    while (dim < m && ev[dim] <= cut) ++dim;
    Mat N(m, dim);
    for (int j = 0; j < dim; ++j)
        for (int i = 0; i < m; ++i) N.at(i, j) = V.at(i, j);
    return N;
}

int rank_gauss(Mat C, double rel_tol) {
    double scale = 0.0;
    for (double v : C.a) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return 0;
    int rank = 0;
    int row = 0;
    for (int col = 0; col < C.cols && row < C.rows; ++col) {
        int imax = row;
        double vmax = std::abs(C.at(row, col));
        for (int i = row + 1; i < C.rows; ++i) {
            double v = std::abs(C.at(i, col));
            if (v > vmax) { vmax = v; imax = i; }
        }
        if (vmax <= rel_tol * scale) continue;
        if (imax != row)
            for (int j = 0; j < C.cols; ++j) std::swap(C.at(row, j), C.at(imax, j));
        for (int i = row + 1; i < C.rows; ++i) {
            double f = C.at(i, col) / C.at(row, col);
            for (int j = col; j < C.cols; ++j) C.at(i, j) -= f * C.at(row, j);
        }
        ++row;
        ++rank;
    }
    return rank;
}

} // namespace grapde::linalg
