#pragma once

#include "spectra/core.hpp"

#include <vector>

namespace spectra {

/// Number of eigenvalues of the symmetric tridiagonal matrix (diag d, offdiag e)
/// strictly below x, by the Sturm sequence of the LDL^T recurrence.
inline int sturm_count(const Vector& d, const Vector& e, double x) {
    const auto n = d.size();
    int count = 0;
    double q = d(0) - x;
    if (q < 0.0) ++count;
    const double tiny = 1e-300;
    for (Eigen::Index i = 1; i < n; ++i) {
        if (q == 0.0) q = tiny;
        q = d(i) - x - e(i - 1) * e(i - 1) / q;
        if (q < 0.0) ++count;
    }
    return count;
}

/// Lowest k eigenvalues by bisection on the Sturm count. Cost O(n k) per
/// bisection sweep; no dense factorization.
inline Vector lowest_eigenvalues(const Vector& d, const Vector& e, int k) {
    const auto n = d.size();
    if (k < 1 || k > n) throw std::invalid_argument("lowest_eigenvalues: bad k");
    // Gershgorin bounds
    double lo = d(0), hi = d(0);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double r = (i > 0 ? std::abs(e(i - 1)) : 0.0) + (i + 1 < n ? std::abs(e(i)) : 0.0);
        lo = std::min(lo, d(i) - r);
        hi = std::max(hi, d(i) + r);
    }
    const double scale = std::max(std::abs(lo), std::abs(hi));
    Vector out(k);
    double lower = lo;
    for (int j = 0; j < k; ++j) {
        double a = lower, b = hi;
        // locate eigenvalue j: smallest x with sturm_count(x) >= j+1
        while (b - a > 1e-14 * scale + 1e-300) {
            const double mid = 0.5 * (a + b);
            if (mid == a || mid == b) break;
            if (sturm_count(d, e, mid) >= j + 1)
                b = mid;
            else
                a = mid;
        }
        out(j) = 0.5 * (a + b);
        lower = a;  // eigenvalues are ordered; restart from the last bracket
    }
    return out;
}

/// Eigenvector by inverse iteration at a converged eigenvalue. Solves the
/// shifted tridiagonal system with partial-pivot LU (three stored bands plus
/// fill-in). Returns the unnormalized vector; caller applies the grid norm.
inline Vector tridiagonal_eigenvector(const Vector& d, const Vector& e, double lambda) {
    const auto n = d.size();
    // slightly perturb the shift so the factorization stays nonsingular
    double scale = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) scale = std::max(scale, std::abs(d(i)));
    const double shift = lambda + 1e-12 * std::max(scale, 1.0);

    std::vector<double> diag(n), lower(n > 1 ? n - 1 : 0), upper1(n > 1 ? n - 1 : 0),
        upper2(n > 2 ? n - 2 : 0);
    Vector x = Vector::Constant(n, 1.0);
    for (Eigen::Index i = 0; i < n; ++i) x(i) = 1.0 + 1e-3 * static_cast<double>((i * 2654435761u) % 1000);

    for (int iter = 0; iter < 3; ++iter) {
        // refill bands
        for (Eigen::Index i = 0; i < n; ++i) diag[i] = d(i) - shift;
        for (Eigen::Index i = 0; i + 1 < n; ++i) {
            lower[i] = e(i);
            upper1[i] = e(i);
        }
        std::fill(upper2.begin(), upper2.end(), 0.0);
        Vector b = x;
        // forward elimination with partial pivoting
        for (Eigen::Index i = 0; i + 1 < n; ++i) {
            if (std::abs(lower[i]) > std::abs(diag[i])) {
                std::swap(diag[i], lower[i]);
                const double t = upper1[i];
                upper1[i] = diag[i + 1];
                diag[i + 1] = t;
                if (i + 2 < n) {
                    upper2[i] = upper1[i + 1];
                    upper1[i + 1] = 0.0;
                }
                std::swap(b(i), b(i + 1));
            }
            const double piv = diag[i] == 0.0 ? 1e-300 : diag[i];
            const double m = lower[i] / piv;
            diag[i + 1] -= m * upper1[i];
            if (i + 2 < n) upper1[i + 1] -= m * upper2[i];
            b(i + 1) -= m * b(i);
        }
        // back substitution
        for (Eigen::Index i = n - 1; i >= 0; --i) {
            double s = b(i);
            if (i + 1 < n) s -= upper1[i] * b(i + 1);
            if (i + 2 < n) s -= upper2[i] * b(i + 2);
            const double piv = diag[i] == 0.0 ? 1e-300 : diag[i];
            b(i) = s / piv;
        }
        x = b / b.norm();
    }
    // fix the sign: largest-magnitude component positive
    Eigen::Index imax = 0;
    x.cwiseAbs().maxCoeff(&imax);
    if (x(imax) < 0.0) x = -x;
    return x;
}

}  // namespace spectra
