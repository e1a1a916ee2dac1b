#pragma once

#include "spectra/core.hpp"
#include "spectra/families.hpp"

#include <functional>
#include <limits>
#include <memory>

namespace spectra {

/// Superpotential W(z) with its derivative and the two asymptotic limits
/// W(z -> z_max end), W(z -> z_min end). A normalizable ground state on the
/// full line needs asymptotic_plus > 0 > asymptotic_minus.
struct Superpotential {
    std::function<double(double)> value;
    std::function<double(double)> slope;
    double asymptotic_plus{0.0};
    double asymptotic_minus{0.0};
};

inline Superpotential closed_form_superpotential(std::function<double(double)> w,
                                                 std::function<double(double)> dw,
                                                 double asym_plus, double asym_minus) {
    return Superpotential{std::move(w), std::move(dw), asym_plus, asym_minus};
}

/// Wraps grid samples as a Superpotential: linear interpolation for the value,
/// second-order central differences for the slope.
inline Superpotential sampled_superpotential(const Grid1D& grid, const Vector& w) {
    if (w.size() != grid.n_points)
        throw std::invalid_argument("sampled_superpotential: samples/grid mismatch");
    auto samples = std::make_shared<Vector>(w);
    auto deriv = std::make_shared<Vector>(w.size());
    const double h = grid.spacing;
    const auto n = w.size();
    (*deriv)(0) = (w(1) - w(0)) / h;
    (*deriv)(n - 1) = (w(n - 1) - w(n - 2)) / h;
    for (Eigen::Index i = 1; i + 1 < n; ++i) (*deriv)(i) = (w(i + 1) - w(i - 1)) / (2.0 * h);
    Superpotential sp;
    sp.value = [grid, samples](double z) { return interpolate_linear(grid, *samples, z); };
    sp.slope = [grid, deriv](double z) { return interpolate_linear(grid, *deriv, z); };
    sp.asymptotic_plus = w(n - 1);
    sp.asymptotic_minus = w(0);
    return sp;
}

/// Pointwise defect W^2 - W' - V + E0; zero for an exact superpotential.
inline Vector riccati_residual(const Superpotential& w, const Vector& v, double e0,
                               const Grid1D& grid) {
    if (v.size() != grid.n_points)
        throw std::invalid_argument("riccati_residual: potential samples/grid mismatch");
    Vector r(grid.n_points);
    for (int i = 0; i < grid.n_points; ++i) {
        const double z = grid.point(i);
        const double wz = w.value(z);
        r(i) = wz * wz - w.slope(z) - v(i) + e0;
    }
    return r;
}

/// Max |residual| over interior points (3 excluded at each edge).
inline double interior_max_abs(const Vector& v, int edge = 3) {
    double m = 0.0;
    for (Eigen::Index i = edge; i + edge < v.size(); ++i) m = std::max(m, std::abs(v(i)));
    return m;
}

/// Ground state exp(-int W) sampled by running trapezoid integration and
/// normalized to unit L2 norm. Rejects non-normalizable superpotentials.
inline Vector ground_state_wavefunction(const Superpotential& w, const Grid1D& grid) {
    if (!(w.asymptotic_plus > 0.0))
        throw std::domain_error("ground_state_wavefunction: W(z_max end) = " +
                                std::to_string(w.asymptotic_plus) + " is not > 0, state not normalizable");
    if (!(w.asymptotic_minus < 0.0))
        throw std::domain_error("ground_state_wavefunction: W(z_min end) = " +
                                std::to_string(w.asymptotic_minus) + " is not < 0, state not normalizable");
    Vector ws(grid.n_points);
    for (int i = 0; i < grid.n_points; ++i) ws(i) = w.value(grid.point(i));
    Vector expo = -cumulative_trapezoid(ws, grid.spacing);
    expo.array() -= expo.maxCoeff();  // scale so exp() never overflows
    Vector psi = expo.array().exp();
    const double norm = std::sqrt(trapezoid(Vector(psi.array().square()), grid.spacing));
    return psi / norm;
}

/// SUSY partner W^2 + W' sampled on the grid.
inline Vector partner_potential(const Superpotential& w, const Grid1D& grid) {
    Vector v(grid.n_points);
    for (int i = 0; i < grid.n_points; ++i) {
        const double z = grid.point(i);
        const double wz = w.value(z);
        v(i) = wz * wz + w.slope(z);
    }
    return v;
}

/// Rayleigh quotient of psi in the second-order discrete Schroedinger operator.
inline double rayleigh_quotient(const Vector& psi, const Vector& v, const Grid1D& grid) {
    const double h = grid.spacing;
    double num = 0.0, den = 0.0;
    for (Eigen::Index i = 1; i + 1 < psi.size(); ++i) {
        const double lap = (psi(i + 1) - 2.0 * psi(i) + psi(i - 1)) / (h * h);
        num += psi(i) * (-lap + v(i) * psi(i));
        den += psi(i) * psi(i);
    }
    return num / den;
}

}  // namespace spectra
