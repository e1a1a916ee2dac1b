#pragma once

#include "spectra/families.hpp"
#include "spectra/tridiagonal.hpp"

#include <functional>
#include <memory>
#include <vector>

namespace spectra {

/// Result of an independent numeric eigensolve: levels below the continuum
/// threshold, with a per-level Richardson error estimate from the
/// coarse/fine grid pair.
struct OracleResult {
    std::vector<SpectrumLevel> levels;       // provenance numeric_oracle
    std::vector<double> certified_tolerance; // |E_fine - E_coarse| / 3 per level
    Grid1D coarse;
    Grid1D fine;
    double continuum_threshold{std::numeric_limits<double>::infinity()};
    bool truncated{false};  // fewer bound levels than requested
};

namespace detail {

/// Interior eigenvalues of -u'' + V u = E u with Dirichlet walls at
/// [wall_lo, wall_hi] and n interior nodes at spacing h.
inline Vector dirichlet_eigenvalues(const std::function<double(double)>& V, double wall_lo,
                                    double h, Eigen::Index n, int k) {
    Vector d(n), e(n - 1);
    const double inv_h2 = 1.0 / (h * h);
    for (Eigen::Index i = 0; i < n; ++i) d(i) = 2.0 * inv_h2 + V(wall_lo + h * static_cast<double>(i + 1));
    e.setConstant(-inv_h2);
    return lowest_eigenvalues(d, e, static_cast<int>(std::min<Eigen::Index>(k, n)));
}

}  // namespace detail

/// Second-order central differences on the grid, Dirichlet walls one spacing
/// outside each end, Sturm bisection for the lowest k levels, Richardson
/// extrapolation against a half-spacing mesh sharing the same walls. Levels at
/// or above the continuum threshold are dropped (truncated flag set instead of
/// erroring when fewer bound levels exist than requested).
inline OracleResult eigen_solve(const std::function<double(double)>& V, const Grid1D& grid,
                                int k_levels, bool want_wavefunctions = false) {
    if (k_levels < 1) throw std::invalid_argument("eigen_solve: k_levels must be >= 1");
    const double h = grid.spacing;
    const double wall_lo = grid.z_min - h;
    const Eigen::Index n_coarse = grid.n_points;
    const Eigen::Index n_fine = 2 * (n_coarse + 1) - 1;

    const int k = k_levels;
    Vector ec = detail::dirichlet_eigenvalues(V, wall_lo, h, n_coarse, k);
    Vector ef = detail::dirichlet_eigenvalues(V, wall_lo, 0.5 * h, n_fine, k);

    // continuum threshold depends on which ends are genuine decay directions
    double threshold;
    switch (grid.kind) {
        case GridKind::full_line:
            threshold = std::min(V(grid.z_min), V(grid.z_max));
            break;
        case GridKind::half_line:
        case GridKind::radial:
            threshold = V(grid.z_max);
            break;
        case GridKind::angular:
        default:
            threshold = std::numeric_limits<double>::infinity();
            break;
    }

    OracleResult out;
    out.coarse = grid;
    out.fine = grid;
    out.fine.n_points = static_cast<int>(n_fine);
    out.fine.spacing = 0.5 * h;
    out.fine.z_min = grid.z_min - 0.5 * h;
    out.fine.z_max = grid.z_max + 0.5 * h;
    out.continuum_threshold = threshold;

    for (int j = 0; j < k; ++j) {
        const double e_ext = (4.0 * ef(j) - ec(j)) / 3.0;
        if (!(e_ext < threshold)) {
            out.truncated = true;
            break;
        }
        SpectrumLevel lvl;
        lvl.n = j;
        lvl.energy = e_ext;
        lvl.provenance = Provenance::numeric_oracle;
        if (want_wavefunctions) {
            Vector d(n_coarse), e(n_coarse - 1);
            const double inv_h2 = 1.0 / (h * h);
            for (Eigen::Index i = 0; i < n_coarse; ++i)
                d(i) = 2.0 * inv_h2 + V(wall_lo + h * static_cast<double>(i + 1));
            e.setConstant(-inv_h2);
            Vector psi = tridiagonal_eigenvector(d, e, ec(j));
            psi /= std::sqrt(trapezoid(Vector(psi.array().square()), h));
            lvl.wavefunction = std::move(psi);
        }
        out.levels.push_back(std::move(lvl));
        out.certified_tolerance.push_back(std::abs(ef(j) - ec(j)) / 3.0);
    }
    if (static_cast<int>(out.levels.size()) < k_levels) out.truncated = true;
    return out;
}

inline OracleResult eigen_solve(const Vector& v_samples, const Grid1D& grid, int k_levels,
                                bool want_wavefunctions = false) {
    if (v_samples.size() != grid.n_points)
        throw std::invalid_argument("eigen_solve: potential samples/grid mismatch");
    auto samples = std::make_shared<Vector>(v_samples);
    Grid1D g = grid;
    return eigen_solve([g, samples](double z) { return interpolate_linear(g, *samples, z); },
                       grid, k_levels, want_wavefunctions);
}

/// Default grids. The radial default puts the first node one spacing from the
/// origin so the Dirichlet wall coincides with r = 0, which keeps the
/// second-order error model clean for wavefunctions vanishing like r^(l+1).
inline Grid1D default_full_line_grid(double L = 20.0, double h = 0.01) {
    const int n = static_cast<int>(std::lround(2.0 * L / h)) + 1;
    return make_grid(GridKind::full_line, -L, L, n);
}

inline Grid1D default_radial_grid(double L = 80.0, double h = 0.01) {
    const int n = static_cast<int>(std::lround(L / h));
    return make_grid(GridKind::radial, h, L, n);
}

inline Grid1D default_half_line_grid(double L = 20.0, double offset = 1e-3, int n = 2001) {
    return make_grid(GridKind::half_line, offset, L, n);
}

/// Reduced radial problem -u'' + [U1(r) + l_eff(l_eff+1)/r^2] u = E u.
inline OracleResult radial_solve(const PotentialFamily& u1, double ell_eff, const Grid1D& grid,
                                 int k_levels, bool want_wavefunctions = false) {
    if (grid.kind != GridKind::radial)
        throw std::invalid_argument("radial_solve: needs a radial grid");
    if (!(ell_eff >= 0.0)) throw std::invalid_argument("radial_solve: ell_eff must be >= 0");
    const double cf = ell_eff * (ell_eff + 1.0);
    // fall-to-center guard: total r^-2 coefficient near the origin must stay
    // above the critical -1/4
    const double r0 = grid.z_min;
    const double r2_coef = r0 * r0 * evaluate_potential(u1, r0);
    if (r2_coef + cf < -0.25)
        throw std::invalid_argument("radial_solve: attractive singularity stronger than -1/(4 r^2)");
    PotentialFamily fam = u1;
    auto V = [fam, cf](double r) { return evaluate_potential(fam, r) + cf / (r * r); };
    return eigen_solve(V, grid, k_levels, want_wavefunctions);
}

namespace detail {

/// Flux-form cell-centered discretization of the polar operator
///   -(1/sin t) d/dt (sin t dP/dt) + U(t) P = lam P   on (lo, hi),
/// symmetrized by the sqrt(sin t) congruence. Faces at the interval ends carry
/// sin(t) -> 0 naturally at the poles; a Dirichlet wall can be requested at
/// the lower face (used to cut the domain at the cos^-2 barrier).
inline Vector polar_flux_eigenvalues(const std::function<double(double)>& U, double lo, double hi,
                                     int cells, int k, bool dirichlet_lo) {
    const double h = (hi - lo) / cells;
    Vector d(cells), e(cells - 1), s(cells);
    for (int i = 0; i < cells; ++i) s(i) = std::sin(lo + (i + 0.5) * h);
    const double inv_h2 = 1.0 / (h * h);
    for (int i = 0; i < cells; ++i) {
        const double sf_lo = std::sin(lo + i * h);
        const double sf_hi = std::sin(lo + (i + 1) * h);
        d(i) = (sf_lo + sf_hi) * inv_h2 / s(i) + U(lo + (i + 0.5) * h);
    }
    if (dirichlet_lo) d(0) += std::sin(lo) * inv_h2 / s(0);  // half-cell flux to the wall
    for (int i = 0; i + 1 < cells; ++i)
        e(i) = -std::sin(lo + (i + 1) * h) * inv_h2 / std::sqrt(s(i) * s(i + 1));
    return lowest_eigenvalues(d, e, std::min(k, cells));
}

}  // namespace detail

/// Direct polar-equation solve in theta; the reported energies are the
/// l(l+1) eigenvalues for the given m. ring/zero/custom forms are solved on
/// the whole interval (0, pi) with natural pole conditions; double_trig forms
/// on (pi/2, pi) with a Dirichlet wall at the cos^-2 barrier, matching the
/// half-line z-space problem they map to.
inline OracleResult solve_angular_direct(int m, const AngularFamily& u2, int k_levels,
                                         int cells = 1000) {
    if (k_levels < 1) throw std::invalid_argument("solve_angular_direct: k_levels must be >= 1");
    const double m2 = static_cast<double>(m) * m;
    AngularFamily fam = u2;
    auto U = [fam, m2](double t) {
        const double s = std::sin(t);
        return m2 / (s * s) + fam.evaluate_theta(t);
    };
    const bool half = (u2.tag == AngularFamilyTag::double_trig);
    const double lo = half ? 0.5 * kPi : 0.0;
    const double hi = kPi;

    Vector ec = detail::polar_flux_eigenvalues(U, lo, hi, cells, k_levels, half);
    Vector ef = detail::polar_flux_eigenvalues(U, lo, hi, 2 * cells, k_levels, half);

    OracleResult out;
    const double h = (hi - lo) / cells;
    out.coarse = Grid1D{GridKind::angular, lo + 0.5 * h, hi - 0.5 * h, cells, h};
    out.fine = Grid1D{GridKind::angular, lo + 0.25 * h, hi - 0.25 * h, 2 * cells, 0.5 * h};
    for (int j = 0; j < static_cast<int>(ec.size()); ++j) {
        out.levels.push_back(
            SpectrumLevel{j, (4.0 * ef(j) - ec(j)) / 3.0, Provenance::numeric_oracle, std::nullopt});
        out.certified_tolerance.push_back(std::abs(ef(j) - ec(j)) / 3.0);
    }
    return out;
}

}  // namespace spectra
