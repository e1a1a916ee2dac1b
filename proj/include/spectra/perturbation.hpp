#pragma once

#include "spectra/catalog.hpp"
#include "spectra/susy.hpp"

#include <functional>
#include <vector>

namespace spectra {

struct PerturbationOrder {
    int k{0};
    Vector delta_W;      // on the base grid
    double delta_eps{0.0};
};

struct PerturbationSeries {
    std::vector<PerturbationOrder> orders;
    bool terminated{false};       // two consecutive orders vanished
    std::vector<double> partial_sums;
    std::vector<double> stability;  // per-order Richardson stability estimate
    double total_delta_eps{0.0};
    Grid1D grid;
};

namespace detail {

/// One perturbation order on a single grid:
///   delta_eps_k = <chi^2 rhs_k> / <chi^2>,
///   delta_W_k(z) = -(1/chi^2) int chi^2 (rhs_k - delta_eps_k).
/// The running integral is taken from the nearer boundary on each side of the
/// chi^2 peak and seeded with the asymptotic tail contribution, so the ratio
/// stays finite where chi^2 underflows toward the grid ends.
inline PerturbationOrder order_on_grid(const Superpotential& w, const Vector& chi_sq,
                                       const Vector& rhs, const Grid1D& grid, int k) {
    const double h = grid.spacing;
    const double norm = trapezoid(chi_sq, h);
    const double delta_eps = trapezoid(Vector(chi_sq.array() * rhs.array()), h) / norm;

    Vector f = chi_sq.array() * (rhs.array() - delta_eps);
    Eigen::Index peak = 0;
    chi_sq.maxCoeff(&peak);

    const double w_lo = std::abs(w.value(grid.z_min));
    const double w_hi = std::abs(w.value(grid.z_max));
    const double seed_lo = chi_sq(0) * (rhs(0) - delta_eps) / (2.0 * std::max(w_lo, 1e-12));
    const double seed_hi =
        chi_sq(chi_sq.size() - 1) * (rhs(rhs.size() - 1) - delta_eps) / (2.0 * std::max(w_hi, 1e-12));

    Vector fwd = cumulative_trapezoid(f, h);
    Vector bwd = cumulative_trapezoid(Vector(f.reverse()), h).reverse();

    PerturbationOrder out;
    out.k = k;
    out.delta_W.resize(f.size());
    for (Eigen::Index i = 0; i < f.size(); ++i) {
        if (i < peak)
            out.delta_W(i) = -(seed_lo + fwd(i)) / chi_sq(i);
        else
            out.delta_W(i) = (seed_hi + bwd(i)) / chi_sq(i);
    }
    out.delta_eps = delta_eps;

    // quadrature/normalizability failure shows up as blow-up at the far ends
    const double interior = interior_max_abs(out.delta_W, static_cast<int>(f.size() / 4));
    const double edges = out.delta_W.cwiseAbs().maxCoeff();
    if (edges > 1e6 * std::max(1.0, interior))
        throw std::runtime_error("solve_order: delta_W_" + std::to_string(k) +
                                 " unbounded at the grid edge (max " + std::to_string(edges) + ")");
    return out;
}

inline Vector chi_squared_for(const Superpotential& w, const Grid1D& grid) {
    Vector chi = ground_state_wavefunction(w, grid);
    return chi.array().square();
}

}  // namespace detail

/// One order of the expansion; rhs_k = dV_k - sum_{j=1}^{k-1} dW_j dW_{k-j}
/// is assembled by the caller.
inline PerturbationOrder solve_order(const Superpotential& w, const Vector& chi0_sq,
                                     const Vector& rhs_k, const Grid1D& grid, int k = 1) {
    if (chi0_sq.size() != grid.n_points || rhs_k.size() != grid.n_points)
        throw std::invalid_argument("solve_order: samples/grid mismatch");
    return detail::order_on_grid(w, chi0_sq, rhs_k, grid, k);
}

namespace detail {

inline std::vector<PerturbationOrder> series_on_grid(
    const Superpotential& w, const Grid1D& grid,
    const std::vector<std::function<double(double)>>& delta_V_by_order, int k_max) {
    const Vector chi_sq = chi_squared_for(w, grid);
    std::vector<PerturbationOrder> orders;
    for (int k = 1; k <= k_max; ++k) {
        Vector rhs(grid.n_points);
        if (static_cast<int>(delta_V_by_order.size()) >= k && delta_V_by_order[k - 1]) {
            for (int i = 0; i < grid.n_points; ++i) rhs(i) = delta_V_by_order[k - 1](grid.point(i));
        } else {
            rhs.setZero();
        }
        for (int j = 1; j <= k - 1; ++j)
            rhs.array() -= orders[j - 1].delta_W.array() * orders[k - j - 1].delta_W.array();
        orders.push_back(order_on_grid(w, chi_sq, rhs, grid, k));
    }
    return orders;
}

}  // namespace detail

/// Runs the order-by-order hierarchy with grid-refinement control: each order
/// is computed at spacings h, h/2, h/4 and Richardson-extrapolated (both the
/// energy shifts and the delta_W profiles, restricted to base-grid nodes).
/// Termination is declared when two consecutive orders vanish below 1e-10.
inline PerturbationSeries run_series(const Superpotential& w, const Grid1D& grid,
                                     const std::vector<std::function<double(double)>>& delta_V_by_order,
                                     int k_max) {
    if (k_max < 1) throw std::invalid_argument("run_series: k_max must be >= 1");
    Grid1D half = grid, quarter = grid;
    half.n_points = 2 * grid.n_points - 1;
    half.spacing = 0.5 * grid.spacing;
    quarter.n_points = 4 * grid.n_points - 3;
    quarter.spacing = 0.25 * grid.spacing;

    auto base = detail::series_on_grid(w, grid, delta_V_by_order, k_max);
    auto mid = detail::series_on_grid(w, half, delta_V_by_order, k_max);
    auto fine = detail::series_on_grid(w, quarter, delta_V_by_order, k_max);

    PerturbationSeries out;
    out.grid = grid;
    double running = 0.0;
    int quiet = 0;
    for (int k = 1; k <= k_max; ++k) {
        PerturbationOrder ord;
        ord.k = k;
        ord.delta_eps = (4.0 * fine[k - 1].delta_eps - mid[k - 1].delta_eps) / 3.0;
        ord.delta_W.resize(grid.n_points);
        for (int i = 0; i < grid.n_points; ++i)
            ord.delta_W(i) = (4.0 * fine[k - 1].delta_W(4 * i) - mid[k - 1].delta_W(2 * i)) / 3.0;
        out.stability.push_back(
            std::abs(ord.delta_eps - (4.0 * mid[k - 1].delta_eps - base[k - 1].delta_eps) / 3.0));
        running += ord.delta_eps;
        out.partial_sums.push_back(running);
        const bool vanished =
            std::abs(ord.delta_eps) < 1e-10 && ord.delta_W.cwiseAbs().maxCoeff() < 1e-10;
        quiet = vanished ? quiet + 1 : 0;
        out.orders.push_back(std::move(ord));
        if (quiet >= 2) {
            out.terminated = true;
            break;
        }
    }
    out.total_delta_eps = running;
    return out;
}

/// Result of solving the closed-form shift equation with an ansatz.
struct ExactDeltaResult {
    Vector delta_W;          // sampled on the grid
    double delta_eps{0.0};
    double parameter{0.0};   // the fitted constant b or coth coefficient a
    DeltaAnsatz ansatz{DeltaAnsatz::constant};
    bool exact{true};        // false when produced by the series fallback
    std::optional<PerturbationSeries> series;
};

/// Fits the ansatz parameter so dW^2 - dW' + 2 W dW - dV is constant over the
/// grid; that constant is -delta_eps. Without an ansatz, falls back to the
/// order-by-order series. A non-constant residual means the perturbation is
/// not exactly solvable by this ansatz and is reported as an error carrying
/// the residual magnitude.
inline ExactDeltaResult solve_exact_delta(const Superpotential& w, const Vector& delta_V,
                                          const Grid1D& grid,
                                          std::optional<DeltaAnsatz> ansatz = std::nullopt) {
    if (delta_V.size() != grid.n_points)
        throw std::invalid_argument("solve_exact_delta: samples/grid mismatch");
    if (!ansatz) {
        auto samples = std::make_shared<Vector>(delta_V);
        Grid1D g = grid;
        std::vector<std::function<double(double)>> dv = {
            [g, samples](double z) { return interpolate_linear(g, *samples, z); }};
        ExactDeltaResult out;
        out.exact = false;
        out.series = run_series(w, grid, dv, 8);
        out.delta_eps = out.series->total_delta_eps;
        out.delta_W = Vector::Zero(grid.n_points);
        for (const auto& ord : out.series->orders) out.delta_W += ord.delta_W;
        return out;
    }

    const int n = grid.n_points;
    Vector wz(n);
    for (int i = 0; i < n; ++i) wz(i) = w.value(grid.point(i));

    double param = 0.0;
    Vector profile(n);
    if (*ansatz == DeltaAnsatz::constant) {
        // residual b^2 + 2 W b - dV is constant iff dV = 2 b W + const
        const double mean_w = wz.mean();
        const double mean_dv = delta_V.mean();
        const double var_w = (wz.array() - mean_w).square().mean();
        const double cov = ((wz.array() - mean_w) * (delta_V.array() - mean_dv)).mean();
        param = var_w > 1e-14 ? 0.5 * cov / var_w : 0.0;
        for (int i = 0; i < n; ++i) profile(i) = param * param + 2.0 * wz(i) * param - delta_V(i);
    } else {
        // dW = a coth z: the csch^2 coefficient of dV fixes a(a+1)... a^2 + a = K
        Vector csch2(n);
        for (int i = 0; i < n; ++i) {
            const double cs = csch(grid.point(i));
            csch2(i) = cs * cs;
        }
        const double mean_c = csch2.mean();
        const double mean_dv = delta_V.mean();
        const double var_c = (csch2.array() - mean_c).square().mean();
        const double cov = ((csch2.array() - mean_c) * (delta_V.array() - mean_dv)).mean();
        const double K = var_c > 1e-14 ? cov / var_c : 0.0;
        if (0.25 + K < 0.0)
            throw std::runtime_error("solve_exact_delta: coth ansatz needs csch^2 coefficient >= -1/4");
        param = -(0.5 + std::sqrt(0.25 + K));  // negative root keeps the state normalizable
        for (int i = 0; i < n; ++i) {
            const double z = grid.point(i);
            const double ct = coth(z);
            const double cs2 = csch(z) * csch(z);
            profile(i) = param * param * ct * ct + param * cs2 + 2.0 * wz(i) * param * ct - delta_V(i);
        }
    }
    const double mean_p = profile.mean();
    const double dev = (profile.array() - mean_p).abs().maxCoeff();
    if (dev > 1e-8 * std::max(1.0, std::abs(mean_p)))
        throw std::runtime_error("solve_exact_delta: not exactly solvable by this ansatz "
                                 "(residual deviation " + std::to_string(dev) + ")");
    ExactDeltaResult out;
    out.parameter = param;
    out.ansatz = *ansatz;
    out.delta_eps = -mean_p;
    out.delta_W.resize(n);
    for (int i = 0; i < n; ++i)
        out.delta_W(i) = (*ansatz == DeltaAnsatz::constant) ? param : param * coth(grid.point(i));
    return out;
}

}  // namespace spectra
