#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

namespace spectra {

using Vector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

enum class GridKind { full_line, half_line, radial, angular };

inline std::string to_string(GridKind k) {
    switch (k) {
        case GridKind::full_line: return "full_line";
        case GridKind::half_line: return "half_line";
        case GridKind::radial: return "radial";
        case GridKind::angular: return "angular";
    }
    return "?";
}

/// Uniform sampling of one coordinate. Immutable after construction via make_grid().
struct Grid1D {
    GridKind kind{GridKind::full_line};
    double z_min{0.0};
    double z_max{0.0};
    int n_points{0};
    double spacing{0.0};

    Vector points() const { return Vector::LinSpaced(n_points, z_min, z_max); }
    double point(int i) const { return z_min + spacing * i; }
};

inline Grid1D make_grid(GridKind kind, double z_min, double z_max, int n_points) {
    if (n_points < 16) throw std::invalid_argument("make_grid: n_points must be >= 16");
    if (!(z_min < z_max)) throw std::invalid_argument("make_grid: z_min must be < z_max");
    if ((kind == GridKind::half_line || kind == GridKind::radial) && !(z_min > 0.0))
        throw std::invalid_argument("make_grid: singular endpoint included; half-line/radial grids need z_min > 0");
    if (kind == GridKind::angular && !(z_min > 0.0 && z_max < kPi))
        throw std::invalid_argument("make_grid: angular grids must lie strictly inside (0, pi)");
    Grid1D g;
    g.kind = kind;
    g.z_min = z_min;
    g.z_max = z_max;
    g.n_points = n_points;
    g.spacing = (z_max - z_min) / static_cast<double>(n_points - 1);
    return g;
}

/// Composite trapezoid on a uniform grid.
inline double trapezoid(const Vector& f, double h) {
    const auto n = f.size();
    if (n < 2) return 0.0;
    return h * (f.sum() - 0.5 * (f(0) + f(n - 1)));
}

/// Running trapezoid integral, zero at the first node.
inline Vector cumulative_trapezoid(const Vector& f, double h) {
    Vector out(f.size());
    out(0) = 0.0;
    for (Eigen::Index i = 1; i < f.size(); ++i)
        out(i) = out(i - 1) + 0.5 * h * (f(i - 1) + f(i));
    return out;
}

enum class Provenance { analytic_ladder, perturbative, numeric_oracle };

inline std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::analytic_ladder: return "analytic_ladder";
        case Provenance::perturbative: return "perturbative";
        case Provenance::numeric_oracle: return "numeric_oracle";
    }
    return "?";
}

/// One bound state of a 1D problem.
struct SpectrumLevel {
    int n{0};
    double energy{0.0};
    Provenance provenance{Provenance::analytic_ladder};
    std::optional<Vector> wavefunction;  // unit L2 norm on its grid when present
};

struct QuantumNumbers {
    int n_r{0};
    int n_theta{0};
    int m{0};
};

inline double sech(double z) { return 1.0 / std::cosh(z); }
inline double csch(double z) { return 1.0 / std::sinh(z); }
inline double coth(double z) { return std::cosh(z) / std::sinh(z); }

}  // namespace spectra
