#pragma once

#include "spectra/core.hpp"

#include <map>
#include <string>

namespace spectra {

enum class FamilyTag {
    poschl_teller_I,
    rosen_morse_II,
    poschl_teller_II,
    radial_coulomb,
    radial_oscillator,
    custom_sampled,
};

inline std::string to_string(FamilyTag t) {
    switch (t) {
        case FamilyTag::poschl_teller_I: return "poschl_teller_I";
        case FamilyTag::rosen_morse_II: return "rosen_morse_II";
        case FamilyTag::poschl_teller_II: return "poschl_teller_II";
        case FamilyTag::radial_coulomb: return "radial_coulomb";
        case FamilyTag::radial_oscillator: return "radial_oscillator";
        case FamilyTag::custom_sampled: return "custom_sampled";
    }
    return "?";
}

/// Closed-form potential family with named real parameters. custom_sampled
/// instead carries its own grid and samples and is evaluated by linear
/// interpolation.
struct PotentialFamily {
    FamilyTag tag{FamilyTag::poschl_teller_I};
    std::map<std::string, double> params;
    std::optional<Grid1D> sample_grid;
    Vector samples;

    double param(const std::string& name) const {
        auto it = params.find(name);
        if (it == params.end())
            throw std::invalid_argument("PotentialFamily: missing parameter '" + name + "' for " + to_string(tag));
        return it->second;
    }
    double param_or(const std::string& name, double fallback) const {
        auto it = params.find(name);
        return it == params.end() ? fallback : it->second;
    }
    bool has(const std::string& name) const { return params.count(name) != 0; }
};

inline PotentialFamily make_family(FamilyTag tag, std::map<std::string, double> params) {
    PotentialFamily f;
    f.tag = tag;
    f.params = std::move(params);
    if (tag == FamilyTag::poschl_teller_II) {
        // c = alpha(alpha-1); when both are given they must agree.
        const bool has_c = f.has("c"), has_a = f.has("alpha");
        if (!has_c && !has_a)
            throw std::invalid_argument("poschl_teller_II needs c or alpha");
        if (has_c && f.param("c") < 0.0)
            throw std::invalid_argument("poschl_teller_II requires c >= 0");
        if (has_c && has_a) {
            const double implied = 0.5 + std::sqrt(0.25 + f.param("c"));
            if (std::abs(f.param("alpha") - implied) > 1e-12)
                throw std::invalid_argument("poschl_teller_II: alpha inconsistent with c");
        } else if (has_c) {
            f.params["alpha"] = 0.5 + std::sqrt(0.25 + f.param("c"));
        } else {
            f.params["c"] = f.param("alpha") * (f.param("alpha") - 1.0);
        }
    }
    if (tag == FamilyTag::radial_coulomb && f.param("A") <= 0.0)
        throw std::invalid_argument("radial_coulomb requires A > 0");
    if (tag == FamilyTag::radial_oscillator && f.param("omega") <= 0.0)
        throw std::invalid_argument("radial_oscillator requires omega > 0");
    return f;
}

inline PotentialFamily make_custom_family(const Grid1D& grid, Vector samples) {
    if (samples.size() != grid.n_points)
        throw std::invalid_argument("custom_sampled: samples and grid length mismatch");
    PotentialFamily f;
    f.tag = FamilyTag::custom_sampled;
    f.sample_grid = grid;
    f.samples = std::move(samples);
    return f;
}

inline double interpolate_linear(const Grid1D& grid, const Vector& samples, double z) {
    if (z <= grid.z_min) return samples(0);
    if (z >= grid.z_max) return samples(samples.size() - 1);
    const double x = (z - grid.z_min) / grid.spacing;
    const auto i = static_cast<Eigen::Index>(x);
    const double t = x - static_cast<double>(i);
    return (1.0 - t) * samples(i) + t * samples(i + 1);
}

/// Pointwise closed-form value. The radial families return the bare U1(r)
/// (no centrifugal term); the oracle adds l_eff(l_eff+1)/r^2 itself.
inline double evaluate_potential(const PotentialFamily& f, double z) {
    switch (f.tag) {
        case FamilyTag::poschl_teller_I: {
            const double l = f.param("ell");
            const double s = sech(z);
            return -l * (l + 1.0) * s * s;
        }
        case FamilyTag::rosen_morse_II: {
            const double l = f.param("ell");
            const double g = f.param("gamma");
            const double s = sech(z);
            return -l * (l + 1.0) * s * s - g * std::tanh(z);
        }
        case FamilyTag::poschl_teller_II: {
            const double l = f.param("ell");
            const double a = f.param("alpha");
            const double s = sech(z), cs = csch(z);
            return -l * (l + 1.0) * s * s + a * (a - 1.0) * cs * cs;
        }
        case FamilyTag::radial_coulomb:
            return -f.param("A") / z;
        case FamilyTag::radial_oscillator: {
            const double w = f.param("omega");
            return 0.25 * w * w * z * z;
        }
        case FamilyTag::custom_sampled:
            return interpolate_linear(*f.sample_grid, f.samples, z);
    }
    throw std::logic_error("evaluate_potential: unknown tag");
}

inline GridKind natural_domain(FamilyTag tag) {
    switch (tag) {
        case FamilyTag::poschl_teller_I:
        case FamilyTag::rosen_morse_II: return GridKind::full_line;
        case FamilyTag::poschl_teller_II: return GridKind::half_line;
        case FamilyTag::radial_coulomb:
        case FamilyTag::radial_oscillator: return GridKind::radial;
        case FamilyTag::custom_sampled: return GridKind::full_line;
    }
    return GridKind::full_line;
}

inline Vector sample_potential(const PotentialFamily& f, const Grid1D& grid) {
    // Domain compatibility: families with a singular point at the origin must
    // not be sampled on grids that straddle it.
    if (f.tag == FamilyTag::poschl_teller_II && grid.kind == GridKind::full_line)
        throw std::invalid_argument("poschl_teller_II has a csch^2 singularity at z=0; use a half-line grid");
    if ((f.tag == FamilyTag::radial_coulomb || f.tag == FamilyTag::radial_oscillator) &&
        grid.kind != GridKind::radial)
        throw std::invalid_argument(to_string(f.tag) + " is a radial family; use a radial grid");
    Vector v(grid.n_points);
    for (int i = 0; i < grid.n_points; ++i) v(i) = evaluate_potential(f, grid.point(i));
    return v;
}

// -- theta-space angular potentials (the U2 of a separable non-central spec) --

enum class AngularFamilyTag { zero, ring_trig, double_trig, custom_theta };

inline std::string to_string(AngularFamilyTag t) {
    switch (t) {
        case AngularFamilyTag::zero: return "zero";
        case AngularFamilyTag::ring_trig: return "ring_trig";
        case AngularFamilyTag::double_trig: return "double_trig";
        case AngularFamilyTag::custom_theta: return "custom_theta";
    }
    return "?";
}

/// ring_trig:   U2(theta) = (beta + gamma cos theta) / sin^2 theta
/// double_trig: U2(theta) = delta / sin^2 theta + c / cos^2 theta
struct AngularFamily {
    AngularFamilyTag tag{AngularFamilyTag::zero};
    double beta{0.0};
    double gamma{0.0};
    double delta{0.0};
    double c{0.0};
    std::optional<Grid1D> theta_grid;
    Vector theta_samples;

    double evaluate_theta(double theta) const {
        const double s = std::sin(theta);
        switch (tag) {
            case AngularFamilyTag::zero: return 0.0;
            case AngularFamilyTag::ring_trig: return (beta + gamma * std::cos(theta)) / (s * s);
            case AngularFamilyTag::double_trig: {
                const double co = std::cos(theta);
                return delta / (s * s) + c / (co * co);
            }
            case AngularFamilyTag::custom_theta:
                return interpolate_linear(*theta_grid, theta_samples, theta);
        }
        throw std::logic_error("AngularFamily: unknown tag");
    }
};

inline AngularFamily make_ring_family(double beta, double gamma) {
    AngularFamily f;
    f.tag = AngularFamilyTag::ring_trig;
    f.beta = beta;
    f.gamma = gamma;
    return f;
}

inline AngularFamily make_double_family(double delta, double c) {
    if (c < 0.0)
        throw std::invalid_argument("double_trig requires c >= 0 (real alpha = 1/2 + sqrt(1/4 + c))");
    AngularFamily f;
    f.tag = AngularFamilyTag::double_trig;
    f.delta = delta;
    f.c = c;
    return f;
}

/// Separable non-central potential U1(r) + U2(theta)/r^2 with free azimuthal part.
struct PotentialSpec {
    PotentialFamily radial;
    AngularFamily angular;
    int m_min{0};
    int m_max{0};
};

}  // namespace spectra
