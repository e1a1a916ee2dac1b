#pragma once

#include "spectra/families.hpp"

#include <functional>

namespace spectra {

/// Inverse of theta = 2*arctan(e^z): z = ln tan(theta/2). Monotone increasing,
/// diverges at both endpoints.
inline double theta_to_z(double theta) {
    if (!(theta > 0.0 && theta < kPi))
        throw std::domain_error("theta_to_z: theta must lie strictly inside (0, pi)");
    return std::log(std::tan(0.5 * theta));
}

inline double z_to_theta(double z) { return 2.0 * std::atan(std::exp(z)); }

/// (sin theta, cos theta) of theta(z): (sech z, -tanh z).
inline std::pair<double, double> z_identities(double z) {
    return {sech(z), -std::tanh(z)};
}

/// Polar equation rewritten as a 1D Schroedinger problem in z:
///   -P'' + [delta_V(z) - ell(ell+1) sech^2 z] P = -(m^2 + constant_shift) P.
/// The additive constant of U2 is carried symbolically in constant_shift
/// rather than added to grid potentials.
struct AngularProblem {
    double ell{0.0};
    int m{0};
    std::function<double(double)> delta_V;  // the z-space U2 minus its constant part
    double constant_shift{0.0};
    GridKind domain{GridKind::full_line};   // half_line when delta_V has a csch^2 wall
    AngularFamily source;                   // theta-space origin, kept for reconstruction
    double target_eigenvalue() const { return -(static_cast<double>(m) * m + constant_shift); }
};

/// z-space fragment of an angular family: U2(z) = sech^2 z * U2(theta(z)),
/// split into a shape part and an additive constant.
struct TransformedU2 {
    std::function<double(double)> delta_V;
    double constant_shift{0.0};
    GridKind domain{GridKind::full_line};
    AngularFamily source;
};

inline TransformedU2 transform_U2(const AngularFamily& u2) {
    TransformedU2 out;
    out.source = u2;
    switch (u2.tag) {
        case AngularFamilyTag::zero:
            out.delta_V = [](double) { return 0.0; };
            out.constant_shift = 0.0;
            return out;
        case AngularFamilyTag::ring_trig: {
            // sech^2 z * (beta + gamma*(-tanh z))/sech^2 z = beta - gamma tanh z
            const double g = u2.gamma;
            out.delta_V = [g](double z) { return -g * std::tanh(z); };
            out.constant_shift = u2.beta;
            return out;
        }
        case AngularFamilyTag::double_trig: {
            if (u2.c < 0.0)
                throw std::invalid_argument("transform_U2: double_trig needs c >= 0");
            // sech^2 z * (delta/sech^2 z + c/tanh^2 z) = delta + c csch^2 z
            const double c = u2.c;
            out.delta_V = [c](double z) { const double cs = csch(z); return c * cs * cs; };
            out.constant_shift = u2.delta;
            out.domain = GridKind::half_line;
            return out;
        }
        case AngularFamilyTag::custom_theta: {
            const AngularFamily fam = u2;
            out.delta_V = [fam](double z) {
                const double s = sech(z);
                return s * s * fam.evaluate_theta(z_to_theta(z));
            };
            out.constant_shift = 0.0;
            return out;
        }
    }
    throw std::logic_error("transform_U2: unknown tag");
}

/// Inverse of transform_U2 on catalog forms. The parameters are recovered from
/// the z-space shape itself (probed at reference points), not copied through,
/// so the round trip genuinely exercises the mapping identities. Sampled forms
/// are not invertible to a closed form and come back as a theta-resampled
/// custom_theta table.
inline AngularFamily reconstruct_U2_theta(const TransformedU2& fragment) {
    switch (fragment.source.tag) {
        case AngularFamilyTag::zero:
            return AngularFamily{};
        case AngularFamilyTag::ring_trig: {
            const double gamma = -fragment.delta_V(1.0) / std::tanh(1.0);
            return make_ring_family(fragment.constant_shift, gamma);
        }
        case AngularFamilyTag::double_trig: {
            const double s = std::sinh(1.0);
            const double c = fragment.delta_V(1.0) * s * s;
            return make_double_family(fragment.constant_shift, c);
        }
        case AngularFamilyTag::custom_theta: {
            const int n = 2001;
            Grid1D tg = make_grid(GridKind::angular, 0.01, kPi - 0.01, n);
            Vector samples(n);
            for (int i = 0; i < n; ++i) {
                const double theta = tg.point(i);
                const double z = theta_to_z(theta);
                const double s = std::sin(theta);
                samples(i) = (fragment.delta_V(z) + fragment.constant_shift) / (s * s);
            }
            AngularFamily f;
            f.tag = AngularFamilyTag::custom_theta;
            f.theta_grid = tg;
            f.theta_samples = samples;
            return f;
        }
    }
    throw std::logic_error("reconstruct_U2_theta: unknown tag");
}

/// Assembles the full z-space polar problem for given (ell, m, U2).
inline AngularProblem build_angular_equation(double ell, int m, const AngularFamily& u2) {
    if (!(ell >= 0.0)) throw std::invalid_argument("build_angular_equation: ell must be >= 0");
    TransformedU2 t = transform_U2(u2);
    AngularProblem p;
    p.ell = ell;
    p.m = m;
    p.delta_V = std::move(t.delta_V);
    p.constant_shift = t.constant_shift;
    p.domain = t.domain;
    p.source = t.source;
    return p;
}

/// Full z-space potential of an angular problem: delta_V(z) - ell(ell+1) sech^2 z.
inline double angular_problem_potential(const AngularProblem& p, double z) {
    const double s = sech(z);
    return p.delta_V(z) - p.ell * (p.ell + 1.0) * s * s;
}

}  // namespace spectra
