#pragma once

#include "spectra/families.hpp"
#include "spectra/susy.hpp"

#include <vector>

namespace spectra {

/// Everything the library knows about one closed-form family: potential shape,
/// the step superpotential W_n of the shape-invariance chain, the energy
/// formula E_n, and the bound-state acceptance rule that truncates the ladder.
struct FamilyDefinition {
    FamilyTag tag;
    GridKind domain;
    std::function<double(const PotentialFamily&, double)> potential;
    std::function<Superpotential(const PotentialFamily&, int)> step_superpotential;
    std::function<double(const PotentialFamily&, int)> energy;
    std::function<bool(const PotentialFamily&, int)> bound;
    /// Smaller asymptotic potential value (continuum threshold); bound states
    /// must lie strictly below it.
    std::function<double(const PotentialFamily&)> continuum_threshold;
};

namespace detail {

inline Superpotential pt1_step(const PotentialFamily& f, int n) {
    const double s = f.param("ell") - n;
    return closed_form_superpotential(
        [s](double z) { return s * std::tanh(z); },
        [s](double z) { const double c = sech(z); return s * c * c; }, s, -s);
}

inline Superpotential rm2_step(const PotentialFamily& f, int n) {
    const double s = f.param("ell") - n;
    const double g = f.param("gamma");
    const double shift = g / (2.0 * s);
    return closed_form_superpotential(
        [s, shift](double z) { return s * std::tanh(z) - shift; },
        [s](double z) { const double c = sech(z); return s * c * c; }, s - shift, -s - shift);
}

inline Superpotential pt2_step(const PotentialFamily& f, int n) {
    const double s = f.param("ell") - n;
    const double a = f.param("alpha") + n;
    return closed_form_superpotential(
        [s, a](double z) { return s * std::tanh(z) - a * coth(z); },
        [s, a](double z) {
            const double c = sech(z), cs = csch(z);
            return s * c * c + a * cs * cs;
        },
        s - a, -std::numeric_limits<double>::infinity());
}

inline Superpotential coulomb_step(const PotentialFamily& f, int n) {
    const double A = f.param("A");
    const double l1 = f.param("ell") + 1.0 + n;
    return closed_form_superpotential(
        [A, l1](double r) { return A / (2.0 * l1) - l1 / r; },
        [l1](double r) { return l1 / (r * r); },
        A / (2.0 * l1), -std::numeric_limits<double>::infinity());
}

inline Superpotential oscillator_step(const PotentialFamily& f, int n) {
    const double w = f.param("omega");
    const double l1 = f.param("ell") + 1.0 + n;
    return closed_form_superpotential(
        [w, l1](double r) { return 0.5 * w * r - l1 / r; },
        [w, l1](double r) { return 0.5 * w + l1 / (r * r); },
        std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity());
}

}  // namespace detail

inline const FamilyDefinition& lookup(FamilyTag tag) {
    static const std::vector<FamilyDefinition> defs = [] {
        std::vector<FamilyDefinition> d;
        d.push_back({FamilyTag::poschl_teller_I, GridKind::full_line,
                     [](const PotentialFamily& f, double z) { return evaluate_potential(f, z); },
                     detail::pt1_step,
                     [](const PotentialFamily& f, int n) {
                         const double s = f.param("ell") - n;
                         return -s * s;
                     },
                     [](const PotentialFamily& f, int n) { return f.param("ell") - n > 0.0; },
                     [](const PotentialFamily&) { return 0.0; }});
        d.push_back({FamilyTag::rosen_morse_II, GridKind::full_line,
                     [](const PotentialFamily& f, double z) { return evaluate_potential(f, z); },
                     detail::rm2_step,
                     [](const PotentialFamily& f, int n) {
                         const double s = f.param("ell") - n;
                         const double g = f.param("gamma");
                         return -s * s - g * g / (4.0 * s * s);
                     },
                     [](const PotentialFamily& f, int n) {
                         // normalizable step superpotential and sub-threshold energy
                         const double s = f.param("ell") - n;
                         const double g = f.param("gamma");
                         if (!(s > 0.0) || !(s * s > 0.5 * std::abs(g))) return false;
                         const double e = -s * s - g * g / (4.0 * s * s);
                         return e < -std::abs(g);
                     },
                     [](const PotentialFamily& f) { return -std::abs(f.param("gamma")); }});
        d.push_back({FamilyTag::poschl_teller_II, GridKind::half_line,
                     [](const PotentialFamily& f, double z) { return evaluate_potential(f, z); },
                     detail::pt2_step,
                     [](const PotentialFamily& f, int n) {
                         const double s = f.param("ell") - f.param("alpha") - 2.0 * n;
                         return -s * s;
                     },
                     [](const PotentialFamily& f, int n) {
                         return f.param("ell") - f.param("alpha") - 2.0 * n > 0.0;
                     },
                     [](const PotentialFamily&) { return 0.0; }});
        d.push_back({FamilyTag::radial_coulomb, GridKind::radial,
                     [](const PotentialFamily& f, double r) { return evaluate_potential(f, r); },
                     detail::coulomb_step,
                     [](const PotentialFamily& f, int n) {
                         const double A = f.param("A");
                         const double N = n + f.param("ell") + 1.0;
                         return -A * A / (4.0 * N * N);
                     },
                     [](const PotentialFamily&, int) { return true; },
                     [](const PotentialFamily&) { return 0.0; }});
        d.push_back({FamilyTag::radial_oscillator, GridKind::radial,
                     [](const PotentialFamily& f, double r) { return evaluate_potential(f, r); },
                     detail::oscillator_step,
                     [](const PotentialFamily& f, int n) {
                         return f.param("omega") * (2.0 * n + f.param("ell") + 1.5);
                     },
                     [](const PotentialFamily&, int) { return true; },
                     [](const PotentialFamily&) { return std::numeric_limits<double>::infinity(); }});
        return d;
    }();
    for (const auto& def : defs)
        if (def.tag == tag) return def;
    throw std::invalid_argument("lookup: no catalog entry for " + to_string(tag));
}

/// Full analytic spectrum of a shape-invariant family via the parameter-shift
/// chain; levels are emitted while the bound-state criterion accepts them.
inline std::vector<SpectrumLevel> ladder_spectrum(const PotentialFamily& family, int n_max) {
    if (family.tag == FamilyTag::custom_sampled)
        throw std::invalid_argument("ladder_spectrum: custom_sampled has no analytic ladder");
    const auto& def = lookup(family.tag);
    if ((family.tag == FamilyTag::poschl_teller_I || family.tag == FamilyTag::rosen_morse_II ||
         family.tag == FamilyTag::poschl_teller_II) && !(family.param("ell") > 0.0))
        throw std::invalid_argument("ladder_spectrum: angular families need ell > 0");
    std::vector<SpectrumLevel> levels;
    for (int n = 0; n <= n_max; ++n) {
        if (!def.bound(family, n)) break;
        levels.push_back(SpectrumLevel{n, def.energy(family, n), Provenance::analytic_ladder, std::nullopt});
    }
    return levels;
}

// -- identification of exactly solvable perturbations --

enum class DeltaAnsatz { constant, coth_like };

/// What a solved perturbation ansatz implies: the resulting total family, the
/// perturbing potential it corresponds to, and the ground-level energy shift.
struct IdentifiedFamily {
    FamilyTag tag;
    PotentialFamily family;
    std::function<double(double)> delta_V;
    double delta_eps0;
};

/// Maps a fitted ansatz dW (a constant b, or a*coth z) on a sech^2 base with
/// strength ell to the closed-form family it generates. These two shapes are
/// the identifiable dictionary; extending it (e.g. a*tanh z + b) is an
/// explicit extension point, intentionally not populated.
inline IdentifiedFamily identify(DeltaAnsatz ansatz, double parameter, double ell) {
    if (ansatz == DeltaAnsatz::constant) {
        const double b = parameter;
        if (b == 0.0) {
            IdentifiedFamily out{FamilyTag::poschl_teller_I,
                                 make_family(FamilyTag::poschl_teller_I, {{"ell", ell}}),
                                 [](double) { return 0.0; }, 0.0};
            return out;
        }
        const double gamma = -2.0 * b * ell;  // dW = b, paper's b/ell with b = -gamma/2
        IdentifiedFamily out{FamilyTag::rosen_morse_II,
                             make_family(FamilyTag::rosen_morse_II, {{"ell", ell}, {"gamma", gamma}}),
                             [gamma](double z) { return -gamma * std::tanh(z); },
                             -gamma * gamma / (4.0 * ell * ell)};
        return out;
    }
    // dW = a * coth z with a = -alpha
    const double alpha = -parameter;
    if (!(alpha > 0.0))
        throw std::invalid_argument("identify: coth ansatz needs a negative coefficient (a = -alpha)");
    IdentifiedFamily out{FamilyTag::poschl_teller_II,
                         make_family(FamilyTag::poschl_teller_II, {{"ell", ell}, {"alpha", alpha}}),
                         [alpha](double z) {
                             const double cs = csch(z);
                             return alpha * (alpha - 1.0) * cs * cs;
                         },
                         -alpha * (alpha - 2.0 * ell)};
    return out;
}

}  // namespace spectra
