#pragma once

#include "spectra/angular.hpp"
#include "spectra/catalog.hpp"
#include "spectra/oracle.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace spectra {

enum class EllRoot { plus, minus };
enum class AlphaBranch { plus, minus };

/// Effective angular momentum for the ring-shaped family:
///   l = n + sqrt[ ((m^2+b) + sqrt((m^2+b)^2 - g^2)) / 2 ].
/// The minus root of the underlying quadratic is exposed as a secondary tower.
inline double ell_eff_ring(int m, double beta, double gamma, int n_theta,
                           EllRoot root = EllRoot::plus) {
    const double t = static_cast<double>(m) * m + beta;
    const double disc = t * t - gamma * gamma;
    if (disc < 0.0)
        throw std::domain_error("ell_eff_ring: no real ell, angular problem not solvable "
                                "((m^2+beta)^2 < gamma^2)");
    const double inner = root == EllRoot::plus ? t + std::sqrt(disc) : t - std::sqrt(disc);
    if (inner < 0.0)
        throw std::domain_error("ell_eff_ring: no real ell (negative inner radicand)");
    return n_theta + std::sqrt(0.5 * inner);
}

/// Effective angular momentum for the double-trig family:
///   l = 2n + (1/2 +- sqrt(1/4 + c)) + sqrt(m^2 + delta).
/// Default branch plus (alpha >= 1/2 keeps the state normalizable at the wall).
inline double ell_eff_double(int m, double delta, double c, int n_theta,
                             AlphaBranch branch = AlphaBranch::plus) {
    if (0.25 + c < 0.0) throw std::domain_error("ell_eff_double: 1/4 + c must be >= 0");
    const double m2d = static_cast<double>(m) * m + delta;
    if (m2d < 0.0) throw std::domain_error("ell_eff_double: m^2 + delta must be >= 0");
    const double alpha =
        branch == AlphaBranch::plus ? 0.5 + std::sqrt(0.25 + c) : 0.5 - std::sqrt(0.25 + c);
    return 2.0 * n_theta + alpha + std::sqrt(m2d);
}

inline double ell_eff_for(const AngularFamily& u2, int m, int n_theta) {
    switch (u2.tag) {
        case AngularFamilyTag::zero: return n_theta + std::abs(m);
        case AngularFamilyTag::ring_trig: return ell_eff_ring(m, u2.beta, u2.gamma, n_theta);
        case AngularFamilyTag::double_trig: return ell_eff_double(m, u2.delta, u2.c, n_theta);
        case AngularFamilyTag::custom_theta:
            throw std::invalid_argument("ell_eff_for: custom_theta has no closed-form ell");
    }
    throw std::logic_error("ell_eff_for: unknown tag");
}

/// Radial ladder energy evaluated at real (possibly non-integer) ell.
inline double radial_energy(const PotentialFamily& u1, double ell_eff, int n_r) {
    PotentialFamily f = u1;
    f.params["ell"] = ell_eff;
    return lookup(u1.tag).energy(f, n_r);
}

struct FullSpectrumEntry {
    QuantumNumbers qn;
    double ell_eff{0.0};
    double energy{0.0};
    bool ok{true};
    std::string error;  // set for unresolvable entries (complex ell), not fatal to the batch
};

struct QuantumRanges {
    int n_r_max{0};
    int n_theta_max{0};
    int m_min{0};
    int m_max{0};
};

/// Composite 3D spectrum: for each (n_r, n_theta, m) the angular family fixes
/// ell_eff, which feeds the radial ladder formula. Sorted by energy.
inline std::vector<FullSpectrumEntry> total_spectrum(const PotentialSpec& spec,
                                                     const QuantumRanges& ranges) {
    if (spec.radial.tag != FamilyTag::radial_coulomb && spec.radial.tag != FamilyTag::radial_oscillator)
        throw std::invalid_argument("total_spectrum: radial part must be coulomb or oscillator");
    std::vector<FullSpectrumEntry> out;
    for (int m = ranges.m_min; m <= ranges.m_max; ++m)
        for (int nt = 0; nt <= ranges.n_theta_max; ++nt)
            for (int nr = 0; nr <= ranges.n_r_max; ++nr) {
                FullSpectrumEntry e;
                e.qn = QuantumNumbers{nr, nt, m};
                try {
                    e.ell_eff = ell_eff_for(spec.angular, m, nt);
                    e.energy = radial_energy(spec.radial, e.ell_eff, nr);
                } catch (const std::exception& ex) {
                    e.ok = false;
                    e.error = ex.what();
                }
                out.push_back(std::move(e));
            }
    std::stable_sort(out.begin(), out.end(), [](const FullSpectrumEntry& a, const FullSpectrumEntry& b) {
        if (a.ok != b.ok) return a.ok;
        return a.energy < b.energy;
    });
    return out;
}

struct VerificationRow {
    FullSpectrumEntry entry;
    double angular_eigenvalue{0.0};   // oracle l(l+1)
    double angular_residual{0.0};     // |l_eff(l_eff+1) - oracle|
    double radial_oracle_energy{0.0};
    double radial_residual{0.0};
    bool skipped{false};              // unresolvable entries are excluded from the pass rate
    bool pass{true};
};

struct VerificationReport {
    std::vector<VerificationRow> rows;
    double max_angular_residual{0.0};
    double max_radial_residual{0.0};
    int checked{0};
    int skipped{0};
    bool pass{true};
};

/// Adjudicates every entry against both oracles: the direct polar solve must
/// reproduce ell_eff(ell_eff+1), and the radial solve at that ell_eff must
/// reproduce the ladder energy.
inline VerificationReport verify_spectrum(const std::vector<FullSpectrumEntry>& entries,
                                          const PotentialSpec& spec, double tolerance,
                                          const Grid1D& radial_grid, int angular_cells = 1000) {
    VerificationReport report;
    for (const auto& entry : entries) {
        VerificationRow row;
        row.entry = entry;
        if (!entry.ok) {
            row.skipped = true;
            ++report.skipped;
            report.rows.push_back(std::move(row));
            continue;
        }
        const auto angular = solve_angular_direct(entry.qn.m, spec.angular, entry.qn.n_theta + 1,
                                                  angular_cells);
        row.angular_eigenvalue = angular.levels.at(entry.qn.n_theta).energy;
        row.angular_residual =
            std::abs(entry.ell_eff * (entry.ell_eff + 1.0) - row.angular_eigenvalue);
        const auto radial = radial_solve(spec.radial, entry.ell_eff, radial_grid, entry.qn.n_r + 1);
        if (static_cast<int>(radial.levels.size()) <= entry.qn.n_r)
            throw std::runtime_error("verify_spectrum: oracle found fewer radial bound states than requested");
        row.radial_oracle_energy = radial.levels.at(entry.qn.n_r).energy;
        row.radial_residual = std::abs(entry.energy - row.radial_oracle_energy);
        row.pass = entry.ell_eff >= 0.0 && row.angular_residual <= tolerance &&
                   row.radial_residual <= tolerance;
        report.max_angular_residual = std::max(report.max_angular_residual, row.angular_residual);
        report.max_radial_residual = std::max(report.max_radial_residual, row.radial_residual);
        report.pass = report.pass && row.pass;
        ++report.checked;
        report.rows.push_back(std::move(row));
    }
    return report;
}

}  // namespace spectra
