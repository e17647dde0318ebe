#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "slet/perturbation.hpp"
#include "slet/potential.hpp"

namespace slet {

struct QuantumNumbers {
    int n = 0;  ///< radial quantum number
    int l = 0;  ///< orbital angular momentum

    QuantumNumbers() = default;
    QuantumNumbers(int n_, int l_);
};

struct SolverSettings {
    double r0_lo = 1e-3;  ///< GeV^-1
    double r0_hi = 1e3;   ///< GeV^-1
    int scan_panels = 200;
    double r0_tolerance = 1e-12;  ///< relative, on r0
    int max_iterations = 200;
    int pt_basis_size = 0;  ///< 0 selects n + 40
    bool pt_enabled = true;

    void validate() const;
    int basis_for(int n) const { return pt_basis_size > 0 ? pt_basis_size : n + 40; }
};

/// xi (dimensionless), Q (dimensionless) and omega at an expansion point.
struct Geometry {
    double xi;
    double Q;
    double omega;
};

struct Shift {
    double beta;
    double lbar;
};

/// Anharmonic expansion coefficients and their oscillator-scaled forms
/// bar_i = c_i / (2 mu omega)^(i/2). delta1, delta2 need E2 and stay unset
/// until it is known.
struct TaylorCoefficients {
    std::array<double, 4> eps{};
    std::array<double, 4> eps_bar{};
    std::array<double, 6> delta{};
    std::array<double, 6> delta_bar{};
    bool complete = false;

    /// delta_j (1-based); throws a sequencing error for j = 1, 2 before E2.
    double delta_at(int j) const;
    double delta_bar_at(int j) const;
};

struct AlphaCorrections {
    double alpha1 = 0.0;
    std::optional<double> alpha2;
    double alpha1_closed_form = 0.0;
    SeriesCoefficients series;
};

/// Second and third summands of the assembled energy plus the pieces they
/// are built from.
struct CorrectionEnergies {
    double denominator;  ///< 1 + (E0 - V(r0)) / eta
    double centrifugal;  ///< beta (beta + 1) / (2 mu)
    double E2;           ///< coefficient of lbar^-2
    double E3;           ///< coefficient of lbar^-3
    double E2_term;      ///< (centrifugal + alpha1) / (r0^2 D)
    double E3_term;      ///< alpha2 / (r0^2 D lbar)
};

struct SletDiagnostics {
    int scan_evaluations = 0;
    int root_iterations = 0;
    int root_count = 0;
    double r0_residual = 0.0;
    double q_lbar_mismatch = 0.0;  ///< |sqrt(Q) - lbar| / lbar
    std::vector<std::string> warnings;
};

struct SletSolution {
    QuantumNumbers qn;
    double r0 = 0.0;
    double omega = 0.0;
    double xi = 0.0;
    double Q = 0.0;
    double beta = 0.0;
    double lbar = 0.0;
    double V_at_r0 = 0.0;
    double E0 = 0.0;
    TaylorCoefficients coefficients;
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double alpha1_closed_form = 0.0;
    SeriesCoefficients series_first;   ///< with delta terms still absent
    SeriesCoefficients series_full;
    CorrectionEnergies corrections{};
    double E2_term = 0.0;
    double E3_term = 0.0;
    double binding_energy = 0.0;  ///< E_nl, GeV
    double mass = 0.0;            ///< M = E_nl + m1 + m2, GeV
    SletDiagnostics diagnostics;
};

/// xi, Q and omega at r0. Needs V'(r0) > 0 and a non-negative omega bracket.
Geometry geometry_at(const Potential& potential, const ParticlePair& pair, double r0);

/// Residual of the r0 condition:
/// r0^2 V' sqrt(2 mu (1 + xi) / eta) - [1 + 2l + mu (2n + 1) omega].
double r0_residual(const Potential& potential, const ParticlePair& pair, const QuantumNumbers& qn, double r0);

struct R0Root {
    double r0;
    double residual;
    int scan_evaluations;
    int iterations;
    int root_count;
};

/// Logarithmic scan of the residual over the bracket, then TOMS748 refinement.
/// Several roots: the one with the lowest E0 wins.
R0Root solve_r0(const Potential& potential, const ParticlePair& pair, const QuantumNumbers& qn,
                const SolverSettings& settings);

/// E0 = V(r0) - eta + sqrt(eta^2 + eta Q / (mu r0^2)), evaluated in a form that
/// stays finite in nonrelativistic mode.
double leading_energy(const Potential& potential, const ParticlePair& pair, double r0, double Q);

/// beta = -1/2 - mu (n + 1/2) omega, lbar = l - beta.
Shift shift_and_lbar(const ParticlePair& pair, int n, double omega, int l);

/// Expansion coefficients. Pass E2 to also get delta1 and delta2.
TaylorCoefficients taylor_coefficients(const Potential& potential, const ParticlePair& pair, double r0, double Q,
                                       double beta, double E0, double omega, std::optional<double> E2 = {});

/// Standard shifted-expansion closed form for alpha1, used as a cross-check.
double alpha1_closed_form(int n, double omega, const std::array<double, 4>& eps_bar);

/// Anharmonic problem of level n built from the coefficients (delta terms
/// only when complete).
AnharmonicProblem anharmonic_problem(const ParticlePair& pair, int n, double omega,
                                     const TaylorCoefficients& coefficients);

/// alpha1 from perturbation theory (and the closed form); alpha2 as well once
/// the coefficients are complete.
AlphaCorrections alpha_corrections(const ParticlePair& pair, int n, double omega,
                                   const TaylorCoefficients& coefficients, int basis_size);

/// Denominator 1 + (E0 - V(r0)) / eta; must be positive.
double energy_denominator(const ParticlePair& pair, double E0, double V_at_r0);

/// E2 = Q [beta(beta+1)/(2 mu) + alpha1] / (r0^2 D).
double second_order_coefficient(const ParticlePair& pair, double r0, double Q, double E0, double V_at_r0,
                                double beta, double alpha1);

CorrectionEnergies correction_energies(const ParticlePair& pair, double r0, double Q, double E0, double V_at_r0,
                                       double beta, double lbar, double alpha1, double alpha2);

/// Full pipeline for one state.
SletSolution solve(const Potential& potential, const ParticlePair& pair, const QuantumNumbers& qn,
                   const SolverSettings& settings = {});

struct CoulombClosedForm {
    double Q;
    double r0;
    double E0;
    double M;
};

/// Equal-mass S-wave Coulomb result in closed form.
CoulombClosedForm coulomb_closed_form(double m, double alpha, int n);

struct CoulombReference {
    double exact_mass;
    double upper_bound_mass;
};

CoulombReference coulomb_reference(double m, double alpha, int n);

}  // namespace slet
