#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "slet/engine.hpp"
#include "slet/potential.hpp"

namespace slet {

/// Uniform interior grid r_i = r_min + (i + 1) h, i = 0..point_count-1, with
/// Dirichlet ends at r_min and r_max.
struct RadialGrid {
    double r_min = 1e-4;
    double r_max = 0.0;
    int point_count = 4000;

    RadialGrid() = default;
    RadialGrid(double r_min_, double r_max_, int point_count_);

    double step() const noexcept { return (r_max - r_min) / (point_count + 1); }
    double radius(int i) const noexcept { return r_min + (i + 1) * step(); }
    /// Same domain, spacing halved.
    RadialGrid refined() const { return {r_min, r_max, 2 * (point_count + 1) - 1}; }
};

struct Tridiagonal {
    std::vector<double> diagonal;
    std::vector<double> off_diagonal;  ///< size diagonal.size() - 1
};

/// Discretised radial operator at one trial energy.
struct EffectiveOperator {
    Tridiagonal matrix;
    /// Index of the barrier top; the effective potential is held there beyond it.
    std::optional<int> cap_index;
    double cap_value = 0.0;
    /// No barrier and still falling at r_max: no bound state at this trial energy.
    bool unconfined = false;
    std::vector<std::string> warnings;
};

struct FallToCenter {
    bool pass;
    double strength;  ///< coefficient s of s / (2 mu r^2) in the effective potential
    double margin;    ///< s + 1/4
};

/// The -V^2/2eta term turns -alpha/r into an attractive inverse square; the
/// spectrum stays bounded below only while s > -1/4.
FallToCenter fall_to_center_check(const Potential& potential, const ParticlePair& pair, int l);

/// Length scale of the state: largest confining length (mu p c)^(-1/(p+2)),
/// else the Coulomb orbit (n+l+1)^2 / (mu alpha), else 1.
double natural_length(const Potential& potential, const ParticlePair& pair, const QuantumNumbers& qn);

/// r_max = 40 natural_length.
RadialGrid default_grid(const Potential& potential, const ParticlePair& pair, const QuantumNumbers& qn,
                        int point_count = 4000, double r_min = 1e-4);

/// H(E) = -(1/2mu) d^2/dr^2 + l(l+1)/(2 mu r^2) + gamma(r) + E V(r)/eta by
/// three-point differences. With `cap_barrier` the effective potential is
/// held constant beyond its first maximum outside the well, because
/// gamma -> -infinity for any unbounded V.
EffectiveOperator effective_operator(const Potential& potential, const ParticlePair& pair, int l, double E_trial,
                                     const RadialGrid& grid, bool cap_barrier = true);

/// Number of eigenvalues strictly below x (Sturm sequence).
int count_below(const Tridiagonal& t, double x);

/// (n+1)-th smallest eigenvalue by Sturm bisection.
double nth_eigenvalue(const Tridiagonal& t, int n);

/// Unit eigenvector for a converged eigenvalue (inverse iteration).
std::vector<double> eigenvector(const Tridiagonal& t, double lambda);

/// Interior sign changes, ignoring samples below 1e-9 of the peak.
int count_nodes(std::span<const double> v);

struct OracleSettings {
    std::optional<RadialGrid> grid;  ///< default_grid() when unset
    int point_count = 4000;
    double r_min = 1e-4;
    std::optional<double> r_max;
    double energy_tolerance = 1e-10;  ///< GeV, on |g(E)|
    int scan_points = 64;
    std::optional<std::pair<double, double>> energy_window;
    bool cap_barrier = true;
    int max_iterations = 200;
};

struct OracleSolution {
    QuantumNumbers qn;
    double binding_energy = 0.0;
    double mass = 0.0;
    int node_count = 0;
    RadialGrid grid;
    std::vector<double> wavefunction;  ///< R_nl at grid.radius(i), normalised
    int outer_iterations = 0;
    double residual = 0.0;
    bool capped = false;
    double cap_radius = 0.0;
    std::vector<std::string> warnings;
};

/// Energy window scanned for roots of g(E) = lambda_n(E) - E - E^2/(2 eta).
std::pair<double, double> default_energy_window(const Potential& potential, const ParticlePair& pair,
                                                const QuantumNumbers& qn);

/// Self-consistent eigenvalue of the energy-dependent radial problem.
OracleSolution solve_selfconsistent(const Potential& potential, const ParticlePair& pair, const QuantumNumbers& qn,
                                    const OracleSettings& settings = {});

}  // namespace slet
