#include "slet/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include <boost/math/tools/toms748_solve.hpp>

#include "slet/error.hpp"

namespace slet {

QuantumNumbers::QuantumNumbers(int n_, int l_) : n(n_), l(l_) {
    if (n < 0 || l < 0) throw Error(ErrorKind::invalid_input, "quantum numbers must be non-negative");
}

void SolverSettings::validate() const {
    if (!(r0_lo > 0.0) || !(r0_hi > r0_lo) || !std::isfinite(r0_hi))
        throw Error(ErrorKind::invalid_input, "r0 bracket must be positive and ordered");
    if (!(r0_tolerance > 0.0 && r0_tolerance < 1.0))
        throw Error(ErrorKind::invalid_input, "r0 tolerance must lie in (0, 1)");
    if (scan_panels < 2) throw Error(ErrorKind::invalid_input, "need at least 2 scan panels");
    if (max_iterations < 1) throw Error(ErrorKind::invalid_input, "max_iterations must be positive");
    if (pt_basis_size < 0) throw Error(ErrorKind::invalid_input, "basis size must be non-negative");
}

double TaylorCoefficients::delta_at(int j) const {
    if (j < 1 || j > 6) throw Error(ErrorKind::invalid_input, "delta index outside 1..6");
    if (j <= 2 && !complete) throw Error(ErrorKind::sequencing, "delta1/delta2 need E2; compute alpha1 first");
    return delta[j - 1];
}

double TaylorCoefficients::delta_bar_at(int j) const {
    delta_at(j);
    return delta_bar[j - 1];
}

Geometry geometry_at(const Potential& potential, const ParticlePair& pair, double r0) {
    const double v1 = potential.derivative(r0, 1);
    if (!(v1 > 0.0))
        throw Error(ErrorKind::non_monotone_point, "V'(r0) <= 0 at r0 = " + std::to_string(r0));
    const double v2 = potential.derivative(r0, 2);
    const double mu = pair.mu();
    const double a = r0 * r0 * v1;

    Geometry g{};
    if (pair.nonrelativistic()) {
        g.xi = std::numeric_limits<double>::infinity();
        g.Q = mu * r0 * a;  // eta -> infinity limit of the Q relation
    } else {
        const double eta = pair.eta();
        const double t = 2.0 * eta / (r0 * v1);
        g.xi = std::sqrt(1.0 + t * t);
        g.Q = mu / (2.0 * eta) * a * a * (1.0 + g.xi);
    }
    const double bracket = 3.0 + r0 * v2 / v1 - mu * a * a * pair.inv_eta() / g.Q;
    if (bracket < 0.0)
        throw Error(ErrorKind::no_harmonic_regime,
                    "negative omega^2 bracket (" + std::to_string(bracket) + ") at r0 = " + std::to_string(r0));
    g.omega = std::sqrt(bracket) / mu;
    return g;
}

double r0_residual(const Potential& potential, const ParticlePair& pair, const QuantumNumbers& qn, double r0) {
    const Geometry g = geometry_at(potential, pair, r0);
    const double v1 = potential.derivative(r0, 1);
    const double mu = pair.mu();
    // (1 + xi) / eta written so that eta -> infinity stays finite.
    const double ie = pair.inv_eta();
    const double w = 2.0 / (r0 * v1);
    const double one_plus_xi_over_eta = ie + std::sqrt(ie * ie + w * w);
    return r0 * r0 * v1 * std::sqrt(2.0 * mu * one_plus_xi_over_eta) -
           (1.0 + 2.0 * qn.l + mu * (2.0 * qn.n + 1.0) * g.omega);
}

R0Root solve_r0(const Potential& potential, const ParticlePair& pair, const QuantumNumbers& qn,
                const SolverSettings& settings) {
    settings.validate();
    const int panels = settings.scan_panels;
    std::vector<double> rs(panels + 1);
    std::vector<double> fs(panels + 1, std::numeric_limits<double>::quiet_NaN());
    int valid = 0;
    for (int i = 0; i <= panels; ++i) {
        rs[i] = settings.r0_lo * std::pow(settings.r0_hi / settings.r0_lo, static_cast<double>(i) / panels);
        try {
            fs[i] = r0_residual(potential, pair, qn, rs[i]);
            if (std::isfinite(fs[i])) ++valid;
        } catch (const Error&) {
        }
    }
    if (valid == 0)
        throw Error(ErrorKind::non_monotone_point, "no point of the r0 bracket has V' > 0 and a harmonic regime");

    auto residual = [&](double r) { return r0_residual(potential, pair, qn, r); };
    auto tolerance = [&](double a, double b) {
        return std::abs(b - a) <= settings.r0_tolerance * std::min(std::abs(a), std::abs(b));
    };

    std::vector<std::pair<double, int>> roots;
    for (int i = 0; i < panels; ++i) {
        const double fa = fs[i], fb = fs[i + 1];
        if (!std::isfinite(fa) || !std::isfinite(fb)) continue;
        if (fa == 0.0) {
            roots.emplace_back(rs[i], 0);
            continue;
        }
        if (fa * fb > 0.0) continue;
        std::uintmax_t iterations = static_cast<std::uintmax_t>(settings.max_iterations);
        std::pair<double, double> bracket;
        try {
            bracket = boost::math::tools::toms748_solve(residual, rs[i], rs[i + 1], fa, fb, tolerance, iterations);
        } catch (const Error& e) {
            throw Error(ErrorKind::convergence, std::string("residual undefined inside bracket: ") + e.what());
        }
        if (iterations >= static_cast<std::uintmax_t>(settings.max_iterations) &&
            !tolerance(bracket.first, bracket.second))
            throw Error(ErrorKind::convergence, "r0 refinement hit the iteration cap");
        roots.emplace_back(0.5 * (bracket.first + bracket.second), static_cast<int>(iterations));
    }
    if (roots.empty())
        throw Error(ErrorKind::bracketing, "no sign change of the r0 residual over [" +
                                               std::to_string(settings.r0_lo) + ", " +
                                               std::to_string(settings.r0_hi) + "]");

    R0Root best{};
    double best_e0 = std::numeric_limits<double>::infinity();
    for (const auto& [r, its] : roots) {
        const double e0 = leading_energy(potential, pair, r, geometry_at(potential, pair, r).Q);
        if (e0 < best_e0) {
            best_e0 = e0;
            best.r0 = r;
            best.iterations = its;
        }
    }
    best.residual = residual(best.r0);
    best.scan_evaluations = panels + 1;
    best.root_count = static_cast<int>(roots.size());
    return best;
}

double leading_energy(const Potential& potential, const ParticlePair& pair, double r0, double Q) {
    const double q = Q / (pair.mu() * r0 * r0);
    // sqrt(eta^2 + eta q) - eta rewritten without cancellation.
    return potential.value(r0) + q / (1.0 + std::sqrt(1.0 + pair.inv_eta() * q));
}

Shift shift_and_lbar(const ParticlePair& pair, int n, double omega, int l) {
    const double beta = -0.5 - pair.mu() * (n + 0.5) * omega;
    return {beta, l - beta};
}

TaylorCoefficients taylor_coefficients(const Potential& potential, const ParticlePair& pair, double r0, double Q,
                                       double beta, double E0, double omega, std::optional<double> E2) {
    if (!(omega > 0.0)) throw Error(ErrorKind::domain, "omega must be positive to scale coefficients");
    const double mu = pair.mu();
    const double ie = pair.inv_eta();
    const auto v = potential.derivatives(r0);
    const auto gamma = gamma_derivatives(potential, pair, r0);
    auto g = [&](int j) { return gamma[j] + v[j] * E0 * ie; };
    const double s = 2.0 * beta + 1.0;
    const double bb = beta * (beta + 1.0);

    TaylorCoefficients c;
    c.eps[0] = -s / mu;
    c.eps[1] = 3.0 * s / (2.0 * mu);
    c.eps[2] = -2.0 / mu + std::pow(r0, 5) / (6.0 * Q) * g(3);
    c.eps[3] = 2.5 / mu + std::pow(r0, 6) / (24.0 * Q) * g(4);

    c.delta[2] = -2.0 * s / mu;
    c.delta[3] = 5.0 * s / (2.0 * mu);
    c.delta[4] = -3.0 / mu + std::pow(r0, 7) / (120.0 * Q) * g(5);
    c.delta[5] = 3.5 / mu + std::pow(r0, 8) / (720.0 * Q) * g(6);
    if (E2) {
        c.delta[0] = -bb / mu + std::pow(r0, 3) * v[1] * *E2 * ie / Q;
        c.delta[1] = 1.5 * bb / mu + std::pow(r0, 4) * v[2] * *E2 * ie / (2.0 * Q);
        c.complete = true;
    }

    const double unit = 2.0 * mu * omega;
    for (int i = 0; i < 4; ++i) c.eps_bar[i] = c.eps[i] / std::pow(unit, 0.5 * (i + 1));
    for (int j = 0; j < 6; ++j) c.delta_bar[j] = c.delta[j] / std::pow(unit, 0.5 * (j + 1));
    return c;
}

double alpha1_closed_form(int n, double omega, const std::array<double, 4>& e) {
    const double n1 = 1.0 + 2.0 * n;
    const double n2 = 1.0 + 2.0 * n + 2.0 * n * n;
    const double n3 = 11.0 + 30.0 * n + 30.0 * n * n;
    return n1 * e[1] + 3.0 * n2 * e[3] - (e[0] * e[0] + 6.0 * n1 * e[0] * e[2] + n3 * e[2] * e[2]) / omega;
}

AnharmonicProblem anharmonic_problem(const ParticlePair& pair, int n, double omega,
                                     const TaylorCoefficients& c) {
    AnharmonicProblem p;
    p.mu = pair.mu();
    p.omega = omega;
    p.level = n;
    p.terms_by_order[0] = {{1, c.eps[0]}, {3, c.eps[2]}};
    p.terms_by_order[1] = {{2, c.eps[1]}, {4, c.eps[3]}};
    if (c.complete) {
        p.terms_by_order[2] = {{1, c.delta[0]}, {3, c.delta[2]}, {5, c.delta[4]}};
        p.terms_by_order[3] = {{2, c.delta[1]}, {4, c.delta[3]}, {6, c.delta[5]}};
    }
    return p;
}

AlphaCorrections alpha_corrections(const ParticlePair& pair, int n, double omega, const TaylorCoefficients& c,
                                   int basis_size) {
    AlphaCorrections out;
    out.series = rspt_coefficients(anharmonic_problem(pair, n, omega, c), basis_size);
    const auto alphas = alpha_from_series(out.series);
    out.alpha1 = alphas.alpha1;
    if (c.complete) out.alpha2 = alphas.alpha2;
    out.alpha1_closed_form = alpha1_closed_form(n, omega, c.eps_bar);

    const auto& e = c.eps_bar;
    const double n1 = 1.0 + 2.0 * n;
    const double scale = std::abs(n1 * e[1]) + std::abs(3.0 * (1.0 + 2.0 * n + 2.0 * n * n) * e[3]) +
                         (e[0] * e[0] + std::abs(6.0 * n1 * e[0] * e[2]) +
                          (11.0 + 30.0 * n + 30.0 * n * n) * e[2] * e[2]) / omega;
    if (std::abs(out.alpha1 - out.alpha1_closed_form) > 1e-8 * std::max(scale, 1e-300))
        throw Error(ErrorKind::inconsistency, "perturbative and closed-form alpha1 disagree");
    return out;
}

double energy_denominator(const ParticlePair& pair, double E0, double V_at_r0) {
    const double d = 1.0 + (E0 - V_at_r0) * pair.inv_eta();
    if (!(d > 0.0)) throw Error(ErrorKind::inconsistency, "non-positive energy denominator");
    return d;
}

double second_order_coefficient(const ParticlePair& pair, double r0, double Q, double E0, double V_at_r0,
                                double beta, double alpha1) {
    const double d = energy_denominator(pair, E0, V_at_r0);
    const double centrifugal = beta * (beta + 1.0) / (2.0 * pair.mu());
    return Q * (centrifugal + alpha1) / (r0 * r0 * d);
}

CorrectionEnergies correction_energies(const ParticlePair& pair, double r0, double Q, double E0, double V_at_r0,
                                       double beta, double lbar, double alpha1, double alpha2) {
    CorrectionEnergies c{};
    c.denominator = energy_denominator(pair, E0, V_at_r0);
    c.centrifugal = beta * (beta + 1.0) / (2.0 * pair.mu());
    c.E2 = Q * (c.centrifugal + alpha1) / (r0 * r0 * c.denominator);
    c.E3 = Q * alpha2 / (r0 * r0 * c.denominator);
    c.E2_term = (c.centrifugal + alpha1) / (r0 * r0 * c.denominator);
    c.E3_term = alpha2 / (r0 * r0 * c.denominator * lbar);
    return c;
}

SletSolution solve(const Potential& potential, const ParticlePair& pair, const QuantumNumbers& qn,
                   const SolverSettings& settings) {
    auto staged = [](const char* stage, auto&& fn) {
        try {
            return fn();
        } catch (const Error& e) {
            rethrow_with_stage(e, stage);
        }
    };

    settings.validate();
    SletSolution s;
    s.qn = qn;

    const auto root = staged("solve_r0", [&] { return solve_r0(potential, pair, qn, settings); });
    s.r0 = root.r0;
    s.diagnostics.scan_evaluations = root.scan_evaluations;
    s.diagnostics.root_iterations = root.iterations;
    s.diagnostics.root_count = root.root_count;
    s.diagnostics.r0_residual = root.residual;
    if (root.root_count > 1)
        s.diagnostics.warnings.push_back("r0 residual has " + std::to_string(root.root_count) +
                                         " roots; kept the one minimising E0");

    const auto g = staged("geometry_at", [&] { return geometry_at(potential, pair, s.r0); });
    s.xi = g.xi;
    s.Q = g.Q;
    s.omega = g.omega;

    const auto shift = shift_and_lbar(pair, qn.n, s.omega, qn.l);
    s.beta = shift.beta;
    s.lbar = shift.lbar;
    s.diagnostics.q_lbar_mismatch = std::abs(std::sqrt(s.Q) - s.lbar) / s.lbar;

    s.V_at_r0 = potential.value(s.r0);
    s.E0 = staged("leading_energy", [&] { return leading_energy(potential, pair, s.r0, s.Q); });

    const int basis = settings.basis_for(qn.n);
    auto first = staged("taylor_coefficients", [&] {
        return taylor_coefficients(potential, pair, s.r0, s.Q, s.beta, s.E0, s.omega);
    });

    double alpha1 = 0.0;
    if (settings.pt_enabled) {
        const auto a = staged("alpha_corrections", [&] { return alpha_corrections(pair, qn.n, s.omega, first, basis); });
        alpha1 = a.alpha1;
        s.alpha1_closed_form = a.alpha1_closed_form;
        s.series_first = a.series;
    } else {
        alpha1 = alpha1_closed_form(qn.n, s.omega, first.eps_bar);
        s.alpha1_closed_form = alpha1;
    }
    s.alpha1 = alpha1;

    const double E2 = staged("correction_energies", [&] {
        return second_order_coefficient(pair, s.r0, s.Q, s.E0, s.V_at_r0, s.beta, alpha1);
    });
    s.coefficients = staged("taylor_coefficients", [&] {
        return taylor_coefficients(potential, pair, s.r0, s.Q, s.beta, s.E0, s.omega, E2);
    });

    if (settings.pt_enabled) {
        const auto a =
            staged("alpha_corrections", [&] { return alpha_corrections(pair, qn.n, s.omega, s.coefficients, basis); });
        s.alpha2 = a.alpha2.value_or(0.0);
        s.series_full = a.series;
    } else {
        s.alpha2 = 0.0;
        s.diagnostics.warnings.push_back("perturbation path disabled: alpha2 set to 0");
    }

    s.corrections = staged("correction_energies", [&] {
        return correction_energies(pair, s.r0, s.Q, s.E0, s.V_at_r0, s.beta, s.lbar, s.alpha1, s.alpha2);
    });
    s.E2_term = s.corrections.E2_term;
    s.E3_term = s.corrections.E3_term;
    s.binding_energy = s.E0 + s.E2_term + s.E3_term;
    s.mass = s.binding_energy + pair.total_constituent_mass();
    return s;
}

namespace {

void check_coulomb_inputs(double m, double alpha, int n) {
    if (!(m > 0.0)) throw Error(ErrorKind::invalid_input, "mass must be positive");
    if (n < 0) throw Error(ErrorKind::invalid_input, "n must be non-negative");
    if (!(alpha >= 0.0) || alpha >= 2.0 * n + 2.0)
        throw Error(ErrorKind::unphysical_coupling, "Coulomb closed form needs 0 <= alpha < 2n + 2");
}

// 2m [1 - alpha^2 / (2n+2)^2]^(1/2), shared so both callers agree bit for bit.
double saturated_mass(double m, double alpha, int n) {
    const double nn = 2.0 * n + 2.0;
    return 2.0 * m * std::sqrt(1.0 - alpha * alpha / (nn * nn));
}

}  // namespace

CoulombClosedForm coulomb_closed_form(double m, double alpha, int n) {
    check_coulomb_inputs(m, alpha, n);
    const double nn = 2.0 * n + 2.0;
    CoulombClosedForm c{};
    c.Q = nn * nn / 4.0;
    c.r0 = nn * nn / (2.0 * m) * std::sqrt(1.0 / (alpha * alpha) - 1.0 / (nn * nn));
    c.M = saturated_mass(m, alpha, n);
    c.E0 = c.M - 2.0 * m;
    return c;
}

CoulombReference coulomb_reference(double m, double alpha, int n) {
    check_coulomb_inputs(m, alpha, n);
    const double nn = 2.0 * n + 2.0;
    return {2.0 * m / std::sqrt(1.0 + alpha * alpha / (nn * nn)), saturated_mass(m, alpha, n)};
}

}  // namespace slet
