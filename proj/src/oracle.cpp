#include "slet/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>

#include <boost/math/tools/toms748_solve.hpp>

#include "slet/error.hpp"

namespace slet {

RadialGrid::RadialGrid(double r_min_, double r_max_, int point_count_)
    : r_min(r_min_), r_max(r_max_), point_count(point_count_) {
    if (!(r_min > 0.0) || !(r_max > r_min) || !std::isfinite(r_max))
        throw Error(ErrorKind::invalid_input, "radial grid needs 0 < r_min < r_max");
    if (point_count < 500) throw Error(ErrorKind::invalid_input, "radial grid needs at least 500 points");
}

FallToCenter fall_to_center_check(const Potential& potential, const ParticlePair& pair, int l) {
    const double mu = pair.mu();
    const double ie = pair.inv_eta();
    const double worst = potential.most_singular_power();
    bool diverges = false;
    if (worst < -2.0) {
        for (const auto& t : potential.terms())
            if (t.power == worst && t.coefficient < 0.0) diverges = true;
    }
    // V^2 is attractive in gamma and more singular than r^-2 once V beats r^-1.
    if (!pair.nonrelativistic() && worst < -1.0) diverges = true;
    if (diverges) {
        const double s = -std::numeric_limits<double>::infinity();
        return {false, s, s};
    }
    const double alpha = potential.coulomb_strength();
    const double s = l * (l + 1.0) + 2.0 * mu * potential.inverse_square_coefficient() - mu * alpha * alpha * ie;
    return {s > -0.25, s, s + 0.25};
}

double natural_length(const Potential& potential, const ParticlePair& pair, const QuantumNumbers& qn) {
    const double mu = pair.mu();
    double confining = 0.0;
    for (const auto& t : potential.terms()) {
        if (t.power > 0.0 && t.coefficient > 0.0)
            confining = std::max(confining, std::pow(mu * t.power * t.coefficient, -1.0 / (t.power + 2.0)));
    }
    if (confining > 0.0) return confining;
    const double alpha = potential.coulomb_strength();
    if (alpha > 0.0) {
        const double k = qn.n + qn.l + 1.0;
        return k * k / (mu * alpha);
    }
    return 1.0;
}

RadialGrid default_grid(const Potential& potential, const ParticlePair& pair, const QuantumNumbers& qn,
                        int point_count, double r_min) {
    return {r_min, 40.0 * natural_length(potential, pair, qn), point_count};
}

EffectiveOperator effective_operator(const Potential& potential, const ParticlePair& pair, int l, double E_trial,
                                     const RadialGrid& grid, bool cap_barrier) {
    const int size = grid.point_count;
    const double mu = pair.mu();
    const double ie = pair.inv_eta();
    const double h = grid.step();
    const double kinetic = 1.0 / (2.0 * mu * h * h);

    std::vector<double> u(size);
    for (int i = 0; i < size; ++i) {
        const double r = grid.radius(i);
        const double v = potential.value(r);
        const double gamma = pair.nonrelativistic() ? v : v - 0.5 * ie * v * v;
        u[i] = l * (l + 1.0) / (2.0 * mu * r * r) + gamma + E_trial * v * ie;
    }

    EffectiveOperator op;
    if (cap_barrier) {
        // Walk down into the well from the inner edge, then up to the first barrier top.
        int j = 0;
        while (j + 1 < size && u[j + 1] <= u[j]) ++j;
        while (j + 1 < size && u[j + 1] >= u[j]) ++j;
        if (j + 1 < size) {
            op.cap_index = j;
            op.cap_value = u[j];
            std::fill(u.begin() + j + 1, u.end(), u[j]);
        }
    }
    if (!op.cap_index && size > 1 && u[size - 1] < u[size - 2]) {
        op.unconfined = true;
        op.warnings.push_back("effective potential still falling at r_max");
    }

    // Local wavenumber check away from the singular inner edge.
    const int skip = size / 100;
    const auto [lo, hi] = std::minmax_element(u.begin() + skip, u.end());
    if (2.0 * mu * (*hi - *lo) * h * h > 1.0)
        op.warnings.push_back("grid may be too coarse: h * k_max > 1");

    op.matrix.diagonal.resize(size);
    for (int i = 0; i < size; ++i) op.matrix.diagonal[i] = 2.0 * kinetic + u[i];
    op.matrix.off_diagonal.assign(size - 1, -kinetic);
    return op;
}

int count_below(const Tridiagonal& t, double x) {
    const auto& a = t.diagonal;
    const auto& b = t.off_diagonal;
    const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
    int count = 0;
    double d = a[0] - x;
    if (d < 0.0) ++count;
    for (std::size_t i = 1; i < a.size(); ++i) {
        if (d == 0.0) d = tiny;
        d = a[i] - x - b[i - 1] * b[i - 1] / d;
        if (d < 0.0) ++count;
    }
    return count;
}

double nth_eigenvalue(const Tridiagonal& t, int n) {
    const int size = static_cast<int>(t.diagonal.size());
    if (n < 0 || n >= size) throw Error(ErrorKind::invalid_input, "eigenvalue index outside the matrix");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int i = 0; i < size; ++i) {
        double radius = 0.0;
        if (i > 0) radius += std::abs(t.off_diagonal[i - 1]);
        if (i + 1 < size) radius += std::abs(t.off_diagonal[i]);
        lo = std::min(lo, t.diagonal[i] - radius);
        hi = std::max(hi, t.diagonal[i] + radius);
    }
    const double eps = std::numeric_limits<double>::epsilon();
    for (int it = 0; it < 256; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= 4.0 * eps * std::max({std::abs(lo), std::abs(hi), 1.0}) || mid == lo || mid == hi)
            return mid;
        if (count_below(t, mid) > n) hi = mid;
        else lo = mid;
    }
    throw Error(ErrorKind::convergence, "Sturm bisection did not close its interval");
}

std::vector<double> eigenvector(const Tridiagonal& t, double lambda) {
    const std::size_t size = t.diagonal.size();
    const double shift = lambda + 1e-10 * std::max(1.0, std::abs(lambda));
    std::vector<double> v(size, 1.0), c(size), d(size);
    for (int sweep = 0; sweep < 3; ++sweep) {
        // Thomas algorithm on (T - shift) x = v.
        double denom = t.diagonal[0] - shift;
        if (denom == 0.0) denom = 1e-300;
        c[0] = size > 1 ? t.off_diagonal[0] / denom : 0.0;
        d[0] = v[0] / denom;
        for (std::size_t i = 1; i < size; ++i) {
            denom = t.diagonal[i] - shift - t.off_diagonal[i - 1] * c[i - 1];
            if (denom == 0.0) denom = 1e-300;
            c[i] = i + 1 < size ? t.off_diagonal[i] / denom : 0.0;
            d[i] = (v[i] - t.off_diagonal[i - 1] * d[i - 1]) / denom;
        }
        v[size - 1] = d[size - 1];
        for (std::size_t i = size - 1; i-- > 0;) v[i] = d[i] - c[i] * v[i + 1];
        double norm = 0.0;
        for (double x : v) norm += x * x;
        norm = std::sqrt(norm);
        for (double& x : v) x /= norm;
    }
    return v;
}

int count_nodes(std::span<const double> v) {
    double peak = 0.0;
    for (double x : v) peak = std::max(peak, std::abs(x));
    const double floor = 1e-9 * peak;
    int nodes = 0;
    int last_sign = 0;
    for (double x : v) {
        if (std::abs(x) <= floor) continue;
        const int sign = x > 0.0 ? 1 : -1;
        if (last_sign != 0 && sign != last_sign) ++nodes;
        last_sign = sign;
    }
    return nodes;
}

std::pair<double, double> default_energy_window(const Potential& potential, const ParticlePair& pair,
                                                const QuantumNumbers& qn) {
    double lo = -0.9 * 2.0 * pair.total_constituent_mass();
    if (!pair.nonrelativistic()) lo = std::max(lo, -0.999 * pair.eta());
    const double length = natural_length(potential, pair, qn);
    const double scale = 1.0 / (2.0 * pair.mu() * length * length) + std::abs(potential.value(length));
    return {lo, 50.0 * (qn.n + qn.l + 1.0) * scale};
}

OracleSolution solve_selfconsistent(const Potential& potential, const ParticlePair& pair, const QuantumNumbers& qn,
                                    const OracleSettings& settings) {
    const auto ftc = fall_to_center_check(potential, pair, qn.l);
    if (!ftc.pass) {
        std::ostringstream os;
        os << "fall to center: inverse-square strength " << ftc.strength << " <= -1/4";
        throw Error(ErrorKind::supercritical_coupling, os.str(), "fall_to_center_check");
    }

    OracleSolution out;
    out.qn = qn;
    if (settings.grid) {
        out.grid = *settings.grid;
    } else {
        out.grid = default_grid(potential, pair, qn, settings.point_count, settings.r_min);
        if (settings.r_max) out.grid = RadialGrid(settings.r_min, *settings.r_max, settings.point_count);
    }
    if (qn.n >= out.grid.point_count) throw Error(ErrorKind::invalid_input, "n exceeds the grid size");

    const double ie = pair.inv_eta();
    int evaluations = 0;
    auto g = [&](double E) {
        ++evaluations;
        const auto op = effective_operator(potential, pair, qn.l, E, out.grid, settings.cap_barrier);
        if (op.unconfined) return std::numeric_limits<double>::quiet_NaN();
        return nth_eigenvalue(op.matrix, qn.n) - E - 0.5 * ie * E * E;
    };

    const auto window = settings.energy_window.value_or(default_energy_window(potential, pair, qn));
    if (!(window.second > window.first)) throw Error(ErrorKind::invalid_input, "empty energy window");
    const int points = std::max(settings.scan_points, 8);
    std::vector<double> es(points + 1), gs(points + 1);
    for (int k = 0; k <= points; ++k) {
        es[k] = window.first + (window.second - window.first) * k / points;
        gs[k] = g(es[k]);
    }

    auto width_ok = [](double a, double b) { return std::abs(b - a) <= 1e-13 * std::max({1.0, std::abs(a), std::abs(b)}); };
    bool any_root = false;
    double worst_residual = 0.0;
    for (int k = 0; k < points; ++k) {
        if (!(gs[k] * gs[k + 1] <= 0.0)) continue;
        double E = es[k];
        if (gs[k] != 0.0) {
            std::uintmax_t iterations = static_cast<std::uintmax_t>(settings.max_iterations);
            const auto bracket =
                boost::math::tools::toms748_solve(g, es[k], es[k + 1], gs[k], gs[k + 1], width_ok, iterations);
            E = 0.5 * (bracket.first + bracket.second);
        }
        const auto op = effective_operator(potential, pair, qn.l, E, out.grid, settings.cap_barrier);
        const double lambda = nth_eigenvalue(op.matrix, qn.n);
        const double residual = lambda - E - 0.5 * ie * E * E;
        // A collapsed bracket with a large residual is a jump in g, not a root.
        if (!(std::abs(residual) <= settings.energy_tolerance)) {
            worst_residual = std::max(worst_residual, std::abs(residual));
            continue;
        }
        any_root = true;
        auto vec = eigenvector(op.matrix, lambda);
        const int nodes = count_nodes(vec);
        if (nodes != qn.n) continue;

        const double h = out.grid.step();
        double norm = 0.0;
        for (double x : vec) norm += x * x * h;
        norm = std::sqrt(norm);
        const double sign = vec[0] < 0.0 ? -1.0 : 1.0;
        for (double& x : vec) x *= sign / norm;

        out.binding_energy = E;
        out.mass = E + pair.total_constituent_mass();
        out.node_count = nodes;
        out.wavefunction = std::move(vec);
        out.outer_iterations = evaluations;
        out.residual = residual;
        out.capped = op.cap_index.has_value();
        if (op.cap_index) out.cap_radius = out.grid.radius(*op.cap_index);
        out.warnings = op.warnings;
        return out;
    }

    if (any_root)
        throw Error(ErrorKind::level_identification,
                    "no root of g(E) has an eigenvector with " + std::to_string(qn.n) + " nodes",
                    "solve_selfconsistent");
    if (worst_residual > 0.0)
        throw Error(ErrorKind::convergence,
                    "every bracket of g(E) closed on a discontinuity; largest |g| " + std::to_string(worst_residual),
                    "solve_selfconsistent");
    std::ostringstream os;
    os << "no sign change of g(E) on [" << window.first << ", " << window.second << "]; sweep:";
    for (int k = 0; k <= points; k += std::max(1, points / 8)) os << " (" << es[k] << ", " << gs[k] << ")";
    throw Error(ErrorKind::window, os.str(), "solve_selfconsistent");
}

}  // namespace slet
