// Acceptance gate: one PASS/FAIL line per criterion, detail lines indented.
#include <cmath>
#include <cstdio>
#include <numbers>
#include <future>
#include <random>
#include <string>
#include <vector>

#include "slet/engine.hpp"
#include "slet/error.hpp"
#include "slet/fixtures.hpp"
#include "slet/oracle.hpp"
#include "slet/perturbation.hpp"

using namespace slet;

namespace {

int failures = 0;

void verdict(int id, const std::string& name, bool pass, const std::string& summary) {
    std::printf("[%s] %d %s: %s\n", pass ? "PASS" : "FAIL", id, name.c_str(), summary.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(const char* f, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

struct Config {
    int table;
    Potential potential;
    ParticlePair pair;
};

Config config(int table) {
    const auto& f = published_table(table);
    return {table, Potential::parse(f.potential), ParticlePair(f.m1, f.m2)};
}

std::vector<SletSolution> all_solves;

bool table_check(int table) {
    const auto c = config(table);
    const auto& f = published_table(table);
    int bad = 0;
    double worst = 0.0;
    for (const auto& cell : f.column(FixtureColumn::slet)) {
        const auto s = solve(c.potential, c.pair, {cell.n, cell.l});
        all_solves.push_back(s);
        const double diff = s.binding_energy - cell.value();
        const bool ok = std::abs(diff) <= f.tolerance;
        worst = std::max(worst, std::abs(diff));
        if (!ok) ++bad;
        std::printf("    n=%d l=%d computed %.6f printed %s diff %+.2e %s\n", cell.n, cell.l, s.binding_energy,
                    std::string(cell.text).c_str(), diff, ok ? "ok" : "OUTSIDE");
    }
    const std::string name = table == 2 ? "oscillator table" : "Cornell table";
    verdict(table == 2 ? 4 : 5, name, bad == 0,
            fmt("%d/15 cells within %.0e GeV, max |diff| %.2e", 15 - bad, f.tolerance, worst));
    return bad == 0;
}

void coulomb_checks() {
    const auto& f = published_table(1);
    const double alpha = Potential::parse(f.potential).coulomb_strength();
    double worst_e0 = 0.0, worst_ref = 0.0;
    bool identical = true;
    for (const auto& cell : f.column(FixtureColumn::slet)) {
        const auto cf = coulomb_closed_form(f.m1, alpha, cell.n);
        worst_e0 = std::max(worst_e0, std::abs(cf.E0 - cell.value()));
        const auto ref = coulomb_reference(f.m1, alpha, cell.n);
        identical = identical && cf.M == ref.upper_bound_mass;
        const double exact = ref.exact_mass - f.m1 - f.m2;
        worst_ref = std::max(worst_ref, std::abs(exact - f.find(cell.n, 0, FixtureColumn::exact)->value()));
        std::printf("    n=%d E0 %.7f printed %s   exact %.7f printed %s\n", cell.n, cf.E0,
                    std::string(cell.text).c_str(), exact,
                    std::string(f.find(cell.n, 0, FixtureColumn::exact)->text).c_str());
    }
    verdict(1, "Coulomb closed form", worst_e0 <= 1e-5, fmt("max |diff| %.2e GeV (tol 1e-05)", worst_e0));
    verdict(2, "Coulomb reference", worst_ref <= 1e-6, fmt("max |diff| %.2e GeV (tol 1e-06)", worst_ref));
    verdict(3, "bound saturation identity", identical, identical ? "masses bit-identical for n=0..5" : "mismatch");
}

void dual_path_alpha1() {
    double worst = 0.0;
    for (int table : {2, 3}) {
        const auto c = config(table);
        for (const auto& cell : published_table(table).column(FixtureColumn::slet)) {
            const auto s = solve(c.potential, c.pair, {cell.n, cell.l});
            worst = std::max(worst, std::abs(s.alpha1 - s.alpha1_closed_form) / std::max(1.0, std::abs(s.alpha1)));
        }
    }
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-0.5, 0.5), pos(0.4, 3.0);
    double worst_random = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const double mu = pos(rng), w = pos(rng), s = std::sqrt(2 * mu * w);
        const int n = trial % 5;
        std::array<double, 4> eb{};
        for (auto& v : eb) v = u(rng);
        AnharmonicProblem p;
        p.mu = mu;
        p.omega = w;
        p.level = n;
        p.terms_by_order[0] = {{1, eb[0] * s}, {3, eb[2] * s * s * s}};
        p.terms_by_order[1] = {{2, eb[1] * s * s}, {4, eb[3] * s * s * s * s}};
        const double rspt = rspt_coefficients(p, n + 40).c2();
        const double closed = alpha1_closed_form(n, w, eb);
        worst_random = std::max(worst_random, std::abs(rspt - closed) / std::max(1.0, std::abs(closed)));
    }
    std::printf("    table configurations max rel diff %.2e, random sets max rel diff %.2e\n", worst, worst_random);
    verdict(6, "dual-path alpha1", worst <= 1e-8 && worst_random <= 1e-8,
            fmt("max relative difference %.2e (tol 1e-08)", std::max(worst, worst_random)));
}

void q_lbar_identity() {
    double worst = 0.0;
    for (const auto& s : all_solves) worst = std::max(worst, std::abs(std::sqrt(s.Q) - s.lbar) / s.lbar);
    verdict(7, "Q-lbar identity", worst <= 1e-8,
            fmt("%zu solves, max |sqrt(Q)-lbar|/lbar %.2e (tol 1e-08)", all_solves.size(), worst));
}

double reduced_coulomb_exact(const ParticlePair& pair, double alpha, int n, int l) {
    const double mu = pair.mu(), eta = pair.eta();
    const double lp = -0.5 + std::sqrt(0.25 + l * (l + 1.0) - mu * alpha * alpha / eta);
    const double N = n + lp + 1;
    auto f = [&](double E) { return E * (1 + E / (2 * eta)) + mu * alpha * alpha * std::pow(1 + E / eta, 2) / (2 * N * N); };
    double lo = -0.5, hi = -1e-8;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) * f(lo) > 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

void oracle_exactness() {
    // (a) box and oscillator spectra
    double worst_a = 0.0;
    {
        const auto pair = ParticlePair::equal(1.0);
        const RadialGrid grid(1e-4, 10.0, 4000);
        const auto op = effective_operator(Potential::custom({{0.0, 1.0}}), pair, 0, 0.0, grid);
        const double L = grid.r_max - grid.r_min;
        for (int k = 0; k < 3; ++k) {
            const double exact = std::pow((k + 1) * std::numbers::pi / L, 2) / (2 * pair.mu());
            worst_a = std::max(worst_a, std::abs(nth_eigenvalue(op.matrix, k) - exact) / exact);
        }
        const auto nr = ParticlePair::equal(1.31, true);
        const auto osc = Potential::oscillator(1.0);
        for (int n = 0; n <= 2; ++n) {
            for (int l = 0; l <= 2; ++l) {
                const double exact = (2 * n + l + 1.5) / std::sqrt(nr.mu());
                const auto sol = solve_selfconsistent(osc, nr, {n, l});
                worst_a = std::max(worst_a, std::abs(sol.binding_energy - exact) / exact);
            }
        }
    }
    std::printf("    (a) box and nonrelativistic oscillator: max rel error %.2e (tol 1e-03)\n", worst_a);

    // (b) reduced Coulomb
    double worst_b = 0.0;
    {
        const auto pair = ParticlePair::equal(1.45);
        OracleSettings s;
        s.grid = RadialGrid(1e-6, 60.0, 20000);
        s.energy_window = std::pair(-0.05, 0.0);
        s.scan_points = 20;
        const double exact = reduced_coulomb_exact(pair, 0.25, 0, 0);
        const auto sol = solve_selfconsistent(Potential::coulomb(0.25), pair, {0, 0}, s);
        worst_b = std::abs(sol.binding_energy - exact);
        std::printf("    (b) reduced Coulomb n=0 l=0: oracle %.9f implicit closed form %.9f diff %.2e (tol 1e-06)\n",
                    sol.binding_energy, exact, worst_b);
    }

    // (c) h-halving: observed order on fixed domains, and the default-grid change
    bool order_ok = true;
    {
        struct Case {
            const char* name;
            Potential p;
            ParticlePair pair;
            QuantumNumbers qn;
        };
        const Case cases[] = {{"oscillator (0,0)", Potential::oscillator(1.0), ParticlePair::equal(1.31), {0, 0}},
                              {"Cornell (1,1)", Potential::cornell(0.25, 0.18), ParticlePair::equal(1.45), {1, 1}}};
        for (const auto& c : cases) {
            auto grid = default_grid(c.p, c.pair, c.qn, 1000);
            double E[3];
            for (double& e : E) {
                OracleSettings s;
                s.grid = grid;
                e = solve_selfconsistent(c.p, c.pair, c.qn, s).binding_energy;
                grid = grid.refined();
            }
            const double d1 = std::abs(E[1] - E[0]), d2 = std::abs(E[2] - E[1]);
            const double order = std::log2(d1 / d2);
            const bool ok = d2 < d1 && order > 1.8 && order < 2.2;
            order_ok = order_ok && ok;
            std::printf("    (c) %s: changes %.2e then %.2e, observed order %.2f %s\n", c.name, d1, d2, order,
                        ok ? "ok" : "NOT SECOND ORDER");
        }
    }
    const bool pass = worst_a <= 1e-3 && worst_b <= 1e-6 && order_ok;
    verdict(8, "oracle exactness", pass,
            fmt("(a) %.1e rel (tol 1e-03), (b) %.1e GeV (tol 1e-06), (c) %s", worst_a, worst_b,
                order_ok ? "second order observed" : "order check failed"));
}

void oracle_vs_slet() {
    struct Row {
        int table, n, l;
        double slet, oracle, halved;
        std::string error;
    };
    std::vector<std::future<Row>> jobs;
    for (int table : {2, 3}) {
        for (int l = 0; l <= 2; ++l) {
            for (int n = 0; n <= 2; ++n) {
                jobs.push_back(std::async(std::launch::async, [table, n, l] {
                    const auto c = config(table);
                    Row r{table, n, l, 0.0, 0.0, 0.0, {}};
                    try {
                        r.slet = solve(c.potential, c.pair, {n, l}).binding_energy;
                        r.oracle = solve_selfconsistent(c.potential, c.pair, {n, l}).binding_energy;
                        OracleSettings fine;
                        fine.grid = default_grid(c.potential, c.pair, {n, l}).refined();
                        r.halved = solve_selfconsistent(c.potential, c.pair, {n, l}, fine).binding_energy;
                    } catch (const Error& e) {
                        r.error = e.what();
                    }
                    return r;
                }));
            }
        }
    }
    double worst = 0.0, worst_halving = 0.0;
    bool all_ok = true;
    std::vector<std::string> halving_lines;
    for (auto& j : jobs) {
        const auto r = j.get();
        if (!r.error.empty()) {
            all_ok = false;
            std::printf("    table %d n=%d l=%d error: %s\n", r.table, r.n, r.l, r.error.c_str());
            continue;
        }
        const double diff = r.oracle - r.slet;
        worst = std::max(worst, std::abs(diff));
        worst_halving = std::max(worst_halving, std::abs(r.halved - r.oracle));
        if (std::abs(r.halved - r.oracle) >= 1e-4)
            halving_lines.push_back(fmt("table %d n=%d l=%d changes by %.2e", r.table, r.n, r.l, r.halved - r.oracle));
        all_ok = all_ok && std::abs(diff) <= 2e-2;
        std::string context;
        const auto& f = published_table(r.table);
        if (const auto* ref = f.find(r.n, r.l, FixtureColumn::square_root))
            context = fmt("  [unreduced equation, context only: square-root method %s, oracle-ref %+.4f]",
                          std::string(ref->text).c_str(), r.oracle - ref->value());
        std::printf("    table %d n=%d l=%d slet %.5f oracle %.5f diff %+.2e%s\n", r.table, r.n, r.l, r.slet,
                    r.oracle, diff, context.c_str());
    }
    verdict(9, "oracle vs SLET", all_ok, fmt("18 states, max |oracle - slet| %.2e GeV (tol 2e-02)", worst));
    // Oracle grid invariant, not a numbered criterion: halving h from the
    // default grid should move E by less than 1e-4 GeV.
    std::printf("    oracle invariant, halving h from the default grid: max change %.2e GeV (bound 1e-04) %s\n",
                worst_halving, halving_lines.empty() ? "met" : "NOT MET");
    for (const auto& line : halving_lines) std::printf("      %s\n", line.c_str());
}

void property_suites() {
    // derivative stacks
    double worst_fd = 0.0;
    const Potential pots[] = {Potential::cornell(0.25, 0.18), Potential::oscillator(1.0), Potential::coulomb(0.25),
                              Potential::parse("custom:0.3*r^1.5-0.2*r^-1")};
    const auto pair = ParticlePair::equal(1.45);
    for (const auto& p : pots) {
        for (double r : {0.6, 1.5, 3.2}) {
            for (int j = 1; j <= kMaxDerivativeOrder; ++j) {
                const double h = 1e-4;
                const double exact = p.derivative(r, j);
                const double approx = (p.derivative(r + h, j - 1) - p.derivative(r - h, j - 1)) / (2 * h);
                worst_fd = std::max(worst_fd, std::abs(approx - exact) / std::max(1.0, std::abs(exact)));
                const double g = gamma_derivative(p, pair, r, j);
                const double gfd = (gamma_derivative(p, pair, r + h, j - 1) - gamma_derivative(p, pair, r - h, j - 1)) / (2 * h);
                worst_fd = std::max(worst_fd, std::abs(gfd - g) / std::max(1.0, std::abs(g)));
            }
        }
    }
    // parity zeros
    double worst_parity = 0.0;
    for (int table : {2, 3}) {
        const auto c = config(table);
        for (int n = 0; n <= 4; ++n) {
            for (int l = 0; l <= 2; ++l) {
                const auto s = solve(c.potential, c.pair, {n, l});
                worst_parity = std::max({worst_parity, std::abs(s.series_full.c1()), std::abs(s.series_full.c3())});
            }
        }
    }
    // exactly solvable: quadratic and linear perturbations
    double worst_exact = 0.0;
    {
        const double mu = 0.655, w = 2.3, e2 = 0.37, e1 = 0.21, d1 = -0.13;
        for (int k = 0; k <= 3; ++k) {
            AnharmonicProblem p;
            p.mu = mu;
            p.omega = w;
            p.level = k;
            p.terms_by_order[1] = {{2, e2}};
            const auto c = rspt_coefficients(p, k + 40);
            const double s = e2 / (mu * w * w);
            worst_exact = std::max(worst_exact, std::abs(c.c2() - (k + 0.5) * w * s));
            worst_exact = std::max(worst_exact, std::abs(c.c4() + (k + 0.5) * w * s * s / 2));
            AnharmonicProblem q;
            q.mu = mu;
            q.omega = w;
            q.level = k;
            q.terms_by_order[0] = {{1, e1}};
            q.terms_by_order[2] = {{1, d1}};
            const auto cq = rspt_coefficients(q, k + 40);
            worst_exact = std::max(worst_exact, std::abs(cq.c2() + e1 * e1 / (2 * mu * w * w)));
            worst_exact = std::max(worst_exact, std::abs(cq.c4() + e1 * d1 / (mu * w * w)));
        }
    }
    // heavy-mass oscillator limit
    bool limit_ok = true;
    double worst_limit = 0.0;
    for (int n = 0; n <= 2; ++n) {
        for (int l = 0; l <= 2; ++l) {
            double previous = 1.0;
            for (double m : {1e3, 1e4}) {
                const auto heavy = ParticlePair::equal(m);
                const double exact = (2 * n + l + 1.5) / std::sqrt(heavy.mu());
                const double rel = std::abs(solve(Potential::oscillator(1.0), heavy, {n, l}).binding_energy - exact) / exact;
                limit_ok = limit_ok && rel <= 1e-3 && rel < previous;
                worst_limit = std::max(worst_limit, rel);
                previous = rel;
            }
        }
    }
    std::printf("    derivative stacks vs finite differences: max rel %.2e (tol 1e-06)\n", worst_fd);
    std::printf("    series parity zeros: max |c1|,|c3| %.2e (tol 1e-10)\n", worst_parity);
    std::printf("    exactly solvable series: max |diff| %.2e (tol 1e-10)\n", worst_exact);
    std::printf("    heavy-mass oscillator: max rel %.2e at m=1e3 (tol 1e-03), improving with m: %s\n", worst_limit,
                limit_ok ? "yes" : "no");
    verdict(10, "property suites", worst_fd <= 1e-6 && worst_parity <= 1e-10 && worst_exact <= 1e-10 && limit_ok,
            "derivatives, parity, exact series, nonrelativistic limit");
}

}  // namespace

int main() {
    try {
        for (int t = 1; t <= 3; ++t) (void)published_table(t);
        std::printf("fixtures: checksums verified for tables 1-3\n");
    } catch (const Error& e) {
        std::printf("[FAIL] fixtures: %s\n", e.what());
        return 1;
    }
    coulomb_checks();
    table_check(2);
    table_check(3);
    dual_path_alpha1();
    q_lbar_identity();
    oracle_exactness();
    oracle_vs_slet();
    property_suites();
    std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
