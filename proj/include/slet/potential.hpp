#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace slet {

/// Highest derivative order any part of the solver asks for.
inline constexpr int kMaxDerivativeOrder = 6;

using DerivativeStack = std::array<double, kMaxDerivativeOrder + 1>;

/// One monomial c * r^p of a potential (r in GeV^-1).
struct PowerTerm {
    double coefficient;
    double power;
};

/// Open interval of r on which V'(r) > 0.
struct Interval {
    double lo;
    double hi;
};

/// Spherically symmetric interaction V(r) built from power-law monomials,
/// so every derivative is exact.
class Potential {
public:
    enum class Kind { coulomb, oscillator, linear, cornell, custom };

    /// V = -alpha / r
    static Potential coulomb(double alpha);
    /// V = k r^2 / 2
    static Potential oscillator(double k);
    /// V = b r
    static Potential linear(double b);
    /// V = -alpha / r + b r
    static Potential cornell(double alpha, double b);
    static Potential custom(std::vector<PowerTerm> terms);

    /// Parses `coulomb:alpha=0.25`, `oscillator:k=1`, `linear:b=0.18`,
    /// `cornell:alpha=0.25,b=0.18` or `custom:c1*r^p1+c2*r^p2...`.
    static Potential parse(std::string_view spec);

    Kind kind() const noexcept { return kind_; }
    std::span<const PowerTerm> terms() const noexcept { return terms_; }

    double value(double r) const;
    double derivative(double r, int order) const;
    /// V, V', ..., V^(6) at r.
    DerivativeStack derivatives(double r) const;

    /// Canonical spec string; parse(spec()) reproduces the model.
    std::string spec() const;

    /// alpha of a -alpha/r term (0 when absent).
    double coulomb_strength() const noexcept;
    /// Coefficient of an r^-2 term (0 when absent).
    double inverse_square_coefficient() const noexcept;
    /// Most negative exponent among the terms (0 when none is negative).
    double most_singular_power() const noexcept;
    /// True when V grows without bound as r -> infinity.
    bool confining() const noexcept;

    /// Where V'(r) > 0. Built-in variants answer analytically; custom sums
    /// are scanned on a logarithmic grid.
    std::optional<Interval> increasing_domain() const;

private:
    Potential(Kind kind, std::vector<PowerTerm> terms, std::vector<std::pair<std::string, double>> params);

    Kind kind_;
    std::vector<PowerTerm> terms_;
    std::vector<std::pair<std::string, double>> params_;
};

/// Two constituents of masses m1, m2 (GeV) with the derived mu, nu, eta.
/// The nonrelativistic mode treats eta as infinite.
class ParticlePair {
public:
    ParticlePair(double m1, double m2, bool nonrelativistic = false);
    static ParticlePair equal(double m, bool nonrelativistic = false) { return {m, m, nonrelativistic}; }

    double m1() const noexcept { return m1_; }
    double m2() const noexcept { return m2_; }
    double mu() const noexcept { return mu_; }
    double nu() const noexcept { return nu_; }
    /// nu / mu^2, +inf in nonrelativistic mode.
    double eta() const noexcept;
    /// 1 / eta, exactly 0 in nonrelativistic mode.
    double inv_eta() const noexcept { return inv_eta_; }
    bool nonrelativistic() const noexcept { return nonrelativistic_; }
    double total_constituent_mass() const noexcept { return m1_ + m2_; }

private:
    double m1_;
    double m2_;
    double mu_;
    double nu_;
    double eta_;
    double inv_eta_;
    bool nonrelativistic_;
};

/// j-th derivative of gamma(r) = V - V^2 / (2 eta), via Leibniz on V^2.
double gamma_derivative(const Potential& potential, const ParticlePair& pair, double r, int order);

/// gamma, gamma', ..., gamma^(6) at r.
DerivativeStack gamma_derivatives(const Potential& potential, const ParticlePair& pair, double r);

}  // namespace slet
