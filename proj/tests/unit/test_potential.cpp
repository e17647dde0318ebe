#include <doctest.h>

#include <cmath>

#include "slet/error.hpp"
#include "slet/potential.hpp"

using namespace slet;

namespace {

// Central difference of the (order-1)-th derivative.
double fd(auto&& f, double r, int order, double h = 1e-4) { return (f(r + h, order - 1) - f(r - h, order - 1)) / (2.0 * h); }

}  // namespace

TEST_CASE("builtin potentials evaluate their closed forms") {
    CHECK(Potential::coulomb(0.25).value(2.0) == doctest::Approx(-0.125));
    CHECK(Potential::oscillator(1.0).value(3.0) == doctest::Approx(4.5));
    CHECK(Potential::linear(0.18).value(2.0) == doctest::Approx(0.36));
    const auto c = Potential::cornell(0.25, 0.18);
    CHECK(c.value(2.0) == doctest::Approx(-0.125 + 0.36));
    CHECK(c.derivative(2.0, 1) == doctest::Approx(0.25 / 4.0 + 0.18));
    CHECK(c.derivative(2.0, 2) == doctest::Approx(-0.5 / 8.0));
}

TEST_CASE("derivative stacks agree with finite differences") {
    const Potential pots[] = {Potential::cornell(0.25, 0.18), Potential::oscillator(1.0), Potential::coulomb(0.4),
                              Potential::parse("custom:0.3*r^1.5-0.2*r^-1+0.05*r^(-0.5)")};
    for (const auto& p : pots) {
        for (double r : {0.7, 1.3, 2.9}) {
            for (int j = 1; j <= kMaxDerivativeOrder; ++j) {
                const double exact = p.derivative(r, j);
                const double approx = fd([&](double x, int o) { return p.derivative(x, o); }, r, j);
                CHECK(std::abs(approx - exact) <= 1e-6 * std::max(1.0, std::abs(exact)));
            }
        }
    }
}

TEST_CASE("polynomial derivatives beyond the degree are exactly zero") {
    const auto p = Potential::oscillator(2.0);
    CHECK(p.derivative(1.7, 3) == 0.0);
    CHECK(p.derivative(1.7, 6) == 0.0);
    CHECK(Potential::linear(0.2).derivative(3.0, 2) == 0.0);
}

TEST_CASE("gamma derivatives follow Leibniz on V^2") {
    const auto p = Potential::cornell(0.25, 0.18);
    const ParticlePair pair = ParticlePair::equal(1.45);
    auto gamma = [&](double r, int o) {
        if (o == 0) {
            const double v = p.value(r);
            return v - v * v / (2.0 * pair.eta());
        }
        return gamma_derivative(p, pair, r, o);
    };
    for (double r : {0.8, 2.0, 4.5}) {
        const auto stack = gamma_derivatives(p, pair, r);
        CHECK(stack[0] == doctest::Approx(gamma(r, 0)));
        for (int j = 1; j <= kMaxDerivativeOrder; ++j) {
            CHECK(stack[j] == gamma(r, j));
            CHECK(std::abs(fd(gamma, r, j) - stack[j]) <= 1e-6 * std::max(1.0, std::abs(stack[j])));
        }
    }
}

TEST_CASE("nonrelativistic gamma is the potential itself") {
    const auto p = Potential::cornell(0.25, 0.18);
    const auto pair = ParticlePair::equal(1.45, true);
    for (int j = 0; j <= kMaxDerivativeOrder; ++j) CHECK(gamma_derivative(p, pair, 1.9, j) == p.derivative(1.9, j));
}

TEST_CASE("particle pair masses") {
    const auto eq = ParticlePair::equal(1.45);
    CHECK(eq.mu() == doctest::Approx(0.725));
    CHECK(eq.eta() == doctest::Approx(2.9));
    const ParticlePair un(1.5, 4.8);
    const double mu = 1.5 * 4.8 / 6.3;
    const double nu = std::pow(1.5 * 4.8, 3) / (std::pow(1.5, 3) + std::pow(4.8, 3));
    CHECK(un.mu() == doctest::Approx(mu));
    CHECK(un.nu() == doctest::Approx(nu));
    CHECK(un.eta() == doctest::Approx(nu / (mu * mu)));
    const auto nr = ParticlePair::equal(1.0, true);
    CHECK(std::isinf(nr.eta()));
    CHECK(nr.inv_eta() == 0.0);
    CHECK_THROWS_AS(ParticlePair(0.0, 1.0), Error);
}

TEST_CASE("spec strings parse and round-trip") {
    const auto c = Potential::parse("cornell:alpha=0.25,b=0.18");
    CHECK(c.kind() == Potential::Kind::cornell);
    CHECK(c.coulomb_strength() == doctest::Approx(0.25));
    CHECK(Potential::parse(c.spec()).spec() == c.spec());

    const auto u = Potential::parse("custom:-0.3*r^-1+0.1*r^2-0.02*r^-2");
    CHECK(u.value(2.0) == doctest::Approx(-0.15 + 0.4 - 0.005));
    CHECK(u.inverse_square_coefficient() == doctest::Approx(-0.02));
    CHECK(u.most_singular_power() == -2.0);
    CHECK(Potential::parse(u.spec()).value(1.3) == doctest::Approx(u.value(1.3)));
}

TEST_CASE("malformed specs and bad arguments raise typed errors") {
    auto kind_of = [](auto&& f) {
        try {
            f();
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::internal;
    };
    CHECK(kind_of([] { Potential::parse("cornell:alpha="); }) == ErrorKind::invalid_input);
    CHECK(kind_of([] { Potential::parse("morse:d=1"); }) == ErrorKind::invalid_input);
    CHECK(kind_of([] { Potential::parse("custom:3*x^2"); }) == ErrorKind::invalid_input);
    CHECK(kind_of([] { Potential::coulomb(0.2).value(0.0); }) == ErrorKind::domain);
    CHECK(kind_of([] { Potential::coulomb(0.2).derivative(1.0, 7); }) == ErrorKind::unsupported_order);
}

TEST_CASE("increasing domain") {
    const auto cornell = Potential::cornell(0.25, 0.18).increasing_domain();
    REQUIRE(cornell);
    CHECK(cornell->lo == 0.0);
    CHECK(std::isinf(cornell->hi));
    CHECK_FALSE(Potential::parse("custom:1*r^-1").increasing_domain());
    // -r^-1 - 0.01 r rises only until r = 10.
    const auto mixed = Potential::parse("custom:-1*r^-1-0.01*r^1").increasing_domain();
    REQUIRE(mixed);
    CHECK(mixed->hi == doctest::Approx(10.0).epsilon(0.05));
}
