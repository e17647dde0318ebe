#pragma once

#include <array>
#include <span>
#include <utility>
#include <vector>

namespace slet {

/// Square matrix stored by diagonals -bandwidth..bandwidth.
class BandedMatrix {
public:
    BandedMatrix(int size, int bandwidth);

    int size() const noexcept { return size_; }
    int bandwidth() const noexcept { return bandwidth_; }

    /// Element (i, j); zero outside the band.
    double operator()(int i, int j) const;
    double& at(int i, int j);

    BandedMatrix operator*(const BandedMatrix& rhs) const;
    /// this += scale * other (bandwidth grows to fit).
    void add_scaled(double scale, const BandedMatrix& other);
    /// Leading size x size block.
    BandedMatrix truncated(int size) const;

    std::vector<double> apply(std::span<const double> v) const;

private:
    int size_;
    int bandwidth_;
    std::vector<double> data_;  // diagonal d at [(d + bandwidth) * size + i], element (i, i + d)
};

/// Coordinate operator in the oscillator eigenbasis of
/// -(1/2mu) d^2/dx^2 + (1/2) mu omega^2 x^2: element (k, k+1) = sqrt((k+1)/(2 mu omega)).
BandedMatrix position_matrix(double mu, double omega, int basis_size);

/// x^power restricted to the first basis_size states. Built in a basis large
/// enough that every retained element is exact.
BandedMatrix position_power(double mu, double omega, int basis_size, int power);

struct MonomialTerm {
    int power;
    double coefficient;
};

/// h(lambda) = H_osc + sum_j lambda^j W_j for level `level`, with
/// W_j = sum of coefficient * x^power over terms_by_order[j-1].
struct AnharmonicProblem {
    double mu = 0.0;
    double omega = 0.0;
    int level = 0;
    std::array<std::vector<MonomialTerm>, 4> terms_by_order;
};

/// Coefficients of lambda^1..lambda^4 in the level's energy expansion.
struct SeriesCoefficients {
    std::array<double, 4> c{};
    double c1() const noexcept { return c[0]; }
    double c2() const noexcept { return c[1]; }
    double c3() const noexcept { return c[2]; }
    double c4() const noexcept { return c[3]; }
};

/// Non-degenerate Rayleigh-Schroedinger recursion through lambda^4 in a
/// truncated oscillator basis (intermediate normalization). When
/// `check_basis` is set the calculation is repeated with twice the basis and a
/// basis error is raised if c2 or c4 move by more than 1e-9 relative.
SeriesCoefficients rspt_coefficients(const AnharmonicProblem& problem, int basis_size, bool check_basis = true);

struct AlphaPair {
    double alpha1;
    double alpha2;
};

/// alpha1 = c2, alpha2 = c4. Odd coefficients must vanish (parity).
AlphaPair alpha_from_series(const SeriesCoefficients& coeffs);

}  // namespace slet
