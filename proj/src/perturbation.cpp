#include "slet/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "slet/error.hpp"

namespace slet {

BandedMatrix::BandedMatrix(int size, int bandwidth)
    : size_(size), bandwidth_(bandwidth), data_(static_cast<std::size_t>(2 * bandwidth + 1) * size, 0.0) {
    if (size < 1 || bandwidth < 0) throw Error(ErrorKind::invalid_input, "bad banded matrix shape");
}

double BandedMatrix::operator()(int i, int j) const {
    const int d = j - i;
    if (d < -bandwidth_ || d > bandwidth_) return 0.0;
    return data_[static_cast<std::size_t>(d + bandwidth_) * size_ + i];
}

double& BandedMatrix::at(int i, int j) {
    const int d = j - i;
    if (d < -bandwidth_ || d > bandwidth_ || i < 0 || j < 0 || i >= size_ || j >= size_)
        throw Error(ErrorKind::internal, "banded element outside band");
    return data_[static_cast<std::size_t>(d + bandwidth_) * size_ + i];
}

BandedMatrix BandedMatrix::operator*(const BandedMatrix& rhs) const {
    if (rhs.size_ != size_) throw Error(ErrorKind::internal, "banded product size mismatch");
    BandedMatrix out(size_, std::min(bandwidth_ + rhs.bandwidth_, size_ - 1));
    for (int i = 0; i < size_; ++i) {
        const int k_lo = std::max(0, i - bandwidth_);
        const int k_hi = std::min(size_ - 1, i + bandwidth_);
        for (int k = k_lo; k <= k_hi; ++k) {
            const double a = (*this)(i, k);
            if (a == 0.0) continue;
            const int j_lo = std::max(0, k - rhs.bandwidth_);
            const int j_hi = std::min(size_ - 1, k + rhs.bandwidth_);
            for (int j = j_lo; j <= j_hi; ++j) out.at(i, j) += a * rhs(k, j);
        }
    }
    return out;
}

void BandedMatrix::add_scaled(double scale, const BandedMatrix& other) {
    if (other.size_ != size_) throw Error(ErrorKind::internal, "banded sum size mismatch");
    if (other.bandwidth_ > bandwidth_) {
        BandedMatrix wider(size_, other.bandwidth_);
        wider.add_scaled(1.0, *this);
        *this = std::move(wider);
    }
    for (int i = 0; i < size_; ++i) {
        for (int j = std::max(0, i - other.bandwidth_); j <= std::min(size_ - 1, i + other.bandwidth_); ++j)
            at(i, j) += scale * other(i, j);
    }
}

BandedMatrix BandedMatrix::truncated(int size) const {
    if (size > size_) throw Error(ErrorKind::internal, "cannot enlarge a banded matrix by truncation");
    BandedMatrix out(size, std::min(bandwidth_, std::max(size - 1, 0)));
    for (int i = 0; i < size; ++i)
        for (int j = std::max(0, i - out.bandwidth_); j <= std::min(size - 1, i + out.bandwidth_); ++j)
            out.at(i, j) = (*this)(i, j);
    return out;
}

std::vector<double> BandedMatrix::apply(std::span<const double> v) const {
    if (static_cast<int>(v.size()) != size_) throw Error(ErrorKind::internal, "banded apply size mismatch");
    std::vector<double> out(size_, 0.0);
    for (int i = 0; i < size_; ++i) {
        double s = 0.0;
        for (int j = std::max(0, i - bandwidth_); j <= std::min(size_ - 1, i + bandwidth_); ++j)
            s += (*this)(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

BandedMatrix position_matrix(double mu, double omega, int basis_size) {
    if (!(mu * omega > 0.0) || !std::isfinite(mu * omega))
        throw Error(ErrorKind::domain, "position matrix needs mu*omega > 0");
    if (basis_size < 2) throw Error(ErrorKind::invalid_input, "basis size must be at least 2");
    BandedMatrix x(basis_size, 1);
    const double scale = 1.0 / (2.0 * mu * omega);
    for (int k = 0; k + 1 < basis_size; ++k) {
        const double e = std::sqrt((k + 1) * scale);
        x.at(k, k + 1) = e;
        x.at(k + 1, k) = e;
    }
    return x;
}

BandedMatrix position_power(double mu, double omega, int basis_size, int power) {
    if (power < 0) throw Error(ErrorKind::invalid_input, "negative power of x");
    // x couples k to k +- 1 only, so x^p elements within the first N states
    // need at most N + p states to be exact.
    const int big = basis_size + std::max(power, 1);
    BandedMatrix x = position_matrix(mu, omega, big);
    BandedMatrix acc(big, 0);
    for (int i = 0; i < big; ++i) acc.at(i, i) = 1.0;
    for (int p = 0; p < power; ++p) acc = acc * x;
    return acc.truncated(basis_size);
}

namespace {

std::array<double, 4> run_rspt(const AnharmonicProblem& problem, int basis_size) {
    const int n = problem.level;
    const int size = basis_size;
    if (n < 0) throw Error(ErrorKind::invalid_input, "level must be non-negative");

    std::array<BandedMatrix, 4> w{BandedMatrix(size, 0), BandedMatrix(size, 0), BandedMatrix(size, 0),
                                  BandedMatrix(size, 0)};
    for (int order = 0; order < 4; ++order) {
        for (const auto& term : problem.terms_by_order[order]) {
            if (term.coefficient == 0.0) continue;
            w[order].add_scaled(term.coefficient, position_power(problem.mu, problem.omega, size, term.power));
        }
    }

    std::vector<double> resolvent(size, 0.0);
    for (int k = 0; k < size; ++k) {
        if (k == n) continue;
        const double gap = (k - n) * problem.omega;
        if (gap == 0.0) throw Error(ErrorKind::internal, "degenerate unperturbed level");
        resolvent[k] = 1.0 / gap;
    }

    std::array<std::vector<double>, 5> psi;
    psi[0].assign(size, 0.0);
    psi[0][n] = 1.0;
    std::array<double, 5> energy{};
    for (int m = 1; m <= 4; ++m) {
        std::vector<double> rhs(size, 0.0);
        for (int j = 1; j <= m; ++j) {
            auto wpsi = w[j - 1].apply(psi[m - j]);
            for (int k = 0; k < size; ++k) rhs[k] -= wpsi[k];
        }
        energy[m] = -rhs[n];
        for (int k = 1; k <= m; ++k)
            for (int i = 0; i < size; ++i) rhs[i] += energy[k] * psi[m - k][i];
        psi[m].assign(size, 0.0);
        for (int i = 0; i < size; ++i) psi[m][i] = i == n ? 0.0 : rhs[i] * resolvent[i];
    }
    return {energy[1], energy[2], energy[3], energy[4]};
}

bool close(double a, double b, double rel) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) <= rel * scale || std::abs(a - b) < 1e-14;
}

}  // namespace

SeriesCoefficients rspt_coefficients(const AnharmonicProblem& problem, int basis_size, bool check_basis) {
    if (!(problem.mu * problem.omega > 0.0))
        throw Error(ErrorKind::domain, "anharmonic problem needs mu*omega > 0");
    if (basis_size < problem.level + 20)
        throw Error(ErrorKind::invalid_input, "basis size must be at least level + 20, got " +
                                                  std::to_string(basis_size));
    for (const auto& order : problem.terms_by_order)
        for (const auto& term : order) {
            if (term.power < 0 || term.power > 6 || !std::isfinite(term.coefficient))
                throw Error(ErrorKind::invalid_input, "anharmonic term out of range");
        }

    SeriesCoefficients out;
    out.c = run_rspt(problem, basis_size);
    if (check_basis) {
        auto doubled = run_rspt(problem, 2 * basis_size);
        if (!close(out.c[1], doubled[1], 1e-9) || !close(out.c[3], doubled[3], 1e-9))
            throw Error(ErrorKind::basis, "series coefficients changed under basis doubling");
    }
    return out;
}

AlphaPair alpha_from_series(const SeriesCoefficients& coeffs) {
    auto odd_tolerance = [&](double even) { return 1e-10 * std::max(1.0, std::abs(even)); };
    if (std::abs(coeffs.c1()) > odd_tolerance(coeffs.c2()) || std::abs(coeffs.c3()) > odd_tolerance(coeffs.c4()))
        throw Error(ErrorKind::inconsistency, "odd-order series coefficients do not vanish; terms mis-assembled");
    return {coeffs.c2(), coeffs.c4()};
}

}  // namespace slet
