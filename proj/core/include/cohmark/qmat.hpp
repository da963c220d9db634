// qmat.hpp: small dense complex matrices and validated density operators

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cohmark {

using Complex = std::complex<double>;

// Tolerances used by validation. Trajectories carry integrator error of
// order 1e-8, so these sit well above machine epsilon.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = 1e-9;
inline constexpr double kEigenInputTol = 1e-10;
inline constexpr double kUnitaryTol = 1e-10;

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NotHermitianError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NotUnitaryError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Builds a complex scalar, rejecting NaN and infinite components.
Complex make_complex(double re, double im = 0.0);

/// Square complex matrix of dimension 1..4, stored row-major in place.
class SquareMatrix {
public:
    static constexpr std::size_t kMaxDim = 4;

    explicit SquareMatrix(std::size_t dim);
    SquareMatrix(std::size_t dim, std::initializer_list<Complex> row_major);

    static SquareMatrix identity(std::size_t dim);
    static SquareMatrix diagonal(std::span<const Complex> diag);
    static SquareMatrix diagonal(std::span<const double> diag);

    std::size_t dim() const noexcept { return dim_; }

    Complex operator()(std::size_t i, std::size_t j) const noexcept { return a_[i * kMaxDim + j]; }
    Complex& operator()(std::size_t i, std::size_t j) noexcept { return a_[i * kMaxDim + j]; }

    Complex trace() const noexcept;

    SquareMatrix& operator+=(const SquareMatrix& o);
    SquareMatrix& operator-=(const SquareMatrix& o);
    SquareMatrix& operator*=(Complex c) noexcept;

private:
    std::size_t dim_;
    std::array<Complex, kMaxDim * kMaxDim> a_{};
};

SquareMatrix operator+(SquareMatrix a, const SquareMatrix& b);
SquareMatrix operator-(SquareMatrix a, const SquareMatrix& b);
SquareMatrix operator*(SquareMatrix a, Complex c);
SquareMatrix operator*(Complex c, SquareMatrix a);
SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b);

SquareMatrix matmul(const SquareMatrix& a, const SquareMatrix& b);
SquareMatrix dagger(const SquareMatrix& a);
SquareMatrix kron(const SquareMatrix& a, const SquareMatrix& b);
SquareMatrix commutator(const SquareMatrix& a, const SquareMatrix& b);
SquareMatrix anticommutator(const SquareMatrix& a, const SquareMatrix& b);

/// |psi><psi| for a state vector of length 1..4 (not normalized here).
SquareMatrix outer(std::span<const Complex> psi);

/// Largest entrywise modulus of a - b.
double max_abs_diff(const SquareMatrix& a, const SquareMatrix& b);
double hermiticity_defect(const SquareMatrix& a) noexcept;
bool is_hermitian(const SquareMatrix& a, double tol = kHermitianTol) noexcept;
bool is_unitary(const SquareMatrix& u, double tol = kUnitaryTol);

/// Eigenvalues of a Hermitian matrix, ascending.
std::vector<double> eigvals_hermitian(const SquareMatrix& a);

struct DensityTolerance {
    double hermitian = kHermitianTol;
    double trace = kTraceTol;
    double psd = kPsdTol;

    /// Loosens every bound to at least `tol`.
    static DensityTolerance at_least(double tol) noexcept;
};

class DensityValidationError : public std::runtime_error {
public:
    DensityValidationError(std::string message, std::vector<std::string> failures)
        : std::runtime_error(std::move(message)), failures_(std::move(failures)) {}
    const std::vector<std::string>& failures() const noexcept { return failures_; }

private:
    std::vector<std::string> failures_;
};

/// A Hermitian, unit-trace, positive semidefinite matrix. Only obtainable
/// through validate_density, so every instance satisfies the invariants.
class DensityOperator {
public:
    std::size_t dim() const noexcept { return m_.dim(); }
    const SquareMatrix& matrix() const noexcept { return m_; }
    Complex operator()(std::size_t i, std::size_t j) const noexcept { return m_(i, j); }

private:
    explicit DensityOperator(SquareMatrix m) : m_(m) {}
    friend DensityOperator validate_density(const SquareMatrix&, const DensityTolerance&);

    SquareMatrix m_;
};

DensityOperator validate_density(const SquareMatrix& a, const DensityTolerance& tol = {});
DensityOperator validate_density(const SquareMatrix& a, double tol);

/// U rho U^dagger. Throws NotUnitaryError if U is not unitary.
DensityOperator basis_rotate(const DensityOperator& rho, const SquareMatrix& u);

namespace ops {
SquareMatrix sigma_x();
SquareMatrix sigma_y();
SquareMatrix sigma_z();
/// |0><1|: takes the excited level |1> to the ground level |0>.
SquareMatrix lowering();
/// |1><0|
SquareMatrix raising();
SquareMatrix hadamard();
}  // namespace ops

}  // namespace cohmark
