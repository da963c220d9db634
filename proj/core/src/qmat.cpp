#include "cohmark/qmat.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace cohmark {

namespace {

void check_dim(std::size_t dim) {
    if (dim == 0 || dim > SquareMatrix::kMaxDim) {
        throw DimensionError("matrix dimension must be in 1..4, got " + std::to_string(dim));
    }
}

void check_same_dim(const SquareMatrix& a, const SquareMatrix& b, const char* op) {
    if (a.dim() != b.dim()) {
        std::ostringstream os;
        os << op << ": dimension mismatch (" << a.dim() << " vs " << b.dim() << ")";
        throw DimensionError(os.str());
    }
}

}  // namespace

Complex make_complex(double re, double im) {
    if (!std::isfinite(re) || !std::isfinite(im)) {
        throw std::invalid_argument("complex scalar components must be finite");
    }
    return {re, im};
}

SquareMatrix::SquareMatrix(std::size_t dim) : dim_(dim) { check_dim(dim); }

SquareMatrix::SquareMatrix(std::size_t dim, std::initializer_list<Complex> row_major) : dim_(dim) {
    check_dim(dim);
    if (row_major.size() != dim * dim) {
        throw DimensionError("expected " + std::to_string(dim * dim) + " entries, got " +
                             std::to_string(row_major.size()));
    }
    std::size_t k = 0;
    for (const auto& v : row_major) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw std::invalid_argument("matrix entries must be finite");
        }
        (*this)(k / dim, k % dim) = v;
        ++k;
    }
}

SquareMatrix SquareMatrix::identity(std::size_t dim) {
    SquareMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

SquareMatrix SquareMatrix::diagonal(std::span<const Complex> diag) {
    SquareMatrix m(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

SquareMatrix SquareMatrix::diagonal(std::span<const double> diag) {
    SquareMatrix m(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

Complex SquareMatrix::trace() const noexcept {
    Complex t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

SquareMatrix& SquareMatrix::operator+=(const SquareMatrix& o) {
    check_same_dim(*this, o, "operator+=");
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) (*this)(i, j) += o(i, j);
    return *this;
}

SquareMatrix& SquareMatrix::operator-=(const SquareMatrix& o) {
    check_same_dim(*this, o, "operator-=");
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) (*this)(i, j) -= o(i, j);
    return *this;
}

SquareMatrix& SquareMatrix::operator*=(Complex c) noexcept {
    for (auto& v : a_) v *= c;
    return *this;
}

SquareMatrix operator+(SquareMatrix a, const SquareMatrix& b) { return a += b; }
SquareMatrix operator-(SquareMatrix a, const SquareMatrix& b) { return a -= b; }
SquareMatrix operator*(SquareMatrix a, Complex c) { return a *= c; }
SquareMatrix operator*(Complex c, SquareMatrix a) { return a *= c; }
SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) { return matmul(a, b); }

SquareMatrix matmul(const SquareMatrix& a, const SquareMatrix& b) {
    check_same_dim(a, b, "matmul");
    const std::size_t n = a.dim();
    SquareMatrix c(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

SquareMatrix dagger(const SquareMatrix& a) {
    SquareMatrix d(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) d(i, j) = std::conj(a(j, i));
    return d;
}

SquareMatrix kron(const SquareMatrix& a, const SquareMatrix& b) {
    const std::size_t n = a.dim() * b.dim();
    SquareMatrix k(n);
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            for (std::size_t p = 0; p < b.dim(); ++p)
                for (std::size_t q = 0; q < b.dim(); ++q)
                    k(i * b.dim() + p, j * b.dim() + q) = a(i, j) * b(p, q);
    return k;
}

SquareMatrix commutator(const SquareMatrix& a, const SquareMatrix& b) { return a * b - b * a; }
SquareMatrix anticommutator(const SquareMatrix& a, const SquareMatrix& b) { return a * b + b * a; }

SquareMatrix outer(std::span<const Complex> psi) {
    SquareMatrix m(psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i)
        for (std::size_t j = 0; j < psi.size(); ++j) m(i, j) = psi[i] * std::conj(psi[j]);
    return m;
}

double max_abs_diff(const SquareMatrix& a, const SquareMatrix& b) {
    check_same_dim(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

double hermiticity_defect(const SquareMatrix& a) noexcept {
    double m = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = i; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
    return m;
}

bool is_hermitian(const SquareMatrix& a, double tol) noexcept { return hermiticity_defect(a) <= tol; }

bool is_unitary(const SquareMatrix& u, double tol) {
    return max_abs_diff(dagger(u) * u, SquareMatrix::identity(u.dim())) <= tol;
}

std::vector<double> eigvals_hermitian(const SquareMatrix& a) {
    if (!is_hermitian(a, kEigenInputTol)) {
        throw NotHermitianError("eigvals_hermitian: input is not Hermitian (defect " +
                                std::to_string(hermiticity_defect(a)) + ")");
    }
    const auto n = static_cast<Eigen::Index>(a.dim());
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = a(i, j);
    // Symmetrize so the solver sees an exactly Hermitian matrix.
    m = (0.5 * (m + m.adjoint())).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    std::vector<double> out(ev.data(), ev.data() + ev.size());
    std::sort(out.begin(), out.end());
    return out;
}

DensityTolerance DensityTolerance::at_least(double tol) noexcept {
    DensityTolerance t;
    t.hermitian = std::max(t.hermitian, tol);
    t.trace = std::max(t.trace, tol);
    t.psd = std::max(t.psd, tol);
    return t;
}

DensityOperator validate_density(const SquareMatrix& a, const DensityTolerance& tol) {
    std::vector<std::string> failures;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) {
            const Complex v = a(i, j);
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
                throw DensityValidationError("density matrix has non-finite entries", {"non-finite entry"});
            }
        }
    }
    const double herm = hermiticity_defect(a);
    if (herm > tol.hermitian) {
        std::ostringstream os;
        os << "non-Hermitian: defect " << herm << " > " << tol.hermitian;
        failures.push_back(os.str());
    }
    const Complex tr = a.trace();
    if (std::abs(tr - 1.0) > tol.trace) {
        std::ostringstream os;
        os << "trace deviation: |Tr - 1| = " << std::abs(tr - 1.0) << " > " << tol.trace;
        failures.push_back(os.str());
    }
    // The spectrum is only meaningful for (nearly) Hermitian input; use the
    // Hermitian part so a tiny defect does not mask a negative eigenvalue.
    SquareMatrix h = 0.5 * (a + dagger(a));
    const auto ev = eigvals_hermitian(h);
    if (ev.front() < -tol.psd) {
        std::ostringstream os;
        os << "negative eigenvalue: " << ev.front() << " < " << -tol.psd;
        failures.push_back(os.str());
    }
    if (!failures.empty()) {
        std::string msg = "invalid density operator:";
        for (const auto& f : failures) msg += " [" + f + "]";
        throw DensityValidationError(msg, failures);
    }
    return DensityOperator(a);
}

DensityOperator validate_density(const SquareMatrix& a, double tol) {
    return validate_density(a, DensityTolerance::at_least(tol));
}

DensityOperator basis_rotate(const DensityOperator& rho, const SquareMatrix& u) {
    if (u.dim() != rho.dim()) throw DimensionError("basis_rotate: dimension mismatch");
    if (!is_unitary(u)) throw NotUnitaryError("basis_rotate: matrix is not unitary");
    SquareMatrix r = u * rho.matrix() * dagger(u);
    // Restore exact Hermiticity lost to rounding.
    r = 0.5 * (r + dagger(r));
    return validate_density(r);
}

namespace ops {

SquareMatrix sigma_x() { return SquareMatrix(2, {0.0, 1.0, 1.0, 0.0}); }
SquareMatrix sigma_y() { return SquareMatrix(2, {0.0, Complex(0, -1), Complex(0, 1), 0.0}); }
SquareMatrix sigma_z() { return SquareMatrix(2, {1.0, 0.0, 0.0, -1.0}); }
SquareMatrix lowering() { return SquareMatrix(2, {0.0, 1.0, 0.0, 0.0}); }
SquareMatrix raising() { return SquareMatrix(2, {0.0, 0.0, 1.0, 0.0}); }
SquareMatrix hadamard() {
    const double r = 1.0 / std::sqrt(2.0);
    return SquareMatrix(2, {r, r, r, -r});
}

}  // namespace ops

}  // namespace cohmark
