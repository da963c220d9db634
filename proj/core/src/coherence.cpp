#include "cohmark/coherence.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace cohmark {

std::string_view to_string(BasisLabel label) noexcept {
    switch (label) {
    case BasisLabel::computational: return "computational";
    case BasisLabel::rotated_bell: return "rotated_bell";
    }
    return "unknown";
}

PreferredBasis::PreferredBasis(std::size_t dim, BasisLabel label) : dim_(dim), label_(label) {
    if (dim == 0 || dim > SquareMatrix::kMaxDim) throw DimensionError("preferred basis dimension must be in 1..4");
    if (label == BasisLabel::rotated_bell && dim != 4) {
        throw DimensionError("rotated_bell basis requires dimension 4");
    }
}

const SquareMatrix& rotated_bell_unitary() {
    static const SquareMatrix v = [] {
        const double r = 1.0 / std::sqrt(2.0);
        // Columns: |00>, |01>, |10>, |11>.
        return SquareMatrix(4, {1.0, 0.0, 0.0, 0.0,
                                0.0, r, -r, 0.0,
                                0.0, r, r, 0.0,
                                0.0, 0.0, 0.0, 1.0});
    }();
    return v;
}

SquareMatrix PreferredBasis::to_basis() const {
    if (label_ == BasisLabel::rotated_bell) return rotated_bell_unitary();
    return SquareMatrix::identity(dim_);
}

SquareMatrix to_basis_coordinates(const SquareMatrix& rho, const PreferredBasis& basis) {
    if (rho.dim() != basis.dim()) throw DimensionError("state and basis dimensions differ");
    if (basis.label() == BasisLabel::computational) return rho;
    const auto& v = rotated_bell_unitary();
    return v * rho * dagger(v);
}

SquareMatrix from_basis_coordinates(const SquareMatrix& rho_in_basis, const PreferredBasis& basis) {
    if (rho_in_basis.dim() != basis.dim()) throw DimensionError("state and basis dimensions differ");
    if (basis.label() == BasisLabel::computational) return rho_in_basis;
    const auto& v = rotated_bell_unitary();
    return dagger(v) * rho_in_basis * v;
}

double l1_offdiagonal(const SquareMatrix& m) noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j)
            if (i != j) s += std::abs(m(i, j));
    return s;
}

CoherenceValue c_l1(const DensityOperator& rho, const PreferredBasis& basis) {
    return {CoherenceMeasure::l1, l1_offdiagonal(to_basis_coordinates(rho.matrix(), basis))};
}

double entropy_bits(std::span<const double> eigenvalues) noexcept {
    double s = 0.0;
    for (double p : eigenvalues) {
        if (p > 0.0) s -= p * std::log2(p);
    }
    return s;
}

CoherenceValue c_re(const DensityOperator& rho, const PreferredBasis& basis) {
    const SquareMatrix m = to_basis_coordinates(rho.matrix(), basis);
    std::vector<double> diag(m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i) diag[i] = std::max(0.0, m(i, i).real());
    const auto ev = eigvals_hermitian(0.5 * (m + dagger(m)));
    const double value = entropy_bits(diag) - entropy_bits(ev);
    // Relative entropy of coherence is nonnegative; clip rounding noise.
    return {CoherenceMeasure::relative_entropy, std::max(0.0, value)};
}

bool is_incoherent(const DensityOperator& rho, const PreferredBasis& basis, double tol) {
    const SquareMatrix m = to_basis_coordinates(rho.matrix(), basis);
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j)
            if (i != j && std::abs(m(i, j)) > tol) return false;
    return true;
}

DensityOperator max_coherent_state(std::size_t dim, std::span<const double> phases) {
    return max_coherent_state(PreferredBasis::computational(dim), phases);
}

DensityOperator max_coherent_state(const PreferredBasis& basis, std::span<const double> phases) {
    if (phases.size() != basis.dim()) {
        throw std::invalid_argument("max_coherent_state: expected " + std::to_string(basis.dim()) +
                                    " phases, got " + std::to_string(phases.size()));
    }
    const double amp = 1.0 / std::sqrt(static_cast<double>(basis.dim()));
    std::vector<Complex> psi(basis.dim());
    for (std::size_t k = 0; k < basis.dim(); ++k) {
        if (!std::isfinite(phases[k])) throw std::invalid_argument("max_coherent_state: non-finite phase");
        psi[k] = std::polar(amp, phases[k]);
    }
    SquareMatrix in_basis = outer(psi);
    SquareMatrix comp = from_basis_coordinates(in_basis, basis);
    comp = 0.5 * (comp + dagger(comp));
    return validate_density(comp);
}

}  // namespace cohmark
