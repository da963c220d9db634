// coherence.hpp: l1-norm and relative-entropy coherence in a preferred basis

#pragma once

#include <cstddef>
#include <span>
#include <string_view>

#include "cohmark/qmat.hpp"

namespace cohmark {

inline constexpr double kIncoherenceTol = 1e-10;

enum class BasisLabel { computational, rotated_bell };

std::string_view to_string(BasisLabel label) noexcept;

/// The basis in which coherence is measured. Density operators are always
/// stored in computational coordinates; the preferred basis only decides
/// where off-diagonal elements are read.
class PreferredBasis {
public:
    PreferredBasis(std::size_t dim, BasisLabel label);

    static PreferredBasis computational(std::size_t dim) { return {dim, BasisLabel::computational}; }
    /// {|00>, (|01>-|10>)/sqrt2, (|01>+|10>)/sqrt2, |11>}, in that order.
    static PreferredBasis rotated_bell() { return {4, BasisLabel::rotated_bell}; }

    std::size_t dim() const noexcept { return dim_; }
    BasisLabel label() const noexcept { return label_; }

    /// Matrix V with rows <b_k| so that V rho V^dagger holds rho in this basis.
    SquareMatrix to_basis() const;

    bool operator==(const PreferredBasis&) const = default;

private:
    std::size_t dim_;
    BasisLabel label_;
};

/// Rows are <psi_k| of the rotated Bell basis in computational coordinates.
const SquareMatrix& rotated_bell_unitary();

/// rho (computational coordinates) expressed in the basis.
SquareMatrix to_basis_coordinates(const SquareMatrix& rho, const PreferredBasis& basis);
/// Inverse of to_basis_coordinates.
SquareMatrix from_basis_coordinates(const SquareMatrix& rho_in_basis, const PreferredBasis& basis);

enum class CoherenceMeasure { l1, relative_entropy };

struct CoherenceValue {
    CoherenceMeasure measure;
    double value;
};

/// Sum of off-diagonal moduli of a matrix already in basis coordinates.
double l1_offdiagonal(const SquareMatrix& m) noexcept;

CoherenceValue c_l1(const DensityOperator& rho, const PreferredBasis& basis);

/// S(diag rho) - S(rho) with log base 2.
CoherenceValue c_re(const DensityOperator& rho, const PreferredBasis& basis);

bool is_incoherent(const DensityOperator& rho, const PreferredBasis& basis, double tol = kIncoherenceTol);

/// (1/sqrt d) sum_k exp(i phi_k) |k>, projected, in computational coordinates.
DensityOperator max_coherent_state(std::size_t dim, std::span<const double> phases);

/// Same construction over the vectors of an arbitrary preferred basis.
DensityOperator max_coherent_state(const PreferredBasis& basis, std::span<const double> phases);

/// Von Neumann entropy in bits of a spectrum; 0 log 0 := 0.
double entropy_bits(std::span<const double> eigenvalues) noexcept;

}  // namespace cohmark
