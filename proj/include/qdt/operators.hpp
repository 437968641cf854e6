#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "eigen.hpp"
#include "errors.hpp"
#include "matrix.hpp"
#include "tolerances.hpp"

namespace qdt {

/// Unit vector in C^r. Equality of states is only meaningful up to a global
/// phase; compare them with transition probabilities, not component-wise.
class StateVector {
  public:
    explicit StateVector(ComplexVector amplitudes, const Tolerances &tol = default_tolerances())
        : amplitudes_(std::move(amplitudes)) {
        if (amplitudes_.empty())
            throw Error(ErrorKind::DimensionMismatch, "state vector of dimension 0");
        for (const auto &z : amplitudes_)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                throw Error(ErrorKind::InvariantViolation, "state vector has non-finite amplitudes");
        const double n = norm(amplitudes_);
        if (std::abs(n - 1.0) > tol.unit_norm)
            throw Error(ErrorKind::InvariantViolation,
                        "state vector must have unit norm, got " + std::to_string(n));
    }

    /// Rescales a non-zero vector to unit length.
    static StateVector normalized(ComplexVector v) {
        const double n = norm(v);
        if (!(n > 0.0) || !std::isfinite(n))
            throw Error(ErrorKind::InvariantViolation, "cannot normalize a zero or non-finite vector");
        for (auto &z : v)
            z /= n;
        return StateVector(std::move(v));
    }

    static StateVector basis(std::size_t dim, std::size_t index) {
        ComplexVector v(dim);
        v.at(index) = 1.0;
        return StateVector(std::move(v));
    }

    [[nodiscard]] std::size_t dim() const noexcept { return amplitudes_.size(); }
    [[nodiscard]] const ComplexVector &amplitudes() const noexcept { return amplitudes_; }
    [[nodiscard]] Complex operator[](std::size_t i) const { return amplitudes_[i]; }

  private:
    ComplexVector amplitudes_;
};

/// Square matrix equal to its adjoint. Entries are checked against the
/// conjugate transpose and then symmetrized exactly.
class HermitianOperator {
  public:
    explicit HermitianOperator(const ComplexMatrix &m, const Tolerances &tol = default_tolerances()) {
        if (!m.is_square() || m.rows() == 0)
            throw Error(ErrorKind::DimensionMismatch, "operator must be a non-empty square matrix");
        if (!m.all_finite())
            throw Error(ErrorKind::InvariantViolation, "operator has non-finite entries");
        double scale = 1.0;
        for (const auto &z : m.data())
            scale = std::max(scale, std::abs(z));
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = i; j < m.cols(); ++j)
                if (std::abs(m(i, j) - std::conj(m(j, i))) > tol.hermitian_entry * scale)
                    throw Error(ErrorKind::NotHermitian, "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                                             ") differs from the conjugate of its mirror");
        matrix_ = 0.5 * (m + adjoint(m));
    }

    [[nodiscard]] std::size_t dim() const noexcept { return matrix_.rows(); }
    [[nodiscard]] const ComplexMatrix &matrix() const noexcept { return matrix_; }

    [[nodiscard]] SpectralDecomposition eig(const Tolerances &tol = default_tolerances()) const {
        return hermitian_eig(matrix_, std::nullopt, tol);
    }

  private:
    ComplexMatrix matrix_;
};

/// Orthogonal projector: P = P^+ = P^2, trace equal to an integer rank >= 1.
class Projector : public HermitianOperator {
  public:
    explicit Projector(const ComplexMatrix &m, const Tolerances &tol = default_tolerances())
        : HermitianOperator(m, tol) {
        const auto &p = matrix();
        const double idem = frobenius_norm(p * p - p);
        if (idem > tol.idempotence)
            throw Error(ErrorKind::InvariantViolation, "projector is not idempotent: ||P^2 - P||_F = " +
                                                           std::to_string(idem));
        const double tr = trace(p).real();
        const double rounded = std::round(tr);
        if (rounded < 1.0 || std::abs(tr - rounded) > tol.projector_trace)
            throw Error(ErrorKind::InvariantViolation, "projector trace " + std::to_string(tr) +
                                                           " is not a positive integer rank");
        rank_ = static_cast<std::size_t>(rounded);
    }

    static Projector identity(std::size_t dim) { return Projector(ComplexMatrix::identity(dim)); }

    /// |v><v| for a unit vector.
    static Projector onto(const StateVector &v) {
        return Projector(ComplexMatrix::outer(v.amplitudes(), v.amplitudes()));
    }

    [[nodiscard]] std::size_t rank() const noexcept { return rank_; }

    /// I - P. Fails for P = I since the zero operator is not a projector here.
    [[nodiscard]] Projector complement() const {
        return Projector(ComplexMatrix::identity(dim()) - matrix());
    }

  private:
    std::size_t rank_ = 0;
};

/// Hermitian operator with spectrum inside [0, 1].
class Effect : public HermitianOperator {
  public:
    explicit Effect(const ComplexMatrix &m, const Tolerances &tol = default_tolerances())
        : HermitianOperator(m, tol) {
        const auto ev = eigenvalues(matrix(), tol);
        if (ev.front() < -tol.effect_eigenvalue || ev.back() > 1.0 + tol.effect_eigenvalue)
            throw Error(ErrorKind::InvalidEffect, "effect spectrum [" + std::to_string(ev.front()) + ", " +
                                                      std::to_string(ev.back()) + "] leaves [0, 1]");
    }

    Effect(const Projector &p) : HermitianOperator(p) {} // NOLINT: every projector is an effect

    static Effect identity(std::size_t dim) { return Effect(Projector::identity(dim)); }
};

/// Positive semidefinite operator of unit trace.
class DensityOperator : public HermitianOperator {
  public:
    explicit DensityOperator(const ComplexMatrix &m, const Tolerances &tol = default_tolerances())
        : HermitianOperator(m, tol) {
        const double tr = trace(matrix()).real();
        if (std::abs(tr - 1.0) > tol.density_trace)
            throw Error(ErrorKind::InvariantViolation, "density trace is " + std::to_string(tr) + ", expected 1");
        const auto ev = eigenvalues(matrix(), tol);
        if (ev.front() < -tol.density_eigenvalue)
            throw Error(ErrorKind::InvariantViolation,
                        "density has negative eigenvalue " + std::to_string(ev.front()));
    }

    static DensityOperator pure(const StateVector &psi) {
        return DensityOperator(ComplexMatrix::outer(psi.amplitudes(), psi.amplitudes()));
    }

    static DensityOperator maximally_mixed(std::size_t dim) {
        return DensityOperator(ComplexMatrix::identity(dim) * Complex(1.0 / static_cast<double>(dim)));
    }
};

/// W with W^+ W = I.
class UnitaryOperator {
  public:
    explicit UnitaryOperator(ComplexMatrix w, const Tolerances &tol = default_tolerances()) : matrix_(std::move(w)) {
        if (!matrix_.is_square() || matrix_.rows() == 0)
            throw Error(ErrorKind::DimensionMismatch, "unitary must be a non-empty square matrix");
        const double defect = frobenius_norm(adjoint(matrix_) * matrix_ - ComplexMatrix::identity(matrix_.rows()));
        if (!(defect <= tol.unitary))
            throw Error(ErrorKind::NotUnitary, "||W^+W - I||_F = " + std::to_string(defect));
    }

    [[nodiscard]] std::size_t dim() const noexcept { return matrix_.rows(); }
    [[nodiscard]] const ComplexMatrix &matrix() const noexcept { return matrix_; }
    [[nodiscard]] ComplexMatrix inverse() const { return adjoint(matrix_); }

  private:
    ComplexMatrix matrix_;
};

inline void require_same_dim(std::size_t a, std::size_t b, const char *what) {
    if (a != b)
        throw Error(ErrorKind::DimensionMismatch,
                    std::string(what) + ": dimension " + std::to_string(a) + " vs " + std::to_string(b));
}

} // namespace qdt
