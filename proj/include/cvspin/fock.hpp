#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace cvspin {

using cxd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Highest retained occupation number per mode. The truncated single-mode
/// space is span{|0>, ..., |n_max>}, dimension n_max + 1.
struct ModeCutoff {
    int n_max;

    explicit ModeCutoff(int n) : n_max(n) {
        if (n < 1) throw std::invalid_argument("ModeCutoff: n_max must be >= 1");
    }

    int dim() const { return n_max + 1; }

    /// A degeneracy level i needs states |0>..|2i+1> to fit.
    bool fits_level(int level) const { return 2 * level + 1 <= n_max; }

    friend bool operator==(ModeCutoff a, ModeCutoff b) { return a.n_max == b.n_max; }
    friend bool operator!=(ModeCutoff a, ModeCutoff b) { return !(a == b); }
};

/// Smallest n_max with the dropped TMSV tail below `tail_bound`:
/// tanh(zeta)^(2(n_max+1)) < tail_bound, hard floor 16.
inline int auto_mode_cutoff(double zeta, double tail_bound = 1e-12, int floor_n = 16) {
    if (!(zeta >= 0.0) || !std::isfinite(zeta))
        throw std::invalid_argument("auto_mode_cutoff: zeta must be finite and >= 0");
    const double k = std::tanh(zeta);
    if (k == 0.0) return floor_n;
    const int n = static_cast<int>(std::ceil(std::log(tail_bound) / (2.0 * std::log(k)) - 1.0));
    return std::max(floor_n, n);
}

enum class Arity { one_mode, two_mode };

/// Dense complex matrix on the truncated Fock space of one or two modes.
/// Two-mode indices follow the row-major convention
///   (n_a, n_b) <-> n_a*(n_max+1) + n_b,
/// shared by every module.
struct FockOperator {
    ModeCutoff cutoff;
    Arity arity;
    Matrix mat;

    FockOperator(ModeCutoff c, Arity a, Matrix m)
        : cutoff(c), arity(a), mat(std::move(m)) {
        const int d = expected_dim(c, a);
        if (mat.rows() != d || mat.cols() != d)
            throw std::invalid_argument("FockOperator: matrix is " +
                                        std::to_string(mat.rows()) + "x" + std::to_string(mat.cols()) +
                                        ", expected " + std::to_string(d));
    }

    static int expected_dim(ModeCutoff c, Arity a) {
        return a == Arity::one_mode ? c.dim() : c.dim() * c.dim();
    }

    int dim() const { return static_cast<int>(mat.rows()); }

    FockOperator adjoint() const { return {cutoff, arity, mat.adjoint()}; }

    /// max |O - O^dag| over entries; 0 for Hermitian operators.
    double hermiticity_error() const {
        return (mat - mat.adjoint().eval()).cwiseAbs().maxCoeff();
    }

    friend FockOperator operator+(const FockOperator& x, const FockOperator& y) {
        require_same_shape(x, y, "operator+");
        return {x.cutoff, x.arity, x.mat + y.mat};
    }
    friend FockOperator operator-(const FockOperator& x, const FockOperator& y) {
        require_same_shape(x, y, "operator-");
        return {x.cutoff, x.arity, x.mat - y.mat};
    }
    friend FockOperator operator*(const FockOperator& x, const FockOperator& y) {
        require_same_shape(x, y, "operator*");
        return {x.cutoff, x.arity, x.mat * y.mat};
    }
    friend FockOperator operator*(cxd s, const FockOperator& x) {
        return {x.cutoff, x.arity, s * x.mat};
    }

    static void require_same_shape(const FockOperator& x, const FockOperator& y, const char* who) {
        if (x.cutoff != y.cutoff || x.arity != y.arity)
            throw std::invalid_argument(std::string(who) + ": cutoff/arity mismatch");
    }
};

/// Complex amplitude table over Fock index pairs (n_a, n_b).
/// amps(n_a, n_b) is the coefficient of |n_a, n_b>. Truncations of analytic
/// states are stored as-is, so the squared norm may fall below 1.
struct TwoModeState {
    ModeCutoff cutoff;
    Matrix amps;

    TwoModeState(ModeCutoff c, Matrix a) : cutoff(c), amps(std::move(a)) {
        if (amps.rows() != c.dim() || amps.cols() != c.dim())
            throw std::invalid_argument("TwoModeState: amplitude table must be dim x dim");
    }

    cxd amp(int n_a, int n_b) const { return amps(n_a, n_b); }
    double squared_norm() const { return amps.squaredNorm(); }

    /// Flatten to a ket under the shared two-mode index convention.
    Vector flatten() const {
        const int d = cutoff.dim();
        Vector v(d * d);
        for (int na = 0; na < d; ++na)
            for (int nb = 0; nb < d; ++nb) v(na * d + nb) = amps(na, nb);
        return v;
    }
};

inline TwoModeState vacuum_state(ModeCutoff cutoff) {
    Matrix a = Matrix::Zero(cutoff.dim(), cutoff.dim());
    a(0, 0) = 1.0;
    return {cutoff, std::move(a)};
}

/// a|n> = sqrt(n) |n-1>, a|0> = 0; rows above the cutoff are dropped.
inline FockOperator annihilation(ModeCutoff cutoff) {
    Matrix m = Matrix::Zero(cutoff.dim(), cutoff.dim());
    for (int n = 1; n <= cutoff.n_max; ++n) m(n - 1, n) = std::sqrt(static_cast<double>(n));
    return {cutoff, Arity::one_mode, std::move(m)};
}

inline FockOperator creation(ModeCutoff cutoff) { return annihilation(cutoff).adjoint(); }

inline FockOperator identity_operator(ModeCutoff cutoff, Arity arity = Arity::one_mode) {
    const int d = FockOperator::expected_dim(cutoff, arity);
    return {cutoff, arity, Matrix::Identity(d, d)};
}

inline FockOperator number_operator(ModeCutoff cutoff) {
    Matrix m = Matrix::Zero(cutoff.dim(), cutoff.dim());
    for (int n = 0; n <= cutoff.n_max; ++n) m(n, n) = static_cast<double>(n);
    return {cutoff, Arity::one_mode, std::move(m)};
}

/// Kronecker product; x acts on mode a, y on mode b.
inline FockOperator tensor(const FockOperator& x, const FockOperator& y) {
    if (x.arity != Arity::one_mode || y.arity != Arity::one_mode)
        throw std::invalid_argument("tensor: both factors must be one-mode");
    if (x.cutoff != y.cutoff) throw std::invalid_argument("tensor: cutoff mismatch");
    const int d = x.cutoff.dim();
    Matrix out(d * d, d * d);
    for (int ia = 0; ia < d; ++ia)
        for (int ja = 0; ja < d; ++ja) out.block(ia * d, ja * d, d, d) = x.mat(ia, ja) * y.mat;
    return {x.cutoff, Arity::two_mode, std::move(out)};
}

/// <state| op |state> for a two-mode operator.
inline cxd expectation(const TwoModeState& state, const FockOperator& op) {
    if (op.arity != Arity::two_mode) throw std::invalid_argument("expectation: operator must be two-mode");
    if (op.cutoff != state.cutoff) throw std::invalid_argument("expectation: cutoff mismatch");
    const Vector v = state.flatten();
    return v.dot(op.mat * v);  // Eigen's dot conjugates the left argument
}

/// <state| x (x) y |state> without forming the Kronecker product:
/// with M the amplitude table, this is sum conj(M) .* (x M y^T).
inline cxd tensor_pair_expectation(const TwoModeState& state, const FockOperator& x,
                                   const FockOperator& y) {
    if (x.arity != Arity::one_mode || y.arity != Arity::one_mode)
        throw std::invalid_argument("tensor_pair_expectation: factors must be one-mode");
    if (x.cutoff != state.cutoff || y.cutoff != state.cutoff)
        throw std::invalid_argument("tensor_pair_expectation: cutoff mismatch");
    const Matrix t = x.mat * state.amps * y.mat.transpose();
    return state.amps.conjugate().cwiseProduct(t).sum();
}

inline FockOperator commutator(const FockOperator& x, const FockOperator& y) {
    FockOperator::require_same_shape(x, y, "commutator");
    return {x.cutoff, x.arity, x.mat * y.mat - y.mat * x.mat};
}

}  // namespace cvspin
