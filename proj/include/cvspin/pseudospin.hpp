#pragma once

#include <cmath>
#include <stdexcept>

#include "cvspin/fock.hpp"

namespace cvspin {

/// Truncation depth of the pseudospin sums. Level i keeps the parity pairs
/// (|2n>, |2n+1>) for n = 0..i; FULL keeps every complete pair the cutoff
/// holds, i.e. level floor((n_max - 1) / 2).
class DegeneracyLevel {
  public:
    static DegeneracyLevel finite(int i) {
        if (i < 0) throw std::invalid_argument("DegeneracyLevel: level must be >= 0");
        return DegeneracyLevel(i);
    }
    static DegeneracyLevel full() { return DegeneracyLevel(-1); }

    bool is_full() const { return value_ < 0; }

    int value() const {
        if (is_full()) throw std::logic_error("DegeneracyLevel: FULL has no finite value");
        return value_;
    }

    /// Concrete level on a given truncated space.
    int resolve(ModeCutoff cutoff) const {
        if (is_full()) return (cutoff.n_max - 1) / 2;
        if (!cutoff.fits_level(value_))
            throw std::invalid_argument("DegeneracyLevel: level " + std::to_string(value_) +
                                        " needs n_max >= " + std::to_string(2 * value_ + 1));
        return value_;
    }

    friend bool operator==(DegeneracyLevel a, DegeneracyLevel b) { return a.value_ == b.value_; }
    friend bool operator!=(DegeneracyLevel a, DegeneracyLevel b) { return !(a == b); }

  private:
    explicit DegeneracyLevel(int v) : value_(v) {}
    int value_;
};

/// Measurement direction (theta, phi) on the unit sphere.
struct Direction {
    double theta;
    double phi;
};

/// One-mode pseudospin components at a fixed degeneracy level. All three are
/// Hermitian, vanish outside the retained pairs, and close the spin-1/2
/// algebra [sz, s+-] = +-2 s+-, [s+, s-] = sz exactly on the truncated space.
struct SpinTriple {
    FockOperator sz;
    FockOperator sx;
    FockOperator sy;
    DegeneracyLevel level;
    ModeCutoff cutoff;
};

/// s- at level i: sum_{n=0..i} |2n><2n+1|.
inline FockOperator spin_minus(DegeneracyLevel level, ModeCutoff cutoff) {
    const int top = level.resolve(cutoff);
    Matrix m = Matrix::Zero(cutoff.dim(), cutoff.dim());
    for (int n = 0; n <= top; ++n) m(2 * n, 2 * n + 1) = 1.0;
    return {cutoff, Arity::one_mode, std::move(m)};
}

inline FockOperator spin_plus(DegeneracyLevel level, ModeCutoff cutoff) {
    return spin_minus(level, cutoff).adjoint();
}

inline SpinTriple make_pseudospin(DegeneracyLevel level, ModeCutoff cutoff) {
    const int top = level.resolve(cutoff);
    Matrix z = Matrix::Zero(cutoff.dim(), cutoff.dim());
    for (int n = 0; n <= top; ++n) {
        z(2 * n, 2 * n) = -1.0;
        z(2 * n + 1, 2 * n + 1) = 1.0;
    }
    const FockOperator sm = spin_minus(level, cutoff);
    const FockOperator sp = sm.adjoint();
    FockOperator sx = sp + sm;
    FockOperator sy = cxd(0, -1) * (sp - sm);
    return {FockOperator(cutoff, Arity::one_mode, std::move(z)), std::move(sx), std::move(sy),
            level, cutoff};
}

/// Projector onto the retained pairs; equals (u.s)^2 for any direction u.
inline FockOperator support_projector(const SpinTriple& spin) {
    const int top = spin.level.resolve(spin.cutoff);
    Matrix p = Matrix::Zero(spin.cutoff.dim(), spin.cutoff.dim());
    for (int n = 0; n <= 2 * top + 1; ++n) p(n, n) = 1.0;
    return {spin.cutoff, Arity::one_mode, std::move(p)};
}

/// u.s = cos(theta) sz + sin(theta) (e^{i phi} s- + e^{-i phi} s+).
inline FockOperator spin_projection(Direction u, const SpinTriple& spin) {
    const FockOperator sm = spin_minus(spin.level, spin.cutoff);
    const FockOperator sp = sm.adjoint();
    const cxd phase(std::cos(u.phi), std::sin(u.phi));
    return cxd(std::cos(u.theta)) * spin.sz +
           cxd(std::sin(u.theta)) * (phase * sm + std::conj(phase) * sp);
}

/// Number of retained eigenstates of sz with the given eigenvalue sign.
/// Finite levels pair evens with odds, so both counts equal level + 1.
inline int degeneracy_count(const SpinTriple& spin, int eigen_sign) {
    if (eigen_sign != 1 && eigen_sign != -1)
        throw std::invalid_argument("degeneracy_count: eigen_sign must be +1 or -1");
    return spin.level.resolve(spin.cutoff) + 1;
}

}  // namespace cvspin
