#pragma once

#include <cmath>
#include <stdexcept>

#include "cvspin/expm.hpp"
#include "cvspin/fock.hpp"

namespace cvspin {

/// Squeezing strength zeta >= 0 and the induced pair amplitude k = tanh(zeta).
struct SqueezeParameter {
    double zeta;
    double k;

    explicit SqueezeParameter(double z) : zeta(z), k(std::tanh(z)) {
        if (!(z >= 0.0) || !std::isfinite(z))
            throw std::invalid_argument("SqueezeParameter: zeta must be finite and >= 0");
    }
};

/// Two-mode squeezed vacuum truncated at the cutoff:
/// amp(n, n) = tanh(zeta)^n / cosh(zeta), zero off the diagonal.
/// The dropped tail is kept dropped; no renormalization.
inline TwoModeState tmsv_amplitudes(SqueezeParameter zeta, ModeCutoff cutoff) {
    const int d = cutoff.dim();
    Matrix a = Matrix::Zero(d, d);
    const double inv_cosh = 1.0 / std::cosh(zeta.zeta);
    double kn = 1.0;
    for (int n = 0; n < d; ++n) {
        a(n, n) = kn * inv_cosh;
        kn *= zeta.k;
    }
    return {cutoff, std::move(a)};
}

/// Probability weight of the dropped tail: sum_{n > n_max} |amp(n,n)|^2
/// = tanh(zeta)^(2(n_max+1)).  Equals 1 - squared_norm of the kept state.
inline double truncation_weight(SqueezeParameter zeta, ModeCutoff cutoff) {
    return std::pow(zeta.k, 2 * (cutoff.n_max + 1));
}

/// Anti-Hermitian two-mode generator a^dag b^dag - a b.
inline FockOperator pair_generator(ModeCutoff cutoff) {
    const FockOperator a = annihilation(cutoff);
    const FockOperator ad = a.adjoint();
    return tensor(ad, ad) - tensor(a, a);
}

/// U(zeta) = exp(zeta (a^dag b^dag - a b)) on the truncated space. Unitary up
/// to truncation leakage at the cutoff boundary.
inline FockOperator squeeze_unitary(SqueezeParameter zeta, ModeCutoff cutoff) {
    return operator_exponential(pair_generator(cutoff), zeta.zeta);
}

/// U^dag op U: moves the squeezing from the state into the observable.
inline FockOperator conjugate_observable(const FockOperator& op, SqueezeParameter zeta) {
    if (op.arity != Arity::two_mode)
        throw std::invalid_argument("conjugate_observable: operator must be two-mode");
    const FockOperator u = squeeze_unitary(zeta, op.cutoff);
    return u.adjoint() * op * u;
}

/// exp(k a^dag b^dag) |state>, summed exactly on the truncated space.
/// For |00> this yields sum_n k^n |nn> up to the cutoff.
inline TwoModeState apply_pair_creation_exponential(double k, const TwoModeState& state) {
    if (!(k >= 0.0 && k < 1.0))
        throw std::invalid_argument("apply_pair_creation_exponential: need 0 <= k < 1");
    const int d = state.cutoff.dim();
    Matrix result = state.amps;
    Matrix term = state.amps;
    for (int j = 1; j <= state.cutoff.n_max; ++j) {
        Matrix next = Matrix::Zero(d, d);
        for (int na = 1; na < d; ++na)
            for (int nb = 1; nb < d; ++nb)
                next(na, nb) = std::sqrt(static_cast<double>(na) * nb) * term(na - 1, nb - 1);
        term = (k / j) * next;
        result += term;
    }
    return {state.cutoff, std::move(result)};
}

}  // namespace cvspin
