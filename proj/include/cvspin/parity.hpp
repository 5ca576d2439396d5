#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "cvspin/bell.hpp"
#include "cvspin/fock.hpp"
#include "cvspin/squeeze.hpp"

namespace cvspin {

/// Gauss-Legendre nodes and weights on [-1, 1], found by Newton iteration on
/// the Legendre recurrence. Accurate to machine precision for n <= ~2000.
inline std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: need n >= 1");
    Eigen::VectorXd nodes(n), weights(n);
    for (int k = 0; k < n; ++k) {
        double x = std::cos(std::numbers::pi * (k + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes(n - 1 - k) = x;
        weights(n - 1 - k) = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return {std::move(nodes), std::move(weights)};
}

/// Position-space quadrature layout: each axis covers [-half_width, half_width]
/// with a Gauss-Legendre panel per sign, nodes_per_half_axis nodes each. The
/// split keeps the sign function smooth on every panel.
struct QuadratureScheme {
    int nodes_per_half_axis;
    double half_width;

    QuadratureScheme(int nodes, double width)
        : nodes_per_half_axis(nodes), half_width(width) {
        if (nodes < 8) throw std::invalid_argument("QuadratureScheme: need >= 8 nodes per half-axis");
        if (!(width > 0.0) || !std::isfinite(width))
            throw std::invalid_argument("QuadratureScheme: half_width must be finite and > 0");
    }

    static QuadratureScheme defaults() { return {128, 8.0}; }

    /// Sized for sign-operator matrix elements up to |n_max>: the classical
    /// turning point sqrt(2 n_max + 1) plus margin, nodes growing with n_max.
    static QuadratureScheme for_cutoff(ModeCutoff cutoff) {
        return {std::max(128, 4 * (cutoff.n_max + 1)),
                1.15 * std::sqrt(2.0 * cutoff.n_max + 1.0) + 2.0};
    }

    /// Sized for the squeezed position density: the marginal spread is
    /// sqrt(cosh(2 zeta) / 2) per axis, so the window grows with zeta.
    static QuadratureScheme for_squeezing(SqueezeParameter zeta) {
        const double width = std::max(8.0, 6.5 * std::sqrt(std::cosh(2.0 * zeta.zeta) / 2.0));
        return {std::max(128, 32 * static_cast<int>(std::ceil(0.8 * width))), width};
    }

    QuadratureScheme doubled() const { return {2 * nodes_per_half_axis, half_width}; }
};

/// Nodes and weights on [-L, L], negative panel then positive panel,
/// symmetric under q -> -q (node i mirrors node 2n-1-i). No node sits at 0.
inline std::pair<Eigen::VectorXd, Eigen::VectorXd> symmetric_grid(const QuadratureScheme& scheme) {
    const int n = scheme.nodes_per_half_axis;
    const double L = scheme.half_width;
    auto [x, w] = gauss_legendre(n);
    Eigen::VectorXd nodes(2 * n), weights(2 * n);
    for (int i = 0; i < n; ++i) {
        const double q = 0.5 * L * (x(i) + 1.0);  // map to (0, L)
        const double wq = 0.5 * L * w(i);
        nodes(n + i) = q;
        weights(n + i) = wq;
        nodes(n - 1 - i) = -q;
        weights(n - 1 - i) = wq;
    }
    return {std::move(nodes), std::move(weights)};
}

/// Harmonic-oscillator wavefunctions psi_0..psi_n_max sampled at the given
/// points (row n holds psi_n), via the stable three-term recurrence
/// psi_n = sqrt(2/n) q psi_{n-1} - sqrt((n-1)/n) psi_{n-2}.
inline Eigen::MatrixXd oscillator_wavefunctions(int n_max, const Eigen::VectorXd& points) {
    if (n_max < 0) throw std::invalid_argument("oscillator_wavefunctions: n_max must be >= 0");
    const auto npts = points.size();
    Eigen::MatrixXd psi(n_max + 1, npts);
    const double norm0 = std::pow(std::numbers::pi, -0.25);
    psi.row(0) = (norm0 * (-0.5 * points.array().square()).exp()).matrix().transpose();
    if (n_max >= 1) psi.row(1) = std::sqrt(2.0) * points.transpose().cwiseProduct(psi.row(0));
    for (int n = 2; n <= n_max; ++n)
        psi.row(n) = std::sqrt(2.0 / n) * points.transpose().cwiseProduct(psi.row(n - 1)) -
                     std::sqrt((n - 1.0) / n) * psi.row(n - 2);
    return psi;
}

/// Fock-space parity (-1)^n, the z-component of the parity triple.
inline FockOperator parity_z_operator(ModeCutoff cutoff) {
    Matrix m = Matrix::Zero(cutoff.dim(), cutoff.dim());
    for (int n = 0; n <= cutoff.n_max; ++n) m(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
    return {cutoff, Arity::one_mode, std::move(m)};
}

namespace detail {

inline Matrix sign_operator_matrix(ModeCutoff cutoff, const QuadratureScheme& scheme) {
    const int n = scheme.nodes_per_half_axis;
    auto [x, w] = gauss_legendre(n);
    Eigen::VectorXd q(n), wq(n);
    for (int i = 0; i < n; ++i) {
        q(i) = 0.5 * scheme.half_width * (x(i) + 1.0);
        wq(i) = 0.5 * scheme.half_width * w(i);
    }
    const Eigen::MatrixXd psi = oscillator_wavefunctions(cutoff.n_max, q);
    const Eigen::MatrixXd overlap = psi * wq.asDiagonal() * psi.transpose();
    Matrix s = Matrix::Zero(cutoff.dim(), cutoff.dim());
    for (int m = 0; m <= cutoff.n_max; ++m)
        for (int k = 0; k <= cutoff.n_max; ++k)
            if ((m + k) % 2 == 1) s(m, k) = 2.0 * overlap(m, k);  // odd pairs only; rest vanish by symmetry
    return s;
}

}  // namespace detail

/// Matrix elements of sign(q), the x-component of the parity triple:
/// <m| sgn |n> = 2 int_0^inf psi_m psi_n for m + n odd, 0 otherwise.
/// Recomputed at doubled node count as a convergence guard.
inline FockOperator sign_position_operator(ModeCutoff cutoff,
                                           const QuadratureScheme& scheme,
                                           double convergence_tol = 1e-9) {
    Matrix s = detail::sign_operator_matrix(cutoff, scheme);
    const Matrix s2 = detail::sign_operator_matrix(cutoff, scheme.doubled());
    const double drift = (s - s2).cwiseAbs().maxCoeff();
    if (drift > convergence_tol)
        throw std::runtime_error("sign_position_operator: node doubling moved entries by " +
                                 std::to_string(drift) + "; quadrature has not converged");
    return {cutoff, Arity::one_mode, std::move(s)};
}

inline FockOperator sign_position_operator(ModeCutoff cutoff, double convergence_tol = 1e-9) {
    return sign_position_operator(cutoff, QuadratureScheme::for_cutoff(cutoff), convergence_tol);
}

/// y-component completing the parity triple: i (Px Pz - Pz Px) / 2.
inline FockOperator parity_y_operator(const FockOperator& px, const FockOperator& pz) {
    return cxd(0, 0.5) * (px * pz - pz * px);
}

/// Position wavefunction of the two-mode squeezed vacuum:
/// (1/sqrt(pi)) exp(-e^{-2 zeta} (q1+q2)^2 / 4 - e^{2 zeta} (q1-q2)^2 / 4).
inline double tmsv_position_wavefunction(SqueezeParameter zeta, double q1, double q2) {
    const double plus = q1 + q2;
    const double minus = q1 - q2;
    return std::pow(std::numbers::pi, -0.5) *
           std::exp(-0.25 * (std::exp(-2.0 * zeta.zeta) * plus * plus +
                             std::exp(2.0 * zeta.zeta) * minus * minus));
}

/// Analytic parity correlator F = <Px (x) Px> = (2/pi) arctan(sinh(2 zeta)).
inline double parity_f_closed(SqueezeParameter zeta) {
    return (2.0 / std::numbers::pi) * std::atan(std::sinh(2.0 * zeta.zeta));
}

/// Fock route: F = sum_{m,n} c_m c_n <m|sgn|n>^2 over the truncated TMSV
/// Schmidt amplitudes c_n = tanh(zeta)^n / cosh(zeta).
inline double parity_f_fock_route(SqueezeParameter zeta, const FockOperator& sign_op) {
    const int d = sign_op.cutoff.dim();
    Eigen::VectorXd c(d);
    const double inv_cosh = 1.0 / std::cosh(zeta.zeta);
    double kn = 1.0;
    for (int n = 0; n < d; ++n) {
        c(n) = kn * inv_cosh;
        kn *= zeta.k;
    }
    const Eigen::MatrixXd s2 = sign_op.mat.real().array().square();
    return c.dot(s2 * c);
}

inline double parity_f_fock_route(SqueezeParameter zeta, ModeCutoff cutoff) {
    return parity_f_fock_route(zeta, sign_position_operator(cutoff));
}

/// Density route: F = int sgn(q1) sgn(q2) |Psi(q1, q2)|^2 over the
/// scheme's window (defaults to the zeta-sized scheme).
inline double parity_f_density_route(SqueezeParameter zeta, const QuadratureScheme& scheme) {
    auto [q, w] = symmetric_grid(scheme);
    const auto n = q.size();
    Eigen::VectorXd sw(n);
    for (Eigen::Index i = 0; i < n; ++i) sw(i) = (q(i) > 0.0 ? w(i) : -w(i));
    const double a = std::exp(-2.0 * zeta.zeta);
    const double b = std::exp(2.0 * zeta.zeta);
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        double row = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            const double plus = q(i) + q(j);
            const double minus = q(i) - q(j);
            row += sw(j) * std::exp(-0.5 * (a * plus * plus + b * minus * minus));
        }
        total += sw(i) * row;
    }
    return total / std::numbers::pi;
}

inline double parity_f_density_route(SqueezeParameter zeta) {
    return parity_f_density_route(zeta, QuadratureScheme::for_squeezing(zeta));
}

/// Parity analog of the CHSH correlator pair. The closed form is
/// (1, (2/pi) arctan(sinh 2 zeta)); the matrix route truncates both at the
/// cutoff, so I picks up the dropped tail weight.
inline CorrelatorPair parity_correlators(SqueezeParameter zeta, CorrelatorMethod method,
                                         std::optional<ModeCutoff> cutoff = std::nullopt) {
    if (method == CorrelatorMethod::closed_form) return {1.0, parity_f_closed(zeta)};
    ModeCutoff mc = cutoff ? *cutoff : ModeCutoff(1);
    if (!cutoff) {
        if (zeta.zeta > kMaxAutoZeta)
            throw std::invalid_argument("parity_correlators: zeta exceeds the automatic-cutoff range");
        mc = ModeCutoff(auto_mode_cutoff(zeta.zeta));
    }
    return {1.0 - truncation_weight(zeta, mc), parity_f_fock_route(zeta, mc)};
}

/// Residual of the spin-1/2 product relation [P+, P-] = Pz evaluated in the
/// position representation: the commutator is applied as grid-level function
/// composition (sign multiplication and reflection) to each retained
/// oscillator state, projected back by quadrature, and compared with the
/// analytic parity matrix (-1)^n delta_mn. Truncated Fock-matrix products
/// cannot verify this relation; their residual decays only like the inverse
/// square root of the cutoff.
inline double parity_su2_position_residual(int n_check, const QuadratureScheme& scheme) {
    auto [q, w] = symmetric_grid(scheme);
    const auto npts = q.size();
    Eigen::VectorXi reflect(npts);
    for (Eigen::Index i = 0; i < npts; ++i) reflect(i) = static_cast<int>(npts - 1 - i);
    Eigen::VectorXd sgn(npts);
    for (Eigen::Index i = 0; i < npts; ++i) sgn(i) = (q(i) > 0.0 ? 1.0 : -1.0);

    using Column = Eigen::VectorXcd;
    auto apply_z = [&](const Column& f) {
        Column g(npts);
        for (Eigen::Index i = 0; i < npts; ++i) g(i) = f(reflect(i));
        return g;
    };
    auto apply_x = [&](const Column& f) { return Column(sgn.cast<cxd>().asDiagonal() * f); };
    auto apply_y = [&](const Column& f) {
        return Column(cxd(0, 0.5) * (apply_x(apply_z(f)) - apply_z(apply_x(f))));
    };
    auto apply_plus = [&](const Column& f) {
        return Column(0.5 * (apply_x(f) + cxd(0, 1) * apply_y(f)));
    };
    auto apply_minus = [&](const Column& f) {
        return Column(0.5 * (apply_x(f) - cxd(0, 1) * apply_y(f)));
    };

    const Eigen::MatrixXd psi = oscillator_wavefunctions(n_check, q);
    double residual = 0.0;
    for (int n = 0; n <= n_check; ++n) {
        const Column f = psi.row(n).transpose().cast<cxd>();
        const Column commutated = apply_plus(apply_minus(f)) - apply_minus(apply_plus(f));
        for (int m = 0; m <= n_check; ++m) {
            cxd elem = 0.0;
            for (Eigen::Index i = 0; i < npts; ++i) elem += w(i) * psi(m, i) * commutated(i);
            const double expected = (m == n) ? ((n % 2 == 0) ? 1.0 : -1.0) : 0.0;
            residual = std::max(residual, std::abs(elem - expected));
        }
    }
    return residual;
}

/// Residual of [P+, P-] - Pz formed with truncated Fock matrices, measured on
/// the core block (indices up to n_max / 2). Reported for reference; it is
/// dominated by cutoff-boundary leakage of the sign operator.
inline double parity_product_commutator_core_residual(ModeCutoff cutoff,
                                                      const QuadratureScheme& scheme) {
    const FockOperator px = sign_position_operator(cutoff, scheme);
    const FockOperator pz = parity_z_operator(cutoff);
    const FockOperator py = parity_y_operator(px, pz);
    const FockOperator plus = cxd(0.5) * (px + cxd(0, 1) * py);
    const FockOperator minus = cxd(0.5) * (px - cxd(0, 1) * py);
    const Matrix resid = (commutator(plus, minus) - pz).mat;
    const int core = cutoff.n_max / 2 + 1;
    return resid.topLeftCorner(core, core).cwiseAbs().maxCoeff();
}

}  // namespace cvspin
