#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cvspin/fock.hpp"
#include "cvspin/pseudospin.hpp"
#include "cvspin/squeeze.hpp"

namespace cvspin {

/// Largest zeta the automatic cutoff rule is sized for; beyond it matrix
/// evaluations need an explicit cutoff.
inline constexpr double kMaxAutoZeta = 1.5;

/// Quantum bound 2 sqrt(2) on the CHSH combination.
inline const double kTsirelsonBound = 2.0 * std::sqrt(2.0);

struct BellAngles {
    Direction u;
    Direction v;
    Direction u_prime;
    Direction v_prime;
};

/// One-parameter CHSH family: u along z, u' along x, v and v' at
/// +-theta_v in the xz-plane. Its expectation on symmetric correlators
/// reduces to 2 cos(theta_v) I + 2 sin(theta_v) F.
inline BellAngles symmetric_chsh_angles(double theta_v) {
    const double half_pi = std::acos(0.0);
    return {{0.0, 0.0}, {theta_v, 0.0}, {half_pi, 0.0}, {-theta_v, 0.0}};
}

/// I = <sz (x) sz>, F = <sx (x) sx>; both real and in [-1, 1] for the
/// states handled here.
struct CorrelatorPair {
    double i_corr;
    double f_corr;
};

struct BellValue {
    double value;
    double ratio_to_tsirelson;
};

inline BellValue make_bell_value(double value) { return {value, value / kTsirelsonBound}; }

/// Maximized CHSH expectation; theta_v is absent when I = F = 0 leaves the
/// angle undetermined.
struct MaximalBell {
    BellValue bell;
    std::optional<double> theta_v;
};

namespace detail {

inline double checked_real(cxd value, double imag_tol, const char* who) {
    if (std::abs(value.imag()) > imag_tol)
        throw std::runtime_error(std::string(who) + ": imaginary part " +
                                 std::to_string(value.imag()) + " exceeds tolerance");
    return value.real();
}

}  // namespace detail

/// CHSH operator (u.s)(v.s) + (u.s)(v'.s) + (u'.s)(v.s) - (u'.s)(v'.s)
/// as a dense two-mode operator at the given level.
inline FockOperator bell_operator(const BellAngles& angles, DegeneracyLevel level,
                                  ModeCutoff cutoff) {
    const SpinTriple spin = make_pseudospin(level, cutoff);
    const FockOperator su = spin_projection(angles.u, spin);
    const FockOperator sv = spin_projection(angles.v, spin);
    const FockOperator sup = spin_projection(angles.u_prime, spin);
    const FockOperator svp = spin_projection(angles.v_prime, spin);
    return tensor(su, sv) + tensor(su, svp) + tensor(sup, sv) - tensor(sup, svp);
}

/// Entangled-state picture: correlators of the truncated TMSV amplitudes.
inline CorrelatorPair correlators_state_picture(SqueezeParameter zeta, DegeneracyLevel level,
                                                ModeCutoff cutoff, double imag_tol = 1e-9) {
    const TwoModeState state = tmsv_amplitudes(zeta, cutoff);
    const SpinTriple spin = make_pseudospin(level, cutoff);
    const cxd i_val = tensor_pair_expectation(state, spin.sz, spin.sz);
    const cxd f_val = tensor_pair_expectation(state, spin.sx, spin.sx);
    return {detail::checked_real(i_val, imag_tol, "correlators_state_picture"),
            detail::checked_real(f_val, imag_tol, "correlators_state_picture")};
}

enum class ObservableRoute { normal_ordered, conjugated };

/// Entangled-observable picture: vacuum expectation of the squeezed
/// observables. The normal-ordered route evaluates
/// <00| U^dag O U |00> = <phi| O |phi> / cosh^2(zeta) with
/// phi = exp(k a^dag b^dag)|00>; the conjugated route builds U^dag O U
/// explicitly and reads off its vacuum element.
inline CorrelatorPair correlators_observable_picture(SqueezeParameter zeta, DegeneracyLevel level,
                                                     ModeCutoff cutoff,
                                                     ObservableRoute route = ObservableRoute::normal_ordered,
                                                     double imag_tol = 1e-9) {
    const SpinTriple spin = make_pseudospin(level, cutoff);
    if (route == ObservableRoute::normal_ordered) {
        const TwoModeState phi = apply_pair_creation_exponential(zeta.k, vacuum_state(cutoff));
        const double scale = 1.0 / (std::cosh(zeta.zeta) * std::cosh(zeta.zeta));
        const cxd i_val = scale * tensor_pair_expectation(phi, spin.sz, spin.sz);
        const cxd f_val = scale * tensor_pair_expectation(phi, spin.sx, spin.sx);
        return {detail::checked_real(i_val, imag_tol, "correlators_observable_picture"),
                detail::checked_real(f_val, imag_tol, "correlators_observable_picture")};
    }
    const FockOperator zz = conjugate_observable(tensor(spin.sz, spin.sz), zeta);
    const FockOperator xx = conjugate_observable(tensor(spin.sx, spin.sx), zeta);
    return {detail::checked_real(zz.mat(0, 0), imag_tol, "correlators_observable_picture"),
            detail::checked_real(xx.mat(0, 0), imag_tol, "correlators_observable_picture")};
}

/// Analytic correlators of the untruncated TMSV. With K = tanh(zeta):
/// level i: I = 1 - K^(4(i+1)), F = tanh(2 zeta) (1 - K^(4(i+1)));
/// FULL:    I = 1,               F = tanh(2 zeta).
inline CorrelatorPair closed_form_correlators(SqueezeParameter zeta, DegeneracyLevel level) {
    const double f_full = std::tanh(2.0 * zeta.zeta);
    if (level.is_full()) return {1.0, f_full};
    const double retained = 1.0 - std::pow(zeta.k, 4 * (level.value() + 1));
    return {retained, f_full * retained};
}

/// <B> for the symmetric angle family: 2 cos(theta_v) I + 2 sin(theta_v) F.
inline double bell_expectation_at_angle(CorrelatorPair c, double theta_v) {
    return 2.0 * std::cos(theta_v) * c.i_corr + 2.0 * std::sin(theta_v) * c.f_corr;
}

/// Maximum of the symmetric family over theta_v: 2 sqrt(I^2 + F^2) at
/// theta_v = atan2(F, I).
inline MaximalBell maximal_bell_value(CorrelatorPair c) {
    const double r = std::hypot(c.i_corr, c.f_corr);
    if (r == 0.0) return {make_bell_value(0.0), std::nullopt};
    return {make_bell_value(2.0 * r), std::atan2(c.f_corr, c.i_corr)};
}

enum class CorrelatorMethod { closed_form, matrix };

/// Maximal Bell values over a zeta grid. The matrix method truncates at
/// `cutoff` when given, otherwise at the automatic cutoff, which requires
/// every grid point to stay within kMaxAutoZeta.
inline std::vector<BellValue> biqv_curve(DegeneracyLevel level, const std::vector<double>& zeta_grid,
                                         CorrelatorMethod method,
                                         std::optional<ModeCutoff> cutoff = std::nullopt) {
    std::vector<BellValue> out;
    out.reserve(zeta_grid.size());
    for (double z : zeta_grid) {
        const SqueezeParameter zeta(z);
        CorrelatorPair c{};
        if (method == CorrelatorMethod::closed_form) {
            c = closed_form_correlators(zeta, level);
        } else {
            ModeCutoff mc = cutoff ? *cutoff : ModeCutoff(1);
            if (!cutoff) {
                if (z > kMaxAutoZeta)
                    throw std::invalid_argument("biqv_curve: zeta " + std::to_string(z) +
                                                " exceeds the automatic-cutoff range; pass a cutoff");
                mc = ModeCutoff(auto_mode_cutoff(z));
            }
            c = correlators_state_picture(zeta, level, mc);
        }
        out.push_back(maximal_bell_value(c).bell);
    }
    return out;
}

}  // namespace cvspin
