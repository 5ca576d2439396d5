// Acceptance gate: one line per criterion, exit 0 iff all pass.

#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "cvspin/cvspin.hpp"

using namespace cvspin;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& what, const std::string& detail) {
    if (!pass) ++failures;
    std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", criterion, what.c_str(),
                detail.c_str());
    std::fflush(stdout);
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

void criterion_full_correlators() {
    double worst_i = 0.0, worst_f = 0.0;
    for (double z : {0.1, 0.3, 0.5, 0.8, 1.2}) {
        const SqueezeParameter zeta(z);
        const ModeCutoff cutoff(auto_mode_cutoff(z));
        const CorrelatorPair c = correlators_state_picture(zeta, DegeneracyLevel::full(), cutoff);
        worst_i = std::max(worst_i, std::abs(c.i_corr - 1.0));
        worst_f = std::max(worst_f, std::abs(c.f_corr - std::tanh(2.0 * z)));
    }
    report(1, worst_i <= 1e-8 && worst_f <= 1e-8,
           "FULL-level matrix correlators reach (1, tanh 2z) at the automatic cutoff",
           "worst |I-1| " + num(worst_i) + ", worst |F-tanh 2z| " + num(worst_f) + ", tol 1e-8");
}

void criterion_level0_closed_form() {
    std::mt19937 rng(20240815);
    std::uniform_real_distribution<double> dist(0.0, 1.5);
    double worst = 0.0, worst_sq = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const double z = dist(rng);
        const SqueezeParameter zeta(z);
        const ModeCutoff cutoff(auto_mode_cutoff(z));
        const CorrelatorPair c = correlators_state_picture(zeta, DegeneracyLevel::finite(0), cutoff);
        const double k = zeta.k;
        const double cosh2 = std::cosh(z) * std::cosh(z);
        worst = std::max({worst, std::abs(c.i_corr - (1.0 + k * k) / cosh2),
                          std::abs(c.f_corr - 2.0 * k / cosh2)});
        const double biqv = maximal_bell_value(c).bell.value;
        const double k2 = k * k;
        const double expected_sq = (1.0 + 6.0 * k2 + k2 * k2) / (cosh2 * cosh2);
        worst_sq = std::max(worst_sq, std::abs(biqv * biqv / 4.0 - expected_sq));
    }
    report(2, worst <= 1e-10 && worst_sq <= 1e-10,
           "level-0 matrix correlators match ((1+K^2)/cosh^2, 2K/cosh^2) and the squared maximum",
           "worst correlator diff " + num(worst) + ", worst (biqv/2)^2 diff " + num(worst_sq) +
               ", tol 1e-10, 20 random zeta in [0, 1.5]");
}

void criterion_peak_ratio() {
    double best = 0.0, arg = 0.0;
    for (int j = 0; j <= 600; ++j) {
        const double z = 0.005 * j;
        const auto c = closed_form_correlators(SqueezeParameter(z), DegeneracyLevel::finite(0));
        const double ratio = maximal_bell_value(c).bell.ratio_to_tsirelson;
        if (ratio > best) {
            best = ratio;
            arg = z;
        }
    }
    report(3, best >= 0.845 && best <= 0.855 && arg >= 0.45 && arg <= 0.60,
           "level-0 violation peaks near 85% of the quantum bound around zeta ~ 0.5",
           "peak ratio " + num(best) + " at zeta " + num(arg) +
               ", windows [0.845, 0.855] x [0.45, 0.60], scan step 0.005");
}

void criterion_monotonicity() {
    const auto records = run_sweep(figure_sweep_config(FigureKind::fig1));
    const int points = 121;
    bool ordered = true, bounded = true;
    const double bound = kTsirelsonBound * (1.0 + 1e-10);
    // the analytic level gap scales as K^(4(i+1)); where it sinks below
    // double resolution, equal floating-point values are the correct result
    // and only non-decreasing order can be required
    const double representable_gap = 1e-13;
    for (int j = 0; j < points; ++j) {
        double previous = -1.0;
        for (int series = 0; series < 5; ++series) {
            const SweepRecord& r = records[series * points + j];
            if (r.biqv > bound) bounded = false;
            if (r.zeta > 0.0 && series > 0) {
                const double k4 = std::pow(std::tanh(r.zeta), 4.0);
                const double gap =
                    series < 4 ? std::pow(k4, series) * (1.0 - k4) : std::pow(k4, 4);
                if (gap > representable_gap ? r.biqv <= previous : r.biqv < previous)
                    ordered = false;
            }
            previous = r.biqv;
        }
    }
    report(4, ordered && bounded,
           "biqv strictly increases with level on the zeta grid and stays below 2*sqrt(2)",
           std::string("levels 0 < 1 < 2 < 3 < FULL on 120 nonzero grid points, strict where "
                       "the analytic gap is representable in doubles, ") +
               (ordered ? "ordered" : "ordering violated") + ", " +
               (bounded ? "bounded" : "bound exceeded"));
}

void criterion_picture_equivalence() {
    std::mt19937 rng(424242);
    std::uniform_real_distribution<double> zdist(0.05, 1.2);
    std::uniform_int_distribution<int> ldist(0, 3);
    const ModeCutoff cutoff(24);
    double worst_ratio = 0.0, worst_diff = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const SqueezeParameter zeta(zdist(rng));
        const auto level = DegeneracyLevel::finite(ldist(rng));
        const double tol = std::max(1e-8, 10.0 * truncation_weight(zeta, cutoff));
        const CorrelatorPair state = correlators_state_picture(zeta, level, cutoff);
        for (auto route : {ObservableRoute::normal_ordered, ObservableRoute::conjugated}) {
            const CorrelatorPair obs = correlators_observable_picture(zeta, level, cutoff, route);
            const double diff = std::max(std::abs(state.i_corr - obs.i_corr),
                                         std::abs(state.f_corr - obs.f_corr));
            worst_diff = std::max(worst_diff, diff);
            worst_ratio = std::max(worst_ratio, diff / tol);
        }
    }
    report(5, worst_ratio <= 1.0,
           "state and observable pictures agree for 10 random (zeta, level) pairs at cutoff 24",
           "worst |diff| " + num(worst_diff) + ", worst diff/tol " + num(worst_ratio) +
               ", tol max(1e-8, 10 * truncation weight), both routes");
}

void criterion_su2_suite() {
    double spin_resid = 0.0;
    double involution = 0.0;
    std::mt19937 rng(1357);
    std::uniform_real_distribution<double> theta(0.0, std::numbers::pi);
    std::uniform_real_distribution<double> phi(0.0, 2.0 * std::numbers::pi);
    for (int n_max : {16, 17}) {
        const ModeCutoff c(n_max);
        std::vector<DegeneracyLevel> levels;
        for (int i = 0; i <= 3; ++i) levels.push_back(DegeneracyLevel::finite(i));
        levels.push_back(DegeneracyLevel::full());
        for (const auto& level : levels) {
            const SpinTriple spin = make_pseudospin(level, c);
            const FockOperator sp = spin_plus(level, c);
            const FockOperator sm = spin_minus(level, c);
            spin_resid = std::max(
                {spin_resid,
                 (commutator(spin.sz, sp) - cxd(2.0) * sp).mat.cwiseAbs().maxCoeff(),
                 (commutator(spin.sz, sm) + cxd(2.0) * sm).mat.cwiseAbs().maxCoeff(),
                 (commutator(sp, sm) - spin.sz).mat.cwiseAbs().maxCoeff()});
        }
        for (const auto& level : {DegeneracyLevel::finite(0), DegeneracyLevel::finite(2),
                                  DegeneracyLevel::full()}) {
            const SpinTriple spin = make_pseudospin(level, c);
            const FockOperator proj = support_projector(spin);
            for (int trial = 0; trial < 50; ++trial) {
                const FockOperator us = spin_projection({theta(rng), phi(rng)}, spin);
                involution = std::max(involution, (us * us - proj).mat.cwiseAbs().maxCoeff());
            }
        }
    }

    const ModeCutoff pc(16);
    const QuadratureScheme scheme = QuadratureScheme::for_cutoff(pc);
    const FockOperator px = sign_position_operator(pc, scheme);
    const FockOperator pz = parity_z_operator(pc);
    const FockOperator py = parity_y_operator(px, pz);
    const FockOperator pplus = cxd(0.5) * (px + cxd(0, 1) * py);
    const FockOperator pminus = cxd(0.5) * (px - cxd(0, 1) * py);
    double parity_resid =
        (commutator(pz, pplus) - cxd(2.0) * pplus).mat.cwiseAbs().maxCoeff();
    parity_resid = std::max(
        parity_resid, (commutator(pz, pminus) + cxd(2.0) * pminus).mat.cwiseAbs().maxCoeff());
    parity_resid = std::max(parity_resid, parity_su2_position_residual(pc.n_max, scheme));

    report(6, spin_resid <= 1e-8 && parity_resid <= 1e-6 && involution <= 1e-10,
           "spin-1/2 algebra holds for pseudospin and parity triples; projections square to the support",
           "pseudospin residual " + num(spin_resid) + " (tol 1e-8), parity residual " +
               num(parity_resid) + " (tol 1e-6), involution " + num(involution) +
               " (tol 1e-10, 50 directions)");
}

void criterion_parity_routes() {
    double worst_fock = 0.0, worst_density = 0.0, worst_cross = 0.0;
    for (double z : {0.25, 0.5, 1.0, 1.5}) {
        const SqueezeParameter zeta(z);
        const double closed = parity_f_closed(zeta);
        const double fock = parity_f_fock_route(zeta, ModeCutoff(auto_mode_cutoff(z)));
        const double density = parity_f_density_route(zeta);
        worst_fock = std::max(worst_fock, std::abs(fock - closed));
        worst_density = std::max(worst_density, std::abs(density - closed));
        worst_cross = std::max(worst_cross, std::abs(fock - density));
    }
    // recorded, not asserted: the pseudospin correlator dominates the parity
    // one at equal squeezing, e.g. tanh(2) vs (2/pi) arctan(sinh 2) at zeta=1
    const std::string ordering =
        "recorded ordering at zeta=1: pseudospin F " + num(std::tanh(2.0)) + " vs parity F " +
        num(parity_f_closed(SqueezeParameter(1.0)));
    report(7, worst_fock <= 1e-6 && worst_density <= 1e-6 && worst_cross <= 1e-6,
           "both parity routes reproduce (2/pi) arctan(sinh 2z)",
           "fock " + num(worst_fock) + ", density " + num(worst_density) + ", cross " +
               num(worst_cross) + ", tol 1e-6; " + ordering);
}

void criterion_limits() {
    double worst_zero = 0.0;
    for (int i = 0; i <= 3; ++i) {
        const auto c = closed_form_correlators(SqueezeParameter(0.0), DegeneracyLevel::finite(i));
        worst_zero = std::max(worst_zero, std::abs(maximal_bell_value(c).bell.value - 2.0));
    }
    const auto cf = closed_form_correlators(SqueezeParameter(0.0), DegeneracyLevel::full());
    worst_zero = std::max(worst_zero, std::abs(maximal_bell_value(cf).bell.value - 2.0));
    for (const auto& level : {DegeneracyLevel::finite(0), DegeneracyLevel::full()}) {
        const auto c =
            correlators_state_picture(SqueezeParameter(0.0), level, ModeCutoff(16));
        worst_zero = std::max(worst_zero, std::abs(maximal_bell_value(c).bell.value - 2.0));
    }

    const auto strong = closed_form_correlators(SqueezeParameter(3.0), DegeneracyLevel::full());
    const double ratio = maximal_bell_value(strong).bell.ratio_to_tsirelson;
    report(8, worst_zero <= 1e-10 && ratio >= 0.995 && ratio <= 1.0,
           "no violation at zeta = 0; FULL saturates the quantum bound by zeta = 3",
           "worst |biqv(0) - 2| " + num(worst_zero) + " (tol 1e-10), FULL ratio at zeta=3 " +
               num(ratio) + " (needs >= 0.995)");
}

}  // namespace

int main() {
    criterion_full_correlators();
    criterion_level0_closed_form();
    criterion_peak_ratio();
    criterion_monotonicity();
    criterion_picture_equivalence();
    criterion_su2_suite();
    criterion_parity_routes();
    criterion_limits();
    if (failures == 0) {
        std::printf("all 8 criteria passed\n");
        return 0;
    }
    std::printf("%d criteria failed\n", failures);
    return 1;
}
