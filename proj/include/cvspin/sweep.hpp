#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cvspin/bell.hpp"
#include "cvspin/parity.hpp"
#include "cvspin/pseudospin.hpp"
#include "cvspin/squeeze.hpp"

namespace cvspin {

enum class ObservableFamily { pseudospin, parity };
enum class SweepMethod { closed, matrix, both };
enum class OutputFormat { csv, json };

/// Declarative description of a correlator sweep over zeta and levels.
/// An absent cutoff means the automatic tail rule applied at zeta_max; matrix
/// evaluations then require zeta_max <= kMaxAutoZeta. The parity family has
/// no degeneracy ladder, so it only accepts the FULL level.
struct SweepConfig {
    double zeta_min = 0.0;
    double zeta_max = 1.0;
    int steps = 11;
    std::vector<DegeneracyLevel> levels = {DegeneracyLevel::full()};
    ObservableFamily family = ObservableFamily::pseudospin;
    SweepMethod method = SweepMethod::closed;
    std::optional<int> cutoff;
    double tolerance = 1e-8;
};

struct SweepRecord {
    double zeta;
    std::optional<int> level;  // absent = FULL
    double i_corr;
    double f_corr;
    double biqv;
    double ratio;
    CorrelatorMethod method;
    std::optional<int> cutoff;  // absent = untruncated (closed form)
    double truncation_weight;
};

namespace detail {

inline void validate_sweep_config(const SweepConfig& config) {
    if (!(config.zeta_min >= 0.0) || !std::isfinite(config.zeta_min))
        throw std::invalid_argument("sweep: zeta_min must be finite and >= 0");
    if (!(config.zeta_max > config.zeta_min) || !std::isfinite(config.zeta_max))
        throw std::invalid_argument("sweep: zeta_max must be finite and > zeta_min");
    if (config.steps < 2) throw std::invalid_argument("sweep: steps must be >= 2");
    if (config.levels.empty()) throw std::invalid_argument("sweep: need at least one level");
    if (config.cutoff && *config.cutoff < 1)
        throw std::invalid_argument("sweep: cutoff must be >= 1");
    const bool wants_matrix = config.method != SweepMethod::closed;
    if (wants_matrix && !config.cutoff && config.zeta_max > kMaxAutoZeta)
        throw std::invalid_argument(
            "sweep: matrix method with automatic cutoff supports zeta_max <= 1.5; "
            "pass an explicit cutoff");
    if (config.family == ObservableFamily::parity)
        for (const auto& level : config.levels)
            if (!level.is_full())
                throw std::invalid_argument(
                    "sweep: the parity family has no degeneracy levels; use level inf");
}

inline std::vector<DegeneracyLevel> sorted_unique_levels(std::vector<DegeneracyLevel> levels) {
    auto key = [](DegeneracyLevel l) {
        return l.is_full() ? std::numeric_limits<int>::max() : l.value();
    };
    std::sort(levels.begin(), levels.end(),
              [&](DegeneracyLevel a, DegeneracyLevel b) { return key(a) < key(b); });
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    return levels;
}

/// Schmidt-diagonal fast path: for the TMSV, <A (x) A> = c^T (A .* A) c with
/// c the diagonal amplitudes. Matches correlators_state_picture exactly.
struct LevelCorrelatorTable {
    Eigen::VectorXd sz2_diag;
    Eigen::MatrixXd sx2;
};

inline LevelCorrelatorTable make_level_table(DegeneracyLevel level, ModeCutoff cutoff) {
    const SpinTriple spin = make_pseudospin(level, cutoff);
    return {spin.sz.mat.real().diagonal().array().square().matrix(),
            spin.sx.mat.real().array().square().matrix()};
}

inline Eigen::VectorXd schmidt_amplitudes(SqueezeParameter zeta, ModeCutoff cutoff) {
    Eigen::VectorXd c(cutoff.dim());
    const double inv_cosh = 1.0 / std::cosh(zeta.zeta);
    double kn = 1.0;
    for (int n = 0; n < cutoff.dim(); ++n) {
        c(n) = kn * inv_cosh;
        kn *= zeta.k;
    }
    return c;
}

inline std::string format_sig12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

inline std::string level_text(const std::optional<int>& level) {
    return level ? std::to_string(*level) : "inf";
}

inline std::string cutoff_text(const std::optional<int>& cutoff) {
    return cutoff ? std::to_string(*cutoff) : "inf";
}

inline const char* method_text(CorrelatorMethod m) {
    return m == CorrelatorMethod::closed_form ? "closed" : "matrix";
}

}  // namespace detail

/// Run the sweep; records come back sorted by (level, zeta, method) with
/// FULL ordered last and closed-form rows before matrix rows.
inline std::vector<SweepRecord> run_sweep(const SweepConfig& config) {
    detail::validate_sweep_config(config);
    const auto levels = detail::sorted_unique_levels(config.levels);

    const bool wants_matrix = config.method != SweepMethod::closed;
    const bool wants_closed = config.method != SweepMethod::matrix;
    std::optional<ModeCutoff> cutoff;
    if (wants_matrix)
        cutoff = ModeCutoff(config.cutoff ? *config.cutoff : auto_mode_cutoff(config.zeta_max));

    std::optional<FockOperator> sign_op;
    if (wants_matrix && config.family == ObservableFamily::parity)
        sign_op = sign_position_operator(*cutoff, QuadratureScheme::for_cutoff(*cutoff));

    const double step = (config.zeta_max - config.zeta_min) / (config.steps - 1);
    std::vector<SweepRecord> records;
    records.reserve(levels.size() * config.steps * (config.method == SweepMethod::both ? 2 : 1));

    for (const auto& level : levels) {
        std::optional<detail::LevelCorrelatorTable> table;
        if (wants_matrix && config.family == ObservableFamily::pseudospin)
            table = detail::make_level_table(level, *cutoff);
        const std::optional<int> level_field =
            level.is_full() ? std::nullopt : std::optional<int>(level.value());

        for (int j = 0; j < config.steps; ++j) {
            const SqueezeParameter zeta(config.zeta_min + j * step);
            auto emit = [&](CorrelatorPair c, CorrelatorMethod m) {
                const double bound = 1.0 + config.tolerance;
                if (!std::isfinite(c.i_corr) || !std::isfinite(c.f_corr) ||
                    std::abs(c.i_corr) > bound || std::abs(c.f_corr) > bound)
                    throw std::runtime_error(
                        "sweep: correlator out of range at zeta=" + detail::format_sig12(zeta.zeta) +
                        ", level=" + detail::level_text(level_field));
                const MaximalBell max = maximal_bell_value(c);
                const bool closed = m == CorrelatorMethod::closed_form;
                records.push_back({zeta.zeta, level_field, c.i_corr, c.f_corr,
                                   max.bell.value, max.bell.ratio_to_tsirelson, m,
                                   closed ? std::nullopt : std::optional<int>(cutoff->n_max),
                                   closed ? 0.0 : truncation_weight(zeta, *cutoff)});
            };

            if (wants_closed) {
                const CorrelatorPair c = config.family == ObservableFamily::pseudospin
                                             ? closed_form_correlators(zeta, level)
                                             : CorrelatorPair{1.0, parity_f_closed(zeta)};
                emit(c, CorrelatorMethod::closed_form);
            }
            if (wants_matrix) {
                CorrelatorPair c{};
                if (config.family == ObservableFamily::pseudospin) {
                    const Eigen::VectorXd amps = detail::schmidt_amplitudes(zeta, *cutoff);
                    c = {amps.dot(table->sz2_diag.cwiseProduct(amps)),
                         amps.dot(table->sx2 * amps)};
                } else {
                    c = {1.0 - truncation_weight(zeta, *cutoff),
                         parity_f_fock_route(zeta, *sign_op)};
                }
                emit(c, CorrelatorMethod::matrix);
            }
        }
    }
    return records;
}

inline const char* kSweepCsvHeader = "zeta,level,I,F,biqv,ratio,method,cutoff,truncation_weight";

/// RFC 4180 CSV (CRLF line endings), floating-point fields at 12 significant
/// digits. Identical records produce byte-identical text.
inline std::string format_csv(const std::vector<SweepRecord>& records) {
    std::string out = kSweepCsvHeader;
    out += "\r\n";
    for (const auto& r : records) {
        out += detail::format_sig12(r.zeta);
        out += ',';
        out += detail::level_text(r.level);
        out += ',';
        out += detail::format_sig12(r.i_corr);
        out += ',';
        out += detail::format_sig12(r.f_corr);
        out += ',';
        out += detail::format_sig12(r.biqv);
        out += ',';
        out += detail::format_sig12(r.ratio);
        out += ',';
        out += detail::method_text(r.method);
        out += ',';
        out += detail::cutoff_text(r.cutoff);
        out += ',';
        out += detail::format_sig12(r.truncation_weight);
        out += "\r\n";
    }
    return out;
}

/// JSON array mirroring the CSV columns; untruncated fields appear as "inf".
inline std::string format_json(const std::vector<SweepRecord>& records) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : records) {
        nlohmann::ordered_json row;
        row["zeta"] = r.zeta;
        if (r.level)
            row["level"] = *r.level;
        else
            row["level"] = "inf";
        row["I"] = r.i_corr;
        row["F"] = r.f_corr;
        row["biqv"] = r.biqv;
        row["ratio"] = r.ratio;
        row["method"] = detail::method_text(r.method);
        if (r.cutoff)
            row["cutoff"] = *r.cutoff;
        else
            row["cutoff"] = "inf";
        row["truncation_weight"] = r.truncation_weight;
        arr.push_back(std::move(row));
    }
    return arr.dump(2) + "\n";
}

/// Write via a sibling temp file and rename, so readers never observe a
/// partially written output.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw std::runtime_error("failed writing " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

enum class FigureKind { fig1, fig2 };

/// Dataset behind both violation figures: closed-form curves for levels
/// 0..3 and FULL over zeta in [0, 3]. fig1 plots the biqv column, fig2 the
/// ratio column; the rows are identical.
inline SweepConfig figure_sweep_config(FigureKind) {
    SweepConfig config;
    config.zeta_min = 0.0;
    config.zeta_max = 3.0;
    config.steps = 121;
    config.levels = {DegeneracyLevel::finite(0), DegeneracyLevel::finite(1),
                     DegeneracyLevel::finite(2), DegeneracyLevel::finite(3),
                     DegeneracyLevel::full()};
    config.family = ObservableFamily::pseudospin;
    config.method = SweepMethod::closed;
    return config;
}

}  // namespace cvspin
