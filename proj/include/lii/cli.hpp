// Command implementations behind the `lii` executable.
//
// Each command writes its report to `out`, diagnostics to `err`, and returns
// the process exit code: 0 pass, 1 numerical breach, 2 usage or data error.

#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "lii/dynamics.hpp"
#include "lii/lii.hpp"
#include "lii/measures.hpp"
#include "lii/state_io.hpp"

namespace lii::cli {

enum class ExitCode : int { ok = 0, breach = 1, usage = 2 };

enum class Subcommand { verify, esd, measure };

struct RunConfig {
    Subcommand subcommand = Subcommand::verify;
    std::uint64_t seed = 42;
    std::size_t trials = 50;
    Dims dims{2, 2, 2};
    double alpha_sq = 1.0 / 3.0;
    std::size_t steps = 101;
    std::optional<double> tolerance;  // defaults: 2e-3 verify, 5e-3 esd
    OptimizerConfig optimizer;
    std::string output_path;  // empty: stdout
    std::string input_path;   // state file; verify uses it instead of random sampling
    std::size_t measured = 1;

    double tolerance_or_default() const {
        if (tolerance) return *tolerance;
        return subcommand == Subcommand::esd ? 5e-3 : 2e-3;
    }
};

/// Locale-independent, 12 significant digits.
inline std::string format_csv_real(double v) {
    if (v == 0.0) v = 0.0;  // no "-0"
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

namespace detail {

inline AnyState load_state(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open state file '" + path + "'");
    return read_state(in);
}

// Brings a file state into tripartite pure form: pure states pass through,
// bipartite density matrices are purified.
inline PureState as_tripartite(const AnyState& s) {
    if (const auto* psi = std::get_if<PureState>(&s)) {
        if (psi->parties() != 3) throw std::invalid_argument("verify: pure state must have three subsystems");
        return *psi;
    }
    const auto& rho = std::get<DensityMatrix>(s);
    if (rho.parties() != 2) throw std::invalid_argument("verify: density matrix must be bipartite to purify");
    return purify(rho);
}

inline int fail(std::ostream& err, ExitCode code, const std::string& msg) {
    err << "error: " << msg << '\n';
    return static_cast<int>(code);
}

}  // namespace detail

/// Identity residuals on Haar-random tripartite states (or a fixture state).
/// CSV columns: trial,identity,lhs,rhs,residual,route.
inline int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const double tol = cfg.tolerance_or_default();
    if (!(tol > 0.0)) return detail::fail(err, ExitCode::usage, "tolerance must be positive");
    try {
        cfg.optimizer.validate();
        std::vector<PureState> states;
        if (!cfg.input_path.empty()) {
            states.push_back(detail::as_tripartite(detail::load_state(cfg.input_path)));
        } else {
            if (cfg.trials == 0) return detail::fail(err, ExitCode::usage, "no trials requested");
            if (cfg.dims.size() != 3) return detail::fail(err, ExitCode::usage, "dims must describe three subsystems");
            std::mt19937_64 seeder(cfg.seed);
            for (std::size_t t = 0; t < cfg.trials; ++t) states.push_back(haar_random_pure(cfg.dims, seeder()));
        }

        LiiOptions opts;
        opts.optimizer = cfg.optimizer;
        opts.tolerance = tol;

        out << "trial,identity,lhs,rhs,residual,route\n";
        std::optional<std::pair<std::size_t, IdentityCheck>> worst;
        for (std::size_t t = 0; t < states.size(); ++t) {
            const IdentityResiduals res = identity_residuals(states[t], {}, opts);
            for (const auto& c : res.checks) {
                out << t << ',' << c.name << ',' << format_csv_real(c.lhs) << ',' << format_csv_real(c.rhs) << ','
                    << format_csv_real(c.residual) << ',' << c.route << '\n';
                if (!worst || c.residual > worst->second.residual) worst = {t, c};
            }
        }
        if (worst && worst->second.residual > tol) {
            err << "residual breach: trial " << worst->first << ", identity " << worst->second.name
                << ", residual " << format_csv_real(worst->second.residual) << " > tolerance "
                << format_csv_real(tol) << '\n';
            return static_cast<int>(ExitCode::breach);
        }
        return static_cast<int>(ExitCode::ok);
    } catch (const std::exception& e) {
        return detail::fail(err, ExitCode::usage, e.what());
    }
}

/// Amplitude-damping sweep. CSV columns:
/// p,eof_ab,avg_lii_ab,balance_sum,concurrence_ab,eab2_residual.
inline int cmd_esd(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const double tol = cfg.tolerance_or_default();
    if (!(tol > 0.0)) return detail::fail(err, ExitCode::usage, "tolerance must be positive");
    if (!(cfg.alpha_sq > 0.0 && cfg.alpha_sq < 1.0)) {
        return detail::fail(err, ExitCode::usage, "alpha-sq must lie strictly between 0 and 1");
    }
    if (cfg.steps < 2) return detail::fail(err, ExitCode::usage, "steps must be at least 2");
    try {
        cfg.optimizer.validate();
        const auto records =
            esd_sweep(InitialAmplitudes::from_alpha_sq(cfg.alpha_sq), uniform_grid(cfg.steps), cfg.optimizer);
        out << "p,eof_ab,avg_lii_ab,balance_sum,concurrence_ab,eab2_residual\n";
        const EsdRecord* worst = nullptr;
        for (const auto& r : records) {
            out << format_csv_real(r.p) << ',' << format_csv_real(r.eof_ab) << ',' << format_csv_real(r.avg_lii_ab)
                << ',' << format_csv_real(r.balance_sum) << ',' << format_csv_real(r.concurrence_ab) << ','
                << format_csv_real(r.eab2_residual) << '\n';
            if (!worst || r.eab2_residual > worst->eab2_residual) worst = &r;
        }
        if (worst && worst->eab2_residual > tol) {
            err << "residual breach: p = " << format_csv_real(worst->p) << ", eab2 residual "
                << format_csv_real(worst->eab2_residual) << " > tolerance " << format_csv_real(tol) << '\n';
            return static_cast<int>(ExitCode::breach);
        }
        return static_cast<int>(ExitCode::ok);
    } catch (const std::exception& e) {
        return detail::fail(err, ExitCode::usage, e.what());
    }
}

/// Correlation report of a state file as key=value lines.
inline int cmd_measure(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.input_path.empty()) return detail::fail(err, ExitCode::usage, "measure needs --state");
    try {
        cfg.optimizer.validate();
        const AnyState s = detail::load_state(cfg.input_path);
        const DensityMatrix rho = std::holds_alternative<DensityMatrix>(s) ? std::get<DensityMatrix>(s)
                                                                            : std::get<PureState>(s).density();
        const CorrelationReport r = correlation_report(rho, cfg.measured, cfg.optimizer);
        auto kv = [&](const char* key, double v) { out << key << '=' << format_csv_real(v) << '\n'; };
        kv("s_a", r.s_a);
        kv("s_b", r.s_b);
        kv("s_ab", r.s_ab);
        kv("mutual_info", r.mutual_info);
        kv("accessible", r.accessible);
        kv("discord", r.discord);
        kv("cond_entropy", r.cond_entropy);
        kv("cond_entropy_measured", r.cond_entropy_measured);
        if (r.eof) kv("eof", *r.eof);
        kv("theta_opt", r.basis_opt.theta);
        kv("phi_opt", r.basis_opt.phi);
        return static_cast<int>(ExitCode::ok);
    } catch (const std::exception& e) {
        return detail::fail(err, ExitCode::usage, e.what());
    }
}

inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    switch (cfg.subcommand) {
        case Subcommand::verify: return cmd_verify(cfg, out, err);
        case Subcommand::esd: return cmd_esd(cfg, out, err);
        case Subcommand::measure: return cmd_measure(cfg, out, err);
    }
    return static_cast<int>(ExitCode::usage);
}

}  // namespace lii::cli
