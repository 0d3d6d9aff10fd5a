// geomgate: command-line front end for the gate simulator.
//
// Subcommands: gate, rb, sweep, kappa, noise, expand, clifford-verify.
// Exit codes: 0 success, 1 numeric/fit failure, 2 usage error.
// GEOMGATE_THREADS caps the worker pool (0 = all hardware threads); it is
// read inside the library's parallel_for, so nothing is parsed here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "geomgate/analysis.hpp"
#include "geomgate/clifford.hpp"
#include "geomgate/dynamical.hpp"
#include "geomgate/geometric.hpp"
#include "geomgate/io.hpp"
#include "geomgate/matrix.hpp"
#include "geomgate/noise.hpp"
#include "geomgate/rb.hpp"
#include "geomgate/schedule.hpp"
#include "geomgate/two_qubit.hpp"
#include "geomgate/version.hpp"

namespace gg = geomgate;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string join_args(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        s += argv[i];
    }
    return s;
}

template <typename Mat>
void print_matrix(const Mat& m) {
    for (int r = 0; r < m.rows(); ++r) {
        for (int c = 0; c < m.cols(); ++c) {
            std::printf("  (%+.6f%+.6fi)", m(r, c).real(), m(r, c).imag());
        }
        std::printf("\n");
    }
}

void print_schedule(const gg::Schedule& s) {
    std::printf("schedule: ref_rabi = %.6f, frame = %s, %zu segment(s)\n", s.ref_rabi,
                s.frame == gg::Frame::single_qubit ? "single-qubit" : "two-qubit-odd-subspace",
                s.segments.size());
    double total = 0.0;
    for (std::size_t i = 0; i < s.segments.size(); ++i) {
        const auto& seg = s.segments[i];
        std::printf("  seg %zu: rabi = %.6f  phase = %+.6f  duration = %.6f  (area %.6f)\n", i + 1,
                    seg.rabi, seg.phase, seg.duration, seg.rabi * seg.duration);
        total += seg.duration;
    }
    std::printf("  total duration = %.6f (units of t0 at rabi = 2*pi)\n", total);
}

std::vector<double> parse_double_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::string cur;
    for (char ch : text + ",") {
        if (ch == ',') {
            const std::string tok = gg::trim(cur);
            cur.clear();
            if (tok.empty()) continue;
            std::size_t pos = 0;
            double v = 0;
            try {
                v = std::stod(tok, &pos);
            } catch (const std::exception&) {
                pos = 0;
            }
            if (pos != tok.size())
                throw std::invalid_argument(std::string(what) + ": bad number '" + tok + "'");
            out.push_back(v);
        } else {
            cur += ch;
        }
    }
    if (out.empty()) throw std::invalid_argument(std::string(what) + ": empty list");
    return out;
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
    std::vector<int> out;
    for (double v : parse_double_list(text, what)) {
        const int n = static_cast<int>(std::llround(v));
        if (std::abs(v - n) > 1e-9)
            throw std::invalid_argument(std::string(what) + ": expected integer, got " +
                                        std::to_string(v));
        out.push_back(n);
    }
    return out;
}

gg::NoiseKind parse_noise_kind(const std::string& s) {
    if (s == "detuning") return gg::NoiseKind::detuning;
    if (s == "systematic") return gg::NoiseKind::systematic;
    throw std::invalid_argument("--noise must be 'detuning' or 'systematic', got '" + s + "'");
}

void write_manifest(const std::filesystem::path& path, const std::string& command,
                    const std::map<std::string, std::string>& cfg, std::uint64_t root_seed,
                    double wall_seconds) {
    ordered_json m;
    m["command"] = command;
    m["config_hash"] = gg::config_hash_hex(cfg);
    m["root_seed"] = root_seed;
    m["tool_version"] = gg::tool_version;
    m["wall_time_seconds"] = wall_seconds;
    gg::atomic_write_file(path, m.dump(2) + "\n");
}

// ---------------------------------------------------------------- gate ----

int cmd_gate_geo(double gamma, double theta, double phi, int path, double rabi) {
    const gg::Path p = path == 1 ? gg::Path::path1 : gg::Path::path2;
    const gg::GeometricParams params(gamma, theta, phi, p);
    const gg::U2 u = gg::geometric_unitary(params);
    const gg::Schedule s = gg::geometric_schedule(params, rabi);
    if (gg::gate_fidelity(u, gg::ideal_unitary_2(s)) < 1.0 - 1e-10)
        throw std::runtime_error("gate geo: schedule does not reproduce the closed form");
    std::printf("geometric gate: gamma = %.6f, theta = %.6f, phi = %.6f, path %d\n", gamma, theta,
                phi, path);
    print_matrix(u);
    print_schedule(s);
    return 0;
}

int cmd_gate_dyn(double axis_phase, double angle, double rabi) {
    const gg::RotationSpec spec(axis_phase, angle);
    const auto [s, u] = gg::dynamical_rotation(spec, rabi);
    std::printf("dynamical rotation: axis_phase = %.6f, angle = %.6f\n", axis_phase, angle);
    print_matrix(u);
    print_schedule(s);
    return 0;
}

int cmd_gate_iswap(int path, double j_rabi) {
    std::printf("iSWAP target (Eq. 10 block on {|01>,|10>}):\n");
    print_matrix(gg::iswap_matrix());

    const gg::TwoQubitGeometricParams geo(std::numbers::pi / 2, std::numbers::pi / 2, 0.0,
                                          path == 1 ? gg::Path::path1 : gg::Path::path2);
    const gg::U4 u_geo = gg::two_qubit_geometric_unitary(geo);
    std::printf("\ngeometric construction (path %d), fidelity vs target = %.6f\n", path,
                gg::gate_fidelity(gg::iswap_matrix(), u_geo));
    print_matrix(u_geo);
    print_schedule(gg::rwa_schedule(geo, j_rabi));

    const auto [s_dyn, u_dyn] = gg::iswap_dynamical(j_rabi);
    std::printf("\ndynamical construction, fidelity vs target = %.6f\n",
                gg::gate_fidelity(gg::iswap_matrix(), gg::ideal_unitary_4(s_dyn)));
    print_matrix(u_dyn);
    print_schedule(s_dyn);
    return 0;
}

// ------------------------------------------------------------------ rb ----

int cmd_rb(const std::string& config_path, const std::string& out_dir,
           const std::string& command) {
    if (!std::filesystem::exists(config_path))
        throw std::invalid_argument("rb: config file not found: " + config_path);
    const auto cfgmap = gg::load_config(config_path);

    static const std::vector<std::string> required = {
        "flavor",        "noise.kind",           "noise.sigma_delta", "noise.sigma_epsilon",
        "noise.amplitude_a", "noise.alpha",      "lengths",           "sequences_per_length",
        "realizations",  "seed"};
    static const std::set<std::string> optional = {"noise.channel", "noise.t0", "noise.omega_ir",
                                                   "noise.omega_uv", "rabi", "steps_per_segment"};
    std::vector<std::string> missing;
    for (const auto& k : required)
        if (!cfgmap.count(k)) missing.push_back(k);
    if (!missing.empty()) {
        std::fprintf(stderr, "rb: missing required config keys:");
        for (const auto& k : missing) std::fprintf(stderr, " %s", k.c_str());
        std::fprintf(stderr, "\n");
        return 2;
    }
    for (const auto& [k, v] : cfgmap) {
        (void)v;
        if (std::find(required.begin(), required.end(), k) == required.end() &&
            !optional.count(k))
            throw std::invalid_argument("rb: unknown config key '" + k + "'");
    }

    auto getd = [&](const std::string& k, double fallback) {
        auto it = cfgmap.find(k);
        if (it == cfgmap.end()) return fallback;
        std::size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (pos != it->second.size())
            throw std::invalid_argument("rb: bad number for '" + k + "': " + it->second);
        return v;
    };

    gg::RBConfig cfg;
    cfg.flavor = gg::parse_flavor(cfgmap.at("flavor"));
    cfg.lengths = parse_int_list(cfgmap.at("lengths"), "rb lengths");
    cfg.sequences_per_length = static_cast<int>(getd("sequences_per_length", 0));
    cfg.realizations_per_sequence = static_cast<int>(getd("realizations", 0));
    cfg.root_seed = static_cast<std::uint64_t>(std::stoull(cfgmap.at("seed")));
    cfg.rabi = getd("rabi", kTwoPi);
    cfg.steps_per_segment = static_cast<int>(getd("steps_per_segment", 32));

    const std::string kind = cfgmap.at("noise.kind");
    const double sd = getd("noise.sigma_delta", 0.0);
    const double se = getd("noise.sigma_epsilon", 0.0);
    const double amp = getd("noise.amplitude_a", 0.0);
    const double alpha = getd("noise.alpha", 0.0);
    if (kind == "static") {
        if (amp != 0.0 || alpha != 0.0)
            throw std::invalid_argument(
                "rb: noise.kind = static requires noise.amplitude_a = 0 and noise.alpha = 0");
        if (cfgmap.count("noise.channel") || cfgmap.count("noise.t0") ||
            cfgmap.count("noise.omega_ir") || cfgmap.count("noise.omega_uv"))
            throw std::invalid_argument("rb: noise.channel/t0/omega_* apply only to one_over_f");
        cfg.noise = gg::NoiseModel::make_static(sd, se);
    } else if (kind == "one_over_f") {
        if (sd != 0.0 || se != 0.0)
            throw std::invalid_argument(
                "rb: noise.kind = one_over_f requires noise.sigma_delta = 0 and "
                "noise.sigma_epsilon = 0 (use noise.channel to pick the channel)");
        const auto [w_ir_def, w_uv_def] = gg::rb_default_band(cfg);
        const double t0 = getd("noise.t0", 1.0);
        const double w_ir = getd("noise.omega_ir", w_ir_def);
        const double w_uv = getd("noise.omega_uv", w_uv_def);
        cfg.noise = gg::NoiseModel::make_one_over_f(amp, alpha, t0, w_ir, w_uv);
        const std::string chan =
            cfgmap.count("noise.channel") ? cfgmap.at("noise.channel") : "delta";
        if (chan == "delta")
            cfg.channel = gg::OneOverFChannel::delta;
        else if (chan == "epsilon")
            cfg.channel = gg::OneOverFChannel::epsilon;
        else if (chan == "both")
            cfg.channel = gg::OneOverFChannel::both;
        else
            throw std::invalid_argument("rb: noise.channel must be delta|epsilon|both");
    } else {
        throw std::invalid_argument("rb: noise.kind must be 'static' or 'one_over_f', got '" +
                                    kind + "'");
    }
    cfg.check();

    const auto t_start = std::chrono::steady_clock::now();
    const gg::RBResult res = gg::run_rb(cfg);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
                            .count();

    const std::filesystem::path out(out_dir);
    gg::atomic_write_file(out / "curve.csv", gg::rb_curve_csv(res.points));
    ordered_json fit;
    fit["flavor"] = gg::flavor_token(cfg.flavor);
    fit["noise_model"] = gg::describe_noise(cfg.noise, cfg.channel);
    fit["d"] = res.fitted_d;
    fit["residual"] = res.fit_residual;
    fit["seed"] = cfg.root_seed;
    gg::atomic_write_file(out / "fit.json", fit.dump(2) + "\n");
    write_manifest(out / "manifest.json", command, cfgmap, cfg.root_seed, wall);

    if (res.fitted_d < 0) {
        std::fprintf(stderr,
                     "rb: decay fit failed to converge; rms residual = %.6e over %zu lengths\n",
                     res.fit_residual, res.points.size());
        return 1;
    }
    std::printf("rb: %s, %s\n", gg::flavor_token(cfg.flavor).c_str(),
                gg::describe_noise(cfg.noise, cfg.channel).c_str());
    std::printf("  K = %d sequences/length, M = %d realizations, lengths to %d\n",
                cfg.sequences_per_length, cfg.realizations_per_sequence, cfg.lengths.back());
    std::printf("  d = %.6e   F_avg = %.6f   rms residual = %.3e\n", res.fitted_d,
                1.0 - res.fitted_d, res.fit_residual);
    std::printf("  wrote %s/{curve.csv, fit.json, manifest.json} in %.1f s\n", out_dir.c_str(),
                wall);
    return 0;
}

// --------------------------------------------------------------- sweep ----

int cmd_sweep(const std::string& noise_str, double max_amp, int points, double rabi,
              double j_rabi, const std::string& out_file) {
    if (points < 2) throw std::invalid_argument("sweep: --points must be >= 2");
    if (!(max_amp > 0) || max_amp > 0.1)
        throw std::invalid_argument("sweep: --max-amp must be in (0, 0.1]");
    const gg::NoiseKind kind = parse_noise_kind(noise_str);
    std::vector<double> amps(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        amps[static_cast<std::size_t>(i)] = -max_amp + 2 * max_amp * i / (points - 1);

    std::vector<std::vector<std::pair<double, double>>> curves;
    for (gg::Flavor f :
         {gg::Flavor::dynamical, gg::Flavor::geometric_path1, gg::Flavor::geometric_path2})
        curves.push_back(gg::cnot_fidelity_sweep(f, kind, amps, rabi, j_rabi));

    std::string csv = "amplitude,f_dynamical,f_geometric_path1,f_geometric_path2\n";
    for (std::size_t i = 0; i < amps.size(); ++i) {
        csv += gg::format_g17(amps[i]);
        for (const auto& c : curves) csv += ',' + gg::format_g17(c[i].second);
        csv += '\n';
    }
    gg::atomic_write_file(out_file, csv);

    std::printf("sweep cnot (%s noise), %d points over [%+.3f, %+.3f]\n", noise_str.c_str(),
                points, -max_amp, max_amp);
    const char* names[] = {"dynamical", "geometric-path1", "geometric-path2"};
    for (std::size_t f = 0; f < curves.size(); ++f) {
        double fmin = 1.0;
        for (const auto& [a, fid] : curves[f]) fmin = std::min(fmin, fid);
        std::printf("  %-16s min fidelity = %.6f\n", names[f], fmin);
    }
    std::printf("  wrote %s\n", out_file.c_str());
    return 0;
}

// --------------------------------------------------------------- kappa ----

int cmd_kappa(const std::string& noise_str, const std::string& alphas_str,
              const std::string& amplitudes_str, double sigma_target,
              const std::string& lengths_str, int sequences, int realizations,
              std::uint64_t seed, const std::string& out_dir, const std::string& command) {
    const gg::NoiseKind kind = parse_noise_kind(noise_str);
    const std::vector<double> alphas = parse_double_list(alphas_str, "kappa alphas");

    gg::RBConfig base;
    base.lengths = parse_int_list(lengths_str, "kappa lengths");
    base.sequences_per_length = sequences;
    base.realizations_per_sequence = realizations;
    base.root_seed = seed;
    base.check();
    const auto [w_ir, w_uv] = gg::rb_default_band(base);

    std::vector<gg::KappaCell> cells;
    if (amplitudes_str.empty()) {
        // One amplitude per alpha, calibrated so the band-integrated rms is
        // sigma_target for every exponent (comparable total noise power).
        for (double a : alphas) {
            const double amp = gg::calibrated_amplitude(a, sigma_target, 1.0, w_ir, w_uv);
            const auto part = gg::kappa_study(kind, {a}, {amp}, base);
            cells.insert(cells.end(), part.begin(), part.end());
        }
    } else {
        const std::vector<double> amps = parse_double_list(amplitudes_str, "kappa amplitudes");
        cells = gg::kappa_study(kind, alphas, amps, base);
    }

    std::string wide = gg::kappa_csv_header();
    std::string ratios =
        "alpha,amplitude,kappa_as_defined_path1,dyn_over_geo_path1,"
        "kappa_as_defined_path2,dyn_over_geo_path2\n";
    bool any_fit_failure = false;
    std::printf("kappa study (%s noise), %zu cell(s); K = %d, M = %d, lengths to %d\n",
                noise_str.c_str(), cells.size(), base.sequences_per_length,
                base.realizations_per_sequence, base.lengths.back());
    for (const auto& c : cells) {
        wide += gg::format_g17(c.alpha) + ',' + gg::format_g17(c.amplitude) + ',' +
                gg::format_g17(c.d_dyn) + ',' + gg::format_g17(c.d_g1) + ',' +
                gg::format_g17(c.d_g2) + '\n';
        if (c.d_dyn < 0 || c.d_g1 < 0 || c.d_g2 < 0) any_fit_failure = true;
        if (c.d_dyn > 0 && c.d_g1 > 0 && c.d_g2 > 0) {
            const auto r1 = c.ratio_path1();
            const auto r2 = c.ratio_path2();
            ratios += gg::format_g17(c.alpha) + ',' + gg::format_g17(c.amplitude) + ',' +
                      gg::format_g17(r1.kappa_as_defined) + ',' +
                      gg::format_g17(r1.dyn_over_geo) + ',' +
                      gg::format_g17(r2.kappa_as_defined) + ',' +
                      gg::format_g17(r2.dyn_over_geo) + '\n';
            std::printf(
                "  alpha = %.3f  A = %.3e  d_dyn = %.3e  d_g1 = %.3e  d_g2 = %.3e  "
                "dyn/geo: path1 = %.3f, path2 = %.3f\n",
                c.alpha, c.amplitude, c.d_dyn, c.d_g1, c.d_g2, r1.dyn_over_geo, r2.dyn_over_geo);
        } else {
            std::printf("  alpha = %.3f  A = %.3e  d_dyn = %.3e  d_g1 = %.3e  d_g2 = %.3e  "
                        "(ratios skipped)\n",
                        c.alpha, c.amplitude, c.d_dyn, c.d_g1, c.d_g2);
        }
    }

    const std::filesystem::path out(out_dir);
    gg::atomic_write_file(out / "kappa.csv", wide);
    gg::atomic_write_file(out / "ratios.csv", ratios);
    std::map<std::string, std::string> cfgmap = {
        {"noise", noise_str},
        {"alphas", alphas_str},
        {"amplitudes", amplitudes_str.empty() ? "calibrated" : amplitudes_str},
        {"sigma_target", gg::format_g17(sigma_target)},
        {"lengths", lengths_str},
        {"sequences_per_length", std::to_string(sequences)},
        {"realizations", std::to_string(realizations)},
        {"seed", std::to_string(seed)}};
    write_manifest(out / "manifest.json", command, cfgmap, seed, 0.0);
    std::printf("  wrote %s/{kappa.csv, ratios.csv, manifest.json}\n", out_dir.c_str());
    if (any_fit_failure) {
        std::fprintf(stderr, "kappa: at least one cell's decay fit failed (d = -1 sentinel)\n");
        return 1;
    }
    return 0;
}

// --------------------------------------------------------------- noise ----

int cmd_noise(double alpha, int n, double amplitude_a, double dt, double t0,
              std::uint64_t seed, double omega_ir, double omega_uv,
              const std::string& out_file) {
    if (n < 2) throw std::invalid_argument("noise: --n must be >= 2");
    if (!(dt > 0)) throw std::invalid_argument("noise: --dt must be > 0");
    const double w_ir = omega_ir > 0 ? omega_ir : kTwoPi / (n * dt);
    const double w_uv = omega_uv > 0 ? omega_uv : std::numbers::pi / dt;
    const gg::NoiseModel model = gg::NoiseModel::make_one_over_f(amplitude_a, alpha, t0, w_ir,
                                                                 w_uv);
    const std::vector<double> delta =
        gg::generate_one_over_f(model, static_cast<std::size_t>(n), dt,
                                gg::derive_seed(seed, 0xd));
    const std::vector<double> epsilon =
        gg::generate_one_over_f(model, static_cast<std::size_t>(n), dt,
                                gg::derive_seed(seed, 0xe));
    gg::atomic_write_file(out_file, gg::noise_trace_csv(delta, epsilon, dt));

    double var = 0.0, mean = 0.0;
    for (double v : delta) mean += v;
    mean /= n;
    for (double v : delta) var += (v - mean) * (v - mean);
    var /= n;
    std::printf("noise trace: alpha = %.3f, A t0 = %.3e, n = %d, dt = %.6g\n", alpha, amplitude_a,
                n, dt);
    std::printf("  band [%.6g, %.6g], delta-channel rms = %.6e\n", w_ir, w_uv, std::sqrt(var));
    if (n >= 4096) {
        const auto psd = gg::psd_estimate(delta, dt);
        std::printf("  periodogram log-log slope = %.3f (expect %.3f)\n", gg::psd_slope(psd),
                    -alpha);
    }
    std::printf("  wrote %s\n", out_file.c_str());
    return 0;
}

// -------------------------------------------------------------- expand ----

int cmd_expand(const std::string& gammas_str) {
    std::vector<double> gammas;
    if (gammas_str.empty()) {
        const double pi = std::numbers::pi;
        gammas = {-pi + 0.01, -3 * pi / 4, -pi / 2, -pi / 4, pi / 4, pi / 2, 3 * pi / 4,
                  pi - 0.01};
    } else {
        gammas = parse_double_list(gammas_str, "expand gammas");
    }

    struct FlavorFormula {
        gg::Flavor flavor;
        const char* label;
        double (*c_eps)(double);
        double (*c_del)(double);
    };
    const FlavorFormula rows[] = {
        {gg::Flavor::dynamical, "dynamical",
         [](double g) { return -g * g / 8; },
         [](double g) { return std::cos(g) - 1; }},
        {gg::Flavor::geometric_path1, "geometric-path1",
         [](double g) { return -std::numbers::pi * std::numbers::pi / 2 *
                               std::pow(std::sin(g / 4), 4); },
         [](double g) { return -8 * std::pow(std::cos(g / 4), 4); }},
        {gg::Flavor::geometric_path2, "geometric-path2",
         [](double g) { return -std::numbers::pi * std::numbers::pi / 2 *
                               std::pow(std::cos(g / 4), 4); },
         [](double g) { return -8 * std::pow(std::sin(g / 4), 4); }},
    };

    std::printf("second-order fidelity expansion F = 1 + c_eps*eps^2 + c_del*delta^2\n");
    std::printf("%-16s %9s %12s %12s %9s %12s %12s %9s\n", "flavor", "gamma", "c_eps(num)",
                "c_eps(form)", "rel.err", "c_del(num)", "c_del(form)", "rel.err");
    double worst_gamma_form = 0.0;  // path-1 c_del vs -8cos^4(gamma/4)
    double best_printed_form = 1e9;  // path-1 c_del vs the printed constant -8
    for (const auto& row : rows) {
        for (double g : gammas) {
            const gg::ExpansionReport r = gg::extract_coefficients(row.flavor, g);
            const double fe = row.c_eps(g), fd = row.c_del(g);
            const double ee = std::abs(r.c_epsilon - fe) / std::max(std::abs(fe), 1e-12);
            const double ed = std::abs(r.c_delta - fd) / std::max(std::abs(fd), 1e-12);
            std::printf("%-16s %9.5f %12.6f %12.6f %9.2e %12.6f %12.6f %9.2e\n", row.label, g,
                        r.c_epsilon, fe, ee, r.c_delta, fd, ed);
            if (row.flavor == gg::Flavor::geometric_path1) {
                worst_gamma_form = std::max(worst_gamma_form, ed);
                best_printed_form =
                    std::min(best_printed_form, std::abs(r.c_delta - (-8.0)) / 8.0);
            }
        }
    }
    std::printf(
        "\nEq. (15) typo check: the printed path-1 delta coefficient reads 8cos^4(delta/4),\n"
        "which in the delta -> 0 limit would pin c_del at -8 for every gamma. Extracted\n"
        "values match -8cos^4(gamma/4) within %.2e relative, while the printed reading is\n"
        "off by at least %.2e; the argument is gamma, as Eq. (16) consistency requires.\n",
        worst_gamma_form, best_printed_form);
    return 0;
}

// ------------------------------------------------------ clifford-verify ----

int cmd_clifford_verify() {
    for (gg::Path path : {gg::Path::path1, gg::Path::path2}) {
        const auto table = gg::build_clifford_table(path);  // throws if any row fails
        double min_fid_dyn = 1.0, min_fid_geo = 1.0;
        double dyn_duration = 0.0, geo_duration = 0.0;
        int total_rots = 0;
        for (const auto& c : table) {
            gg::U2 dyn = gg::U2::Identity();
            gg::U2 geo = gg::U2::Identity();
            for (const auto& spec : c.dynamical_seq) {
                dyn = dyn * gg::rotation_unitary(spec);
                dyn_duration += spec.angle / kTwoPi;
                geo_duration += 1.0;
            }
            for (const auto& g : c.geometric_seq) geo = geo * gg::geometric_unitary(g);
            min_fid_dyn = std::min(min_fid_dyn, gg::gate_fidelity(c.target, dyn));
            min_fid_geo = std::min(min_fid_geo, gg::gate_fidelity(c.target, geo));
            total_rots += static_cast<int>(c.dynamical_seq.size());
        }
        std::printf("clifford table (geometric %s): 24 elements, %d rotations (mean %.3f)\n",
                    path == gg::Path::path1 ? "path 1" : "path 2", total_rots,
                    total_rots / 24.0);
        std::printf("  min fidelity: dynamical %.15f, geometric %.15f\n", min_fid_dyn,
                    min_fid_geo);
        std::printf("  mean Clifford duration: dynamical %.4f t0, geometric %.4f t0\n",
                    dyn_duration / 24.0, geo_duration / 24.0);
        if (min_fid_dyn < 1.0 - 1e-10 || min_fid_geo < 1.0 - 1e-10)
            throw std::runtime_error("clifford-verify: fidelity below 1 - 1e-10");
    }
    std::printf("ok\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pulse-level simulator for geometric vs dynamical spin-qubit gates"};
    app.require_subcommand(1);
    const std::string command = join_args(argc, argv);

    // gate
    auto* gate = app.add_subcommand("gate", "print a gate unitary and its pulse schedule");
    gate->require_subcommand(1);
    double g_gamma = 0, g_theta = 0, g_phi = 0, g_rabi = kTwoPi;
    int g_path = 1;
    auto* gate_geo = gate->add_subcommand("geo", "geometric gate U(gamma, theta, phi)");
    gate_geo->add_option("--gamma", g_gamma, "rotation phase gamma")->required();
    gate_geo->add_option("--theta", g_theta, "axis polar angle theta")->required();
    gate_geo->add_option("--phi", g_phi, "axis azimuth phi");
    gate_geo->add_option("--path", g_path, "evolution path (1 or 2)")
        ->check(CLI::IsMember({1, 2}));
    gate_geo->add_option("--rabi", g_rabi, "Rabi frequency (default 2*pi)");
    double d_axis = 0, d_angle = 0, d_rabi = kTwoPi;
    auto* gate_dyn = gate->add_subcommand("dyn", "dynamical rotation about an equatorial axis");
    gate_dyn->add_option("--axis-phase", d_axis, "axis azimuth")->required();
    gate_dyn->add_option("--angle", d_angle, "rotation angle")->required();
    gate_dyn->add_option("--rabi", d_rabi, "Rabi frequency (default 2*pi)");
    int i_path = 1;
    double i_jrabi = kTwoPi;
    auto* gate_iswap = gate->add_subcommand("iswap", "two-qubit iSWAP constructions");
    gate_iswap->add_option("--path", i_path, "geometric path (1 or 2)")
        ->check(CLI::IsMember({1, 2}));
    gate_iswap->add_option("--j-rabi", i_jrabi, "exchange Rabi frequency (default 2*pi)");

    // rb
    std::string rb_config, rb_out = "rb_out";
    auto* rb = app.add_subcommand("rb", "randomized benchmarking from a key=value config file");
    rb->add_option("config", rb_config, "config file path")->required();
    rb->add_option("--out", rb_out, "output directory (default rb_out)");

    // sweep
    std::string sw_noise, sw_out = "sweep.csv";
    double sw_max = 0.05, sw_rabi = kTwoPi, sw_jrabi = kTwoPi;
    int sw_points = 41;
    auto* sweep = app.add_subcommand("sweep", "CNOT fidelity vs static noise amplitude");
    auto* sweep_cnot = sweep->add_subcommand("cnot", "three-flavor CNOT sweep");
    sweep_cnot->add_option("--noise", sw_noise, "detuning | systematic")->required();
    sweep_cnot->add_option("--max-amp", sw_max, "grid half-width (default 0.05)");
    sweep_cnot->add_option("--points", sw_points, "grid points (default 41)");
    sweep_cnot->add_option("--rabi", sw_rabi, "single-qubit Rabi frequency");
    sweep_cnot->add_option("--j-rabi", sw_jrabi, "exchange Rabi frequency");
    sweep_cnot->add_option("--out", sw_out, "output CSV path (default sweep.csv)");

    // kappa
    std::string ka_noise, ka_alphas = "0.5,0.8,1.0,1.2,1.4,1.7,2.0,2.5,3.0", ka_amps,
                ka_lengths = "1,2,4,8,16,32,64,128,256,512,1024", ka_out = "kappa_out";
    double ka_sigma = 0.02;
    int ka_seq = 20, ka_real = 50;
    std::uint64_t ka_seed = 1;
    auto* kappa = app.add_subcommand("kappa", "RB error-ratio study over 1/f exponents");
    kappa->add_option("--noise", ka_noise, "detuning | systematic")->required();
    kappa->add_option("--alphas", ka_alphas, "comma-separated PSD exponents in [0, 3]");
    kappa->add_option("--amplitudes", ka_amps,
                      "comma-separated A t0 values (default: per-alpha calibrated)");
    kappa->add_option("--sigma-target", ka_sigma,
                      "band rms used for per-alpha calibration (default 0.02)");
    kappa->add_option("--lengths", ka_lengths, "RB sequence lengths");
    kappa->add_option("--sequences", ka_seq, "sequences per length K (default 20)");
    kappa->add_option("--realizations", ka_real, "noise realizations per sequence M (default 50)");
    kappa->add_option("--seed", ka_seed, "root seed");
    kappa->add_option("--out", ka_out, "output directory (default kappa_out)");

    // noise
    double n_alpha = 0, n_amp = 1e-7, n_dt = 1.0 / 128.0, n_t0 = 1.0, n_wir = 0, n_wuv = 0;
    int n_n = 0;
    std::uint64_t n_seed = 1;
    std::string n_out = "trace.csv";
    auto* noise = app.add_subcommand("noise", "emit a synthesized 1/f noise trace");
    noise->add_option("--alpha", n_alpha, "PSD exponent in [0, 3]")->required();
    noise->add_option("--n", n_n, "number of samples")->required();
    noise->add_option("--amplitude-a", n_amp, "A t0 (default 1e-7)");
    noise->add_option("--dt", n_dt, "sample spacing in t0 (default 1/128)");
    noise->add_option("--t0", n_t0, "reference time scale (default 1)");
    noise->add_option("--omega-ir", n_wir, "IR cutoff (default 2*pi/(n*dt))");
    noise->add_option("--omega-uv", n_wuv, "UV cutoff (default pi/dt)");
    noise->add_option("--seed", n_seed, "root seed");
    noise->add_option("--out", n_out, "output CSV path (default trace.csv)");

    // expand
    std::string ex_gammas;
    auto* expand = app.add_subcommand("expand", "extract Eq. (15) expansion coefficients");
    expand->add_option("--gammas", ex_gammas, "comma-separated rotation angles (default grid)");

    // clifford-verify
    auto* cliff = app.add_subcommand("clifford-verify", "check both Clifford compilation tables");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 2;
    }

    try {
        if (gate_geo->parsed()) return cmd_gate_geo(g_gamma, g_theta, g_phi, g_path, g_rabi);
        if (gate_dyn->parsed()) return cmd_gate_dyn(d_axis, d_angle, d_rabi);
        if (gate_iswap->parsed()) return cmd_gate_iswap(i_path, i_jrabi);
        if (rb->parsed()) return cmd_rb(rb_config, rb_out, command);
        if (sweep_cnot->parsed())
            return cmd_sweep(sw_noise, sw_max, sw_points, sw_rabi, sw_jrabi, sw_out);
        if (sweep->parsed()) {
            std::fprintf(stderr, "sweep: missing subcommand (try 'sweep cnot')\n");
            return 2;
        }
        if (kappa->parsed())
            return cmd_kappa(ka_noise, ka_alphas, ka_amps, ka_sigma, ka_lengths, ka_seq, ka_real,
                             ka_seed, ka_out, command);
        if (noise->parsed())
            return cmd_noise(n_alpha, n_n, n_amp, n_dt, n_t0, n_seed, n_wir, n_wuv, n_out);
        if (expand->parsed()) return cmd_expand(ex_gammas);
        if (cliff->parsed()) return cmd_clifford_verify();
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    std::fprintf(stderr, "no subcommand\n");
    return 2;
}
