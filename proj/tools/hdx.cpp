// hdx: anomalous-diffusion channel calculus CLI.
// Subcommands cover densities, first-passage statistics, symbol-error bounds,
// Monte Carlo simulation, and the figure/table data exports.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "hdx/figures.hpp"
#include "hdx/link.hpp"
#include "hdx/montecarlo.hpp"

namespace {

constexpr const char* version_string = "hdx 1.0.0";

struct global_opts {
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    double tolerance = 1e-10;
};

struct spec_opts {
    std::string preset_name;
    double alpha = 1.5, beta = 0.5;
    double alpha1 = 2.0, alpha2 = 1.0;
    double K = 1e-10;

    void attach(CLI::App* cmd) {
        cmd->add_option("--preset", preset_name,
                        "preset name (st-fd, s-fd, t-fd, ek-fd, gbm, fbm, bm); "
                        "omit to use the (alpha1, alpha2) standard diffusion");
        cmd->add_option("--alpha", alpha, "preset alpha parameter");
        cmd->add_option("--beta", beta, "preset beta parameter");
        cmd->add_option("--alpha1", alpha1, "standard-diffusion alpha1");
        cmd->add_option("--alpha2", alpha2, "standard-diffusion alpha2");
        cmd->add_option("--K", K, "diffusion coefficient [m^2/s]");
    }
    hdx::diffusion_spec build() const {
        if (preset_name.empty())
            return hdx::make_shd_pair(alpha1, alpha2, K);
        return hdx::preset(preset_name, {{"alpha", alpha}, {"beta", beta}});
    }
};

std::string path_join(const std::string& dir, const std::string& name) {
    return dir.empty() ? name : (dir.back() == '/' ? dir + name : dir + "/" + name);
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open output file " + path);
    return f;
}

void write_manifest(const global_opts& g, const std::string& command,
                    const std::vector<std::string>& argv_copy,
                    const std::vector<std::string>& outputs, double wall_s) {
    nlohmann::json j;
    j["command"] = command;
    j["argv"] = argv_copy;
    j["seed"] = g.seed ? nlohmann::json(*g.seed) : nlohmann::json(nullptr);
    j["version"] = version_string;
    j["outputs"] = outputs;
    j["wall_clock_s"] = wall_s;
    auto f = open_out(path_join(g.out_dir, "manifest.json"));
    f << j.dump(2) << "\n";
}

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = lo * std::pow(hi / lo, double(i) / (n - 1));
    return g;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"H-diffusion molecular communication toolkit"};
    app.set_version_flag("--version", version_string);
    app.require_subcommand(1);

    global_opts g;
    app.add_option("--out", g.out_dir, "output directory")->capture_default_str();
    std::uint64_t seed_raw = 0;
    auto* seed_opt = app.add_option("--seed", seed_raw, "RNG seed (Monte Carlo commands)");
    app.add_option("--tolerance", g.tolerance, "evaluation relative tolerance")
        ->capture_default_str();

    // ---- pdf / cdf / survival ------------------------------------------------
    struct curve_opts {
        spec_opts spec;
        std::string kind = "fpt";
        double a = 1e-5, t = 1.0, lo = 1e-3, hi = 1e3;
        int points = 200;
    } curve;
    for (const char* name : {"pdf", "cdf", "survival"}) {
        auto* c = app.add_subcommand(name, std::string(name) + " of the arrival-time or position law");
        curve.spec.attach(c);
        c->add_option("--kind", curve.kind, "fpt | position");
        c->add_option("--a", curve.a, "absorber distance [m]");
        c->add_option("--t", curve.t, "observation time for --kind position [s]");
        c->add_option("--min", curve.lo, "grid start");
        c->add_option("--max", curve.hi, "grid end");
        c->add_option("--points", curve.points, "grid size");
    }

    // ---- noise-power ----------------------------------------------------------
    struct np_opts {
        double a = 1e-5, K = 1e-10;
        double a1_lo = 0.2, a1_hi = 2.0, a2_lo = 0.05, a2_hi = 1.0;
        int a1_steps = 37, a2_steps = 20;
    } np;
    {
        auto* c = app.add_subcommand("noise-power",
                                     "grid of arrival-time noise power over (alpha1, alpha2)");
        c->add_option("--a", np.a, "absorber distance [m]");
        c->add_option("--K", np.K, "diffusion coefficient [m^2/s]");
        c->add_option("--alpha1-min", np.a1_lo);
        c->add_option("--alpha1-max", np.a1_hi);
        c->add_option("--alpha1-steps", np.a1_steps);
        c->add_option("--alpha2-min", np.a2_lo);
        c->add_option("--alpha2-max", np.a2_hi);
        c->add_option("--alpha2-steps", np.a2_steps);
    }

    // ---- sep / highsnr ---------------------------------------------------------
    struct sep_opts {
        spec_opts spec;
        int M = 2, N = 1;
        double a = 1e-5;
        double db_lo = 0.0, db_hi = 120.0;
        int points = 61;
    } sep;
    {
        auto* c = app.add_subcommand("sep", "symbol error bound against SNR");
        sep.spec.attach(c);
        c->add_option("--M", sep.M, "modulation order");
        c->add_option("--N", sep.N, "molecules per symbol");
        c->add_option("--a", sep.a, "absorber distance [m]");
        c->add_option("--snr-min", sep.db_lo, "SNR sweep start [dB]");
        c->add_option("--snr-max", sep.db_hi, "SNR sweep end [dB]");
        c->add_option("--points", sep.points, "sweep size");
    }
    struct hs_opts {
        double alpha1 = 2.0, alpha2 = 1.0, K = 1e-10;
        int M = 2, N = 1;
    } hs;
    {
        auto* c = app.add_subcommand("highsnr", "high-SNR slope and power offset");
        c->add_option("--alpha1", hs.alpha1);
        c->add_option("--alpha2", hs.alpha2);
        c->add_option("--K", hs.K);
        c->add_option("--M", hs.M);
        c->add_option("--N", hs.N);
    }

    // ---- simulate-fpt / simulate-sep -------------------------------------------
    struct simfpt_opts {
        spec_opts spec;
        double a = 1e-5;
        long trials = 10000;
        double jump_fraction = 1.0 / 45.0;
        long max_steps = 8000000;
        std::string method = "ctrw";
    } simfpt;
    {
        auto* c = app.add_subcommand("simulate-fpt", "Monte Carlo first-passage samples");
        simfpt.spec.attach(c);
        c->add_option("--a", simfpt.a, "absorber distance [m]");
        c->add_option("--trials", simfpt.trials);
        c->add_option("--jump-fraction", simfpt.jump_fraction, "CTRW jump scale / distance");
        c->add_option("--max-steps", simfpt.max_steps, "CTRW censoring cap");
        c->add_option("--method", simfpt.method, "ctrw | exact");
    }
    struct simsep_opts {
        spec_opts spec;
        int M = 2, N = 1;
        double a = 1e-5;
        long trials = 100000;
        double db_lo = 0.0, db_hi = 40.0;
        int points = 5;
    } simsep;
    {
        auto* c = app.add_subcommand("simulate-sep", "empirical symbol error rate");
        simsep.spec.attach(c);
        c->add_option("--M", simsep.M);
        c->add_option("--N", simsep.N);
        c->add_option("--a", simsep.a, "absorber distance [m]");
        c->add_option("--trials", simsep.trials, "trials per SNR point");
        c->add_option("--snr-min", simsep.db_lo);
        c->add_option("--snr-max", simsep.db_hi);
        c->add_option("--points", simsep.points);
    }

    // ---- figure / table ----------------------------------------------------------
    struct fig_opts {
        std::string id;
        double a = 1e-5, K = 1e-10;
    } fig;
    {
        auto* c = app.add_subcommand("figure", "emit the data behind a published figure");
        c->add_option("id", fig.id, "figure id")->required();
        c->add_option("--a", fig.a);
        c->add_option("--K", fig.K);
    }
    struct table_opts {
        std::string id;
        double alpha = 1.5, beta = 0.5, a = 1e-5;
    } table;
    {
        auto* c = app.add_subcommand("table", "export a model catalog table");
        c->add_option("id", table.id, "table id")->required();
        c->add_option("--alpha", table.alpha);
        c->add_option("--beta", table.beta);
        c->add_option("--a", table.a);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    const auto t0 = std::chrono::steady_clock::now();
    std::vector<std::string> argv_copy(argv, argv + argc);
    std::vector<std::string> outputs;
    std::string command;

    try {
        if (*seed_opt) g.seed = seed_raw;
        std::filesystem::create_directories(g.out_dir);
        hdx::eval_config ecfg;
        ecfg.rel_tolerance = g.tolerance;

        CLI::App* sub = app.get_subcommands().front();
        command = sub->get_name();
        auto need_seed = [&] {
            if (!g.seed)
                throw std::invalid_argument("--seed is required for Monte Carlo commands");
        };

        if (command == "pdf" || command == "cdf" || command == "survival") {
            hdx::diffusion_spec spec = curve.spec.build();
            hdx::h_variate v = curve.kind == "position"
                                   ? hdx::position_variate(spec, curve.t)
                                   : hdx::fpt_variate(spec, curve.a);
            std::string csv = path_join(g.out_dir, command + ".csv");
            auto f = open_out(csv);
            if (command == "survival") {
                f << "t,survival\n";
                for (double x : log_grid(curve.lo, curve.hi, curve.points))
                    f << hdx::csv_num(x) << ',' << hdx::csv_num(v.survival(x, ecfg)) << "\n";
            } else {
                f << "x,pdf,cdf\n";
                for (double x : log_grid(curve.lo, curve.hi, curve.points))
                    f << hdx::csv_num(x) << ',' << hdx::csv_num(v.pdf(x, ecfg)) << ','
                      << hdx::csv_num(v.cdf(x, ecfg)) << "\n";
            }
            outputs.push_back(csv);
        } else if (command == "noise-power") {
            std::string csv = path_join(g.out_dir, "noise-power.csv");
            auto f = open_out(csv);
            f << "alpha1,alpha2,noise_power_db\n";
            for (int i = 0; i < np.a1_steps; ++i) {
                double a1 = np.a1_lo + (np.a1_hi - np.a1_lo) * i / std::max(1, np.a1_steps - 1);
                for (int j = 0; j < np.a2_steps; ++j) {
                    double a2 =
                        np.a2_lo + (np.a2_hi - np.a2_lo) * j / std::max(1, np.a2_steps - 1);
                    hdx::shd_params sp{a1, a2, 1.0 / a1, a2, std::pow(np.K, 1.0 / a1), 1.0};
                    double db = 20.0 * hdx::log_moment_closed_shd(sp, np.a) / std::log(10.0);
                    f << hdx::csv_num(a1) << ',' << hdx::csv_num(a2) << ','
                      << hdx::csv_num(db) << "\n";
                }
            }
            outputs.push_back(csv);
        } else if (command == "sep") {
            hdx::diffusion_spec spec = sep.spec.build();
            hdx::noise_model nm = hdx::make_noise_model(spec, sep.a);
            std::string csv = path_join(g.out_dir, "sep.csv");
            auto f = open_out(csv);
            f << "snr_db,sep_bound,asymptote\n";
            for (int i = 0; i < sep.points; ++i) {
                double db =
                    sep.db_lo + (sep.db_hi - sep.db_lo) * i / std::max(1, sep.points - 1);
                double snr = std::pow(10.0, db / 10.0);
                double bound, asym = std::numeric_limits<double>::quiet_NaN();
                if (spec.shd) {
                    bound = hdx::sep_upper_bound_shd(*spec.shd, sep.M, sep.N, snr, ecfg);
                    auto h = hdx::high_snr(*spec.shd, sep.M, sep.N);
                    asym = std::pow(h.power_offset * snr, -h.slope);
                } else {
                    hdx::link_config lc{sep.M, sep.N,
                                        hdx::ts_for_snr(snr, nm.geometric_power), sep.a, spec};
                    bound = hdx::sep_upper_bound(lc, ecfg);
                }
                f << hdx::csv_num(db) << ',' << hdx::csv_num(bound) << ','
                  << hdx::csv_num(asym) << "\n";
            }
            outputs.push_back(csv);
        } else if (command == "highsnr") {
            hdx::diffusion_spec spec = hdx::make_shd_pair(hs.alpha1, hs.alpha2, hs.K);
            auto h = hdx::high_snr(*spec.shd, hs.M, hs.N);
            std::string csv = path_join(g.out_dir, "highsnr.csv");
            auto f = open_out(csv);
            f << "alpha1,alpha2,M,N,s_inf,p_inf,g\n";
            f << hdx::csv_num(hs.alpha1) << ',' << hdx::csv_num(hs.alpha2) << ',' << hs.M
              << ',' << hs.N << ',' << hdx::csv_num(h.slope) << ','
              << hdx::csv_num(h.power_offset) << ',' << hdx::csv_num(h.gain_constant)
              << "\n";
            outputs.push_back(csv);
            std::printf("s_inf = %.6g  p_inf = %.6g  g(M,N) = %.6g\n", h.slope,
                        h.power_offset, h.gain_constant);
        } else if (command == "simulate-fpt") {
            need_seed();
            hdx::diffusion_spec spec = simfpt.spec.build();
            std::string csv = path_join(g.out_dir, "simulate-fpt.csv");
            auto f = open_out(csv);
            long censored = 0;
            if (simfpt.method == "ctrw") {
                hdx::ctrw_config cc = hdx::make_ctrw_config(spec, simfpt.a,
                                                            simfpt.jump_fraction,
                                                            simfpt.max_steps);
                f << "index,fpt_seconds,censored\n";
                hdx::rng_stream rng(*g.seed, 1);
                for (long i = 0; i < simfpt.trials; ++i) {
                    auto s = hdx::simulate_fpt_ctrw(spec, simfpt.a, cc, rng);
                    censored += s.censored ? 1 : 0;
                    f << i << ',' << hdx::csv_num(s.t) << ',' << (s.censored ? 1 : 0)
                      << "\n";
                }
            } else {
                f << "index,fpt_seconds,censored\n";
                hdx::rng_stream rng(*g.seed, 1);
                for (long i = 0; i < simfpt.trials; ++i)
                    f << i << ',' << hdx::csv_num(hdx::sample_fpt(spec, simfpt.a, rng))
                      << ",0\n";
            }
            outputs.push_back(csv);
            std::printf("trials = %ld  censored = %ld (%.3g%%)\n", simfpt.trials, censored,
                        100.0 * double(censored) / double(simfpt.trials));
        } else if (command == "simulate-sep") {
            need_seed();
            hdx::diffusion_spec spec = simsep.spec.build();
            hdx::noise_model nm = hdx::make_noise_model(spec, simsep.a);
            std::string csv = path_join(g.out_dir, "simulate-sep.csv");
            auto f = open_out(csv);
            f << "snr_db,sep_hat,ci_lo,ci_hi\n";
            hdx::rng_stream rng(*g.seed, 1);
            for (int i = 0; i < simsep.points; ++i) {
                double db = simsep.db_lo +
                            (simsep.db_hi - simsep.db_lo) * i / std::max(1, simsep.points - 1);
                double ts =
                    hdx::ts_for_snr(std::pow(10.0, db / 10.0), nm.geometric_power);
                hdx::link_config lc{simsep.M, simsep.N, ts, simsep.a, spec};
                auto est = hdx::simulate_sep(lc, simsep.trials, rng);
                f << hdx::csv_num(db) << ',' << hdx::csv_num(est.p_hat) << ','
                  << hdx::csv_num(std::max(0.0, est.p_hat - 1.96 * est.sigma)) << ','
                  << hdx::csv_num(std::min(1.0, est.p_hat + 1.96 * est.sigma)) << "\n";
            }
            outputs.push_back(csv);
        } else if (command == "figure") {
            outputs = hdx::run_figure(fig.id, g.out_dir, fig.a, fig.K, ecfg);
        } else if (command == "table") {
            outputs = hdx::export_table(table.id, g.out_dir, table.alpha, table.beta,
                                        table.a);
        }

        double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        write_manifest(g, command, argv_copy, outputs, wall);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const hdx::numeric_error& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
