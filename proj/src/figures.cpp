#include "hdx/figures.hpp"
#include "hdx/link.hpp"
#include "hdx/montecarlo.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace hdx {
namespace {

std::string path_join(const std::string& dir, const std::string& name) {
    if (dir.empty()) return name;
    return dir.back() == '/' ? dir + name : dir + "/" + name;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open output file " + path);
    return f;
}

// RFC-4180 quoting for fields that may contain commas (embedded JSON)
std::string csv_field(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        out += c;
        if (c == '"') out += '"';
    }
    out += '"';
    return out;
}

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i)
        g[i] = lo * std::pow(hi / lo, double(i) / (n - 1));
    return g;
}

void write_plot_script(const std::string& dir, const std::string& id,
                       const std::string& csv, const std::string& body,
                       std::vector<std::string>& files) {
    std::string path = path_join(dir, id + ".gnuplot");
    auto f = open_out(path);
    f << "# gnuplot script for " << id << "\n";
    f << "set datafile separator ','\n";
    f << "csv = '" << csv << "'\n";
    f << body;
    files.push_back(path);
}

struct scenario {
    const char* tag;
    double alpha1, alpha2;
};
constexpr scenario scenarios[3] = {{"2_1", 2.0, 1.0}, {"2_05", 2.0, 0.5}, {"18_1", 1.8, 1.0}};

std::vector<std::string> fig_noise_cdf(const std::string& dir, double a, double K,
                                       const eval_config& cfg, bool survival_fig) {
    std::vector<std::string> files;
    const char* id = survival_fig ? "fig3-survival" : "fig2-cdf";
    std::string csv = path_join(dir, std::string(id) + ".csv");
    auto f = open_out(csv);

    struct column {
        h_variate fpt;
        double kappa, tail_coeff;
    };
    std::vector<column> cols;
    f << "t";
    for (const auto& sc : scenarios) {
        diffusion_spec spec = make_shd_pair(sc.alpha1, sc.alpha2, K);
        h_variate fpt = fpt_variate(spec, a);
        auto tail = fpt.survival_tail();
        cols.push_back({fpt, -tail.exponent, tail.coefficient});
        if (survival_fig)
            f << ",s_" << sc.tag << ",asym_" << sc.tag;
        else
            f << ",cdf_" << sc.tag;
    }
    f << "\n";
    for (double t : log_grid(1e-2, 1e8, 201)) {
        f << csv_num(t);
        for (auto& c : cols) {
            if (survival_fig) {
                double s = c.fpt.survival(t, cfg);
                f << ',' << csv_num(s) << ','
                  << csv_num(c.tail_coeff * std::pow(t, -c.kappa));
            } else {
                f << ',' << csv_num(c.fpt.cdf(t, cfg));
            }
        }
        f << "\n";
    }
    files.push_back(csv);
    std::string body = survival_fig
        ? "set logscale xy\nset xlabel 't [s]'\nset ylabel 'P(t_noise > t)'\n"
          "plot csv using 1:2 with lines title '(2,1)', csv using 1:3 with lines dt 2 "
          "title 'tail (2,1)', csv using 1:4 with lines title '(2,0.5)', csv using 1:5 "
          "with lines dt 2 title 'tail (2,0.5)', csv using 1:6 with lines title "
          "'(1.8,1)', csv using 1:7 with lines dt 2 title 'tail (1.8,1)'\n"
        : "set logscale x\nset xlabel 't [s]'\nset ylabel 'CDF'\n"
          "plot csv using 1:2 with lines title '(2,1)', csv using 1:3 with lines title "
          "'(2,0.5)', csv using 1:4 with lines title '(1.8,1)'\n";
    write_plot_script(dir, id, csv, body, files);
    return files;
}

std::vector<std::string> fig_noisepower(const std::string& dir, double K) {
    std::vector<std::string> files;
    std::string csv = path_join(dir, "fig4-noisepower.csv");
    auto f = open_out(csv);
    f << "a,alpha1,alpha2,noise_power_db\n";
    for (double a : {1e-5, 1e-8, 1e-10}) {
        for (int i = 0; i <= 36; ++i) {
            double a1 = 0.2 + 1.8 * double(i) / 36.0;
            for (int j = 0; j <= 19; ++j) {
                double a2 = 0.05 + 0.95 * double(j) / 19.0;
                shd_params sp{a1, a2, 1.0 / a1, a2, std::pow(K, 1.0 / a1), 1.0};
                double db = 20.0 * log_moment_closed_shd(sp, a) / std::log(10.0);
                f << csv_num(a) << ',' << csv_num(a1) << ',' << csv_num(a2) << ','
                  << csv_num(db) << "\n";
            }
        }
    }
    files.push_back(csv);
    write_plot_script(dir, "fig4-noisepower", csv,
                      "set xlabel 'alpha1'\nset ylabel 'alpha2'\n"
                      "splot csv using 2:3:4 with points palette\n",
                      files);
    return files;
}

std::vector<std::string> fig_sep(const std::string& dir, const std::string& id, double K,
                                 const eval_config& cfg) {
    std::vector<std::string> files;
    std::string csv = path_join(dir, id + ".csv");
    auto f = open_out(csv);

    struct curve {
        std::string tag;
        shd_params sp;
        int m, n;
    };
    std::vector<curve> curves;
    if (id == "fig5-sep") {
        for (const auto& sc : scenarios)
            curves.push_back({std::string("_") + sc.tag,
                              *make_shd_pair(sc.alpha1, sc.alpha2, K).shd, 2, 1});
    } else if (id == "fig6-sep-M") {
        for (int m : {2, 4, 8, 16})
            curves.push_back({"_m" + std::to_string(m),
                              *make_shd_pair(1.8, 1.0, K).shd, m, 2});
    } else {  // fig7-sep-N
        for (int n : {1, 2, 3, 4})
            curves.push_back({"_n" + std::to_string(n),
                              *make_shd_pair(2.0, 0.5, K).shd, 4, n});
    }

    f << "snr_db";
    for (const auto& c : curves) f << ",sep" << c.tag << ",asym" << c.tag;
    f << "\n";
    for (int db = 0; db <= 130; db += 2) {
        double snr = std::pow(10.0, db / 10.0);
        f << db;
        for (const auto& c : curves) {
            double pe = sep_upper_bound_shd(c.sp, c.m, c.n, snr, cfg);
            auto hs = high_snr(c.sp, c.m, c.n);
            double asym = std::pow(hs.power_offset * snr, -hs.slope);
            f << ',' << csv_num(pe) << ',' << csv_num(asym);
        }
        f << "\n";
    }
    files.push_back(csv);
    write_plot_script(dir, id, csv,
                      "set logscale y\nset xlabel 'SNR [dB]'\nset ylabel 'SEP bound'\n"
                      "plot for [i=2:*] csv using 1:i with lines title columnhead(i)\n",
                      files);
    return files;
}

std::vector<std::string> fig_slope(const std::string& dir) {
    std::vector<std::string> files;
    std::string csv = path_join(dir, "fig8-slope.csv");
    auto f = open_out(csv);
    f << "level_per_molecule,alpha1,alpha2\n";
    for (double level : {0.45, 0.40, 0.35, 0.30, 0.25}) {
        for (int i = 0; i <= 200; ++i) {
            double a1 = 0.05 + 1.95 * double(i) / 200.0;
            double a2 = a1 <= 1.0 ? 2.0 * level : 2.0 * level * a1;
            if (a2 <= 1.0)
                f << csv_num(level) << ',' << csv_num(a1) << ',' << csv_num(a2) << "\n";
        }
    }
    files.push_back(csv);
    write_plot_script(dir, "fig8-slope", csv,
                      "set xlabel 'alpha1'\nset ylabel 'alpha2'\n"
                      "plot csv using 2:3 with lines\n",
                      files);
    return files;
}

} // namespace

std::string csv_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> known_figures() {
    return {"fig2-cdf",   "fig3-survival", "fig4-noisepower", "fig5-sep",
            "fig6-sep-M", "fig7-sep-N",    "fig8-slope"};
}

std::vector<std::string> known_tables() { return {"table3-presets", "table4-noise"}; }

std::vector<std::string> run_figure(const std::string& id, const std::string& out_dir,
                                    double a, double K, const eval_config& cfg) {
    if (id == "fig2-cdf") return fig_noise_cdf(out_dir, a, K, cfg, false);
    if (id == "fig3-survival") return fig_noise_cdf(out_dir, a, K, cfg, true);
    if (id == "fig4-noisepower") return fig_noisepower(out_dir, K);
    if (id == "fig5-sep" || id == "fig6-sep-M" || id == "fig7-sep-N")
        return fig_sep(out_dir, id, K, cfg);
    if (id == "fig8-slope") return fig_slope(out_dir);
    throw std::invalid_argument("unknown figure id '" + id + "'");
}

std::vector<std::string> export_table(const std::string& id, const std::string& out_dir,
                                      double alpha, double beta, double a) {
    std::vector<std::string> files;
    if (id == "table3-presets") {
        std::string csv = path_join(out_dir, "table3-presets.csv");
        auto f = open_out(csv);
        f << "name,alpha,beta,parent,directing,omega1,omega2,msd_exponent\n";
        struct row {
            const char* name;
            bool has_alpha, has_beta;
        };
        for (row r : {row{"st-fd", true, true}, row{"s-fd", true, true},
                      row{"t-fd", false, true}, row{"ek-fd", true, true},
                      row{"gbm", false, true}, row{"fbm", true, false},
                      row{"bm", false, false}}) {
            std::map<std::string, double> ps;
            if (r.has_alpha) ps["alpha"] = alpha;
            if (r.has_beta) ps["beta"] = beta;
            diffusion_spec s = preset(r.name, ps);
            f << r.name << ',' << (r.has_alpha ? csv_num(alpha) : "") << ','
              << (r.has_beta ? csv_num(beta) : "") << ','
              << csv_field(to_json(s.parent.law1.law())) << ','
              << csv_field(s.directing ? to_json(s.directing->law1.law())
                                       : to_json(null_hfunc()))
              << ',' << csv_num(s.omega1) << ',' << csv_num(s.omega2) << ','
              << csv_num(msd_exponent(s)) << "\n";
        }
        files.push_back(csv);
        return files;
    }
    if (id == "table4-noise") {
        std::string csv = path_join(out_dir, "table4-noise.csv");
        auto f = open_out(csv);
        f << "name,alpha,beta,law,omega,c,geometric_power\n";
        struct row {
            const char* name;
            bool has_alpha, has_beta;
        };
        for (row r : {row{"st-fd", true, true}, row{"s-fd", true, false},
                      row{"t-fd", false, true}, row{"ek-fd", true, true},
                      row{"gbm", false, true}, row{"fbm", true, false},
                      row{"bm", false, false}}) {
            std::map<std::string, double> ps;
            if (r.has_alpha) ps["alpha"] = alpha;
            if (r.has_beta) ps["beta"] = beta;
            noise_table_row t = noise_preset_table(r.name, ps);
            f << r.name << ',' << (r.has_alpha ? csv_num(alpha) : "") << ','
              << (r.has_beta ? csv_num(beta) : "") << ',' << csv_field(to_json(t.law))
              << ',' << csv_num(t.omega) << ',' << csv_num(t.c) << ','
              << csv_num(t.geometric_power(a)) << "\n";
        }
        files.push_back(csv);
        return files;
    }
    throw std::invalid_argument("unknown table id '" + id + "'");
}

} // namespace hdx
