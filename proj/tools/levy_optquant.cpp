// levy-optquant: command line front end over the levyopt C API.
//
// Subcommands:
//   simulate-path   sample a path on a uniform grid, write CSV (i,x)
//   simulate-limit  sample rescaled supremum-error variates, write artifacts
//   estimate-sup    recover the supremum from an observed path CSV
//   estimate-local  local/occupation time estimates from a path CSV
//   estimate-params infer model parameters from a path CSV
//   density-table   dump the marginal density table of a stable model
//   experiment      run a canned experiment (table1|table2|localocc|figureN)
//
// All file outputs are UTF-8 with LF endings; JSON results go to stdout.

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "levyopt/levyopt.h"

using json = nlohmann::ordered_json;

namespace {

// ---------------- helpers ----------------

[[noreturn]] void die(levyopt_status st, const std::string& where) {
    std::fprintf(stderr, "levy-optquant: %s: %s (status %d)\n", where.c_str(),
                 levyopt_last_error(), (int)st);
    std::exit(1);
}

void check(levyopt_status st, const std::string& where) {
    if (st != LEVYOPT_OK) die(st, where);
}

struct ModelHandle {
    levyopt_model* m = nullptr;
    ~ModelHandle() { levyopt_model_free(m); }
};

struct PathHandle {
    levyopt_path* p = nullptr;
    ~PathHandle() { levyopt_path_free(p); }
};

// Shared model flags. The stable law accepts either the positivity triplet
// (alpha, rho, lambda) or the skew pair (beta, scale) next to alpha.
struct ModelFlags {
    std::string kind = "bm";
    double sigma = 1.0;
    double alpha = 1.8;
    double rho = -1.0;  // unset marker
    double lambda = 0.0;
    double beta = -2.0;  // unset marker
    double scale = 1.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--model-kind", kind, "Model kind: bm or stable")
            ->check(CLI::IsMember({"bm", "stable"}));
        cmd->add_option("--sigma", sigma, "Brownian volatility (bm)");
        cmd->add_option("--alpha", alpha, "Stability index in (0,2) (stable)");
        cmd->add_option("--rho", rho, "Positivity parameter P(X_1 > 0) (stable)");
        cmd->add_option("--lambda", lambda, "E[log|X_1|] (stable, with --rho)");
        cmd->add_option("--beta", beta, "Skewness in [-1,1] (stable, with --scale)");
        cmd->add_option("--scale", scale, "Scale > 0 (stable, with --beta)");
    }

    levyopt_model* build() const {
        levyopt_model* m = nullptr;
        if (kind == "bm") {
            check(levyopt_model_bm(sigma, &m), "model");
        } else if (beta >= -1.0) {
            check(levyopt_model_stable_skew(alpha, beta, scale, &m), "model");
        } else if (rho >= 0.0) {
            check(levyopt_model_stable(alpha, rho, lambda, &m), "model");
        } else {
            // neither parametrization given: standard spectrally negative law
            check(levyopt_model_stable_skew(alpha, -1.0, scale, &m), "model");
        }
        return m;
    }
};

json describe(const levyopt_model* m) {
    levyopt_model_info info;
    check(levyopt_model_describe(m, &info), "describe");
    json j;
    if (info.is_bm) {
        j["kind"] = "bm";
        j["sigma"] = info.sigma;
    } else {
        j["kind"] = "stable";
        j["alpha"] = info.alpha;
        j["rho"] = info.rho;
        j["lambda"] = info.lambda;
        j["beta"] = info.beta;
        j["scale"] = info.scale;
    }
    return j;
}

std::vector<double> read_path_csv(const std::string& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) {
        std::fprintf(stderr, "levy-optquant: cannot open %s\n", file.c_str());
        std::exit(1);
    }
    std::string line;
    if (!std::getline(in, line)) {
        std::fprintf(stderr, "levy-optquant: %s is empty\n", file.c_str());
        std::exit(1);
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "i,x") {
        std::fprintf(stderr, "levy-optquant: %s: expected header 'i,x'\n", file.c_str());
        std::exit(1);
    }
    std::vector<double> obs;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        long idx = 0;
        double x = 0.0;
        if (std::sscanf(line.c_str(), "%ld,%lf", &idx, &x) != 2 ||
            idx != (long)obs.size()) {
            std::fprintf(stderr, "levy-optquant: %s:%zu: bad path row '%s'\n", file.c_str(),
                         lineno, line.c_str());
            std::exit(1);
        }
        obs.push_back(x);
    }
    if (obs.size() < 2) {
        std::fprintf(stderr, "levy-optquant: %s: need at least two observations\n",
                     file.c_str());
        std::exit(1);
    }
    return obs;
}

void write_two_column_csv(const std::string& file, const char* h0, const char* h1,
                          const std::vector<double>& c0, const std::vector<double>& c1) {
    std::ofstream out(file, std::ios::binary);
    if (!out) {
        std::fprintf(stderr, "levy-optquant: cannot open %s for writing\n", file.c_str());
        std::exit(1);
    }
    out << h0 << ',' << h1 << '\n';
    char buf[64];
    for (std::size_t i = 0; i < c0.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g", c0[i], c1[i]);
        out << buf << '\n';
    }
}

std::string slurp(const std::string& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) {
        std::fprintf(stderr, "levy-optquant: cannot open %s\n", file.c_str());
        std::exit(1);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void print_json(const json& j) { std::printf("%s\n", j.dump(2).c_str()); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"optimal recovery of supremum / local time / occupation time "
                 "from discretely observed paths"};
    app.require_subcommand(1);

    // ---------------- simulate-path ----------------
    auto* sp = app.add_subcommand("simulate-path", "sample a path, write CSV (i,x)");
    ModelFlags sp_model;
    sp_model.attach(sp);
    int sp_n = 300, sp_refine = 1;
    std::uint64_t sp_seed = 1;
    std::string sp_out = "path.csv";
    bool sp_fine = false;
    sp->add_option("--n", sp_n, "grid intervals over [0,1]")->check(CLI::PositiveNumber);
    sp->add_option("--refine", sp_refine, "simulate refine-fold finer than the grid")
        ->check(CLI::PositiveNumber);
    sp->add_option("--seed", sp_seed, "RNG seed");
    sp->add_option("--out-file", sp_out, "output CSV path");
    sp->add_flag("--fine", sp_fine, "write the fine grid instead of the coarse one");

    // ---------------- simulate-limit ----------------
    auto* sl = app.add_subcommand(
        "simulate-limit", "sample rescaled supremum-error variates (V, V_mean, ...)");
    ModelFlags sl_model;
    sl_model.attach(sl);
    int sl_draws = 1000, sl_K = 50, sl_k = 15, sl_n = 300, sl_m = 300, sl_window = 1,
        sl_workers = 1;
    std::uint64_t sl_seed = 1;
    std::string sl_out;
    sl->add_option("--draws", sl_draws, "number of draws")->check(CLI::PositiveNumber);
    sl->add_option("--K", sl_K, "limit window half-width (bm)")->check(CLI::PositiveNumber);
    sl->add_option("--n", sl_n, "grid intervals (stable pre-limit)")
        ->check(CLI::PositiveNumber);
    sl->add_option("--m", sl_m, "refinement factor (stable pre-limit)")
        ->check(CLI::PositiveNumber);
    sl->add_option("--k", sl_k, "draw truncation around the argmax (stable pre-limit)")
        ->check(CLI::PositiveNumber);
    sl->add_option("--window-k", sl_window, "windowed-mean half-width")
        ->check(CLI::PositiveNumber);
    sl->add_option("--workers", sl_workers, "worker threads")->check(CLI::PositiveNumber);
    sl->add_option("--seed", sl_seed, "RNG seed");
    sl->add_option("--out", sl_out, "artifact directory (variates.csv, summary.json, ...)");

    // ---------------- estimate-sup ----------------
    auto* es = app.add_subcommand("estimate-sup", "recover the supremum from a path CSV");
    ModelFlags es_model;
    es_model.attach(es);
    std::string es_input, es_method = "mean";
    int es_k = 0;
    bool es_plugin = false;
    es->add_option("--input", es_input, "path CSV (header i,x)")->required();
    es->add_option("--method", es_method, "point estimate to report")
        ->check(CLI::IsMember({"max", "mean", "median", "shift"}));
    es->add_option("--k", es_k, "conditional-product window (0 = full)")
        ->check(CLI::NonNegativeNumber);
    es->add_flag("--plugin", es_plugin, "estimate model parameters from the path first");

    // ---------------- estimate-local ----------------
    auto* el = app.add_subcommand("estimate-local",
                                  "local/occupation time estimates from a path CSV");
    std::string el_input, el_method = "mean", el_kind = "local";
    double el_t = 1.0, el_x = 0.0, el_sigma = 1.0;
    bool el_estimate_sigma = false, el_lenient = false;
    el->add_option("--input", el_input, "path CSV (header i,x)")->required();
    el->add_option("--method", el_method, "mean | baseline | altkernel")
        ->check(CLI::IsMember({"mean", "baseline", "altkernel"}));
    el->add_option("--kind", el_kind, "local | occupation")
        ->check(CLI::IsMember({"local", "occupation"}));
    el->add_option("--t", el_t, "time horizon in (0,1]");
    el->add_option("--x", el_x, "spatial level");
    el->add_option("--sigma", el_sigma, "Brownian volatility");
    el->add_flag("--estimate-sigma", el_estimate_sigma,
                 "use the realized-volatility estimate instead of --sigma");
    el->add_flag("--lenient", el_lenient, "floor n*t instead of rejecting off-grid t");

    // ---------------- estimate-params ----------------
    auto* ep = app.add_subcommand("estimate-params", "infer model parameters from a path CSV");
    std::string ep_input, ep_kind = "stable";
    double ep_q = -0.25;
    ep->add_option("--input", ep_input, "path CSV (header i,x)")->required();
    ep->add_option("--model-kind", ep_kind, "bm or stable")
        ->check(CLI::IsMember({"bm", "stable"}));
    ep->add_option("--q", ep_q, "power-variation exponent in (-1/2, 0)");

    // ---------------- density-table ----------------
    auto* dt = app.add_subcommand("density-table",
                                  "dump the marginal density table of a stable model");
    ModelFlags dt_model;
    dt_model.kind = "stable";
    dt_model.attach(dt);
    std::string dt_out = "density.csv";
    dt->add_option("--out-file", dt_out, "output CSV path (columns x,f)");

    // ---------------- experiment ----------------
    auto* ex = app.add_subcommand("experiment", "run a canned experiment");
    std::string ex_id, ex_config, ex_out;
    std::uint64_t ex_seed = 0;
    int ex_replicates = 0, ex_workers = 0;
    bool ex_seed_set = false;
    ex->add_option("id", ex_id, "table1 | table2 | localocc | figure1..figure6");
    ex->add_option("--config", ex_config, "JSON config file (protocol defaults when absent)");
    auto* ex_seed_opt = ex->add_option("--seed", ex_seed, "RNG seed override");
    ex->add_option("--out", ex_out, "artifact directory override");
    ex->add_option("--replicates", ex_replicates, "replicate count override")
        ->check(CLI::PositiveNumber);
    ex->add_option("--workers", ex_workers, "worker thread override")
        ->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);
    ex_seed_set = ex_seed_opt->count() > 0;

    // ---------------- dispatch ----------------

    if (sp->parsed()) {
        ModelHandle m{sp_model.build()};
        PathHandle path;
        check(levyopt_simulate_path(m.m, sp_n, sp_refine, sp_seed, &path.p), "simulate-path");
        const int points = sp_fine ? sp_n * sp_refine + 1 : sp_n + 1;
        std::vector<double> xs((std::size_t)points), is((std::size_t)points);
        check(sp_fine ? levyopt_path_fine(path.p, xs.data())
                      : levyopt_path_coarse(path.p, xs.data()),
              "simulate-path");
        for (int i = 0; i < points; ++i) is[(std::size_t)i] = i;
        write_two_column_csv(sp_out, "i", "x", is, xs);
        json j;
        j["file"] = sp_out;
        j["points"] = points;
        j["model"] = describe(m.m);
        j["seed"] = sp_seed;
        print_json(j);
        return 0;
    }

    if (sl->parsed()) {
        ModelHandle m{sl_model.build()};
        levyopt_model_info info;
        check(levyopt_model_describe(m.m, &info), "simulate-limit");
        json cfg;
        cfg["experiment"] = info.is_bm ? "table1" : "table2";
        cfg["model"] = describe(m.m);
        if (!info.is_bm) cfg["model"].erase("beta"), cfg["model"].erase("scale");
        cfg["replicates"] = sl_draws;
        cfg["K"] = sl_K;
        cfg["n"] = sl_n;
        cfg["m"] = sl_m;
        cfg["window_k"] = info.is_bm ? sl_window : sl_k;
        cfg["seed"] = sl_seed;
        cfg["workers"] = sl_workers;
        if (!sl_out.empty()) cfg["out_dir"] = sl_out;
        char* summary = nullptr;
        check(levyopt_run_experiment(cfg.dump().c_str(), &summary), "simulate-limit");
        std::printf("%s", summary);
        levyopt_string_free(summary);
        return 0;
    }

    if (es->parsed()) {
        const auto obs = read_path_csv(es_input);
        json params;
        ModelHandle m;
        if (es_plugin) {
            if (es_model.kind == "bm") {
                double sigma = 0.0;
                check(levyopt_estimate_sigma(obs.data(), (int)obs.size(), &sigma),
                      "estimate-sup");
                check(levyopt_model_bm(sigma, &m.m), "estimate-sup");
            } else {
                levyopt_stable_estimate est;
                check(levyopt_estimate_stable(obs.data(), (int)obs.size(), -0.25, &est),
                      "estimate-sup");
                check(levyopt_model_stable(est.alpha, est.rho, est.lambda, &m.m),
                      "estimate-sup");
            }
            params = describe(m.m);
            params["plugin"] = true;
        } else {
            m.m = es_model.build();
            params = describe(m.m);
            params["plugin"] = false;
        }
        levyopt_sup_result r;
        check(levyopt_sup_estimate(m.m, obs.data(), (int)obs.size(), es_k, &r),
              "estimate-sup");
        const double estimate = es_method == "max"      ? r.grid_max
                                : es_method == "mean"   ? r.mean
                                : es_method == "median" ? r.median
                                                        : r.shift;
        json j;
        j["estimate"] = estimate;
        j["method"] = es_method;
        j["M_n"] = r.grid_max;
        j["mean"] = r.mean;
        j["median"] = r.median;
        j["shift"] = r.shift;
        j["integral_tail_bound"] = r.integral_tail;
        j["k"] = r.window_k;
        j["argmax"] = r.argmax;
        j["n"] = (int)obs.size() - 1;
        j["params_used"] = params;
        print_json(j);
        return 0;
    }

    if (el->parsed()) {
        const auto obs = read_path_csv(el_input);
        double sigma = el_sigma;
        if (el_estimate_sigma)
            check(levyopt_estimate_sigma(obs.data(), (int)obs.size(), &sigma),
                  "estimate-local");
        ModelHandle m;
        check(levyopt_model_bm(sigma, &m.m), "estimate-local");
        const int strict = el_lenient ? 0 : 1;
        double value = 0.0;
        const int count = (int)obs.size();
        if (el_kind == "local") {
            if (el_method == "mean")
                check(levyopt_local_time(m.m, obs.data(), count, el_t, el_x, strict, &value),
                      "estimate-local");
            else if (el_method == "altkernel")
                check(levyopt_local_time_altkernel(m.m, obs.data(), count, el_t, el_x, strict,
                                                   &value),
                      "estimate-local");
            else
                check(levyopt_baseline_local_time(obs.data(), count, el_t, el_x, strict,
                                                  &value),
                      "estimate-local");
        } else {
            if (el_method == "mean")
                check(levyopt_occupation(m.m, obs.data(), count, el_t, el_x, strict, &value),
                      "estimate-local");
            else if (el_method == "altkernel") {
                std::fprintf(stderr,
                             "levy-optquant: altkernel applies to local time only\n");
                return 1;
            } else
                check(levyopt_baseline_occupation(obs.data(), count, el_t, el_x, strict,
                                                  &value),
                      "estimate-local");
        }
        json j;
        j["estimate"] = value;
        j["kind"] = el_kind;
        j["method"] = el_method;
        j["t"] = el_t;
        j["x"] = el_x;
        j["sigma_used"] = sigma;
        j["sigma_estimated"] = el_estimate_sigma;
        j["n"] = count - 1;
        print_json(j);
        return 0;
    }

    if (ep->parsed()) {
        const auto obs = read_path_csv(ep_input);
        json j;
        if (ep_kind == "bm") {
            double sigma = 0.0;
            check(levyopt_estimate_sigma(obs.data(), (int)obs.size(), &sigma),
                  "estimate-params");
            j["kind"] = "bm";
            j["sigma"] = sigma;
        } else {
            levyopt_stable_estimate est;
            check(levyopt_estimate_stable(obs.data(), (int)obs.size(), ep_q, &est),
                  "estimate-params");
            j["kind"] = "stable";
            j["alpha"] = est.alpha;
            j["rho"] = est.rho;
            j["lambda"] = est.lambda;
            j["alpha_raw"] = est.alpha_raw;
            j["q"] = est.q;
            j["truncated"] = est.truncated != 0;
        }
        j["n"] = (int)obs.size() - 1;
        print_json(j);
        return 0;
    }

    if (dt->parsed()) {
        ModelHandle m{dt_model.build()};
        double *xs = nullptr, *fs = nullptr;
        int count = 0;
        check(levyopt_density_table(m.m, &xs, &fs, &count), "density-table");
        write_two_column_csv(dt_out, "x", "f",
                             std::vector<double>(xs, xs + count),
                             std::vector<double>(fs, fs + count));
        levyopt_buffer_free(xs);
        levyopt_buffer_free(fs);
        json j;
        j["file"] = dt_out;
        j["points"] = count;
        j["model"] = describe(m.m);
        print_json(j);
        return 0;
    }

    if (ex->parsed()) {
        json cfg;
        if (!ex_config.empty()) {
            cfg = json::parse(slurp(ex_config), nullptr, false);
            if (cfg.is_discarded()) {
                std::fprintf(stderr, "levy-optquant: %s is not valid JSON\n",
                             ex_config.c_str());
                return 1;
            }
        } else {
            const std::string id = ex_id.empty() ? "table1" : ex_id;
            char* def = nullptr;
            check(levyopt_default_config(id.c_str(), &def), "experiment");
            cfg = json::parse(def);
            levyopt_string_free(def);
        }
        if (!ex_id.empty()) cfg["experiment"] = ex_id;
        if (ex_seed_set) cfg["seed"] = ex_seed;
        if (!ex_out.empty()) cfg["out_dir"] = ex_out;
        if (ex_replicates > 0) cfg["replicates"] = ex_replicates;
        if (ex_workers > 0) cfg["workers"] = ex_workers;
        char* summary = nullptr;
        check(levyopt_run_experiment(cfg.dump().c_str(), &summary), "experiment");
        std::printf("%s", summary);
        levyopt_string_free(summary);
        return 0;
    }

    return 0;
}
