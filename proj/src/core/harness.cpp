#include "core/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include "json.hpp"

#include "core/cond_law.hpp"
#include "core/csv.hpp"
#include "core/errors.hpp"
#include "core/local_occupation.hpp"
#include "core/path_sim.hpp"
#include "core/rng.hpp"
#include "core/stats.hpp"

namespace levyopt {

using json = nlohmann::ordered_json;

namespace {

constexpr std::uint64_t kRepTag = 0x72657073;    // per-replicate seed stream
constexpr std::uint64_t kLimLTag = 0x6c696d6c;   // local-time limit draw
constexpr std::uint64_t kLimOTag = 0x6c696d6f;   // occupation limit draw

// Runs body(0..count-1) over a small thread pool. Each index writes its own
// result slot, so the reduction order (and therefore every output byte) is
// independent of the worker count.
template <class F>
void parallel_for(int count, int workers, F&& body) {
    workers = std::max(1, std::min(workers, count));
    if (workers == 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex err_mu;
    std::vector<std::thread> pool;
    pool.reserve((std::size_t)workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mu);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

std::string parent_experiment(const std::string& id) {
    if (id == "figure1" || id == "figure2") return "table1";
    if (id == "figure4") return "table2";
    if (id == "figure5" || id == "figure6") return "localocc";
    return id;
}

std::vector<double> column_of(const ExperimentSummary& s, const std::string& name) {
    const auto it = std::find(s.columns.begin(), s.columns.end(), name);
    if (it == s.columns.end()) throw BadArgument("unknown variate column: " + name);
    const std::size_t c = (std::size_t)(it - s.columns.begin());
    std::vector<double> out;
    out.reserve(s.variates.size());
    for (const auto& row : s.variates) out.push_back(row[c]);
    return out;
}

SummaryRow make_row(const std::string& name, const std::vector<double>& errors) {
    SummaryRow r;
    r.name = name;
    r.rmse = rmse(errors);
    r.mae = mae(errors);
    r.ci95 = shortest_ci(errors, 0.95);
    r.mean_error = mean(errors);
    r.variance = variance(errors);
    return r;
}

void add_rows(ExperimentSummary& s) {
    for (const auto& name : s.columns) s.rows.push_back(make_row(name, column_of(s, name)));
}

// KDE curves for the named variate columns on one shared grid.
FigureData kde_figure(const std::string& name, const ExperimentSummary& s,
                      const std::vector<std::string>& series,
                      std::map<std::string, double>& scalars) {
    std::vector<std::vector<double>> samples;
    double lo = 0.0, hi = 0.0;
    for (std::size_t k = 0; k < series.size(); ++k) {
        samples.push_back(column_of(s, series[k]));
        const double h = silverman_bandwidth(samples.back());
        const auto [mn, mx] = std::minmax_element(samples.back().begin(), samples.back().end());
        const double l = *mn - 3.0 * h, r = *mx + 3.0 * h;
        if (k == 0) {
            lo = l;
            hi = r;
        } else {
            lo = std::min(lo, l);
            hi = std::max(hi, r);
        }
    }
    const int points = 401;
    std::vector<double> grid((std::size_t)points);
    for (int i = 0; i < points; ++i)
        grid[(std::size_t)i] = lo + (hi - lo) * (double)i / (double)(points - 1);

    FigureData fig;
    fig.name = name;
    fig.columns.push_back("x");
    fig.rows.assign(grid.size(), std::vector<double>{});
    for (std::size_t i = 0; i < grid.size(); ++i) fig.rows[i].push_back(grid[i]);
    for (std::size_t k = 0; k < series.size(); ++k) {
        const KdeCurve c = kde(samples[k], grid);
        fig.columns.push_back(series[k]);
        scalars["kde_bandwidth." + name + "." + series[k]] = c.bandwidth;
        for (std::size_t i = 0; i < grid.size(); ++i) fig.rows[i].push_back(c.density[i]);
    }
    return fig;
}

}  // namespace

// ---------------- configuration ----------------

ExperimentConfig default_config(const std::string& experiment) {
    ExperimentConfig cfg;
    cfg.experiment = experiment;
    const std::string base = parent_experiment(experiment);
    if (base == "table1") {
        cfg.model = make_bm(1.0);
        cfg.replicates = 10000;
        cfg.K = 50;
        cfg.window_k = 1;
    } else if (base == "table2") {
        cfg.model = make_stable_skew(1.8, -1.0, 1.0);
        cfg.replicates = 1000;
        cfg.n = 300;
        cfg.m = 300;
        cfg.window_k = 15;
    } else if (base == "localocc") {
        cfg.model = make_bm(1.0);
        cfg.replicates = 10000;
        cfg.n = 100;
        cfg.m = 100;
    } else if (base == "figure3") {
        cfg.model = make_stable_skew(1.8, -1.0, 1.0);
        cfg.replicates = 5;  // sample count for the 1-H curves
        cfg.n = 300;
        cfg.m = 300;
        cfg.window_k = 15;
    } else {
        throw BadArgument("unknown experiment id: " + experiment);
    }
    cfg.recovery = default_recovery(cfg.model);
    return cfg;
}

std::string config_to_json(const ExperimentConfig& cfg) {
    json j;
    j["experiment"] = cfg.experiment;
    json jm;
    if (cfg.model.is_bm()) {
        jm["kind"] = "bm";
        jm["sigma"] = cfg.model.sigma;
    } else {
        jm["kind"] = "stable";
        jm["alpha"] = cfg.model.stable.alpha;
        jm["rho"] = cfg.model.stable.rho;
        jm["lambda"] = cfg.model.stable.lambda;
    }
    j["model"] = jm;
    j["replicates"] = cfg.replicates;
    j["n"] = cfg.n;
    j["m"] = cfg.m;
    j["K"] = cfg.K;
    j["window_k"] = cfg.window_k;
    j["seed"] = cfg.seed;
    j["workers"] = cfg.workers;
    j["out_dir"] = cfg.out_dir;
    j["recovery"] = {{"grid_step", cfg.recovery.grid_step},
                     {"grid_max", cfg.recovery.grid_max},
                     {"grid_median", cfg.recovery.grid_median}};
    return j.dump(2) + "\n";
}

ExperimentConfig config_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw BadArgument(std::string("config parse: ") + e.what());
    }
    ExperimentConfig cfg = default_config(j.value("experiment", std::string("table1")));
    try {
        if (j.contains("model")) {
            const auto& jm = j.at("model");
            const std::string kind = jm.value("kind", std::string("bm"));
            if (kind == "bm") {
                cfg.model = make_bm(jm.value("sigma", 1.0));
            } else if (kind == "stable") {
                cfg.model = make_stable_triplet(jm.at("alpha").get<double>(),
                                                jm.at("rho").get<double>(),
                                                jm.at("lambda").get<double>());
            } else {
                throw BadArgument("model.kind must be bm or stable");
            }
            cfg.recovery = default_recovery(cfg.model);
        }
        cfg.replicates = j.value("replicates", cfg.replicates);
        cfg.n = j.value("n", cfg.n);
        cfg.m = j.value("m", cfg.m);
        cfg.K = j.value("K", cfg.K);
        cfg.window_k = j.value("window_k", cfg.window_k);
        cfg.seed = j.value("seed", cfg.seed);
        cfg.workers = j.value("workers", cfg.workers);
        cfg.out_dir = j.value("out_dir", cfg.out_dir);
        if (j.contains("recovery")) {
            const auto& jr = j.at("recovery");
            cfg.recovery.grid_step = jr.value("grid_step", cfg.recovery.grid_step);
            cfg.recovery.grid_max = jr.value("grid_max", cfg.recovery.grid_max);
            cfg.recovery.grid_median = jr.value("grid_median", cfg.recovery.grid_median);
        }
    } catch (const json::exception& e) {
        throw BadArgument(std::string("config field: ") + e.what());
    }
    if (cfg.replicates < 1) throw BadArgument("replicates must be >= 1");
    if (cfg.n < 1 || cfg.m < 1 || cfg.K < 1) throw BadArgument("n, m, K must be >= 1");
    if (cfg.workers < 1) throw BadArgument("workers must be >= 1");
    return cfg;
}

// ---------------- experiments ----------------

ExperimentSummary run_table1(const ExperimentConfig& cfg) {
    if (!cfg.model.is_bm())
        throw UnsupportedModel("table1 draws from the Brownian limit; model must be bm");
    const CondSupLaw law(cfg.model);
    RecoveryConfig rec = cfg.recovery;
    rec.window_k = cfg.window_k;
    const double inv_sigma = 1.0 / cfg.model.sigma;

    ExperimentSummary s;
    s.experiment = cfg.experiment;
    s.seed = cfg.seed;
    s.replicates = cfg.replicates;
    const std::string mean_k = "V_mean_" + std::to_string(cfg.window_k);
    s.columns = {"V", "V_mean", "V_med", "V_shift", mean_k};
    s.variates.assign((std::size_t)cfg.replicates, {});

    parallel_for(cfg.replicates, cfg.workers, [&](int r) {
        const LimitDraw d =
            sample_bessel_limit(cfg.model.sigma, cfg.K, mix_seed(cfg.seed, kRepTag, (std::uint64_t)r));
        const LimitVariates v = recover_variates(law, d, rec);
        s.variates[(std::size_t)r] = {v.v * inv_sigma, v.v_mean * inv_sigma, v.v_med * inv_sigma,
                                      v.v_shift * inv_sigma, v.v_mean_k * inv_sigma};
    });

    add_rows(s);
    s.figures.push_back(kde_figure("figure1", s, {"V", "V_mean", "V_med"}, s.scalars));
    s.figures.push_back(kde_figure("figure2", s, {"V_shift", "V_mean", mean_k}, s.scalars));
    return s;
}

ExperimentSummary run_table2(const ExperimentConfig& cfg) {
    const CondSupLaw law(cfg.model);
    const double inv_sigma = cfg.model.is_bm() ? 1.0 / cfg.model.sigma : 1.0;

    ExperimentSummary s;
    s.experiment = cfg.experiment;
    s.seed = cfg.seed;
    s.replicates = cfg.replicates;
    s.columns = {"V", "V_mean", "V_med", "V_shift"};
    s.variates.assign((std::size_t)cfg.replicates, {});

    parallel_for(cfg.replicates, cfg.workers, [&](int r) {
        const LimitDraw d = sample_prelimit(cfg.model, cfg.n, cfg.m, cfg.window_k,
                                            mix_seed(cfg.seed, kRepTag, (std::uint64_t)r));
        const LimitVariates v = recover_variates(law, d, cfg.recovery);
        s.variates[(std::size_t)r] = {v.v * inv_sigma, v.v_mean * inv_sigma, v.v_med * inv_sigma,
                                      v.v_shift * inv_sigma};
    });

    add_rows(s);
    s.figures.push_back(kde_figure("figure4", s, {"V", "V_mean", "V_med"}, s.scalars));
    return s;
}

ExperimentSummary run_localocc(const ExperimentConfig& cfg) {
    if (!cfg.model.is_bm())
        throw UnsupportedModel("local/occupation estimators assume a Brownian model");
    const double sigma = cfg.model.sigma;
    const auto cs = asymptotic_constants();
    const double r14 = std::pow((double)cfg.n, 0.25);
    const double r34 = std::pow((double)cfg.n, 0.75);

    ExperimentSummary s;
    s.experiment = cfg.experiment;
    s.seed = cfg.seed;
    s.replicates = cfg.replicates;
    s.columns = {"L_limit", "L_cond", "L_base", "L_alt", "O_limit", "O_cond", "O_base"};
    s.variates.assign((std::size_t)cfg.replicates, {});

    parallel_for(cfg.replicates, cfg.workers, [&](int r) {
        const std::uint64_t seed_r = mix_seed(cfg.seed, kRepTag, (std::uint64_t)r);
        const PathSample p = simulate_path(cfg.model, cfg.n, cfg.m, seed_r);
        const std::vector<double> coarse = p.coarse_values();

        // fine-grid estimates stand in for the unobservable true values
        const double l_ref = estimate_local_time(p.fine, sigma, 1.0, 0.0).value;
        const double o_ref = estimate_occupation(p.fine, sigma, 1.0, 0.0).value;

        const double l_cond = estimate_local_time(coarse, sigma, 1.0, 0.0).value;
        const double l_base = baseline_local_time(coarse, 1.0, 0.0).value;
        const double l_alt = estimate_local_time_alt(coarse, sigma, 1.0, 0.0).value;
        const double o_cond = estimate_occupation(coarse, sigma, 1.0, 0.0).value;
        const double o_base = baseline_occupation(coarse, 1.0, 0.0).value;

        // limit laws sampled by attaching an independent normal to the
        // reference local time
        Rng zl(mix_seed(seed_r, kLimLTag));
        Rng zo(mix_seed(seed_r, kLimOTag));
        const double l_lim = std::sqrt(cs.v_l2 * l_ref / sigma) * zl.normal();
        const double o_lim = std::sqrt(cs.v_o2 * sigma * l_ref) * zo.normal();

        s.variates[(std::size_t)r] = {l_lim,
                                      r14 * (l_ref - l_cond),
                                      r14 * (l_ref - l_base),
                                      r14 * (l_ref - l_alt),
                                      o_lim,
                                      r34 * (o_ref - o_cond),
                                      r34 * (o_ref - o_base)};
    });

    add_rows(s);
    const auto var_of = [&](const char* c) { return variance(column_of(s, c)); };
    s.scalars["var_ratio_local_baseline"] = var_of("L_base") / var_of("L_cond");
    s.scalars["var_ratio_local_altkernel"] = var_of("L_alt") / var_of("L_cond");
    s.scalars["var_ratio_occupation_baseline"] = var_of("O_base") / var_of("O_cond");
    s.scalars["const_ratio_altkernel"] = cs.v_alt2 / cs.v_l2;
    s.scalars["v_l2"] = cs.v_l2;
    s.scalars["v_o2"] = cs.v_o2;
    s.scalars["v_alt2"] = cs.v_alt2;
    s.figures.push_back(kde_figure("figure5", s, {"L_limit", "L_cond", "L_base"}, s.scalars));
    s.figures.push_back(kde_figure("figure6", s, {"O_limit", "O_cond", "O_base"}, s.scalars));
    return s;
}

ExperimentSummary run_figure3(const ExperimentConfig& cfg) {
    const CondSupLaw law(cfg.model);

    ExperimentSummary s;
    s.experiment = cfg.experiment;
    s.seed = cfg.seed;
    s.replicates = cfg.replicates;

    // panel (a): the conditional distribution surface
    FigureData surf;
    surf.name = "figure3";
    surf.columns = {"x", "y", "F"};
    for (int xi = 1; xi <= 30; ++xi) {
        const double x = 0.1 * xi;
        for (int yi = -15; yi <= 15; ++yi) {
            const double y = 0.2 * yi;
            surf.rows.push_back({x, y, law.F(x, y)});
        }
    }
    s.figures.push_back(std::move(surf));

    // panel (b): sample overshoot survival curves 1 - H(x)
    FigureData curves;
    curves.name = "figure3_h";
    curves.columns = {"x"};
    for (int r = 0; r < cfg.replicates; ++r)
        curves.columns.push_back("curve" + std::to_string(r + 1));
    std::vector<LimitDraw> draws;
    for (int r = 0; r < cfg.replicates; ++r)
        draws.push_back(sample_prelimit(cfg.model, cfg.n, cfg.m, cfg.window_k,
                                        mix_seed(cfg.seed, kRepTag, (std::uint64_t)r)));
    for (int xi = 0; xi <= 60; ++xi) {
        const double x = 0.05 * xi;
        std::vector<double> row{x};
        for (const auto& d : draws) row.push_back(1.0 - limit_H(law, d, x));
        curves.rows.push_back(std::move(row));
    }
    s.figures.push_back(std::move(curves));
    return s;
}

ExperimentSummary run_experiment(const ExperimentConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::string base = parent_experiment(cfg.experiment);
    ExperimentSummary s;
    if (base == "table1")
        s = run_table1(cfg);
    else if (base == "table2")
        s = run_table2(cfg);
    else if (base == "localocc")
        s = run_localocc(cfg);
    else if (base == "figure3")
        s = run_figure3(cfg);
    else
        throw BadArgument("unknown experiment id: " + cfg.experiment);

    if (cfg.experiment.rfind("figure", 0) == 0 && base != "figure3") {
        // keep only the figure that was asked for
        std::vector<FigureData> kept;
        for (auto& f : s.figures)
            if (f.name == cfg.experiment) kept.push_back(std::move(f));
        s.figures = std::move(kept);
    }
    s.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!cfg.out_dir.empty()) persist_experiment(cfg, s);
    return s;
}

// ---------------- persistence ----------------

std::string summary_to_json(const ExperimentSummary& s) {
    json j;
    j["experiment"] = s.experiment;
    j["seed"] = s.seed;
    j["replicates"] = s.replicates;
    j["columns"] = s.columns;
    json rows = json::array();
    for (const auto& r : s.rows) {
        json jr;
        jr["name"] = r.name;
        jr["rmse"] = r.rmse;
        jr["mae"] = r.mae;
        jr["ci95"] = r.ci95;
        jr["mean_error"] = r.mean_error;
        jr["variance"] = r.variance;
        rows.push_back(std::move(jr));
    }
    j["rows"] = std::move(rows);
    json sc;
    for (const auto& [k, v] : s.scalars) sc[k] = v;  // std::map: sorted, stable
    j["scalars"] = std::move(sc);
    json figs = json::array();
    for (const auto& f : s.figures) figs.push_back(f.name);
    j["figures"] = std::move(figs);
    return j.dump(2) + "\n";
}

namespace {

void write_text(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + p.string());
    out << text;
    if (!out) throw IoError("write failed: " + p.string());
}

}  // namespace

void persist_experiment(const ExperimentConfig& cfg, const ExperimentSummary& s) {
    namespace fs = std::filesystem;
    const fs::path dir(cfg.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());

    write_text(dir / "config.json", config_to_json(cfg));
    write_text(dir / "summary.json", summary_to_json(s));

    if (!s.variates.empty()) {
        CsvTable t;
        t.header = s.columns;
        t.rows = s.variates;
        write_csv((dir / "variates.csv").string(), t);
    }
    for (const auto& f : s.figures) {
        CsvTable t;
        t.header = f.columns;
        t.rows = f.rows;
        write_csv((dir / (f.name + ".csv")).string(), t);
    }

    json info;
    info["runtime_seconds"] = s.runtime_seconds;
    info["workers"] = cfg.workers;
    write_text(dir / "run_info.json", info.dump(2) + "\n");
}

}  // namespace levyopt
