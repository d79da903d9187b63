#include "levyopt/levyopt.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "core/cond_law.hpp"
#include "core/errors.hpp"
#include "core/harness.hpp"
#include "core/limit_sampler.hpp"
#include "core/local_occupation.hpp"
#include "core/model.hpp"
#include "core/param_estimators.hpp"
#include "core/path_sim.hpp"
#include "core/special.hpp"
#include "core/stable_law.hpp"
#include "core/sup_estimators.hpp"

// ---------------- handle types ----------------

struct levyopt_model {
    levyopt::ModelSpec spec;
    mutable std::shared_ptr<const levyopt::StableDensity> dens;
    mutable std::mutex mu;

    const levyopt::StableDensity& density() const {
        std::lock_guard<std::mutex> lock(mu);
        if (!dens) dens = std::make_shared<levyopt::StableDensity>(spec.stable);
        return *dens;
    }
};

struct levyopt_cond_law {
    levyopt::CondSupLaw law;
};

struct levyopt_path {
    levyopt::PathSample sample;
};

// ---------------- error plumbing ----------------

namespace {

thread_local std::string t_error;

template <class F>
levyopt_status guard(F&& fn) noexcept {
    t_error.clear();
    try {
        fn();
        return LEVYOPT_OK;
    } catch (const levyopt::BadArgument& e) {
        t_error = e.what();
        return LEVYOPT_BAD_ARGUMENT;
    } catch (const levyopt::IllegalTriplet& e) {
        t_error = e.what();
        return LEVYOPT_ILLEGAL_TRIPLET;
    } catch (const levyopt::UnsupportedModel& e) {
        t_error = e.what();
        return LEVYOPT_UNSUPPORTED_MODEL;
    } catch (const levyopt::GridMismatch& e) {
        t_error = e.what();
        return LEVYOPT_GRID_MISMATCH;
    } catch (const levyopt::DegeneratePath& e) {
        t_error = e.what();
        return LEVYOPT_DEGENERATE_PATH;
    } catch (const levyopt::MeanUndefined& e) {
        t_error = e.what();
        return LEVYOPT_MEAN_UNDEFINED;
    } catch (const levyopt::TooFewSamples& e) {
        t_error = e.what();
        return LEVYOPT_TOO_FEW_SAMPLES;
    } catch (const levyopt::DegenerateEstimate& e) {
        t_error = e.what();
        return LEVYOPT_DEGENERATE_ESTIMATE;
    } catch (const levyopt::IoError& e) {
        t_error = e.what();
        return LEVYOPT_IO_ERROR;
    } catch (const std::exception& e) {
        t_error = e.what();
        return LEVYOPT_INTERNAL_ERROR;
    } catch (...) {
        t_error = "unknown failure";
        return LEVYOPT_INTERNAL_ERROR;
    }
}

void require(bool cond, const char* msg) {
    if (!cond) throw levyopt::BadArgument(msg);
}

std::vector<double> to_vec(const double* obs, int count) {
    require(obs != nullptr, "observations must not be NULL");
    require(count >= 1, "count must be >= 1");
    return std::vector<double>(obs, obs + count);
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

const levyopt::ModelSpec& spec_of(const levyopt_model* m) {
    require(m != nullptr, "model must not be NULL");
    return m->spec;
}

}  // namespace

extern "C" {

const char* levyopt_version(void) { return "1.0.0"; }

const char* levyopt_last_error(void) { return t_error.c_str(); }

// ---------------- models ----------------

levyopt_status levyopt_model_bm(double sigma, levyopt_model** out) {
    return guard([&] {
        require(out != nullptr, "out must not be NULL");
        auto m = std::make_unique<levyopt_model>();
        m->spec = levyopt::make_bm(sigma);
        *out = m.release();
    });
}

levyopt_status levyopt_model_stable(double alpha, double rho, double lambda,
                                    levyopt_model** out) {
    return guard([&] {
        require(out != nullptr, "out must not be NULL");
        auto m = std::make_unique<levyopt_model>();
        m->spec = levyopt::make_stable_triplet(alpha, rho, lambda);
        *out = m.release();
    });
}

levyopt_status levyopt_model_stable_skew(double alpha, double beta, double scale,
                                         levyopt_model** out) {
    return guard([&] {
        require(out != nullptr, "out must not be NULL");
        auto m = std::make_unique<levyopt_model>();
        m->spec = levyopt::make_stable_skew(alpha, beta, scale);
        *out = m.release();
    });
}

void levyopt_model_free(levyopt_model* m) { delete m; }

levyopt_status levyopt_model_describe(const levyopt_model* m, levyopt_model_info* out) {
    return guard([&] {
        const auto& spec = spec_of(m);
        require(out != nullptr, "out must not be NULL");
        levyopt_model_info info{};
        if (spec.is_bm()) {
            info.is_bm = 1;
            info.sigma = spec.sigma;
            info.alpha = 2.0;
            info.rho = 0.5;
            info.beta = 0.0;
            // alpha = 2 stable analogue: Var = 2 scale^2, E[log|X_1|] known
            info.scale = spec.sigma / levyopt::kSqrt2;
            info.lambda = std::log(spec.sigma) - 0.63518142273073222915;
        } else {
            info.is_bm = 0;
            info.sigma = 0.0;
            info.alpha = spec.stable.alpha;
            info.rho = spec.stable.rho;
            info.lambda = spec.stable.lambda;
            info.beta = spec.stable.beta;
            info.scale = spec.stable.scale;
        }
        *out = info;
    });
}

// ---------------- marginal law ----------------

levyopt_status levyopt_marginal_pdf(const levyopt_model* m, double x, double* out) {
    return guard([&] {
        const auto& spec = spec_of(m);
        require(out != nullptr, "out must not be NULL");
        *out = spec.is_bm() ? levyopt::norm_pdf(x / spec.sigma) / spec.sigma
                            : m->density().density(x);
    });
}

levyopt_status levyopt_marginal_cdf(const levyopt_model* m, double x, double* out) {
    return guard([&] {
        const auto& spec = spec_of(m);
        require(out != nullptr, "out must not be NULL");
        *out = spec.is_bm() ? levyopt::norm_cdf(x / spec.sigma) : m->density().cdf(x);
    });
}

levyopt_status levyopt_marginal_quantile(const levyopt_model* m, double p, double* out) {
    return guard([&] {
        const auto& spec = spec_of(m);
        require(out != nullptr, "out must not be NULL");
        require(p > 0.0 && p < 1.0, "p must lie in (0,1)");
        *out = spec.is_bm() ? spec.sigma * levyopt::norm_quantile(p)
                            : m->density().quantile(p);
    });
}

levyopt_status levyopt_log_moment(const levyopt_model* m, double* out) {
    return guard([&] {
        const auto& spec = spec_of(m);
        require(out != nullptr, "out must not be NULL");
        *out = spec.is_bm() ? std::log(spec.sigma) - 0.63518142273073222915
                            : spec.stable.lambda;
    });
}

levyopt_status levyopt_density_table(const levyopt_model* m, double** xs, double** fs,
                                     int* count) {
    return guard([&] {
        const auto& spec = spec_of(m);
        require(xs && fs && count, "output pointers must not be NULL");
        if (spec.is_bm())
            throw levyopt::UnsupportedModel("density table is defined for stable models");
        const auto pts = m->density().table_points();
        double* bx = static_cast<double*>(std::malloc(pts.size() * sizeof(double)));
        double* bf = static_cast<double*>(std::malloc(pts.size() * sizeof(double)));
        if (!bx || !bf) {
            std::free(bx);
            std::free(bf);
            throw std::bad_alloc();
        }
        for (std::size_t i = 0; i < pts.size(); ++i) {
            bx[i] = pts[i].first;
            bf[i] = pts[i].second;
        }
        *xs = bx;
        *fs = bf;
        *count = (int)pts.size();
    });
}

void levyopt_buffer_free(double* buf) { std::free(buf); }

// ---------------- conditional supremum law ----------------

levyopt_status levyopt_cond_law_new(const levyopt_model* m, levyopt_cond_law** out) {
    return guard([&] {
        const auto& spec = spec_of(m);
        require(out != nullptr, "out must not be NULL");
        *out = new levyopt_cond_law{levyopt::CondSupLaw(spec)};
    });
}

void levyopt_cond_law_free(levyopt_cond_law* law) { delete law; }

levyopt_status levyopt_cond_cdf(const levyopt_cond_law* law, double x, double y, double* out) {
    return guard([&] {
        require(law && out, "law and out must not be NULL");
        *out = law->law.F(x, y);
    });
}

levyopt_status levyopt_cond_survival(const levyopt_cond_law* law, double x, double y,
                                     double* out) {
    return guard([&] {
        require(law && out, "law and out must not be NULL");
        *out = law->law.survival(x, y);
    });
}

// ---------------- path simulation ----------------

levyopt_status levyopt_simulate_path(const levyopt_model* m, int n, int refine,
                                     uint64_t seed, levyopt_path** out) {
    return guard([&] {
        const auto& spec = spec_of(m);
        require(out != nullptr, "out must not be NULL");
        require(n >= 1 && refine >= 1, "n and refine must be >= 1");
        *out = new levyopt_path{levyopt::simulate_path(spec, n, refine, seed)};
    });
}

void levyopt_path_free(levyopt_path* p) { delete p; }

levyopt_status levyopt_path_size(const levyopt_path* p, int* n, int* refine) {
    return guard([&] {
        require(p != nullptr, "path must not be NULL");
        if (n) *n = p->sample.n;
        if (refine) *refine = p->sample.refine;
    });
}

levyopt_status levyopt_path_coarse(const levyopt_path* p, double* buf) {
    return guard([&] {
        require(p && buf, "path and buf must not be NULL");
        for (int i = 0; i <= p->sample.n; ++i) buf[i] = p->sample.coarse(i);
    });
}

levyopt_status levyopt_path_fine(const levyopt_path* p, double* buf) {
    return guard([&] {
        require(p && buf, "path and buf must not be NULL");
        std::memcpy(buf, p->sample.fine.data(), p->sample.fine.size() * sizeof(double));
    });
}

levyopt_status levyopt_path_sup_proxy(const levyopt_path* p, double* out) {
    return guard([&] {
        require(p && out, "path and out must not be NULL");
        *out = p->sample.sup_proxy();
    });
}

levyopt_status levyopt_mean_gap(const levyopt_model* m, double* out) {
    return guard([&] {
        const auto& spec = spec_of(m);
        require(out != nullptr, "out must not be NULL");
        *out = levyopt::mean_discretization_gap(spec);
    });
}

// ---------------- supremum recovery ----------------

levyopt_status levyopt_sup_estimate(const levyopt_model* m, const double* obs, int count,
                                    int window_k, levyopt_sup_result* out) {
    return guard([&] {
        const auto& spec = spec_of(m);
        require(out != nullptr, "out must not be NULL");
        require(window_k >= 0, "window_k must be >= 0");
        const auto v = to_vec(obs, count);
        const levyopt::CondSupLaw law(spec);
        const levyopt::SupReport r = levyopt::sup_report(law, v, window_k);
        *out = {r.grid_max, r.mean, r.median, r.shift, r.integral_tail, r.argmax, r.window_k};
    });
}

// ---------------- limit sampling ----------------

namespace {

levyopt_variates to_c(const levyopt::LimitVariates& v) {
    return {v.v, v.v_mean, v.v_med, v.v_shift, v.v_mean_k};
}

}  // namespace

levyopt_status levyopt_limit_variates(const levyopt_model* m, int K, int window_k,
                                      uint64_t seed, levyopt_variates* out) {
    return guard([&] {
        const auto& spec = spec_of(m);
        require(out != nullptr, "out must not be NULL");
        require(K >= 1, "K must be >= 1");
        require(window_k >= 1, "window_k must be >= 1");
        if (!spec.is_bm())
            throw levyopt::UnsupportedModel(
                "closed-form limit draws exist for the Brownian model only; use "
                "levyopt_prelimit_variates for stable models");
        const levyopt::CondSupLaw law(spec);
        levyopt::RecoveryConfig rec = levyopt::default_recovery(spec);
        rec.window_k = window_k;
        const auto d = levyopt::sample_bessel_limit(spec.sigma, K, seed);
        *out = to_c(levyopt::recover_variates(law, d, rec));
    });
}

levyopt_status levyopt_prelimit_variates(const levyopt_model* m, int n, int refine, int k,
                                         int window_k, uint64_t seed, levyopt_variates* out) {
    return guard([&] {
        const auto& spec = spec_of(m);
        require(out != nullptr, "out must not be NULL");
        require(n >= 1 && refine >= 1, "n and refine must be >= 1");
        require(k >= 1, "k must be >= 1");
        require(window_k >= 1, "window_k must be >= 1");
        const levyopt::CondSupLaw law(spec);
        levyopt::RecoveryConfig rec = levyopt::default_recovery(spec);
        rec.window_k = window_k;
        const auto d = levyopt::sample_prelimit(spec, n, refine, k, seed);
        *out = to_c(levyopt::recover_variates(law, d, rec));
    });
}

// ---------------- local time and occupation time ----------------

namespace {

double bm_sigma(const levyopt::ModelSpec& spec) {
    if (!spec.is_bm())
        throw levyopt::UnsupportedModel(
            "local/occupation estimators are defined for Brownian models");
    return spec.sigma;
}

}  // namespace

levyopt_status levyopt_local_time(const levyopt_model* m, const double* obs, int count,
                                  double t, double x, int strict, double* out) {
    return guard([&] {
        const double sigma = bm_sigma(spec_of(m));
        require(out != nullptr, "out must not be NULL");
        *out = levyopt::estimate_local_time(to_vec(obs, count), sigma, t, x, strict != 0).value;
    });
}

levyopt_status levyopt_occupation(const levyopt_model* m, const double* obs, int count,
                                  double t, double x, int strict, double* out) {
    return guard([&] {
        const double sigma = bm_sigma(spec_of(m));
        require(out != nullptr, "out must not be NULL");
        *out = levyopt::estimate_occupation(to_vec(obs, count), sigma, t, x, strict != 0).value;
    });
}

levyopt_status levyopt_local_time_altkernel(const levyopt_model* m, const double* obs,
                                            int count, double t, double x, int strict,
                                            double* out) {
    return guard([&] {
        const double sigma = bm_sigma(spec_of(m));
        require(out != nullptr, "out must not be NULL");
        *out =
            levyopt::estimate_local_time_alt(to_vec(obs, count), sigma, t, x, strict != 0).value;
    });
}

levyopt_status levyopt_baseline_local_time(const double* obs, int count, double t, double x,
                                           int strict, double* out) {
    return guard([&] {
        require(out != nullptr, "out must not be NULL");
        *out = levyopt::baseline_local_time(to_vec(obs, count), t, x, strict != 0).value;
    });
}

levyopt_status levyopt_baseline_occupation(const double* obs, int count, double t, double x,
                                           int strict, double* out) {
    return guard([&] {
        require(out != nullptr, "out must not be NULL");
        *out = levyopt::baseline_occupation(to_vec(obs, count), t, x, strict != 0).value;
    });
}

levyopt_status levyopt_asymptotic_constants(double* v_l2, double* v_o2, double* v_alt2) {
    return guard([&] {
        const auto c = levyopt::asymptotic_constants();
        if (v_l2) *v_l2 = c.v_l2;
        if (v_o2) *v_o2 = c.v_o2;
        if (v_alt2) *v_alt2 = c.v_alt2;
    });
}

// ---------------- parameter estimation ----------------

levyopt_status levyopt_estimate_sigma(const double* obs, int count, double* sigma) {
    return guard([&] {
        require(sigma != nullptr, "sigma must not be NULL");
        *sigma = levyopt::estimate_sigma(to_vec(obs, count));
    });
}

levyopt_status levyopt_estimate_stable(const double* obs, int count, double q,
                                       levyopt_stable_estimate* out) {
    return guard([&] {
        require(out != nullptr, "out must not be NULL");
        const auto e = levyopt::estimate_stable_triplet(to_vec(obs, count), q);
        out->alpha = e.stable.alpha;
        out->rho = e.stable.rho;
        out->lambda = e.stable.lambda;
        out->alpha_raw = e.alpha_raw;
        out->q = e.q;
        out->truncated = e.truncation_applied ? 1 : 0;
        out->n = e.n;
    });
}

// ---------------- experiments ----------------

levyopt_status levyopt_default_config(const char* experiment, char** json_out) {
    return guard([&] {
        require(experiment && json_out, "experiment and json_out must not be NULL");
        *json_out = dup_string(levyopt::config_to_json(levyopt::default_config(experiment)));
    });
}

levyopt_status levyopt_run_experiment(const char* config_json, char** summary_json_out) {
    return guard([&] {
        require(config_json && summary_json_out,
                "config_json and summary_json_out must not be NULL");
        const auto cfg = levyopt::config_from_json(config_json);
        const auto summary = levyopt::run_experiment(cfg);
        *summary_json_out = dup_string(levyopt::summary_to_json(summary));
    });
}

void levyopt_string_free(char* s) { std::free(s); }

}  // extern "C"
