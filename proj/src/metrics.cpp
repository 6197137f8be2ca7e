#include "stbc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <thread>

namespace stbc {
namespace {

bool advance(std::vector<int>& n, int n_max) {
    for (size_t k = n.size(); k-- > 0;) {
        if (++n[k] <= n_max) return true;
        n[k] = -n_max;
    }
    return false;
}

int first_nonzero_sign(const std::vector<int>& n) {
    for (int v : n)
        if (v != 0) return v > 0 ? 1 : -1;
    return 0;
}

}  // namespace

MinDetResult min_det(const CodeDef& code, int n_max,
                     std::optional<double> early_exit_bound) {
    const int dim = code.dim();
    MinDetResult res;
    res.grid_bound = n_max;
    res.value = std::numeric_limits<double>::infinity();

    std::vector<double> ds(dim, 0.0);
    auto consider = [&](const std::vector<int>& n) {
        for (int i = 0; i < dim; ++i) ds[i] = 2.0 * n[i];
        const double v = std::abs(det(code.matrix(ds)));
        ++res.evaluated;
        if (v < res.value) {
            res.value = v;
            res.argmin_delta = ds;
        }
    };

    // Single-coordinate shells first: the minimum sits there when the code
    // meets the orthogonal-design ceiling, making the early exit bite
    // immediately.
    std::vector<int> n(dim, 0);
    for (int i = 0; i < dim && !(early_exit_bound && res.value <= *early_exit_bound + 1e-9); ++i) {
        for (int v = 1; v <= n_max; ++v) {
            n[i] = v;
            consider(n);
        }
        n[i] = 0;
    }
    if (early_exit_bound && res.value <= *early_exit_bound + 1e-9) return res;

    std::fill(n.begin(), n.end(), -n_max);
    bool more = true;
    while (more) {
        const std::vector<int> cur = n;
        more = advance(n, n_max);
        if (first_nonzero_sign(cur) <= 0) continue;  // skip zero and the -ds mirror
        consider(cur);
        if (early_exit_bound && res.value <= *early_exit_bound + 1e-9) break;
    }
    return res;
}

std::vector<double> papr_per_antenna(const CodeDef& code, const ConstellationSpec& con) {
    const double ex2 = con.mean_square();
    const int nlev = con.pam_levels();
    std::vector<double> out(code.Nt);

    for (int ant = 0; ant < code.Nt; ++ant) {
        double avg = 0.0;   // sum_t E|X(t,ant)|^2
        double peak = 0.0;
        for (int t = 0; t < code.T; ++t) {
            // Symbols entering this entry and their complex coefficients.
            std::vector<cplx> coef;
            for (const auto& b : code.weights) {
                const cplx c = b(t, ant);
                if (std::abs(c) > 0.0) coef.push_back(c);
                avg += std::norm(c) * ex2;
            }

            // Entries are linear in disjoint symbols, so the peak over the
            // whole codebook is the peak over the few symbols involved.
            long combos = 1;
            for (size_t k = 0; k < coef.size(); ++k) combos *= nlev;
            for (long it = 0; it < combos; ++it) {
                long rem = it;
                cplx v = 0.0;
                for (const cplx& c : coef) {
                    v += c * static_cast<double>(con.pam_axis[rem % nlev]);
                    rem /= nlev;
                }
                peak = std::max(peak, std::norm(v));
            }
        }
        out[ant] = 10.0 * std::log10(peak / (avg / static_cast<double>(code.T)));
    }
    return out;
}

double papr_db(const CodeDef& code, const ConstellationSpec& con) {
    return papr_per_antenna(code, con)[0];
}

long worst_case_count(const CodeDef& code, int M) {
    if (code.name == "cod34") return 1;
    if (code.name == "new54") return static_cast<long>(M) * M;
    throw ConfigInvalid("worst_case_count: unknown code " + code.name);
}

namespace {

struct TrialResult {
    bool error = false;
    long nodes = 0;
};

}  // namespace

SimReport run_cer(const SimConfig& cfg) {
    if (cfg.snr_db.empty()) throw ConfigInvalid("run_cer: empty SNR list");
    if (cfg.M != 4 && cfg.M != 16 && cfg.M != 64)
        throw ConfigInvalid("run_cer: unsupported constellation size");
    if (cfg.nr < 1) throw ConfigInvalid("run_cer: need at least one receive antenna");

    const CodeDef code = code_by_name(cfg.code_name);
    const ConstellationSpec con(cfg.M);
    Decoder dec = cfg.decoder;
    if (dec == Decoder::Auto)
        dec = (code.name == "cod34") ? Decoder::SliceAll : Decoder::SphereSlicer;

    int workers = cfg.workers > 0 ? cfg.workers
                                  : static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;

    auto trial = [&](double noise_var, uint64_t stream_id) -> TrialResult {
        RngStream rng(cfg.seed, stream_id);
        const int dim = code.dim();
        std::vector<double> s(dim);
        for (int i = 0; i < dim; ++i)
            s[i] = con.pam_axis[rng.next_u64() % static_cast<uint64_t>(con.pam_levels())];
        const CMat x = code.matrix(s);

        for (;;) {
            const ChannelRealization ch = sample_channel(code.Nt, cfg.nr, noise_var, rng);
            const CMat y = transmit(x, ch, rng);
            const CMat eq = equivalent_channel(code, ch.H);
            ReducedSystem sys;
            try {
                sys = reduce(real_model(eq, vec(y)));
            } catch (const RankDeficient&) {
                continue;  // degenerate channel draw: resample
            }

            DecodeOutcome out;
            switch (dec) {
                case Decoder::SphereSlicer: out = sphere_decode(sys, cfg.M, 6); break;
                case Decoder::SpherePlain: out = sphere_decode(sys, cfg.M, 0); break;
                case Decoder::Conditional: out = conditional_ml(sys, cfg.M); break;
                case Decoder::Exhaustive: out = exhaustive_ml(sys, cfg.M); break;
                case Decoder::SliceAll: out = slice_all(sys, cfg.M); break;
                case Decoder::Auto: break;
            }
            TrialResult tr;
            tr.nodes = out.nodes_visited;
            tr.error = (out.s_hat != s);
            return tr;
        }
    };

    SimReport rep;
    rep.seed = cfg.seed;
    constexpr long kBatch = 4096;

    for (size_t p = 0; p < cfg.snr_db.size(); ++p) {
        const double snr = cfg.snr_db[p];
        const double noise_var = std::isinf(snr) ? 0.0 : snr_to_noise_var(snr, code, con);

        long trials = 0, errors = 0, nodes = 0;
        while (trials < cfg.max_trials && errors < cfg.target_errors) {
            const long batch = std::min(kBatch, cfg.max_trials - trials);
            std::vector<long> werr(workers, 0), wnodes(workers, 0);
            std::vector<std::thread> pool;
            for (int w = 0; w < workers; ++w) {
                pool.emplace_back([&, w] {
                    long e = 0, nd = 0;
                    for (long t = w; t < batch; t += workers) {
                        const uint64_t stream_id =
                            (static_cast<uint64_t>(p) << 40) + static_cast<uint64_t>(trials + t);
                        const TrialResult tr = trial(noise_var, stream_id);
                        if (tr.error) ++e;
                        nd += tr.nodes;
                    }
                    werr[w] = e;
                    wnodes[w] = nd;
                });
            }
            for (auto& th : pool) th.join();
            for (int w = 0; w < workers; ++w) {
                errors += werr[w];
                nodes += wnodes[w];
            }
            trials += batch;
        }

        SimPoint pt;
        pt.snr_db = snr;
        pt.trials = trials;
        pt.errors = errors;
        pt.cer = trials > 0 ? static_cast<double>(errors) / static_cast<double>(trials) : 0.0;
        pt.avg_nodes = trials > 0 ? static_cast<double>(nodes) / static_cast<double>(trials) : 0.0;
        rep.points.push_back(pt);
    }
    return rep;
}

std::string report_to_csv(const SimReport& rep) {
    std::string out = "snr_db,trials,errors,cer,avg_nodes\n";
    char line[160];
    for (const auto& pt : rep.points) {
        std::snprintf(line, sizeof(line), "%g,%ld,%ld,%.6e,%.6f\n",
                      pt.snr_db, pt.trials, pt.errors, pt.cer, pt.avg_nodes);
        out += line;
    }
    return out;
}

}  // namespace stbc
