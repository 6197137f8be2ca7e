#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stbc/channel.hpp"
#include "stbc/codes.hpp"
#include "stbc/detector.hpp"

namespace stbc {

struct ConfigInvalid : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MinDetResult {
    double value = 0.0;
    std::vector<double> argmin_delta;  // the delta-s attaining the minimum
    int grid_bound = 0;
    long evaluated = 0;
};

/// Exhaustive minimum of |det X(ds)| over nonzero ds with ds_i = 2 n_i,
/// |n_i| <= n_max, halved by the ds <-> -ds symmetry. Single-coordinate
/// shells go first; when early_exit_bound is set the search stops as soon
/// as the running minimum reaches it.
MinDetResult min_det(const CodeDef& code, int n_max,
                     std::optional<double> early_exit_bound = std::nullopt);

/// Per-antenna PAPR in dB. Peak by enumerating the symbols entering each
/// matrix entry; average power exact from per-symbol moments.
std::vector<double> papr_per_antenna(const CodeDef& code, const ConstellationSpec& con);
double papr_db(const CodeDef& code, const ConstellationSpec& con);

/// Worst-case leaves for the optimal decoder: 1 for the pure-slicing COD,
/// M^2 for the rate-5/4 code.
long worst_case_count(const CodeDef& code, int M);

enum class Decoder { Auto, SphereSlicer, SpherePlain, Conditional, Exhaustive, SliceAll };

struct SimConfig {
    std::string code_name = "new54";
    int M = 4;
    int nr = 2;
    std::vector<double> snr_db;
    uint64_t seed = 1;
    long max_trials = 10'000'000;
    long target_errors = 100;
    int workers = 0;  // 0 = hardware concurrency
    Decoder decoder = Decoder::Auto;
};

struct SimPoint {
    double snr_db = 0.0;
    long trials = 0;
    long errors = 0;
    double cer = 0.0;
    double avg_nodes = 0.0;
};

struct SimReport {
    std::vector<SimPoint> points;
    uint64_t seed = 0;
};

/// Monte Carlo CER sweep; per point runs until target_errors codeword
/// errors or max_trials. Bit-identical for a fixed seed regardless of
/// worker count.
SimReport run_cer(const SimConfig& cfg);

std::string report_to_csv(const SimReport& rep);

}  // namespace stbc
