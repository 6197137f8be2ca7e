#pragma once

#include <vector>

#include "stbc/channel.hpp"
#include "stbc/linalg.hpp"

namespace stbc {

struct PatternViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Triangularized detection problem: argmin_s ||y' - R s||^2.
struct ReducedSystem {
    RMat r;                       // 2K x 2K upper triangular, nonnegative diagonal
    std::vector<double> y_prime;  // 2K

    int dim() const { return r.rows; }
};

/// Node counting convention: a node is any partial assignment whose
/// partial metric gets computed, pruned ones included; leaves are full
/// assignments whose final metric is evaluated.
struct DecodeOutcome {
    std::vector<double> s_hat;  // PAM coordinates
    double metric = 0.0;
    long nodes_visited = 0;
    long leaves_evaluated = 0;
};

ReducedSystem reduce(const RealModel& model);

/// Largest off-pattern |R| entry: entries R(i,j), i < j < orth_count must
/// vanish (orth_count = dim for a fully diagonal contract).
double pattern_max_violation(const RMat& r, int orth_count);

/// True iff R keeps its zero pattern (orthogonal block diagonal) over
/// `trials` random channel draws.
bool r_pattern(const CodeDef& code, int orth_count, int trials, int nr, RngStream& rng);

/// Closed-form nearest point on the odd-integer PAM axis with clipping.
double pam_slice(double z, double r_diag, int M);

/// Enumerates the M^2 assignments of the four tail coordinates and slices
/// the six orthogonal ones per assignment. Requires the 10-dim reduced
/// system of the rate-5/4 code.
DecodeOutcome conditional_ml(const ReducedSystem& sys, int M);

/// Depth-first Schnorr-Euchner sphere decoder with infinite initial radius.
/// slicer_levels = 0: plain decoder over all levels; 6: the bottom six
/// levels are resolved by PAM slicing given the tail assignment.
DecodeOutcome sphere_decode(const ReducedSystem& sys, int M, int slicer_levels);

/// Full enumeration over all M^K complex-symbol assignments. Guarded to
/// M^K <= 2^20.
DecodeOutcome exhaustive_ml(const ReducedSystem& sys, int M);

/// Symbol-by-symbol slicing for a diagonal R (COD decoding).
DecodeOutcome slice_all(const ReducedSystem& sys, int M);

}  // namespace stbc
