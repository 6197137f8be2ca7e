#include "stbc/detector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace stbc {
namespace {

// Metrics within this slack are treated as ties and resolved by the
// lexicographically smallest PAM vector, so all decoders agree.
constexpr double kMetricTol = 1e-9;
constexpr double kPatternTol = 1e-9;

bool lex_less(const std::vector<double>& a, const std::vector<double>& b) {
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

bool candidate_better(double m, const std::vector<double>& s,
                      double best_m, const std::vector<double>& best_s) {
    if (best_s.empty()) return true;
    if (m < best_m - kMetricTol) return true;
    return m < best_m + kMetricTol && lex_less(s, best_s);
}

}  // namespace

ReducedSystem reduce(const RealModel& model) {
    const ThinQR qr = thin_qr(model.h);
    ReducedSystem sys;
    sys.r = qr.r;
    sys.y_prime = transpose(qr.q1) * model.y;
    return sys;
}

double pattern_max_violation(const RMat& r, int orth_count) {
    double worst = 0.0;
    for (int i = 0; i < orth_count; ++i)
        for (int j = i + 1; j < orth_count; ++j)
            worst = std::max(worst, std::abs(r(i, j)));
    return worst;
}

bool r_pattern(const CodeDef& code, int orth_count, int trials, int nr, RngStream& rng) {
    for (int t = 0; t < trials; ++t) {
        const ChannelRealization ch = sample_channel(code.Nt, nr, 0.0, rng);
        const CMat eq = equivalent_channel(code, ch.H);
        const ThinQR qr = thin_qr(check(eq));
        if (pattern_max_violation(qr.r, orth_count) > kPatternTol) return false;
    }
    return true;
}

double pam_slice(double z, double r_diag, int M) {
    const double ratio = z / r_diag;
    const double sgn = (ratio >= 0.0) ? 1.0 : -1.0;
    const double root = std::round(std::sqrt(static_cast<double>(M)));
    const double mag = std::abs(2.0 * std::round((ratio - 1.0) / 2.0) + 1.0);
    return sgn * std::min(mag, root - 1.0);
}

DecodeOutcome conditional_ml(const ReducedSystem& sys, int M) {
    const int dim = sys.dim();
    if (dim != 10)
        throw std::invalid_argument("conditional_ml: expects the 10-dim rate-5/4 system");
    if (pattern_max_violation(sys.r, 6) > kPatternTol)
        throw PatternViolation("conditional_ml: R breaks the orthogonal zero pattern");

    const ConstellationSpec con(M);
    const int nlev = con.pam_levels();
    const RMat& r = sys.r;

    DecodeOutcome out;
    out.metric = std::numeric_limits<double>::infinity();
    std::vector<double> x(dim, 0.0);

    int idx[4] = {0, 0, 0, 0};  // odometer over (x7, x8, x9, x10)
    const long total = static_cast<long>(nlev) * nlev * nlev * nlev;  // == M^2
    for (long it = 0; it < total; ++it) {
        for (int k = 0; k < 4; ++k) x[6 + k] = con.pam_axis[idx[k]];

        double metric = 0.0;
        for (int i = 9; i >= 6; --i) {
            double t = sys.y_prime[i];
            for (int j = i + 1; j < 10; ++j) t -= r(i, j) * x[j];
            t -= r(i, i) * x[i];
            metric += t * t;
        }
        for (int i = 5; i >= 0; --i) {
            double z = sys.y_prime[i];
            for (int j = 6; j < 10; ++j) z -= r(i, j) * x[j];
            x[i] = pam_slice(z, r(i, i), M);
            const double t = z - r(i, i) * x[i];
            metric += t * t;
        }
        if (candidate_better(metric, x, out.metric, out.s_hat)) {
            out.metric = std::min(out.metric, metric);
            out.s_hat = x;
        }

        for (int k = 3; k >= 0; --k) {
            if (++idx[k] < nlev) break;
            idx[k] = 0;
        }
    }
    out.leaves_evaluated = total;
    out.nodes_visited = total;
    return out;
}

DecodeOutcome sphere_decode(const ReducedSystem& sys, int M, int slicer_levels) {
    const int dim = sys.dim();
    if (slicer_levels != 0 && slicer_levels != 6)
        throw std::invalid_argument("sphere_decode: slicer_levels must be 0 or 6");
    if (slicer_levels == 6) {
        if (dim != 10)
            throw std::invalid_argument("sphere_decode: slicer pruning needs the 10-dim system");
        if (pattern_max_violation(sys.r, 6) > kPatternTol)
            throw PatternViolation("sphere_decode: R breaks the orthogonal zero pattern");
    }

    const ConstellationSpec con(M);
    const int nlev = con.pam_levels();
    const RMat& r = sys.r;
    const int bottom = slicer_levels;

    DecodeOutcome out;
    out.metric = std::numeric_limits<double>::infinity();

    std::vector<double> x(dim, 0.0);
    std::vector<double> t(dim, 0.0);     // y'_i minus contributions from levels above
    std::vector<double> base(dim, 0.0);  // accumulated metric of the parent
    std::vector<std::vector<int>> order(dim, std::vector<int>(nlev));
    std::vector<int> pos(dim, 0);

    auto enter_level = [&](int i, double parent_metric) {
        double ti = sys.y_prime[i];
        for (int j = i + 1; j < dim; ++j) ti -= r(i, j) * x[j];
        t[i] = ti;
        base[i] = parent_metric;
        // Schnorr-Euchner order: children by distance to the unconstrained
        // minimizer, smaller symbol first on ties.
        const double c = ti / r(i, i);
        auto& ord = order[i];
        std::iota(ord.begin(), ord.end(), 0);
        std::sort(ord.begin(), ord.end(), [&](int p, int q) {
            const double dp = std::abs(c - con.pam_axis[p]);
            const double dq = std::abs(c - con.pam_axis[q]);
            if (dp != dq) return dp < dq;
            return con.pam_axis[p] < con.pam_axis[q];
        });
        pos[i] = 0;
    };

    int i = dim - 1;
    enter_level(i, 0.0);
    while (true) {
        if (pos[i] >= nlev) {  // level exhausted: backtrack
            if (++i >= dim) break;
            continue;
        }
        const double xv = con.pam_axis[order[i][pos[i]++]];
        const double term = t[i] - r(i, i) * xv;
        const double pm = base[i] + term * term;
        ++out.nodes_visited;
        if (!out.s_hat.empty() && pm >= out.metric + kMetricTol) {
            // SE order is nondecreasing in the partial metric, so every
            // remaining sibling is outside the sphere too.
            pos[i] = nlev;
            continue;
        }
        x[i] = xv;
        if (i == bottom) {
            double full = pm;
            for (int k = bottom - 1; k >= 0; --k) {
                double z = sys.y_prime[k];
                for (int j = bottom; j < dim; ++j) z -= r(k, j) * x[j];
                x[k] = pam_slice(z, r(k, k), M);
                const double d = z - r(k, k) * x[k];
                full += d * d;
            }
            ++out.leaves_evaluated;
            if (candidate_better(full, x, out.metric, out.s_hat)) {
                out.metric = std::min(out.metric, full);
                out.s_hat = x;
            }
        } else {
            --i;
            enter_level(i, pm);
        }
    }
    return out;
}

DecodeOutcome exhaustive_ml(const ReducedSystem& sys, int M) {
    const int dim = sys.dim();
    const ConstellationSpec con(M);
    const int nlev = con.pam_levels();

    double logn = dim * std::log2(static_cast<double>(nlev));
    if (logn > 20.0) throw TooLarge("exhaustive_ml: M^K exceeds 2^20");
    long total = 1;
    for (int i = 0; i < dim; ++i) total *= nlev;

    const RMat& r = sys.r;
    DecodeOutcome out;
    out.metric = std::numeric_limits<double>::infinity();

    std::vector<int> idx(dim, 0);
    std::vector<double> x(dim, 0.0);
    for (int i = 0; i < dim; ++i) x[i] = con.pam_axis[0];
    for (long it = 0; it < total; ++it) {
        double metric = 0.0;
        for (int i = dim - 1; i >= 0; --i) {
            double t = sys.y_prime[i];
            for (int j = i; j < dim; ++j) t -= r(i, j) * x[j];
            metric += t * t;
        }
        if (candidate_better(metric, x, out.metric, out.s_hat)) {
            out.metric = std::min(out.metric, metric);
            out.s_hat = x;
        }
        for (int k = dim - 1; k >= 0; --k) {  // x[0] slowest: lexicographic order
            if (++idx[k] < nlev) { x[k] = con.pam_axis[idx[k]]; break; }
            idx[k] = 0;
            x[k] = con.pam_axis[0];
        }
    }
    out.leaves_evaluated = total;
    out.nodes_visited = total;
    return out;
}

DecodeOutcome slice_all(const ReducedSystem& sys, int M) {
    const int dim = sys.dim();
    DecodeOutcome out;
    out.s_hat.resize(dim);
    for (int i = 0; i < dim; ++i) {
        out.s_hat[i] = pam_slice(sys.y_prime[i], sys.r(i, i), M);
        const double d = sys.y_prime[i] - sys.r(i, i) * out.s_hat[i];
        out.metric += d * d;
    }
    out.nodes_visited = dim;
    out.leaves_evaluated = 1;
    return out;
}

}  // namespace stbc
