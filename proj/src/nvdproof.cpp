#include "stbc/nvdproof.hpp"

#include <cmath>
#include <complex>
#include <cstdlib>
#include <limits>
#include <unordered_map>
#include <unordered_set>

namespace stbc {
namespace {

int64_t sq(int64_t v) { return v * v; }

/// Odometer over [-n_max, n_max]^len. Returns false when wrapped around.
bool advance(std::vector<int64_t>& n, int n_max) {
    for (size_t k = n.size(); k-- > 0;) {
        if (++n[k] <= n_max) return true;
        n[k] = -n_max;
    }
    return false;
}

}  // namespace

DetDecomposition decompose(const DeltaVec& d) {
    int64_t dx[11];
    for (int i = 1; i <= 10; ++i) dx[i] = 2 * d.n[i - 1];

    DetDecomposition out;
    for (int i = 1; i <= 6; ++i) out.sigma1 += sq(dx[i]);
    for (int i = 7; i <= 10; ++i) out.sigma2 += sq(dx[i]);

    out.a[0] = dx[7] * dx[4] - dx[8] * dx[3] + dx[9] * dx[6] - dx[10] * dx[2];
    out.a[1] = dx[7] * dx[6] + dx[8] * dx[2] - dx[9] * dx[4] - dx[10] * dx[3];
    out.a[2] = dx[7] * dx[2] - dx[8] * dx[6] - dx[9] * dx[3] + dx[10] * dx[4];
    out.a[3] = dx[7] * dx[3] + dx[8] * dx[4] + dx[9] * dx[2] + dx[10] * dx[6];
    out.a[4] = dx[7] * dx[1] + dx[8] * dx[5];
    out.a[5] = dx[8] * dx[1] - dx[7] * dx[5];
    out.a[6] = dx[9] * dx[1] + dx[10] * dx[5];
    out.a[7] = dx[10] * dx[1] - dx[9] * dx[5];

    int64_t asum = 0;
    for (int64_t v : out.a) asum += sq(v);
    out.b = 2 * (asum - 2 * (sq(out.a[0]) + sq(out.a[1]) + sq(out.a[2])));
    return out;
}

std::array<int64_t, 8> four_square_identity(const DeltaVec& d) {
    return decompose(d).a;
}

double det_closed_form(const DeltaVec& d, double phi) {
    const DetDecomposition dc = decompose(d);
    const std::complex<double> e2 = std::polar(1.0, 2.0 * phi);
    const std::complex<double> e4 = std::polar(1.0, 4.0 * phi);
    const std::complex<double> v = static_cast<double>(sq(dc.sigma1)) +
                                   e2 * static_cast<double>(dc.b) +
                                   e4 * static_cast<double>(sq(dc.sigma2));
    return std::abs(v);
}

int64_t discriminant_sign(const DeltaVec& d) {
    const DetDecomposition dc = decompose(d);
    int64_t asum = 0;
    for (int64_t v : dc.a) asum += sq(v);
    const int64_t inner = asum - 2 * (sq(dc.a[0]) + sq(dc.a[1]) + sq(dc.a[2]));
    return 4 * sq(inner) - 4 * sq(asum);
}

StratumResult bound_case_unequal(int n_max, double phi) {
    StratumResult res;
    res.min_det = std::numeric_limits<double>::infinity();
    res.min_gap_sq = std::numeric_limits<double>::infinity();

    std::vector<int64_t> n(10, -n_max);
    bool more = true;
    while (more) {
        DeltaVec d;
        for (int i = 0; i < 10; ++i) d.n[i] = n[i];
        more = advance(n, n_max);
        if (d.is_zero()) continue;

        const DetDecomposition dc = decompose(d);
        if (dc.sigma1 == dc.sigma2) continue;
        ++res.count;

        const double det = det_closed_form(d, phi);
        const double gap_sq = static_cast<double>(sq(dc.sigma2 - dc.sigma1));
        if (det < gap_sq - 1e-6) res.chain_ok = false;
        if (det < res.min_det) {
            res.min_det = det;
            res.argmin = d;
        }
        res.min_gap_sq = std::min(res.min_gap_sq, gap_sq);
    }
    return res;
}

StratumResult bound_case_equal(int n_max, double phi) {
    // Shells of equal sum-of-squares for the head (n1..n6) and tail
    // (n7..n10) halves, crossed only where the sums match.
    std::unordered_map<int64_t, std::vector<std::array<int64_t, 6>>> head;
    std::unordered_map<int64_t, std::vector<std::array<int64_t, 4>>> tail;

    std::vector<int64_t> n6(6, -n_max);
    bool more = true;
    while (more) {
        int64_t s = 0;
        std::array<int64_t, 6> v{};
        for (int i = 0; i < 6; ++i) { v[i] = n6[i]; s += sq(2 * n6[i]); }
        more = advance(n6, n_max);
        if (s > 0) head[s].push_back(v);
    }
    std::vector<int64_t> n4(4, -n_max);
    more = true;
    while (more) {
        int64_t s = 0;
        std::array<int64_t, 4> v{};
        for (int i = 0; i < 4; ++i) { v[i] = n4[i]; s += sq(2 * n4[i]); }
        more = advance(n4, n_max);
        if (s > 0) tail[s].push_back(v);
    }

    StratumResult res;
    res.min_det = std::numeric_limits<double>::infinity();
    for (const auto& [s, hs] : head) {
        const auto it = tail.find(s);
        if (it == tail.end()) continue;
        for (const auto& h : hs)
            for (const auto& t : it->second) {
                DeltaVec d;
                for (int i = 0; i < 6; ++i) d.n[i] = h[i];
                for (int i = 0; i < 4; ++i) d.n[6 + i] = t[i];
                ++res.count;
                const double det = det_closed_form(d, phi);
                if (det < res.min_det) {
                    res.min_det = det;
                    res.argmin = d;
                }
            }
    }
    return res;
}

DiophantineResult diophantine_gap(int x_max) {
    DiophantineResult res;
    res.min_abs = std::numeric_limits<int64_t>::max();
    // |X_i| enters squared, so nonnegative representatives suffice.
    for (int64_t x1 = 0; x1 <= x_max; ++x1)
        for (int64_t x2 = 0; x2 <= x_max; ++x2)
            for (int64_t x3 = x2; x3 <= x_max; ++x3)
                for (int64_t x4 = x3; x4 <= x_max; ++x4) {
                    if (x1 == 0 && x4 == 0) continue;
                    const int64_t v = 3 * sq(x1) - 5 * (sq(x2) + sq(x3) + sq(x4));
                    const int64_t av = std::llabs(v);
                    if (av <= 1) res.hit_forbidden = true;
                    if (av < res.min_abs) {
                        res.min_abs = av;
                        res.argmin = {x1, x2, x3, x4};
                    }
                }
    return res;
}

std::vector<std::array<int64_t, 3>> collect_det_triples(int n_max) {
    // The determinant depends on delta-s only through (sigma1, b, sigma2).
    std::unordered_set<uint64_t> seen;
    std::vector<std::array<int64_t, 3>> triples;

    std::vector<int64_t> n(10, -n_max);
    bool more = true;
    while (more) {
        DeltaVec d;
        for (int i = 0; i < 10; ++i) d.n[i] = n[i];
        more = advance(n, n_max);
        if (d.is_zero()) continue;
        const DetDecomposition dc = decompose(d);
        // sigma1 <= 24*(2*n_max)^2 and |b| <= 2*sigma1*sigma2: packs into 64 bits
        // for any n_max this tool runs at.
        const uint64_t key = (static_cast<uint64_t>(dc.sigma1) << 44) ^
                             (static_cast<uint64_t>(dc.sigma2) << 32) ^
                             static_cast<uint64_t>(dc.b + (1ll << 30));
        if (seen.insert(key).second)
            triples.push_back({dc.sigma1, dc.b, dc.sigma2});
    }
    return triples;
}

std::vector<PhiScanPoint> phi_optimality_scan(const std::vector<double>& phi_grid, int n_max) {
    const auto triples = collect_det_triples(n_max);
    std::vector<PhiScanPoint> out;
    out.reserve(phi_grid.size());
    for (double phi : phi_grid) {
        const std::complex<double> e2 = std::polar(1.0, 2.0 * phi);
        const std::complex<double> e4 = std::polar(1.0, 4.0 * phi);
        double best = std::numeric_limits<double>::infinity();
        for (const auto& t : triples) {
            const double v = std::abs(static_cast<double>(sq(t[0])) +
                                      e2 * static_cast<double>(t[1]) +
                                      e4 * static_cast<double>(sq(t[2])));
            best = std::min(best, v);
        }
        out.push_back({phi, best});
    }
    return out;
}

}  // namespace stbc
