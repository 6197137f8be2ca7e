#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "stbc/codes.hpp"

namespace stbc {

/// Integer codeword-difference vector: delta_x_i = 2 * n[i].
struct DeltaVec {
    std::array<int64_t, 10> n{};

    bool is_zero() const {
        for (int64_t v : n)
            if (v != 0) return false;
        return true;
    }
};

/// Integer decomposition of the determinant formula:
/// |det X(ds)| = |sigma1^2 + e^{2j phi} b + e^{4j phi} sigma2^2|.
struct DetDecomposition {
    int64_t sigma1 = 0;  // sum of the six orthogonal delta_x squares
    int64_t sigma2 = 0;  // sum of the four tail delta_x squares
    int64_t b = 0;
    std::array<int64_t, 8> a{};
};

DetDecomposition decompose(const DeltaVec& d);

/// The eight integers of the Euler four-square / Fibonacci two-square
/// expansion; their squares sum to sigma1 * sigma2 exactly.
std::array<int64_t, 8> four_square_identity(const DeltaVec& d);

double det_closed_form(const DeltaVec& d, double phi);

/// 4*(sum a^2 - 2(a1^2+a2^2+a3^2))^2 - 4*(sum a^2)^2; never positive.
int64_t discriminant_sign(const DeltaVec& d);

struct StratumResult {
    double min_det = 0.0;
    double min_gap_sq = 0.0;  // min (sigma2 - sigma1)^2, unequal stratum only
    DeltaVec argmin{};
    long count = 0;           // vectors inspected
    bool chain_ok = true;     // pointwise |det| >= (sigma2 - sigma1)^2
};

/// sigma1 != sigma2 stratum over |n_i| <= n_max: min |det| and min gap.
StratumResult bound_case_unequal(int n_max, double phi);

/// sigma1 == sigma2 != 0 stratum over |n_i| <= n_max: min |det|.
StratumResult bound_case_equal(int n_max, double phi);

struct DiophantineResult {
    int64_t min_abs = 0;
    std::array<int64_t, 4> argmin{};
    bool hit_forbidden = false;  // saw 0 or +-1 somewhere
};

/// min |3 X1^2 - 5 (X2^2 + X3^2 + X4^2)| over nonzero tuples, |X_i| <= x_max.
DiophantineResult diophantine_gap(int x_max);

struct PhiScanPoint {
    double phi = 0.0;
    double grid_min = 0.0;
};

/// Grid minimum of |det X(ds)| for each phi; shares one sweep of the
/// integer (sigma1, b, sigma2) triples across all angles.
std::vector<PhiScanPoint> phi_optimality_scan(const std::vector<double>& phi_grid, int n_max);

/// Collects the distinct (sigma1, b, sigma2) triples on the grid.
std::vector<std::array<int64_t, 3>> collect_det_triples(int n_max);

}  // namespace stbc
