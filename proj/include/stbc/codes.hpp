#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "stbc/linalg.hpp"

namespace stbc {

struct DependentWeights : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An STBC in linear-dispersion form: X(s) = sum_k weights[k] * s[k]
/// over 2K real PAM coordinates.
struct CodeDef {
    std::string name;
    int T = 0;
    int Nt = 0;
    int K = 0;                 // complex symbols per codeword; 2K real coords
    std::vector<CMat> weights; // 2K matrices, each T x Nt
    double phi = 0.0;          // rotation angle; 0 when the code has none

    int dim() const { return 2 * K; }
    CMat matrix(std::span<const double> s) const;
};

/// Rotation angle maximizing the coding gain: phi = acos(1/5) / 2.
double default_phi();

/// Rate-3/4 complex orthogonal design for four antennas.
CMat cod34(std::span<const double, 6> x);

/// The rate-5/4 code embedding cod34, with the tail symbols x7..x10
/// rotated by e^{j phi}.
CMat new_code_matrix(std::span<const double, 10> s, double phi);

/// Recovers weight matrices from a linear constructor by evaluating it on
/// unit vectors. Throws DependentWeights if the real embeddings of the
/// results are linearly dependent.
std::vector<CMat> extract_weights(
    const std::function<CMat(std::span<const double>)>& ctor, int dim);

CodeDef make_cod34();
CodeDef make_new54(double phi = default_phi());

/// Lookup by the CLI/config name: "cod34" | "new54".
CodeDef code_by_name(const std::string& name);

}  // namespace stbc
