#include "stbc/codes.hpp"

#include <cmath>

namespace stbc {

double default_phi() {
    return 0.5 * std::acos(0.2);
}

CMat CodeDef::matrix(std::span<const double> s) const {
    CMat x(T, Nt);
    for (size_t k = 0; k < weights.size(); ++k) {
        if (s[k] == 0.0) continue;
        for (size_t i = 0; i < x.a.size(); ++i) x.a[i] += weights[k].a[i] * s[k];
    }
    return x;
}

CMat cod34(std::span<const double, 6> x) {
    const double s[10] = {x[0], x[1], x[2], x[3], x[4], x[5], 0, 0, 0, 0};
    return new_code_matrix(std::span<const double, 10>(s), 0.0);
}

CMat new_code_matrix(std::span<const double, 10> s, double phi) {
    const cplx j(0.0, 1.0);
    const cplx p = std::polar(1.0, phi);
    const double x1 = s[0], x2 = s[1], x3 = s[2], x4 = s[3], x5 = s[4];
    const double x6 = s[5], x7 = s[6], x8 = s[7], x9 = s[8], x10 = s[9];

    CMat m(4, 4);
    m(0, 0) = x1 + j * x2 - j * x10 * p;
    m(0, 1) = x3 + j * x4;
    m(0, 2) = x5 + j * x6 + j * x9 * p;
    m(0, 3) = -p * (x7 + j * x8);

    m(1, 0) = -x3 + j * x4;
    m(1, 1) = x1 - j * x2 - j * x10 * p;
    m(1, 2) = p * (-x7 + j * x8);
    m(1, 3) = -x5 - j * x6 + j * x9 * p;

    m(2, 0) = -x5 + j * x6 + j * x9 * p;
    m(2, 1) = p * (x7 + j * x8);
    m(2, 2) = x1 - j * x2 + j * x10 * p;
    m(2, 3) = x3 + j * x4;

    m(3, 0) = -p * (-x7 + j * x8);
    m(3, 1) = x5 - j * x6 + j * x9 * p;
    m(3, 2) = -x3 + j * x4;
    m(3, 3) = x1 + j * x2 + j * x10 * p;
    return m;
}

std::vector<CMat> extract_weights(
    const std::function<CMat(std::span<const double>)>& ctor, int dim) {
    std::vector<CMat> w;
    w.reserve(dim);
    std::vector<double> e(dim, 0.0);
    for (int k = 0; k < dim; ++k) {
        e[k] = 1.0;
        w.push_back(ctor(e));
        e[k] = 0.0;
    }

    // Linear independence over R: QR of the stacked real embeddings.
    const int tn = 2 * w[0].rows * w[0].cols;
    RMat stacked(tn, dim);
    for (int k = 0; k < dim; ++k) {
        const RMat col = check(vec(w[k]));
        for (int i = 0; i < tn; ++i) stacked(i, k) = col(i, 0);
    }
    try {
        thin_qr(stacked);
    } catch (const RankDeficient&) {
        throw DependentWeights("extract_weights: weight matrices are linearly dependent");
    }
    return w;
}

CodeDef make_cod34() {
    CodeDef c;
    c.name = "cod34";
    c.T = 4;
    c.Nt = 4;
    c.K = 3;
    c.weights = extract_weights(
        [](std::span<const double> s) {
            return cod34(std::span<const double, 6>(s.data(), 6));
        },
        6);
    return c;
}

CodeDef make_new54(double phi) {
    CodeDef c;
    c.name = "new54";
    c.T = 4;
    c.Nt = 4;
    c.K = 5;
    c.phi = phi;
    c.weights = extract_weights(
        [phi](std::span<const double> s) {
            return new_code_matrix(std::span<const double, 10>(s.data(), 10), phi);
        },
        10);
    return c;
}

CodeDef code_by_name(const std::string& name) {
    if (name == "cod34") return make_cod34();
    if (name == "new54") return make_new54();
    throw std::invalid_argument("unknown code: " + name);
}

}  // namespace stbc
