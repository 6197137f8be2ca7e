#include "stbc/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace stbc {
namespace {

constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ull;

uint64_t mix64(uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

}  // namespace

RngStream::RngStream(uint64_t master_seed, uint64_t stream_id)
    : key_(mix64(master_seed + kGolden) ^ mix64(stream_id * kGolden + 1)) {}

uint64_t RngStream::next_u64() {
    return mix64(key_ + (++counter_) * kGolden);
}

double RngStream::uniform() {
    // 53-bit mantissa, offset by half an ulp to stay inside (0, 1).
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::gaussian() {
    if (spare_) {
        const double v = *spare_;
        spare_.reset();
        return v;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    return r * std::cos(t);
}

cplx RngStream::cn01() {
    const double scale = std::sqrt(0.5);
    return {scale * gaussian(), scale * gaussian()};
}

ConstellationSpec::ConstellationSpec(int m) : M(m) {
    const int root = static_cast<int>(std::lround(std::sqrt(static_cast<double>(m))));
    if (root * root != m || root < 2 || (root & (root - 1)) != 0)
        throw std::invalid_argument("constellation size must be square with power-of-two side");
    for (int v = -(root - 1); v <= root - 1; v += 2) pam_axis.push_back(v);
}

double ConstellationSpec::mean_square() const {
    double s = 0.0;
    for (int v : pam_axis) s += static_cast<double>(v) * v;
    return s / static_cast<double>(pam_axis.size());
}

ChannelRealization sample_channel(int nt, int nr, double noise_var, RngStream& rng) {
    ChannelRealization ch;
    ch.H = CMat(nt, nr);
    for (auto& v : ch.H.a) v = rng.cn01();
    ch.noise_var = noise_var;
    return ch;
}

CMat transmit(const CMat& x, const ChannelRealization& ch, RngStream& rng) {
    CMat y = x * ch.H;
    if (ch.noise_var > 0.0) {
        const double s = std::sqrt(ch.noise_var);
        for (auto& v : y.a) v += s * rng.cn01();
    }
    return y;
}

CMat equivalent_channel(const CodeDef& code, const CMat& h) {
    if (code.Nt != h.rows)
        throw std::invalid_argument("equivalent_channel: Nt mismatch");
    const int nr = h.cols;
    const int dim = code.dim();
    CMat eq(nr * code.T, dim);
    for (int i = 0; i < nr; ++i) {
        for (int k = 0; k < dim; ++k) {
            const CMat& b = code.weights[k];
            for (int t = 0; t < code.T; ++t) {
                cplx acc = 0.0;
                for (int n = 0; n < code.Nt; ++n) acc += b(t, n) * h(n, i);
                eq(i * code.T + t, k) = acc;
            }
        }
    }
    return eq;
}

RealModel real_model(const CMat& eq_channel, const CMat& y_vec) {
    RealModel m;
    m.h = check(eq_channel);
    const RMat yc = check(y_vec);
    m.y.resize(yc.rows);
    for (int i = 0; i < yc.rows; ++i) m.y[i] = yc(i, 0);
    return m;
}

double average_energy(const CodeDef& code, const ConstellationSpec& con) {
    // PAM coordinates are i.i.d. zero-mean, so cross terms vanish and
    // E||X||_F^2 = E[x^2] * sum_k ||beta_k||_F^2.
    double wsum = 0.0;
    for (const auto& b : code.weights) {
        const double f = fro_norm(b);
        wsum += f * f;
    }
    return con.mean_square() * wsum / static_cast<double>(code.T);
}

double snr_to_noise_var(double snr_db, const CodeDef& code, const ConstellationSpec& con) {
    return average_energy(code, con) * std::pow(10.0, -snr_db / 10.0);
}

}  // namespace stbc
