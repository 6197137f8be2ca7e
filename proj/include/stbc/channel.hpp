#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "stbc/codes.hpp"
#include "stbc/linalg.hpp"

namespace stbc {

/// Counter-based random stream: every draw is a pure function of
/// (master_seed, stream_id, counter), so parallel trials are
/// reproducible regardless of scheduling.
class RngStream {
public:
    RngStream(uint64_t master_seed, uint64_t stream_id);

    uint64_t next_u64();
    double uniform();   // (0, 1)
    double gaussian();  // N(0, 1), Box-Muller
    cplx cn01();        // CN(0, 1): real/imag each N(0, 1/2)

private:
    uint64_t key_;
    uint64_t counter_ = 0;
    std::optional<double> spare_;
};

struct ConstellationSpec {
    int M;                        // 4, 16, 64
    std::vector<int> pam_axis;    // odd integers +-1 .. +-(sqrt(M)-1)

    explicit ConstellationSpec(int m);
    int pam_levels() const { return static_cast<int>(pam_axis.size()); }
    double mean_square() const;   // E[x^2] of a uniform PAM coordinate
};

struct ChannelRealization {
    CMat H;            // Nt x Nr, entries CN(0,1)
    double noise_var;  // N0 per complex dimension
};

ChannelRealization sample_channel(int nt, int nr, double noise_var, RngStream& rng);

/// Y = X H + W with W entries CN(0, N0).
CMat transmit(const CMat& x, const ChannelRealization& ch, RngStream& rng);

/// The block matrix of Eq. "y = H s + w": block row i holds weights[k] * h_i.
CMat equivalent_channel(const CodeDef& code, const CMat& h);

struct RealModel {
    RMat h;                  // 2*Nr*T x 2K
    std::vector<double> y;   // 2*Nr*T
};

RealModel real_model(const CMat& eq_channel, const CMat& y_vec);

/// Average transmit energy per channel use (equals average received power
/// per receive antenna for unit-variance fading), exact from per-symbol moments.
double average_energy(const CodeDef& code, const ConstellationSpec& con);

double snr_to_noise_var(double snr_db, const CodeDef& code, const ConstellationSpec& con);

}  // namespace stbc
