#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "stbc/detector.hpp"

using namespace stbc;

namespace {

struct Instance {
    std::vector<double> s;
    ReducedSystem sys;
    RealModel model;
};

Instance make_instance(const CodeDef& code, int M, int nr, double noise_var, RngStream& rng) {
    const ConstellationSpec con(M);
    Instance inst;
    inst.s.resize(code.dim());
    for (auto& v : inst.s) v = con.pam_axis[rng.next_u64() % con.pam_levels()];
    for (;;) {
        ChannelRealization ch = sample_channel(code.Nt, nr, noise_var, rng);
        CMat y = transmit(code.matrix(inst.s), ch, rng);
        inst.model = real_model(equivalent_channel(code, ch.H), vec(y));
        try {
            inst.sys = reduce(inst.model);
            return inst;
        } catch (const RankDeficient&) {
        }
    }
}

double residual(const RealModel& m, const std::vector<double>& s) {
    std::vector<double> hs = m.h * s;
    double acc = 0.0;
    for (size_t i = 0; i < m.y.size(); ++i) {
        const double d = m.y[i] - hs[i];
        acc += d * d;
    }
    return acc;
}

}  // namespace

TEST_CASE("reduce: identity system") {
    RealModel m;
    m.h = RMat::identity(4);
    m.y = {1.0, -2.0, 0.5, 3.0};
    ReducedSystem sys = reduce(m);
    CHECK(fro_norm(sys.r - RMat::identity(4)) < 1e-12);
    for (int i = 0; i < 4; ++i) CHECK(sys.y_prime[i] == doctest::Approx(m.y[i]));
}

TEST_CASE("reduce preserves the metric up to a constant") {
    RngStream rng(21, 0);
    CodeDef code = make_new54();
    Instance inst = make_instance(code, 4, 2, 0.5, rng);

    ConstellationSpec con(4);
    auto reduced_metric = [&](const std::vector<double>& s) {
        double acc = 0.0;
        for (int i = 0; i < 10; ++i) {
            double t = inst.sys.y_prime[i];
            for (int j = i; j < 10; ++j) t -= inst.sys.r(i, j) * s[j];
            acc += t * t;
        }
        return acc;
    };
    std::vector<double> s1(10), s2(10);
    for (int i = 0; i < 10; ++i) {
        s1[i] = con.pam_axis[rng.next_u64() % 2];
        s2[i] = con.pam_axis[rng.next_u64() % 2];
    }
    const double c1 = residual(inst.model, s1) - reduced_metric(s1);
    const double c2 = residual(inst.model, s2) - reduced_metric(s2);
    CHECK(c1 == doctest::Approx(c2).epsilon(1e-9));
}

TEST_CASE("R patterns") {
    RngStream rng(23, 0);
    SUBCASE("new54 keeps the block pattern") {
        CHECK(r_pattern(make_new54(), 6, 100, 2, rng));
    }
    SUBCASE("cod34 R is diagonal") {
        CodeDef cod = make_cod34();
        CHECK(r_pattern(cod, cod.dim(), 100, 2, rng));
        ChannelRealization ch = sample_channel(4, 2, 0.0, rng);
        ThinQR qr = thin_qr(check(equivalent_channel(cod, ch.H)));
        CHECK(pattern_max_violation(qr.r, cod.dim()) < 1e-10);
    }
    SUBCASE("scrambled weights break it") {
        CodeDef bad = make_new54();
        for (auto& w : bad.weights)
            for (auto& v : w.a) v += cplx(0.1 * (rng.uniform() - 0.5), 0.1 * (rng.uniform() - 0.5));
        CHECK_FALSE(r_pattern(bad, 6, 100, 2, rng));
    }
}

TEST_CASE("pam_slice closed form") {
    CHECK(pam_slice(0.3, 1.0, 4) == 1.0);
    CHECK(pam_slice(-5.2, 1.0, 16) == -3.0);
    CHECK(pam_slice(100.0, 1.0, 64) == 7.0);

    // brute-force argmin over random triples
    RngStream rng(29, 0);
    for (int M : {4, 16, 64}) {
        ConstellationSpec con(M);
        for (int rep = 0; rep < 20000; ++rep) {
            const double r = 0.05 + 3.0 * rng.uniform();
            const double z = 40.0 * (rng.uniform() - 0.5);
            double best = 1e300, bx = 0;
            for (int x : con.pam_axis) {
                const double d = (z - r * x) * (z - r * x);
                if (d < best) { best = d; bx = x; }
            }
            CHECK(pam_slice(z, r, M) == bx);
        }
    }
}

TEST_CASE("noiseless consistency") {
    RngStream rng(31, 0);
    CodeDef code = make_new54();
    for (int M : {4, 16}) {
        Instance inst = make_instance(code, M, 2, 0.0, rng);
        for (auto out : {conditional_ml(inst.sys, M), sphere_decode(inst.sys, M, 6),
                         sphere_decode(inst.sys, M, 0)}) {
            CHECK(out.s_hat == inst.s);
            CHECK(out.metric <= 1e-18);
        }
    }
}

TEST_CASE("conditional_ml leaf count is exactly M^2") {
    RngStream rng(37, 0);
    CodeDef code = make_new54();
    for (int M : {4, 16}) {
        for (int rep = 0; rep < 5; ++rep) {
            Instance inst = make_instance(code, M, 2, 1.0, rng);
            DecodeOutcome out = conditional_ml(inst.sys, M);
            CHECK(out.leaves_evaluated == static_cast<long>(M) * M);
        }
    }
}

TEST_CASE("decoder equivalence on noisy instances") {
    RngStream rng(41, 0);
    CodeDef code = make_new54();
    const int M = 4;
    ConstellationSpec con(M);
    for (int rep = 0; rep < 300; ++rep) {
        const double n0 = snr_to_noise_var(5.0 + 10.0 * rng.uniform(), code, con);
        Instance inst = make_instance(code, M, 2, n0, rng);
        DecodeOutcome ex = exhaustive_ml(inst.sys, M);
        DecodeOutcome cm = conditional_ml(inst.sys, M);
        DecodeOutcome sp = sphere_decode(inst.sys, M, 6);
        DecodeOutcome s0 = sphere_decode(inst.sys, M, 0);
        CHECK(cm.s_hat == ex.s_hat);
        CHECK(sp.s_hat == ex.s_hat);
        CHECK(s0.s_hat == ex.s_hat);
        CHECK(s0.leaves_evaluated >= 1);
    }
}

TEST_CASE("exhaustive_ml details") {
    RngStream rng(43, 0);
    CodeDef code = make_new54();
    Instance inst = make_instance(code, 4, 2, 0.8, rng);
    DecodeOutcome out = exhaustive_ml(inst.sys, 4);
    CHECK(out.leaves_evaluated == 1024);  // M^K at 4-QAM, K=5

    // metric consistent with the unreduced system up to the QR constant
    const double c = residual(inst.model, inst.s) -
                     [&] {
                         double acc = 0.0;
                         for (int i = 0; i < 10; ++i) {
                             double t = inst.sys.y_prime[i];
                             for (int j = i; j < 10; ++j) t -= inst.sys.r(i, j) * inst.s[j];
                             acc += t * t;
                         }
                         return acc;
                     }();
    CHECK(residual(inst.model, out.s_hat) == doctest::Approx(out.metric + c).epsilon(1e-10));
}

TEST_CASE("exhaustive_ml guard") {
    ReducedSystem sys;
    sys.r = RMat::identity(10);
    sys.y_prime.assign(10, 0.0);
    CHECK_THROWS_AS(exhaustive_ml(sys, 64), TooLarge);  // 64^5 = 2^30
}

TEST_CASE("pattern violation raises") {
    ReducedSystem sys;
    sys.r = RMat::identity(10);
    sys.r(0, 3) = 0.5;  // breaks the orthogonal block
    sys.y_prime.assign(10, 0.0);
    CHECK_THROWS_AS(conditional_ml(sys, 4), PatternViolation);
    CHECK_THROWS_AS(sphere_decode(sys, 4, 6), PatternViolation);
    CHECK_NOTHROW(sphere_decode(sys, 4, 0));
}

TEST_CASE("average sphere nodes decrease with SNR") {
    RngStream rng(47, 0);
    CodeDef code = make_new54();
    ConstellationSpec con(4);
    double prev = 1e300;
    for (double snr : {0.0, 10.0, 20.0}) {
        const double n0 = snr_to_noise_var(snr, code, con);
        long nodes = 0;
        const int trials = 400;
        for (int t = 0; t < trials; ++t) {
            Instance inst = make_instance(code, 4, 2, n0, rng);
            nodes += sphere_decode(inst.sys, 4, 6).nodes_visited;
        }
        const double avg = static_cast<double>(nodes) / trials;
        CHECK(avg < prev);
        prev = avg;
    }
}

TEST_CASE("slice_all decodes cod34") {
    RngStream rng(53, 0);
    CodeDef code = make_cod34();
    Instance inst = make_instance(code, 4, 2, 0.0, rng);
    DecodeOutcome out = slice_all(inst.sys, 4);
    CHECK(out.s_hat == inst.s);

    ConstellationSpec con(4);
    for (int rep = 0; rep < 200; ++rep) {
        const double n0 = snr_to_noise_var(8.0, code, con);
        Instance noisy = make_instance(code, 4, 2, n0, rng);
        DecodeOutcome sa = slice_all(noisy.sys, 4);
        DecodeOutcome ex = exhaustive_ml(noisy.sys, 4);
        CHECK(sa.s_hat == ex.s_hat);
    }
}
