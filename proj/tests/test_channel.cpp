#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "stbc/channel.hpp"
#include "stbc/detector.hpp"

using namespace stbc;

TEST_CASE("rng streams are deterministic and distinct") {
    RngStream a(42, 7);
    RngStream b(42, 7);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

    RngStream c(42, 8);
    int same = 0;
    RngStream a2(42, 7);
    for (int i = 0; i < 100; ++i)
        if (a2.next_u64() == c.next_u64()) ++same;
    CHECK(same == 0);
}

TEST_CASE("channel entries have unit power and are uncorrelated") {
    RngStream rng(1, 0);
    const int draws = 200000;
    double p = 0.0;
    cplx corr = 0.0;
    for (int i = 0; i < draws; ++i) {
        ChannelRealization ch = sample_channel(2, 2, 0.0, rng);
        p += std::norm(ch.H(0, 0));
        corr += ch.H(0, 0) * std::conj(ch.H(1, 1));
    }
    CHECK(p / draws == doctest::Approx(1.0).epsilon(0.01));
    CHECK(std::abs(corr) / draws < 0.01);
}

TEST_CASE("transmit") {
    RngStream rng(3, 0);
    SUBCASE("noiseless is exact") {
        ChannelRealization ch = sample_channel(4, 2, 0.0, rng);
        CMat x = CMat::identity(4);
        CMat y = transmit(x, ch, rng);
        CHECK(fro_norm(y - x * ch.H) == 0.0);
    }
    SUBCASE("scalar identity") {
        ChannelRealization ch;
        ch.H = CMat(1, 1);
        ch.H(0, 0) = 1.0;
        ch.noise_var = 0.0;
        CMat x(1, 1);
        x(0, 0) = cplx(2.0, -1.0);
        CHECK(fro_norm(transmit(x, ch, rng) - x) == 0.0);
    }
    SUBCASE("noise variance matches N0") {
        ChannelRealization ch;
        ch.H = CMat(1, 1);
        ch.noise_var = 0.7;
        CMat x(1, 1);  // zero input: output is pure noise
        double p = 0.0;
        const int draws = 100000;
        for (int i = 0; i < draws; ++i) p += std::norm(transmit(x, ch, rng)(0, 0));
        CHECK(p / draws == doctest::Approx(0.7).epsilon(0.02));
    }
}

TEST_CASE("equivalent channel satisfies vec(X H) = H_eq s") {
    RngStream rng(5, 0);
    for (const char* name : {"cod34", "new54"}) {
        CodeDef code = code_by_name(name);
        ConstellationSpec con(4);
        for (int rep = 0; rep < 20; ++rep) {
            ChannelRealization ch = sample_channel(4, 2, 0.0, rng);
            std::vector<double> s(code.dim());
            for (auto& v : s) v = con.pam_axis[rng.next_u64() % 2];
            CMat eq = equivalent_channel(code, ch.H);
            CMat lhs = vec(code.matrix(s) * ch.H);
            CMat smat(code.dim(), 1);
            for (int i = 0; i < code.dim(); ++i) smat(i, 0) = s[i];
            CMat rhs = eq * smat;
            CHECK(fro_norm(lhs - rhs) < 1e-12);
        }
    }
}

TEST_CASE("identity weight column of H_eq is h1") {
    RngStream rng(9, 0);
    ChannelRealization ch = sample_channel(2, 1, 0.0, rng);
    CodeDef c1;
    c1.T = 2;
    c1.Nt = 2;
    c1.K = 1;
    c1.weights = {CMat::identity(2), CMat(2, 2)};
    CMat got = equivalent_channel(c1, ch.H);
    CHECK(std::abs(got(0, 0) - ch.H(0, 0)) < 1e-15);
    CHECK(std::abs(got(1, 0) - ch.H(1, 0)) < 1e-15);
}

TEST_CASE("cod34 equivalent channel has orthogonal columns") {
    RngStream rng(11, 0);
    CodeDef code = make_cod34();
    for (int rep = 0; rep < 20; ++rep) {
        ChannelRealization ch = sample_channel(4, 2, 0.0, rng);
        CMat eq = equivalent_channel(code, ch.H);
        CMat g = adjoint(eq) * eq;
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j)
                if (i != j) CHECK(std::abs(g(i, j).real()) < 1e-10);

        RMat rm = check(eq);
        RMat gram = transpose(rm) * rm;
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j)
                if (i != j) CHECK(std::abs(gram(i, j)) < 1e-10);
    }
}

TEST_CASE("real model holds exactly without noise") {
    RngStream rng(13, 0);
    CodeDef code = make_new54();
    ConstellationSpec con(16);
    for (int rep = 0; rep < 10; ++rep) {
        ChannelRealization ch = sample_channel(4, 2, 0.0, rng);
        std::vector<double> s(code.dim());
        for (auto& v : s) v = con.pam_axis[rng.next_u64() % con.pam_levels()];
        CMat y = transmit(code.matrix(s), ch, rng);
        CMat eq = equivalent_channel(code, ch.H);
        RealModel m = real_model(eq, vec(y));
        std::vector<double> hs = m.h * s;
        for (size_t i = 0; i < m.y.size(); ++i)
            CHECK(m.y[i] == doctest::Approx(hs[i]).epsilon(1e-12));
    }
}

TEST_CASE("snr mapping") {
    CodeDef cod = make_cod34();
    ConstellationSpec qpsk(4);
    // six unit weights of norm 4, E[x^2] = 1, T = 4: average energy 6
    CHECK(average_energy(cod, qpsk) == doctest::Approx(6.0));
    CHECK(snr_to_noise_var(0.0, cod, qpsk) == doctest::Approx(6.0));
    CHECK(snr_to_noise_var(10.0, cod, qpsk) == doctest::Approx(0.6));
    CHECK(snr_to_noise_var(20.0, cod, qpsk) < snr_to_noise_var(10.0, cod, qpsk));
}

TEST_CASE("constellation spec") {
    ConstellationSpec m16(16);
    CHECK(m16.pam_axis == std::vector<int>({-3, -1, 1, 3}));
    CHECK(m16.mean_square() == doctest::Approx(5.0));
    CHECK_THROWS(ConstellationSpec(5));
    CHECK_THROWS(ConstellationSpec(8));
}
