#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "stbc/metrics.hpp"
#include "stbc/nvdproof.hpp"

namespace {

int write_out(const std::string& path, const std::string& content) {
    if (path.empty()) return 0;
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot write " << path << "\n";
        return 2;
    }
    f << content;
    return 0;
}

struct Report {
    std::ostringstream text;
    bool all_ok = true;

    void claim(bool ok, const std::string& what, const std::string& detail) {
        all_ok = all_ok && ok;
        text << (ok ? "PASS" : "FAIL") << "  " << what << "  [" << detail << "]\n";
    }
};

int cmd_verify_nvd(int n_max, int x_max, uint64_t seed, const std::string& out_path) {
    using namespace stbc;
    const double phi = default_phi();
    Report rep;
    char buf[256];

    // Closed form against the direct 4x4 determinant on random grid vectors.
    {
        RngStream rng(seed, 0);
        double worst = 0.0;
        for (int t = 0; t < 10000; ++t) {
            DeltaVec d;
            bool nz = false;
            for (auto& v : d.n) {
                v = static_cast<int64_t>(rng.next_u64() % 7) - 3;
                nz = nz || v != 0;
            }
            if (!nz) d.n[0] = 1;
            std::vector<double> ds(10);
            for (int i = 0; i < 10; ++i) ds[i] = 2.0 * d.n[i];
            const double direct = std::abs(det(new_code_matrix(
                std::span<const double, 10>(ds.data(), 10), phi)));
            const double closed = det_closed_form(d, phi);
            worst = std::max(worst, std::abs(direct - closed) / std::max(1.0, direct));
        }
        std::snprintf(buf, sizeof(buf), "max rel err %.3e over 10^4 draws", worst);
        rep.claim(worst <= 1e-9, "closed-form determinant matches direct determinant", buf);
    }

    // Integer four-square identity on the full grid.
    {
        bool ok = true;
        std::vector<int64_t> n(10, -n_max);
        bool more = true;
        while (more && ok) {
            DeltaVec d;
            for (int i = 0; i < 10; ++i) d.n[i] = n[i];
            for (size_t k = n.size(); k-- > 0;) {
                if (++n[k] <= n_max) break;
                n[k] = -n_max;
                if (k == 0) more = false;
            }
            const DetDecomposition dc = decompose(d);
            int64_t asum = 0;
            for (int64_t v : dc.a) asum += v * v;
            ok = ok && (asum == dc.sigma1 * dc.sigma2);
            ok = ok && (discriminant_sign(d) <= 0);
        }
        std::snprintf(buf, sizeof(buf), "grid |n_i| <= %d", n_max);
        rep.claim(ok, "sum a_i^2 = sigma1*sigma2 and discriminant <= 0 on the grid", buf);
    }

    const StratumResult uneq = bound_case_unequal(n_max, phi);
    std::snprintf(buf, sizeof(buf), "min |det| %.6f, min gap^2 %.1f over %ld vectors, n_max %d",
                  uneq.min_det, uneq.min_gap_sq, uneq.count, n_max);
    rep.claim(uneq.min_det >= 16.0 - 1e-6 && uneq.min_gap_sq >= 16.0 && uneq.chain_ok,
              "sigma1 != sigma2 stratum: |det| >= (sigma2-sigma1)^2 >= 16", buf);

    const StratumResult eq = bound_case_equal(n_max, phi);
    std::snprintf(buf, sizeof(buf), "min |det| %.6f over %ld vectors, n_max %d",
                  eq.min_det, eq.count, n_max);
    rep.claim(eq.min_det > 16.0 + 1e-6,
              "sigma1 == sigma2 stratum: |det| > 16 strictly", buf);

    const DiophantineResult dio = diophantine_gap(x_max);
    std::snprintf(buf, sizeof(buf),
                  "min |3X1^2-5(X2^2+X3^2+X4^2)| = %lld at (%lld,%lld,%lld,%lld), x_max %d",
                  static_cast<long long>(dio.min_abs), static_cast<long long>(dio.argmin[0]),
                  static_cast<long long>(dio.argmin[1]), static_cast<long long>(dio.argmin[2]),
                  static_cast<long long>(dio.argmin[3]), x_max);
    rep.claim(!dio.hit_forbidden && dio.min_abs >= 2,
              "Diophantine form never takes 0 or +-1", buf);

    {
        const long long m8a = ((-3LL * 5 * 5 * 5) % 8 + 8) % 8;
        const long long m8b = ((3LL - 5 - 5 - 5) % 8 + 8) % 8;
        bool residues_ok = true;
        for (int64_t x = 0; x < 5; ++x) {
            const int64_t r = (x * x) % 5;
            residues_ok = residues_ok && (r == 0 || r == 1 || r == 4);
            const int64_t t = (3 * x * x) % 5;
            residues_ok = residues_ok && t != 1 && t != 4;  // 3X^2 != +-1 (mod 5)
        }
        std::snprintf(buf, sizeof(buf), "-375 = %lld, 3-5-5-5 = %lld (mod 8)", m8a, m8b);
        rep.claim(m8a == 1 && m8b == 4 && residues_ok,
                  "mod-8 solvability and mod-5 residue conditions", buf);
    }

    {
        const double global_min = std::min(uneq.min_det, eq.min_det);
        std::snprintf(buf, sizeof(buf), "grid min %.6f, n_max %d", global_min, n_max);
        rep.claim(std::abs(global_min - 16.0) <= 1e-6,
                  "global grid minimum of |det| equals 16", buf);
    }

    std::cout << rep.text.str();
    if (int rc = write_out(out_path, rep.text.str())) return rc;
    std::cout << (rep.all_ok ? "verify-nvd: all checks passed\n"
                             : "verify-nvd: CHECKS FAILED\n");
    return rep.all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rate-5/4 4x4 STBC toolkit: construction, ML decoding, metrics, NVD checks"};
    app.require_subcommand(1);

    std::string code_name = "new54";
    int m = 4;
    int nr = 2;
    uint64_t seed = 1;
    int n_max = 2;
    int x_max = 50;
    long max_trials = 10'000'000;
    long target_errors = 100;
    int workers = 0;
    std::string out_path;
    std::vector<double> snr_db;
    std::string decoder = "auto";
    std::vector<double> slice_values;
    double r_diag = 1.0;
    int phi_points = 200;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--code", code_name, "code name: cod34 | new54")
            ->check(CLI::IsMember({"cod34", "new54"}));
        sub->add_option("--m", m, "QAM size")->check(CLI::IsMember({4, 16, 64}));
        sub->add_option("--seed", seed, "master seed");
        sub->add_option("--out", out_path, "output file path");
    };

    auto* sim = app.add_subcommand("simulate", "Monte Carlo CER / average-complexity sweep");
    add_common(sim);
    sim->add_option("--nr", nr, "receive antennas")->check(CLI::PositiveNumber);
    sim->add_option("--snr", snr_db, "SNR points in dB (comma separated)")
        ->required()->delimiter(',');
    sim->add_option("--max-trials", max_trials, "trial cap per SNR point");
    sim->add_option("--target-errors", target_errors, "stop after this many codeword errors");
    sim->add_option("--workers", workers, "worker threads (0 = all cores)");
    sim->add_option("--decoder", decoder, "auto|sphere|sphere-plain|conditional|exhaustive|slice")
        ->check(CLI::IsMember({"auto", "sphere", "sphere-plain", "conditional", "exhaustive", "slice"}));

    auto* md = app.add_subcommand("mindet", "exhaustive minimum determinant over the difference grid");
    add_common(md);
    md->add_option("--n-max", n_max, "grid bound on n_i");

    auto* pp = app.add_subcommand("papr", "peak-to-average power ratio per antenna");
    add_common(pp);

    auto* nvd = app.add_subcommand("verify-nvd", "numerically check the nonvanishing-determinant argument");
    add_common(nvd);
    nvd->add_option("--n-max", n_max, "grid bound on n_i");
    nvd->add_option("--x-max", x_max, "Diophantine search bound");

    auto* wc = app.add_subcommand("worst-case", "worst-case decoding complexity (leaf count)");
    add_common(wc);

    auto* sd = app.add_subcommand("slice-demo", "run the PAM slicer on given inputs");
    add_common(sd);
    sd->add_option("--values", slice_values, "inputs z to slice")->required()->delimiter(',');
    sd->add_option("--r-diag", r_diag, "diagonal R entry (default 1)");

    auto* ps = app.add_subcommand("phi-scan", "grid minimum of |det| across rotation angles");
    add_common(ps);
    ps->add_option("--n-max", n_max, "grid bound on n_i");
    ps->add_option("--points", phi_points, "number of phi samples in (0, pi/2)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) {
            stbc::SimConfig cfg;
            cfg.code_name = code_name;
            cfg.M = m;
            cfg.nr = nr;
            cfg.snr_db = snr_db;
            cfg.seed = seed;
            cfg.max_trials = max_trials;
            cfg.target_errors = target_errors;
            cfg.workers = workers;
            if (decoder == "sphere") cfg.decoder = stbc::Decoder::SphereSlicer;
            else if (decoder == "sphere-plain") cfg.decoder = stbc::Decoder::SpherePlain;
            else if (decoder == "conditional") cfg.decoder = stbc::Decoder::Conditional;
            else if (decoder == "exhaustive") cfg.decoder = stbc::Decoder::Exhaustive;
            else if (decoder == "slice") cfg.decoder = stbc::Decoder::SliceAll;

            const stbc::SimReport rep = stbc::run_cer(cfg);
            const std::string csv = stbc::report_to_csv(rep);
            if (int rc = write_out(out_path, csv)) return rc;
            std::cout << csv;
            std::printf("simulate: %zu points, code %s, %d-QAM, Nr=%d, seed %llu\n",
                        rep.points.size(), code_name.c_str(), m, nr,
                        static_cast<unsigned long long>(seed));
        } else if (md->parsed()) {
            const stbc::CodeDef code = stbc::code_by_name(code_name);
            // 16 is the orthogonal-design ceiling; reaching it certifies the
            // minimum for the shipped codes at the default rotation.
            std::optional<double> bound;
            if (code.name == "cod34" || std::abs(std::cos(2.0 * code.phi) - 0.2) < 1e-12)
                bound = 16.0;
            const stbc::MinDetResult res = stbc::min_det(code, n_max, bound);
            std::string arg;
            for (double v : res.argmin_delta) arg += std::to_string(static_cast<int>(v)) + " ";
            std::string csv = "n_max,min_det,argmin\n";
            char line[256];
            std::snprintf(line, sizeof(line), "%d,%.9f,%s\n", n_max, res.value, arg.c_str());
            csv += line;
            if (int rc = write_out(out_path, csv)) return rc;
            std::cout << csv;
            std::printf("mindet: %s -> %.6f (%ld determinants)\n", code_name.c_str(),
                        res.value, res.evaluated);
        } else if (pp->parsed()) {
            const stbc::CodeDef code = stbc::code_by_name(code_name);
            const double db = stbc::papr_db(code, stbc::ConstellationSpec(m));
            char line[128];
            std::string csv = "m,papr_db\n";
            std::snprintf(line, sizeof(line), "%d,%.4f\n", m, db);
            csv += line;
            if (int rc = write_out(out_path, csv)) return rc;
            std::cout << csv;
            std::printf("papr: %s at %d-QAM -> %.2f dB\n", code_name.c_str(), m, db);
        } else if (nvd->parsed()) {
            return cmd_verify_nvd(n_max, x_max, seed, out_path);
        } else if (wc->parsed()) {
            const stbc::CodeDef code = stbc::code_by_name(code_name);
            std::printf("worst-case: %s at %d-QAM -> %ld ML metric evaluations\n",
                        code_name.c_str(), m, stbc::worst_case_count(code, m));
        } else if (sd->parsed()) {
            for (double z : slice_values)
                std::printf("slice(%g, r=%g, M=%d) = %g\n", z, r_diag, m,
                            stbc::pam_slice(z, r_diag, m));
        } else if (ps->parsed()) {
            std::vector<double> grid;
            for (int i = 1; i <= phi_points; ++i)
                grid.push_back(i * std::numbers::pi / 2.0 / (phi_points + 1));
            grid.push_back(stbc::default_phi());
            const auto scan = stbc::phi_optimality_scan(grid, n_max);
            std::string csv = "phi,grid_min_det\n";
            char line[96];
            for (const auto& ptn : scan) {
                std::snprintf(line, sizeof(line), "%.9f,%.9f\n", ptn.phi, ptn.grid_min);
                csv += line;
            }
            if (int rc = write_out(out_path, csv)) return rc;
            std::cout << csv;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
