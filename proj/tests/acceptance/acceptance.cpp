// Copyright 2026 The bricksim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Acceptance checks AC-1 .. AC-11. Prints one PASS/FAIL line per criterion
// and exits non-zero if any fails.
//
// usage: bricksim_acceptance [--data DIR] [--cli PATH]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bricksim/compile.hpp"
#include "bricksim/cyclic.hpp"
#include "bricksim/errors.hpp"
#include "bricksim/fock.hpp"
#include "bricksim/io.hpp"
#include "bricksim/linops.hpp"
#include "bricksim/mesh.hpp"
#include "bricksim/routing.hpp"
#include "bricksim/temporal.hpp"
#include "json.hpp"
#include "support/cascade_oracle.hpp"
#include "support/loop_oracle.hpp"

#ifndef BRICKSIM_DATA_DIR
#define BRICKSIM_DATA_DIR "data"
#endif
#ifndef BRICKSIM_CLI
#define BRICKSIM_CLI "bricksim"
#endif

namespace {

using namespace bricksim;
namespace fs = std::filesystem;

std::string g_data = BRICKSIM_DATA_DIR;
std::string g_cli = BRICKSIM_CLI;

struct Result {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string &what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", x);
    return buf;
}

ComplexMatrix diag2(Complex a, Complex b) {
    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = a;
    d(1, 1) = b;
    return d;
}

Result ac1() {
    Result r;
    double worst = 0.0;
    for (int a = 0; a < 5; ++a) {
        for (int b = 0; b < 5; ++b) {
            const double p1 = -kPi + 2.0 * kPi * a / 4.0 + 0.1;
            const double p2 = -kPi + 2.0 * kPi * b / 4.0 + 0.37;
            const ComplexMatrix s_ref =
                bs_matrix() * ps_matrix(p1) * diag2(1.0, std::polar(1.0, p2)) * bs_matrix();
            const ComplexMatrix a_ref = bs_matrix() * ps_matrix(p2) * bs_matrix() * ps_matrix(p1);
            worst = std::max({worst, max_abs_diff(smzi_matrix(p1, p2), s_ref),
                              max_abs_diff(amzi_matrix(p1, p2), a_ref)});
        }
    }
    r.require(worst < 1e-12, "closed form deviates " + sci(worst));
    r.detail = r.detail.empty() ? "25-point grid, max deviation " + sci(worst) : r.detail;
    return r;
}

Result ac2() {
    Result r;
    std::mt19937_64 rng(2026);
    std::normal_distribution<double> g;
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const int n = 1 + k % 8;
        ComplexMatrix b(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) b(i, j) = Complex(g(rng), g(rng));
        const Complex ref = permanent_naive(b);
        worst = std::max(worst, std::abs(permanent_ryser(b) - ref) / std::abs(ref));
    }
    r.require(worst < 1e-10, "Ryser vs naive relative error " + sci(worst));
    double fact = 1.0;
    for (int n = 1; n <= 8; ++n) {
        fact *= n;
        const ComplexMatrix ones = ComplexMatrix::Ones(n, n);
        r.require(permanent_ryser(ones) == Complex(fact, 0.0), "Ryser all-ones n=" + std::to_string(n));
        r.require(permanent_naive(ones) == Complex(fact, 0.0), "naive all-ones n=" + std::to_string(n));
    }
    if (r.pass) r.detail = "100 matrices, max rel error " + sci(worst) + "; all-ones = n! exactly";
    return r;
}

Result ac3() {
    Result r;
    const OutputDistribution d = full_distribution(bs_matrix(), {1, 1});
    double p11 = -1, p20 = -1, p02 = -1;
    for (std::size_t k = 0; k < d.outcomes.size(); ++k) {
        if (d.outcomes[k] == OccupationVector{1, 1}) p11 = d.probabilities[k];
        if (d.outcomes[k] == OccupationVector{2, 0}) p20 = d.probabilities[k];
        if (d.outcomes[k] == OccupationVector{0, 2}) p02 = d.probabilities[k];
    }
    r.require(std::abs(p11) < 1e-12, "P(1,1) = " + sci(p11));
    r.require(std::abs(p20 - 0.5) < 1e-12 && std::abs(p02 - 0.5) < 1e-12, "bunching not 1/2");
    const double dist = distinguishable_probability(bs_matrix(), {1, 1}, {1, 1});
    r.require(std::abs(dist - 0.5) < 1e-12, "distinguishable P(1,1) = " + sci(dist));
    if (r.pass) r.detail = "P(1,1)=" + sci(p11) + ", P(2,0)=P(0,2)=1/2, distinguishable P(1,1)=1/2";
    return r;
}

Result ac4() {
    Result r;
    const CiOutcome out = make_ci_outcome({1, 0, 1, 0, 1, 0}, {0, 1, 1, 0, 0, 1});
    const auto grid = uniform_phase_grid(24);
    double worst = 0.0;
    for (double phi : grid) {
        const double p = ci_exact_probability({3, phi, PhasePlacement::kSingleInternal}, out);
        worst = std::max(worst, std::abs(p - (1.0 - std::cos(phi)) / 32.0));
    }
    r.require(worst < 1e-12, "fringe deviates " + sci(worst));
    const double ideal = gi_report(fringe_scan({3, 0.0, PhasePlacement::kSingleInternal}, out, grid));
    r.require(std::abs(ideal - 1.0) < 1e-9, "ideal visibility " + sci(ideal));
    const GramMatrix id = ComplexMatrix::Identity(3, 3);
    const double flat = gi_report(fringe_scan({3, 0.0, PhasePlacement::kSingleInternal}, out, grid, id));
    r.require(std::abs(flat) < 1e-10, "G=identity visibility " + sci(flat));
    if (r.pass) {
        r.detail = "max |P - (1-cos phi)/32| " + sci(worst) + ", V_ideal-1 " + sci(ideal - 1.0) +
                   ", V_distinguishable " + sci(flat);
    }
    return r;
}

Result ac5() {
    Result r;
    const auto outcomes = ci_reachable_outcomes(3);
    const auto grid = uniform_phase_grid(24);
    double worst = 0.0;
    int plus = 0, minus = 0;
    for (const CiOutcome &o : outcomes) {
        ((3 + o.p + o.q) % 2 == 0 ? plus : minus)++;
        for (double phi : grid) {
            const double exact = ci_exact_probability({3, phi, PhasePlacement::kSingleInternal}, o);
            worst = std::max(worst, std::abs(exact - ci_probability_formula(3, o.p, o.q, phi)));
        }
    }
    r.require(!outcomes.empty(), "no reachable outcomes");
    r.require(plus > 0 && minus > 0, "only one parity class present");
    r.require(worst < 1e-12, "parity law deviates " + sci(worst));
    if (r.pass) {
        r.detail = std::to_string(outcomes.size()) + " outcomes (" + std::to_string(plus) + " +cos, " +
                   std::to_string(minus) + " -cos), max deviation " + sci(worst);
    }
    return r;
}

Result ac6() {
    Result r;
    const ResourceReport f2 = resource_report(build_preset("fig2"));
    const ResourceReport f3 = resource_report(build_preset("fig3"));
    r.require(f2.tbu_count == 38 && f2.external_modes == 32 && f2.feedforward_equivalent == 496,
              "fig2 counts");
    r.require(f2.ratio > 13.0, "fig2 ratio");
    r.require(f3.tbu_count == 63 && f3.external_modes == 44 && f3.feedforward_equivalent == 946,
              "fig3 counts");
    r.require(f3.ratio >= 15.0, "fig3 ratio");
    std::ostringstream s;
    s << "fig2 " << f2.tbu_count << "/" << f2.external_modes << " vs " << f2.feedforward_equivalent
      << " (x" << f2.ratio << "); fig3 " << f3.tbu_count << "/" << f3.external_modes << " vs "
      << f3.feedforward_equivalent << " (x" << f3.ratio << ")";
    if (r.pass) r.detail = s.str();
    return r;
}

Result ac7() {
    Result r;
    const std::string dir = g_data + "/";
    r.require(fs::exists(dir + "ci3_fig2.md"), "derivation notes missing");
    const nlohmann::json meta = nlohmann::json::parse(read_text_file(dir + "ci3_fig2.meta.json"));
    const MeshProgramFile f = parse_mesh_program(read_text_file(dir + meta.at("program").get<std::string>()));
    const auto in_modes = meta.at("input_modes").get<std::vector<int>>();
    const auto out_modes = meta.at("output_modes").get<std::vector<int>>();
    const int link = meta.at("phase_link").get<int>();
    const double offset = meta.at("phase_offset").get<double>();
    const double sign = meta.at("phase_sign").get<double>();
    const int m = f.topology.mode_count();

    const OccupationVector s = ci_canonical_input(3);
    OccupationVector s_mesh(m, 0);
    for (int j = 0; j < 6; ++j) s_mesh[in_modes[j]] = s[j];
    const auto outcomes = enumerate_outputs(6, 3, kDefaultStateCap);
    double worst = 0.0;
    for (double phi : uniform_phase_grid(24)) {
        MeshProgram p = f.program;
        p.segments[link] = {offset + sign * phi, 0.0};
        const ComplexMatrix u = compile_mesh(f.topology, p).unitary;
        const ComplexMatrix ci = build_ci_unitary({3, phi, PhasePlacement::kSingleInternal});
        double total = 0.0;
        for (const OccupationVector &v : outcomes) {
            OccupationVector v_mesh(m, 0);
            for (int j = 0; j < 6; ++j) v_mesh[out_modes[j]] = v[j];
            const double pm = output_probability(u, s_mesh, v_mesh);
            total += pm;
            worst = std::max(worst, std::abs(pm - output_probability(ci, s, v)));
        }
        r.require(std::abs(total - 1.0) < 1e-9, "light leaves the six CI outputs");
    }
    r.require(worst < 1e-9, "probability mismatch " + sci(worst));
    if (r.pass) {
        r.detail = "56 outcomes x 24 phases on the compiled 32-mode mesh, max error " + sci(worst);
    }
    return r;
}

// The first 4-BUL loop of fig2 set to exact resonance.
MeshProgram resonant_loop(const MeshTopology &t) {
    const auto loop = find_cavities(t, 4).front();
    MeshProgram p = uniform_program(t, split_setting());
    apply_route(p, loop);
    Complex gain = 1.0;
    for (const Hop &h : loop) {
        gain *= hop_amplitude(t, p, h) *
                std::polar(1.0, link_setting(t, p, t.link_of_port[h.out_port]).phase);
    }
    const int l = t.link_of_port[loop.front().out_port];
    p.segments[l] = {link_setting(t, p, l).phase - std::arg(gain), 0.0};
    return p;
}

Result ac8() {
    Result r;
    const MeshTopology t = build_preset("fig2");
    std::mt19937_64 rng(8);
    double dev = 0.0;
    for (int k = 0; k < 200; ++k) {
        dev = std::max(dev, is_unitary(compile_mesh(t, testing::random_program(t, rng)).unitary,
                                       kCompilerTol).max_deviation);
    }
    r.require(dev < 1e-9, "unitarity deviation " + sci(dev));
    double ff = 0.0;
    for (int k = 0; k < 50; ++k) {
        const MeshProgram p = testing::random_feedforward_program(t, rng);
        const auto ref = testing::cascade_unitary(t, p);
        if (!ref) {
            r.require(false, "feed-forward program has feedback");
            break;
        }
        ff = std::max(ff, max_abs_diff(compile_mesh(t, p).unitary, *ref));
    }
    r.require(ff < 1e-10, "cascade mismatch " + sci(ff));
    bool raised = false;
    std::size_t cycle = 0;
    try {
        compile_mesh(t, resonant_loop(t));
    } catch (const SingularFeedback &e) {
        raised = true;
        cycle = e.cycle().size();
    }
    r.require(raised, "resonant loop compiled without SingularFeedback");
    if (r.pass) {
        r.detail = "200 random: max deviation " + sci(dev) + "; 50 feed-forward vs cascade " + sci(ff) +
                   "; resonant loop raised (cycle of " + std::to_string(cycle) + " ports)";
    }
    return r;
}

Result ac9() {
    Result r;
    const MeshTopology t = build_preset("fig2");
    const MeshLoopProgram lp = mesh_loop_program(t, 450e-6, 5.0, 6);
    const double tau = cavity_metrics(450e-6, 5.0, 4).round_trip_time_s;
    r.require(std::abs(tau - 30e-12) < 0.1e-12, "tau = " + sci(tau));
    r.require(std::abs(lp.small.round_trip_s - tau) < 1e-18, "mesh loop delay differs from tau");
    const auto grid = linear_frequency_grid(0.0, 100e9, 1001);
    const SpectralSweep s4 = spectral_sweep(t, lp.program, lp.small.bus_in_index, lp.small.bus_out_index, grid);
    const SpectralSweep s6 = spectral_sweep(t, lp.program, lp.large.bus_in_index, lp.large.bus_out_index, grid);
    r.require(s4.failed.empty() && s6.failed.empty(), "sweep points failed");
    const double f4 = estimate_fsr(s4);
    const double f6 = estimate_fsr(s6);
    r.require(std::abs(f4 - 33.3e9) <= 0.5e9, "4-BUL FSR " + sci(f4));
    r.require(std::abs(f6 / f4 - 2.0 / 3.0) < 0.01, "6-BUL/4-BUL FSR ratio " + sci(f6 / f4));
    char buf[160];
    std::snprintf(buf, sizeof buf, "tau %.2f ps; swept FSR 4-BUL %.3f GHz, 6-BUL %.3f GHz (ratio %.4f)",
                  tau * 1e12, f4 / 1e9, f6 / 1e9, f6 / f4);
    if (r.pass) r.detail = buf;
    return r;
}

Result ac10() {
    Result r;
    const LoopProgram hom{2, 1, 30e-12, {{0, 0, kPi / 4, 0.0}}};
    const OutputDistribution d = temporal_sampling(hom, {1, 1});
    const OutputDistribution ref = full_distribution(bs_matrix(), {1, 1});
    double hom_dev = 0.0;
    r.require(d.outcomes == ref.outcomes, "HOM outcome order");
    for (std::size_t k = 0; k < d.outcomes.size() && k < ref.outcomes.size(); ++k) {
        hom_dev = std::max(hom_dev, std::abs(d.probabilities[k] - ref.probabilities[k]));
    }
    r.require(hom_dev <= 1e-15, "HOM deviation " + sci(hom_dev));
    r.require(unfold_to_spatial(hom).depth == 1, "HOM depth");
    std::mt19937_64 rng(10);
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        const int m = 2 + static_cast<int>(rng() % 5);
        const int n = 1 + static_cast<int>(rng() % 4);
        const LoopProgram p = testing::random_loop_program(m, n, rng);
        const UnfoldedCircuit c = unfold_to_spatial(p);
        r.require(c.depth == n, "depth != passes");
        worst = std::max(worst, max_abs_diff(c.unitary, testing::layered_cascade(p)));
    }
    r.require(worst < 1e-12, "cascade mismatch " + sci(worst));
    if (r.pass) {
        r.detail = "HOM deviation " + sci(hom_dev) + "; 50 random programs vs layered cascade " + sci(worst);
    }
    return r;
}

Result ac11() {
    Result r;
    const fs::path dir = fs::temp_directory_path() / ("bricksim_ac11_" + std::to_string(std::random_device{}()));
    fs::create_directories(dir);
    const std::string d = dir.string() + "/";
    const std::string prog = g_data + "/ci3_fig2.json";
    const std::vector<std::pair<std::string, std::string>> runs = {
        {"sample", "sample --haar 6 --input 1,1,1,0,0,0 --count 500 --seed 42"},
        {"distribution", "distribution --program " + prog + " --input 0,0,0,0,0,0,0,0,0,1,0,0,0,1,0,0,0,0,0,0,1,0,0,0,0,0,0,0,0,0,0,0"},
        {"compile", "compile --program " + prog},
        {"sweep", "sweep --program " + prog + " --from 0 --to 1 --freq-points 41 --freq-stop 1e11"},
        {"ci-scan", "ci-scan --n 3 --grid 24"},
        {"bench", "bench-permanent --n 10 --seed 3 --timing " + d + "timing.csv"},
    };
    int identical = 0;
    for (const auto &[name, args] : runs) {
        std::string first;
        for (int rep = 0; rep < 2; ++rep) {
            const std::string file = d + name + std::to_string(rep) + ".out";
            const std::string cmd = "\"" + g_cli + "\" " + args + " --out \"" + file + "\" > \"" +
                                    d + "log.txt\" 2>&1";
            const int rc = std::system(cmd.c_str());
            r.require(rc == 0, name + " exited with " + std::to_string(rc));
            if (rc != 0) break;
            const std::string body = read_text_file(file);
            r.require(!body.empty(), name + " wrote nothing");
            if (rep == 0) {
                first = body;
            } else if (body == first) {
                ++identical;
            } else {
                r.require(false, name + " output differs between runs");
            }
        }
    }
    std::error_code ec;
    fs::remove_all(dir, ec);
    if (r.pass) r.detail = std::to_string(identical) + " subcommands byte-identical across repeated runs";
    return r;
}

}  // namespace

int main(int argc, char **argv) {
    for (int k = 1; k + 1 < argc; k += 2) {
        const std::string flag = argv[k];
        if (flag == "--data") {
            g_data = argv[k + 1];
        } else if (flag == "--cli") {
            g_cli = argv[k + 1];
        } else {
            std::cerr << "usage: bricksim_acceptance [--data DIR] [--cli PATH]\n";
            return 2;
        }
    }
    struct Criterion {
        const char *id;
        const char *title;
        double limit_s;  // 0: no limit
        std::function<Result()> run;
    };
    const std::vector<Criterion> all = {
        {"AC-1", "sMZI/aMZI closed forms", 1, ac1},
        {"AC-2", "permanent engine", 10, ac2},
        {"AC-3", "HOM", 1, ac3},
        {"AC-4", "CI fringe law", 5, ac4},
        {"AC-5", "parity law", 10, ac5},
        {"AC-6", "resource counts", 1, ac6},
        {"AC-7", "mesh realizes CI", 30, ac7},
        {"AC-8", "compiler soundness", 60, ac8},
        {"AC-9", "loop spectroscopy", 10, ac9},
        {"AC-10", "temporal unfolding", 10, ac10},
        {"AC-11", "determinism", 0, ac11},
    };
    int failed = 0;
    for (const Criterion &c : all) {
        const auto t0 = std::chrono::steady_clock::now();
        Result r;
        try {
            r = c.run();
        } catch (const std::exception &e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.limit_s > 0 && secs > c.limit_s) {
            r.pass = false;
            r.detail += "; took " + sci(secs) + " s, limit " + sci(c.limit_s) + " s";
        }
        std::printf("%s %s  %s: %s [%.3f s]\n", c.id, r.pass ? "PASS" : "FAIL", c.title, r.detail.c_str(), secs);
        std::fflush(stdout);
        failed += r.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
