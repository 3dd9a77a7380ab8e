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


// bricksim command-line front end.
//
// Exit codes: 0 ok, 2 usage or input error, 3 singular feedback, 4 state space
// over the cap, 5 degenerate result. Primary outputs go to --out (or stdout);
// one-line summaries go to stdout, or to stderr when stdout carries the data.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bricksim/compile.hpp"
#include "bricksim/cyclic.hpp"
#include "bricksim/errors.hpp"
#include "bricksim/fock.hpp"
#include "bricksim/io.hpp"
#include "bricksim/mesh.hpp"
#include "bricksim/routing.hpp"
#include "bricksim/temporal.hpp"

namespace {

using namespace bricksim;

struct Output {
    std::string path;

    void primary(const std::string &content) const {
        if (path.empty() || path == "-") {
            std::cout << content;
        } else {
            write_text_file(path, content);
        }
    }
    std::ostream &summary() const { return path.empty() || path == "-" ? std::cerr : std::cout; }
};

OccupationVector parse_occupation(const std::string &text) {
    OccupationVector v;
    std::string item;
    for (char c : text + ",") {
        if (c == ',' || c == ';') {
            if (item.empty()) throw InvalidArgument("bad occupation '" + text + "'");
            std::size_t used = 0;
            int k = 0;
            try {
                k = std::stoi(item, &used);
            } catch (const std::exception &) {
                used = 0;
            }
            if (used != item.size() || k < 0) throw InvalidArgument("bad occupation '" + text + "'");
            v.push_back(k);
            item.clear();
        } else if (c != ' ') {
            item += c;
        }
    }
    return v;
}

// Where a sampling-type command takes its unitary from.
struct UnitarySource {
    std::string program;
    std::string unitary;
    std::string loop;
    int haar = 0;
    std::optional<double> freq;
    std::uint64_t seed = 0;

    void add_to(CLI::App *cmd) {
        auto *p = cmd->add_option("--program", program, "Mesh program JSON (compiled first)");
        auto *u = cmd->add_option("--unitary", unitary, "Matrix JSON (e.g. from 'compile')");
        auto *l = cmd->add_option("--loop", loop, "Loop program JSON (unfolded first)");
        auto *h = cmd->add_option("--haar", haar, "Haar-random unitary of this size (uses --seed)")
                      ->check(CLI::Range(1, 4096));
        p->excludes(u, l, h);
        u->excludes(l, h);
        l->excludes(h);
        cmd->add_option("--freq", freq, "Frequency in Hz for --program");
    }

    ComplexMatrix load() const {
        if (!program.empty()) {
            const MeshProgramFile f = parse_mesh_program(read_text_file(program));
            return compile_mesh(f.topology, f.program, freq).unitary;
        }
        if (!unitary.empty()) return parse_matrix(read_text_file(unitary));
        if (!loop.empty()) return unfold_to_spatial(parse_loop_program(read_text_file(loop))).unitary;
        if (haar > 0) return haar_random_unitary(haar, seed);
        throw InvalidArgument("give one of --program, --unitary, --loop or --haar");
    }
};

std::string report_json(const MeshTopology &t) {
    const ResourceReport r = resource_report(t);
    std::ostringstream out;
    out << "{\n  \"topology\": \"" << t.name << "\",\n  \"tbus\": " << r.tbu_count
        << ",\n  \"horizontal\": " << r.horizontal_count << ",\n  \"vertical\": " << r.vertical_count
        << ",\n  \"modes\": " << r.external_modes << ",\n  \"links\": " << t.links.size()
        << ",\n  \"feedforward_equivalent\": " << r.feedforward_equivalent
        << ",\n  \"ratio\": " << format_double(r.ratio) << ",\n  \"cavities\": {";
    for (int buls : {4, 6, 8}) {
        out << (buls == 4 ? "" : ", ") << "\"" << buls << "\": " << find_cavities(t, buls).size();
    }
    out << "}\n}\n";
    return out.str();
}

int run_bench(int n_min, int n_max, std::uint64_t seed, const Output &out,
              const std::string &timing_path) {
    std::string primary = "n,check_pass,rel_error\n";
    std::string timing = "n,seconds\n";
    double last = 0.0;
    for (int n = n_min; n <= n_max; ++n) {
        const ComplexMatrix u = haar_random_unitary(std::max(n, 1), seed + n);
        const ComplexMatrix b = u.topLeftCorner(n, n);
        const auto t0 = std::chrono::steady_clock::now();
        const Complex ry = permanent_ryser(b);
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::string check = "skipped", err;
        if (n <= kNaivePermanentMaxN) {
            const Complex nv = permanent_naive(b);
            const double rel = std::abs(ry - nv) / std::max(std::abs(nv), 1e-300);
            check = rel < 1e-10 ? "true" : "false";
            err = format_double(rel);
        }
        primary += std::to_string(n) + "," + check + "," + err + "\n";
        timing += std::to_string(n) + "," + format_double(seconds) + "\n";
        if (n > 12 && seconds < last) {
            std::cerr << "warning: Ryser time for n=" << n << " below n=" << n - 1 << "\n";
        }
        last = seconds;
    }
    out.primary(primary);
    if (!timing_path.empty()) write_text_file(timing_path, timing);
    return primary.find(",false,") == std::string::npos ? 0 : 1;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"bricksim: recirculating MZI mesh and photonic workload simulator"};
    app.require_subcommand(1);
    Output out;
    std::uint64_t seed = 0;
    std::uint64_t cap = kDefaultStateCap;

    // mesh-info
    std::string topology = "fig2";
    auto *info = app.add_subcommand("mesh-info", "Resource report of a mesh topology (JSON)");
    info->add_option("--topology", topology, "fig2, fig3 or RxC")->capture_default_str();
    info->add_option("--out", out.path, "Output file (default stdout)");

    // compile
    std::string program_path;
    std::optional<double> freq;
    auto *comp = app.add_subcommand("compile", "Compile a mesh program to its unitary (JSON)");
    comp->add_option("--program", program_path, "Mesh program JSON")->required();
    comp->add_option("--freq", freq, "Frequency in Hz (default: no delay phases)");
    comp->add_option("--out", out.path, "Output file (default stdout)");

    // sweep
    int from = 0, to = 0, points = 2001;
    double f_start = 0.0, f_stop = 100e9;
    auto *sweep = app.add_subcommand("sweep", "Frequency response between two external modes (CSV)");
    sweep->add_option("--program", program_path, "Mesh program JSON")->required();
    sweep->add_option("--from", from, "Input mode index")->required();
    sweep->add_option("--to", to, "Output mode index")->required();
    sweep->add_option("--freq-start", f_start, "Hz")->capture_default_str();
    sweep->add_option("--freq-stop", f_stop, "Hz")->capture_default_str();
    sweep->add_option("--freq-points", points, "Grid points")->capture_default_str()->check(CLI::Range(1, 10000000));
    sweep->add_option("--out", out.path, "Output file (default stdout)");

    // sample / distribution
    UnitarySource src;
    std::string input;
    std::uint64_t count = 1000;
    auto *samp = app.add_subcommand("sample", "Boson-sampling draws (CSV, one row per draw)");
    src.add_to(samp);
    samp->add_option("--input", input, "Input occupation, e.g. 1,1,0")->required();
    samp->add_option("--count", count, "Number of draws")->capture_default_str();
    samp->add_option("--seed", seed, "RNG seed")->capture_default_str();
    samp->add_option("--cap", cap, "State-space cap")->capture_default_str();
    samp->add_option("--out", out.path, "Output file (default stdout)");

    bool distinguishable = false;
    auto *dist = app.add_subcommand("distribution", "Full output distribution (CSV)");
    src.add_to(dist);
    dist->add_option("--input", input, "Input occupation, e.g. 1,1,0")->required();
    dist->add_option("--seed", seed, "Seed for --haar")->capture_default_str();
    dist->add_option("--cap", cap, "State-space cap")->capture_default_str();
    dist->add_flag("--distinguishable", distinguishable, "Labelled (classical) photons");
    dist->add_option("--out", out.path, "Output file (default stdout)");

    // ci-scan
    int n = 3, grid = 24;
    std::string ci_output, gram_path, placement = "single";
    auto *ci = app.add_subcommand("ci-scan", "Cyclic-interferometer fringe scan (CSV) and visibility");
    ci->add_option("--n", n, "Photons (CI has 2n modes)")->capture_default_str();
    ci->add_option("--grid", grid, "Phase points over [0, 2 pi)")->capture_default_str();
    ci->add_option("--output", ci_output, "Detected occupation (default: first reachable outcome)");
    ci->add_option("--gram", gram_path, "Gram matrix JSON of the photons");
    ci->add_option("--placement", placement, "single or layer4")
        ->check(CLI::IsMember({"single", "layer4"}))
        ->capture_default_str();
    ci->add_option("--out", out.path, "Output file (default stdout)");

    // unfold
    std::string loop_path;
    std::optional<double> tau;
    auto *unf = app.add_subcommand("unfold", "Unfold a time-bin loop program to its spatial unitary (JSON)");
    unf->add_option("--loop", loop_path, "Loop program JSON")->required();
    unf->add_option("--tau", tau, "Override tau_s");
    unf->add_option("--out", out.path, "Output file (default stdout)");

    // cavity
    double mzi_length = 450e-6, group_index = 5.0;
    int buls = 4;
    auto *cav = app.add_subcommand("cavity", "Round-trip time and FSR of a mesh loop");
    cav->add_option("--mzi-length", mzi_length, "MZI length in m")->capture_default_str();
    cav->add_option("--group-index", group_index, "Group index")->capture_default_str();
    cav->add_option("--buls", buls, "Loop length in BULs")->capture_default_str();

    // loop-program
    int large_buls = 6;
    double offset = 0.5;
    auto *lprog = app.add_subcommand("loop-program", "Mesh program engaging a 4-BUL and a longer loop");
    lprog->add_option("--topology", topology, "fig2, fig3 or RxC")->capture_default_str();
    lprog->add_option("--mzi-length", mzi_length, "MZI length in m")->capture_default_str();
    lprog->add_option("--group-index", group_index, "Group index")->capture_default_str();
    lprog->add_option("--large-buls", large_buls, "Length of the second loop")->capture_default_str();
    lprog->add_option("--coupler-offset", offset, "Coupler detuning in rad")->capture_default_str();
    lprog->add_option("--out", out.path, "Output file (default stdout)");

    // permanent
    std::string matrix_path, method = "ryser";
    auto *perm = app.add_subcommand("permanent", "Permanent of a square matrix, printed as re,im");
    perm->add_option("--matrix", matrix_path, "Matrix JSON")->required();
    perm->add_option("--method", method, "ryser or naive")
        ->check(CLI::IsMember({"ryser", "naive"}))
        ->capture_default_str();

    // bench-permanent
    int n_min = 1;
    int n_max = 16;
    std::string timing_path;
    auto *bench = app.add_subcommand("bench-permanent", "Ryser timings with a naive cross-check for n <= 8");
    bench->add_option("--n-min", n_min, "Smallest n")->capture_default_str();
    bench->add_option("--n", n_max, "Largest n")->capture_default_str();
    bench->add_option("--seed", seed, "RNG seed")->capture_default_str();
    bench->add_option("--out", out.path, "CSV n,check_pass,rel_error (default stdout)");
    bench->add_option("--timing", timing_path, "CSV n,seconds");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        src.seed = seed;
        if (*info) {
            out.primary(report_json(build_topology(parse_topology_arg(topology))));
        } else if (*comp) {
            const MeshProgramFile f = parse_mesh_program(read_text_file(program_path));
            const CompiledUnitary cu = compile_mesh(f.topology, f.program, freq);
            out.primary(compiled_unitary_to_json(f.topology.name, cu));
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.3e", is_unitary(cu.unitary).max_deviation);
            out.summary() << "unitarity_deviation," << buf << "\n";
        } else if (*sweep) {
            const MeshProgramFile f = parse_mesh_program(read_text_file(program_path));
            const SpectralSweep sw = spectral_sweep(f.topology, f.program, from, to,
                                                    linear_frequency_grid(f_start, f_stop, points));
            out.primary(sweep_csv(sw));
            out.summary() << "failed_points," << sw.failed.size() << "\n";
            for (const auto &m : sw.failure_messages) std::cerr << m << "\n";
            std::string fsr = "none";
            try {
                fsr = format_double(estimate_fsr(sw));
            } catch (const DegenerateResult &) {
            }
            out.summary() << "fsr_hz," << fsr << "\n";
        } else if (*samp) {
            const ComplexMatrix u = src.load();
            const OccupationVector s = parse_occupation(input);
            out.primary(samples_csv(sample(u, s, count, seed, cap), static_cast<int>(u.rows())));
        } else if (*dist) {
            const ComplexMatrix u = src.load();
            const OccupationVector s = parse_occupation(input);
            OutputDistribution d = full_distribution(u, s, cap);
            if (distinguishable) {
                for (std::size_t k = 0; k < d.outcomes.size(); ++k) {
                    d.probabilities[k] = distinguishable_probability(u, s, d.outcomes[k]);
                }
            }
            out.primary(distribution_csv(d));
            out.summary() << "total," << format_double(d.total()) << "\n";
        } else if (*ci) {
            if (n < 2) throw InvalidArgument("ci-scan: n must be >= 2");
            CiConfig cfg{n, 0.0, placement == "layer4" ? PhasePlacement::kLayer4Difference
                                                       : PhasePlacement::kSingleInternal};
            CiOutcome outcome;
            if (ci_output.empty()) {
                const auto reachable = ci_reachable_outcomes(n);
                if (reachable.empty()) throw DegenerateResult("ci-scan: no reachable outcome");
                outcome = reachable.front();
            } else {
                outcome = make_ci_outcome(ci_canonical_input(n), parse_occupation(ci_output));
            }
            std::optional<GramMatrix> g;
            if (!gram_path.empty()) g = parse_matrix(read_text_file(gram_path));
            const FringeScan scan = fringe_scan(cfg, outcome, uniform_phase_grid(grid), g);
            const double vis = gi_report(scan);
            out.primary(fringe_csv(scan));
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.9f", vis);
            out.summary() << "output," << format_occupation(outcome.output) << "\n";
            out.summary() << "visibility," << buf << "\n";
        } else if (*unf) {
            LoopProgram p = parse_loop_program(read_text_file(loop_path));
            if (tau) p.tau_s = *tau;
            const UnfoldedCircuit c = unfold_to_spatial(p);
            std::ostringstream js;
            js << "{\n  \"bins\": " << p.bins << ",\n  \"passes\": " << p.passes
               << ",\n  \"tau_s\": " << format_double(p.tau_s) << ",\n  \"depth\": " << c.depth
               << ",\n  \"unitary\": " << matrix_to_json(c.unitary, 2) << "\n}\n";
            out.primary(js.str());
            out.summary() << "depth," << c.depth << "\n";
        } else if (*cav) {
            const CavityMetrics m = cavity_metrics(mzi_length, group_index, buls);
            std::cout << "round_trip_s," << format_double(m.round_trip_time_s) << "\n"
                      << "fsr_hz," << format_double(m.fsr_hz) << "\n";
        } else if (*lprog) {
            const TopologySpec spec = parse_topology_arg(topology);
            const MeshTopology t = build_topology(spec);
            const MeshLoopProgram lp = mesh_loop_program(t, mzi_length, group_index, large_buls, offset);
            out.primary(mesh_program_to_json(spec, t, lp.program));
            out.summary() << "loop,buls,coupler,from,to,round_trip_s,fsr_hz\n";
            for (const auto &[name, c] : {std::pair{"small", &lp.small}, std::pair{"large", &lp.large}}) {
                out.summary() << name << "," << c->buls << "," << t.tbus[c->coupler_tbu].label << ","
                              << c->bus_in_index << "," << c->bus_out_index << ","
                              << format_double(c->round_trip_s) << ","
                              << format_double(1.0 / c->round_trip_s) << "\n";
            }
        } else if (*perm) {
            const ComplexMatrix m = parse_matrix(read_text_file(matrix_path));
            const Complex v = method == "naive" ? permanent_naive(m) : permanent_ryser(m);
            std::cout << format_double(v.real()) << "," << format_double(v.imag()) << "\n";
        } else if (*bench) {
            if (n_min < 1 || n_max < n_min || n_max > 30) {
                throw InvalidArgument("bench-permanent: need 1 <= n-min <= n <= 30");
            }
            return run_bench(n_min, n_max, seed, out, timing_path);
        }
    } catch (const SingularFeedback &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const StateSpaceTooLarge &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const DegenerateResult &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
