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


#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "bricksim/compile.hpp"
#include "bricksim/cyclic.hpp"
#include "bricksim/errors.hpp"
#include "bricksim/fock.hpp"
#include "bricksim/io.hpp"
#include "bricksim/linops.hpp"
#include "bricksim/mesh.hpp"
#include "bricksim/temporal.hpp"

namespace py = pybind11;
using namespace bricksim;

namespace {

PhasePlacement placement_of(const std::string &name) {
    if (name == "single") return PhasePlacement::kSingleInternal;
    if (name == "layer4") return PhasePlacement::kLayer4Difference;
    throw InvalidArgument("placement must be 'single' or 'layer4'");
}

py::list distribution_list(const OutputDistribution &d) {
    py::list out;
    for (std::size_t k = 0; k < d.outcomes.size(); ++k) {
        out.append(py::make_tuple(py::tuple(py::cast(d.outcomes[k])), d.probabilities[k]));
    }
    return out;
}

py::dict cavity_dict(const MeshCavity &c) {
    py::dict d;
    d["buls"] = c.buls;
    d["coupler"] = c.coupler_tbu;
    d["bus_in_index"] = c.bus_in_index;
    d["bus_out_index"] = c.bus_out_index;
    d["round_trip_s"] = c.round_trip_s;
    d["loop_tbus"] = [&] {
        std::vector<int> ids;
        for (const Hop &h : c.loop) ids.push_back(h.tbu);
        return ids;
    }();
    return d;
}

LoopProgram make_loop(int bins, int passes, double tau_s,
                      const std::vector<std::tuple<int, int, double, double>> &schedule) {
    LoopProgram p{bins, passes, tau_s, {}};
    for (const auto &[pass, step, theta, phi] : schedule) p.schedule.push_back({pass, step, theta, phi});
    return p;
}

}  // namespace

PYBIND11_MODULE(_bricksim, m) {
    m.doc() = "Reconfigurable bricks-mesh photonics: linear optics, Fock-space sampling, mesh compilation.";

    auto base = py::register_exception<Error>(m, "BricksimError");
    py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
    py::register_exception<SingularFeedback>(m, "SingularFeedback", base.ptr());
    py::register_exception<StateSpaceTooLarge>(m, "StateSpaceTooLarge", base.ptr());
    py::register_exception<DegenerateResult>(m, "DegenerateResult", base.ptr());

    m.def("bs_matrix", &bs_matrix);
    m.def("ps_matrix", &ps_matrix, py::arg("phi"));
    m.def("smzi_matrix", &smzi_matrix, py::arg("phi1"), py::arg("phi2"));
    m.def("amzi_matrix", &amzi_matrix, py::arg("phi1"), py::arg("phi2"));
    m.def("haar_random_unitary", &haar_random_unitary, py::arg("m"), py::arg("seed"));
    m.def("unitarity_deviation", [](const ComplexMatrix &u) { return is_unitary(u).max_deviation; },
          py::arg("u"));

    m.def(
        "permanent",
        [](const ComplexMatrix &b, const std::string &method) {
            if (method == "ryser") return permanent_ryser(b);
            if (method == "naive") return permanent_naive(b);
            throw InvalidArgument("method must be 'ryser' or 'naive'");
        },
        py::arg("b"), py::arg("method") = "ryser");
    m.def("output_probability", &output_probability, py::arg("u"), py::arg("input"), py::arg("output"));
    m.def("distinguishable_probability", &distinguishable_probability, py::arg("u"), py::arg("input"),
          py::arg("output"));
    m.def("partial_probability", &partial_probability, py::arg("u"), py::arg("input"), py::arg("output"),
          py::arg("gram"));
    m.def(
        "full_distribution",
        [](const ComplexMatrix &u, const OccupationVector &s, std::uint64_t cap) {
            return distribution_list(full_distribution(u, s, cap));
        },
        py::arg("u"), py::arg("input"), py::arg("cap") = kDefaultStateCap);
    m.def("sample", &sample, py::arg("u"), py::arg("input"), py::arg("count"), py::arg("seed"),
          py::arg("cap") = kDefaultStateCap);

    m.def(
        "ci_unitary",
        [](int n, double phase, const std::string &placement) {
            return build_ci_unitary({n, phase, placement_of(placement)});
        },
        py::arg("n"), py::arg("phase"), py::arg("placement") = "single");
    m.def("ci_canonical_input", &ci_canonical_input, py::arg("n"));
    m.def("ci_probability_formula", &ci_probability_formula, py::arg("n"), py::arg("p"), py::arg("q"),
          py::arg("phi"));
    m.def(
        "ci_probability",
        [](int n, double phase, const OccupationVector &output, const std::string &placement) {
            return ci_exact_probability({n, phase, placement_of(placement)},
                                        make_ci_outcome(ci_canonical_input(n), output));
        },
        py::arg("n"), py::arg("phase"), py::arg("output"), py::arg("placement") = "single");
    m.def(
        "ci_reachable_outputs",
        [](int n) {
            std::vector<OccupationVector> out;
            for (const CiOutcome &o : ci_reachable_outcomes(n)) out.push_back(o.output);
            return out;
        },
        py::arg("n"));
    m.def(
        "fringe_scan",
        [](int n, const OccupationVector &output, int points, std::optional<ComplexMatrix> gram,
           const std::string &placement) {
            const FringeScan s = fringe_scan({n, 0.0, placement_of(placement)},
                                             make_ci_outcome(ci_canonical_input(n), output),
                                             uniform_phase_grid(points), gram);
            return py::make_tuple(s.phases, s.probabilities, s.visibility);
        },
        py::arg("n"), py::arg("output"), py::arg("points") = 24, py::arg("gram") = py::none(),
        py::arg("placement") = "single");

    m.def(
        "resource_report",
        [](const std::string &topology) {
            const MeshTopology t = build_topology(parse_topology_arg(topology));
            const ResourceReport r = resource_report(t);
            py::dict d;
            d["tbus"] = r.tbu_count;
            d["horizontal"] = r.horizontal_count;
            d["vertical"] = r.vertical_count;
            d["modes"] = r.external_modes;
            d["links"] = t.links.size();
            d["feedforward_equivalent"] = r.feedforward_equivalent;
            d["ratio"] = r.ratio;
            return d;
        },
        py::arg("topology"));
    m.def(
        "compile_program",
        [](const std::string &json_text, std::optional<double> frequency_hz) {
            const MeshProgramFile f = parse_mesh_program(json_text);
            return compile_mesh(f.topology, f.program, frequency_hz).unitary;
        },
        py::arg("program_json"), py::arg("frequency_hz") = py::none());
    m.def(
        "spectral_sweep",
        [](const std::string &json_text, int in_index, int out_index, const std::vector<double> &freqs) {
            const MeshProgramFile f = parse_mesh_program(json_text);
            return spectral_sweep(f.topology, f.program, in_index, out_index, freqs).responses;
        },
        py::arg("program_json"), py::arg("in_index"), py::arg("out_index"), py::arg("frequencies"));
    m.def(
        "estimate_fsr",
        [](const std::vector<double> &freqs, const std::vector<Complex> &responses) {
            SpectralSweep s;
            s.frequencies = freqs;
            s.responses = responses;
            return estimate_fsr(s);
        },
        py::arg("frequencies"), py::arg("responses"));
    m.def(
        "cavity_metrics",
        [](double mzi_length_m, double group_index, int buls) {
            const CavityMetrics c = cavity_metrics(mzi_length_m, group_index, buls);
            return py::make_tuple(c.round_trip_time_s, c.fsr_hz);
        },
        py::arg("mzi_length_m"), py::arg("group_index"), py::arg("buls"));
    m.def(
        "loop_program",
        [](const std::string &topology, double mzi_length_m, double group_index, int large_buls,
           double coupler_offset) {
            const TopologySpec spec = parse_topology_arg(topology);
            const MeshTopology t = build_topology(spec);
            const MeshLoopProgram lp = mesh_loop_program(t, mzi_length_m, group_index, large_buls,
                                                         coupler_offset);
            py::dict d;
            d["program_json"] = mesh_program_to_json(spec, t, lp.program);
            d["small"] = cavity_dict(lp.small);
            d["large"] = cavity_dict(lp.large);
            return d;
        },
        py::arg("topology") = "fig2", py::arg("mzi_length_m") = 450e-6, py::arg("group_index") = 5.0,
        py::arg("large_buls") = 6, py::arg("coupler_offset") = 0.5);

    m.def("loop_gate", &loop_gate, py::arg("theta"), py::arg("phi"));
    m.def(
        "unfold",
        [](int bins, int passes, double tau_s,
           const std::vector<std::tuple<int, int, double, double>> &schedule) {
            const UnfoldedCircuit c = unfold_to_spatial(make_loop(bins, passes, tau_s, schedule));
            return py::make_tuple(c.unitary, c.depth);
        },
        py::arg("bins"), py::arg("passes"), py::arg("tau_s"), py::arg("schedule"));
    m.def(
        "temporal_sampling",
        [](int bins, int passes, double tau_s,
           const std::vector<std::tuple<int, int, double, double>> &schedule,
           const OccupationVector &input, std::uint64_t cap) {
            return distribution_list(temporal_sampling(make_loop(bins, passes, tau_s, schedule), input, cap));
        },
        py::arg("bins"), py::arg("passes"), py::arg("tau_s"), py::arg("schedule"), py::arg("input"),
        py::arg("cap") = kDefaultStateCap);
}
