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


#include "bricksim/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "bricksim/errors.hpp"
#include "json.hpp"

namespace bricksim {

using nlohmann::json;

namespace {

json parse_json(const std::string &text, const std::string &what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        throw InvalidArgument(what + ": malformed JSON: " + e.what());
    }
}

void check_keys(const json &obj, std::initializer_list<const char *> allowed,
                const std::string &where) {
    if (!obj.is_object()) throw InvalidArgument(where + ": expected an object");
    for (const auto &item : obj.items()) {
        bool ok = false;
        for (const char *a : allowed) ok = ok || item.key() == a;
        if (!ok) throw InvalidArgument(where + ": unknown field '" + item.key() + "'");
    }
}

const json &field(const json &obj, const char *key, const std::string &where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw InvalidArgument(where + ": missing field '" + key + "'");
    return *it;
}

double get_double(const json &obj, const char *key, const std::string &where) {
    const json &v = field(obj, key, where);
    if (!v.is_number()) throw InvalidArgument(where + ": '" + key + "' must be a number");
    return v.get<double>();
}

double get_double_or(const json &obj, const char *key, double fallback, const std::string &where) {
    return obj.contains(key) ? get_double(obj, key, where) : fallback;
}

int get_int(const json &obj, const char *key, const std::string &where) {
    const json &v = field(obj, key, where);
    if (!v.is_number_integer()) throw InvalidArgument(where + ": '" + key + "' must be an integer");
    return v.get<int>();
}

std::vector<std::pair<int, int>> get_pairs(const json &obj, const char *key,
                                           const std::string &where) {
    std::vector<std::pair<int, int>> out;
    if (!obj.contains(key)) return out;
    const json &arr = obj.at(key);
    if (!arr.is_array()) throw InvalidArgument(where + ": '" + key + "' must be an array");
    for (const json &p : arr) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() ||
            !p[1].is_number_integer()) {
            throw InvalidArgument(where + ": '" + key + "' entries must be [i, k] integer pairs");
        }
        out.emplace_back(p[0].get<int>(), p[1].get<int>());
    }
    return out;
}

TopologySpec parse_topology_json(const json &t) {
    TopologySpec spec;
    if (t.is_string()) {
        spec.preset = t.get<std::string>();
        if (spec.preset != "fig2" && spec.preset != "fig3") {
            throw InvalidArgument("topology: unknown preset '" + spec.preset + "'");
        }
        spec.name = spec.preset;
        return spec;
    }
    const std::string where = "topology";
    check_keys(t, {"rows", "cols", "removed_rungs", "stub_rungs", "name"}, where);
    spec.rows = get_int(t, "rows", where);
    spec.cols = get_int(t, "cols", where);
    spec.edits.removed_rungs = get_pairs(t, "removed_rungs", where);
    spec.edits.stub_rungs = get_pairs(t, "stub_rungs", where);
    if (t.contains("name")) {
        if (!t.at("name").is_string()) throw InvalidArgument("topology: 'name' must be a string");
        spec.name = t.at("name").get<std::string>();
    }
    return spec;
}

GateSetting parse_setting(const json &s, const std::string &where) {
    check_keys(s, {"phi1", "phi2"}, where);
    return {get_double(s, "phi1", where), get_double(s, "phi2", where)};
}

Complex parse_complex(const json &v, const std::string &where) {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        return {v[0].get<double>(), v[1].get<double>()};
    }
    throw InvalidArgument(where + ": entries must be numbers or [re, im] pairs");
}

std::string json_string(const std::string &s) { return json(s).dump(); }

std::string json_number(double x) { return std::isfinite(x) ? format_double(x) : "null"; }

std::string pairs_json(const std::vector<std::pair<int, int>> &pairs) {
    std::string out = "[";
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        if (k) out += ", ";
        out += "[" + std::to_string(pairs[k].first) + ", " + std::to_string(pairs[k].second) + "]";
    }
    return out + "]";
}

}  // namespace

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

TopologySpec parse_topology_arg(const std::string &text) {
    if (text == "fig2" || text == "fig3") return parse_topology_json(json(text));
    const auto x = text.find('x');
    if (x != std::string::npos) {
        try {
            std::size_t used_r = 0, used_c = 0;
            const int rows = std::stoi(text.substr(0, x), &used_r);
            const int cols = std::stoi(text.substr(x + 1), &used_c);
            if (used_r == x && used_c == text.size() - x - 1) {
                TopologySpec spec;
                spec.rows = rows;
                spec.cols = cols;
                return spec;
            }
        } catch (const std::exception &) {
        }
    }
    throw InvalidArgument("unknown topology '" + text + "' (expected fig2, fig3 or RxC)");
}

MeshTopology build_topology(const TopologySpec &spec) {
    if (!spec.preset.empty()) return build_preset(spec.preset);
    const std::string name = spec.name.empty() ? "bricks(" + std::to_string(spec.rows) + "," +
                                                     std::to_string(spec.cols) + ")"
                                               : spec.name;
    return build_bricks_mesh(spec.rows, spec.cols, spec.edits, name);
}

MeshProgramFile parse_mesh_program(const std::string &json_text) {
    const std::string where = "mesh program";
    const json doc = parse_json(json_text, where);
    check_keys(doc, {"topology", "default_setting", "settings", "segments"}, where);
    MeshProgramFile file;
    file.spec = parse_topology_json(field(doc, "topology", where));
    file.topology = build_topology(file.spec);
    const MeshTopology &topo = file.topology;
    if (doc.contains("default_setting")) {
        const GateSetting d = parse_setting(doc.at("default_setting"), where + ": default_setting");
        file.program = uniform_program(topo, d);
    }
    if (doc.contains("settings")) {
        const json &arr = doc.at("settings");
        if (!arr.is_array()) throw InvalidArgument(where + ": 'settings' must be an array");
        for (std::size_t k = 0; k < arr.size(); ++k) {
            const std::string w = where + ": settings[" + std::to_string(k) + "]";
            const json &s = arr[k];
            check_keys(s, {"tbu", "label", "phi1", "phi2"}, w);
            const json &id = field(s, "tbu", w);
            int tbu = -1;
            if (id.is_number_integer()) {
                tbu = id.get<int>();
            } else if (id.is_string()) {
                tbu = find_tbu(topo, id.get<std::string>());
            } else {
                throw InvalidArgument(w + ": 'tbu' must be an id or a label");
            }
            if (tbu < 0 || tbu >= static_cast<int>(topo.tbus.size())) {
                throw InvalidArgument(w + ": no such TBU " + id.dump());
            }
            if (s.contains("label") && s.at("label") != topo.tbus[tbu].label) {
                throw InvalidArgument(w + ": label " + s.at("label").dump() + " does not match TBU " +
                                      std::to_string(tbu) + " (" + topo.tbus[tbu].label + ")");
            }
            file.program.settings[tbu] = {get_double(s, "phi1", w), get_double(s, "phi2", w)};
        }
    }
    if (doc.contains("segments")) {
        const json &arr = doc.at("segments");
        if (!arr.is_array()) throw InvalidArgument(where + ": 'segments' must be an array");
        for (std::size_t k = 0; k < arr.size(); ++k) {
            const std::string w = where + ": segments[" + std::to_string(k) + "]";
            const json &s = arr[k];
            check_keys(s, {"link", "phase", "delay_s"}, w);
            const int l = get_int(s, "link", w);
            if (l < 0 || l >= static_cast<int>(topo.links.size())) {
                throw InvalidArgument(w + ": no such link " + std::to_string(l));
            }
            file.program.segments[l] = {get_double_or(s, "phase", topo.links[l].phase, w),
                                        get_double_or(s, "delay_s", topo.links[l].delay_s, w)};
        }
    }
    require_valid_program(topo, file.program);
    return file;
}

std::string mesh_program_to_json(const TopologySpec &spec, const MeshTopology &topology,
                                 const MeshProgram &program) {
    std::ostringstream out;
    out << "{\n  \"topology\": ";
    if (!spec.preset.empty()) {
        out << json_string(spec.preset);
    } else {
        out << "{\"rows\": " << spec.rows << ", \"cols\": " << spec.cols
            << ", \"removed_rungs\": " << pairs_json(spec.edits.removed_rungs)
            << ", \"stub_rungs\": " << pairs_json(spec.edits.stub_rungs);
        if (!spec.name.empty()) out << ", \"name\": " << json_string(spec.name);
        out << "}";
    }
    out << ",\n  \"settings\": [";
    bool first = true;
    for (const auto &[id, s] : program.settings) {
        out << (first ? "\n" : ",\n") << "    {\"tbu\": " << id << ", \"label\": "
            << json_string(topology.tbus.at(id).label) << ", \"phi1\": " << json_number(s.phi1)
            << ", \"phi2\": " << json_number(s.phi2) << "}";
        first = false;
    }
    out << "\n  ],\n  \"segments\": [";
    first = true;
    for (const auto &[l, s] : program.segments) {
        out << (first ? "\n" : ",\n") << "    {\"link\": " << l << ", \"phase\": "
            << json_number(s.phase) << ", \"delay_s\": " << json_number(s.delay_s) << "}";
        first = false;
    }
    out << (first ? "]\n}\n" : "\n  ]\n}\n");
    return out.str();
}

LoopProgram parse_loop_program(const std::string &json_text) {
    const std::string where = "loop program";
    const json doc = parse_json(json_text, where);
    check_keys(doc, {"bins", "passes", "tau_s", "schedule"}, where);
    LoopProgram p;
    p.bins = get_int(doc, "bins", where);
    p.passes = get_int(doc, "passes", where);
    p.tau_s = get_double(doc, "tau_s", where);
    if (doc.contains("schedule")) {
        const json &arr = doc.at("schedule");
        if (!arr.is_array()) throw InvalidArgument(where + ": 'schedule' must be an array");
        for (std::size_t k = 0; k < arr.size(); ++k) {
            const std::string w = where + ": schedule[" + std::to_string(k) + "]";
            check_keys(arr[k], {"pass", "step", "theta", "phi"}, w);
            p.schedule.push_back({get_int(arr[k], "pass", w), get_int(arr[k], "step", w),
                                  get_double(arr[k], "theta", w), get_double_or(arr[k], "phi", 0.0, w)});
        }
    }
    validate_loop_program(p);
    return p;
}

std::string loop_program_to_json(const LoopProgram &program) {
    std::ostringstream out;
    out << "{\n  \"bins\": " << program.bins << ",\n  \"passes\": " << program.passes
        << ",\n  \"tau_s\": " << json_number(program.tau_s) << ",\n  \"schedule\": [";
    for (std::size_t k = 0; k < program.schedule.size(); ++k) {
        const LoopStep &s = program.schedule[k];
        out << (k ? ",\n" : "\n") << "    {\"pass\": " << s.pass << ", \"step\": " << s.step
            << ", \"theta\": " << json_number(s.theta) << ", \"phi\": " << json_number(s.phi) << "}";
    }
    out << (program.schedule.empty() ? "]\n}\n" : "\n  ]\n}\n");
    return out.str();
}

ComplexMatrix parse_matrix(const std::string &json_text) {
    const std::string where = "matrix";
    json doc = parse_json(json_text, where);
    if (doc.is_object()) {
        if (doc.contains("gram")) {
            check_keys(doc, {"gram"}, where);
            doc = doc.at("gram");
        } else {
            // Compiled-unitary files carry extra descriptive fields.
            check_keys(doc, {"unitary", "topology", "frequency_hz", "port_order", "ports",
                             "unitarity_deviation"},
                       where);
            doc = field(doc, "unitary", where);
        }
    }
    if (!doc.is_array() || doc.empty()) throw InvalidArgument(where + ": expected an array of rows");
    const Index rows = static_cast<Index>(doc.size());
    Index cols = -1;
    ComplexMatrix m;
    for (Index r = 0; r < rows; ++r) {
        const json &row = doc[r];
        if (!row.is_array()) throw InvalidArgument(where + ": each row must be an array");
        if (cols < 0) {
            cols = static_cast<Index>(row.size());
            m.resize(rows, cols);
        }
        if (static_cast<Index>(row.size()) != cols) throw InvalidArgument(where + ": ragged rows");
        for (Index c = 0; c < cols; ++c) m(r, c) = parse_complex(row[c], where);
    }
    if (!all_finite(m)) throw InvalidArgument(where + ": non-finite entry");
    return m;
}

std::string matrix_to_json(const ComplexMatrix &m, int indent) {
    const std::string pad(indent + 2, ' ');
    std::string out = "[";
    for (Index r = 0; r < m.rows(); ++r) {
        out += (r ? ",\n" : "\n") + pad + "[";
        for (Index c = 0; c < m.cols(); ++c) {
            if (c) out += ", ";
            out += "[" + json_number(m(r, c).real()) + ", " + json_number(m(r, c).imag()) + "]";
        }
        out += "]";
    }
    out += "\n" + std::string(indent, ' ') + "]";
    return out;
}

std::string compiled_unitary_to_json(const std::string &topology_name, const CompiledUnitary &cu) {
    std::ostringstream out;
    out << "{\n  \"topology\": " << json_string(topology_name) << ",\n  \"frequency_hz\": "
        << (cu.frequency_hz ? json_number(*cu.frequency_hz) : "null") << ",\n  \"port_order\": [";
    for (std::size_t k = 0; k < cu.port_order.size(); ++k) {
        out << (k ? ", " : "") << json_string(cu.port_order[k]);
    }
    out << "],\n  \"ports\": [";
    for (std::size_t k = 0; k < cu.ports.size(); ++k) out << (k ? ", " : "") << cu.ports[k];
    out << "],\n  \"unitarity_deviation\": " << json_number(is_unitary(cu.unitary).max_deviation)
        << ",\n  \"unitary\": " << matrix_to_json(cu.unitary, 2) << "\n}\n";
    return out.str();
}

std::string distribution_csv(const OutputDistribution &d) {
    std::string out = "occupation,probability\n";
    for (std::size_t k = 0; k < d.outcomes.size(); ++k) {
        out += format_occupation(d.outcomes[k]) + "," + format_double(d.probabilities[k]) + "\n";
    }
    return out;
}

std::string samples_csv(const std::vector<OccupationVector> &samples, int modes) {
    std::string out;
    for (int k = 0; k < modes; ++k) out += (k ? ",mode" : "mode") + std::to_string(k);
    out += "\n";
    for (const auto &s : samples) out += format_occupation(s, ',') + "\n";
    return out;
}

std::string sweep_csv(const SpectralSweep &sweep) {
    std::string out = "frequency_hz,re,im,abs,phase\n";
    for (std::size_t k = 0; k < sweep.frequencies.size(); ++k) {
        const Complex r = sweep.responses[k];
        out += format_double(sweep.frequencies[k]) + "," + format_double(r.real()) + "," +
               format_double(r.imag()) + "," + format_double(std::abs(r)) + "," +
               format_double(std::arg(r)) + "\n";
    }
    return out;
}

std::string fringe_csv(const FringeScan &scan) {
    std::string out = "phi,probability\n";
    for (std::size_t k = 0; k < scan.phases.size(); ++k) {
        out += format_double(scan.phases[k]) + "," + format_double(scan.probabilities[k]) + "\n";
    }
    return out;
}

std::string read_text_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidArgument("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidArgument("cannot write '" + path + "'");
    out << content;
    if (!out.flush()) throw InvalidArgument("write failed for '" + path + "'");
}

}  // namespace bricksim
