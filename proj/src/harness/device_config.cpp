// Copyright 2026 The qlattice Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qlattice/harness/device_config.hpp"

#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "qlattice/common/errors.hpp"

namespace qlattice::harness {

namespace {

using nlohmann::json;

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ValidationError(fmt::format("{}: {}", path, what));
}

const json& member(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "missing");
  return *it;
}

double number(const json& obj, const std::string& key, const std::string& path) {
  const json& v = member(obj, key, path);
  if (!v.is_number()) fail(path + "." + key, "expected a number");
  return v.get<double>();
}

double optional_number(const json& obj, const std::string& key, const std::string& path,
                       double fallback) {
  if (!obj.contains(key)) return fallback;
  return number(obj, key, path);
}

std::string text(const json& obj, const std::string& key, const std::string& path) {
  const json& v = member(obj, key, path);
  if (!v.is_string() || v.get<std::string>().empty())
    fail(path + "." + key, "expected a non-empty string");
  return v.get<std::string>();
}

const json& array(const json& obj, const std::string& key, const std::string& path) {
  const json& v = member(obj, key, path);
  if (!v.is_array()) fail(path + "." + key, "expected an array");
  return v;
}

QubitConfig qubit_from_json(const json& j, const std::string& path) {
  QubitConfig q;
  q.name = j.contains("name") ? text(j, "name", path) : std::string("targeted");
  q.f01_GHz = number(j, "f01_GHz", path);
  q.anharmonicity_MHz = number(j, "anharmonicity_MHz", path);
  if (j.contains("circuit")) {
    const json& c = member(j, "circuit", path);
    const std::string cp = path + ".circuit";
    device::TransmonCircuit circuit;
    circuit.critical_current_nA = number(c, "critical_current_nA", cp);
    circuit.total_capacitance_fF = number(c, "total_capacitance_fF", cp);
    circuit.gate_offset_charge = optional_number(c, "gate_offset_charge", cp, 0.0);
    q.circuit = circuit;
  }
  q.t1_us = optional_number(j, "T1_us", path, 0.0);
  q.t2echo_us = optional_number(j, "T2echo_us", path, 0.0);
  if (j.contains("reported")) {
    const json& r = member(j, "reported", path);
    if (!r.is_object()) fail(path + ".reported", "expected an object");
    for (auto it = r.begin(); it != r.end(); ++it) {
      if (!it->is_number()) fail(path + ".reported." + it.key(), "expected a number");
      q.reported[it.key()] = it->get<double>();
    }
  }
  return q;
}

json qubit_to_json(const QubitConfig& q, bool with_name) {
  json j;
  if (with_name) j["name"] = q.name;
  j["f01_GHz"] = q.f01_GHz;
  j["anharmonicity_MHz"] = q.anharmonicity_MHz;
  if (q.circuit) {
    j["circuit"] = {{"critical_current_nA", q.circuit->critical_current_nA},
                    {"total_capacitance_fF", q.circuit->total_capacitance_fF},
                    {"gate_offset_charge", q.circuit->gate_offset_charge}};
  }
  if (q.t1_us > 0.0) j["T1_us"] = q.t1_us;
  if (q.t2echo_us > 0.0) j["T2echo_us"] = q.t2echo_us;
  if (!q.reported.empty()) j["reported"] = q.reported;
  return j;
}

device::ReadoutResonator resonator_from_json(const json& j, const std::string& path) {
  device::ReadoutResonator r;
  r.frequency_GHz = number(j, "frequency_GHz", path);
  r.quality_factor = number(j, "quality_factor", path);
  r.coupling_MHz = number(j, "coupling_MHz", path);
  r.coupling_capacitance_fF = optional_number(j, "coupling_capacitance_fF", path, 0.0);
  return r;
}

json resonator_to_json(const device::ReadoutResonator& r) {
  return {{"frequency_GHz", r.frequency_GHz},
          {"quality_factor", r.quality_factor},
          {"coupling_MHz", r.coupling_MHz},
          {"coupling_capacitance_fF", r.coupling_capacitance_fF}};
}

void validate_qubit(const QubitConfig& q, const std::string& path) {
  if (!(q.f01_GHz > 0.0)) fail(path + ".f01_GHz", "must be positive");
  if (!(q.anharmonicity_MHz < 0.0)) fail(path + ".anharmonicity_MHz", "must be negative");
  if (q.t1_us < 0.0) fail(path + ".T1_us", "must not be negative");
  if (q.t2echo_us < 0.0) fail(path + ".T2echo_us", "must not be negative");
  if (q.t1_us > 0.0 && q.t2echo_us > 2.0 * q.t1_us)
    fail(path + ".T2echo_us", "exceeds 2 T1");
  if (q.circuit) {
    try {
      q.circuit->validate();
    } catch (const ValidationError& e) {
      fail(path + ".circuit", e.what());
    }
  }
}

}  // namespace

void DeviceConfig::validate() const {
  if (name.empty()) fail("name", "missing");
  if (qubits.empty()) fail("qubits", "at least one qubit is required");
  if (targeted) validate_qubit(targeted->qubit, "targeted");
  std::set<std::string> names;
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    const std::string path = fmt::format("qubits[{}]", i);
    if (qubits[i].name.empty()) fail(path + ".name", "missing");
    if (!names.insert(qubits[i].name).second) fail(path + ".name", "duplicate qubit name");
    validate_qubit(qubits[i], path);
  }
  std::map<std::string, int> readout_count;
  for (std::size_t i = 0; i < readout.size(); ++i) {
    const std::string path = fmt::format("readout_resonators[{}]", i);
    if (!names.count(readout[i].qubit)) fail(path + ".qubit", "unknown qubit " + readout[i].qubit);
    try {
      readout[i].resonator.validate();
    } catch (const ValidationError& e) {
      fail(path, e.what());
    }
    ++readout_count[readout[i].qubit];
  }
  for (const auto& q : qubits)
    if (readout_count[q.name] != 1)
      fail("readout_resonators",
           fmt::format("qubit {} has {} readout resonators (expected 1)", q.name,
                       readout_count[q.name]));
  std::map<std::string, int> bus_count;
  std::set<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 0; i < buses.size(); ++i) {
    const std::string path = fmt::format("buses[{}]", i);
    const auto& b = buses[i];
    if (!names.count(b.qubit_a) || !names.count(b.qubit_b))
      fail(path + ".qubits", "unknown qubit");
    if (b.qubit_a == b.qubit_b) fail(path + ".qubits", "a bus joins two different qubits");
    if (!pairs.insert(std::minmax(b.qubit_a, b.qubit_b)).second)
      fail(path, "duplicate bus between " + b.qubit_a + " and " + b.qubit_b);
    if (!(b.coupling.bus_frequency_GHz > 0.0)) fail(path + ".frequency_GHz", "must be positive");
    ++bus_count[b.qubit_a];
    ++bus_count[b.qubit_b];
  }
  // Four-transmon lattice: a ring of buses, each qubit on exactly two.
  if (qubits.size() == 4)
    for (const auto& q : qubits)
      if (bus_count[q.name] != 2)
        fail("buses", fmt::format("qubit {} is connected to {} buses (expected 2)", q.name,
                                  bus_count[q.name]));
  std::set<std::string> edge_names;
  std::set<std::pair<std::string, std::string>> edge_pairs;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string path = fmt::format("edges[{}]", i);
    const auto& e = edges[i];
    if (e.name.empty()) fail(path + ".name", "missing");
    if (names.count(e.name)) fail(path + ".name", "edge name collides with a qubit name");
    if (!edge_names.insert(e.name).second) fail(path + ".name", "duplicated edge " + e.name);
    if (!names.count(e.control) || !names.count(e.target))
      fail(path, "unknown control or target qubit");
    if (e.control == e.target) fail(path, "control and target must differ");
    if (!edge_pairs.insert(std::minmax(e.control, e.target)).second)
      fail(path, "duplicated edge between " + e.control + " and " + e.target);
    if (!bus_between(e.control, e.target)) fail(path, "no bus joins the edge qubits");
  }
}

int DeviceConfig::qubit_index(const std::string& n) const {
  for (std::size_t i = 0; i < qubits.size(); ++i)
    if (qubits[i].name == n) return static_cast<int>(i);
  throw ValidationError("unknown qubit " + n);
}

const QubitConfig& DeviceConfig::qubit(const std::string& n) const {
  return qubits[qubit_index(n)];
}

const ReadoutConfig& DeviceConfig::readout_of(const std::string& q) const {
  for (const auto& r : readout)
    if (r.qubit == q) return r;
  throw ValidationError("no readout resonator for " + q);
}

bool DeviceConfig::has_edge(const std::string& n) const {
  for (const auto& e : edges)
    if (e.name == n) return true;
  return false;
}

const EdgeConfig& DeviceConfig::edge(const std::string& n) const {
  for (const auto& e : edges)
    if (e.name == n) return e;
  throw ValidationError("unknown edge " + n);
}

const BusConfig* DeviceConfig::bus_between(const std::string& a, const std::string& b) const {
  for (const auto& bus : buses)
    if ((bus.qubit_a == a && bus.qubit_b == b) || (bus.qubit_a == b && bus.qubit_b == a))
      return &bus;
  return nullptr;
}

double DeviceConfig::exchange_J(const std::string& a, const std::string& b) const {
  const BusConfig* bus = bus_between(a, b);
  if (!bus) return 0.0;
  const bool forward = bus->qubit_a == a;
  device::BusCoupling c = bus->coupling;
  if (!forward) std::swap(c.g1_MHz, c.g2_MHz);
  return device::bus_exchange_J(c, qubit(a).f01_GHz, qubit(b).f01_GHz);
}

dynamics::HamiltonianModel DeviceConfig::model(const std::vector<std::string>& names) const {
  std::vector<dynamics::TransmonMode> modes;
  std::vector<dynamics::ExchangeEdge> couplings;
  for (const auto& n : names) {
    const auto& q = qubit(n);
    modes.push_back({q.f01_GHz, q.anharmonicity_MHz});
  }
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = i + 1; j < names.size(); ++j)
      if (bus_between(names[i], names[j]))
        couplings.push_back({static_cast<int>(i), static_cast<int>(j),
                             exchange_J(names[i], names[j])});
  return dynamics::HamiltonianModel(std::move(modes), std::move(couplings));
}

dynamics::NoiseChannels DeviceConfig::noise(const std::vector<std::string>& names) const {
  dynamics::NoiseChannels out;
  for (const auto& n : names) {
    const auto& q = qubit(n);
    out.t1_us.push_back(q.t1_us > 0.0 ? q.t1_us : kInf);
    out.t2echo_us.push_back(q.t2echo_us > 0.0 ? q.t2echo_us : kInf);
  }
  return out;
}

std::vector<std::string> DeviceConfig::target_qubits(const std::string& label) const {
  if (has_edge(label)) {
    const auto& e = edge(label);
    return {e.control, e.target};
  }
  qubit_index(label);
  return {label};
}

DeviceConfig device_from_json(const json& j) {
  if (!j.is_object() || j.empty()) fail("<root>", "expected a device document");
  if (j.contains("schema") && j["schema"] != kDeviceSchema)
    fail("schema", fmt::format("unsupported schema (expected {})", kDeviceSchema));
  DeviceConfig d;
  d.name = text(j, "name", "<root>");
  if (j.contains("targeted")) {
    const json& t = j["targeted"];
    TargetedDesign td;
    td.qubit = qubit_from_json(t, "targeted");
    td.readout = resonator_from_json(member(t, "readout", "targeted"), "targeted.readout");
    d.targeted = td;
  }
  const json& qs = array(j, "qubits", "<root>");
  for (std::size_t i = 0; i < qs.size(); ++i)
    d.qubits.push_back(qubit_from_json(qs[i], fmt::format("qubits[{}]", i)));
  const json& rs = array(j, "readout_resonators", "<root>");
  for (std::size_t i = 0; i < rs.size(); ++i) {
    const std::string path = fmt::format("readout_resonators[{}]", i);
    d.readout.push_back({text(rs[i], "qubit", path), resonator_from_json(rs[i], path)});
  }
  if (j.contains("buses")) {
    const json& bs = array(j, "buses", "<root>");
    for (std::size_t i = 0; i < bs.size(); ++i) {
      const std::string path = fmt::format("buses[{}]", i);
      const json& pair = array(bs[i], "qubits", path);
      if (pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string())
        fail(path + ".qubits", "expected two qubit names");
      BusConfig b;
      b.qubit_a = pair[0].get<std::string>();
      b.qubit_b = pair[1].get<std::string>();
      b.coupling.bus_frequency_GHz = number(bs[i], "frequency_GHz", path);
      b.coupling.g1_MHz = number(bs[i], "g1_MHz", path);
      b.coupling.g2_MHz = number(bs[i], "g2_MHz", path);
      d.buses.push_back(b);
    }
  }
  if (j.contains("edges")) {
    const json& es = array(j, "edges", "<root>");
    for (std::size_t i = 0; i < es.size(); ++i) {
      const std::string path = fmt::format("edges[{}]", i);
      d.edges.push_back(
          {text(es[i], "name", path), text(es[i], "control", path), text(es[i], "target", path)});
    }
  }
  d.validate();
  return d;
}

json device_to_json(const DeviceConfig& d) {
  json j;
  j["schema"] = kDeviceSchema;
  j["name"] = d.name;
  if (d.targeted) {
    json t = qubit_to_json(d.targeted->qubit, false);
    t["readout"] = resonator_to_json(d.targeted->readout);
    j["targeted"] = t;
  }
  j["qubits"] = json::array();
  for (const auto& q : d.qubits) j["qubits"].push_back(qubit_to_json(q, true));
  j["readout_resonators"] = json::array();
  for (const auto& r : d.readout) {
    json e = resonator_to_json(r.resonator);
    e["qubit"] = r.qubit;
    j["readout_resonators"].push_back(e);
  }
  j["buses"] = json::array();
  for (const auto& b : d.buses)
    j["buses"].push_back({{"qubits", {b.qubit_a, b.qubit_b}},
                          {"frequency_GHz", b.coupling.bus_frequency_GHz},
                          {"g1_MHz", b.coupling.g1_MHz},
                          {"g2_MHz", b.coupling.g2_MHz}});
  j["edges"] = json::array();
  for (const auto& e : d.edges)
    j["edges"].push_back({{"name", e.name}, {"control", e.control}, {"target", e.target}});
  return j;
}

DeviceConfig load_device(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open device file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  if (buf.str().find_first_not_of(" \t\r\n") == std::string::npos)
    fail(path, "empty device file");
  json j;
  try {
    j = json::parse(buf.str());
  } catch (const json::parse_error& e) {
    fail(path, std::string("not valid JSON: ") + e.what());
  }
  return device_from_json(j);
}

void save_device(const DeviceConfig& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write device file " + path);
  out << device_to_json(d).dump(2) << '\n';
}

}  // namespace qlattice::harness
