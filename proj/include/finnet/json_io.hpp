#pragma once

#include <string>

#include <json.hpp>

#include "finnet/boxworld.hpp"
#include "finnet/cube.hpp"
#include "finnet/distribution.hpp"
#include "finnet/finner.hpp"
#include "finnet/hribbon.hpp"
#include "finnet/network.hpp"
#include "finnet/quantum.hpp"
#include "finnet/tightness.hpp"

namespace finnet::io {

using nlohmann::json;

// network: {"parties": ["A","B","C"], "sources": [[0,1],[1,2],[2,0]]}
Network network_from_json(const json& j);
json network_to_json(const Network& net);

// distribution: {"alphabets": [2,2,2], "probabilities": ["1/8", ...] | [0.125, ...]}
// rationals serialized as "num/den" strings, floats as numbers
JointDistribution distribution_from_json(const json& j);
json distribution_to_json(const JointDistribution& P);

// counts: {"alphabets": [...], "counts": [n_0, ...]} -> normalized float
// distribution plus the statistical margin max(1/sqrt(N), tol)
std::pair<JointDistribution, double> counts_from_json(const json& j, double tol);

// cube strategy: {"cuts": [[...],[...],[...]], "faces": [[[...]],...], "alphabet": 2},
// '?' encoded as -1
CubeStrategy cube_strategy_from_json(const json& j);
json cube_strategy_to_json(const CubeStrategy& s);

// quantum strategy: {"sources": [{"schmidt": [...]}, ...],
//   "measurements": [{"effects": [[[ [re,im], ...]]]}, ...]}
QuantumStrategy quantum_strategy_from_json(const Network& net, const json& j);
json quantum_strategy_to_json(const QuantumStrategy& qs);

// boxes: {"sources": [[box, ...], ...]}, box = {"x":2,"y":2,"a":2,"b":2,
//   "table": [[[["1/2",...],...],...],...]} nested P[x][y][a][b]
BoxAssignment boxes_from_json(const json& j);
json boxes_to_json(const BoxAssignment& boxes);

// wiring: {"parties": [{"out_alphabet": 2, "decide": {key: [{"p": "1", "end": 0,
//   "input": 0}]}, "output": {key: [{"p": "1", "output": 0}]}}, ...]}
WiringProgram wiring_from_json(const json& j);
json wiring_to_json(const WiringProgram& prog);

json finner_report_to_json(const FinnerReport& rep);
json topology_results_to_json(const std::vector<Network>& nets,
                              const std::vector<TopologyResult>& results);
json ribbon_verdict_to_json(const RibbonVerdict& v);
json certificate_to_json(const TightnessCertificate& cert);
json verify_report_to_json(const VerifyReport& rep);

json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

std::string scan_to_csv(const RegionScan& scan, bool pq);

}  // namespace finnet::io
