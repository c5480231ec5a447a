#include "finnet/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace finnet::io {

namespace {

Rat rat_from_json(const json& v) {
  if (v.is_string()) return parse_rat(v.get<std::string>());
  if (v.is_number_integer()) return Rat(v.get<long>());
  if (v.is_number_float()) return rat_from_double(v.get<double>());
  throw std::invalid_argument("expected a rational (string) or number");
}

json rat_to_json(const Rat& r) { return rat_to_string(r); }

}  // namespace

Network network_from_json(const json& j) {
  Network net;
  net.parties = j.at("parties").get<std::vector<std::string>>();
  net.sources = j.at("sources").get<std::vector<std::vector<int>>>();
  for (auto& s : net.sources) std::sort(s.begin(), s.end());
  auto bad = validate_network(net);
  if (!bad.empty()) throw std::invalid_argument("invalid network file: " + bad.front());
  return net;
}

json network_to_json(const Network& net) {
  return json{{"parties", net.parties}, {"sources", net.sources}};
}

JointDistribution distribution_from_json(const json& j) {
  auto alphabets = j.at("alphabets").get<std::vector<int>>();
  const auto& probs = j.at("probabilities");
  bool any_string = false;
  for (const auto& v : probs)
    if (v.is_string()) any_string = true;
  if (any_string) {
    RatVec t;
    for (const auto& v : probs) t.push_back(rat_from_json(v));
    auto d = JointDistribution::exact(alphabets, std::move(t));
    auto bad = d.validate();
    if (!bad.empty()) throw std::invalid_argument("invalid distribution: " + bad.front());
    return d;
  }
  std::vector<double> t;
  for (const auto& v : probs) t.push_back(v.get<double>());
  auto d = JointDistribution::floating(alphabets, std::move(t));
  auto bad = d.validate();
  if (!bad.empty()) throw std::invalid_argument("invalid distribution: " + bad.front());
  return d;
}

json distribution_to_json(const JointDistribution& P) {
  json probs = json::array();
  if (P.is_exact())
    for (std::size_t f = 0; f < P.size(); ++f) probs.push_back(rat_to_string(P.p_rat(f)));
  else
    for (std::size_t f = 0; f < P.size(); ++f) probs.push_back(P.p(f));
  return json{{"alphabets", P.alphabets()}, {"probabilities", probs}};
}

std::pair<JointDistribution, double> counts_from_json(const json& j, double tol) {
  auto alphabets = j.at("alphabets").get<std::vector<int>>();
  auto counts = j.at("counts").get<std::vector<double>>();
  double total = 0;
  for (double c : counts) {
    if (c < 0) throw std::invalid_argument("counts must be non-negative");
    total += c;
  }
  if (total <= 0) throw std::invalid_argument("counts must not all be zero");
  std::vector<double> t;
  for (double c : counts) t.push_back(c / total);
  double margin = std::max(1.0 / std::sqrt(total), tol);
  return {JointDistribution::floating(alphabets, std::move(t)), margin};
}

CubeStrategy cube_strategy_from_json(const json& j) {
  CubeStrategy s;
  s.alphabet = j.value("alphabet", 2);
  auto cuts = j.at("cuts");
  for (int ax = 0; ax < 3; ++ax)
    for (const auto& v : cuts.at(ax)) s.cuts[ax].push_back(rat_from_json(v));
  auto faces = j.at("faces");
  for (int f = 0; f < 3; ++f) s.faces[f] = faces.at(f).get<std::vector<std::vector<int>>>();
  auto bad = validate_strategy(s);
  if (!bad.empty()) throw std::invalid_argument("invalid cube strategy: " + bad.front());
  return s;
}

json cube_strategy_to_json(const CubeStrategy& s) {
  json cuts = json::array();
  for (int ax = 0; ax < 3; ++ax) {
    json axis = json::array();
    for (const auto& c : s.cuts[ax]) axis.push_back(rat_to_string(c));
    cuts.push_back(axis);
  }
  json faces = json::array();
  for (int f = 0; f < 3; ++f) faces.push_back(s.faces[f]);
  return json{{"alphabet", s.alphabet}, {"cuts", cuts}, {"faces", faces}};
}

QuantumStrategy quantum_strategy_from_json(const Network& net, const json& j) {
  QuantumStrategy qs;
  qs.net = net;
  for (const auto& src : j.at("sources"))
    qs.sources.push_back({src.at("schmidt").get<std::vector<double>>()});
  for (const auto& meas : j.at("measurements")) {
    PartyMeasurement pm;
    for (const auto& eff : meas.at("effects")) {
      const int rows = static_cast<int>(eff.size());
      CMat m(rows, rows);
      for (int r = 0; r < rows; ++r) {
        if (static_cast<int>(eff.at(r).size()) != rows)
          throw std::invalid_argument("measurement effect must be square");
        for (int c = 0; c < rows; ++c) {
          auto pair = eff.at(r).at(c);
          m(r, c) = std::complex<double>(pair.at(0).get<double>(), pair.at(1).get<double>());
        }
      }
      pm.effects.push_back(std::move(m));
    }
    qs.measurements.push_back(std::move(pm));
  }
  auto bad = validate_strategy(qs);
  if (!bad.empty()) throw std::invalid_argument("invalid quantum strategy: " + bad.front());
  return qs;
}

json quantum_strategy_to_json(const QuantumStrategy& qs) {
  json sources = json::array();
  for (const auto& s : qs.sources) sources.push_back(json{{"schmidt", s.schmidt}});
  json measurements = json::array();
  for (const auto& meas : qs.measurements) {
    json effects = json::array();
    for (const auto& m : meas.effects) {
      json rows = json::array();
      for (int r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols(); ++c)
          row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
        rows.push_back(row);
      }
      effects.push_back(rows);
    }
    measurements.push_back(json{{"effects", effects}});
  }
  return json{{"sources", sources}, {"measurements", measurements}};
}

BoxAssignment boxes_from_json(const json& j) {
  BoxAssignment out;
  for (const auto& src : j.at("sources")) {
    std::vector<NSBox> list;
    for (const auto& bj : src) {
      NSBox box;
      box.nx = bj.value("x", 2);
      box.ny = bj.value("y", 2);
      box.na = bj.value("a", 2);
      box.nb = bj.value("b", 2);
      const auto& t = bj.at("table");
      bool any_float = false;
      for (int x = 0; x < box.nx; ++x)
        for (int y = 0; y < box.ny; ++y)
          for (int a = 0; a < box.na; ++a)
            for (int b = 0; b < box.nb; ++b) {
              const auto& v = t.at(x).at(y).at(a).at(b);
              if (v.is_number_float()) any_float = true;
              box.table.push_back(rat_from_json(v));
            }
      box.float_origin = any_float;
      auto bad = validate_box(box, any_float ? 1e-9 : 0.0);
      if (!bad.empty()) throw std::invalid_argument("invalid box: " + bad.front());
      list.push_back(std::move(box));
    }
    out.per_source.push_back(std::move(list));
  }
  return out;
}

json boxes_to_json(const BoxAssignment& boxes) {
  json sources = json::array();
  for (const auto& list : boxes.per_source) {
    json src = json::array();
    for (const auto& box : list) {
      json t = json::array();
      for (int x = 0; x < box.nx; ++x) {
        json tx = json::array();
        for (int y = 0; y < box.ny; ++y) {
          json ty = json::array();
          for (int a = 0; a < box.na; ++a) {
            json ta = json::array();
            for (int b = 0; b < box.nb; ++b) ta.push_back(rat_to_string(box.p(x, y, a, b)));
            ty.push_back(ta);
          }
          tx.push_back(ty);
        }
        t.push_back(tx);
      }
      src.push_back(json{{"x", box.nx}, {"y", box.ny}, {"a", box.na}, {"b", box.nb}, {"table", t}});
    }
    sources.push_back(src);
  }
  return json{{"sources", sources}};
}

WiringProgram wiring_from_json(const json& j) {
  WiringProgram prog;
  for (const auto& pj : j.at("parties")) {
    PartyProgram pp;
    pp.out_alphabet = pj.value("out_alphabet", 2);
    if (pj.contains("decide"))
      for (const auto& [key, entries] : pj.at("decide").items()) {
        std::vector<WiringRuleEntry> list;
        for (const auto& e : entries)
          list.push_back({rat_from_json(e.at("p")), e.at("end").get<int>(), e.at("input").get<int>()});
        pp.decide[key] = std::move(list);
      }
    if (pj.contains("output"))
      for (const auto& [key, entries] : pj.at("output").items()) {
        std::vector<OutputRuleEntry> list;
        for (const auto& e : entries)
          list.push_back({rat_from_json(e.at("p")), e.at("output").get<int>()});
        pp.output[key] = std::move(list);
      }
    prog.parties.push_back(std::move(pp));
  }
  return prog;
}

json wiring_to_json(const WiringProgram& prog) {
  json parties = json::array();
  for (const auto& pp : prog.parties) {
    json decide = json::object(), output = json::object();
    for (const auto& [key, entries] : pp.decide) {
      json list = json::array();
      for (const auto& e : entries)
        list.push_back(json{{"p", rat_to_string(e.prob)}, {"end", e.end}, {"input", e.input}});
      decide[key] = list;
    }
    for (const auto& [key, entries] : pp.output) {
      json list = json::array();
      for (const auto& e : entries)
        list.push_back(json{{"p", rat_to_string(e.prob)}, {"output", e.output}});
      output[key] = list;
    }
    parties.push_back(json{{"out_alphabet", pp.out_alphabet}, {"decide", decide}, {"output", output}});
  }
  return json{{"parties", parties}};
}

namespace {

json witness_to_json(const FinnerWitness& w) {
  json eta = json::array();
  for (const auto& e : w.eta) eta.push_back(rat_to_string(e));
  return json{{"eta", eta},     {"outcome", w.outcome}, {"lhs", w.lhs},
              {"rhs", w.rhs},   {"log_gap", w.log_gap}};
}

}  // namespace

json finner_report_to_json(const FinnerReport& rep) {
  json out{{"violated", rep.violated},
           {"exact", rep.exact},
           {"inconsistent_input", rep.inconsistent_input},
           {"checked_outcomes", rep.checked_outcomes},
           {"checked_fis", rep.checked_fis}};
  if (rep.worst) out["worst"] = witness_to_json(*rep.worst);
  json vio = json::array();
  for (const auto& w : rep.violations) vio.push_back(witness_to_json(w));
  out["violations"] = vio;
  return out;
}

json topology_results_to_json(const std::vector<Network>& nets,
                              const std::vector<TopologyResult>& results) {
  json out = json::array();
  for (std::size_t i = 0; i < results.size(); ++i) {
    json r{{"network", network_to_json(nets[i])},
           {"verdict", results[i].verdict == TopologyVerdict::ruled_out ? "ruled_out"
                                                                        : "compatible_so_far"},
           {"detail", results[i].detail}};
    if (results[i].witness) r["witness"] = witness_to_json(*results[i].witness);
    out.push_back(r);
  }
  return out;
}

json ribbon_verdict_to_json(const RibbonVerdict& v) {
  const char* status = v.status == RibbonStatus::member ? "member"
                       : v.status == RibbonStatus::not_member ? "not_member"
                                                              : "member_up_to_search";
  json out{{"status", status}};
  if (v.norm_witness) {
    out["norm_witness"] = json{{"functions", v.norm_witness->functions},
                               {"lhs", v.norm_witness->lhs},
                               {"rhs", v.norm_witness->rhs}};
  }
  if (v.mi_witness) {
    out["mi_witness"] = json{{"u_card", v.mi_witness->u_card},
                             {"channel", v.mi_witness->channel},
                             {"deficit_bits", v.mi_witness->deficit_bits}};
  }
  return out;
}

json certificate_to_json(const TightnessCertificate& cert) {
  json exps = json::array(), eta = json::array(), dual = json::array();
  for (const auto& e : cert.log2_targets) exps.push_back(rat_to_string(e));
  for (const auto& e : cert.eta) eta.push_back(rat_to_string(e));
  for (const auto& c : cert.dual) dual.push_back(rat_to_string(c));
  json dsplit = json::array();
  for (std::size_t k = 0; k < cert.set_E.size(); ++k) {
    json entries = json::array();
    for (const auto& [i, d] : cert.d_split[k])
      entries.push_back(json{{"source", i}, {"d", rat_to_string(d)}});
    dsplit.push_back(json{{"party", cert.set_E[k]}, {"split", entries}});
  }
  json joint = json::array();
  if (cert.exact)
    for (const auto& v : cert.joint) {
      json coeffs = json::array();
      for (const auto& c : v.coefficients()) coeffs.push_back(rat_to_string(c));
      joint.push_back(coeffs);
    }
  json out{{"backend", cert.exact ? "exact" : "float"},
           {"network", network_to_json(cert.net)},
           {"log2_targets", exps},
           {"targets", cert.targets},
           {"eta", eta},
           {"dual", dual},
           {"value", rat_to_string(cert.value)},
           {"set_E", cert.set_E},
           {"d_split", dsplit},
           {"L", cert.L},
           {"joint_float", cert.joint_float}};
  if (cert.exact) out["joint"] = joint;
  return out;
}

json verify_report_to_json(const VerifyReport& rep) {
  json checks = json::array();
  for (const auto& c : rep.checks)
    checks.push_back(json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return json{{"pass", rep.pass}, {"checks", checks}};
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  json j;
  in >> j;
  return j;
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out << j.dump(2) << "\n";
}

std::string scan_to_csv(const RegionScan& scan, bool pq) {
  std::ostringstream os;
  os.precision(12);
  if (pq) {
    os << "p,q,verdict,lhs,rhs,analytic_boundary\n";
    for (const auto& c : scan.cells)
      os << c.x << ',' << c.y << ',' << (c.violated ? "violated" : "satisfied") << ',' << c.lhs
         << ',' << c.rhs << ',' << c.boundary << '\n';
  } else {
    os << "r,verdict,lhs,rhs,analytic_boundary\n";
    for (const auto& c : scan.cells)
      os << c.x << ',' << (c.violated ? "violated" : "satisfied") << ',' << c.lhs << ',' << c.rhs
         << ',' << c.boundary << '\n';
  }
  return os.str();
}

}  // namespace finnet::io
