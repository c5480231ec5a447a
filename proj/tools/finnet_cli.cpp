// finnet: decide whether multipartite output distributions are compatible
// with a causal network topology via Finner inequalities, and simulate
// classical / quantum / no-signaling-box strategies.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "finnet/json_io.hpp"
#include "finnet/rng.hpp"

using namespace finnet;
using nlohmann::json;

namespace {

constexpr int kExitSatisfied = 0;
constexpr int kExitError = 1;
constexpr int kExitViolated = 2;

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot write file: " + out_path);
    out << text;
  }
}

void emit_json(const std::string& out_path, const json& j) { emit(out_path, j.dump(2) + "\n"); }

RatVec parse_rat_list(const std::string& csv) {
  RatVec out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rat(item));
  return out;
}

std::vector<double> parse_double_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finnet: Finner-inequality toolkit for causal network correlations"};
  app.require_subcommand(1);

  std::string backend = "exact";
  double tol = 1e-9;
  std::uint64_t seed = 1;
  int jobs = 1;
  std::string out_path;
  app.add_option("--backend", backend, "numeric backend: exact|float")
      ->check(CLI::IsMember({"exact", "float"}));
  app.add_option("--tol", tol, "float-path tolerance (log-gap)")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "RNG seed for randomized searches");
  app.add_option("--jobs", jobs, "worker cap for parallel sections")->check(CLI::PositiveNumber);
  app.add_option("--out", out_path, "output file (default: stdout)");

  // check
  auto* c_check = app.add_subcommand("check", "check a distribution against a network's Finner inequalities");
  std::string net_path, dist_path;
  c_check->add_option("--network", net_path, "network JSON file")->required();
  c_check->add_option("--dist", dist_path, "distribution JSON file")->required();

  // fis
  auto* c_fis = app.add_subcommand("fis", "enumerate the extreme fractional independent sets");
  std::string fis_net_path;
  c_fis->add_option("--network", fis_net_path, "network JSON file")->required();

  // scan-pq / scan-r
  auto* c_scan_pq = app.add_subcommand("scan-pq", "sweep the p,q family over the simplex (CSV)");
  int grid_pq = 400;
  c_scan_pq->add_option("--grid", grid_pq, "grid resolution")->check(CLI::PositiveNumber);
  auto* c_scan_r = app.add_subcommand("scan-r", "sweep the r-mixture line (CSV)");
  int grid_r = 4096;
  c_scan_r->add_option("--grid", grid_r, "grid resolution")->check(CLI::PositiveNumber);

  // simulate
  auto* c_sim = app.add_subcommand("simulate", "evaluate a strategy's output distribution");
  std::string sim_kind, sim_strategy, sim_net, sim_boxes;
  bool sim_check = false;
  c_sim->add_option("--kind", sim_kind, "cube|quantum|boxworld")
      ->required()
      ->check(CLI::IsMember({"cube", "quantum", "boxworld"}));
  c_sim->add_option("--strategy", sim_strategy, "strategy JSON (cube/quantum: strategy; boxworld: wiring)")
      ->required();
  c_sim->add_option("--network", sim_net, "network JSON (quantum/boxworld)");
  c_sim->add_option("--boxes", sim_boxes, "box assignment JSON (boxworld)");
  c_sim->add_flag("--check", sim_check, "also run the Finner check on the result");

  // hr
  auto* c_hr = app.add_subcommand("hr", "hypercontractivity-ribbon membership search");
  std::string hr_dist, hr_point, hr_route = "both";
  int hr_restarts = 32, hr_ucap = 0;
  c_hr->add_option("--dist", hr_dist, "distribution JSON file")->required();
  c_hr->add_option("--point", hr_point, "comma-separated point, e.g. 0.5,0.5,0.5")->required();
  c_hr->add_option("--route", hr_route, "norms|mi|both")->check(CLI::IsMember({"norms", "mi", "both"}));
  c_hr->add_option("--restarts", hr_restarts, "search restarts");
  c_hr->add_option("--u-cap", hr_ucap, "auxiliary-variable cardinality cap (0 = |outcomes|)");

  // tightness
  auto* c_tight = app.add_subcommand("tightness", "build and verify a Finner tightness certificate");
  std::string tight_net, tight_marginals, tight_log2;
  c_tight->add_option("--network", tight_net, "network JSON file")->required();
  c_tight->add_option("--marginals", tight_marginals,
                      "target marginals, e.g. 1/4,1/4,1/4 (powers of two take the exact path)");
  c_tight->add_option("--log2-marginals", tight_log2,
                      "exact path: rational exponents e_j with p_j = 2^-e_j, e.g. 3/2,1,2");

  // topology
  auto* c_topo = app.add_subcommand("topology", "device-independent topology test");
  std::string topo_dist, topo_counts;
  std::vector<std::string> topo_nets;
  c_topo->add_option("--dist", topo_dist, "distribution JSON file");
  c_topo->add_option("--counts", topo_counts, "counts JSON file (normalized to a float distribution)");
  c_topo->add_option("--network", topo_nets, "candidate network JSON files (repeatable)")
      ->required()
      ->expected(-1);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*c_check) {
      auto net = io::network_from_json(io::load_json_file(net_path));
      auto dist = io::distribution_from_json(io::load_json_file(dist_path));
      if (backend == "float") dist = dist.to_float();
      auto rep = check_probability_form(net, dist, nullptr, tol);
      emit_json(out_path, io::finner_report_to_json(rep));
      return rep.violated ? kExitViolated : kExitSatisfied;
    }

    if (*c_fis) {
      auto net = io::network_from_json(io::load_json_file(fis_net_path));
      auto verts = enumerate_extreme_fis(net);
      json out{{"half_integral", verts.half_integral}};
      json list = json::array();
      for (const auto& v : verts.vertices) {
        json eta = json::array();
        for (const auto& e : v) eta.push_back(rat_to_string(e));
        list.push_back(eta);
      }
      out["vertices"] = list;
      emit_json(out_path, out);
      return kExitSatisfied;
    }

    if (*c_scan_pq) {
      auto scan = scan_pq_region(grid_pq, jobs);
      emit(out_path, io::scan_to_csv(scan, true));
      return kExitSatisfied;
    }
    if (*c_scan_r) {
      auto scan = scan_r_line(grid_r, jobs);
      emit(out_path, io::scan_to_csv(scan, false));
      return kExitSatisfied;
    }

    if (*c_sim) {
      JointDistribution dist = make_uniform({2, 2, 2});
      Network net = make_triangle();
      if (sim_kind == "cube") {
        auto s = io::cube_strategy_from_json(io::load_json_file(sim_strategy));
        dist = evaluate_cube(s);
      } else if (sim_kind == "quantum") {
        if (sim_net.empty()) throw std::invalid_argument("simulate quantum: --network required");
        net = io::network_from_json(io::load_json_file(sim_net));
        auto qs = io::quantum_strategy_from_json(net, io::load_json_file(sim_strategy));
        dist = evaluate_quantum(qs);
      } else {
        if (sim_net.empty() || sim_boxes.empty())
          throw std::invalid_argument("simulate boxworld: --network and --boxes required");
        net = io::network_from_json(io::load_json_file(sim_net));
        auto boxes = io::boxes_from_json(io::load_json_file(sim_boxes));
        auto prog = io::wiring_from_json(io::load_json_file(sim_strategy));
        dist = evaluate_wiring(net, boxes, prog).outputs;
      }
      json out{{"distribution", io::distribution_to_json(dist)}};
      int code = kExitSatisfied;
      if (sim_check) {
        auto rep = check_probability_form(net, dist, nullptr, tol);
        out["finner"] = io::finner_report_to_json(rep);
        code = rep.violated ? kExitViolated : kExitSatisfied;
      }
      emit_json(out_path, out);
      return code;
    }

    if (*c_hr) {
      auto dist = io::distribution_from_json(io::load_json_file(hr_dist));
      auto pt = parse_double_list(hr_point);
      json out;
      bool not_member = false;
      if (hr_route == "norms" || hr_route == "both") {
        auto v = falsify_by_norms(dist, pt, hr_restarts, 200, seed, tol);
        out["norms"] = io::ribbon_verdict_to_json(v);
        not_member |= v.status == RibbonStatus::not_member;
      }
      if (hr_route == "mi" || hr_route == "both") {
        auto v = falsify_by_mutual_information(dist, pt, hr_ucap, hr_restarts, 150, seed, tol);
        out["mi"] = io::ribbon_verdict_to_json(v);
        not_member |= v.status == RibbonStatus::not_member;
      }
      emit_json(out_path, out);
      return not_member ? kExitViolated : kExitSatisfied;
    }

    if (*c_tight) {
      auto net = io::network_from_json(io::load_json_file(tight_net));
      TightnessCertificate cert;
      if (!tight_log2.empty()) {
        cert = build_certificate(net, parse_rat_list(tight_log2));
      } else if (!tight_marginals.empty()) {
        auto ps = parse_rat_list(tight_marginals);
        RatVec exps;
        bool exact_ok = backend != "float";
        for (const auto& p : ps) {
          auto k = log2_exact(p);
          if (k && *k <= 0)
            exps.push_back(Rat(-*k));
          else
            exact_ok = false;
        }
        if (exact_ok) {
          cert = build_certificate(net, exps);
        } else {
          std::vector<double> pf;
          for (const auto& p : ps) pf.push_back(to_double(p));
          cert = build_certificate_float(net, pf);
        }
      } else {
        throw std::invalid_argument("tightness: --marginals or --log2-marginals required");
      }
      auto rep = verify_certificate(cert, tol);
      json out{{"certificate", io::certificate_to_json(cert)},
               {"verification", io::verify_report_to_json(rep)}};
      emit_json(out_path, out);
      return rep.pass ? kExitSatisfied : kExitError;
    }

    if (*c_topo) {
      JointDistribution dist = make_uniform({2, 2, 2});
      double margin = 0;
      if (!topo_dist.empty()) {
        dist = io::distribution_from_json(io::load_json_file(topo_dist));
      } else if (!topo_counts.empty()) {
        auto [d, m] = io::counts_from_json(io::load_json_file(topo_counts), tol);
        dist = d;
        margin = m;
      } else {
        throw std::invalid_argument("topology: --dist or --counts required");
      }
      std::vector<Network> nets;
      for (const auto& p : topo_nets) nets.push_back(io::network_from_json(io::load_json_file(p)));
      auto results = certify_topology(dist, nets, tol);
      json out{{"results", io::topology_results_to_json(nets, results)}};
      if (margin > 0) out["statistical_margin"] = margin;
      emit_json(out_path, out);
      bool any_ruled = false;
      for (const auto& r : results) any_ruled |= r.verdict == TopologyVerdict::ruled_out;
      return any_ruled ? kExitViolated : kExitSatisfied;
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
