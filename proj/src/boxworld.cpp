#include "finnet/boxworld.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "finnet/rng.hpp"

namespace finnet {

Rat NSBox::marginal_a(int x, int y, int a) const {
  Rat s(0);
  for (int b = 0; b < nb; ++b) s += p(x, y, a, b);
  return s;
}

Rat NSBox::marginal_b(int x, int y, int b) const {
  Rat s(0);
  for (int a = 0; a < na; ++a) s += p(x, y, a, b);
  return s;
}

std::vector<std::string> validate_box(const NSBox& box, double tol) {
  std::vector<std::string> out;
  if (box.table.size() !=
      static_cast<std::size_t>(box.nx) * box.ny * box.na * box.nb) {
    out.push_back("table size mismatch");
    return out;
  }
  auto close = [&](const Rat& u, const Rat& v) {
    return tol > 0 ? std::abs(to_double(u - v)) <= tol : u == v;
  };
  for (const auto& v : box.table)
    if (v < 0) out.push_back("negative conditional probability");
  for (int x = 0; x < box.nx; ++x)
    for (int y = 0; y < box.ny; ++y) {
      Rat s(0);
      for (int a = 0; a < box.na; ++a)
        for (int b = 0; b < box.nb; ++b) s += box.p(x, y, a, b);
      if (!close(s, Rat(1)))
        out.push_back("normalization violated at inputs (" + std::to_string(x) + "," +
                      std::to_string(y) + ")");
    }
  // no-signaling: A-side output marginal independent of y, B-side of x
  for (int x = 0; x < box.nx; ++x)
    for (int a = 0; a < box.na; ++a)
      for (int y = 1; y < box.ny; ++y)
        if (!close(box.marginal_a(x, y, a), box.marginal_a(x, 0, a)))
          out.push_back("no-signaling violated toward A at (x=" + std::to_string(x) +
                        ",a=" + std::to_string(a) + ",y=" + std::to_string(y) + ")");
  for (int y = 0; y < box.ny; ++y)
    for (int b = 0; b < box.nb; ++b)
      for (int x = 1; x < box.nx; ++x)
        if (!close(box.marginal_b(x, y, b), box.marginal_b(0, y, b)))
          out.push_back("no-signaling violated toward B at (y=" + std::to_string(y) +
                        ",b=" + std::to_string(b) + ",x=" + std::to_string(x) + ")");
  return out;
}

NSBox make_pr_box() {
  NSBox box;
  box.table.assign(16, Rat(0));
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          if ((a ^ b) == (x & y))
            box.table[((static_cast<std::size_t>(x) * 2 + y) * 2 + a) * 2 + b] = Rat(1, 2);
  return box;
}

NSBox make_local_deterministic(const std::vector<int>& fa, const std::vector<int>& fb,
                               int nx, int ny, int na, int nb) {
  NSBox box;
  box.nx = nx;
  box.ny = ny;
  box.na = na;
  box.nb = nb;
  box.table.assign(static_cast<std::size_t>(nx) * ny * na * nb, Rat(0));
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y)
      box.table[((static_cast<std::size_t>(x) * ny + y) * na + fa[x]) * nb + fb[y]] = 1;
  return box;
}

std::string transcript_key(const std::vector<std::array<int, 3>>& steps) {
  std::string key;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (i) key += '|';
    key += '(' + std::to_string(steps[i][0]) + ',' + std::to_string(steps[i][1]) + ',' +
           std::to_string(steps[i][2]) + ')';
  }
  return key;
}

namespace {

struct EndRef {
  int box_id = 0;
  bool first = false;  // true: the (x,a) side
};

struct Engine {
  std::vector<const NSBox*> box;               // global box id -> table
  std::vector<std::array<int, 2>> box_party;   // global box id -> (first party, second party)
  std::vector<std::vector<EndRef>> ends;       // party -> ordered local ends
  std::vector<std::array<std::array<int, 2>, 2>> box_end_loc;  // box -> end(0/1) -> (party, local end)
};

Engine build_engine(const Network& net, const BoxAssignment& boxes) {
  if (!net.bipartite_only())
    throw std::invalid_argument("boxworld: bipartite sources required");
  if (static_cast<int>(boxes.per_source.size()) != net.n_sources())
    throw std::invalid_argument("boxworld: one box list per source required");
  Engine eng;
  eng.ends.resize(net.n_parties());
  for (int i = 0; i < net.n_sources(); ++i) {
    int p = std::min(net.sources[i][0], net.sources[i][1]);
    int q = std::max(net.sources[i][0], net.sources[i][1]);
    for (std::size_t c = 0; c < boxes.per_source[i].size(); ++c) {
      const NSBox* b = &boxes.per_source[i][c];
      auto bad = validate_box(*b, b->float_origin ? 1e-9 : 0.0);
      if (!bad.empty())
        throw std::invalid_argument("boxworld: invalid box on source " + std::to_string(i) +
                                    ": " + bad.front());
      int id = static_cast<int>(eng.box.size());
      eng.box.push_back(b);
      eng.box_party.push_back({p, q});
      eng.box_end_loc.push_back({});
      eng.box_end_loc[id][0] = {p, static_cast<int>(eng.ends[p].size())};
      eng.box_end_loc[id][1] = {q, static_cast<int>(eng.ends[q].size())};
      eng.ends[p].push_back({id, true});
      eng.ends[q].push_back({id, false});
    }
  }
  return eng;
}

int end_inputs(const Engine& eng, const EndRef& e) {
  return e.first ? eng.box[e.box_id]->nx : eng.box[e.box_id]->ny;
}
int end_outputs(const Engine& eng, const EndRef& e) {
  return e.first ? eng.box[e.box_id]->na : eng.box[e.box_id]->nb;
}

struct Trace {
  std::vector<std::array<int, 3>> steps;
  Rat weight;                       // product of decision probabilities
  std::vector<int> input_of_end;    // -1 when unset
  std::vector<int> output_of_end;
  std::vector<int> pos_of_end;
};

std::vector<Trace> enumerate_party(const Engine& eng, int party, const PartyProgram& prog) {
  const auto& ends = eng.ends[party];
  const int n_ends = static_cast<int>(ends.size());
  std::vector<Trace> out;
  std::vector<std::array<int, 3>> steps;

  std::function<void(unsigned, const Rat&)> rec = [&](unsigned used, const Rat& w) {
    if (static_cast<int>(steps.size()) == n_ends) {
      Trace t;
      t.steps = steps;
      t.weight = w;
      t.input_of_end.assign(n_ends, -1);
      t.output_of_end.assign(n_ends, -1);
      t.pos_of_end.assign(n_ends, -1);
      for (std::size_t i = 0; i < steps.size(); ++i) {
        t.input_of_end[steps[i][0]] = steps[i][1];
        t.output_of_end[steps[i][0]] = steps[i][2];
        t.pos_of_end[steps[i][0]] = static_cast<int>(i);
      }
      out.push_back(std::move(t));
      return;
    }
    const std::string key = transcript_key(steps);
    auto it = prog.decide.find(key);
    if (it == prog.decide.end())
      throw std::invalid_argument("wiring program: missing decision rule for party " +
                                  std::to_string(party) + " at transcript '" + key + "'");
    Rat total(0);
    for (const auto& entry : it->second) {
      if (entry.prob < 0) throw std::invalid_argument("wiring program: negative probability");
      total += entry.prob;
      if (entry.prob == 0) continue;
      if (entry.end < 0 || entry.end >= n_ends)
        throw std::invalid_argument("wiring program: end index out of range");
      if (used & (1u << entry.end))
        throw std::invalid_argument("wiring program: box end used twice");
      if (entry.input < 0 || entry.input >= end_inputs(eng, ends[entry.end]))
        throw std::invalid_argument("wiring program: input out of range");
      const int n_out = end_outputs(eng, ends[entry.end]);
      for (int o = 0; o < n_out; ++o) {
        steps.push_back({entry.end, entry.input, o});
        rec(used | (1u << entry.end), w * entry.prob);
        steps.pop_back();
      }
    }
    if (total != 1)
      throw std::invalid_argument("wiring program: decision rule probabilities sum to " +
                                  rat_to_string(total));
  };
  rec(0u, Rat(1));
  return out;
}

const std::vector<OutputRuleEntry>& output_rule(const PartyProgram& prog, const Trace& t,
                                                int party) {
  auto it = prog.output.find(transcript_key(t.steps));
  if (it == prog.output.end())
    throw std::invalid_argument("wiring program: missing output rule for party " +
                                std::to_string(party));
  return it->second;
}

}  // namespace

WiringResult evaluate_wiring(const Network& net, const BoxAssignment& boxes,
                             const WiringProgram& prog, bool want_transcripts,
                             std::uint64_t guard) {
  if (static_cast<int>(prog.parties.size()) != net.n_parties())
    throw std::invalid_argument("evaluate_wiring: one program per party required");
  Engine eng = build_engine(net, boxes);
  const int n = net.n_parties();

  std::vector<std::vector<Trace>> traces(n);
  long double atom_estimate = 1;
  for (int j = 0; j < n; ++j) {
    traces[j] = enumerate_party(eng, j, prog.parties[j]);
    atom_estimate *= static_cast<long double>(traces[j].size());
  }
  if (atom_estimate > static_cast<long double>(guard))
    throw std::invalid_argument("evaluate_wiring: transcript space exceeds guard");

  std::vector<int> alphabets(n);
  for (int j = 0; j < n; ++j) alphabets[j] = prog.parties[j].out_alphabet;
  std::size_t out_size = 1;
  for (int k : alphabets) out_size *= static_cast<std::size_t>(k);
  RatVec out_table(out_size, Rat(0));

  TranscriptDistribution td;
  if (want_transcripts) {
    td.net = net;
    td.party_ends_source.resize(n);
    td.party_ends_copy.resize(n);
    td.party_ends_box.resize(n);
    std::vector<int> src_of_box, copy_of_box;
    for (int i = 0; i < net.n_sources(); ++i)
      for (std::size_t c = 0; c < boxes.per_source[i].size(); ++c) {
        src_of_box.push_back(i);
        copy_of_box.push_back(static_cast<int>(c));
      }
    for (int j = 0; j < n; ++j)
      for (const auto& e : eng.ends[j]) {
        td.party_ends_source[j].push_back(src_of_box[e.box_id]);
        td.party_ends_copy[j].push_back(copy_of_box[e.box_id]);
        td.party_ends_box[j].push_back(e.box_id);
      }
  }

  std::vector<int> pick(n, 0);
  std::vector<int> radix(n);
  for (int j = 0; j < n; ++j) radix[j] = static_cast<int>(traces[j].size());

  std::vector<int> choice(n, 0);
  std::function<void(int, const Rat&)> emit_outputs = [&](int j, const Rat& w) {
    if (j == n) {
      std::size_t idx = 0;
      for (int u = 0; u < n; ++u) idx = idx * alphabets[u] + choice[u];
      out_table[idx] += w;
      return;
    }
    for (const auto& e : output_rule(prog.parties[j], traces[j][pick[j]], j)) {
      if (e.prob == 0) continue;
      if (e.output < 0 || e.output >= alphabets[j])
        throw std::invalid_argument("wiring program: output symbol out of range");
      choice[j] = e.output;
      emit_outputs(j + 1, w * e.prob);
    }
  };

  for (;;) {
    Rat w(1);
    for (int j = 0; j < n; ++j) w *= traces[j][pick[j]].weight;
    if (w != 0) {
      for (std::size_t id = 0; id < eng.box.size() && w != 0; ++id) {
        auto [pf, ef] = eng.box_end_loc[id][0];
        auto [ps, es] = eng.box_end_loc[id][1];
        const Trace& tf = traces[pf][pick[pf]];
        const Trace& ts = traces[ps][pick[ps]];
        w *= eng.box[id]->p(tf.input_of_end[ef], ts.input_of_end[es], tf.output_of_end[ef],
                            ts.output_of_end[es]);
      }
      if (w != 0) {
        emit_outputs(0, w);
        if (want_transcripts) {
          TranscriptAtom atom;
          atom.p = w;
          for (int j = 0; j < n; ++j) atom.t.push_back({traces[j][pick[j]].steps});
          td.atoms.push_back(std::move(atom));
        }
      }
    }
    int k = n - 1;
    while (k >= 0 && pick[k] == radix[k] - 1) pick[k--] = 0;
    if (k < 0) break;
    ++pick[k];
  }

  WiringResult res{JointDistribution::exact(alphabets, std::move(out_table)), std::nullopt};
  auto bad = res.outputs.validate();
  if (!bad.empty()) throw std::logic_error("evaluate_wiring: " + bad.front());
  if (want_transcripts) res.transcripts = std::move(td);
  return res;
}

JointDistribution evaluate_wiring_ordered(const Network& net, const BoxAssignment& boxes,
                                          const WiringProgram& prog,
                                          const std::vector<int>& order) {
  Engine eng = build_engine(net, boxes);
  const int n = net.n_parties();
  std::size_t total_steps = 0;
  std::vector<int> need(n, 0);
  for (int j = 0; j < n; ++j) {
    need[j] = static_cast<int>(eng.ends[j].size());
    total_steps += eng.ends[j].size();
  }
  if (order.size() != total_steps)
    throw std::invalid_argument("evaluate_wiring_ordered: order length mismatch");
  {
    std::vector<int> cnt(n, 0);
    for (int p : order) cnt.at(p)++;
    if (cnt != need) throw std::invalid_argument("evaluate_wiring_ordered: order party counts wrong");
  }

  std::vector<int> alphabets(n);
  for (int j = 0; j < n; ++j) alphabets[j] = prog.parties[j].out_alphabet;
  std::size_t out_size = 1;
  for (int k : alphabets) out_size *= static_cast<std::size_t>(k);
  RatVec out_table(out_size, Rat(0));

  struct BoxState {
    bool fired_first = false, fired_second = false;
    int x = -1, y = -1, a = -1, b = -1;
  };

  std::vector<std::vector<std::array<int, 3>>> steps(n);
  std::vector<BoxState> bst(eng.box.size());

  std::function<void(std::size_t, const Rat&)> rec = [&](std::size_t k, const Rat& w) {
    if (k == order.size()) {
      // fold the stochastic output maps
      std::vector<int> choice(n, 0);
      std::function<void(int, const Rat&)> emit = [&](int j, const Rat& wo) {
        if (j == n) {
          std::size_t idx = 0;
          for (int u = 0; u < n; ++u) idx = idx * alphabets[u] + choice[u];
          out_table[idx] += wo;
          return;
        }
        auto it = prog.parties[j].output.find(transcript_key(steps[j]));
        if (it == prog.parties[j].output.end())
          throw std::invalid_argument("wiring program: missing output rule");
        for (const auto& e : it->second) {
          if (e.prob == 0) continue;
          choice[j] = e.output;
          emit(j + 1, wo * e.prob);
        }
      };
      emit(0, w);
      return;
    }
    const int party = order[k];
    const std::string key = transcript_key(steps[party]);
    auto it = prog.parties[party].decide.find(key);
    if (it == prog.parties[party].decide.end())
      throw std::invalid_argument("wiring program: missing decision rule");
    for (const auto& entry : it->second) {
      if (entry.prob == 0) continue;
      const EndRef e = eng.ends[party][entry.end];
      const NSBox& box = *eng.box[e.box_id];
      BoxState saved = bst[e.box_id];
      const int n_out = e.first ? box.na : box.nb;
      for (int o = 0; o < n_out; ++o) {
        BoxState& s = bst[e.box_id];
        Rat pr;
        if (e.first) {
          s.x = entry.input;
          s.a = o;
          if (!s.fired_second) {
            pr = box.marginal_a(s.x, 0, s.a);  // no-signaling marginal
          } else {
            Rat fm = box.marginal_b(0, s.y, s.b);
            if (fm == 0) { bst[e.box_id] = saved; continue; }
            pr = box.p(s.x, s.y, s.a, s.b) / fm;
          }
          s.fired_first = true;
        } else {
          s.y = entry.input;
          s.b = o;
          if (!s.fired_first) {
            pr = box.marginal_b(0, s.y, s.b);
          } else {
            Rat fm = box.marginal_a(s.x, 0, s.a);
            if (fm == 0) { bst[e.box_id] = saved; continue; }
            pr = box.p(s.x, s.y, s.a, s.b) / fm;
          }
          s.fired_second = true;
        }
        if (pr != 0) {
          steps[party].push_back({entry.end, entry.input, o});
          rec(k + 1, w * entry.prob * pr);
          steps[party].pop_back();
        }
        bst[e.box_id] = saved;
      }
    }
  };
  rec(0, Rat(1));

  return JointDistribution::exact(alphabets, std::move(out_table));
}

namespace {

// helpers for lemma bookkeeping on one transcript atom
std::string full_key(const TranscriptAtom& atom, int party) {
  return transcript_key(atom.t[party].steps);
}

std::string prefix_key(const TranscriptAtom& atom, int party, int upto) {
  std::vector<std::array<int, 3>> pre(atom.t[party].steps.begin(),
                                      atom.t[party].steps.begin() + upto);
  return transcript_key(pre);
}

struct BoxUse {
  int pos = -1;  // step index at which the party used the box
  int input = -1;
  int output = -1;
};

BoxUse find_box_use(const TranscriptDistribution& td, const TranscriptAtom& atom, int party,
                    int box_id) {
  const auto& map = td.party_ends_box[party];
  for (std::size_t i = 0; i < atom.t[party].steps.size(); ++i) {
    int end = atom.t[party].steps[i][0];
    if (map[end] == box_id)
      return {static_cast<int>(i), atom.t[party].steps[i][1], atom.t[party].steps[i][2]};
  }
  throw std::logic_error("transcript atom does not use the requested box");
}

// extended transcript: prefix before using the box, plus (position, input)
std::string extended_key(const TranscriptDistribution& td, const TranscriptAtom& atom, int party,
                         int box_id) {
  BoxUse u = find_box_use(td, atom, party, box_id);
  return prefix_key(atom, party, u.pos) + "#pos" + std::to_string(u.pos) + "#in" +
         std::to_string(u.input);
}

}  // namespace

std::vector<LemmaCheck> check_ns_lemmas(const TranscriptDistribution& td) {
  const int n = td.net.n_parties();
  if (n != 2 && n != 3)
    throw std::invalid_argument("check_ns_lemmas: 2- or 3-party networks only");
  std::vector<LemmaCheck> out;

  auto run = [&](const std::string& name,
                 const std::function<std::string(const TranscriptAtom&)>& fx,
                 const std::function<std::string(const TranscriptAtom&)>& fy,
                 const std::function<std::string(const TranscriptAtom&)>& fz) {
    std::vector<CmiAtom> atoms;
    atoms.reserve(td.atoms.size());
    for (const auto& a : td.atoms) atoms.push_back({fx(a), fy(a), fz(a), a.p});
    out.push_back({name, conditional_mutual_information(atoms)});
  };

  const int A = 0, B = 1, C = n == 3 ? 2 : -1;

  // Lemma 2 (choices are local): step-i box/input choice of a later party is
  // independent of earlier parties' full transcripts given her own prefix.
  const int nb_steps = static_cast<int>(td.party_ends_box[B].size());
  for (int i = 0; i < nb_steps; ++i) {
    run("lemma2/B/step" + std::to_string(i),
        [&, i](const TranscriptAtom& a) {
          return "(" + std::to_string(a.t[B].steps[i][0]) + "," +
                 std::to_string(a.t[B].steps[i][1]) + ")";
        },
        [&](const TranscriptAtom& a) { return full_key(a, A); },
        [&, i](const TranscriptAtom& a) { return prefix_key(a, B, i); });
  }
  if (n == 3) {
    const int nc_steps = static_cast<int>(td.party_ends_box[C].size());
    for (int i = 0; i < nc_steps; ++i) {
      run("lemma2/C/step" + std::to_string(i),
          [&, i](const TranscriptAtom& a) {
            return "(" + std::to_string(a.t[C].steps[i][0]) + "," +
                   std::to_string(a.t[C].steps[i][1]) + ")";
          },
          [&](const TranscriptAtom& a) { return full_key(a, A) + "//" + full_key(a, B); },
          [&, i](const TranscriptAtom& a) { return prefix_key(a, C, i); });
    }
  }

  // Lemma 3 / 4 (outputs): box-output identities across parties.
  // collect boxes by party pair
  std::map<int, std::pair<int, int>> box_pair;  // box id -> (lower party, higher party)
  for (int j = 0; j < n; ++j)
    for (std::size_t e = 0; e < td.party_ends_box[j].size(); ++e) {
      int id = td.party_ends_box[j][e];
      auto it = box_pair.find(id);
      if (it == box_pair.end())
        box_pair[id] = {j, -1};
      else
        it->second.second = j;
    }

  for (const auto& [id, pq] : box_pair) {
    const auto [p, q] = pq;
    const int bid = id;
    if (p == A && q == B) {
      // I(B_j; T | T_j^e A_j S_j^e) = 0
      run("lemma3i/box" + std::to_string(bid),
          [&, bid](const TranscriptAtom& a) {
            return std::to_string(find_box_use(td, a, B, bid).output);
          },
          [&](const TranscriptAtom& a) { return full_key(a, A); },
          [&, bid](const TranscriptAtom& a) {
            BoxUse ua = find_box_use(td, a, A, bid);
            return extended_key(td, a, A, bid) + "@a" + std::to_string(ua.output) + "//" +
                   extended_key(td, a, B, bid);
          });
    }
    if (n == 3 && p == B && q == C) {
      // I(B_j; T | S_j^e) = 0
      run("lemma3ii/box" + std::to_string(bid),
          [&, bid](const TranscriptAtom& a) {
            return std::to_string(find_box_use(td, a, B, bid).output);
          },
          [&](const TranscriptAtom& a) { return full_key(a, A); },
          [&, bid](const TranscriptAtom& a) { return extended_key(td, a, B, bid); });
      // I(C_j; T S | S_j^e B_j R_j^e) = 0
      run("lemma4i/box" + std::to_string(bid),
          [&, bid](const TranscriptAtom& a) {
            return std::to_string(find_box_use(td, a, C, bid).output);
          },
          [&](const TranscriptAtom& a) { return full_key(a, A) + "//" + full_key(a, B); },
          [&, bid](const TranscriptAtom& a) {
            BoxUse ub = find_box_use(td, a, B, bid);
            return extended_key(td, a, B, bid) + "@b" + std::to_string(ub.output) + "//" +
                   extended_key(td, a, C, bid);
          });
    }
    if (n == 3 && p == A && q == C) {
      // I(C_j; S T | T_j^e A_j R_j^e) = 0
      run("lemma4ii/box" + std::to_string(bid),
          [&, bid](const TranscriptAtom& a) {
            return std::to_string(find_box_use(td, a, C, bid).output);
          },
          [&](const TranscriptAtom& a) { return full_key(a, A) + "//" + full_key(a, B); },
          [&, bid](const TranscriptAtom& a) {
            BoxUse ua = find_box_use(td, a, A, bid);
            return extended_key(td, a, A, bid) + "@a" + std::to_string(ua.output) + "//" +
                   extended_key(td, a, C, bid);
          });
    }
  }
  return out;
}

std::vector<std::string> verify_box_marginals(const TranscriptDistribution& td,
                                              const BoxAssignment& boxes) {
  std::vector<std::string> out;
  Engine eng = build_engine(td.net, boxes);
  for (std::size_t id = 0; id < eng.box.size(); ++id) {
    auto [pf, ef_unused] = eng.box_end_loc[id][0];
    auto [ps, es_unused] = eng.box_end_loc[id][1];
    (void)ef_unused;
    (void)es_unused;
    const NSBox& box = *eng.box[id];
    std::map<std::pair<int, int>, Rat> mass;
    std::map<std::tuple<int, int, int, int>, Rat> joint;
    for (const auto& atom : td.atoms) {
      BoxUse uf = find_box_use(td, atom, pf, static_cast<int>(id));
      BoxUse us = find_box_use(td, atom, ps, static_cast<int>(id));
      mass[{uf.input, us.input}] += atom.p;
      joint[{uf.input, us.input, uf.output, us.output}] += atom.p;
    }
    for (const auto& [xy, w] : mass) {
      if (w == 0) continue;
      for (int a = 0; a < box.na; ++a)
        for (int b = 0; b < box.nb; ++b) {
          Rat seen(0);
          auto it = joint.find({xy.first, xy.second, a, b});
          if (it != joint.end()) seen = it->second;
          if (seen != w * box.p(xy.first, xy.second, a, b)) {
            out.push_back("box " + std::to_string(id) + " table not reproduced at inputs (" +
                          std::to_string(xy.first) + "," + std::to_string(xy.second) + ")");
            goto next_box;
          }
        }
    }
  next_box:;
  }
  return out;
}

WiringProgram make_xor_program(const Network& net, const BoxAssignment& boxes, int input) {
  Engine eng = build_engine(net, boxes);
  WiringProgram prog;
  prog.parties.resize(net.n_parties());
  for (int j = 0; j < net.n_parties(); ++j) {
    PartyProgram& pp = prog.parties[j];
    pp.out_alphabet = 2;
    const int n_ends = static_cast<int>(eng.ends[j].size());
    std::vector<std::array<int, 3>> steps;
    std::function<void()> rec = [&]() {
      const int next = static_cast<int>(steps.size());
      if (next == n_ends) {
        int x = 0;
        for (const auto& s : steps) x ^= (s[2] & 1);
        pp.output[transcript_key(steps)] = {{Rat(1), x}};
        return;
      }
      const int in = std::min(input, end_inputs(eng, eng.ends[j][next]) - 1);
      pp.decide[transcript_key(steps)] = {{Rat(1), next, in}};
      for (int o = 0; o < end_outputs(eng, eng.ends[j][next]); ++o) {
        steps.push_back({next, in, o});
        rec();
        steps.pop_back();
      }
    };
    rec();
  }
  return prog;
}

NSBox random_ns_box(std::uint64_t seed, int denom) {
  Rng rng(seed);
  std::vector<NSBox> verts;
  const std::vector<std::vector<int>> funcs{{0, 0}, {1, 1}, {0, 1}, {1, 0}};
  for (const auto& fa : funcs)
    for (const auto& fb : funcs) verts.push_back(make_local_deterministic(fa, fb));
  for (int al = 0; al < 2; ++al)
    for (int be = 0; be < 2; ++be)
      for (int ga = 0; ga < 2; ++ga) {
        NSBox pr;
        pr.table.assign(16, Rat(0));
        for (int x = 0; x < 2; ++x)
          for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
              for (int b = 0; b < 2; ++b)
                if ((a ^ b) == ((x & y) ^ (al & x) ^ (be & y) ^ ga))
                  pr.table[((static_cast<std::size_t>(x) * 2 + y) * 2 + a) * 2 + b] = Rat(1, 2);
        verts.push_back(pr);
      }

  std::vector<long> w(verts.size(), 0);
  long total = 0;
  for (auto& v : w) {
    v = rng.uniform_int(0, denom);
    total += v;
  }
  if (total == 0) {
    w[0] = 1;
    total = 1;
  }
  NSBox mix;
  mix.table.assign(16, Rat(0));
  for (std::size_t v = 0; v < verts.size(); ++v) {
    if (w[v] == 0) continue;
    const Rat coeff(w[v], total);
    for (std::size_t t = 0; t < 16; ++t) mix.table[t] += coeff * verts[v].table[t];
  }
  return mix;
}

WiringProgram random_wiring(const Network& net, const BoxAssignment& boxes, std::uint64_t seed,
                            bool stochastic) {
  Engine eng = build_engine(net, boxes);
  Rng rng(seed);
  WiringProgram prog;
  prog.parties.resize(net.n_parties());
  for (int j = 0; j < net.n_parties(); ++j) {
    PartyProgram& pp = prog.parties[j];
    pp.out_alphabet = 2;
    const int n_ends = static_cast<int>(eng.ends[j].size());
    std::vector<std::array<int, 3>> steps;
    std::function<void(unsigned)> rec = [&](unsigned used) {
      const int depth = static_cast<int>(steps.size());
      if (depth == n_ends) {
        if (stochastic && rng.uniform() < 0.3) {
          pp.output[transcript_key(steps)] = {{Rat(1, 4), 0}, {Rat(3, 4), 1}};
        } else {
          pp.output[transcript_key(steps)] = {{Rat(1), static_cast<int>(rng.uniform_int(0, 1))}};
        }
        return;
      }
      std::vector<int> unused;
      for (int e = 0; e < n_ends; ++e)
        if (!(used & (1u << e))) unused.push_back(e);
      std::vector<WiringRuleEntry> rule;
      int e1 = unused[rng.uniform_int(0, static_cast<long>(unused.size()) - 1)];
      int x1 = static_cast<int>(rng.uniform_int(0, end_inputs(eng, eng.ends[j][e1]) - 1));
      if (stochastic && rng.uniform() < 0.5) {
        // branch between two distinct actions
        int e2 = unused[rng.uniform_int(0, static_cast<long>(unused.size()) - 1)];
        int x2 = static_cast<int>(rng.uniform_int(0, end_inputs(eng, eng.ends[j][e2]) - 1));
        if (e2 == e1 && x2 == x1) x2 = (x1 + 1) % end_inputs(eng, eng.ends[j][e1]);
        if (e2 == e1 && x2 == x1) {
          rule = {{Rat(1), e1, x1}};
        } else {
          rule = {{Rat(1, 3), e1, x1}, {Rat(2, 3), e2, x2}};
        }
      } else {
        rule = {{Rat(1), e1, x1}};
      }
      pp.decide[transcript_key(steps)] = rule;
      for (const auto& entry : rule) {
        if (entry.prob == 0) continue;
        for (int o = 0; o < end_outputs(eng, eng.ends[j][entry.end]); ++o) {
          steps.push_back({entry.end, entry.input, o});
          rec(used | (1u << entry.end));
          steps.pop_back();
        }
      }
    };
    rec(0u);
  }
  return prog;
}

}  // namespace finnet
