// spincode: construct, verify and search quantum codes with binary
// octahedral / tetrahedral symmetry in large spins, symmetric subspaces of
// several spins, and collections of qubits.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <tuple>

#include "CLI11.hpp"
#include "json.hpp"

#include "spincode/code_library.hpp"

using namespace spincode;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "1.0.0";

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct Manifest {
  json params;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  json finish(const std::string& command, const json& verdicts) const {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    return json{{"command", command},
                {"params", params},
                {"version", kVersion},
                {"tolerances",
                 {{"exact", kExactTol}, {"published", kPublishedTol}, {"reoptimized", kReoptimizedTol}}},
                {"wall_time_ms", ms},
                {"verdicts", verdicts}};
  }
};

json report_to_json(const KLReport& rep, bool include_conditions = true) {
  json out{{"pass", rep.pass},
           {"tier", rep.tier},
           {"tolerance", rep.tolerance},
           {"max_residual", rep.max_residual},
           {"max_normalized_residual", rep.max_normalized_residual},
           {"conditions_checked", rep.conditions.size()},
           {"diag_family_active", rep.diag_family_active},
           {"offdiag_family_active", rep.offdiag_family_active}};
  if (!rep.skipped_classes.empty()) out["skipped_classes"] = rep.skipped_classes;
  if (include_conditions) {
    json conds = json::array();
    for (auto& c : rep.conditions) {
      if (c.residual < 1e-14 && rep.conditions.size() > 64) continue;  // keep output readable
      conds.push_back({{"pair", c.a.label() + " | " + c.b.label()},
                       {"bra", c.bra},
                       {"ket", c.ket},
                       {"value_re", c.value.real()},
                       {"value_im", c.value.imag()},
                       {"must_vanish", c.must_vanish},
                       {"residual", c.residual},
                       {"scale", c.scale},
                       {"note", c.note}});
    }
    out["conditions"] = conds;
  }
  return out;
}

json code_to_json(const Codeword& code) {
  json sys;
  std::string basis;
  if (code.system.kind == SystemDesc::Kind::multi_spin) {
    sys = {{"n", code.system.n}, {"j_twice", code.system.j.twice}};
    basis = "total_JM";
  } else {
    sys = {{"N_qubits", code.system.n}};
    basis = "dicke";
  }
  // assembled |0> amplitudes over the basis labels (J, multIndex, m); copies
  // of the irrep inside one (J, mult) host aggregate into one entry per m
  std::map<std::tuple<int, int, int>, double> acc;
  for (size_t k = 0; k < code.components.size(); ++k) {
    const auto& comp = code.components[k];
    for (int i = 0; i < comp.zero.size(); ++i) {
      double re = code.mixing(k) * comp.zero(i);
      if (std::abs(re) < 1e-15) continue;
      acc[{comp.J.twice, comp.su2_mult, comp.J.twice - 2 * i}] += re;
    }
  }
  json amps = json::array();
  for (auto& [key, re] : acc) {
    if (std::abs(re) < 1e-14) continue;
    auto [Jt, mult, mt] = key;
    amps.push_back({{"J_twice", Jt}, {"mult", mult}, {"m_twice", mt}, {"re", re}});
  }
  json mixing = json::array();
  for (size_t k = 0; k < code.components.size(); ++k)
    mixing.push_back({{"J_twice", code.components[k].J.twice},
                      {"su2_mult", code.components[k].su2_mult},
                      {"copy", code.components[k].copy},
                      {"c", code.mixing(k)},
                      {"jz_expect", code.components[k].jz_expect}});
  json published;
  if (!code.published.mixing.empty()) published["mixing"] = code.published.mixing;
  if (!code.published.amplitudes.empty()) {
    json pamps = json::array();
    for (auto& comp : code.published.amplitudes) {
      json one = json::array();
      for (auto& [mt, v] : comp) one.push_back({{"m_twice", mt}, {"re", v}});
      pamps.push_back(one);
    }
    published["amplitudes"] = pamps;
  }
  return json{{"id", code.id},
              {"group", group_name(code.group)},
              {"irrep", code.irrep},
              {"system", sys},
              {"basis", basis},
              {"amplitudes", amps},
              {"mixing", mixing},
              {"provenance", provenance_name(code.provenance)},
              {"discrepant", code.discrepant},
              {"agreement", code.agreement},
              {"notes", code.notes}};
}

// Reads a codeword in the schema emitted by `code get` and rebuilds |0>/|1>.
struct LoadedCode {
  SystemDesc system;
  GroupKind group = GroupKind::octahedral_2O;
  std::map<std::pair<int, int>, RVec> blocks;  // (J_twice, mult) -> amplitudes
};

LoadedCode load_code_json(const json& j) {
  LoadedCode lc;
  if (j.contains("group") && j["group"] == "2T") lc.group = GroupKind::tetrahedral_2T;
  const json& sys = j.at("system");
  if (sys.contains("N_qubits")) {
    lc.system.kind = SystemDesc::Kind::qubits;
    lc.system.n = sys["N_qubits"].get<int>();
    lc.system.j = HalfInt::from_twice(1);
  } else {
    lc.system.kind = SystemDesc::Kind::multi_spin;
    lc.system.n = sys.at("n").get<int>();
    lc.system.j = HalfInt::from_twice(sys.at("j_twice").get<int>());
  }
  for (auto& a : j.at("amplitudes")) {
    int Jt = a.at("J_twice").get<int>();
    int mult = a.contains("mult") ? a["mult"].get<int>() : 0;
    auto key = std::make_pair(Jt, mult);
    if (!lc.blocks.count(key)) lc.blocks[key] = RVec::Zero(Jt + 1);
    int idx = (Jt - a.at("m_twice").get<int>()) / 2;
    if (idx < 0 || idx >= Jt + 1) throw std::runtime_error("m outside the J ladder");
    lc.blocks[key](idx) = a.at("re").get<double>();
  }
  if (lc.blocks.empty()) throw std::runtime_error("no amplitudes in input");
  return lc;
}

int run_decompose(int n, const std::string& jstr, bool as_json) {
  Manifest mf;
  HalfInt j = parse_half_int(jstr);
  mf.params = {{"n", n}, {"j", jstr}};
  auto dec = decompose_symmetric(n, j);
  json rows = json::array();
  for (auto& [J, m] : dec.entries) {
    rows.push_back({{"J", J.str()}, {"J_twice", J.twice}, {"multiplicity", m}, {"dim", J.dim()}});
  }
  json verdict{{"dimension", dec.total_dim()}, {"dimension_formula", sym_dim(n, j)}};
  if (as_json) {
    json out{{"manifest", mf.finish("decompose", verdict)}, {"decomposition", rows}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::printf("symmetric subspace of %d spin-%s systems (dim %llu):\n", n, j.str().c_str(),
                static_cast<unsigned long long>(dec.total_dim()));
    for (auto& [J, m] : dec.entries)
      std::printf("  J = %-5s multiplicity %d  (dim %d)\n", J.str().c_str(), m, J.dim());
  }
  return 0;
}

int run_codewords(const std::string& jstr, const std::string& group, const std::string& irrep_name) {
  Manifest mf;
  mf.params = {{"j", jstr}, {"group", group}, {"irrep", irrep_name}};
  HalfInt j = parse_half_int(jstr);
  GroupKind kind = group == "2T" ? GroupKind::tetrahedral_2T : GroupKind::octahedral_2O;
  CodeBasis basis = logical_codewords(j, find_irrep(kind, irrep_name));
  json copies = json::array();
  for (int c = 0; c < basis.mult; ++c) {
    json zero = json::array(), one = json::array();
    for (int i = 0; i < basis.zeros[c].size(); ++i) {
      if (std::abs(basis.zeros[c](i)) > 1e-14)
        zero.push_back({{"m_twice", j.twice - 2 * i}, {"re", basis.zeros[c](i)}});
      if (std::abs(basis.ones[c](i)) > 1e-14)
        one.push_back({{"m_twice", j.twice - 2 * i}, {"re", basis.ones[c](i)}});
    }
    copies.push_back({{"copy", c},
                      {"jz_expect", basis.jz_expect[c]},
                      {"support_residue", basis.support_residue[c]},
                      {"zero", zero},
                      {"one", one}});
  }
  json out{{"manifest", mf.finish("codewords", {{"multiplicity", basis.mult}})},
           {"j", j.str()},
           {"group", group},
           {"irrep", irrep_name},
           {"copies", copies}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_code(const std::string& action, const std::string& id, const std::string& level_name,
             bool published) {
  Manifest mf;
  mf.params = {{"action", action}, {"id", id}, {"level", level_name}, {"published", published}};
  const Codeword& code = published_code(id);
  if (action == "get") {
    json out{{"manifest", mf.finish("code", {{"reconstructed", true}})},
             {"codeword", code_to_json(code)}};
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  VerifyLevel level = level_name == "reduced"      ? VerifyLevel::reduced
                      : level_name == "collective" ? VerifyLevel::collective
                                                   : VerifyLevel::full;
  KLReport rep = published ? verify_published_mixing(id, level) : verify_code(id, level);
  json out{{"manifest", mf.finish("code", {{"pass", rep.pass}})},
           {"id", id},
           {"report", report_to_json(rep)}};
  std::cout << out.dump(2) << "\n";
  return rep.pass ? 0 : 2;
}

int run_kl_check(const std::string& input, int order, double tol) {
  Manifest mf;
  mf.params = {{"input", input}, {"order", order}, {"tol", tol}};
  std::ifstream in(input);
  if (!in) throw std::runtime_error("cannot open " + input);
  json parsed = json::parse(in);
  const json& cj = parsed.contains("codeword") ? parsed["codeword"] : parsed;
  LoadedCode lc = load_code_json(cj);

  KLReport rep;
  if (lc.system.kind == SystemDesc::Kind::multi_spin) {
    const SymBasis& basis = shared_sym_basis(lc.system.n, lc.system.j);
    RVec zero = RVec::Zero(basis.product_dim()), one = RVec::Zero(basis.product_dim());
    for (auto& [key, amps] : lc.blocks) {
      HalfInt J = HalfInt::from_twice(key.first);
      double sign = (((J.twice % 4) + 4) % 4 == 1) ? 1.0 : -1.0;
      RVec one_amps = sign * amps.reverse();
      zero += basis.embed(J, key.second, amps);
      one += basis.embed(J, key.second, one_amps);
    }
    double nrm = zero.norm();
    zero /= nrm;
    one /= nrm;
    SymSpaceEvaluator ev(basis, zero, one);
    rep = kl_check_full(ev, build_error_set(lc.system.n, order == 1 ? ErrorOrder::first : ErrorOrder::second,
                                            lc.system.j),
                        tol, "external");
  } else {
    const int N = lc.system.n;
    RVec zero = RVec::Zero(N + 1);
    for (auto& [key, amps] : lc.blocks) {
      if (key.first != N) throw std::runtime_error("qubit code amplitudes must live at J = N/2");
      zero += amps;
    }
    double sign = (((N % 4) + 4) % 4 == 1) ? 1.0 : -1.0;
    RVec one = sign * zero.reverse();
    zero /= zero.norm();
    one /= one.norm();
    if (N <= DenseQubitEvaluator::dense_limit) {
      DickeAmps za, oa;
      for (int e = 0; e <= N; ++e) {
        if (std::abs(zero(e)) > 1e-15) za[e] = zero(e);
        if (std::abs(one(e)) > 1e-15) oa[e] = one(e);
      }
      DenseQubitEvaluator ev(N, dicke_dense_vector(N, za), dicke_dense_vector(N, oa));
      rep = kl_check_full(ev, build_pauli_error_set(N), tol, "external");
    } else {
      SingleSpinEvaluator ev(HalfInt::from_twice(N), zero, one);
      rep = collective_conditions(ev, order >= 2 ? 5 : 3, lc.group, tol, "external");
    }
  }
  json out{{"manifest", mf.finish("kl-check", {{"pass", rep.pass}})},
           {"report", report_to_json(rep)}};
  std::cout << out.dump(2) << "\n";
  return rep.pass ? 0 : 2;
}

int run_search(const std::string& spec_path, std::uint64_t seed, int restarts) {
  Manifest mf;
  std::ifstream in(spec_path);
  if (!in) throw std::runtime_error("cannot open " + spec_path);
  json spec = json::parse(in);
  mf.params = {{"spec", spec}, {"seed", seed}, {"restarts", restarts}};

  GroupKind group = spec.value("group", "2O") == std::string("2T") ? GroupKind::tetrahedral_2T
                                                                   : GroupKind::octahedral_2O;
  IrrepLabel irrep = find_irrep(group, spec.value("irrep", "rho4"));

  std::vector<RVec> zeros, ones;
  std::vector<json> copy_info;
  SearchProblem problem;
  const json& sys = spec.at("system");
  if (sys.contains("N_qubits")) {
    int N = sys["N_qubits"].get<int>();
    HalfInt J = HalfInt::from_twice(N);
    CodeBasis cb = logical_codewords(J, irrep);
    for (int c = 0; c < cb.mult; ++c) {
      zeros.push_back(cb.zeros[c]);
      ones.push_back(cb.ones[c]);
      copy_info.push_back({{"J_twice", N}, {"copy", c}, {"jz_expect", cb.jz_expect[c]}});
    }
    int max_rank = spec.value("max_rank", spec.value("distance", 3) - 1);
    problem.constraints = collective_reduced_constraints(zeros, ones, J, group, max_rank);
  } else {
    int n = sys.at("n").get<int>();
    HalfInt j = HalfInt::from_twice(sys.at("j_twice").get<int>());
    const SymBasis& basis = shared_sym_basis(n, j);
    for (auto& h : spec.at("hosts")) {
      HalfInt J = HalfInt::from_twice(h.at(0).get<int>());
      int smult = h.at(1).get<int>();
      CodeBasis cb = logical_codewords(J, irrep);
      for (int c = 0; c < cb.mult; ++c) {
        zeros.push_back(basis.embed(J, smult, cb.zeros[c]));
        ones.push_back(basis.embed(J, smult, cb.ones[c]));
        copy_info.push_back({{"J_twice", J.twice}, {"su2_mult", smult}, {"copy", c},
                             {"jz_expect", cb.jz_expect[c]}});
      }
    }
    ErrorOrder order = spec.value("order", 2) == 1 ? ErrorOrder::first : ErrorOrder::second;
    problem.constraints = local_reduced_constraints(basis, zeros, ones, group, order);
  }
  problem.n_copies = static_cast<int>(zeros.size());
  problem.seed = seed;
  problem.restarts = restarts;
  problem.tolerance = spec.value("tolerance", kReoptimizedTol);

  OptimizeResult res = optimize(problem);
  json copt = json::array();
  for (int i = 0; i < res.c_opt.size(); ++i) copt.push_back(res.c_opt(i));
  json constraints = json::array();
  for (auto& f : problem.constraints)
    constraints.push_back({{"name", f.name}, {"diagonal_family", f.diagonal_family},
                           {"value", f.eval(res.c_opt)}});
  json out{{"manifest", mf.finish("search", {{"feasible", res.feasible}})},
           {"copies", copy_info},
           {"c_opt", copt},
           {"cost", res.cost_opt},
           {"closed_form", res.exact_closed_form},
           {"feasible", res.feasible},
           {"constraints", constraints}};
  std::cout << out.dump(2) << "\n";
  return res.feasible ? 0 : 2;
}

// Deterministic registry dump (no manifest, so the file is golden-comparable).
int run_registry(const std::string& out_path) {
  json codes = json::array();
  for (auto& id : registry_ids()) codes.push_back(code_to_json(published_code(id)));
  json out{{"version", kVersion}, {"codes", codes}};
  std::string s = out.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << s;
  } else {
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot write " + out_path);
    f << s;
  }
  return 0;
}

int run_scaling(const std::string& group_name_s, int dmax, std::uint64_t seed, int nmax,
                int restarts) {
  Manifest mf;
  mf.params = {{"group", group_name_s}, {"dmax", dmax}, {"seed", seed}, {"nmax", nmax},
               {"restarts", restarts}};
  GroupKind group =
      group_name_s == "2T" ? GroupKind::tetrahedral_2T : GroupKind::octahedral_2O;
  ScanOptions opts;
  opts.seed = seed;
  opts.n_max = nmax;
  opts.restarts = restarts;

  std::vector<ScalingRow> rows;
  bool all_resolved = true;
  for (int d = 3; d <= dmax; d += 2) {
    ScalingRow row = min_qubits_for_distance(d, group, opts);
    rows.push_back(row);
    if (row.N_min < 0) all_resolved = false;
  }
  json manifest = mf.finish("scaling", {{"resolved", all_resolved}});
  std::cout << "# manifest: " << manifest.dump() << "\n";
  std::cout << "d,group,N_min,copies,constraints,cost,certification\n";
  for (auto& r : rows) {
    std::printf("%d,%s,%d,%d,%d,%s,%s\n", r.d, group_name(r.group), r.N_min, r.copies,
                r.constraints, fmt17(r.cost).c_str(), r.certification.c_str());
    if (!r.note.empty()) std::cout << "# note d=" << r.d << ": " << r.note << "\n";
  }
  if (rows.size() >= 3 && all_resolved) {
    QuadraticFit fit = fit_quadratic(rows);
    std::printf("# fit N(d) = alpha d^2 + beta d + gamma: alpha=%s beta=%s gamma=%s r2=%s\n",
                fmt17(fit.alpha).c_str(), fmt17(fit.beta).c_str(), fmt17(fit.gamma).c_str(),
                fmt17(fit.r_squared).c_str());
  }
  return all_resolved ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"codes with binary octahedral/tetrahedral symmetry in spins and qubits"};
  app.require_subcommand(1);

  auto* dec = app.add_subcommand("decompose", "SU(2) content of a symmetric subspace");
  int dec_n = 3;
  std::string dec_j = "7/2";
  bool dec_json = false;
  dec->add_option("n", dec_n, "number of spins")->required();
  dec->add_option("j", dec_j, "spin per site, e.g. 7/2")->required();
  dec->add_flag("--json", dec_json, "machine-readable output");

  auto* cw = app.add_subcommand("codewords", "logical codeword basis for one (j, irrep)");
  std::string cw_j = "13/2", cw_group = "2O", cw_irrep = "rho4";
  cw->add_option("j", cw_j)->required();
  cw->add_option("--group", cw_group)->check(CLI::IsMember({"2O", "2T"}));
  cw->add_option("--irrep", cw_irrep);

  auto* code = app.add_subcommand("code", "registry access: get or verify a published code");
  std::string code_action, code_id, code_level = "full";
  bool code_published = false;
  code->add_option("action", code_action)->required()->check(CLI::IsMember({"get", "verify"}));
  code->add_option("id", code_id)->required();
  code->add_option("--level", code_level)->check(CLI::IsMember({"reduced", "full", "collective"}));
  code->add_flag("--published", code_published, "verify the published transcription instead");

  auto* kl = app.add_subcommand("kl-check", "full Knill-Laflamme check of a codeword file");
  std::string kl_input;
  int kl_order = 1;
  double kl_tol = 1e-8;
  kl->add_option("--input", kl_input)->required();
  kl->add_option("--order", kl_order)->check(CLI::Range(1, 2));
  kl->add_option("--tol", kl_tol);

  auto* se = app.add_subcommand("search", "cost-function search for mixing coefficients");
  std::string se_spec;
  std::uint64_t se_seed = 1;
  int se_restarts = 200;
  se->add_option("--spec", se_spec)->required();
  se->add_option("--seed", se_seed);
  se->add_option("--restarts", se_restarts);

  auto* rg = app.add_subcommand("registry", "dump every registry code as JSON");
  std::string rg_out;
  rg->add_option("--out", rg_out, "write to a file instead of stdout");

  auto* sc = app.add_subcommand("scaling", "minimum qubits vs distance scan");
  std::string sc_group = "2O";
  int sc_dmax = 5, sc_nmax = 201, sc_restarts = 200;
  std::uint64_t sc_seed = 1;
  sc->add_option("--group", sc_group)->check(CLI::IsMember({"2O", "2T"}));
  sc->add_option("--dmax", sc_dmax);
  sc->add_option("--seed", sc_seed);
  sc->add_option("--nmax", sc_nmax);
  sc->add_option("--restarts", sc_restarts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*dec) return run_decompose(dec_n, dec_j, dec_json);
    if (*cw) return run_codewords(cw_j, cw_group, cw_irrep);
    if (*code) return run_code(code_action, code_id, code_level, code_published);
    if (*kl) return run_kl_check(kl_input, kl_order, kl_tol);
    if (*se) return run_search(se_spec, se_seed, se_restarts);
    if (*rg) return run_registry(rg_out);
    if (*sc) return run_scaling(sc_group, sc_dmax, sc_seed, sc_nmax, sc_restarts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
