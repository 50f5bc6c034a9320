#include "msign/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <map>
#include <optional>
#include <regex>
#include <sstream>

#include "msign/apps.hpp"
#include "msign/blocks.hpp"
#include "msign/hull.hpp"
#include "msign/kernel.hpp"
#include "msign/matrix_file.hpp"
#include "msign/mixed.hpp"
#include "msign/numeric.hpp"
#include "msign/signstab.hpp"

namespace msign::cli {

using json = nlohmann::json;

namespace {

struct Settings {
  std::string command;
  std::string input;
  std::string dot;
  std::string matrix;
  std::string variant = "factored";
  std::uint64_t seed = 0;
  std::optional<std::size_t> samples;
  double scale = 1.0;
  std::size_t cap_sq = 12;
  std::size_t cap_lplus = 16;
  std::optional<std::size_t> n_sigma;
  bool json_out = false;
  bool full_check = false;
  bool irreducible = false;

  std::size_t sample_count(std::size_t fallback) const { return samples.value_or(fallback); }
};

struct Report {
  json statements = json::object();
  json certificates = json::object();
  json witnesses = json::object();
  json diagnostics = json::object();
  std::optional<std::string> dot;
};

// ---------------------------------------------------------------- encoding

json to_json(const QualMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::string r;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) r += ' ';
      r += to_char(m(i, j));
    }
    rows.push_back(r);
  }
  return rows;
}

template <typename T>
json numeric_json(const Matrix<T>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(std::vector<T>(m.row(i).begin(), m.row(i).end()));
  return rows;
}

json to_json(const LpCertificate& c) { return {{"point", c.point}, {"margin", c.margin}}; }

json to_json(const std::vector<std::pair<std::size_t, std::size_t>>& pos) {
  json out = json::array();
  for (auto [i, j] : pos) out.push_back({i, j});
  return out;
}

json to_json(const LplusResult& r) {
  json j = {{"holds", r.holds}, {"checked", r.checked}};
  if (r.failing_d) j["failing_d"] = *r.failing_d;
  return j;
}

void put_sign_verdict(Report& rep, const SignStabilityVerdict& v) {
  if (v.by_graph) rep.statements["graph"] = *v.by_graph;
  if (v.by_lp) rep.statements["lp"] = *v.by_lp;
  if (v.by_permutation) rep.statements["permutation"] = *v.by_permutation;
  if (v.lyapunov) rep.certificates["lyapunov"] = to_json(*v.lyapunov);
  if (v.permutation) rep.certificates["permutation"] = *v.permutation;
  if (v.bad_diagonal) rep.witnesses["bad_diagonal"] = *v.bad_diagonal;
  if (v.cycle) rep.witnesses["cycle"] = *v.cycle;
}

// ---------------------------------------------------------------- inputs

class Inputs {
 public:
  explicit Inputs(std::vector<NamedMatrix> blocks) : blocks_(std::move(blocks)) {
    if (blocks_.empty()) throw DomainError("input contains no matrix blocks");
  }

  const std::vector<NamedMatrix>& all() const { return blocks_; }

  const NamedMatrix* find(const std::string& name) const {
    for (const auto& b : blocks_)
      if (b.name == name) return &b;
    return nullptr;
  }

  const NamedMatrix& get(const std::string& name) const {
    if (const NamedMatrix* b = find(name)) return *b;
    throw DomainError("no block named '" + name + "'");
  }

  /// Block by preferred name, else by position.
  const NamedMatrix& pick(const std::string& name, std::size_t index) const {
    if (!name.empty())
      if (const NamedMatrix* b = find(name)) return *b;
    if (index < blocks_.size()) return blocks_[index];
    throw DomainError("expected a block named '" + name + "' or at least " +
                      std::to_string(index + 1) + " blocks");
  }

  json describe() const {
    json out = json::array();
    for (const auto& b : blocks_)
      out.push_back({{"name", b.name}, {"rows", b.value.rows()}, {"cols", b.value.cols()}});
    return out;
  }

 private:
  std::vector<NamedMatrix> blocks_;
};

QualMatrix as_qual(const NamedMatrix& b) {
  try {
    return to_qual(b.value);
  } catch (const DomainError& e) {
    throw DomainError("block '" + b.name + "': " + e.what());
  }
}

RealMatrix as_real(const NamedMatrix& b) {
  try {
    return to_real(b.value);
  } catch (const DomainError& e) {
    throw DomainError("block '" + b.name + "': " + e.what());
  }
}

bool all_signs(const MixedMatrix& m) {
  return std::all_of(m.values().begin(), m.values().end(), [](const MixedEntry& e) {
    return is_sign_entry(e) || std::get<double>(e) == 0.0;
  });
}

// ---------------------------------------------------------------- commands

using Handler = std::function<Verdict(const Settings&, const Inputs&, Report&)>;

Verdict cmd_check(const Settings& s, const Inputs& in, Report& rep) {
  const QualMatrix a = as_qual(in.pick(s.matrix, 0));
  const auto v = sign_stable(a, {s.full_check});
  put_sign_verdict(rep, v);
  if (!v.verdict) {
    const RealMatrix w = instability_witness(a);
    rep.witnesses["counterexample"] = {{"matrix", numeric_json(w)},
                                       {"spectral_abscissa", spectral_abscissa_metzler(w)}};
  }
  rep.dot = to_dot(digraph_of(a));
  return from_bool(v.verdict);
}

Verdict cmd_potential(const Settings& s, const Inputs& in, Report& rep) {
  const QualMatrix a = as_qual(in.pick(s.matrix, 0));
  const auto p = potentially_sign_stable(a);
  rep.statements["negative_diagonal"] = p.holds;
  if (p.witness) {
    rep.certificates["hurwitz_member"] = numeric_json(*p.witness);
    rep.certificates["epsilon"] = p.epsilon;
  }
  json viol = json::array();
  for (const auto& v : necessary_violations(a)) {
    json j = {{"kind", to_string(v.kind)}};
    if (v.kind == Violation::Kind::NonnegativeDiagonal) j["index"] = v.i;
    if (v.kind == Violation::Kind::MutualPositivePair) j["pair"] = {v.i, v.j};
    if (v.kind == Violation::Kind::Cycle) j["cycle"] = v.cycle;
    viol.push_back(j);
  }
  rep.witnesses["necessary_violations"] = viol;
  rep.dot = to_dot(digraph_of(a));
  return from_bool(p.holds);
}

Verdict cmd_schur(const Settings& s, const Inputs& in, Report& rep) {
  const QualMatrix a = as_qual(in.pick(s.matrix, 0));
  const auto v = schur_sign_stable(a, {s.full_check});
  put_sign_verdict(rep, v);
  rep.dot = to_dot(digraph_of(a));
  return from_bool(v.verdict);
}

Verdict cmd_inverse(const Settings& s, const Inputs& in, Report& rep) {
  const QualMatrix a = as_qual(in.pick(s.matrix, 0));
  const auto v = sign_stable(a, {s.full_check});
  put_sign_verdict(rep, v);
  if (v.verdict) rep.certificates["sign_inverse"] = to_json(sign_inverse(a));
  rep.dot = to_dot(digraph_of(a));
  return from_bool(v.verdict);
}

Verdict cmd_lplus(const Settings& s, const Inputs& in, Report& rep) {
  const QualMatrix r = as_qual(in.pick(s.matrix, 0));
  const auto members = sq_expand(r, s.cap_sq);
  rep.diagnostics["complexity_estimate"] = lplus_complexity_estimate(r.rows(), indefinite_count(r));
  rep.diagnostics["members"] = members.size();
  bool all = true;
  for (std::size_t k = 0; k < members.size(); ++k) {
    const auto res = is_lplus(members[k], s.cap_lplus);
    if (!res.holds) {
      all = false;
      rep.witnesses["failing_member"] = to_json(members[k]);
      rep.witnesses["failing_member_index"] = k;
      if (res.failing_d) rep.witnesses["failing_d"] = *res.failing_d;
      break;
    }
  }
  rep.statements["all_members_lplus"] = all;
  return from_bool(all);
}

Verdict cmd_kerb(const Settings& s, const Inputs& in, Report& rep) {
  const QualMatrix a = as_qual(in.pick("A", 0));
  const RealMatrix b = as_real(in.pick("B", 1));
  KerBOptions opt{s.cap_sq, s.cap_lplus, s.sample_count(100), s.seed, s.scale};
  const auto v = ker_b_sign_stable(a, b, opt);
  rep.certificates["y"] = to_json(v.y);
  rep.witnesses["indefinite_positions"] = to_json(v.indefinite_positions);
  json members = json::array();
  for (std::size_t k = 0; k < v.members.size(); ++k)
    members.push_back({{"member", to_json(v.members[k])}, {"lplus", to_json(v.member_results[k])}});
  rep.statements["members_lplus"] = members;
  rep.statements["status"] = to_string(v.status);
  rep.diagnostics["checked_count"] = v.checked_count;
  if (!v.certificates.empty()) {
    std::size_t valid = 0;
    for (const auto& c : v.certificates) valid += c.valid ? 1 : 0;
    rep.certificates["samples"] = v.certificates.size();
    rep.certificates["valid_samples"] = valid;
    rep.certificates["first"] = {{"matrix", numeric_json(v.certificates.front().a)},
                                 {"v", v.certificates.front().v},
                                 {"residual", v.certificates.front().residual}};
  }
  return v.status == KerBStatus::SufficientYes ? Verdict::Holds : Verdict::Unknown;
}

json multiplier_json(const MultiplierCertificate& c) {
  json ell = json::object();
  for (const auto& [k, x] : c.ell) ell[std::to_string(k.first + 1) + "_" + std::to_string(k.second + 1)] = x;
  return {{"v", c.v}, {"ell", ell}, {"margin", c.margin}, {"b_rows_strict", c.b_rows_strict}};
}

template <typename T, typename Convert>
BlockSystem<T> read_blocks(const Inputs& in, Convert convert) {
  static const std::regex diag_re("A([0-9]+)");
  static const std::regex coup_re("([BC])([0-9]+)_([0-9]+)");
  std::map<std::size_t, Matrix<T>> diag;
  std::map<std::pair<std::size_t, std::size_t>, std::pair<std::optional<Matrix<T>>, std::optional<Matrix<T>>>> coup;
  for (const auto& b : in.all()) {
    std::smatch m;
    if (std::regex_match(b.name, m, diag_re)) {
      diag[std::stoul(m[1]) - 1] = convert(b);
    } else if (std::regex_match(b.name, m, coup_re)) {
      const std::size_t i = std::stoul(m[2]), j = std::stoul(m[3]);
      if (i == 0 || j == 0) throw DomainError("block '" + b.name + "': indices are 1-based");
      auto& slot = coup[{i - 1, j - 1}];
      (m[1] == "B" ? slot.first : slot.second) = convert(b);
    } else {
      throw DomainError("block '" + b.name + "' is not of the form A<i>, B<i>_<j> or C<i>_<j>");
    }
  }
  BlockSystem<T> sys;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    auto it = diag.find(i);
    if (it == diag.end()) throw DomainError("missing diagonal block A" + std::to_string(i + 1));
    sys.diag.push_back(it->second);
  }
  for (auto& [k, bc] : coup) {
    const std::string tag = std::to_string(k.first + 1) + "_" + std::to_string(k.second + 1);
    if (!bc.first || !bc.second) throw DomainError("coupling " + tag + " needs both B" + tag + " and C" + tag);
    sys.couplings[k] = {*bc.first, *bc.second};
  }
  return sys;
}

Verdict cmd_block(const Settings& s, const Inputs& in, Report& rep) {
  const bool sign_mode = std::all_of(in.all().begin(), in.all().end(),
                                     [](const NamedMatrix& b) { return all_signs(b.value); });
  if (sign_mode) {
    BlockVariant variant;
    if (s.variant == "factored")
      variant = BlockVariant::FactoredCoupling;
    else if (s.variant == "product")
      variant = BlockVariant::ProductCoupling;
    else
      throw DomainError("unknown variant '" + s.variant + "' (expected factored or product)");
    const auto sys = read_blocks<Sign>(in, as_qual);
    const auto v = block_sign_stable(sys, variant);
    rep.statements["hypotheses_hold"] = v.hypotheses_hold;
    rep.statements["multiplier_lp"] = v.certificate.has_value();
    if (v.assembled_sign_stable) rep.statements["assembled_sign_stable"] = *v.assembled_sign_stable;
    if (v.certificate) rep.certificates["multipliers"] = multiplier_json(*v.certificate);
    rep.diagnostics["variant"] = s.variant;
    const QualMatrix full = assemble(sys);
    rep.certificates["assembled"] = to_json(full);
    rep.dot = to_dot(digraph_of(full));
    return v.verdict;
  }
  const auto sys = read_blocks<double>(in, as_real);
  const auto cert = block_hurwitz(sys);
  rep.statements["multiplier_lp"] = cert.has_value();
  const RealMatrix full = assemble(sys);
  if (s.full_check) rep.statements["assembled_hurwitz"] = hurwitz_metzler(full).verdict;
  if (cert) rep.certificates["multipliers"] = multiplier_json(*cert);
  rep.dot = to_dot(digraph_of(full));
  return from_bool(cert.has_value());
}

json lyapunov_samples(const std::vector<SwitchedCertificate>& certs) {
  std::size_t valid = 0;
  for (const auto& c : certs) valid += c.valid ? 1 : 0;
  json j = {{"samples", certs.size()}, {"valid_samples", valid}};
  if (!certs.empty()) j["first"] = {{"v", certs.front().v}, {"q", certs.front().q}};
  return j;
}

void put_hull(Report& rep, const HullVerdict& h) {
  rep.statements["summable"] = h.summability.summable;
  if (h.summability.conflict) rep.witnesses["summability_conflict"] = *h.summability.conflict;
  rep.statements["diagonals_negative"] = h.diagonals_negative;
  if (h.bad_diagonal) rep.witnesses["bad_diagonal"] = {h.bad_diagonal->first, h.bad_diagonal->second};
  if (h.sum) rep.certificates["sum"] = to_json(*h.sum);
  if (h.sum_verdict) {
    rep.statements["sum_sign_stable"] = h.sum_verdict->verdict;
    if (h.sum_verdict->cycle) rep.witnesses["cycle"] = *h.sum_verdict->cycle;
    if (h.sum_verdict->permutation) rep.certificates["permutation"] = *h.sum_verdict->permutation;
  }
  if (h.by_subsets) rep.statements["subsets"] = *h.by_subsets;
  if (h.failing_subset) rep.witnesses["failing_subset"] = *h.failing_subset;
  if (h.sum) rep.dot = to_dot(digraph_of(*h.sum));
}

std::vector<QualMatrix> all_qual(const Inputs& in) {
  std::vector<QualMatrix> f;
  for (const auto& b : in.all()) f.push_back(as_qual(b));
  return f;
}

Verdict cmd_hull(const Settings& s, const Inputs& in, Report& rep) {
  SamplingOptions opt{s.sample_count(20), s.seed, s.scale, s.full_check};
  const auto v = switched_structural(all_qual(in), opt);
  put_hull(rep, v.hull);
  if (v.hull.verdict == Verdict::Holds) rep.certificates["common_lyapunov"] = lyapunov_samples(v.certificates);
  return v.hull.verdict;
}

MixedSystem read_mixed(const Settings& s, const Inputs& in) {
  if (in.find("Asigma")) {
    const QualMatrix sig = as_qual(in.get("Asigma"));
    const RealMatrix phi = as_real(in.get("Aphi"));
    RealMatrix b = in.find("Bphi") ? as_real(in.get("Bphi")) : RealMatrix(phi.rows(), sig.rows());
    RealMatrix c = in.find("Cphi") ? as_real(in.get("Cphi")) : RealMatrix(sig.rows(), phi.rows());
    MixedSystem sys{sig, phi, b, c};
    validate(sys);
    return sys;
  }
  const NamedMatrix& m = in.pick(s.matrix, 0);
  return split_mixed(m.value, s.n_sigma.value_or(infer_sigma_size(m.value)));
}

Verdict cmd_mixed(const Settings& s, const Inputs& in, Report& rep) {
  const MixedSystem sys = read_mixed(s, in);
  const auto v = mixed_sign_stable(sys, {s.full_check});
  rep.statements["sigma_sign_stable"] = v.sigma_sign_stable;
  rep.statements["phi_hurwitz"] = v.phi_hurwitz;
  if (v.by_nilpotency) rep.statements["nilpotent_product"] = *v.by_nilpotency;
  if (v.by_bipartite) rep.statements["bipartite_acyclic"] = *v.by_bipartite;
  if (v.by_lp) rep.statements["lp"] = *v.by_lp;
  if (v.m_phi) rep.certificates["m_phi"] = numeric_json(*v.m_phi);
  if (v.m_sigma) rep.certificates["m_sigma"] = numeric_json(*v.m_sigma);
  if (v.product) rep.certificates["m_sigma_m_phi"] = numeric_json(*v.product);
  if (v.lp) rep.certificates["lp"] = to_json(*v.lp);
  if (v.rho) rep.diagnostics["rho"] = *v.rho;
  if (v.bipartite_cycle) rep.witnesses["bipartite_cycle"] = *v.bipartite_cycle;
  rep.diagnostics["n_sigma"] = sys.sigma.rows();
  rep.diagnostics["n_phi"] = sys.phi.rows();
  if (v.sigma_pattern && v.phi_pattern)
    rep.dot = to_dot(bipartite_graph(*v.sigma_pattern, *v.phi_pattern), sys.sigma.rows());
  else
    rep.dot = to_dot(digraph_of(assemble(sys)));
  if (v.sigma_sign_stable && v.phi_hurwitz && !v.verdict) {
    const RealMatrix w = mixed_instability_witness(sys);
    rep.witnesses["counterexample"] = {{"matrix", numeric_json(w)},
                                       {"spectral_abscissa", spectral_abscissa_metzler(w)}};
  }
  return from_bool(v.verdict);
}

Verdict cmd_witness(const Settings& s, const Inputs& in, Report& rep) {
  const QualMatrix a = as_qual(in.pick(s.matrix, 0));
  const auto v = sign_stable(a, {s.full_check});
  put_sign_verdict(rep, v);
  if (!v.verdict) {
    const RealMatrix w = instability_witness(a);
    rep.witnesses["counterexample"] = {{"matrix", numeric_json(w)},
                                       {"spectral_abscissa", spectral_abscissa_metzler(w)}};
  }
  return from_bool(v.verdict);
}

Verdict cmd_sample(const Settings& s, const Inputs& in, Report& rep) {
  const QualMatrix a = as_qual(in.pick(s.matrix, 0));
  json draws = json::array();
  const std::size_t n = s.sample_count(1);
  for (std::size_t k = 0; k < n; ++k) draws.push_back(numeric_json(sample_qual(a, derive_seed(s.seed, k), s.scale)));
  rep.certificates["samples"] = draws;
  return Verdict::Holds;
}

Verdict cmd_delay_ct(const Settings& s, const Inputs& in, Report& rep) {
  const auto f = all_qual(in);
  const auto v = delay_ct_structural(f.front(), {f.begin() + 1, f.end()}, {s.full_check});
  rep.statements["summable"] = v.summability.summable;
  if (v.summability.conflict) rep.witnesses["summability_conflict"] = *v.summability.conflict;
  if (v.sum) rep.certificates["sum"] = to_json(*v.sum);
  if (v.sum_verdict) {
    put_sign_verdict(rep, *v.sum_verdict);
    const auto lyap = lp_strict_feasible(transpose(to_real(unit_sign(*v.sum))));
    if (lyap) rep.certificates["lyapunov"] = to_json(*lyap);
    rep.dot = to_dot(digraph_of(*v.sum));
  }
  return v.verdict;
}

Verdict cmd_delay_dt(const Settings& s, const Inputs& in, Report& rep) {
  const auto v = delay_dt_structural(all_qual(in), {s.full_check});
  if (v.sum) rep.certificates["sum"] = to_json(*v.sum);
  if (v.sum_verdict) put_sign_verdict(rep, *v.sum_verdict);
  if (v.sum) rep.dot = to_dot(digraph_of(*v.sum));
  return v.verdict;
}

Verdict cmd_switched(const Settings& s, const Inputs& in, Report& rep) { return cmd_hull(s, in, rep); }

Verdict cmd_impulsive(const Settings& s, const Inputs& in, Report& rep) {
  const QualMatrix ma = as_qual(in.pick("MA", 0));
  const QualMatrix mj = as_qual(in.pick("MJ", 1));
  const auto v = impulsive_structural(ma, mj, {s.sample_count(20), s.seed, s.scale, s.full_check});
  rep.statements["flow_diagonal_negative"] = v.flow_diagonal_negative;
  rep.statements["jump_diagonal_zero"] = v.jump_diagonal_zero;
  if (v.sum_verdict) put_sign_verdict(rep, *v.sum_verdict);
  if (!v.certificates.empty()) {
    std::size_t valid = 0;
    for (const auto& c : v.certificates) valid += c.valid ? 1 : 0;
    rep.certificates["lambda"] = {{"samples", v.certificates.size()},
                                  {"valid_samples", valid},
                                  {"first", v.certificates.front().lambda}};
  }
  return v.verdict;
}

void put_kernel(Report& rep, const StructuralKernelVerdict& v) {
  rep.statements["sign_stable"] = v.sign_stable;
  if (v.y) rep.certificates["y"] = to_json(*v.y);
  if (!v.indefinite_positions.empty()) rep.witnesses["indefinite_positions"] = to_json(v.indefinite_positions);
  if (v.lplus) {
    rep.statements["lplus"] = v.lplus->holds;
    if (v.lplus->failing_d) rep.witnesses["failing_d"] = *v.lplus->failing_d;
  }
  if (v.irreducible_declared) rep.diagnostics["irreducible_declared"] = *v.irreducible_declared;
  if (!v.certificates.empty()) {
    std::size_t valid = 0;
    double eps = std::numeric_limits<double>::infinity();
    for (const auto& c : v.certificates) {
      valid += c.valid ? 1 : 0;
      eps = std::min(eps, c.epsilon);
    }
    rep.certificates["kernel_lyapunov"] = {{"samples", v.certificates.size()},
                                           {"valid_samples", valid},
                                           {"min_epsilon", eps},
                                           {"first", v.certificates.front().v}};
  }
}

IntMatrix as_int(const NamedMatrix& b) {
  const RealMatrix r = as_real(b);
  return r.map([&](double x) {
    if (x != std::round(x)) throw DomainError("block '" + b.name + "' must contain integers");
    return static_cast<std::int64_t>(x);
  });
}

Verdict cmd_nonlinear(const Settings& s, const Inputs& in, Report& rep) {
  const QualMatrix m = as_qual(in.pick("M", 0));
  const IntMatrix b = in.all().size() > 1 || in.find("B") ? as_int(in.pick("B", 1)) : IntMatrix(m.rows(), 0);
  const auto v = nonlinear_invariance_structural(m, b, {s.sample_count(20), s.seed, s.scale, s.full_check});
  put_kernel(rep, v);
  return v.verdict;
}

Verdict cmd_ergodic(const Settings& s, const Inputs& in, Report& rep) {
  const QualMatrix z = as_qual(in.pick("Z", 0));
  const IntMatrix sb = in.all().size() > 1 || in.find("Sb") ? as_int(in.pick("Sb", 1)) : IntMatrix(z.rows(), 0);
  const auto v = ergodicity_structural({z, sb}, s.irreducible, {s.sample_count(20), s.seed, s.scale, s.full_check});
  put_kernel(rep, v);
  return v.verdict;
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::Holds: return kHolds;
    case Verdict::Fails: return kFails;
    case Verdict::Unknown: return kUnknown;
  }
  return kUnknown;
}

void print_text(std::ostream& out, const json& report) {
  out << report["command"].get<std::string>() << ": " << report["verdict"].get<std::string>() << '\n';
  for (const char* section : {"statements", "certificates", "witnesses", "diagnostics"})
    for (const auto& [k, v] : report[section].items()) out << "  " << section << '.' << k << " = " << v.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Settings s;
  CLI::App app{"Sign-stability analysis of Metzler sign-matrices", "metzler-sign"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--input", s.input, "matrix file")->required();
  app.add_flag("--json", s.json_out, "print a JSON report");
  app.add_option("--dot", s.dot, "write the relevant directed graph in DOT format");
  app.add_option("--seed", s.seed, "base seed for sampling");
  app.add_option("--samples", s.samples, "number of sampled realizations");
  app.add_option("--scale", s.scale, "magnitude spread of sampled realizations")->check(CLI::PositiveNumber);
  app.add_option("--cap-sq", s.cap_sq, "maximum number of indefinite entries to expand");
  app.add_option("--cap-lplus", s.cap_lplus, "maximum row count for the L+ enumeration");
  app.add_flag("--full-check", s.full_check, "evaluate every equivalent statement and require agreement");
  app.add_option("--matrix", s.matrix, "block to analyse when the command takes one matrix");
  app.add_option("--variant", s.variant, "block multiplier variant: factored or product");
  app.add_option("--n-sigma", s.n_sigma, "size of the sign block of a mixed matrix");
  app.add_flag("--irreducible", s.irreducible, "declare the reaction network state space irreducible");

  std::map<std::string, Handler> handlers = {
      {"check", cmd_check},   {"potential", cmd_potential}, {"schur", cmd_schur},
      {"inverse", cmd_inverse}, {"lplus", cmd_lplus},     {"kerb", cmd_kerb},
      {"block", cmd_block},   {"hull", cmd_hull},           {"mixed", cmd_mixed},
      {"witness", cmd_witness}, {"sample", cmd_sample},
  };
  const std::map<std::string, std::string> help = {
      {"check", "sign-stability of a Metzler sign-matrix"},
      {"potential", "potential sign-stability and necessary conditions"},
      {"schur", "Schur sign-stability of a nonnegative sign-matrix"},
      {"inverse", "sign pattern of the inverse"},
      {"lplus", "L+ test, expanding indefinite entries"},
      {"kerb", "Ker+(B)-sign-stability (blocks A and B)"},
      {"block", "block matrices (blocks A<i>, B<i>_<j>, C<i>_<j>)"},
      {"hull", "convex hull of a family and common Lyapunov functions"},
      {"mixed", "mixed sign/real matrices"},
      {"witness", "unstable member of the qualitative class"},
      {"sample", "draw members of the qualitative class"},
  };
  for (const auto& [name, text] : help) {
    app.add_subcommand(name, text)->fallthrough()->callback([&s, name = name] { s.command = name; });
  }
  const std::map<std::string, Handler> app_handlers = {
      {"delay-ct", cmd_delay_ct},   {"delay-dt", cmd_delay_dt},   {"switched", cmd_switched},
      {"impulsive", cmd_impulsive}, {"nonlinear", cmd_nonlinear}, {"ergodic", cmd_ergodic},
  };
  CLI::App* apps = app.add_subcommand("app", "application wrappers")->fallthrough();
  apps->require_subcommand(1);
  for (const auto& [name, h] : app_handlers) {
    handlers["app " + name] = h;
    apps->add_subcommand(name)->fallthrough()->callback([&s, name = name] { s.command = "app " + name; });
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kHolds : kUsage;
  }

  std::ifstream file(s.input, std::ios::binary);
  if (!file) {
    err << "error: cannot read '" << s.input << "'\n";
    return kNoInput;
  }
  std::stringstream buf;
  buf << file.rdbuf();

  try {
    const Inputs in(parse_matrix_file(buf.str()));
    Report rep;
    const Verdict verdict = handlers.at(s.command)(s, in, rep);

    rep.diagnostics["seed"] = s.seed;
    rep.diagnostics["scale"] = s.scale;
    if (s.samples) rep.diagnostics["samples"] = *s.samples;
    rep.diagnostics["cap_sq"] = s.cap_sq;
    rep.diagnostics["cap_lplus"] = s.cap_lplus;
    rep.diagnostics["full_check"] = s.full_check;
    rep.diagnostics["lp_pivot_tolerance"] = 1e-11;
    rep.diagnostics["inverse_pivot_tolerance"] = 1e-12;

    json report = {{"command", s.command},
                   {"inputs", in.describe()},
                   {"verdict", to_string(verdict)},
                   {"statements", rep.statements},
                   {"certificates", rep.certificates},
                   {"witnesses", rep.witnesses},
                   {"diagnostics", rep.diagnostics},
                   {"version", MSIGN_VERSION}};

    if (!s.dot.empty()) {
      if (!rep.dot) throw DomainError("command '" + s.command + "' has no graph to export");
      std::ofstream dot(s.dot, std::ios::binary);
      if (!(dot << *rep.dot)) {
        err << "error: cannot write '" << s.dot << "'\n";
        return kCantCreate;
      }
    }
    if (s.json_out)
      out << report.dump(2) << '\n';
    else
      print_text(out, report);
    return exit_code(verdict);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kDataError;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kInternal;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const InconsistencyError& e) {
    err << "internal inconsistency: " << e.what() << '\n';
    return kInternal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace msign::cli
