// Copyright 2026 The spinpath Authors
// SPDX-License-Identifier: Apache-2.0

#include "spinpath_tools/runner.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <functional>
#include <iomanip>
#include <set>
#include <sstream>

#include <spinpath/spinpath.hpp>

namespace spinpath::tools {
namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Parameter access

class Params {
 public:
  Params(const std::map<std::string, std::string>& raw, std::set<std::string> allowed) : raw_(raw) {
    for (const auto& [k, v] : raw) {
      if (!allowed.count(k)) throw ValidationError("unknown parameter '" + k + "'");
    }
  }

  bool has(const std::string& k) const { return raw_.count(k) > 0; }

  std::string str(const std::string& k, const std::optional<std::string>& def = std::nullopt) const {
    auto it = raw_.find(k);
    if (it != raw_.end()) return it->second;
    if (def) return *def;
    throw ValidationError("missing required parameter '" + k + "'");
  }

  double real(const std::string& k, std::optional<double> def = std::nullopt) const {
    if (!has(k)) {
      if (def) return *def;
      throw ValidationError("missing required parameter '" + k + "'");
    }
    return parse_real(str(k), k);
  }

  long long integer(const std::string& k, std::optional<long long> def = std::nullopt) const {
    if (!has(k)) {
      if (def) return *def;
      throw ValidationError("missing required parameter '" + k + "'");
    }
    const std::string s = str(k);
    char* end = nullptr;
    const long long v = std::strtoll(s.c_str(), &end, 10);
    if (s.empty() || end != s.c_str() + s.size()) throw ValidationError("parameter '" + k + "' is not an integer");
    return v;
  }

  std::uint64_t seed(const std::string& k, std::uint64_t def) const {
    if (!has(k)) return def;
    const std::string s = str(k);
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
    if (s.empty() || s[0] == '-' || end != s.c_str() + s.size()) {
      throw ValidationError("parameter '" + k + "' is not an unsigned integer");
    }
    return v;
  }

  cplx complex(const std::string& k, std::optional<cplx> def = std::nullopt) const {
    if (!has(k)) {
      if (def) return *def;
      throw ValidationError("missing required parameter '" + k + "'");
    }
    return parse_complex(str(k));
  }

  std::vector<double> list(const std::string& k, const std::optional<std::string>& def = std::nullopt) const {
    const std::string s = str(k, def);
    std::vector<double> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) out.push_back(parse_real(item, k));
    if (out.empty()) throw ValidationError("parameter '" + k + "' is an empty list");
    return out;
  }

  bool flag(const std::string& k, bool def) const {
    if (!has(k)) return def;
    const std::string s = str(k);
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    throw ValidationError("parameter '" + k + "' must be true or false");
  }

 private:
  static double parse_real(const std::string& s, const std::string& k) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
      throw ValidationError("parameter '" + k + "' is not a finite number: '" + s + "'");
    }
    return v;
  }

  const std::map<std::string, std::string>& raw_;
};

json cjson(cplx c) { return {{"re", c.real()}, {"im", c.imag()}}; }

std::string cstr(cplx c) {
  std::ostringstream os;
  os << std::setprecision(6) << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i";
  return os.str();
}

json estimate_json(const KernelEstimate& e) {
  return {{"value", cjson(e.value)},
          {"std_error", e.std_error},
          {"std_error_re", e.std_error_re},
          {"std_error_im", e.std_error_im},
          {"n_paths", e.n_paths},
          {"m_steps", e.m_steps},
          {"n_batches", e.n_batches},
          {"nu", e.nu},
          {"t", e.t},
          {"horizon", e.horizon},
          {"z", cjson(e.z)},
          {"zp", cjson(e.zp)},
          {"j", e.j},
          {"symbol_name", e.symbol_name},
          {"seed", e.seed},
          {"form", to_string(e.form)},
          {"variant", to_string(e.variant)},
          {"inconclusive", e.inconclusive},
          {"wall_time", e.wall_time}};
}

struct Result {
  json results;
  std::string summary;
  int exit_code = kOk;
  std::string csv;                 // sweep only
  std::vector<char> binary_dump;   // pde-spectrum only
  std::string dump_path;
};

// ---------------------------------------------------------------------------
// Commands

Result cmd_symbols_verify(const Params& p) {
  const auto js = p.list("j", "0.5,1,1.5,2");
  Result r;
  double worst = 0.0;
  json per_j = json::array();
  for (double j : js) {
    const SpinSystem s = build_spin_system(j);
    const std::map<std::string, CMatrix> direct = {
        {"J+", s.j_plus},
        {"J-", s.j_minus},
        {"J3", s.j3},
        {"J+J-", s.j_plus * s.j_minus},
        {"J-J+", s.j_minus * s.j_plus},
        {"J3^2", s.j3 * s.j3},
    };
    json entry = {{"j", j}};
    json errs;
    for (const auto& [name, M] : direct) {
      const double e = (reconstruct_operator(table_symbol(name, j), j) - M).cwiseAbs().maxCoeff();
      errs[name] = e;
      worst = std::max(worst, e);
    }
    const double unity = unity_resolution_residual(j);
    worst = std::max(worst, unity);
    entry["max_abs_error"] = errs;
    entry["identity_residual"] = unity;
    per_j.push_back(entry);
  }
  r.results = {{"per_j", per_j}, {"max_error", worst}, {"tolerance", 1e-10}, {"replay_tolerance", 1e-9}};
  r.exit_code = worst <= 1e-10 ? kOk : kNumerical;
  std::ostringstream os;
  os << "symbols-verify: max entrywise error " << std::scientific << std::setprecision(2) << worst
     << (r.exit_code == kOk ? " (ok)" : " (exceeds 1e-10)");
  r.summary = os.str();
  return r;
}

HamiltonianSpec hamiltonian_from(const Params& p, double j) {
  if (p.has("hamiltonian") && p.has("symbol")) throw ValidationError("give either --hamiltonian or --symbol");
  if (p.has("hamiltonian")) return HamiltonianSpec::from_monomials(parse_hamiltonian(p.str("hamiltonian")), j);
  return HamiltonianSpec::from_symbol(parse_symbol(p.str("symbol"), j), j);
}

Result cmd_oracle(const Params& p) {
  const double j = p.real("j");
  const double t = p.real("t");
  const cplx z = p.complex("z", 0.0), zp = p.complex("zp", 0.0);
  const std::string mode = p.str("mode", "semigroup");
  const HamiltonianSpec H = hamiltonian_from(p, j);
  two_j_of(j);
  const CMatrix M = H.realize();
  cplx v;
  if (mode == "semigroup") {
    v = exact_kernel(M, t, z, zp);
  } else if (mode == "unitary") {
    v = exact_kernel_unitary(M, t, z, zp);
  } else {
    throw ValidationError("mode must be semigroup or unitary");
  }
  Result r;
  r.results = {{"value", cjson(v)},
               {"mode", mode},
               {"hermitian", is_hermitian(M)},
               {"dim", M.rows()},
               {"replay_tolerance", 1e-12}};
  r.summary = "oracle: <z|" + std::string(mode == "unitary" ? "exp(-itH)" : "exp(-tH)") + "|z'> = " + cstr(v);
  return r;
}

const std::set<std::string> kMcKeys = {"j", "symbol", "t", "z", "zp", "nu", "n-paths", "m-steps", "seed", "form"};

std::set<std::string> with(std::set<std::string> base, std::initializer_list<std::string> extra) {
  base.insert(extra);
  return base;
}

Result cmd_mc(const Params& p, const McOptions& mc) {
  const double j = p.real("j");
  const SymbolFn h = parse_symbol(p.str("symbol", "0"), j);
  const double t = p.real("t");
  const double nu = p.real("nu");
  const cplx z = p.complex("z", 0.0), zp = p.complex("zp", 0.0);
  const long long n = p.integer("n-paths", 100000);
  const int m = static_cast<int>(p.integer("m-steps", scaled_m_steps(nu, t)));
  const std::uint64_t seed = p.seed("seed", 0);
  const WeightForm form = parse_weight_form(p.str("form", "strat"));
  const KernelEstimate e = estimate_kernel(h, j, t, z, zp, nu, n, m, seed, form, mc);
  Result r;
  r.results = {{"estimate", estimate_json(e)}};
  std::ostringstream os;
  os << "mc: " << cstr(e.value) << " +- " << std::setprecision(3) << e.std_error << " (" << n << " paths, " << m
     << " steps)";
  if (is_half_integer(j)) {
    const cplx ex = exact_reference(h, j, t, z, zp, false);
    r.results["exact"] = cjson(ex);
    r.results["distance"] = std::abs(e.value - ex);
    os << "; nu->inf reference " << cstr(ex);
  }
  r.summary = os.str();
  return r;
}

std::string csv_number(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

Result cmd_sweep(const Params& p, const McOptions& mc) {
  const double j = p.real("j");
  const SymbolFn h = parse_symbol(p.str("symbol", "0"), j);
  const double t = p.real("t");
  const cplx z = p.complex("z", 0.0), zp = p.complex("zp", 0.0);
  const auto nus = p.list("nus");
  const long long n = p.integer("n-paths", 100000);
  const int m = static_cast<int>(p.integer("m-steps", 0));
  SweepOptions opt;
  opt.form = parse_weight_form(p.str("form", "strat"));
  opt.stop_on_variance = p.flag("stop-on-variance", true);
  opt.mc = mc;
  const SweepResult s = nu_sweep(h, j, t, z, zp, nus, n, m, p.seed("seed", 0), opt);
  Result r;
  json est = json::array();
  std::ostringstream csv;
  csv << "nu,re,im,stderr,n_paths,m_steps,seed,exact_re,exact_im\n";
  for (const auto& e : s.estimates) {
    est.push_back(estimate_json(e));
    csv << csv_number(e.nu) << ',' << csv_number(e.value.real()) << ',' << csv_number(e.value.imag()) << ','
        << csv_number(e.std_error) << ',' << e.n_paths << ',' << e.m_steps << ',' << e.seed << ','
        << csv_number(s.exact.real()) << ',' << csv_number(s.exact.imag()) << '\n';
  }
  r.csv = csv.str();
  r.results = {{"estimates", est},
               {"exact", cjson(s.exact)},
               {"distances", s.distances},
               {"variance_stop", s.variance_stop},
               {"variance_stop_nu", s.variance_stop_nu}};
  std::ostringstream os;
  os << "sweep: " << s.estimates.size() << " estimates, final distance " << std::setprecision(3)
     << s.distances.back() << " to " << cstr(s.exact);
  if (s.variance_stop) os << "; std_error exceeded 10% of |exact| at nu = " << s.variance_stop_nu;
  r.summary = os.str();
  return r;
}

Result cmd_long_time(const Params& p, const McOptions& mc) {
  const double j = p.real("j");
  const SymbolFn h = parse_symbol(p.str("symbol", "0"), j);
  const double t = p.real("t");
  const double nu = p.real("nu");
  const cplx z = p.complex("z", 0.0), zp = p.complex("zp", 0.0);
  const auto us = p.list("u");
  const long long n = p.integer("n-paths", 100000);
  const std::uint64_t seed = p.seed("seed", 0);
  const WeightForm form = parse_weight_form(p.str("form", "strat"));
  const bool have_exact = is_half_integer(j) && t >= 0.0;
  const cplx ex = have_exact ? exact_reference(h, j, t, z, zp, false) : cplx(0.0);
  Result r;
  json est = json::array();
  std::vector<double> dist;
  for (double u : us) {
    const int m = static_cast<int>(p.integer("m-steps", scaled_m_steps(nu, u)));
    const KernelEstimate e = long_time_estimate(h, j, t, z, zp, nu, u, n, m, seed, form, mc);
    est.push_back(estimate_json(e));
    if (have_exact) dist.push_back(std::abs(e.value - ex));
  }
  r.results = {{"estimates", est}};
  std::ostringstream os;
  os << "long-time: " << us.size() << " horizons";
  if (have_exact) {
    r.results["exact"] = cjson(ex);
    r.results["distances"] = dist;
    os << ", final distance " << std::setprecision(3) << dist.back() << " to " << cstr(ex);
  }
  r.summary = os.str();
  return r;
}

Result cmd_unitary(const Params& p, const McOptions& mc) {
  const double j = p.real("j");
  const SymbolFn h = parse_symbol(p.str("symbol", "0"), j);
  const double t = p.real("t");
  const cplx z = p.complex("z", 0.0), zp = p.complex("zp", 0.0);
  if (p.has("nu") == p.has("nus")) throw ValidationError("give exactly one of --nu and --nus");
  const auto nus = p.has("nu") ? std::vector<double>{p.real("nu")} : p.list("nus");
  const long long n = p.integer("n-paths", 100000);
  const int m = static_cast<int>(p.integer("m-steps", 0));
  SweepOptions opt;
  opt.form = parse_weight_form(p.str("form", "strat"));
  opt.unitary = true;
  opt.stop_on_variance = false;
  opt.mc = mc;
  const SweepResult s = nu_sweep(h, j, t, z, zp, nus, n, m, p.seed("seed", 0), opt);
  Result r;
  json est = json::array();
  bool inconclusive = false;
  for (const auto& e : s.estimates) {
    est.push_back(estimate_json(e));
    inconclusive = inconclusive || e.inconclusive;
  }
  r.results = {{"estimates", est}, {"exact", cjson(s.exact)}, {"distances", s.distances},
               {"inconclusive", inconclusive}};
  std::ostringstream os;
  os << "unitary: final distance " << std::setprecision(3) << s.distances.back() << " to " << cstr(s.exact);
  if (inconclusive) {
    os << "; variance flag raised (std_error > |value|), result inconclusive";
    r.exit_code = kNumerical;
  }
  r.summary = os.str();
  return r;
}

Result cmd_pde_spectrum(const Params& p) {
  const double j = p.real("j");
  const double L = p.real("L", 12.0);
  const int n = static_cast<int>(p.integer("n", 192));
  const int order = static_cast<int>(p.integer("order", 3));
  const int k = static_cast<int>(p.integer("k", default_spectrum_count(j)));
  SpectrumOptions so;
  if (p.has("cluster-floor")) so.cluster_floor = p.real("cluster-floor");
  const MagneticOperator op = assemble_R(j, L, n, order);
  const GroundSpaceReport rep = low_spectrum(op, k, so);
  Result r;
  const int ac = ac_dimension_formula(j);
  r.results = {{"eigenvalues", rep.eigenvalues},
               {"residuals", rep.residuals},
               {"zero_cluster_size", rep.zero_cluster_size},
               {"cluster_floor", rep.cluster_floor},
               {"analytic_overlap", rep.analytic_overlap},
               {"ac_dimension", ac},
               {"grid", {{"L", L}, {"n", n}, {"delta", op.grid.delta()}, {"order", order}}},
               {"iterations", rep.iterations},
               {"replay_tolerance", 1e-6}};
  if (p.has("dump")) {
    const std::int64_t rows = rep.eigenvectors.rows(), cols = rep.eigenvectors.cols();
    std::vector<char> buf(16 + static_cast<std::size_t>(rows * cols) * 16);
    auto put64 = [&](std::size_t off, std::uint64_t v) {
      for (int b = 0; b < 8; ++b) buf[off + b] = static_cast<char>((v >> (8 * b)) & 0xff);
    };
    put64(0, static_cast<std::uint64_t>(rows));
    put64(8, static_cast<std::uint64_t>(cols));
    std::size_t off = 16;
    for (std::int64_t i = 0; i < rows; ++i) {
      for (std::int64_t c = 0; c < cols; ++c) {
        const double parts[2] = {rep.eigenvectors(i, c).real(), rep.eigenvectors(i, c).imag()};
        std::memcpy(buf.data() + off, parts, 16);
        off += 16;
      }
    }
    r.binary_dump = std::move(buf);
    r.dump_path = p.str("dump");
  }
  std::ostringstream os;
  os << "pde-spectrum: zero_cluster_size = " << rep.zero_cluster_size << " (Aharonov-Casher count " << ac
     << "), analytic overlap " << std::setprecision(4) << rep.analytic_overlap;
  r.summary = os.str();
  return r;
}

Result cmd_pde_kernel(const Params& p) {
  const double j = p.real("j");
  const SymbolFn h = parse_symbol(p.str("symbol", "0"), j);
  PropagationOptions po;
  po.order = static_cast<int>(p.integer("order", 3));
  const PropagationReport rep =
      propagate_kernel(h, j, p.real("nu"), p.real("t"), p.complex("z", 0.0), p.complex("zp", 0.0),
                       p.real("L", 10.0), static_cast<int>(p.integer("n", 321)),
                       static_cast<int>(p.integer("n-time", 16)), po);
  Result r;
  r.results = {{"value", cjson(rep.value)},
               {"value_refined", cjson(rep.value_refined)},
               {"richardson_change", rep.richardson_change},
               {"richardson_ok", rep.richardson_ok},
               {"boundary_fraction", rep.boundary_fraction},
               {"n_time", rep.n_time},
               {"replay_tolerance", 1e-9}};
  std::ostringstream os;
  os << "pde-kernel: " << cstr(rep.value) << " (time-step doubling change " << std::setprecision(2)
     << rep.richardson_change << ")";
  if (!rep.richardson_ok) {
    os << "; Richardson check failed";
    r.exit_code = kNumerical;
  }
  r.summary = os.str();
  return r;
}

Result cmd_contract(const Params& p) {
  const auto terms = parse_hamiltonian(p.str("hamiltonian", "1*J3"));
  const auto js = p.list("js", "5,10,20,40");
  const double t = p.real("t");
  const cplx z = p.complex("z", 0.0), zp = p.complex("zp", 0.0);
  const SymbolFn limit = radial_polynomial_symbol(p.list("limit", "-1,1"));
  const int n_max = static_cast<int>(p.integer("n-max", 40));
  const cplx fock = fock_oracle_kernel(limit, n_max, t, z, zp);
  json lhs = json::array();
  std::vector<double> dist;
  for (double j : js) {
    const cplx v = contraction_kernel_lhs(terms, j, t, z, zp);
    lhs.push_back(cjson(v));
    dist.push_back(std::abs(v - fock));
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < dist.size(); ++i) decreasing = decreasing && dist[i] < dist[i - 1];
  Result r;
  r.results = {{"js", js},         {"lhs", lhs},         {"fock", cjson(fock)},
               {"distances", dist}, {"decreasing", decreasing}, {"replay_tolerance", 1e-10}};
  std::ostringstream os;
  os << "contract: Fock value " << cstr(fock) << ", distances";
  for (double d : dist) os << ' ' << std::scientific << std::setprecision(2) << d;
  os << (decreasing ? " (decreasing)" : " (not decreasing)");
  r.summary = os.str();
  return r;
}

Result cmd_quantize(const Params& p) {
  const double j = p.real("j");
  const SymbolFn h = parse_symbol(p.str("symbol", "1"), j);
  const QuantizationResult q = quantize_general_j(j, h);
  const CMatrix one = quantize_general_j(j, constant_symbol(1.0)).H_psi;
  json re = json::array(), im = json::array();
  for (int a = 0; a < q.H_psi.rows(); ++a) {
    std::vector<double> rr, ii;
    for (int b = 0; b < q.H_psi.cols(); ++b) {
      rr.push_back(q.H_psi(a, b).real());
      ii.push_back(q.H_psi(a, b).imag());
    }
    re.push_back(rr);
    im.push_back(ii);
  }
  const double unity = (one - CMatrix::Identity(one.rows(), one.cols())).cwiseAbs().maxCoeff();
  const double herm = (q.H_psi - q.H_psi.adjoint()).cwiseAbs().maxCoeff();
  Result r;
  r.results = {{"j_input", q.j_input},
               {"j_rounded", q.j_rounded},
               {"dim", q.H_psi.rows()},
               {"H_re", re},
               {"H_im", im},
               {"unity_residual", unity},
               {"hermiticity_residual", herm},
               {"ac_dimension", ac_dimension_formula(j)},
               {"replay_tolerance", 1e-10}};
  std::ostringstream os;
  os << "quantize: dim " << q.H_psi.rows() << ", unity residual " << std::scientific << std::setprecision(2)
     << unity << ", Aharonov-Casher count " << ac_dimension_formula(j);
  r.summary = os.str();
  return r;
}

Result dispatch(const RunConfig& cfg, const McOptions& mc) {
  const auto& c = cfg.command;
  const auto& raw = cfg.params;
  if (c == "symbols-verify") return cmd_symbols_verify(Params(raw, {"j"}));
  if (c == "oracle") return cmd_oracle(Params(raw, {"j", "t", "z", "zp", "hamiltonian", "symbol", "mode"}));
  if (c == "mc") return cmd_mc(Params(raw, kMcKeys), mc);
  if (c == "sweep") {
    auto keys = kMcKeys;
    keys.erase("nu");
    keys.insert({"nus", "stop-on-variance"});
    return cmd_sweep(Params(raw, keys), mc);
  }
  if (c == "long-time") return cmd_long_time(Params(raw, with(kMcKeys, {"u"})), mc);
  if (c == "unitary") return cmd_unitary(Params(raw, with(kMcKeys, {"nus"})), mc);
  if (c == "pde-spectrum") return cmd_pde_spectrum(Params(raw, {"j", "L", "n", "k", "order", "cluster-floor", "dump"}));
  if (c == "pde-kernel") {
    return cmd_pde_kernel(Params(raw, {"j", "symbol", "nu", "t", "z", "zp", "L", "n", "n-time", "order"}));
  }
  if (c == "contract") return cmd_contract(Params(raw, {"hamiltonian", "js", "t", "z", "zp", "limit", "n-max"}));
  if (c == "quantize") return cmd_quantize(Params(raw, {"j", "symbol"}));
  throw ValidationError("unknown command '" + c + "'");
}

bool is_mc_command(const std::string& c) {
  return c == "mc" || c == "sweep" || c == "long-time" || c == "unitary";
}

std::string sha1_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha1(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx, data.data(), data.size()) != 1 || EVP_DigestFinal_ex(ctx, md, &len) != 1) {
    EVP_MD_CTX_free(ctx);
    throw std::runtime_error("SHA-1 digest failed");
  }
  EVP_MD_CTX_free(ctx);
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return os.str();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot write " + path);
  f << data;
  if (!f) throw ValidationError("failed writing " + path);
}

// Compares stored and recomputed results; tol = 0 means exact equality.
bool results_match(const json& a, const json& b, double tol, std::string& where, const std::string& path = "") {
  if (a.is_number() && b.is_number()) {
    const double x = a.get<double>(), y = b.get<double>();
    if (tol == 0.0 ? x == y : std::abs(x - y) <= tol * std::max(1.0, std::max(std::abs(x), std::abs(y)))) {
      return true;
    }
    where = path;
    return false;
  }
  if (a.type() != b.type() || a.size() != b.size()) {
    where = path.empty() ? "<root>" : path;
    return false;
  }
  if (a.is_object()) {
    for (auto it = a.begin(); it != a.end(); ++it) {
      if (it.key() == "wall_time") continue;
      if (!b.contains(it.key())) {
        where = path + "/" + it.key();
        return false;
      }
      if (!results_match(it.value(), b[it.key()], tol, where, path + "/" + it.key())) return false;
    }
    return true;
  }
  if (a.is_array()) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!results_match(a[i], b[i], tol, where, path + "/" + std::to_string(i))) return false;
    }
    return true;
  }
  if (a != b) {
    where = path;
    return false;
  }
  return true;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"symbols-verify", "oracle",       "mc",         "sweep",
                                                 "long-time",      "unitary",      "pde-spectrum", "pde-kernel",
                                                 "contract",       "quantize"};
  return names;
}

std::string config_hash(const RunConfig& cfg) {
  const json doc = {{"command", cfg.command}, {"params", cfg.params}};
  const std::string body = doc.dump();
  return sha1_hex("blob " + std::to_string(body.size()) + '\0' + body);
}

int default_threads() {
  if (const char* env = std::getenv("SPINPATH_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<int>(v);
  }
  return 1;
}

RunOutcome run(const RunConfig& input, const RunContext& ctx) {
  RunOutcome out;
  RunConfig cfg = input;
  if (is_mc_command(cfg.command)) cfg.params.try_emplace("seed", "0");
  try {
    if (ctx.threads < 1) throw ValidationError("--threads must be at least 1");
    McOptions mc;
    mc.threads = ctx.threads;
    Result r = dispatch(cfg, mc);
    out.exit_code = r.exit_code;
    out.summary = r.summary;
    out.artifact = {{"schema", kSchema},
                    {"command", cfg.command},
                    {"params", cfg.params},
                    {"config_hash", config_hash(cfg)},
                    {"results", r.results}};
    if (!ctx.out.empty()) {
      write_file(ctx.out + ".json", out.artifact.dump(2) + "\n");
      if (!r.csv.empty()) write_file(ctx.out + ".csv", r.csv);
    }
    if (!r.binary_dump.empty()) write_file(r.dump_path, std::string(r.binary_dump.begin(), r.binary_dump.end()));
  } catch (const ValidationError& e) {
    out.exit_code = kValidation;
    out.error = e.what();
  } catch (const NumericalError& e) {
    out.exit_code = kNumerical;
    out.error = e.what();
  }
  return out;
}

RunOutcome replay(const std::string& artifact_path, const RunContext& ctx) {
  RunOutcome out;
  json doc;
  {
    std::ifstream f(artifact_path);
    if (!f) {
      out.exit_code = kValidation;
      out.error = "cannot open " + artifact_path;
      return out;
    }
    try {
      f >> doc;
    } catch (const json::exception& e) {
      out.exit_code = kValidation;
      out.error = std::string("artifact is not valid JSON: ") + e.what();
      return out;
    }
  }
  RunConfig cfg;
  try {
    if (!doc.is_object() || doc.value("schema", "") != kSchema || !doc.contains("command") ||
        !doc["command"].is_string() || !doc.contains("params") || !doc["params"].is_object() ||
        !doc.contains("config_hash") || !doc["config_hash"].is_string() || !doc.contains("results")) {
      throw ValidationError("artifact does not match schema " + std::string(kSchema));
    }
    cfg.command = doc["command"].get<std::string>();
    for (auto it = doc["params"].begin(); it != doc["params"].end(); ++it) {
      if (!it.value().is_string()) throw ValidationError("artifact parameter values must be strings");
      cfg.params[it.key()] = it.value().get<std::string>();
    }
  } catch (const ValidationError& e) {
    out.exit_code = kValidation;
    out.error = e.what();
    return out;
  }
  if (config_hash(cfg) != doc["config_hash"].get<std::string>()) {
    out.exit_code = kReplayMismatch;
    out.error = "config_hash does not match the stored parameters (artifact was edited)";
    return out;
  }
  RunContext quiet = ctx;
  quiet.out.clear();
  RunOutcome again = run(cfg, quiet);
  if (again.exit_code == kValidation) {
    out.exit_code = kValidation;
    out.error = again.error;
    return out;
  }
  if (again.artifact.is_null()) {
    out.exit_code = kReplayMismatch;
    out.error = "re-execution failed: " + again.error;
    return out;
  }
  const double tol = is_mc_command(cfg.command) ? 0.0 : doc["results"].value("replay_tolerance", 1e-9);
  std::string where;
  if (!results_match(doc["results"], again.artifact["results"], tol, where)) {
    out.exit_code = kReplayMismatch;
    out.error = "replay differs from the stored result at " + where;
    return out;
  }
  out.exit_code = kOk;
  out.artifact = again.artifact;
  out.summary = "replay: " + cfg.command + " reproduced " + (tol == 0.0 ? "bit-exactly" : "within tolerance") +
                " with " + std::to_string(ctx.threads) + " thread(s)";
  return out;
}

}  // namespace spinpath::tools
