#pragma once

// Job orchestration and reports for the lglab command line tool.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <future>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "lglab/brieskorn.hpp"
#include "lglab/cu_linalg.hpp"
#include "lglab/errors.hpp"
#include "lglab/milnor.hpp"
#include "lglab/oracles.hpp"
#include "lglab/parse.hpp"
#include "lglab/twisted_derham.hpp"

namespace lglab::cli {

using nlohmann::json;

inline constexpr const char* kSchemaVersion = "1.0.0";
inline constexpr const char* kToolVersion = "0.1.0";

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"milnor",   "koszul", "fibers",  "freeness", "brieskorn",
                                          "pairing",  "spectrum", "predict", "corpus",   "report"};
  return c;
}

struct JobSpec {
  std::string command;
  std::string poly;
  std::string vars;
  int trunc_u = 6;
  std::optional<std::vector<int>> deg_ladder;
  std::optional<std::vector<Rational>> samples;
  bool assume_tame = false;
  std::string json_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::pair<int, int>> hypersurface;
  std::string corpus_path;
};

struct CrossCheck {
  std::string name;
  std::string computed;
  std::string predicted;
  bool pass = false;
};

struct Report {
  json job = json::object();
  json payload = json::object();
  std::vector<CrossCheck> checks;
  std::optional<json> error;
  int exit_code = 0;

  void check(std::string name, const std::string& computed, const std::string& predicted) {
    checks.push_back({std::move(name), computed, predicted, computed == predicted});
  }
  bool all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CrossCheck& c) { return c.pass; });
  }
  std::string status() const { return error ? "error" : (all_pass() ? "pass" : "fail"); }
};

inline std::uint64_t effective_seed(const JobSpec& job) {
  if (job.seed) return *job.seed;
  if (const char* env = std::getenv("LGLAB_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ParseError(std::string("LGLAB_SEED is not an unsigned integer: '") + env + "'", 0);
    }
  }
  return 0;
}

/// Strict "p" or "p/q" with q != 0.
inline Rational parse_rational(const std::string& s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  const std::size_t d0 = i;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (i == d0) throw ParseError("expected a rational number in '" + s + "'", i);
  if (i < s.size() && s[i] == '/') {
    const std::size_t d1 = ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == d1) throw ParseError("missing denominator in '" + s + "'", i);
    if (s.find_first_not_of('0', d1) == std::string::npos || s.find_first_not_of('0', d1) >= i)
      throw ParseError("zero denominator in '" + s + "'", d1);
  }
  if (i != s.size()) throw ParseError("unexpected character in '" + s + "'", i);
  return rational_from_string(s[0] == '+' ? s.substr(1) : s);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) {
    const auto b = cur.find_first_not_of(" \t");
    const auto e = cur.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : cur.substr(b, e - b + 1));
  }
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

inline std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  for (const auto& t : split(s, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(t, &used);
    } catch (const std::exception&) {
      throw ParseError("expected an integer in '" + t + "'", 0);
    }
    if (used != t.size()) throw ParseError("expected an integer in '" + t + "'", used);
    out.push_back(v);
  }
  return out;
}

inline std::vector<Rational> parse_rational_list(const std::string& s) {
  std::vector<Rational> out;
  for (const auto& t : split(s, ',')) out.push_back(parse_rational(t));
  return out;
}

inline std::string join(const std::vector<std::string>& v, const std::string& sep = ", ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

template <class T>
std::string list_string(const std::vector<T>& v) {
  std::vector<std::string> s;
  for (const auto& x : v) {
    if constexpr (std::is_same_v<T, Rational> || std::is_same_v<T, Integer>)
      s.push_back(x.get_str());
    else
      s.push_back(std::to_string(x));
  }
  return "(" + join(s) + ")";
}

inline json conventions() {
  return {{"twisted_differential", "u d + df^"},
          {"connection", "u^2 d/du + (n - k) u - f on k-forms"},
          {"spectrum_shift", "0"},
          {"residue_normalization", "lambda(hess f) = mu"},
          {"truncation", "weighted filtration: wdeg(g dx_I) <= Dmax + k * wdeg(f)"},
          {"monomial_order", "degrevlex"}};
}

inline std::string timestamp_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

inline json to_json(const Report& r, const std::string& timestamp) {
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name}, {"computed", c.computed}, {"predicted", c.predicted}, {"pass", c.pass}});
  json j{{"schema_version", kSchemaVersion},
         {"tool", {{"name", "lglab"}, {"version", kToolVersion}}},
         {"conventions", conventions()},
         {"timestamp", timestamp},
         {"job", r.job},
         {"payload", r.payload},
         {"cross_checks", checks},
         {"status", r.status()}};
  if (r.error) j["error"] = *r.error;
  return j;
}

/// Everything a single-polynomial command needs.
struct Context {
  JobSpec job;
  std::vector<std::string> vars;
  ExactPoly f;
  std::uint64_t seed = 0;
  std::vector<Rational> samples;
  std::vector<int> ladder;

  std::string str(const ExactPoly& p) const { return to_string(p, vars); }
  std::string mono(const Exponent& e) const { return monomial_to_string(e, vars); }
};

inline Context make_context(const JobSpec& job) {
  Context c;
  c.job = job;
  c.vars = parse_variable_list(job.vars);
  c.f = parse_poly(job.poly, c.vars);
  c.seed = effective_seed(job);
  c.samples = job.samples ? *job.samples : default_samples(c.seed);
  c.ladder = job.deg_ladder ? *job.deg_ladder : default_degree_ladder(c.f);
  if (job.trunc_u < 1) throw ParseError("--trunc-u must be at least 1", 0);
  return c;
}

inline json job_json(const JobSpec& job, std::uint64_t seed) {
  json j{{"command", job.command}, {"poly", job.poly}, {"vars", job.vars}, {"trunc_u", job.trunc_u},
         {"assume_tame", job.assume_tame}, {"seed", seed}};
  if (job.deg_ladder) j["deg_ladder"] = *job.deg_ladder;
  if (job.samples) {
    std::vector<std::string> s;
    for (const auto& q : *job.samples) s.push_back(q.get_str());
    j["samples"] = s;
  }
  if (job.hypersurface) j["hypersurface"] = {job.hypersurface->first, job.hypersurface->second};
  if (!job.corpus_path.empty()) j["corpus"] = job.corpus_path;
  return j;
}

inline std::optional<MilnorAlgebra> try_milnor(const ExactPoly& f) {
  try {
    return milnor_algebra(f);
  } catch (const InfiniteMilnorNumber&) {
    return std::nullopt;
  }
}

inline std::string b(bool v) { return v ? "true" : "false"; }

inline json dims_json(const std::vector<std::size_t>& d) { return json(d); }

// ---- commands ----

inline void do_milnor(const Context& c, Report& r) {
  const MilnorAlgebra ma = milnor_algebra(c.f);
  json basis = json::array(), gb = json::array();
  for (const auto& e : ma.basis()) basis.push_back(c.mono(e));
  for (const auto& g : ma.gb().generators()) gb.push_back(c.str(g));
  r.payload["milnor"] = {{"mu", ma.mu()}, {"basis", basis}, {"groebner_basis", gb}, {"order", "degrevlex"}};
  r.check("groebner basis satisfies the Buchberger criterion", b(satisfies_buchberger_criterion(ma.gb())), "true");
  const NewtonData nd = newton_data(c.f);
  if (nd.convenient && nd.nondegenerate.value_or(false))
    r.check("mu equals the Newton number", std::to_string(ma.mu()), std::to_string(kouchnirenko_mu(nd)));
  r.payload["milnor"]["newton"] = {{"convenient", nd.convenient},
                                   {"nondegenerate", nd.nondegenerate ? json(*nd.nondegenerate) : json(nullptr)}};
}

inline void do_koszul(const Context& c, Report& r) {
  const KoszulReport k = koszul_dims(c.f);
  json trunc = json::array();
  for (const auto& d : k.truncated) trunc.push_back(dims_json(d));
  r.payload["koszul"] = {{"dims", k.dims},
                        {"mu", k.mu},
                        {"regular_sequence", k.regular_sequence},
                        {"leading_form_regular", k.leading_form_regular},
                        {"truncated_dims", trunc}};
  r.check("partials form a regular sequence", b(k.regular_sequence), "true");
  for (std::size_t i = 0; i < k.truncated.size(); ++i)
    r.check("truncated Koszul cohomology rung " + std::to_string(i), list_string(k.truncated[i]),
            list_string(k.dims));
}

inline void do_fibers(const Context& c, Report& r) {
  const GrowthReport g = torsion_growth_verdict(c.f, {1, 2, 3}, c.ladder, c.samples);
  json table = json::array();
  for (std::size_t rung = 0; rung < g.fibers.ladder.size(); ++rung) {
    json row = json::object();
    for (std::size_t s = 0; s < c.samples.size(); ++s) row[c.samples[s].get_str()] = g.fibers.dims[rung][s];
    table.push_back({{"dmax", g.fibers.ladder[rung]}, {"dims", row}});
  }
  json trunc = json::array();
  for (std::size_t i = 0; i < g.order_ladder.size(); ++i)
    trunc.push_back({{"N", g.order_ladder[i]}, {"dims", g.truncated_dims[i]}});
  std::vector<std::string> samples;
  for (const auto& s : c.samples) samples.push_back(s.get_str());
  r.payload["fibers"] = {{"verdict", to_string(g.verdict)},
                        {"samples", samples},
                        {"ladder", c.ladder},
                        {"table", table},
                        {"truncated_by_order", trunc},
                        {"all_stabilized", g.fibers.all_stabilized()},
                        {"constant_across_samples", g.fibers.constant_across_samples()}};
  if (auto ma = try_milnor(c.f)) {
    const std::size_t n = c.f.nvars();
    const auto z = static_cast<std::size_t>(std::find(c.samples.begin(), c.samples.end(), Rational(0)) - c.samples.begin());
    r.check("stabilized H^n at u=0 equals mu", std::to_string(g.fibers.last_rung()[z][n]), std::to_string(ma->mu()));
    r.check("fiber dimensions constant across samples", b(g.fibers.constant_across_samples()), "true");
    r.check("fiber verdict", to_string(g.verdict), "stable-free-like");
  }
}

// Smallest rung whose successor agrees with it at every sample.
inline int stabilizing_rung(const FiberDimReport& fr) {
  for (std::size_t i = 0; i + 1 < fr.dims.size(); ++i)
    if (fr.dims[i] == fr.dims[i + 1]) return fr.ladder[i];
  return fr.ladder.front();
}

inline void do_freeness(const Context& c, Report& r) {
  const FiberDimReport fr = fiber_dim_report(c.f, c.ladder, c.samples);
  const int dmax = stabilizing_rung(fr);
  const TruncatedComplex tc = build_truncated(c.f, 1, dmax, 1);
  const auto modules = cohomology_modules(tc);
  std::vector<std::vector<std::size_t>> dims;
  for (const auto& u : c.samples) dims.push_back(fiber_cohomology_dims(tc, u));
  const BasicuVerdict v = basicu_check(c.samples, dims, modules);
  json mods = json::array();
  for (std::size_t k = 0; k < modules.size(); ++k) {
    std::vector<std::string> tor;
    for (const auto& t : modules[k].torsion) tor.push_back(t.to_string());
    mods.push_back({{"degree", k}, {"free_rank", modules[k].free_rank}, {"torsion", tor},
                    {"u_torsion_orders", modules[k].u_torsion_orders}});
  }
  r.payload["freeness"] = {{"dmax", dmax},
                          {"modules", mods},
                          {"constant_fiber_dims", v.constant_fiber_dims},
                          {"free", v.free},
                          {"consistent", v.consistent},
                          {"discrepancies", v.discrepancies}};
  if (v.witness_u) r.payload["freeness"]["witness_u"] = v.witness_u->get_str();
  if (v.witness_factor) r.payload["freeness"]["witness_factor"] = v.witness_factor->to_string();
  r.check("fiber constancy agrees with module freeness", b(v.consistent), "true");
  if (auto ma = try_milnor(c.f)) {
    r.check("truncated cohomology modules are free", b(v.free), "true");
    r.check("free rank of H^n equals mu", std::to_string(modules.back().free_rank), std::to_string(ma->mu()));
  }
}

inline json upoly_matrix_json(const UPolyMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
    rows.push_back(row);
  }
  return rows;
}

inline json qmatrix_json(const QMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).get_str());
    rows.push_back(row);
  }
  return rows;
}

inline void do_brieskorn(const Context& c, Report& r) {
  const BrieskornLattice bl = brieskorn_lattice(c.f, c.job.trunc_u, c.job.assume_tame);
  json basis = json::array();
  for (const auto& e : bl.ma.basis()) basis.push_back(c.mono(e) + " dx");
  r.payload["brieskorn"] = {{"rank", bl.rank()},
                           {"basis", basis},
                           {"trunc_u", bl.order},
                           {"connection", upoly_matrix_json(bl.connection.A)},
                           {"max_u_degree", bl.connection.max_u_degree},
                           {"stabilized", bl.connection.stabilized},
                           {"tameness", bl.tameness}};
  r.check("connection stabilizes at order N+2 with polynomial entries", b(bl.connection.stabilized), "true");
  bool witnesses = true;
  for (std::size_t j = 0; j < bl.rank(); ++j) {
    TopForm g(static_cast<std::size_t>(bl.order), ExactPoly(c.f.nvars()));
    g[0] = c.f * bl.ma.basis_poly(j);
    g[0] *= Rational(-1);
    const auto red = reduce_topform(bl.ma, g);
    witnesses = witnesses && verify_reduction(bl.ma, g, red);
  }
  r.check("reduction witnesses satisfy D(eta) = input - representative", b(witnesses), "true");
  std::vector<int> lad = c.ladder;
  const FiberDimReport fr = fiber_dim_report(c.f, {lad[0], lad[1]}, {Rational(0)});
  r.check("lattice rank equals H^n fiber dimension at u=0", std::to_string(bl.rank()),
          std::to_string(fr.last_rung()[0][c.f.nvars()]));
}

inline void do_pairing(const Context& c, Report& r) {
  const MilnorAlgebra ma = milnor_algebra(c.f);
  const ResidueFunctional lam = residue_functional(ma);
  const QMatrix G = residue_pairing(ma, lam);
  json values = json::object();
  for (std::size_t i = 0; i < ma.mu(); ++i) values[c.mono(ma.basis()[i])] = lam.values[i].get_str();
  const Rational det = determinant(G);
  r.payload["pairing"] = {{"functional", values}, {"gram", qmatrix_json(G)}, {"det", det.get_str()}};
  r.check("gram matrix symmetric", b(G == G.transpose()), "true");
  r.check("gram determinant nonzero", b(det != 0), "true");
  r.check("functional of the hessian equals mu", lam.apply(ma, hessian_determinant(c.f)).get_str(),
          std::to_string(ma.mu()));
}

inline void do_spectrum(const Context& c, Report& r) {
  const MilnorAlgebra ma = milnor_algebra(c.f);
  const SpectrumData sd = spectrum_qh(ma);
  const BrieskornLattice bl = brieskorn_lattice(c.f, c.job.trunc_u, c.job.assume_tame);
  const Rational shift = 0;
  std::vector<std::string> w, vals;
  for (const auto& x : sd.weights) w.push_back(x.get_str());
  for (const auto& x : sd.values) vals.push_back(x.get_str());
  const auto charpoly = characteristic_polynomial(u_coefficient(bl.connection.A, 1));
  const auto expected = spectrum_polynomial(sd.values, shift);
  r.payload["spectrum"] = {{"weights", w}, {"values", vals}, {"shift", shift.get_str()}, {"symmetric", sd.symmetric}};
  r.check("spectrum symmetric under alpha -> n - alpha", b(sd.symmetric), "true");
  r.check("u-linear connection part has the spectrum as eigenvalues", list_string(charpoly), list_string(expected));
  r.check("connection is u-linear",
          b(bl.connection.max_u_degree <= 1 && u_coefficient(bl.connection.A, 0).is_zero()), "true");
  r.check("pairing respects alpha_i + alpha_j = n", b(spectrum_pairing_check(bl.gram, sd, c.f.nvars())), "true");
}

inline void do_predict(const Context* c, const JobSpec& job, Report& r) {
  if (job.hypersurface) {
    const auto [n, d] = *job.hypersurface;
    const RankPrediction rp = predicted_ranks_hypersurface(n, d);
    const auto betti = hypersurface_betti(n, d);
    Integer alt = 0;
    for (std::size_t j = 0; j < betti.size(); ++j) alt += (j % 2 == 0) ? betti[j] : Integer(-betti[j]);
    std::vector<std::string> ranks, bs;
    for (const auto& x : rp.ranks) ranks.push_back(x.get_str());
    for (const auto& x : betti) bs.push_back(x.get_str());
    r.payload["predict"] = {{"n", n}, {"d", d}, {"betti", bs}, {"ranks", ranks}, {"provenance", rp.provenance}};
    r.check("Euler characteristic recursion equals closed form", hypersurface_euler_recursive(n, d).get_str(),
            hypersurface_euler_closed(n, d).get_str());
    r.check("alternating Betti sum equals Euler characteristic", alt.get_str(), hypersurface_euler_closed(n, d).get_str());
    return;
  }
  const RankPrediction rp = predicted_rank_tame(c->f, job.assume_tame);
  const std::size_t n = c->f.nvars();
  std::vector<std::string> ranks;
  for (const auto& x : rp.ranks) ranks.push_back(x.get_str());
  r.payload["predict"] = {{"ranks", ranks}, {"provenance", rp.provenance}};
  const KoszulReport k = koszul_dims(c->f);
  std::vector<Integer> low(rp.ranks.begin(), rp.ranks.begin() + static_cast<long>(n + 1));
  std::vector<Integer> kd;
  for (auto x : k.dims) kd.push_back(static_cast<unsigned long>(x));
  r.check("Koszul dimensions match the milnor-sum prediction", list_string(kd), list_string(low));
  const FiberDimReport fr = fiber_dim_report(c->f, {c->ladder[0], c->ladder[1]}, {Rational(0), Rational(1)});
  r.check("H^n fiber dimension at u=1 matches the prediction", std::to_string(fr.last_rung()[1][n]),
          rp.ranks[n].get_str());
}

inline void do_report(const Context& c, Report& r) {
  do_milnor(c, r);
  do_koszul(c, r);
  do_fibers(c, r);
  do_freeness(c, r);
  do_brieskorn(c, r);
  do_pairing(c, r);
  if (quasi_homogeneous_weights(c.f)) do_spectrum(c, r);
  do_predict(&c, c.job, r);
}

// ---- corpus ----

struct CorpusEntry {
  std::string name, poly, vars;
  std::map<std::string, std::string> expect;
  std::size_t line = 0;
};

inline std::vector<CorpusEntry> parse_corpus(std::istream& in) {
  std::vector<CorpusEntry> out;
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto fields = split(line, '|');
    if (fields.size() < 3 || fields.size() > 4)
      throw ParseError("corpus line " + std::to_string(no) + ": expected 'name | polynomial | vars | key=value ...'", 0);
    CorpusEntry e{fields[0], fields[1], fields[2], {}, no};
    if (e.name.empty()) throw ParseError("corpus line " + std::to_string(no) + ": empty name", 0);
    if (fields.size() == 4) {
      std::istringstream kv(fields[3]);
      std::string tok;
      while (kv >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos || eq == 0)
          throw ParseError("corpus line " + std::to_string(no) + ": bad expectation '" + tok + "'", 0);
        e.expect[tok.substr(0, eq)] = tok.substr(eq + 1);
      }
    }
    out.push_back(std::move(e));
  }
  return out;
}

inline Report run(const JobSpec& job);

inline int exit_code_for(const std::exception_ptr& ep, json& err) {
  try {
    std::rethrow_exception(ep);
  } catch (const ParseError& e) {
    err = {{"kind", "parse"}, {"message", e.what()}, {"exit_code", 2}};
    return 2;
  } catch (const PreconditionError& e) {
    err = {{"kind", "precondition"}, {"message", e.what()}, {"exit_code", 3}};
    return 3;
  } catch (const InvariantError& e) {
    err = {{"kind", "invariant"}, {"message", e.what()}, {"exit_code", 4}};
    return 4;
  } catch (const std::invalid_argument& e) {
    err = {{"kind", "usage"}, {"message", e.what()}, {"exit_code", 2}};
    return 2;
  } catch (const std::exception& e) {
    err = {{"kind", "invariant"}, {"message", e.what()}, {"exit_code", 4}};
    return 4;
  }
}

/// Runs a job, turning failures into an error report with the mapped exit code.
inline Report run_guarded(const JobSpec& job) {
  try {
    return run(job);
  } catch (...) {
    Report r;
    json err;
    r.exit_code = exit_code_for(std::current_exception(), err);
    r.error = err;
    r.job = {{"command", job.command}, {"poly", job.poly}, {"vars", job.vars}};
    return r;
  }
}

inline void do_corpus(const JobSpec& job, Report& r) {
  const std::string path = job.corpus_path.empty() ? std::string(LGLAB_DATA_DIR) + "/corpus.txt" : job.corpus_path;
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open corpus file '" + path + "'", 0);
  const auto entries = parse_corpus(in);
  std::vector<std::future<Report>> jobs;
  for (const auto& e : entries) {
    JobSpec sub = job;
    sub.poly = e.poly;
    sub.vars = e.vars;
    sub.json_path.clear();
    sub.corpus_path.clear();
    const auto ex = e.expect.find("expect");
    sub.command = (ex != e.expect.end() && ex->second == "torsion-growth") ? "fibers" : "report";
    if (auto t = e.expect.find("tame"); t != e.expect.end() && t->second == "assume") sub.assume_tame = true;
    jobs.push_back(std::async(std::launch::async, [sub] { return run_guarded(sub); }));
  }
  json rows = json::array(), failures = json::array();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    Report sr = jobs[i].get();
    if (auto m = e.expect.find("mu"); m != e.expect.end()) {
      const auto& mil = sr.payload.find("milnor");
      sr.check("corpus expectation mu", mil != sr.payload.end() ? std::to_string((*mil)["mu"].get<std::size_t>()) : "none",
               m->second);
    }
    if (auto x = e.expect.find("expect"); x != e.expect.end()) {
      const auto& fib = sr.payload.find("fibers");
      sr.check("corpus expectation verdict",
               fib != sr.payload.end() ? (*fib)["verdict"].get<std::string>() : "none", x->second);
    }
    json failed = json::array();
    for (const auto& ck : sr.checks) {
      if (!ck.pass) failed.push_back(ck.name);
      r.checks.push_back({e.name + ": " + ck.name, ck.computed, ck.predicted, ck.pass});
    }
    if (sr.error) {
      r.checks.push_back({e.name + ": completed without error", (*sr.error)["message"].get<std::string>(), "no error",
                          false});
      failed.push_back("error");
    }
    const std::string status = sr.status();
    json row{{"name", e.name}, {"poly", e.poly}, {"vars", e.vars}, {"status", status}, {"failed_checks", failed},
             {"exit_code", sr.error ? sr.exit_code : (sr.all_pass() ? 0 : 1)}};
    if (sr.error) row["error"] = *sr.error;
    if (status != "pass") failures.push_back(e.name);
    rows.push_back(row);
  }
  r.payload["corpus"] = {{"path", path}, {"entries", rows}, {"failures", failures}};
}

inline Report run(const JobSpec& job) {
  if (std::find(commands().begin(), commands().end(), job.command) == commands().end())
    throw ParseError("unknown command '" + job.command + "'", 0);
  Report r;
  if (job.command == "corpus") {
    r.job = job_json(job, effective_seed(job));
    do_corpus(job, r);
  } else if (job.command == "predict" && job.hypersurface) {
    r.job = job_json(job, effective_seed(job));
    do_predict(nullptr, job, r);
  } else {
    if (job.poly.empty()) throw ParseError("--poly is required for '" + job.command + "'", 0);
    const Context c = make_context(job);
    r.job = job_json(job, c.seed);
    if (job.command == "milnor") do_milnor(c, r);
    else if (job.command == "koszul") do_koszul(c, r);
    else if (job.command == "fibers") do_fibers(c, r);
    else if (job.command == "freeness") do_freeness(c, r);
    else if (job.command == "brieskorn") do_brieskorn(c, r);
    else if (job.command == "pairing") do_pairing(c, r);
    else if (job.command == "spectrum") do_spectrum(c, r);
    else if (job.command == "predict") do_predict(&c, job, r);
    else do_report(c, r);
  }
  r.exit_code = r.all_pass() ? 0 : 1;
  return r;
}

inline void render_text(const Report& r, std::ostream& os) {
  os << "lglab " << (r.job.contains("command") ? r.job["command"].get<std::string>() : std::string("?"));
  if (r.job.contains("poly") && !r.job["poly"].get<std::string>().empty()) os << "  f = " << r.job["poly"].get<std::string>();
  os << "\n";
  if (r.error) {
    os << "error (" << (*r.error)["kind"].get<std::string>() << "): " << (*r.error)["message"].get<std::string>() << "\n";
    return;
  }
  os << r.payload.dump(2) << "\n";
  for (const auto& c : r.checks)
    os << (c.pass ? "[pass] " : "[FAIL] ") << c.name << ": computed " << c.computed << ", predicted " << c.predicted
       << "\n";
  os << "status: " << r.status() << "\n";
}

/// Full front end: run, print, write JSON, return the exit code.
inline int execute(const JobSpec& job, std::ostream& out, const std::string& timestamp = timestamp_now()) {
  Report r = run_guarded(job);
  render_text(r, out);
  if (!job.json_path.empty()) {
    std::ofstream js(job.json_path);
    if (!js) {
      out << "error: cannot write " << job.json_path << "\n";
      return 2;
    }
    js << to_json(r, timestamp).dump(2) << "\n";
  }
  return r.exit_code;
}

}  // namespace lglab::cli
