#pragma once

// Degree-truncated matrix models of (Omega^*[u], u d + sign * df^).
//
// Truncation is by a weighted filtration: with weights w and weighted degree
// fdeg of f, a k-form g dx_I is kept when wdeg(g) + sum_{i in I} w_i is at
// most Dmax + k * fdeg. d preserves this filtration and df^ raises it by
// exactly fdeg, so the truncation is a subcomplex over Q[u] whose associated
// graded is the Koszul complex of the weighted leading form of f.

#include <algorithm>
#include <future>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lglab/cu_linalg.hpp"
#include "lglab/errors.hpp"
#include "lglab/forms.hpp"
#include "lglab/linalg.hpp"
#include "lglab/milnor.hpp"
#include "lglab/poly.hpp"

namespace lglab {

struct FiltrationWeights {
  std::vector<Rational> w;  // normalized so that min w_i = 1
  Rational fdeg;            // weighted degree of f (0 for constant f)
  std::string kind;         // "total-degree", "quasi-homogeneous", "fallback-total-degree"
};

namespace detail {

// Unique solution of A x = b over Q, if any.
inline std::optional<std::vector<Rational>> solve_unique(QMatrix a, std::vector<Rational> b) {
  const std::size_t rows = a.rows(), cols = a.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a(p, c) == 0) ++p;
    if (p == rows) continue;
    for (std::size_t j = 0; j < cols; ++j) std::swap(a(p, j), a(r, j));
    std::swap(b[p], b[r]);
    const Rational inv = Rational(1) / a(r, c);
    for (std::size_t j = 0; j < cols; ++j) a(r, j) *= inv;
    b[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a(i, c) == 0) continue;
      const Rational t = a(i, c);
      for (std::size_t j = 0; j < cols; ++j) a(i, j) -= t * a(r, j);
      b[i] -= t * b[r];
    }
    pivots.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (b[i] != 0) return std::nullopt;
  if (pivots.size() != cols) return std::nullopt;
  std::vector<Rational> x(cols);
  for (std::size_t i = 0; i < r; ++i) x[pivots[i]] = b[i];
  return x;
}

inline Rational dot(const std::vector<Rational>& w, const Exponent& a) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += w[i] * a[i];
  return s;
}

inline void enumerate_weighted(std::size_t var, Exponent& cur, const Rational& budget, const std::vector<Rational>& w,
                               std::vector<Exponent>& out) {
  if (var == cur.size()) {
    out.push_back(cur);
    return;
  }
  Rational left = budget;
  for (int a = 0; left >= 0; ++a) {
    cur[var] = a;
    enumerate_weighted(var + 1, cur, left, w, out);
    left -= w[var];
  }
  cur[var] = 0;
}

}  // namespace detail

/// Positive weights making f quasi-homogeneous of degree 1, if unique; the
/// constant term of f is ignored.
inline std::optional<std::vector<Rational>> quasi_homogeneous_weights(const ExactPoly& f) {
  const std::size_t n = f.nvars();
  std::vector<Exponent> supp;
  for (const auto& [e, c] : f.terms())
    if (total_degree(e) > 0) supp.push_back(e);
  if (supp.empty() || n == 0) return std::nullopt;
  QMatrix a(supp.size(), n);
  for (std::size_t r = 0; r < supp.size(); ++r)
    for (std::size_t i = 0; i < n; ++i) a(r, i) = supp[r][i];
  auto w = detail::solve_unique(a, std::vector<Rational>(supp.size(), Rational(1)));
  if (!w) return std::nullopt;
  for (const auto& x : *w)
    if (x <= 0) return std::nullopt;
  return w;
}

inline FiltrationWeights filtration_weights(const ExactPoly& f) {
  const std::size_t n = f.nvars();
  FiltrationWeights fw{std::vector<Rational>(n, Rational(1)), 0, "total-degree"};
  if (f.is_constant()) return fw;
  std::optional<int> common;
  bool homogeneous = true;
  for (const auto& [e, c] : f.terms()) {
    const int d = total_degree(e);
    if (d == 0) continue;
    if (!common) common = d;
    homogeneous = homogeneous && *common == d;
  }
  if (homogeneous) {
    fw.fdeg = *common;
    return fw;
  }
  if (auto w = quasi_homogeneous_weights(f)) {
    const Rational m = *std::min_element(w->begin(), w->end());
    for (auto& x : *w) x /= m;
    fw.w = *w;
    fw.fdeg = Rational(1) / m;
    fw.kind = "quasi-homogeneous";
    return fw;
  }
  fw.fdeg = f.degree();
  fw.kind = "fallback-total-degree";
  return fw;
}

/// Weighted leading part of f for the filtration weights.
inline ExactPoly weighted_leading_form(const ExactPoly& f, const FiltrationWeights& fw) {
  ExactPoly top(f.nvars());
  for (const auto& [e, c] : f.terms())
    if (detail::dot(fw.w, e) == fw.fdeg) top.add_term(e, c);
  return top;
}

/// Basis element g dx_I with g = x^a.
struct FormMonomial {
  IndexSet subset;
  Exponent exponent;
  auto operator<=>(const FormMonomial&) const = default;
};

class TruncatedComplex {
 public:
  const ExactPoly& f() const noexcept { return f_; }
  std::size_t nvars() const noexcept { return f_.nvars(); }
  int order() const noexcept { return N_; }
  int dmax() const noexcept { return dmax_; }
  int sign() const noexcept { return sign_; }
  const FiltrationWeights& weights() const noexcept { return fw_; }

  /// Filtration bound for k-forms.
  Rational level(int k) const { return Rational(dmax_) + Rational(k) * fw_.fdeg; }

  const std::vector<FormMonomial>& basis(int k) const { return basis_.at(static_cast<std::size_t>(k)); }
  std::size_t basis_size(int k) const {
    return (k < 0 || k > static_cast<int>(nvars())) ? 0 : basis_[static_cast<std::size_t>(k)].size();
  }
  std::optional<std::size_t> index_of(int k, const FormMonomial& m) const {
    const auto& idx = index_.at(static_cast<std::size_t>(k));
    auto it = idx.find(m);
    if (it == idx.end()) return std::nullopt;
    return it->second;
  }

  /// sign * df^ : k-forms -> (k+1)-forms, k = 0..n-1.
  const SparseMatrix& koszul_part(int k) const { return a0_.at(static_cast<std::size_t>(k)); }
  /// d : k-forms -> (k+1)-forms.
  const SparseMatrix& derham_part(int k) const { return a1_.at(static_cast<std::size_t>(k)); }

  /// The fiber differential sign * df^ + u_o d.
  SparseMatrix fiber_matrix(int k, const Rational& u_o) const {
    const SparseMatrix& a = koszul_part(k);
    const SparseMatrix& b = derham_part(k);
    SparseMatrix m(a.rows(), a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) {
      for (const auto& [i, v] : a.column(j)) m.add(i, j, v);
      if (u_o != 0)
        for (const auto& [i, v] : b.column(j)) m.add(i, j, u_o * v);
    }
    return m;
  }

  /// Differential on u-truncated forms, basis index j * |B_k| + b for u^j x B_k[b].
  SparseMatrix expanded_matrix(int k) const {
    const SparseMatrix& a = koszul_part(k);
    const SparseMatrix& b = derham_part(k);
    const std::size_t R = a.rows(), C = a.cols();
    const auto n = static_cast<std::size_t>(N_);
    SparseMatrix m(R * n, C * n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t c = 0; c < C; ++c) {
        for (const auto& [i, v] : a.column(c)) m.add(j * R + i, j * C + c, v);
        if (j + 1 < n)
          for (const auto& [i, v] : b.column(c)) m.add((j + 1) * R + i, j * C + c, v);
      }
    return m;
  }

  /// Presentation sign * df^ + u d over Q[u].
  UPolyMatrix pencil(int k) const { return UPolyMatrix::pencil(koszul_part(k).to_dense(), derham_part(k).to_dense()); }

  /// Coordinates of a form in the truncated basis; nullopt if it leaves the truncation.
  std::optional<std::vector<Rational>> vectorize(const DiffForm& w) const {
    std::vector<Rational> v(basis_size(w.degree()));
    for (const auto& [s, p] : w.components())
      for (const auto& [e, c] : p.terms()) {
        auto idx = index_of(w.degree(), FormMonomial{s, e});
        if (!idx) return std::nullopt;
        v[*idx] = c;
      }
    return v;
  }
  std::optional<std::vector<Rational>> vectorize(const UDiffForm& w) const {
    if (w.order() != N_) throw std::invalid_argument("u-truncation order mismatch");
    const std::size_t b = basis_size(w.degree());
    std::vector<Rational> v(b * static_cast<std::size_t>(N_));
    for (int j = 0; j < N_; ++j) {
      auto c = vectorize(w.coeff(j));
      if (!c) return std::nullopt;
      std::copy(c->begin(), c->end(), v.begin() + static_cast<long>(b * static_cast<std::size_t>(j)));
    }
    return v;
  }

  DiffForm basis_form(int k, std::size_t i) const {
    const auto& m = basis(k).at(i);
    DiffForm w(nvars(), k);
    w.add(m.subset, ExactPoly::monomial(m.exponent, 1));
    return w;
  }

  /// Exact check that consecutive differentials compose to zero over Q[u].
  bool differential_squares_to_zero() const {
    for (int k = 0; k + 1 < static_cast<int>(a0_.size()); ++k) {
      const auto& a0 = a0_[static_cast<std::size_t>(k)];
      const auto& a1 = a1_[static_cast<std::size_t>(k)];
      const auto& b0 = a0_[static_cast<std::size_t>(k + 1)];
      const auto& b1 = a1_[static_cast<std::size_t>(k + 1)];
      if (!(b0 * a0).is_zero() || !(b1 * a1).is_zero()) return false;
      SparseMatrix mixed = b0 * a1;
      const SparseMatrix other = b1 * a0;
      for (std::size_t j = 0; j < other.cols(); ++j)
        for (const auto& [i, v] : other.column(j)) mixed.add(i, j, v);
      if (!mixed.is_zero()) return false;
    }
    return true;
  }

 private:
  friend TruncatedComplex build_truncated(const ExactPoly& f, int N, int Dmax, int sign);
  TruncatedComplex() = default;

  ExactPoly f_{0};
  int N_ = 1, dmax_ = 0, sign_ = 1;
  FiltrationWeights fw_;
  std::vector<std::vector<FormMonomial>> basis_;
  std::vector<std::map<FormMonomial, std::size_t>> index_;
  std::vector<SparseMatrix> a0_, a1_;
};

inline TruncatedComplex build_truncated(const ExactPoly& f, int N, int Dmax, int sign) {
  if (N < 1) throw std::invalid_argument("truncation order N must be >= 1");
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  if (Dmax < f.degree()) throw std::invalid_argument("degree bound must be at least deg f");
  TruncatedComplex tc;
  tc.f_ = f;
  tc.N_ = N;
  tc.dmax_ = Dmax;
  tc.sign_ = sign;
  tc.fw_ = filtration_weights(f);
  const std::size_t n = f.nvars();
  tc.basis_.resize(n + 1);
  tc.index_.resize(n + 1);
  for (int k = 0; k <= static_cast<int>(n); ++k) {
    auto& b = tc.basis_[static_cast<std::size_t>(k)];
    for (IndexSet s : subsets_of_size(n, k)) {
      Rational budget = tc.level(k);
      for (std::size_t i = 0; i < n; ++i)
        if (s & (IndexSet{1} << i)) budget -= tc.fw_.w[i];
      if (budget < 0) continue;
      std::vector<Exponent> mons;
      Exponent cur(n, 0);
      detail::enumerate_weighted(0, cur, budget, tc.fw_.w, mons);
      std::sort(mons.begin(), mons.end());
      for (auto& e : mons) b.push_back(FormMonomial{s, std::move(e)});
    }
    for (std::size_t i = 0; i < b.size(); ++i) tc.index_[static_cast<std::size_t>(k)].emplace(b[i], i);
  }
  for (int k = 0; k < static_cast<int>(n); ++k) {
    SparseMatrix a0(tc.basis_size(k + 1), tc.basis_size(k)), a1(tc.basis_size(k + 1), tc.basis_size(k));
    for (std::size_t j = 0; j < tc.basis_size(k); ++j) {
      const DiffForm w = tc.basis_form(k, j);
      DiffForm kz = wedge_df(f, w);
      if (sign < 0) kz *= Rational(-1);
      auto v0 = tc.vectorize(kz);
      auto v1 = tc.vectorize(exterior_d(w));
      if (!v0 || !v1) throw InvariantError("differential leaves the truncated subcomplex");
      for (std::size_t i = 0; i < v0->size(); ++i) {
        a0.add(i, j, (*v0)[i]);
        a1.add(i, j, (*v1)[i]);
      }
    }
    tc.a0_.push_back(std::move(a0));
    tc.a1_.push_back(std::move(a1));
  }
  if (!tc.differential_squares_to_zero()) throw InvariantError("truncated twisted differential does not square to zero");
  return tc;
}

/// dim H^k of the fiber complex at u = u_o, k = 0..n.
inline std::vector<std::size_t> fiber_cohomology_dims(const TruncatedComplex& tc, const Rational& u_o) {
  const int n = static_cast<int>(tc.nvars());
  std::vector<std::size_t> ranks(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) ranks[static_cast<std::size_t>(k)] = rank(tc.fiber_matrix(k, u_o));
  std::vector<std::size_t> dims(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    std::size_t r_out = k < n ? ranks[static_cast<std::size_t>(k)] : 0;
    std::size_t r_in = k > 0 ? ranks[static_cast<std::size_t>(k - 1)] : 0;
    dims[static_cast<std::size_t>(k)] = tc.basis_size(k) - r_out - r_in;
  }
  return dims;
}

/// dim_Q H^k of the u-truncated complex (coefficients in Q[u]/u^N).
inline std::vector<std::size_t> truncated_cohomology_dims(const TruncatedComplex& tc) {
  const int n = static_cast<int>(tc.nvars());
  const auto N = static_cast<std::size_t>(tc.order());
  std::vector<std::size_t> ranks(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) ranks[static_cast<std::size_t>(k)] = rank(tc.expanded_matrix(k));
  std::vector<std::size_t> dims(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    std::size_t r_out = k < n ? ranks[static_cast<std::size_t>(k)] : 0;
    std::size_t r_in = k > 0 ? ranks[static_cast<std::size_t>(k - 1)] : 0;
    dims[static_cast<std::size_t>(k)] = N * tc.basis_size(k) - r_out - r_in;
  }
  return dims;
}

/// Whether a (k+1)-form over Q[u]/u^N is D of a truncated k-form.
inline bool in_twisted_image(const TruncatedComplex& tc, const UDiffForm& w) {
  const int k = w.degree() - 1;
  if (k < 0) return w.is_zero();
  auto v = tc.vectorize(w);
  if (!v) throw std::out_of_range("form leaves the truncated complex; raise the degree bound");
  return in_column_span(tc.expanded_matrix(k), *v);
}

/// Cohomology of the truncated complex as Q[u]-modules, k = 0..n.
/// Torsion of H^k is the torsion of coker M_{k-1}.
inline std::vector<ModuleReport> cohomology_modules(const TruncatedComplex& tc) {
  const int n = static_cast<int>(tc.nvars());
  std::vector<std::vector<UPoly>> factors(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) factors[static_cast<std::size_t>(k)] = invariant_factors(tc.pencil(k));
  std::vector<ModuleReport> out;
  for (int k = 0; k <= n; ++k) {
    const std::size_t b = tc.basis_size(k);
    const std::size_t z_out = k < n ? factors[static_cast<std::size_t>(k)].size() : 0;
    ModuleReport rep = k > 0 ? module_report_from_factors(factors[static_cast<std::size_t>(k - 1)], b)
                             : module_report_from_factors({}, b);
    const std::size_t z_in = k > 0 ? factors[static_cast<std::size_t>(k - 1)].size() : 0;
    rep.free_rank = b - z_out - z_in;
    out.push_back(std::move(rep));
  }
  return out;
}

/// Default sample set for u_o: five fixed points plus one seeded pseudorandom rational.
inline std::vector<Rational> default_samples(std::uint64_t seed) {
  std::vector<Rational> s{Rational(0), Rational(1), Rational(-1), Rational(2), make_rational(7, 3)};
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<long> num(-97, 97), den(1, 89);
  for (;;) {
    Rational r(num(gen), den(gen));
    r.canonicalize();
    if (std::find(s.begin(), s.end(), r) == s.end()) {
      s.push_back(r);
      break;
    }
  }
  return s;
}

inline std::vector<int> default_degree_ladder(const ExactPoly& f) {
  const int d = std::max(f.degree(), 0);
  return {d, d + 2, d + 4};
}

struct FiberDimReport {
  std::vector<Rational> samples;
  std::vector<int> ladder;
  /// dims[r][s][k]: H^k at samples[s] on ladder rung r.
  std::vector<std::vector<std::vector<std::size_t>>> dims;
  /// stabilized[s][k]: the last two rungs agree.
  std::vector<std::vector<bool>> stabilized;

  const std::vector<std::vector<std::size_t>>& last_rung() const { return dims.back(); }
  bool all_stabilized() const {
    for (const auto& row : stabilized)
      for (bool b : row)
        if (!b) return false;
    return true;
  }
  bool constant_across_samples() const {
    const auto& d = last_rung();
    return std::all_of(d.begin(), d.end(), [&](const auto& row) { return row == d.front(); });
  }
};

inline FiberDimReport fiber_dim_report(const ExactPoly& f, const std::vector<int>& ladder,
                                       const std::vector<Rational>& samples, int sign = 1) {
  if (ladder.size() < 2) throw std::invalid_argument("degree ladder needs at least two rungs");
  if (!std::is_sorted(ladder.begin(), ladder.end()) ||
      std::adjacent_find(ladder.begin(), ladder.end()) != ladder.end())
    throw std::invalid_argument("degree ladder must be strictly increasing");
  FiberDimReport rep{samples, ladder, {}, {}};
  for (int dmax : ladder) {
    const TruncatedComplex tc = build_truncated(f, 1, dmax, sign);
    std::vector<std::future<std::vector<std::size_t>>> jobs;
    for (const auto& u : samples)
      jobs.push_back(std::async(std::launch::async, [&tc, u] { return fiber_cohomology_dims(tc, u); }));
    std::vector<std::vector<std::size_t>> row;
    for (auto& j : jobs) row.push_back(j.get());
    rep.dims.push_back(std::move(row));
  }
  const std::size_t R = rep.dims.size();
  for (std::size_t s = 0; s < samples.size(); ++s) {
    std::vector<bool> flags;
    for (std::size_t k = 0; k < rep.dims[R - 1][s].size(); ++k)
      flags.push_back(rep.dims[R - 1][s][k] == rep.dims[R - 2][s][k]);
    rep.stabilized.push_back(std::move(flags));
  }
  return rep;
}

enum class GrowthVerdict { stable_free_like, torsion_growth, inconclusive };

inline std::string to_string(GrowthVerdict v) {
  switch (v) {
    case GrowthVerdict::stable_free_like: return "stable-free-like";
    case GrowthVerdict::torsion_growth: return "torsion-growth";
    default: return "inconclusive";
  }
}

struct GrowthReport {
  GrowthVerdict verdict = GrowthVerdict::inconclusive;
  FiberDimReport fibers;
  std::vector<int> order_ladder;
  /// truncated_dims[i][k]: dim_Q H^k with Q[u]/u^N coefficients, N = order_ladder[i], lowest rung.
  std::vector<std::vector<std::size_t>> truncated_dims;
  /// Free cohomology forces dim_Q H^k(K/u^N) = N * rank H^k.
  bool truncated_dims_linear_in_order = false;
};

/// Classifies the u_o = 0 behaviour along the degree ladder against u_o != 0.
inline GrowthReport torsion_growth_verdict(const ExactPoly& f, const std::vector<int>& order_ladder,
                                           const std::vector<int>& degree_ladder,
                                           const std::vector<Rational>& samples, int sign = 1) {
  auto strictly_increasing = [](const std::vector<int>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
      if (v[i] <= v[i - 1]) return false;
    return true;
  };
  if (order_ladder.size() < 3 || degree_ladder.size() < 3 || !strictly_increasing(order_ladder) ||
      !strictly_increasing(degree_ladder) || order_ladder.front() < 1)
    throw std::invalid_argument("ladders must be strictly increasing with at least three rungs");
  auto zero = std::find(samples.begin(), samples.end(), Rational(0));
  if (zero == samples.end()) throw std::invalid_argument("sample set must contain u_o = 0");
  const std::size_t z = static_cast<std::size_t>(zero - samples.begin());

  GrowthReport rep;
  rep.fibers = fiber_dim_report(f, degree_ladder, samples, sign);
  rep.order_ladder = order_ladder;
  for (int N : order_ladder) rep.truncated_dims.push_back(truncated_cohomology_dims(build_truncated(f, N, degree_ladder.front(), sign)));

  const auto& d = rep.fibers.dims;
  const std::size_t nk = d[0][z].size();
  bool growth_at_zero = false;
  for (std::size_t k = 0; k < nk && !growth_at_zero; ++k) {
    bool inc = true;
    for (std::size_t r = 1; r < d.size(); ++r) inc = inc && d[r][z][k] > d[r - 1][z][k];
    growth_at_zero = inc;
  }
  bool others_stable = true;
  for (std::size_t s = 0; s < samples.size(); ++s)
    if (s != z)
      for (bool b : rep.fibers.stabilized[s]) others_stable = others_stable && b;

  const auto& first_rung = d.front()[z];
  rep.truncated_dims_linear_in_order = true;
  for (std::size_t i = 0; i < order_ladder.size(); ++i)
    for (std::size_t k = 0; k < nk; ++k)
      if (rep.truncated_dims[i][k] != static_cast<std::size_t>(order_ladder[i]) * first_rung[k])
        rep.truncated_dims_linear_in_order = false;

  if (growth_at_zero && others_stable)
    rep.verdict = GrowthVerdict::torsion_growth;
  else if (rep.fibers.all_stabilized() && rep.fibers.constant_across_samples() && rep.truncated_dims_linear_in_order)
    rep.verdict = GrowthVerdict::stable_free_like;
  return rep;
}

struct KoszulReport {
  std::vector<std::size_t> dims;  // dim H^k(Omega^*, df), k = 0..n
  std::size_t mu = 0;
  /// The partials form a regular sequence: their ideal is zero-dimensional in n variables.
  bool regular_sequence = false;
  /// The weighted leading form also has an isolated critical point, so the truncation is exact below n.
  bool leading_form_regular = false;
  /// u_o = 0 fiber dims on two truncation rungs, and whether both equal dims.
  std::vector<std::vector<std::size_t>> truncated;
  bool truncation_agrees = false;
};

inline KoszulReport koszul_dims(const ExactPoly& f) {
  std::optional<MilnorAlgebra> ma;
  try {
    ma.emplace(milnor_algebra(f));
  } catch (const InfiniteMilnorNumber& e) {
    throw NonIsolatedCritical(std::string("critical locus is not isolated: ") + e.what());
  }
  KoszulReport rep;
  const std::size_t n = f.nvars();
  rep.mu = ma->mu();
  rep.regular_sequence = ma->gb().is_zero_dimensional();
  rep.dims.assign(n + 1, 0);
  rep.dims[n] = rep.mu;
  const FiltrationWeights fw = filtration_weights(f);
  const ExactPoly top = weighted_leading_form(f, fw);
  rep.leading_form_regular = n == 0 || buchberger(jacobian(top), MonomialOrder::degrevlex()).is_zero_dimensional();
  const int d = std::max(f.degree(), 0);
  rep.truncation_agrees = true;
  for (int dmax : {d, d + 2}) {
    rep.truncated.push_back(fiber_cohomology_dims(build_truncated(f, 1, dmax, 1), Rational(0)));
    rep.truncation_agrees = rep.truncation_agrees && rep.truncated.back() == rep.dims;
  }
  return rep;
}

}  // namespace lglab
