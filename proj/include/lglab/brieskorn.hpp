#pragma once

// Brieskorn lattice H^n of the twisted de Rham complex for isolated critical
// points: reduction of top forms to the monomial basis over Q[u]/u^N, the
// u^2 d/du connection matrix, the quasi-homogeneous spectrum and the residue
// pairing at u = 0.
//
// Convention: on k-forms the connection acts as u^2 d/du + (n - k) u - sign * f.
// On top forms this is u^2 d/du - sign * f, so for quasi-homogeneous f the
// u-linear part of the connection has eigenvalues equal to the spectrum with
// zero shift.

#include <algorithm>
#include <future>
#include <optional>
#include <string>
#include <vector>

#include "lglab/cu_linalg.hpp"
#include "lglab/errors.hpp"
#include "lglab/forms.hpp"
#include "lglab/groebner.hpp"
#include "lglab/linalg.hpp"
#include "lglab/milnor.hpp"
#include "lglab/oracles.hpp"
#include "lglab/twisted_derham.hpp"

namespace lglab {

/// Top form sum_j u^j g_j dx_1 ... dx_n mod u^N.
using TopForm = std::vector<ExactPoly>;

struct ReducedTopForm {
  std::vector<UPoly> coordinates;  // in the basis m_i dx, degree < N
  /// (n-1)-form with D(eta) = input - representative mod u^N.
  UDiffForm eta;
  std::size_t steps = 0;
};

inline UDiffForm top_form_as_udiff(const TopForm& g, std::size_t nvars) {
  std::vector<DiffForm> c;
  for (const auto& p : g) c.push_back(DiffForm::top(p.nvars() == nvars ? p : ExactPoly(nvars)));
  return UDiffForm(std::move(c));
}

/// Representative sum_i c_i(u) m_i dx as a u-truncated top form.
inline UDiffForm representative(const MilnorAlgebra& ma, const std::vector<UPoly>& coords, int N) {
  const std::size_t n = ma.nvars();
  UDiffForm r(n, static_cast<int>(n), N);
  for (std::size_t i = 0; i < coords.size(); ++i)
    for (int j = 0; j < N; ++j) {
      const Rational c = coords[i].coeff(j);
      if (c != 0) r.coeff(j).add(full_subset(n), ExactPoly::monomial(ma.basis()[i], c));
    }
  return r;
}

/// g dx == nf(g) dx - sign * u * div(H) dx with g = nf(g) + sum_i H_i df/dx_i,
/// swept through u^0 .. u^{N-1}.
inline ReducedTopForm reduce_topform(const MilnorAlgebra& ma, TopForm g, int sign = 1) {
  const std::size_t n = ma.nvars();
  const int N = static_cast<int>(g.size());
  if (N < 1) throw std::invalid_argument("empty top form");
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  const int bound = 4 * N * std::max(ma.f().degree(), 1);
  ReducedTopForm out{std::vector<UPoly>(ma.mu()), UDiffForm(n, n == 0 ? 0 : static_cast<int>(n) - 1, N), 0};
  std::vector<std::vector<Rational>> coeffs(ma.mu(), std::vector<Rational>(static_cast<std::size_t>(N)));
  for (int j = 0; j < N; ++j) {
    ExactPoly& gj = g[static_cast<std::size_t>(j)];
    if (gj.is_zero()) continue;
    if (static_cast<int>(++out.steps) > bound)
      throw NoStabilization("reduction exceeded its iteration bound; f may not be tame");
    const DivisionRecord rec = division_record(gj, ma.gb());
    const auto h = lift_cofactors(rec, ma.gb());
    const auto c = ma.coordinates_of_normal_form(rec.nf);
    for (std::size_t i = 0; i < c.size(); ++i) coeffs[i][static_cast<std::size_t>(j)] = c[i];
    ExactPoly div(n);
    for (std::size_t i = 0; i < n; ++i) {
      div += h[i].derivative(i);
      ExactPoly e = h[i];
      if ((i % 2 == 1) != (sign < 0)) e *= Rational(-1);
      out.eta.coeff(j).add(full_subset(n) & ~(IndexSet{1} << i), e);
    }
    if (j + 1 < N) {
      if (sign > 0) div *= Rational(-1);
      g[static_cast<std::size_t>(j + 1)] += div;
    }
  }
  for (std::size_t i = 0; i < ma.mu(); ++i) out.coordinates[i] = UPoly(coeffs[i]);
  return out;
}

/// D(eta) == input - representative, checked on forms.
inline bool verify_reduction(const MilnorAlgebra& ma, const TopForm& input, const ReducedTopForm& r, int sign = 1) {
  const int N = static_cast<int>(input.size());
  const UDiffForm lhs = top_form_as_udiff(input, ma.nvars()) - representative(ma, r.coordinates, N);
  return twisted_differential(ma.f(), r.eta, sign) == lhs;
}

namespace detail {

inline Rational form_weighted_degree(const DiffForm& w, const std::vector<Rational>& wt) {
  Rational best = 0;
  for (const auto& [s, p] : w.components()) {
    Rational dx = 0;
    for (std::size_t i = 0; i < wt.size(); ++i)
      if (s & (IndexSet{1} << i)) dx += wt[i];
    best = std::max(best, Rational(p.weighted_degree(wt) + dx));
  }
  return best;
}

}  // namespace detail

/// Input minus representative lies in the image of the truncated twisted
/// differential, decided by exact rank in the expanded matrices.
inline bool reduction_in_truncated_image(const MilnorAlgebra& ma, const TopForm& input, const ReducedTopForm& r,
                                         int sign = 1) {
  const std::size_t n = ma.nvars();
  const int N = static_cast<int>(input.size());
  const UDiffForm diff = top_form_as_udiff(input, n) - representative(ma, r.coordinates, N);
  const FiltrationWeights fw = filtration_weights(ma.f());
  Rational need = ma.f().degree();
  for (int j = 0; j < N; ++j) {
    need = std::max(need, detail::form_weighted_degree(diff.coeff(j), fw.w));
    need = std::max(need, detail::form_weighted_degree(r.eta.coeff(j), fw.w));
  }
  Integer c = need.get_num() / need.get_den() + 1;
  const TruncatedComplex tc = build_truncated(ma.f(), N, static_cast<int>(c.get_si()), sign);
  return in_twisted_image(tc, diff);
}

struct ConnectionData {
  /// u^2 d/du (m_j dx) = sum_i A_ij(u) m_i dx.
  UPolyMatrix A;
  int order = 0;
  /// Recomputing at order N + 2 reproduces A with vanishing extra coefficients.
  bool stabilized = false;
  int max_u_degree = -1;
};

namespace detail {

inline std::vector<UPoly> connection_column(const MilnorAlgebra& ma, std::size_t j, int N, int sign) {
  TopForm g(static_cast<std::size_t>(N), ExactPoly(ma.nvars()));
  ExactPoly t = ma.f() * ma.basis_poly(j);
  t *= Rational(-sign);
  g[0] = t;
  return reduce_topform(ma, std::move(g), sign).coordinates;
}

inline UPolyMatrix connection_at(const MilnorAlgebra& ma, int N, int sign) {
  const std::size_t mu = ma.mu();
  std::vector<std::future<std::vector<UPoly>>> cols;
  for (std::size_t j = 0; j < mu; ++j)
    cols.push_back(std::async(std::launch::async, [&ma, j, N, sign] { return connection_column(ma, j, N, sign); }));
  UPolyMatrix A(mu, mu);
  for (std::size_t j = 0; j < mu; ++j) {
    auto c = cols[j].get();
    for (std::size_t i = 0; i < mu; ++i) A(i, j) = c[i];
  }
  return A;
}

}  // namespace detail

inline ConnectionData connection_matrix(const MilnorAlgebra& ma, int N, int sign = 1) {
  if (N < 1) throw std::invalid_argument("truncation order must be >= 1");
  ConnectionData cd{detail::connection_at(ma, N, sign), N, false, -1};
  const UPolyMatrix wide = detail::connection_at(ma, N + 2, sign);
  cd.stabilized = wide == cd.A;
  for (std::size_t i = 0; i < ma.mu(); ++i)
    for (std::size_t j = 0; j < ma.mu(); ++j) cd.max_u_degree = std::max(cd.max_u_degree, cd.A(i, j).degree());
  if (!cd.stabilized)
    throw NoStabilization("connection matrix does not stabilize at u-order " + std::to_string(N));
  return cd;
}

/// Coefficient matrix of u^k in A(u).
inline QMatrix u_coefficient(const UPolyMatrix& A, int k) {
  QMatrix m(A.rows(), A.cols());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) m(i, j) = A(i, j).coeff(k);
  return m;
}

struct SpectrumData {
  std::vector<Rational> weights;
  std::vector<Rational> by_basis;  // alpha(m_i) in Milnor basis order
  std::vector<Rational> values;    // sorted multiset
  bool symmetric = false;          // alpha -> n - alpha preserves the multiset
};

inline bool quasi_homogeneity_certificate(const ExactPoly& f, const std::vector<Rational>& w) {
  if (w.size() != f.nvars()) return false;
  ExactPoly euler(f.nvars());
  for (std::size_t i = 0; i < f.nvars(); ++i) {
    ExactPoly t = ExactPoly::variable(f.nvars(), i) * f.derivative(i);
    t *= w[i];
    euler += t;
  }
  return euler == f;
}

inline SpectrumData spectrum_qh(const MilnorAlgebra& ma, const std::vector<Rational>& weights) {
  if (!quasi_homogeneity_certificate(ma.f(), weights))
    throw NotQuasiHomogeneous("f is not equal to its weighted Euler field for the given weights");
  SpectrumData sd{weights, {}, {}, false};
  for (const auto& e : ma.basis()) {
    Rational a = 0;
    for (std::size_t i = 0; i < e.size(); ++i) a += Rational(e[i] + 1) * weights[i];
    sd.by_basis.push_back(a);
  }
  sd.values = sd.by_basis;
  std::sort(sd.values.begin(), sd.values.end());
  std::vector<Rational> mirror;
  for (const auto& a : sd.values) mirror.push_back(Rational(static_cast<long>(ma.nvars())) - a);
  std::sort(mirror.begin(), mirror.end());
  sd.symmetric = mirror == sd.values;
  return sd;
}

inline SpectrumData spectrum_qh(const MilnorAlgebra& ma) {
  auto w = quasi_homogeneous_weights(ma.f());
  if (!w) throw NotQuasiHomogeneous("no positive quasi-homogeneous weights");
  return spectrum_qh(ma, *w);
}

/// G_ij = lambda(m_i m_j).
inline QMatrix residue_pairing(const MilnorAlgebra& ma, const ResidueFunctional& lam) {
  QMatrix G(ma.mu(), ma.mu());
  for (std::size_t i = 0; i < ma.mu(); ++i)
    for (std::size_t j = i; j < ma.mu(); ++j) {
      G(i, j) = lam.apply(ma, ma.basis_poly(i) * ma.basis_poly(j));
      G(j, i) = G(i, j);
    }
  return G;
}

/// G_ij != 0 implies alpha_i + alpha_j = n.
inline bool spectrum_pairing_check(const QMatrix& G, const SpectrumData& sd, std::size_t n) {
  for (std::size_t i = 0; i < G.rows(); ++i)
    for (std::size_t j = 0; j < G.cols(); ++j)
      if (G(i, j) != 0 && sd.by_basis[i] + sd.by_basis[j] != static_cast<long>(n)) return false;
  return true;
}

/// prod_i (t - (alpha_i + shift)), lowest degree first.
inline std::vector<Rational> spectrum_polynomial(const std::vector<Rational>& alphas, const Rational& shift) {
  std::vector<Rational> p{Rational(1)};
  for (const auto& a : alphas) {
    std::vector<Rational> q(p.size() + 1);
    const Rational r = a + shift;
    for (std::size_t i = 0; i < p.size(); ++i) {
      q[i + 1] += p[i];
      q[i] -= r * p[i];
    }
    p = std::move(q);
  }
  return p;
}

struct BrieskornLattice {
  MilnorAlgebra ma;
  int order = 0;
  int sign = 1;
  ConnectionData connection;
  ResidueFunctional residue;
  QMatrix gram;
  std::string tameness;  // certifying route, or "assumed"
  std::size_t rank() const { return ma.mu(); }
};

inline BrieskornLattice brieskorn_lattice(const ExactPoly& f, int N, bool assume_tame = false, int sign = 1) {
  std::string route = "assumed";
  if (!assume_tame) {
    const auto tp = tameness_proxy(f);
    if (tp.verdict != TamenessVerdict::tame_certified)
      throw TamenessUnverified("tameness proxy could not certify f; pass an explicit override to proceed");
    route = tp.route;
  }
  MilnorAlgebra ma = milnor_algebra(f);
  ConnectionData cd = connection_matrix(ma, N, sign);
  ResidueFunctional lam = residue_functional(ma);
  QMatrix G = residue_pairing(ma, lam);
  return BrieskornLattice{std::move(ma), N, sign, std::move(cd), std::move(lam), std::move(G), route};
}

/// u-linear part of A minus the spectrum on the calibration example; the
/// matrix must be scalar there.
inline Rational calibrate_spectrum_shift(const BrieskornLattice& bl, const SpectrumData& sd) {
  if (bl.rank() != 1) throw std::invalid_argument("calibration needs a rank-one lattice");
  return bl.connection.A(0, 0).coeff(1) - sd.values[0];
}

}  // namespace lglab
