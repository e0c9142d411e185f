#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lglab/errors.hpp"
#include "lglab/groebner.hpp"
#include "lglab/linalg.hpp"
#include "lglab/poly.hpp"

namespace lglab {

inline std::vector<ExactPoly> jacobian(const ExactPoly& f) {
  std::vector<ExactPoly> j;
  for (std::size_t i = 0; i < f.nvars(); ++i) j.push_back(f.derivative(i));
  return j;
}

/// Q[x]/(df/dx_1, ..., df/dx_n) with its standard-monomial basis. The
/// Jacobian Groebner basis tracks its lift to the partial derivatives.
class MilnorAlgebra {
 public:
  const ExactPoly& f() const noexcept { return f_; }
  std::size_t nvars() const noexcept { return f_.nvars(); }
  const GroebnerBasis& gb() const noexcept { return gb_; }
  const std::vector<Exponent>& basis() const noexcept { return basis_; }
  std::size_t mu() const noexcept { return basis_.size(); }

  std::optional<std::size_t> index_of(const Exponent& e) const {
    auto it = index_.find(e);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Coordinates of nf(p) in the monomial basis.
  std::vector<Rational> coordinates(const ExactPoly& p) const { return coordinates_of_normal_form(normal_form(p, gb_)); }

  std::vector<Rational> coordinates_of_normal_form(const ExactPoly& nf) const {
    std::vector<Rational> c(mu());
    for (const auto& [e, v] : nf.terms()) {
      auto idx = index_of(e);
      if (!idx) throw InvariantError("normal form term outside the standard monomial basis");
      c[*idx] = v;
    }
    return c;
  }

  ExactPoly basis_poly(std::size_t i) const { return ExactPoly::monomial(basis_.at(i), 1); }

  /// Matrix of multiplication by p: column j = coordinates of p * m_j.
  QMatrix multiplication_matrix(const ExactPoly& p) const {
    QMatrix m(mu(), mu());
    for (std::size_t j = 0; j < mu(); ++j) {
      auto c = coordinates(p * basis_poly(j));
      for (std::size_t i = 0; i < mu(); ++i) m(i, j) = c[i];
    }
    return m;
  }

 private:
  friend MilnorAlgebra milnor_algebra(const ExactPoly& f);
  MilnorAlgebra(ExactPoly f, GroebnerBasis gb, std::vector<Exponent> basis)
      : f_(std::move(f)), gb_(std::move(gb)), basis_(std::move(basis)) {
    for (std::size_t i = 0; i < basis_.size(); ++i) index_.emplace(basis_[i], i);
  }

  ExactPoly f_;
  GroebnerBasis gb_;
  std::vector<Exponent> basis_;
  std::map<Exponent, std::size_t> index_;
};

inline GroebnerBasis jacobian_basis(const ExactPoly& f) {
  return buchberger(jacobian(f), MonomialOrder::degrevlex(), /*track_lift=*/true);
}

inline MilnorAlgebra milnor_algebra(const ExactPoly& f) {
  GroebnerBasis gb = jacobian_basis(f);
  auto basis = gb.standard_monomials();
  if (!basis) throw InfiniteMilnorNumber("Jacobian ideal is not zero-dimensional: critical locus is not isolated");
  return MilnorAlgebra(f, std::move(gb), std::move(*basis));
}

/// Residue functional on the Milnor algebra: values on the monomial basis.
struct ResidueFunctional {
  std::vector<Rational> values;
  /// Bezoutian coordinates B with B = G^{-1}, G the Gram matrix of the functional.
  QMatrix bezoutian;

  Rational apply(const MilnorAlgebra& ma, const ExactPoly& p) const {
    auto c = ma.coordinates(p);
    Rational acc = 0;
    for (std::size_t i = 0; i < c.size(); ++i) acc += c[i] * values[i];
    return acc;
  }
};

namespace detail {

// Re-embed a polynomial on n variables into 2n variables at offset.
inline ExactPoly embed(const ExactPoly& p, std::size_t total, std::size_t offset) {
  ExactPoly r(total);
  for (const auto& [e, c] : p.terms()) {
    Exponent big(total, 0);
    for (std::size_t i = 0; i < e.size(); ++i) big[offset + i] = e[i];
    r.add_term(std::move(big), c);
  }
  return r;
}

// Column j of the Bezoutian matrix: g(y_1..y_{j-1}, x_j, ..., x_n) divided-differenced in slot j.
// Variables 0..n-1 are x, n..2n-1 are y.
inline ExactPoly divided_difference(const ExactPoly& g, std::size_t j) {
  const std::size_t n = g.nvars();
  ExactPoly r(2 * n);
  for (const auto& [e, c] : g.terms()) {
    if (e[j] == 0) continue;
    Exponent base(2 * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (i < j)
        base[n + i] = e[i];
      else if (i > j)
        base[i] = e[i];
    }
    for (int s = 0; s < e[j]; ++s) {
      Exponent t = base;
      t[j] = s;
      t[n + j] = e[j] - 1 - s;
      r.add_term(std::move(t), c);
    }
  }
  return r;
}

}  // namespace detail

/// Grothendieck residue of g dx / (f_1 ... f_n) for f_i the partials of f,
/// computed from the Bezoutian of the Jacobian. Normalized so that the
/// functional of the Hessian determinant equals mu.
inline ResidueFunctional residue_functional(const MilnorAlgebra& ma) {
  const std::size_t n = ma.nvars(), mu = ma.mu();
  ResidueFunctional out{std::vector<Rational>(mu), QMatrix(mu, mu)};
  if (mu == 0) return out;

  const auto partials = jacobian(ma.f());
  std::vector<std::vector<ExactPoly>> bez(n, std::vector<ExactPoly>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) bez[i][j] = detail::divided_difference(partials[i], j);
  const ExactPoly delta = determinant(bez, 2 * n);

  // Split delta = sum_beta y^beta P_beta(x).
  std::map<Exponent, ExactPoly> by_y;
  for (const auto& [e, c] : delta.terms()) {
    Exponent ex(e.begin(), e.begin() + static_cast<long>(n));
    Exponent ey(e.begin() + static_cast<long>(n), e.end());
    auto [it, ins] = by_y.try_emplace(ey, ExactPoly(n));
    it->second.add_term(std::move(ex), c);
  }
  std::vector<ExactPoly> q(mu, ExactPoly(n));
  for (const auto& [ey, px] : by_y) {
    auto cx = ma.coordinates(px);
    for (std::size_t i = 0; i < mu; ++i)
      if (cx[i] != 0) q[i].add_term(ey, cx[i]);
  }
  for (std::size_t i = 0; i < mu; ++i) {
    auto cy = ma.coordinates(q[i]);
    for (std::size_t j = 0; j < mu; ++j) out.bezoutian(i, j) = cy[j];
  }
  auto gram = inverse(out.bezoutian);
  if (!gram) throw SocleNotOneDimensional("Bezoutian matrix is singular; residue pairing undefined");
  auto one = ma.index_of(Exponent(n, 0));
  if (!one) throw InvariantError("1 is not a standard monomial of a proper Jacobian ideal");
  for (std::size_t i = 0; i < mu; ++i) out.values[i] = (*gram)(i, *one);
  return out;
}

}  // namespace lglab
