#pragma once

// Independent predictions: Newton-polytope Milnor numbers, Betti numbers of
// smooth projective hypersurfaces, rank predictions, and a tameness proxy.

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lglab/errors.hpp"
#include "lglab/groebner.hpp"
#include "lglab/linalg.hpp"
#include "lglab/milnor.hpp"
#include "lglab/poly.hpp"
#include "lglab/twisted_derham.hpp"

namespace lglab {

using Point = std::vector<Rational>;

namespace detail {

inline std::size_t affine_rank(const std::vector<Point>& pts) {
  if (pts.size() < 2) return 0;
  const std::size_t k = pts[0].size();
  QMatrix m(pts.size() - 1, k);
  for (std::size_t i = 1; i < pts.size(); ++i)
    for (std::size_t j = 0; j < k; ++j) m(i - 1, j) = pts[i][j] - pts[0][j];
  return rank_bareiss(m);
}

struct Facet {
  std::vector<Rational> normal;  // outward: normal . x <= offset on the polytope
  Rational offset;
  std::vector<std::size_t> members;  // indices of points on the facet
};

// Facets of conv(pts) in R^k; pts must affinely span R^k.
inline std::vector<Facet> facets(const std::vector<Point>& pts) {
  const std::size_t k = pts[0].size(), m = pts.size();
  std::vector<Facet> out;
  std::set<std::vector<std::size_t>> seen;
  std::vector<std::size_t> pick(k);
  std::vector<bool> mask(m, false);
  std::fill(mask.begin(), mask.begin() + static_cast<long>(std::min(k, m)), true);
  if (m < k) return out;
  do {
    std::size_t t = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (mask[i]) pick[t++] = i;
    // Normal via signed maximal minors of the difference vectors.
    std::vector<Rational> c(k);
    for (std::size_t j = 0; j < k; ++j) {
      QMatrix sub(k - 1, k - 1);
      for (std::size_t r = 1; r < k; ++r) {
        std::size_t cc = 0;
        for (std::size_t col = 0; col < k; ++col) {
          if (col == j) continue;
          sub(r - 1, cc++) = pts[pick[r]][col] - pts[pick[0]][col];
        }
      }
      const Rational d = k == 1 ? Rational(1) : determinant(sub);
      c[j] = (j % 2 == 0) ? d : Rational(-d);
    }
    if (std::all_of(c.begin(), c.end(), [](const Rational& x) { return x == 0; })) continue;
    auto val = [&](const Point& p) {
      Rational s = 0;
      for (std::size_t j = 0; j < k; ++j) s += c[j] * p[j];
      return s;
    };
    const Rational b = val(pts[pick[0]]);
    bool le = true, ge = true;
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < m; ++i) {
      const Rational v = val(pts[i]);
      if (v > b) le = false;
      if (v < b) ge = false;
      if (v == b) members.push_back(i);
    }
    if (!le && !ge) continue;
    if (!seen.insert(members).second) continue;
    Facet fct{c, b, members};
    if (!le) {
      for (auto& x : fct.normal) x = -x;
      fct.offset = -fct.offset;
    }
    out.push_back(std::move(fct));
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return out;
}

}  // namespace detail

/// k-dimensional volume of conv(pts) in R^k (0 if not full-dimensional).
inline Rational polytope_volume(const std::vector<Point>& pts) {
  if (pts.empty()) return 0;
  const std::size_t k = pts[0].size();
  if (k == 0) return 1;
  if (detail::affine_rank(pts) < k) return 0;
  if (k == 1) {
    auto [lo, hi] = std::minmax_element(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a[0] < b[0]; });
    return (*hi)[0] - (*lo)[0];
  }
  // Pyramids over facets from pts[0]: height * facet volume, computed on a
  // coordinate projection so no square roots appear.
  Rational vol = 0;
  for (const auto& fct : detail::facets(pts)) {
    std::size_t j = 0;
    while (fct.normal[j] == 0) ++j;
    Rational h = fct.offset;
    for (std::size_t i = 0; i < k; ++i) h -= fct.normal[i] * pts[0][i];
    if (h == 0) continue;
    std::vector<Point> proj;
    for (std::size_t idx : fct.members) {
      Point p;
      for (std::size_t i = 0; i < k; ++i)
        if (i != j) p.push_back(pts[idx][i]);
      proj.push_back(std::move(p));
    }
    vol += h * polytope_volume(proj) / abs(fct.normal[j]);
  }
  return vol / static_cast<long>(k);
}

struct NewtonData {
  std::vector<Exponent> support;
  std::size_t nvars = 0;
  bool convenient = false;  // a pure power of every variable occurs
  std::string nondegeneracy_method = "groebner: x_i df_g/dx_i = 0 with 1 - t*prod(x_i) has basis {1}";
  std::optional<bool> nondegenerate;
  std::optional<std::vector<Exponent>> degenerate_face;
  std::size_t faces_checked = 0;
};

/// Face polynomial of f on a set of exponents.
inline ExactPoly face_polynomial(const ExactPoly& f, const std::vector<Exponent>& face) {
  ExactPoly g(f.nvars());
  for (const auto& e : face) g.add_term(e, f.coefficient(e));
  return g;
}

/// Whether the face polynomial has a critical point with all coordinates nonzero.
inline bool has_torus_critical_point(const ExactPoly& g) {
  const std::size_t n = g.nvars();
  std::vector<ExactPoly> gens;
  auto lift = [&](const ExactPoly& p) { return detail::embed(p, n + 1, 0); };
  for (std::size_t i = 0; i < n; ++i) gens.push_back(lift(ExactPoly::variable(n, i) * g.derivative(i)));
  Exponent all(n + 1, 1);
  ExactPoly sat = ExactPoly::constant(n + 1, 1);
  sat.add_term(all, -1);
  gens.push_back(sat);
  return !buchberger(gens, MonomialOrder::degrevlex()).is_unit();
}

/// Support, convenience, and nondegeneracy on every face of conv({0} u supp f)
/// not containing the origin.
inline NewtonData newton_data(const ExactPoly& f) {
  NewtonData nd;
  nd.nvars = f.nvars();
  for (const auto& [e, c] : f.terms())
    if (total_degree(e) > 0) nd.support.push_back(e);
  const std::size_t n = nd.nvars;
  nd.convenient = n > 0;
  for (std::size_t i = 0; i < n; ++i) {
    bool pure = false;
    for (const auto& e : nd.support) {
      bool only_i = e[i] > 0;
      for (std::size_t j = 0; j < n && only_i; ++j)
        if (j != i && e[j] != 0) only_i = false;
      pure = pure || only_i;
    }
    nd.convenient = nd.convenient && pure;
  }
  if (!nd.convenient) return nd;

  std::vector<Point> pts{Point(n, Rational(0))};
  for (const auto& e : nd.support) {
    Point p;
    for (int a : e) p.push_back(a);
    pts.push_back(std::move(p));
  }
  const auto fcts = detail::facets(pts);
  std::set<std::vector<std::size_t>> faces;
  for (const auto& fct : fcts) faces.insert(fct.members);
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<std::vector<std::size_t>> cur(faces.begin(), faces.end());
    for (std::size_t a = 0; a < cur.size(); ++a)
      for (std::size_t b = a + 1; b < cur.size(); ++b) {
        std::vector<std::size_t> meet;
        std::set_intersection(cur[a].begin(), cur[a].end(), cur[b].begin(), cur[b].end(), std::back_inserter(meet));
        if (!meet.empty() && faces.insert(meet).second) grew = true;
      }
  }
  nd.nondegenerate = true;
  for (const auto& face : faces) {
    if (std::find(face.begin(), face.end(), std::size_t{0}) != face.end()) continue;
    std::vector<Exponent> exps;
    for (std::size_t idx : face) exps.push_back(nd.support[idx - 1]);
    ++nd.faces_checked;
    if (has_torus_critical_point(face_polynomial(f, exps))) {
      nd.nondegenerate = false;
      nd.degenerate_face = exps;
      break;
    }
  }
  return nd;
}

/// Global Milnor number from Newton volumes:
/// mu = sum_k (-1)^{n-k} k! V_k, V_k the total k-volume of coordinate restrictions, V_0 = 1.
inline std::size_t kouchnirenko_mu(const NewtonData& nd) {
  if (!nd.convenient) throw NotConvenient("support does not contain a pure power of every variable");
  if (!nd.nondegenerate.has_value()) throw DegenerateFace("nondegeneracy was not checked");
  if (!*nd.nondegenerate) {
    std::string w;
    for (const auto& e : *nd.degenerate_face) {
      w += w.empty() ? "" : " ";
      w += "(";
      for (std::size_t i = 0; i < e.size(); ++i) w += (i ? "," : "") + std::to_string(e[i]);
      w += ")";
    }
    throw DegenerateFace("face polynomial has a critical point on the torus; face exponents: " + w);
  }
  const std::size_t n = nd.nvars;
  Rational mu = 0;
  Rational fact = 1;
  for (std::size_t k = 0; k <= n; ++k) {
    if (k > 0) fact *= static_cast<long>(k);
    Rational vk = 0;
    if (k == 0) {
      vk = 1;
    } else {
      for (IndexSet s : subsets_of_size(n, static_cast<int>(k))) {
        std::vector<Point> pts{Point(k, Rational(0))};
        for (const auto& e : nd.support) {
          bool inside = true;
          Point p;
          for (std::size_t i = 0; i < n; ++i) {
            if (s & (IndexSet{1} << i))
              p.push_back(e[i]);
            else if (e[i] != 0)
              inside = false;
          }
          if (inside) pts.push_back(std::move(p));
        }
        vk += polytope_volume(pts);
      }
    }
    mu += ((n - k) % 2 == 0 ? fact : Rational(-fact)) * vk;
  }
  if (mu < 0 || mu.get_den() != 1) throw InvariantError("Newton number is not a nonnegative integer: " + mu.get_str());
  return mu.get_num().get_ui();
}

/// Euler characteristic of a smooth degree-d hypersurface in P^n by the
/// recursion chi_n = n d - (d - 1) chi_{n-1}, chi_0 = 0.
inline Integer hypersurface_euler_recursive(int n, int d) {
  Integer chi = 0;
  for (int m = 1; m <= n; ++m) chi = Integer(m) * d - Integer(d - 1) * chi;
  return chi;
}

/// Closed form ((1 - d)^{n+1} - 1) / d + n + 1.
inline Integer hypersurface_euler_closed(int n, int d) {
  Integer p;
  mpz_pow_ui(p.get_mpz_t(), Integer(1 - d).get_mpz_t(), static_cast<unsigned long>(n + 1));
  return (p - 1) / d + n + 1;
}

/// Betti numbers b_0 .. b_{2(n-1)} of a smooth degree-d hypersurface in P^n.
inline std::vector<Integer> hypersurface_betti(int n, int d) {
  if (n < 2 || d < 1) throw PreconditionError("hypersurface Betti numbers need n >= 2 and d >= 1");
  const int m = n - 1;
  const Integer chi = hypersurface_euler_recursive(n, d);
  std::vector<Integer> b(static_cast<std::size_t>(2 * m + 1), 0);
  for (int j = 0; j <= 2 * m; j += 2) b[static_cast<std::size_t>(j)] = 1;
  b[static_cast<std::size_t>(m)] = (m % 2 == 0) ? Integer(chi - m) : Integer(Integer(m + 1) - chi);
  if (b[static_cast<std::size_t>(m)] < 0) throw InvariantError("negative middle Betti number");
  return b;
}

struct RankPrediction {
  std::vector<Integer> ranks;  // k = 0 .. 2n
  std::string provenance;      // "milnor-sum" or "hypersurface-betti"
};

/// rank H^k = b_{k-2}(V) for the smooth degree-d hypersurface V in P^n.
inline RankPrediction predicted_ranks_hypersurface(int n, int d) {
  if (d < 2) throw PreconditionError("rank prediction needs degree d >= 2");
  const auto b = hypersurface_betti(n, d);
  RankPrediction rp{std::vector<Integer>(static_cast<std::size_t>(2 * n + 1), 0), "hypersurface-betti"};
  for (std::size_t j = 0; j < b.size(); ++j) rp.ranks[j + 2] = b[j];
  return rp;
}

enum class TamenessVerdict { tame_certified, unknown };

inline std::string to_string(TamenessVerdict v) { return v == TamenessVerdict::tame_certified ? "tame-certified" : "unknown"; }

struct TamenessReport {
  TamenessVerdict verdict = TamenessVerdict::unknown;
  /// "newton-nondegenerate", "leading-form-isolated", or empty.
  std::string route;
  NewtonData newton;
  bool leading_form_isolated = false;
};

/// Sufficient conditions only: convenient and nondegenerate at infinity, or
/// the weighted leading form has an isolated critical point. Never asserts non-tameness.
inline TamenessReport tameness_proxy(const ExactPoly& f) {
  TamenessReport rep;
  rep.newton = newton_data(f);
  if (rep.newton.convenient && rep.newton.nondegenerate.value_or(false)) {
    rep.verdict = TamenessVerdict::tame_certified;
    rep.route = "newton-nondegenerate";
  }
  if (!f.is_constant()) {
    const ExactPoly top = weighted_leading_form(f, filtration_weights(f));
    rep.leading_form_isolated =
        f.nvars() > 0 && buchberger(jacobian(top), MonomialOrder::degrevlex()).is_zero_dimensional();
    if (rep.leading_form_isolated && rep.verdict != TamenessVerdict::tame_certified) {
      rep.verdict = TamenessVerdict::tame_certified;
      rep.route = "leading-form-isolated";
    }
  }
  return rep;
}

/// mu in degree n for tame f with isolated critical points.
inline RankPrediction predicted_rank_tame(const ExactPoly& f, bool assume_tame = false) {
  if (!assume_tame && tameness_proxy(f).verdict != TamenessVerdict::tame_certified)
    throw TamenessUnverified("tameness proxy could not certify f");
  std::optional<MilnorAlgebra> ma;
  try {
    ma.emplace(milnor_algebra(f));
  } catch (const InfiniteMilnorNumber& e) {
    throw NonIsolatedCritical(e.what());
  }
  const std::size_t n = f.nvars();
  RankPrediction rp{std::vector<Integer>(2 * n + 1, 0), "milnor-sum"};
  rp.ranks[n] = static_cast<unsigned long>(ma->mu());
  return rp;
}

}  // namespace lglab
