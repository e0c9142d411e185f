#pragma once

// Linear algebra over the principal ideal domain Q[u].

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lglab/linalg.hpp"
#include "lglab/rational.hpp"

namespace lglab {

/// Univariate polynomial in u, coefficients lowest degree first, no trailing zeros.
class UPoly {
 public:
  UPoly() = default;
  UPoly(const Rational& c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) coeffs_.push_back(c);
  }
  explicit UPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static UPoly u_power(int k, const Rational& c = 1) {
    std::vector<Rational> v(static_cast<std::size_t>(k) + 1);
    v.back() = c;
    return UPoly(std::move(v));
  }

  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_unit() const noexcept { return coeffs_.size() == 1; }
  const Rational& leading() const { return coeffs_.back(); }
  Rational coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(coeffs_.size())) ? coeffs_[static_cast<std::size_t>(k)] : Rational(0);
  }

  /// u-adic valuation; -1 for zero.
  int valuation() const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (coeffs_[i] != 0) return static_cast<int>(i);
    return -1;
  }

  Rational evaluate(const Rational& x) const {
    Rational acc = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
    return acc;
  }

  UPoly monic() const {
    if (is_zero()) return *this;
    UPoly r = *this;
    const Rational l = leading();
    for (auto& c : r.coeffs_) c /= l;
    return r;
  }

  UPoly& operator+=(const UPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }
  UPoly& operator-=(const UPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
  }
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator-(UPoly a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> r(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return UPoly(std::move(r));
  }
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.coeffs_ == b.coeffs_; }

  /// Euclidean division: *this = q * d + r with deg r < deg d.
  std::pair<UPoly, UPoly> divmod(const UPoly& d) const {
    if (d.is_zero()) throw std::domain_error("division by zero polynomial");
    if (degree() < d.degree()) return {UPoly(), *this};
    std::vector<Rational> rem = coeffs_;
    std::vector<Rational> q(static_cast<std::size_t>(degree() - d.degree()) + 1);
    const Rational inv = Rational(1) / d.leading();
    for (int k = degree(); k >= d.degree(); --k) {
      const Rational c = rem[static_cast<std::size_t>(k)] * inv;
      if (c == 0) continue;
      q[static_cast<std::size_t>(k - d.degree())] = c;
      for (int i = 0; i <= d.degree(); ++i)
        rem[static_cast<std::size_t>(k - d.degree() + i)] -= c * d.coeffs_[static_cast<std::size_t>(i)];
    }
    return {UPoly(std::move(q)), UPoly(std::move(rem))};
  }

  bool divides(const UPoly& b) const {
    if (is_zero()) return b.is_zero();
    return b.divmod(*this).second.is_zero();
  }

  std::string to_string(const std::string& var = "u") const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
      const Rational& c = coeffs_[i];
      if (c == 0) continue;
      const bool neg = c < 0;
      const Rational mag = abs(c);
      if (first)
        os << (neg ? "-" : "");
      else
        os << (neg ? " - " : " + ");
      first = false;
      if (i == 0) {
        os << mag.get_str();
      } else {
        if (mag != 1) os << mag.get_str() << "*";
        os << var;
        if (i > 1) os << "^" << i;
      }
    }
    return os.str();
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }
  std::vector<Rational> coeffs_;
};

inline UPoly gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Rational roots of p (distinct), via the rational root theorem.
inline std::vector<Rational> rational_roots(const UPoly& p) {
  std::vector<Rational> roots;
  if (p.degree() < 1) return roots;
  if (p.coeff(0) == 0) roots.push_back(0);
  const int v = p.valuation();
  std::vector<Rational> shifted(p.coeffs().begin() + v, p.coeffs().end());
  Integer l = 1;
  for (const auto& c : shifted) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> ic;
  for (const auto& c : shifted) ic.push_back(Rational(c * l).get_num());
  if (ic.size() < 2) return roots;
  auto divisors = [](Integer a) {
    a = abs(a);
    std::vector<Integer> d;
    if (a > 1000000) return d;  // coefficient too large for trial division
    for (Integer k = 1; k * k <= a; ++k)
      if (a % k == 0) {
        d.push_back(k);
        if (k * k != a) d.push_back(a / k);
      }
    return d;
  };
  const UPoly q(shifted);
  for (const auto& num : divisors(ic.front()))
    for (const auto& den : divisors(ic.back()))
      for (int s : {1, -1}) {
        Rational r(num * s, den);
        r.canonicalize();
        if (q.evaluate(r) == 0 && std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
      }
  std::sort(roots.begin(), roots.end());
  return roots;
}

class UPolyMatrix {
 public:
  UPolyMatrix() = default;
  UPolyMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static UPolyMatrix identity(std::size_t n) {
    UPolyMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Rational(1);
    return m;
  }

  /// a + u * b for two rational matrices of equal shape.
  static UPolyMatrix pencil(const QMatrix& a, const QMatrix& b) {
    UPolyMatrix m(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = UPoly(std::vector<Rational>{a(i, j), b(i, j)});
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  UPoly& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const UPoly& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  friend UPolyMatrix operator*(const UPolyMatrix& a, const UPolyMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
    UPolyMatrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k).is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!b(k, j).is_zero()) r(i, j) += a(i, k) * b(k, j);
      }
    return r;
  }
  friend bool operator==(const UPolyMatrix& a, const UPolyMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row_dst -= q * row_src
  void row_axpy(std::size_t dst, const UPoly& q, std::size_t src, std::size_t from = 0) {
    for (std::size_t j = from; j < cols_; ++j) {
      const UPoly& s = (*this)(src, j);
      if (!s.is_zero()) (*this)(dst, j) -= q * s;
    }
  }
  /// col_dst -= q * col_src
  void col_axpy(std::size_t dst, const UPoly& q, std::size_t src, std::size_t from = 0) {
    for (std::size_t i = from; i < rows_; ++i) {
      const UPoly& s = (*this)(i, src);
      if (!s.is_zero()) (*this)(i, dst) -= q * s;
    }
  }
  void scale_row(std::size_t r, const Rational& c) {
    for (std::size_t j = 0; j < cols_; ++j)
      if (!(*this)(r, j).is_zero()) (*this)(r, j) = (*this)(r, j) * UPoly(c);
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<UPoly> data_;
};

/// Determinant over Q[u] by fraction-free elimination (exact division in Q[u]).
inline UPoly determinant(const UPolyMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return Rational(1);
  UPolyMatrix a = m;
  UPoly prev = Rational(1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k).is_zero()) ++p;
    if (p == n) return {};
    if (p != k) {
      a.swap_rows(p, k);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)).divmod(prev).first;
      a(i, k) = UPoly();
    }
    prev = a(k, k);
  }
  return negate ? -a(n - 1, n - 1) : a(n - 1, n - 1);
}

/// U * M * V = S, U and V invertible over Q[u], S diagonal with monic
/// invariant factors d_1 | d_2 | ..., zeros last.
struct SmithForm {
  UPolyMatrix U, S, V;
  std::vector<UPoly> invariant_factors;  // nonzero diagonal entries
};

namespace detail {

// In-place Smith reduction. U, V may be null (invariant factors only).
// Pivot: a minimal degree nonzero entry of the active block, reselected after
// every reducing pass, made monic before dividing.
inline std::vector<UPoly> smith_reduce(UPolyMatrix& m, UPolyMatrix* U, UPolyMatrix* V) {
  const std::size_t R = m.rows(), C = m.cols();
  std::vector<UPoly> factors;
  for (std::size_t t = 0; t < std::min(R, C); ++t) {
    auto place_pivot = [&] {
      int best = -1;
      std::size_t pr = 0, pc = 0;
      for (std::size_t i = t; i < R && best != 0; ++i)
        for (std::size_t j = t; j < C; ++j) {
          const UPoly& e = m(i, j);
          if (e.is_zero() || (best >= 0 && e.degree() >= best)) continue;
          best = e.degree();
          pr = i;
          pc = j;
          if (best == 0) break;
        }
      if (best < 0) return false;
      m.swap_rows(t, pr);
      if (U) U->swap_rows(t, pr);
      m.swap_cols(t, pc);
      if (V) V->swap_cols(t, pc);
      const Rational lc = m(t, t).leading();
      if (lc != 1) {
        m.scale_row(t, Rational(1) / lc);
        if (U) U->scale_row(t, Rational(1) / lc);
      }
      return true;
    };
    if (!place_pivot()) break;

    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < R; ++i) {
        if (m(i, t).is_zero()) continue;
        auto [q, r] = m(i, t).divmod(m(t, t));
        m.row_axpy(i, q, t, t);
        if (U) U->row_axpy(i, q, t);
        dirty = dirty || !r.is_zero();
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        if (m(t, j).is_zero()) continue;
        auto [q, r] = m(t, j).divmod(m(t, t));
        m.col_axpy(j, q, t, t);
        if (V) V->col_axpy(j, q, t);
        dirty = dirty || !r.is_zero();
      }
      if (!dirty && !m(t, t).is_unit()) {
        // The pivot must divide the remaining block.
        for (std::size_t i = t + 1; i < R && !dirty; ++i)
          for (std::size_t j = t + 1; j < C; ++j)
            if (!m(i, j).is_zero() && !m(t, t).divides(m(i, j))) {
              m.row_axpy(t, Rational(-1), i, t);
              if (U) U->row_axpy(t, Rational(-1), i);
              dirty = true;
              break;
            }
      }
      if (!dirty) break;
      // A remainder of lower degree than the pivot now sits in the active block.
      place_pivot();
    }
    factors.push_back(m(t, t));
  }
  return factors;
}

}  // namespace detail

inline SmithForm smith_normal_form(const UPolyMatrix& M) {
  SmithForm out{UPolyMatrix::identity(M.rows()), M, UPolyMatrix::identity(M.cols()), {}};
  out.invariant_factors = detail::smith_reduce(out.S, &out.U, &out.V);
  return out;
}

/// Invariant factors only; no transforms are accumulated.
inline std::vector<UPoly> invariant_factors(UPolyMatrix M) { return detail::smith_reduce(M, nullptr, nullptr); }

/// Finitely presented Q[u]-module coker(M : Q[u]^c -> Q[u]^r).
struct ModuleReport {
  std::size_t free_rank = 0;
  std::vector<UPoly> torsion;           // monic nonunit invariant factors
  std::vector<int> u_torsion_orders;    // u-adic valuation of each torsion factor
  std::vector<UPoly> torsion_away_from_zero;  // torsion after discarding pure u-power parts
  bool is_free() const { return torsion.empty(); }
  /// Rank after inverting u.
  std::size_t generic_rank() const { return free_rank; }
};

inline ModuleReport module_report_from_factors(const std::vector<UPoly>& factors, std::size_t ambient_rank) {
  ModuleReport rep;
  if (factors.size() > ambient_rank) throw std::invalid_argument("more invariant factors than rows");
  rep.free_rank = ambient_rank - factors.size();
  for (const auto& d : factors) {
    if (d.is_unit()) continue;
    rep.torsion.push_back(d);
    const int v = d.valuation();
    rep.u_torsion_orders.push_back(v);
    UPoly rest(std::vector<Rational>(d.coeffs().begin() + v, d.coeffs().end()));
    if (!rest.is_unit()) rep.torsion_away_from_zero.push_back(rest.monic());
  }
  return rep;
}

inline ModuleReport module_report(const UPolyMatrix& presentation, std::size_t ambient_rank) {
  if (presentation.rows() != ambient_rank) throw std::invalid_argument("presentation must have ambient_rank rows");
  return module_report_from_factors(invariant_factors(presentation), ambient_rank);
}

/// Number of torsion factors vanishing at u_o: the dimension of the
/// (u - u_o)-torsion of the module.
inline std::size_t torsion_multiplicity_at(const ModuleReport& rep, const Rational& u_o) {
  std::size_t k = 0;
  for (const auto& d : rep.torsion)
    if (d.evaluate(u_o) == 0) ++k;
  return k;
}

struct BasicuVerdict {
  bool consistent = false;
  bool constant_fiber_dims = false;
  bool free = false;
  bool dimension_formula_holds = true;
  std::optional<Rational> witness_u;
  std::optional<UPoly> witness_factor;
  std::vector<std::string> discrepancies;
};

/// Cross-validates fiber-dimension constancy against freeness of the
/// cohomology modules computed from the same complex of free Q[u]-modules.
/// dims[s][k] is the fiber dimension of H^k at samples[s]; modules[k] is H^k.
inline BasicuVerdict basicu_check(const std::vector<Rational>& samples,
                                  const std::vector<std::vector<std::size_t>>& dims,
                                  const std::vector<ModuleReport>& modules) {
  if (samples.size() != dims.size()) throw std::invalid_argument("one dimension row per sample required");
  BasicuVerdict v;
  v.constant_fiber_dims = true;
  for (std::size_t s = 1; s < dims.size(); ++s)
    if (dims[s] != dims[0]) {
      v.constant_fiber_dims = false;
      if (!v.witness_u) v.witness_u = samples[s];
    }
  v.free = std::all_of(modules.begin(), modules.end(), [](const ModuleReport& m) { return m.is_free(); });

  for (std::size_t s = 0; s < dims.size(); ++s)
    for (std::size_t k = 0; k < modules.size() && k < dims[s].size(); ++k) {
      std::size_t predicted = modules[k].free_rank + torsion_multiplicity_at(modules[k], samples[s]);
      if (k + 1 < modules.size()) predicted += torsion_multiplicity_at(modules[k + 1], samples[s]);
      if (predicted != dims[s][k]) {
        v.dimension_formula_holds = false;
        v.discrepancies.push_back("H^" + std::to_string(k) + " at u=" + samples[s].get_str() + ": fiber dim " +
                                  std::to_string(dims[s][k]) + " but module predicts " + std::to_string(predicted));
      }
    }

  v.consistent = (v.constant_fiber_dims == v.free) && v.dimension_formula_holds;
  if (v.constant_fiber_dims && !v.free) {
    for (const auto& m : modules)
      if (!m.torsion.empty()) {
        v.witness_factor = m.torsion.front();
        auto roots = rational_roots(m.torsion.front());
        v.witness_u.reset();
        for (const auto& r : roots)
          if (std::find(samples.begin(), samples.end(), r) == samples.end()) {
            v.witness_u = r;
            break;
          }
        break;
      }
    v.discrepancies.push_back("fiber dimensions constant on the samples but torsion factor " +
                              v.witness_factor->to_string() + " present (sampling miss)");
  } else if (!v.constant_fiber_dims && v.free) {
    v.discrepancies.push_back("modules free but fiber dimensions vary at u=" + v.witness_u->get_str());
  } else if (!v.constant_fiber_dims && !v.free) {
    for (const auto& m : modules)
      if (!m.torsion.empty()) {
        v.witness_factor = m.torsion.front();
        break;
      }
  }
  return v;
}

}  // namespace lglab
