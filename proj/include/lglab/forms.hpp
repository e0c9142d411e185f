#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "lglab/poly.hpp"

namespace lglab {

/// Strictly increasing index subset {i_1 < ... < i_k}, bit i set for dx_{i+1}.
using IndexSet = std::uint32_t;

inline int subset_size(IndexSet s) { return std::popcount(s); }

/// Sign of dx_i ^ dx_I relative to the sorted wedge dx_{I + i}; 0 if i is in I.
inline int insertion_sign(std::size_t i, IndexSet s) {
  if (s & (IndexSet{1} << i)) return 0;
  const IndexSet below = s & ((IndexSet{1} << i) - 1);
  return (std::popcount(below) % 2 == 0) ? 1 : -1;
}

inline std::vector<IndexSet> subsets_of_size(std::size_t n, int k) {
  std::vector<IndexSet> out;
  for (IndexSet s = 0; s < (IndexSet{1} << n); ++s)
    if (subset_size(s) == k) out.push_back(s);
  return out;
}

inline IndexSet full_subset(std::size_t n) { return (IndexSet{1} << n) - 1; }

/// Algebraic k-form on affine n-space: sum over I of p_I dx_I.
class DiffForm {
 public:
  DiffForm(std::size_t nvars, int degree) : nvars_(nvars), degree_(degree) {
    if (nvars > 30) throw std::invalid_argument("too many variables for DiffForm");
    if (degree < 0 || static_cast<std::size_t>(degree) > nvars)
      throw std::invalid_argument("form degree out of range");
  }

  static DiffForm function(const ExactPoly& p) {
    DiffForm w(p.nvars(), 0);
    w.add(0, p);
    return w;
  }
  static DiffForm top(const ExactPoly& p) {
    DiffForm w(p.nvars(), static_cast<int>(p.nvars()));
    w.add(full_subset(p.nvars()), p);
    return w;
  }

  std::size_t nvars() const noexcept { return nvars_; }
  int degree() const noexcept { return degree_; }
  const std::map<IndexSet, ExactPoly>& components() const noexcept { return comps_; }
  bool is_zero() const noexcept { return comps_.empty(); }

  ExactPoly component(IndexSet s) const {
    auto it = comps_.find(s);
    return it == comps_.end() ? ExactPoly(nvars_) : it->second;
  }

  void add(IndexSet s, const ExactPoly& p) {
    if (subset_size(s) != degree_) throw std::invalid_argument("index subset size differs from form degree");
    if (p.is_zero()) return;
    auto [it, inserted] = comps_.try_emplace(s, p);
    if (!inserted) {
      it->second += p;
      if (it->second.is_zero()) comps_.erase(it);
    }
  }

  DiffForm& operator+=(const DiffForm& o) {
    check(o);
    for (const auto& [s, p] : o.comps_) add(s, p);
    return *this;
  }
  DiffForm& operator-=(const DiffForm& o) {
    check(o);
    for (const auto& [s, p] : o.comps_) add(s, -p);
    return *this;
  }
  DiffForm& operator*=(const Rational& c) {
    if (c == 0) {
      comps_.clear();
      return *this;
    }
    for (auto& [s, p] : comps_) p *= c;
    return *this;
  }
  friend DiffForm operator+(DiffForm a, const DiffForm& b) { return a += b; }
  friend DiffForm operator-(DiffForm a, const DiffForm& b) { return a -= b; }
  friend DiffForm operator*(const Rational& c, DiffForm a) { return a *= c; }

  /// Multiply every component by a function.
  DiffForm times(const ExactPoly& g) const {
    DiffForm r(nvars_, degree_);
    for (const auto& [s, p] : comps_) r.add(s, p * g);
    return r;
  }

  friend bool operator==(const DiffForm& a, const DiffForm& b) {
    return a.nvars_ == b.nvars_ && a.degree_ == b.degree_ && a.comps_ == b.comps_;
  }

 private:
  void check(const DiffForm& o) const {
    if (o.nvars_ != nvars_ || o.degree_ != degree_) throw std::invalid_argument("incompatible forms");
  }

  std::size_t nvars_;
  int degree_;
  std::map<IndexSet, ExactPoly> comps_;
};

/// d of a form. Omega^{n+1} = 0, so an n-form maps to an empty form (tagged degree n).
inline DiffForm exterior_d(const DiffForm& w) {
  const std::size_t n = w.nvars();
  if (static_cast<std::size_t>(w.degree()) == n) return DiffForm(n, w.degree());
  DiffForm r(n, w.degree() + 1);
  for (const auto& [s, p] : w.components())
    for (std::size_t i = 0; i < n; ++i) {
      const int sg = insertion_sign(i, s);
      if (sg == 0) continue;
      ExactPoly dp = p.derivative(i);
      if (dp.is_zero()) continue;
      r.add(s | (IndexSet{1} << i), sg > 0 ? dp : -dp);
    }
  return r;
}

/// df ^ w. Same top-degree convention as exterior_d.
inline DiffForm wedge_df(const ExactPoly& f, const DiffForm& w) {
  const std::size_t n = w.nvars();
  if (static_cast<std::size_t>(w.degree()) == n) return DiffForm(n, w.degree());
  DiffForm r(n, w.degree() + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const ExactPoly fi = f.derivative(i);
    if (fi.is_zero()) continue;
    for (const auto& [s, p] : w.components()) {
      const int sg = insertion_sign(i, s);
      if (sg == 0) continue;
      ExactPoly t = fi * p;
      r.add(s | (IndexSet{1} << i), sg > 0 ? t : -t);
    }
  }
  return r;
}

/// Element of Omega^k[u]/u^N: coefficient forms for u^0 .. u^{N-1}.
class UDiffForm {
 public:
  UDiffForm(std::size_t nvars, int degree, int order) {
    if (order < 1) throw std::invalid_argument("truncation order must be >= 1");
    coeffs_.assign(static_cast<std::size_t>(order), DiffForm(nvars, degree));
  }
  explicit UDiffForm(std::vector<DiffForm> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw std::invalid_argument("truncation order must be >= 1");
    for (const auto& c : coeffs_)
      if (c.degree() != coeffs_[0].degree() || c.nvars() != coeffs_[0].nvars())
        throw std::invalid_argument("u-coefficients of different degree");
  }

  int order() const noexcept { return static_cast<int>(coeffs_.size()); }
  int degree() const noexcept { return coeffs_[0].degree(); }
  std::size_t nvars() const noexcept { return coeffs_[0].nvars(); }
  const DiffForm& coeff(int j) const { return coeffs_.at(static_cast<std::size_t>(j)); }
  DiffForm& coeff(int j) { return coeffs_.at(static_cast<std::size_t>(j)); }
  const std::vector<DiffForm>& coeffs() const noexcept { return coeffs_; }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (!c.is_zero()) return false;
    return true;
  }

  UDiffForm& operator-=(const UDiffForm& o) {
    for (int j = 0; j < order(); ++j) coeffs_[static_cast<std::size_t>(j)] -= o.coeff(j);
    return *this;
  }
  friend UDiffForm operator-(UDiffForm a, const UDiffForm& b) { return a -= b; }
  friend bool operator==(const UDiffForm& a, const UDiffForm& b) { return a.coeffs_ == b.coeffs_; }

 private:
  std::vector<DiffForm> coeffs_;
};

/// (u d + sign * df^) w mod u^N.
inline UDiffForm twisted_differential(const ExactPoly& f, const UDiffForm& w, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  const std::size_t n = w.nvars();
  const int k = w.degree();
  if (static_cast<std::size_t>(k) == n) return UDiffForm(n, k, w.order());
  UDiffForm r(n, k + 1, w.order());
  for (int j = 0; j < w.order(); ++j) {
    DiffForm t = wedge_df(f, w.coeff(j));
    if (sign < 0) t *= Rational(-1);
    r.coeff(j) += t;
    if (j + 1 < w.order()) r.coeff(j + 1) += exterior_d(w.coeff(j));
  }
  return r;
}

/// The u^2 d/du action on k-forms, (u^2 d/du + (n - k) u - sign * f), mod u^N.
/// It commutes with twisted_differential for the same sign.
inline UDiffForm connection_action(const ExactPoly& f, const UDiffForm& w, int sign) {
  const std::size_t n = w.nvars();
  const int k = w.degree();
  UDiffForm r(n, k, w.order());
  for (int j = 0; j < w.order(); ++j) {
    DiffForm t = w.coeff(j).times(f);
    t *= Rational(-sign);
    r.coeff(j) += t;
    const int shift = j + static_cast<int>(n) - k;
    if (j + 1 < w.order() && shift != 0) r.coeff(j + 1) += Rational(shift) * w.coeff(j);
  }
  return r;
}

}  // namespace lglab
