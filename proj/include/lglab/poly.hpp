#pragma once

#include <algorithm>
#include <cassert>
#include <compare>
#include <cstddef>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lglab/rational.hpp"

namespace lglab {

using Exponent = std::vector<int>;

inline int total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

inline bool divides(const Exponent& a, const Exponent& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline Exponent lcm(const Exponent& a, const Exponent& b) {
  Exponent r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

inline Exponent operator+(const Exponent& a, const Exponent& b) {
  Exponent r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

// Caller guarantees divides(b, a).
inline Exponent quotient(const Exponent& a, const Exponent& b) {
  Exponent r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline bool coprime(const Exponent& a, const Exponent& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > 0 && b[i] > 0) return false;
  return true;
}

/// Global multiplicative monomial order; x_1 > x_2 > ... > x_n.
class MonomialOrder {
 public:
  enum class Kind { degrevlex, lex, weighted_degrevlex };

  static MonomialOrder degrevlex() { return MonomialOrder(Kind::degrevlex, {}); }
  static MonomialOrder lex() { return MonomialOrder(Kind::lex, {}); }
  static MonomialOrder weighted_degrevlex(std::vector<int> weights) {
    for (int w : weights)
      if (w <= 0) throw std::invalid_argument("monomial order weights must be positive");
    return MonomialOrder(Kind::weighted_degrevlex, std::move(weights));
  }

  Kind kind() const noexcept { return kind_; }
  const std::vector<int>& weights() const noexcept { return weights_; }

  std::strong_ordering compare(const Exponent& a, const Exponent& b) const {
    switch (kind_) {
      case Kind::lex:
        for (std::size_t i = 0; i < a.size(); ++i)
          if (a[i] != b[i]) return a[i] <=> b[i];
        return std::strong_ordering::equal;
      case Kind::weighted_degrevlex: {
        long wa = 0, wb = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
          wa += static_cast<long>(weights_.at(i)) * a[i];
          wb += static_cast<long>(weights_.at(i)) * b[i];
        }
        if (wa != wb) return wa <=> wb;
        return revlex_tail(a, b);
      }
      case Kind::degrevlex:
      default: {
        const int da = total_degree(a), db = total_degree(b);
        if (da != db) return da <=> db;
        return revlex_tail(a, b);
      }
    }
  }

  bool less(const Exponent& a, const Exponent& b) const { return compare(a, b) < 0; }

  std::string name() const {
    switch (kind_) {
      case Kind::lex: return "lex";
      case Kind::weighted_degrevlex: return "weighted-degrevlex";
      default: return "degrevlex";
    }
  }

 private:
  MonomialOrder(Kind k, std::vector<int> w) : kind_(k), weights_(std::move(w)) {}

  // Among equal degree: a > b iff the last nonzero entry of a - b is negative.
  static std::strong_ordering revlex_tail(const Exponent& a, const Exponent& b) {
    for (std::size_t i = a.size(); i-- > 0;)
      if (a[i] != b[i]) return b[i] <=> a[i];
    return std::strong_ordering::equal;
  }

  Kind kind_;
  std::vector<int> weights_;
};

/// Multivariate polynomial over Q. Terms are keyed by exponent vector and
/// never store a zero coefficient.
class ExactPoly {
 public:
  using TermMap = std::map<Exponent, Rational>;

  ExactPoly() = default;
  explicit ExactPoly(std::size_t nvars) : nvars_(nvars) {}

  static ExactPoly constant(std::size_t nvars, const Rational& c) {
    ExactPoly p(nvars);
    p.add_term(Exponent(nvars, 0), c);
    return p;
  }
  static ExactPoly variable(std::size_t nvars, std::size_t i) {
    Exponent e(nvars, 0);
    e.at(i) = 1;
    return monomial(std::move(e), Rational(1));
  }
  static ExactPoly monomial(Exponent e, const Rational& c) {
    ExactPoly p(e.size());
    p.add_term(std::move(e), c);
    return p;
  }

  std::size_t nvars() const noexcept { return nvars_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
  }

  Rational coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// -1 for the zero polynomial.
  int degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
    return d;
  }

  Rational weighted_degree(std::span<const Rational> w) const {
    Rational best = -1;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      Rational v = 0;
      for (std::size_t i = 0; i < nvars_; ++i) v += w[i] * e[i];
      if (first || v > best) best = v;
      first = false;
    }
    return best;
  }

  void add_term(Exponent e, const Rational& c) {
    assert(e.size() == nvars_);
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(std::move(e), c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  ExactPoly& operator+=(const ExactPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  ExactPoly& operator-=(const ExactPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  ExactPoly& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend ExactPoly operator+(ExactPoly a, const ExactPoly& b) { return a += b; }
  friend ExactPoly operator-(ExactPoly a, const ExactPoly& b) { return a -= b; }
  friend ExactPoly operator*(ExactPoly a, const Rational& s) { return a *= s; }
  friend ExactPoly operator*(const Rational& s, ExactPoly a) { return a *= s; }
  friend ExactPoly operator-(ExactPoly a) { return a *= Rational(-1); }

  friend ExactPoly operator*(const ExactPoly& a, const ExactPoly& b) {
    a.check_compatible(b);
    ExactPoly r(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    return r;
  }

  /// Multiply by c * x^e.
  ExactPoly times_term(const Exponent& e, const Rational& c) const {
    ExactPoly r(nvars_);
    if (c == 0) return r;
    for (const auto& [ea, ca] : terms_) r.terms_.emplace(ea + e, ca * c);
    return r;
  }

  ExactPoly derivative(std::size_t i) const {
    ExactPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
      if (e[i] == 0) continue;
      Exponent d = e;
      d[i] -= 1;
      r.add_term(std::move(d), c * e[i]);
    }
    return r;
  }

  ExactPoly pow(unsigned k) const {
    ExactPoly r = constant(nvars_, 1);
    ExactPoly base = *this;
    while (k) {
      if (k & 1u) r = r * base;
      k >>= 1u;
      if (k) base = base * base;
    }
    return r;
  }

  Rational evaluate(std::span<const Rational> point) const {
    Rational acc = 0;
    for (const auto& [e, c] : terms_) {
      Rational t = c;
      for (std::size_t i = 0; i < nvars_; ++i)
        for (int k = 0; k < e[i]; ++k) t *= point[i];
      acc += t;
    }
    return acc;
  }

  friend bool operator==(const ExactPoly& a, const ExactPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

 private:
  void check_compatible(const ExactPoly& o) const {
    if (o.nvars_ != nvars_) throw std::invalid_argument("polynomials over different numbers of variables");
  }

  std::size_t nvars_ = 0;
  TermMap terms_;
};

/// Determinant of a small square matrix of polynomials by cofactor expansion.
inline ExactPoly determinant(const std::vector<std::vector<ExactPoly>>& m, std::size_t nvars) {
  const std::size_t n = m.size();
  if (n == 0) return ExactPoly::constant(nvars, 1);
  if (n == 1) return m[0][0];
  ExactPoly acc(nvars);
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    std::vector<std::vector<ExactPoly>> minor;
    minor.reserve(n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<ExactPoly> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(std::move(row));
    }
    ExactPoly term = m[0][j] * determinant(minor, nvars);
    if (j % 2 == 0)
      acc += term;
    else
      acc -= term;
  }
  return acc;
}

inline ExactPoly hessian_determinant(const ExactPoly& f) {
  const std::size_t n = f.nvars();
  std::vector<std::vector<ExactPoly>> h(n, std::vector<ExactPoly>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const ExactPoly fi = f.derivative(i);
    for (std::size_t j = 0; j < n; ++j) h[i][j] = fi.derivative(j);
  }
  return determinant(h, n);
}

/// Terms sorted by decreasing degrevlex, for printing and reports.
inline std::vector<std::pair<Exponent, Rational>> sorted_terms(const ExactPoly& p,
                                                               const MonomialOrder& order = MonomialOrder::degrevlex()) {
  std::vector<std::pair<Exponent, Rational>> out(p.terms().begin(), p.terms().end());
  std::sort(out.begin(), out.end(),
            [&](const auto& a, const auto& b) { return order.compare(a.first, b.first) > 0; });
  return out;
}

inline std::string monomial_to_string(const Exponent& e, std::span<const std::string> vars) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += vars[i];
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s.empty() ? "1" : s;
}

/// Prints in the input grammar, so that parse(to_string(p)) == p.
inline std::string to_string(const ExactPoly& p, std::span<const std::string> vars) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : sorted_terms(p)) {
    Rational mag = abs(c);
    const bool neg = c < 0;
    if (first)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    first = false;
    const bool is_one = total_degree(e) == 0;
    if (is_one) {
      out += mag.get_str();
    } else {
      if (mag != 1) out += mag.get_str() + "*";
      out += monomial_to_string(e, vars);
    }
  }
  return out;
}

inline std::vector<std::string> default_variable_names(std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back("x" + std::to_string(i + 1));
  return v;
}

}  // namespace lglab
