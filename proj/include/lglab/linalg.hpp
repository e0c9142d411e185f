#pragma once

// Exact linear algebra over Q: a small dense matrix type, fraction-free
// Bareiss elimination, and a sparse integer eliminator for the large,
// very sparse differential matrices of truncated complexes.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lglab/rational.hpp"

namespace lglab {

class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static QMatrix identity(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  QMatrix transpose() const {
    QMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rational& q) { return q == 0; });
  }

  friend QMatrix operator*(const QMatrix& a, const QMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
    QMatrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += a(i, k) * b(k, j);
      }
    return r;
  }
  friend QMatrix operator-(const QMatrix& a, const QMatrix& b) {
    QMatrix r = a;
    for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] -= b.data_[i];
    return r;
  }
  friend bool operator==(const QMatrix& a, const QMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> data_;
};

namespace detail {

inline Integer lcm_of_denominators(const std::vector<Rational>& row) {
  Integer l = 1;
  for (const auto& q : row)
    if (q != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  return l;
}

// Integer rows of a matrix, each scaled by the lcm of its denominators.
inline std::vector<std::vector<Integer>> integer_rows(const QMatrix& m) {
  std::vector<std::vector<Integer>> out(m.rows(), std::vector<Integer>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::vector<Rational> row(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) row[j] = m(i, j);
    const Integer l = lcm_of_denominators(row);
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Rational s = row[j] * l;
      out[i][j] = s.get_num();
    }
  }
  return out;
}

}  // namespace detail

/// Rank by fraction-free Bareiss elimination (every intermediate division exact).
inline std::size_t rank_bareiss(const QMatrix& m) {
  auto a = detail::integer_rows(m);
  const std::size_t rows = m.rows(), cols = m.cols();
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        a[i][j] = a[i][j] * a[r][c] - a[i][c] * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

/// Determinant by Bareiss elimination over Q.
inline Rational determinant(const QMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  Integer scale = 1;
  std::vector<std::vector<Integer>> a(n, std::vector<Integer>(n));
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> row(n);
    for (std::size_t j = 0; j < n; ++j) row[j] = m(i, j);
    const Integer l = detail::lcm_of_denominators(row);
    scale *= l;
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(row[j] * l).get_num();
  }
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p][k] == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  Rational d(a[n - 1][n - 1] * sign, scale);
  d.canonicalize();
  return d;
}

/// Gauss-Jordan inverse over Q; nullopt when singular.
inline std::optional<QMatrix> inverse(const QMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
  const std::size_t n = m.rows();
  QMatrix a = m, inv = QMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) return std::nullopt;
    if (p != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(p, j), a(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    const Rational piv = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      const Rational f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

/// Characteristic polynomial det(t I - A), coefficients lowest degree first
/// (Faddeev-LeVerrier).
inline std::vector<Rational> characteristic_polynomial(const QMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("characteristic polynomial of non-square matrix");
  const std::size_t n = a.rows();
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  QMatrix mk(n, n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    QMatrix next = a * mk;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    QMatrix am = a * next;
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
    c[n - k] = -tr / Rational(static_cast<long>(k));
    mk = std::move(next);
  }
  return c;
}

/// Column-major sparse matrix over Q.
class SparseMatrix {
 public:
  using Column = std::vector<std::pair<std::size_t, Rational>>;

  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), columns_(cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const Column& column(std::size_t j) const { return columns_.at(j); }

  /// Adds v at (i, j); entries of a column must be added through this call only.
  void add(std::size_t i, std::size_t j, const Rational& v) {
    if (i >= rows_ || j >= cols_) throw std::out_of_range("sparse matrix index");
    if (v == 0) return;
    auto& col = columns_[j];
    auto it = std::lower_bound(col.begin(), col.end(), i, [](const auto& e, std::size_t r) { return e.first < r; });
    if (it != col.end() && it->first == i) {
      it->second += v;
      if (it->second == 0) col.erase(it);
    } else {
      col.insert(it, {i, v});
    }
  }

  std::size_t nonzeros() const {
    std::size_t s = 0;
    for (const auto& c : columns_) s += c.size();
    return s;
  }

  bool is_zero() const { return nonzeros() == 0; }

  QMatrix to_dense() const {
    QMatrix d(rows_, cols_);
    for (std::size_t j = 0; j < cols_; ++j)
      for (const auto& [i, v] : columns_[j]) d(i, j) = v;
    return d;
  }

  /// a * b
  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("sparse shape mismatch");
    SparseMatrix r(a.rows_, b.cols_);
    for (std::size_t j = 0; j < b.cols_; ++j) {
      std::vector<Rational> acc;
      std::vector<std::size_t> touched;
      std::vector<char> seen(a.rows_, 0);
      acc.resize(a.rows_);
      for (const auto& [k, v] : b.columns_[j])
        for (const auto& [i, w] : a.columns_[k]) {
          if (!seen[i]) {
            seen[i] = 1;
            touched.push_back(i);
          }
          acc[i] += w * v;
        }
      std::sort(touched.begin(), touched.end());
      for (std::size_t i : touched)
        if (acc[i] != 0) r.columns_[j].push_back({i, acc[i]});
    }
    return r;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Column> columns_;
};

namespace detail {

using SparseIntRow = std::vector<std::pair<std::size_t, Integer>>;

inline void remove_content(SparseIntRow& row) {
  if (row.empty()) return;
  Integer g = 0;
  for (const auto& [j, v] : row) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) return;
  }
  for (auto& [j, v] : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

inline SparseIntRow to_integer_row(const SparseMatrix::Column& col) {
  Integer l = 1;
  for (const auto& [i, q] : col) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  SparseIntRow out;
  out.reserve(col.size());
  for (const auto& [i, q] : col) out.push_back({i, Rational(q * l).get_num()});
  remove_content(out);
  return out;
}

// a <- pa * a - pb * b, both sorted by index.
inline SparseIntRow combine(const SparseIntRow& a, const Integer& pa, const SparseIntRow& b, const Integer& pb) {
  SparseIntRow out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back({a[i].first, pa * a[i].second});
      ++i;
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back({b[j].first, -pb * b[j].second});
      ++j;
    } else {
      Integer v = pa * a[i].second - pb * b[j].second;
      if (v != 0) out.push_back({a[i].first, std::move(v)});
      ++i;
      ++j;
    }
  }
  remove_content(out);
  return out;
}

// Rank of the span of integer vectors, eliminating with a Markowitz-style
// pivot choice: shortest vector, then its least frequent coordinate.
inline std::size_t sparse_integer_rank(std::vector<SparseIntRow> vecs, std::size_t dim) {
  vecs.erase(std::remove_if(vecs.begin(), vecs.end(), [](const SparseIntRow& r) { return r.empty(); }), vecs.end());
  std::size_t rank = 0;
  std::vector<std::size_t> count(dim, 0);
  while (!vecs.empty()) {
    std::fill(count.begin(), count.end(), 0);
    std::size_t best = 0;
    for (std::size_t r = 0; r < vecs.size(); ++r) {
      for (const auto& [j, v] : vecs[r]) ++count[j];
      if (vecs[r].size() < vecs[best].size()) best = r;
    }
    const SparseIntRow piv_row = std::move(vecs[best]);
    vecs[best] = std::move(vecs.back());
    vecs.pop_back();
    std::size_t pc = piv_row[0].first;
    Integer pv = piv_row[0].second;
    for (const auto& [j, v] : piv_row)
      if (count[j] < count[pc] || (count[j] == count[pc] && abs(v) < abs(pv))) {
        pc = j;
        pv = v;
      }
    ++rank;
    std::vector<SparseIntRow> next;
    next.reserve(vecs.size());
    for (auto& r : vecs) {
      auto it = std::lower_bound(r.begin(), r.end(), pc, [](const auto& e, std::size_t c) { return e.first < c; });
      if (it == r.end() || it->first != pc) {
        next.push_back(std::move(r));
        continue;
      }
      Integer g;
      mpz_gcd(g.get_mpz_t(), pv.get_mpz_t(), it->second.get_mpz_t());
      Integer fa = pv / g, fb = it->second / g;
      SparseIntRow reduced = combine(r, fa, piv_row, fb);
      if (!reduced.empty()) next.push_back(std::move(reduced));
    }
    vecs = std::move(next);
  }
  return rank;
}

}  // namespace detail

/// Exact rank of a sparse rational matrix (column space dimension).
inline std::size_t rank(const SparseMatrix& m) {
  std::vector<detail::SparseIntRow> vecs;
  vecs.reserve(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) vecs.push_back(detail::to_integer_row(m.column(j)));
  return detail::sparse_integer_rank(std::move(vecs), m.rows());
}

/// Rank of the submatrix formed by the given columns.
inline std::size_t rank_of_columns(const SparseMatrix& m, const std::vector<std::size_t>& cols) {
  std::vector<detail::SparseIntRow> vecs;
  for (std::size_t j : cols) vecs.push_back(detail::to_integer_row(m.column(j)));
  return detail::sparse_integer_rank(std::move(vecs), m.rows());
}

/// Whether v (dense, length rows) lies in the column span of m.
inline bool in_column_span(const SparseMatrix& m, const std::vector<Rational>& v) {
  if (v.size() != m.rows()) throw std::invalid_argument("vector length mismatch");
  SparseMatrix::Column col;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) col.push_back({i, v[i]});
  if (col.empty()) return true;
  std::vector<detail::SparseIntRow> vecs;
  for (std::size_t j = 0; j < m.cols(); ++j) vecs.push_back(detail::to_integer_row(m.column(j)));
  const std::size_t base = detail::sparse_integer_rank(vecs, m.rows());
  vecs.push_back(detail::to_integer_row(col));
  return detail::sparse_integer_rank(std::move(vecs), m.rows()) == base;
}

}  // namespace lglab
