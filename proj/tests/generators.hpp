#pragma once

// Seeded random inputs for property tests.

#include <random>
#include <vector>

#include "lglab/cu_linalg.hpp"
#include "lglab/forms.hpp"
#include "lglab/poly.hpp"

namespace lglab::gen {

inline Rational random_rational(std::mt19937_64& g, int range = 5) {
  std::uniform_int_distribution<int> num(-range, range), den(1, 3);
  Rational q(num(g), den(g));
  q.canonicalize();
  return q;
}

inline ExactPoly random_poly(std::mt19937_64& g, std::size_t nvars, int max_deg, int terms) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  ExactPoly p(nvars);
  for (int t = 0; t < terms; ++t) {
    Exponent e(nvars, 0);
    int budget = deg(g);
    for (std::size_t i = 0; i < nvars && budget > 0; ++i) {
      std::uniform_int_distribution<int> take(0, budget);
      e[i] = take(g);
      budget -= e[i];
    }
    p.add_term(std::move(e), random_rational(g));
  }
  return p;
}

inline DiffForm random_form(std::mt19937_64& g, std::size_t nvars, int degree, int max_deg) {
  DiffForm w(nvars, degree);
  for (IndexSet s : subsets_of_size(nvars, degree)) w.add(s, random_poly(g, nvars, max_deg, 3));
  return w;
}

inline UDiffForm random_uform(std::mt19937_64& g, std::size_t nvars, int degree, int order, int max_deg) {
  std::vector<DiffForm> c;
  for (int j = 0; j < order; ++j) c.push_back(random_form(g, nvars, degree, max_deg));
  return UDiffForm(std::move(c));
}

inline UPoly random_upoly(std::mt19937_64& g, int max_deg) {
  std::uniform_int_distribution<int> deg(-1, max_deg);
  const int d = deg(g);
  std::vector<Rational> c;
  for (int i = 0; i <= d; ++i) c.push_back(random_rational(g, 3));
  return UPoly(std::move(c));
}

inline UPolyMatrix random_upoly_matrix(std::mt19937_64& g, int max_size, int max_deg) {
  std::uniform_int_distribution<int> sz(1, max_size);
  const auto r = static_cast<std::size_t>(sz(g)), c = static_cast<std::size_t>(sz(g));
  UPolyMatrix m(r, c);
  std::bernoulli_distribution sparse(0.35);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (!sparse(g)) m(i, j) = random_upoly(g, max_deg);
  return m;
}

}  // namespace lglab::gen
