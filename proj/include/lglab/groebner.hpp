#pragma once

// Buchberger's algorithm over Q with the coprime and chain criteria.
// Optionally tracks the expression of every basis element in terms of
// the input generators, which the Brieskorn reduction needs.

#include <algorithm>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lglab/poly.hpp"

namespace lglab {

struct LeadingTerm {
  Exponent monomial;
  Rational coefficient;
};

inline LeadingTerm leading_term(const ExactPoly& p, const MonomialOrder& order) {
  if (p.is_zero()) throw std::invalid_argument("leading term of the zero polynomial");
  auto best = p.terms().begin();
  for (auto it = std::next(best); it != p.terms().end(); ++it)
    if (order.compare(it->first, best->first) > 0) best = it;
  return {best->first, best->second};
}

/// p = nf + sum_i cofactors[i] * g_i.
struct DivisionRecord {
  ExactPoly nf;
  std::vector<ExactPoly> cofactors;
};

namespace detail {

struct OrderLess {
  const MonomialOrder* order;
  bool operator()(const Exponent& a, const Exponent& b) const { return order->less(a, b); }
};

struct Divisor {
  ExactPoly poly;
  Exponent lm;
  Rational lc;
};

inline Divisor make_divisor(ExactPoly p, const MonomialOrder& order) {
  LeadingTerm lt = leading_term(p, order);
  return {std::move(p), std::move(lt.monomial), std::move(lt.coefficient)};
}

inline DivisionRecord divide(const ExactPoly& p, const std::vector<Divisor>& divisors,
                             const MonomialOrder& order, bool want_cofactors) {
  const std::size_t n = p.nvars();
  std::map<Exponent, Rational, OrderLess> work(OrderLess{&order});
  for (const auto& [e, c] : p.terms()) work.emplace(e, c);
  DivisionRecord rec{ExactPoly(n), {}};
  if (want_cofactors) rec.cofactors.assign(divisors.size(), ExactPoly(n));

  while (!work.empty()) {
    auto top = std::prev(work.end());
    const Exponent mono = top->first;
    const Rational coef = top->second;
    std::size_t hit = divisors.size();
    for (std::size_t i = 0; i < divisors.size(); ++i)
      if (divides(divisors[i].lm, mono)) {
        hit = i;
        break;
      }
    if (hit == divisors.size()) {
      rec.nf.add_term(mono, coef);
      work.erase(top);
      continue;
    }
    const Divisor& g = divisors[hit];
    const Rational q = coef / g.lc;
    const Exponent shift = quotient(mono, g.lm);
    for (const auto& [e, c] : g.poly.terms()) {
      Exponent t = e + shift;
      auto [it, inserted] = work.try_emplace(std::move(t), -q * c);
      if (!inserted) {
        it->second -= q * c;
        if (it->second == 0) work.erase(it);
      }
    }
    if (want_cofactors) rec.cofactors[hit].add_term(shift, q);
  }
  return rec;
}

}  // namespace detail

class GroebnerBasis {
 public:
  GroebnerBasis(std::size_t nvars, MonomialOrder order) : nvars_(nvars), order_(std::move(order)) {}

  std::size_t nvars() const noexcept { return nvars_; }
  const MonomialOrder& order() const noexcept { return order_; }
  const std::vector<ExactPoly>& generators() const noexcept { return gens_; }
  const std::vector<Exponent>& leading_monomials() const noexcept { return lms_; }
  bool reduced() const noexcept { return reduced_; }
  std::size_t input_count() const noexcept { return ninputs_; }

  bool tracks_lift() const noexcept { return !lift_.empty() || gens_.empty(); }
  /// generators()[i] == sum_j lift()[i][j] * input[j].
  const std::vector<std::vector<ExactPoly>>& lift() const noexcept { return lift_; }

  bool is_unit() const { return gens_.size() == 1 && gens_[0].is_constant() && !gens_[0].is_zero(); }

  bool is_zero_dimensional() const {
    if (is_unit()) return true;
    for (std::size_t i = 0; i < nvars_; ++i) {
      bool found = false;
      for (const auto& lm : lms_) {
        bool pure = lm[i] > 0;
        for (std::size_t j = 0; pure && j < nvars_; ++j)
          if (j != i && lm[j] != 0) pure = false;
        if (pure) {
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
    return true;
  }

  /// Monomials not divisible by any leading monomial, ascending in the order;
  /// nullopt when there are infinitely many.
  std::optional<std::vector<Exponent>> standard_monomials() const {
    if (!is_zero_dimensional()) return std::nullopt;
    if (is_unit()) return std::vector<Exponent>{};
    std::vector<int> bound(nvars_, 0);
    for (std::size_t i = 0; i < nvars_; ++i)
      for (const auto& lm : lms_) {
        bool pure = lm[i] > 0;
        for (std::size_t j = 0; pure && j < nvars_; ++j)
          if (j != i && lm[j] != 0) pure = false;
        if (pure && (bound[i] == 0 || lm[i] < bound[i])) bound[i] = lm[i];
      }
    std::vector<Exponent> out;
    Exponent cur(nvars_, 0);
    enumerate(0, cur, bound, out);
    std::sort(out.begin(), out.end(), [&](const Exponent& a, const Exponent& b) { return order_.less(a, b); });
    return out;
  }

  std::vector<detail::Divisor> divisors() const {
    std::vector<detail::Divisor> d;
    d.reserve(gens_.size());
    for (std::size_t i = 0; i < gens_.size(); ++i) d.push_back({gens_[i], lms_[i], Rational(1)});
    return d;
  }

 private:
  friend GroebnerBasis buchberger(const std::vector<ExactPoly>&, const MonomialOrder&, bool);

  void enumerate(std::size_t var, Exponent& cur, const std::vector<int>& bound, std::vector<Exponent>& out) const {
    if (var == nvars_) {
      for (const auto& lm : lms_)
        if (divides(lm, cur)) return;
      out.push_back(cur);
      return;
    }
    for (int e = 0; e < bound[var]; ++e) {
      cur[var] = e;
      bool dead = false;
      for (const auto& lm : lms_)
        if (divides(lm, cur)) {
          dead = true;
          break;
        }
      // Divisibility is monotone in every coordinate, so larger e stays dead.
      if (dead) break;
      enumerate(var + 1, cur, bound, out);
    }
    cur[var] = 0;
  }

  std::size_t nvars_;
  MonomialOrder order_;
  std::vector<ExactPoly> gens_;
  std::vector<Exponent> lms_;
  std::vector<std::vector<ExactPoly>> lift_;
  std::size_t ninputs_ = 0;
  bool reduced_ = false;
};

inline GroebnerBasis buchberger(const std::vector<ExactPoly>& gens, const MonomialOrder& order, bool track_lift = false) {
  if (gens.empty()) throw std::invalid_argument("buchberger: empty generator list");
  const std::size_t n = gens[0].nvars();
  for (const auto& g : gens)
    if (g.nvars() != n) throw std::invalid_argument("buchberger: generators over different rings");
  const std::size_t m = gens.size();

  std::vector<detail::Divisor> basis;
  std::vector<std::vector<ExactPoly>> reps;
  auto unit_rep = [&](std::size_t j) {
    std::vector<ExactPoly> r(m, ExactPoly(n));
    r[j] = ExactPoly::constant(n, 1);
    return r;
  };
  for (std::size_t j = 0; j < m; ++j) {
    if (gens[j].is_zero()) continue;
    basis.push_back(detail::make_divisor(gens[j], order));
    if (track_lift) reps.push_back(unit_rep(j));
  }

  auto combine_rep = [&](std::vector<ExactPoly>& acc, const std::vector<ExactPoly>& r, const ExactPoly& mult) {
    for (std::size_t j = 0; j < m; ++j) acc[j] -= mult * r[j];
  };

  std::set<std::pair<std::size_t, std::size_t>> pending;
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) pending.emplace(i, j);

  auto key = [](std::size_t a, std::size_t b) { return a < b ? std::make_pair(a, b) : std::make_pair(b, a); };

  while (!pending.empty()) {
    // Normal selection strategy: smallest lcm first.
    auto pick = pending.begin();
    Exponent best = lcm(basis[pick->first].lm, basis[pick->second].lm);
    for (auto it = std::next(pending.begin()); it != pending.end(); ++it) {
      Exponent l = lcm(basis[it->first].lm, basis[it->second].lm);
      if (order.less(l, best)) {
        best = std::move(l);
        pick = it;
      }
    }
    const auto [i, j] = *pick;
    pending.erase(pick);

    if (coprime(basis[i].lm, basis[j].lm)) continue;
    bool chain = false;
    for (std::size_t k = 0; k < basis.size() && !chain; ++k) {
      if (k == i || k == j) continue;
      if (divides(basis[k].lm, best) && !pending.count(key(i, k)) && !pending.count(key(j, k))) chain = true;
    }
    if (chain) continue;

    const Exponent si = quotient(best, basis[i].lm), sj = quotient(best, basis[j].lm);
    const Rational ti = Rational(1) / basis[i].lc, tj = Rational(1) / basis[j].lc;
    ExactPoly s = basis[i].poly.times_term(si, ti) - basis[j].poly.times_term(sj, tj);
    DivisionRecord rec = detail::divide(s, basis, order, track_lift);
    if (rec.nf.is_zero()) continue;

    if (track_lift) {
      std::vector<ExactPoly> r(m, ExactPoly(n));
      combine_rep(r, reps[i], ExactPoly::monomial(si, -ti));
      combine_rep(r, reps[j], ExactPoly::monomial(sj, tj));
      for (std::size_t k = 0; k < rec.cofactors.size(); ++k)
        if (!rec.cofactors[k].is_zero()) combine_rep(r, reps[k], rec.cofactors[k]);
      reps.push_back(std::move(r));
    }
    const std::size_t fresh = basis.size();
    basis.push_back(detail::make_divisor(std::move(rec.nf), order));
    for (std::size_t k = 0; k < fresh; ++k) pending.emplace(k, fresh);
  }

  // Minimalize.
  std::vector<std::size_t> keep;
  for (std::size_t a = 0; a < basis.size(); ++a) {
    bool redundant = false;
    for (std::size_t b = 0; b < basis.size() && !redundant; ++b) {
      if (a == b || !divides(basis[b].lm, basis[a].lm)) continue;
      if (basis[b].lm != basis[a].lm || b < a) redundant = true;
    }
    if (!redundant) keep.push_back(a);
  }
  std::vector<detail::Divisor> minimal;
  std::vector<std::vector<ExactPoly>> minimal_reps;
  for (std::size_t a : keep) {
    minimal.push_back(basis[a]);
    if (track_lift) minimal_reps.push_back(reps[a]);
  }

  // Interreduce and make monic.
  for (std::size_t a = 0; a < minimal.size(); ++a) {
    std::vector<detail::Divisor> others;
    std::vector<std::size_t> idx;
    for (std::size_t b = 0; b < minimal.size(); ++b)
      if (b != a) {
        others.push_back(minimal[b]);
        idx.push_back(b);
      }
    DivisionRecord rec = detail::divide(minimal[a].poly, others, order, track_lift);
    if (track_lift) {
      for (std::size_t k = 0; k < rec.cofactors.size(); ++k)
        if (!rec.cofactors[k].is_zero()) combine_rep(minimal_reps[a], minimal_reps[idx[k]], rec.cofactors[k]);
    }
    const Rational inv = Rational(1) / leading_term(rec.nf, order).coefficient;
    rec.nf *= inv;
    if (track_lift)
      for (auto& r : minimal_reps[a]) r *= inv;
    minimal[a] = detail::make_divisor(std::move(rec.nf), order);
  }

  std::vector<std::size_t> perm(minimal.size());
  for (std::size_t a = 0; a < perm.size(); ++a) perm[a] = a;
  std::sort(perm.begin(), perm.end(),
            [&](std::size_t a, std::size_t b) { return order.compare(minimal[a].lm, minimal[b].lm) > 0; });

  GroebnerBasis gb(n, order);
  gb.ninputs_ = m;
  gb.reduced_ = true;
  for (std::size_t a : perm) {
    gb.gens_.push_back(minimal[a].poly);
    gb.lms_.push_back(minimal[a].lm);
    if (track_lift) gb.lift_.push_back(minimal_reps[a]);
  }
  return gb;
}

inline DivisionRecord division_record(const ExactPoly& p, const GroebnerBasis& gb) {
  if (p.nvars() != gb.nvars()) throw std::invalid_argument("division_record: ring mismatch");
  return detail::divide(p, gb.divisors(), gb.order(), true);
}

inline ExactPoly normal_form(const ExactPoly& p, const GroebnerBasis& gb) {
  if (p.nvars() != gb.nvars()) throw std::invalid_argument("normal_form: ring mismatch");
  return detail::divide(p, gb.divisors(), gb.order(), false).nf;
}

/// Re-express division cofactors in terms of the original generators:
/// p = nf + sum_j result[j] * input[j].
inline std::vector<ExactPoly> lift_cofactors(const DivisionRecord& rec, const GroebnerBasis& gb) {
  if (!gb.tracks_lift() || gb.lift().size() != gb.generators().size())
    throw std::invalid_argument("lift_cofactors: basis computed without lift tracking");
  const std::size_t n = gb.nvars();
  std::vector<ExactPoly> out(gb.input_count(), ExactPoly(n));
  for (std::size_t i = 0; i < rec.cofactors.size(); ++i) {
    if (rec.cofactors[i].is_zero()) continue;
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += rec.cofactors[i] * gb.lift()[i][j];
  }
  return out;
}

/// Every S-polynomial of the basis reduces to zero.
inline bool satisfies_buchberger_criterion(const GroebnerBasis& gb) {
  const auto divs = gb.divisors();
  for (std::size_t j = 0; j < divs.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) {
      const Exponent l = lcm(divs[i].lm, divs[j].lm);
      ExactPoly s = divs[i].poly.times_term(quotient(l, divs[i].lm), 1) -
                    divs[j].poly.times_term(quotient(l, divs[j].lm), 1);
      if (!detail::divide(s, divs, gb.order(), false).nf.is_zero()) return false;
    }
  return true;
}

inline bool is_reduced(const GroebnerBasis& gb) {
  const auto& g = gb.generators();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (leading_term(g[i], gb.order()).coefficient != 1) return false;
    for (const auto& [e, c] : g[i].terms())
      for (std::size_t j = 0; j < g.size(); ++j)
        if (j != i && divides(gb.leading_monomials()[j], e)) return false;
  }
  return true;
}

}  // namespace lglab
