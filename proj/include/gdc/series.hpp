#pragma once
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "gdc/diagram.hpp"
#include "gdc/rat.hpp"

namespace gdc {

// Finitely supported rational combination of canonical diagrams. Mixed
// degrees are allowed; project_homogeneous filters. Zero coefficients are
// erased eagerly, so zero() and == are structural.
template <class D>
class Series {
public:
  std::map<D, Rat> c;

  Series() = default;
  explicit Series(const D& d, const Rat& q = 1) { add(d, q); }

  void add(const D& d, const Rat& q) {
    if (q == 0) return;
    auto [it, fresh] = c.try_emplace(d, q);
    if (fresh) return;
    it->second += q;
    if (it->second == 0) c.erase(it);
  }

  Rat coeff(const D& d) const {
    auto it = c.find(d);
    return it == c.end() ? Rat(0) : it->second;
  }

  bool zero() const { return c.empty(); }

  Series& operator+=(const Series& o) {
    for (auto& [d, q] : o.c) add(d, q);
    return *this;
  }
  Series& operator-=(const Series& o) {
    for (auto& [d, q] : o.c) add(d, -q);
    return *this;
  }
  Series& operator*=(const Rat& q) {
    if (q == 0) { c.clear(); return *this; }
    for (auto& [d, v] : c) v *= q;
    return *this;
  }
  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator*(const Rat& q, Series a) { return a *= q; }
  friend Series operator-(const Series& a) { return Rat(-1) * a; }
  friend bool operator==(const Series& a, const Series& b) { return a.c == b.c; }
};

using GaussSeries = Series<GaussDiagram>;
using ArrowSeries = Series<ArrowDiagram>;
using BasedSeries = Series<BasedArrowDiagram>;
using DegenerateSeries = Series<DegenerateArrowDiagram>;

// coefficient functional of a series with infinite support
template <class D>
using Coeff = std::function<Rat(const D&)>;

// (x,y) is the orthonormal pairing on canonical diagrams; the normalized
// form multiplies each basis term by |Aut| of the diagram. One finite side
// suffices: the functional overload evaluates y on the support of x.
template <class D>
Rat pairing(const Series<D>& x, const Series<D>& y, bool normalized = true) {
  Rat s = 0;
  for (auto& [d, q] : x.c) {
    Rat t = q * y.coeff(d);
    if (normalized) t *= d.aut;
    s += t;
  }
  return s;
}

template <class D>
Rat pairing(const Series<D>& x, const Coeff<D>& y, bool normalized = true) {
  Rat s = 0;
  for (auto& [d, q] : x.c) {
    Rat t = q * y(d);
    if (normalized) t *= d.aut;
    s += t;
  }
  return s;
}

template <class D>
Series<D> project_homogeneous(const Series<D>& x, int k) {
  Series<D> out;
  for (auto& [d, q] : x.c)
    if (d.degree == k) out.add(d, q);
  return out;
}

// sum of the 2^n subdiagrams (the degree-0 class term included); the inverse
// weights subsets by (-1)^(arrows removed). imap_inv(imap(x)) = x.
GaussSeries imap(const GaussDiagram& d);
GaussSeries imap(const GaussSeries& x);
GaussSeries imap_inv(const GaussDiagram& d);
GaussSeries imap_inv(const GaussSeries& x);

// Forgetful projections T and their symmetry-preserving sections S. The
// section sums the fiber of each support diagram with the integer weights
// |Aut(coarse)| / |Aut(fine)|; the arrow_ pair twists both directions by the
// product of writhes, so arrow_T(G) = sign(G) * (naked G). The pairs are
// <,>-adjoint: <S(y), x> = <y, T(x)>.
ArrowSeries forget_writhes_T(const GaussSeries& x);
GaussSeries inject_writhes_S(const ArrowDiagram& d);
GaussSeries inject_writhes_S(const ArrowSeries& x);
ArrowSeries arrow_T(const GaussSeries& x);
GaussSeries arrow_S(const ArrowDiagram& d);
GaussSeries arrow_S(const ArrowSeries& x);

// Decoration coarsening along a homomorphism f into `target`, and its
// section along a fiber enumerator: fib(a) lists the f-preimages of a
// (complete for finite source groups; ball truncations are the caller's
// cut). Degree-0 terms map class to class; the section takes the classes of
// fib(class rep), so fib must meet every fiber class on class reps.
GaussSeries decor_T(const GaussSeries& x, GroupPtr target,
                    const std::function<Elt(const Elt&)>& f);
ArrowSeries decor_T(const ArrowSeries& x, GroupPtr target,
                    const std::function<Elt(const Elt&)>& f);
GaussSeries decor_S(const GaussSeries& x, GroupPtr source,
                    const std::function<std::vector<Elt>(const Elt&)>& fib);
ArrowSeries decor_S(const ArrowSeries& x, GroupPtr source,
                    const std::function<std::vector<Elt>(const Elt&)>& fib);

// Sparse echelon basis over the canonical-diagram order, exact rationals.
// Rows are kept with leading coefficient 1, keyed by their leading diagram.
template <class D>
class Echelon {
public:
  // remainder of s against the current basis; a row's support sits at its
  // pivot and above, so each cancellation only spawns larger positions
  Series<D> reduce(Series<D> s) const {
    bool hit = true;
    while (hit) {
      hit = false;
      for (auto& [d, q] : s.c) {
        auto it = rows_.find(d);
        if (it != rows_.end()) { s -= q * it->second; hit = true; break; }
      }
    }
    return s;
  }

  // false when s reduced to zero; otherwise the normalized remainder joins
  bool insert(const Series<D>& s) {
    Series<D> r = reduce(s);
    if (r.zero()) return false;
    Rat inv = 1 / r.c.begin()->second;
    r *= inv;
    rows_.emplace(r.c.begin()->first, r);
    return true;
  }

  int rank() const { return (int)rows_.size(); }

private:
  std::map<D, Series<D>> rows_;
};

template <class D>
int span_rank(const std::vector<Series<D>>& gens) {
  Echelon<D> e;
  for (auto& g : gens) e.insert(g);
  return e.rank();
}

template <class D>
struct SpanDecomp {
  bool in_span = false;
  std::vector<std::pair<int, Rat>> coeff;  // (generator index, coefficient)
};

// Echelon with combination tracking: each row remembers its expression in
// the generators, so memberships come with reconstructing coefficients.
// Leading-term reduction suffices: a row's support sits at its pivot and
// above, so an element of the span always leads with some pivot.
template <class D>
class SpanSolver {
public:
  explicit SpanSolver(const std::vector<Series<D>>& gens) {
    for (int i = 0; i < (int)gens.size(); i++) {
      Series<D> s = gens[i];
      Expr e{{i, Rat(1)}};
      reduce(s, e);
      if (s.zero()) continue;
      Rat inv = 1 / s.c.begin()->second;
      s *= inv;
      for (auto& [j, w] : e) w *= inv;
      rows_.emplace(s.c.begin()->first, std::pair{s, e});
    }
  }

  int rank() const { return (int)rows_.size(); }

  SpanDecomp<D> decompose(const Series<D>& v) const {
    Series<D> s = v;
    Expr e;
    reduce(s, e);
    SpanDecomp<D> out;
    if (!s.zero()) return out;
    out.in_span = true;
    // the invariant left Sum e_j gens[j] - s at -v, so v = -Sum e_j gens[j]
    for (auto& [i, w] : e) out.coeff.emplace_back(i, -w);
    return out;
  }

private:
  using Expr = std::map<int, Rat>;

  // keeps Sum e_j gens[j] - s constant; rows satisfy row == Sum w_j gens[j]
  void reduce(Series<D>& s, Expr& e) const {
    while (!s.zero()) {
      auto it = rows_.find(s.c.begin()->first);
      if (it == rows_.end()) break;
      Rat q = s.c.begin()->second;
      s -= q * it->second.first;
      for (auto& [i, w] : it->second.second) {
        auto [jt, fresh] = e.try_emplace(i, -q * w);
        if (!fresh && (jt->second -= q * w) == 0) e.erase(jt);
      }
    }
  }

  std::map<D, std::pair<Series<D>, Expr>> rows_;
};

// exact membership of v in the span of gens; the returned combination
// reconstructs v. Row reduction order follows the generator list.
template <class D>
SpanDecomp<D> span_membership(const Series<D>& v, const std::vector<Series<D>>& gens) {
  return SpanSolver<D>(gens).decompose(v);
}

// Series files: one term per line, "<rational> | <inline code>" where the
// inline code is the diagram block with "; " in place of newlines. Blank
// lines and '#' comments pass through the usual stripping.
std::string inline_code(const std::string& block);
std::string block_code(const std::string& line);
std::string print_series(const GaussSeries& x);
std::string print_series(const ArrowSeries& x);
GaussSeries parse_gauss_series(const std::string& text);
ArrowSeries parse_arrow_series(const std::string& text);

}
