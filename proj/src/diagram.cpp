#include "gdc/diagram.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace gdc {

static void fail(const std::string& m) { throw std::invalid_argument(m); }

enum KindTag : long long { kGauss = 1, kArrow = 2, kBased = 3, kDegen = 4, kAbelian = 5, kH1 = 6, kChain = 7 };

static EndMap ends_of(const std::vector<Arrow>& arrows, int npos) {
  EndMap ends(npos, {-1, false});
  for (int i = 0; i < (int)arrows.size(); ++i) {
    const Arrow& a = arrows[i];
    if (a.tail < 0 || a.tail >= npos || a.head < 0 || a.head >= npos)
      fail("arrow position out of range");
    if (ends[a.tail].first != -1) fail("two ends at one position");
    ends[a.tail] = {i, false};
    if (ends[a.head].first != -1) fail("two ends at one position");
    ends[a.head] = {i, true};
  }
  for (auto& e : ends)
    if (e.first == -1) fail("uncovered position");
  return ends;
}

// shared canonicalization: minimize the rotation key, count ties
template <class Rotate, class Key>
static std::pair<int, int> min_rotation(int L, Rotate&& rot, Key&& key_of) {
  int best = 0, ties = 1;
  std::vector<long long> best_key = key_of(rot(0));
  for (int r = 1; r < L; ++r) {
    std::vector<long long> k = key_of(rot(r));
    if (k < best_key) {
      best_key = std::move(k);
      best = r;
      ties = 1;
    } else if (k == best_key) {
      ++ties;
    }
  }
  return {best, ties};
}

namespace {

struct RigidCore {
  int n = 0;
  std::vector<Arrow> arrows;
  std::vector<Elt> edges;
};

RigidCore rotate_core(const RigidCore& c, int r, int L) {
  RigidCore out;
  out.n = c.n;
  out.arrows = c.arrows;
  for (Arrow& a : out.arrows) {
    a.tail = (a.tail + r) % L;
    a.head = (a.head + r) % L;
  }
  std::sort(out.arrows.begin(), out.arrows.end(),
            [](const Arrow& x, const Arrow& y) { return x.tail < y.tail; });
  out.edges.resize(c.edges.size());
  for (int j = 0; j < (int)c.edges.size(); ++j) out.edges[(j + r) % L] = c.edges[j];
  return out;
}

void core_key(const RigidCore& c, int L, bool writhes, std::vector<long long>& k) {
  EndMap ends = ends_of(c.arrows, L);
  for (int p = 0; p < L; ++p) {
    auto [ai, hd] = ends[p];
    const Arrow& a = c.arrows[ai];
    int partner = hd ? a.tail : a.head;
    k.push_back(hd ? 1 : 0);
    k.push_back((partner - p + L) % L);
    k.push_back(writhes ? a.writhe : 0);
  }
  for (const Elt& e : c.edges) elt_key(e, k);
}

}  // namespace

static void validate_common(const GroupPtr& g, int degree, const std::vector<Arrow>& arrows,
                            const std::vector<Elt>& edges, bool writhes) {
  if (!g) fail("null group");
  if (degree < 1) fail("degree must be >= 1 here");
  if ((int)arrows.size() != degree) fail("arrow count must equal the degree");
  if ((int)edges.size() != 2 * degree) fail("edge count must be 2*degree");
  for (const Elt& e : edges) g->check(e);
  for (const Arrow& a : arrows) {
    if (writhes && a.writhe != 1 && a.writhe != -1) fail("writhe must be +-1");
    if (!writhes && a.writhe != 0) fail("writhe must be absent");
  }
  ends_of(arrows, 2 * degree);  // position validity
}

GaussDiagram GaussDiagram::make(GroupPtr g, int degree, std::vector<Arrow> arrows,
                                std::vector<Elt> edges) {
  validate_common(g, degree, arrows, edges, true);
  RigidCore c{degree, std::move(arrows), std::move(edges)};
  int L = 2 * degree;
  auto [r, ties] = min_rotation(
      L, [&](int rr) { return rotate_core(c, rr, L); },
      [&](const RigidCore& rc) {
        std::vector<long long> k{kGauss, degree};
        core_key(rc, L, true, k);
        return k;
      });
  RigidCore best = rotate_core(c, r, L);
  GaussDiagram d;
  d.group = std::move(g);
  d.degree = degree;
  d.arrows = std::move(best.arrows);
  d.edges = std::move(best.edges);
  d.aut = ties;
  d.key = {kGauss, degree};
  core_key({degree, d.arrows, d.edges}, L, true, d.key);
  return d;
}

GaussDiagram GaussDiagram::degree0(GroupPtr g, const Elt& a) {
  if (!g) fail("null group");
  g->check(a);
  GaussDiagram d;
  d.group = std::move(g);
  d.degree = 0;
  d.cls = d.group->class_rep(a);
  d.aut = 1;
  d.key = {kGauss, 0};
  elt_key(d.cls, d.key);
  return d;
}

EndMap GaussDiagram::ends() const { return ends_of(arrows, 2 * degree); }

ArrowDiagram ArrowDiagram::make(GroupPtr g, int degree, std::vector<Arrow> arrows,
                                std::vector<Elt> edges) {
  for (Arrow& a : arrows) a.writhe = 0;
  validate_common(g, degree, arrows, edges, false);
  RigidCore c{degree, std::move(arrows), std::move(edges)};
  int L = 2 * degree;
  auto [r, ties] = min_rotation(
      L, [&](int rr) { return rotate_core(c, rr, L); },
      [&](const RigidCore& rc) {
        std::vector<long long> k{kArrow, degree};
        core_key(rc, L, false, k);
        return k;
      });
  RigidCore best = rotate_core(c, r, L);
  ArrowDiagram d;
  d.group = std::move(g);
  d.degree = degree;
  d.arrows = std::move(best.arrows);
  d.edges = std::move(best.edges);
  d.aut = ties;
  d.key = {kArrow, degree};
  core_key({degree, d.arrows, d.edges}, L, false, d.key);
  return d;
}

ArrowDiagram ArrowDiagram::degree0(GroupPtr g, const Elt& a) {
  if (!g) fail("null group");
  g->check(a);
  ArrowDiagram d;
  d.group = std::move(g);
  d.degree = 0;
  d.cls = d.group->class_rep(a);
  d.aut = 1;
  d.key = {kArrow, 0};
  elt_key(d.cls, d.key);
  return d;
}

EndMap ArrowDiagram::ends() const { return ends_of(arrows, 2 * degree); }

BasedArrowDiagram BasedArrowDiagram::make(GroupPtr g, int degree, std::vector<Arrow> arrows,
                                          std::vector<Elt> edges, int base) {
  for (Arrow& a : arrows) a.writhe = 0;
  validate_common(g, degree, arrows, edges, false);
  if (base < 0 || base >= 2 * degree) fail("base edge out of range");
  RigidCore c{degree, std::move(arrows), std::move(edges)};
  int L = 2 * degree;
  struct RB {
    RigidCore c;
    int base;
  };
  auto [r, ties] = min_rotation(
      L, [&](int rr) { return RB{rotate_core(c, rr, L), (base + rr) % L}; },
      [&](const RB& rb) {
        std::vector<long long> k{kBased, degree, rb.base};
        core_key(rb.c, L, false, k);
        return k;
      });
  RigidCore best = rotate_core(c, r, L);
  BasedArrowDiagram d;
  d.group = std::move(g);
  d.degree = degree;
  d.arrows = std::move(best.arrows);
  d.edges = std::move(best.edges);
  d.base = (base + r) % L;
  d.aut = ties;
  d.key = {kBased, degree, d.base};
  core_key({degree, d.arrows, d.edges}, L, false, d.key);
  return d;
}

EndMap BasedArrowDiagram::ends() const { return ends_of(arrows, 2 * degree); }

// --- degenerate diagrams ---

static std::vector<std::vector<std::pair<int, bool>>> degen_slots(
    const std::vector<Arrow>& arrows, int L) {
  std::vector<std::vector<std::pair<int, bool>>> at(L);
  for (int i = 0; i < (int)arrows.size(); ++i) {
    const Arrow& a = arrows[i];
    if (a.tail < 0 || a.tail >= L || a.head < 0 || a.head >= L)
      fail("arrow position out of range");
    at[a.tail].push_back({i, false});
    at[a.head].push_back({i, true});
  }
  int doubles = 0;
  for (int p = 0; p < L; ++p) {
    if (at[p].empty()) fail("uncovered position");
    if (at[p].size() > 2) fail("more than two ends at one position");
    if (at[p].size() == 2) {
      ++doubles;
      if (at[p][0].first == at[p][1].first) fail("degenerate pair must come from two arrows");
    }
  }
  if (doubles != 1) fail("exactly one position must carry two ends");
  return at;
}

DegenerateArrowDiagram DegenerateArrowDiagram::make(GroupPtr g, int degree,
                                                    std::vector<Arrow> arrows,
                                                    std::vector<Elt> edges) {
  if (!g) fail("null group");
  if (degree < 2) fail("degenerate diagrams need degree >= 2");
  if ((int)arrows.size() != degree) fail("arrow count must equal the degree");
  int L = 2 * degree - 1;
  if ((int)edges.size() != L) fail("edge count must be 2*degree-1");
  for (const Elt& e : edges) g->check(e);
  for (Arrow& a : arrows) a.writhe = 0;
  degen_slots(arrows, L);

  RigidCore c{degree, std::move(arrows), std::move(edges)};
  auto degen_key = [&](const RigidCore& rc) {
    std::vector<long long> k{kDegen, degree};
    auto at = degen_slots(rc.arrows, L);
    for (int p = 0; p < L; ++p) {
      std::vector<std::pair<long long, long long>> toks;
      for (auto [ai, hd] : at[p]) {
        const Arrow& a = rc.arrows[ai];
        int partner = hd ? a.tail : a.head;
        toks.push_back({hd ? 1 : 0, (partner - p + L) % L});
      }
      std::sort(toks.begin(), toks.end());
      k.push_back((long long)toks.size());
      for (auto [x, y] : toks) {
        k.push_back(x);
        k.push_back(y);
      }
    }
    for (const Elt& e : rc.edges) elt_key(e, k);
    return k;
  };
  auto [r, ties] = min_rotation(L, [&](int rr) { return rotate_core(c, rr, L); }, degen_key);
  RigidCore best = rotate_core(c, r, L);
  DegenerateArrowDiagram d;
  d.group = std::move(g);
  d.degree = degree;
  d.arrows = std::move(best.arrows);
  d.edges = std::move(best.edges);
  d.aut = ties;
  d.key = degen_key(RigidCore{degree, d.arrows, d.edges});
  return d;
}

int DegenerateArrowDiagram::double_position() const {
  auto at = degen_slots(arrows, positions());
  for (int p = 0; p < positions(); ++p)
    if (at[p].size() == 2) return p;
  assert(false);
  return -1;
}

std::vector<std::pair<int, bool>> DegenerateArrowDiagram::ends_at(int pos) const {
  return degen_slots(arrows, positions())[pos];
}

// --- abelian diagrams ---

AbelianGaussDiagram AbelianGaussDiagram::make(GroupPtr g, int degree, std::vector<Arrow> arrows,
                                              std::vector<Elt> decor, Elt global) {
  if (!g) fail("null group");
  if (!g->abelian() || !g->trivial_w())
    fail("abelian diagrams require an abelian group with trivial weight");
  if (degree < 1) fail("degree must be >= 1 here");
  if ((int)arrows.size() != degree || (int)decor.size() != degree)
    fail("arrow/decoration count must equal the degree");
  for (const Elt& e : decor) g->check(e);
  g->check(global);
  for (const Arrow& a : arrows)
    if (a.writhe != 1 && a.writhe != -1) fail("writhe must be +-1");
  int L = 2 * degree;
  ends_of(arrows, L);

  struct RA {
    std::vector<Arrow> arrows;
    std::vector<Elt> decor;
  };
  auto rotate = [&](int r) {
    std::vector<std::pair<Arrow, Elt>> v;
    for (int i = 0; i < degree; ++i) {
      Arrow a = arrows[i];
      a.tail = (a.tail + r) % L;
      a.head = (a.head + r) % L;
      v.push_back({a, decor[i]});
    }
    std::sort(v.begin(), v.end(),
              [](const auto& x, const auto& y) { return x.first.tail < y.first.tail; });
    RA out;
    for (auto& [a, e] : v) {
      out.arrows.push_back(a);
      out.decor.push_back(e);
    }
    return out;
  };
  auto key_of = [&](const RA& ra) {
    std::vector<long long> k{kAbelian, degree};
    EndMap ends = ends_of(ra.arrows, L);
    for (int p = 0; p < L; ++p) {
      auto [ai, hd] = ends[p];
      const Arrow& a = ra.arrows[ai];
      int partner = hd ? a.tail : a.head;
      k.push_back(hd ? 1 : 0);
      k.push_back((partner - p + L) % L);
      k.push_back(a.writhe);
    }
    for (const Elt& e : ra.decor) elt_key(e, k);
    elt_key(global, k);
    return k;
  };
  auto [r, ties] = min_rotation(L, rotate, key_of);
  RA best = rotate(r);
  AbelianGaussDiagram d;
  d.group = std::move(g);
  d.degree = degree;
  d.arrows = std::move(best.arrows);
  d.decor = std::move(best.decor);
  d.global = std::move(global);
  d.aut = ties;
  d.key = key_of(RA{d.arrows, d.decor});
  return d;
}

AbelianGaussDiagram AbelianGaussDiagram::degree0(GroupPtr g, const Elt& a) {
  if (!g) fail("null group");
  if (!g->abelian() || !g->trivial_w())
    fail("abelian diagrams require an abelian group with trivial weight");
  g->check(a);
  AbelianGaussDiagram d;
  d.group = std::move(g);
  d.degree = 0;
  d.global = a;
  d.aut = 1;
  d.key = {kAbelian, 0};
  elt_key(d.global, d.key);
  return d;
}

EndMap AbelianGaussDiagram::ends() const { return ends_of(arrows, 2 * degree); }

// --- incidence and signs ---

int edge_eta(const EndMap& ends, const std::vector<Arrow>& arrows, int e) {
  int L = (int)ends.size();
  int a = ends[e].first, b = ends[(e + 1) % L].first;
  if (a == b) return -1;
  int x = std::min(arrows[a].tail, arrows[a].head);
  int y = std::max(arrows[a].tail, arrows[a].head);
  auto inside = [&](int p) { return x < p && p < y; };
  return inside(arrows[b].tail) != inside(arrows[b].head) ? 1 : -1;
}

int edge_up(const EndMap& ends, int e) {
  int L = (int)ends.size();
  return (ends[e].second ? 1 : 0) + (ends[(e + 1) % L].second ? 1 : 0);
}

int edge_w(const GaussDiagram& d, int e) {
  EndMap ends = d.ends();
  int L = 2 * d.degree;
  return d.arrows[ends[e].first].writhe * d.arrows[ends[(e + 1) % L].first].writhe;
}

int diagram_sign(const GaussDiagram& d) {
  int s = 1;
  for (const Arrow& a : d.arrows) s *= a.writhe;
  return s;
}

// --- subdiagrams ---

namespace {

struct SubCore {
  int n2 = 0;  // new degree
  std::vector<Arrow> arrows;
  std::vector<Elt> edges;
  Elt full;  // degree-0 case: the full circle product
};

// generic removal on the core; `keep` ascending indices into `arrows`
SubCore sub_core(const Group& g, int degree, const std::vector<Arrow>& arrows,
                 const std::vector<Elt>& edges, const std::vector<int>& keep) {
  for (size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] < 0 || keep[i] >= degree) fail("subdiagram index out of range");
    if (i && keep[i] <= keep[i - 1]) fail("subdiagram indices must be ascending");
  }
  int L = 2 * degree;
  SubCore out;
  out.n2 = (int)keep.size();
  if (keep.empty()) {
    Elt acc = g.id();
    for (const Elt& e : edges) acc = g.mul(acc, e);
    out.full = acc;
    return out;
  }
  std::vector<char> kept_arrow(degree, 0);
  for (int i : keep) kept_arrow[i] = 1;
  EndMap ends = ends_of(arrows, L);
  std::vector<int> kept_pos;
  for (int p = 0; p < L; ++p)
    if (kept_arrow[ends[p].first]) kept_pos.push_back(p);
  std::vector<int> newpos(L, -1);
  for (int i = 0; i < (int)kept_pos.size(); ++i) newpos[kept_pos[i]] = i;
  std::vector<int> newarrow(degree, -1);
  for (int i = 0; i < (int)keep.size(); ++i) newarrow[keep[i]] = i;
  out.arrows.resize(keep.size());
  for (int i : keep) {
    const Arrow& a = arrows[i];
    out.arrows[newarrow[i]] = {newpos[a.tail], newpos[a.head], a.writhe};
  }
  int m = (int)kept_pos.size();
  for (int i = 0; i < m; ++i) {
    int p = kept_pos[i], q = kept_pos[(i + 1) % m];
    Elt acc = g.id();
    for (int j = p; j != q; j = (j + 1) % L) acc = g.mul(acc, edges[j]);
    out.edges.push_back(acc);
  }
  return out;
}

}  // namespace

GaussDiagram sub_keep(const GaussDiagram& d, const std::vector<int>& keep) {
  if (d.degree == 0) {
    if (!keep.empty()) fail("subdiagram index out of range");
    return d;
  }
  SubCore c = sub_core(*d.group, d.degree, d.arrows, d.edges, keep);
  if (c.n2 == 0) return GaussDiagram::degree0(d.group, c.full);
  return GaussDiagram::make(d.group, c.n2, std::move(c.arrows), std::move(c.edges));
}

std::pair<GaussDiagram, std::vector<int>> sub_keep_tracked(const GaussDiagram& d,
                                                           const std::vector<int>& keep) {
  if (d.degree == 0) {
    if (!keep.empty()) fail("subdiagram index out of range");
    return {d, {}};
  }
  SubCore c = sub_core(*d.group, d.degree, d.arrows, d.edges, keep);
  if (c.n2 == 0) return {GaussDiagram::degree0(d.group, c.full), {}};
  GaussDiagram out = GaussDiagram::make(d.group, c.n2, c.arrows, c.edges);
  // recover a rotation taking the pre-canonical rigid to the stored one
  int L = 2 * c.n2;
  std::vector<int> where;
  for (int r = 0; r < L; ++r) {
    RigidCore rc = rotate_core({c.n2, c.arrows, c.edges}, r, L);
    if (rc.arrows == out.arrows && rc.edges == out.edges) {
      where.assign(keep.size(), -1);
      for (int i = 0; i < c.n2; ++i) {
        int t = (c.arrows[i].tail + r) % L;
        for (int j = 0; j < c.n2; ++j)
          if (out.arrows[j].tail == t) where[i] = j;
      }
      return {out, where};
    }
  }
  assert(false);
  return {out, {}};
}

ArrowDiagram sub_keep(const ArrowDiagram& d, const std::vector<int>& keep) {
  if (d.degree == 0) {
    if (!keep.empty()) fail("subdiagram index out of range");
    return d;
  }
  SubCore c = sub_core(*d.group, d.degree, d.arrows, d.edges, keep);
  if (c.n2 == 0) return ArrowDiagram::degree0(d.group, c.full);
  return ArrowDiagram::make(d.group, c.n2, std::move(c.arrows), std::move(c.edges));
}

AbelianGaussDiagram sub_keep(const AbelianGaussDiagram& d, const std::vector<int>& keep) {
  if (d.degree == 0) {
    if (!keep.empty()) fail("subdiagram index out of range");
    return d;
  }
  for (size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] < 0 || keep[i] >= d.degree) fail("subdiagram index out of range");
    if (i && keep[i] <= keep[i - 1]) fail("subdiagram indices must be ascending");
  }
  if (keep.empty()) return AbelianGaussDiagram::degree0(d.group, d.global);
  int L = 2 * d.degree;
  std::vector<char> kept_arrow(d.degree, 0);
  for (int i : keep) kept_arrow[i] = 1;
  EndMap ends = d.ends();
  std::vector<int> kept_pos;
  for (int p = 0; p < L; ++p)
    if (kept_arrow[ends[p].first]) kept_pos.push_back(p);
  std::vector<int> newpos(L, -1);
  for (int i = 0; i < (int)kept_pos.size(); ++i) newpos[kept_pos[i]] = i;
  std::vector<Arrow> arrows;
  std::vector<Elt> decor;
  for (int i : keep) {
    const Arrow& a = d.arrows[i];
    arrows.push_back({newpos[a.tail], newpos[a.head], a.writhe});
    decor.push_back(d.decor[i]);
  }
  return AbelianGaussDiagram::make(d.group, (int)keep.size(), std::move(arrows),
                                   std::move(decor), d.global);
}

ArrowDiagram forget_writhes(const GaussDiagram& d) {
  if (d.degree == 0) return ArrowDiagram::degree0(d.group, d.cls);
  std::vector<Arrow> arrows = d.arrows;
  for (Arrow& a : arrows) a.writhe = 0;
  return ArrowDiagram::make(d.group, d.degree, std::move(arrows), d.edges);
}

AbelianGaussDiagram abelianize(const GaussDiagram& d) {
  if (!d.group->abelian() || !d.group->trivial_w())
    fail("abelianize requires an abelian group with trivial weight");
  if (d.degree == 0) return AbelianGaussDiagram::degree0(d.group, d.cls);
  const Group& g = *d.group;
  int L = 2 * d.degree;
  std::vector<Elt> decor;
  for (const Arrow& a : d.arrows) {
    Elt acc = g.id();
    for (int j = a.head; j != a.tail; j = (j + 1) % L) acc = g.mul(acc, d.edges[j]);
    decor.push_back(acc);
  }
  Elt global = g.id();
  for (const Elt& e : d.edges) global = g.mul(global, e);
  return AbelianGaussDiagram::make(d.group, d.degree, d.arrows, std::move(decor),
                                   std::move(global));
}

BasedArrowDiagram with_base(const ArrowDiagram& d, int e) {
  if (d.degree == 0) fail("degree-0 diagrams cannot be based");
  return BasedArrowDiagram::make(d.group, d.degree, d.arrows, d.edges, e);
}

ArrowDiagram forget_base(const BasedArrowDiagram& b) {
  return ArrowDiagram::make(b.group, b.degree, b.arrows, b.edges);
}

bool nice(const BasedArrowDiagram& b) {
  if (!b.group->is_id(b.edges[b.base])) return false;
  EndMap ends = b.ends();
  int L = 2 * b.degree;
  return ends[b.base].first != ends[(b.base + 1) % L].first;
}

int eps_base(const BasedArrowDiagram& b) {
  EndMap ends = b.ends();
  return edge_eta(ends, b.arrows, b.base) * (edge_up(ends, b.base) % 2 == 0 ? 1 : -1);
}

DegenerateArrowDiagram shrink(const BasedArrowDiagram& b) {
  if (!nice(b)) fail("shrink requires a nice based diagram");
  int L = 2 * b.degree;
  // rotate so the base edge is 0; then positions 0 and 1 merge
  int r = (L - b.base) % L;
  std::vector<Arrow> arrows = b.arrows;
  for (Arrow& a : arrows) {
    a.tail = (a.tail + r) % L;
    a.head = (a.head + r) % L;
  }
  std::vector<Elt> edges(L);
  for (int j = 0; j < L; ++j) edges[(j + r) % L] = b.edges[j];
  for (Arrow& a : arrows) {
    a.tail = a.tail <= 1 ? 0 : a.tail - 1;
    a.head = a.head <= 1 ? 0 : a.head - 1;
  }
  std::vector<Elt> new_edges(edges.begin() + 1, edges.end());
  return DegenerateArrowDiagram::make(b.group, b.degree, std::move(arrows),
                                      std::move(new_edges));
}

bool monotonic(const DegenerateArrowDiagram& d) {
  auto pair = d.ends_at(d.double_position());
  return pair[0].second != pair[1].second;
}

}
