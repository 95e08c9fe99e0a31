#include "gdc/relations.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

#include "gdc/moves.hpp"

namespace gdc {

namespace {

const std::pair<RelFamily, const char*> family_names[] = {
    {RelFamily::p1, "P1"},     {RelFamily::p2, "P2"},
    {RelFamily::p3, "P3"},     {RelFamily::w, "W"},
    {RelFamily::p2x1, "P2x1"}, {RelFamily::p2x2, "P2x2"},
    {RelFamily::g6t, "G6T"},   {RelFamily::g2t, "G2T"},
    {RelFamily::ap1, "AP1"},   {RelFamily::ap2, "AP2"},
    {RelFamily::a6t, "A6T"},   {RelFamily::a2t, "A2T"},
    {RelFamily::aw, "AW"},     {RelFamily::nabla, "nabla"},
};

std::string lower(std::string s) {
  for (char& c : s) c = (char)tolower((unsigned char)c);
  return s;
}

// all perfect matchings of 0..2n-1 as (smaller, larger) pairs
std::vector<std::vector<std::pair<int, int>>> matchings(int n) {
  std::vector<std::vector<std::pair<int, int>>> out;
  std::vector<std::pair<int, int>> acc;
  std::vector<char> used(2 * n, 0);
  auto rec = [&](auto&& self) -> void {
    int p = 0;
    while (p < 2 * n && used[p]) p++;
    if (p == 2 * n) {
      out.push_back(acc);
      return;
    }
    used[p] = 1;
    for (int q = p + 1; q < 2 * n; q++) {
      if (used[q]) continue;
      used[q] = 1;
      acc.push_back({p, q});
      self(self);
      acc.pop_back();
      used[q] = 0;
    }
    used[p] = 0;
  };
  rec(rec);
  return out;
}

bool next_choice(std::vector<int>& at, int base) {
  for (int& v : at) {
    if (++v < base) return true;
    v = 0;
  }
  return false;
}

int adjacent_edge(int x, int y, int L) {
  if ((x + 1) % L == y) return x;
  if ((y + 1) % L == x) return y;
  return -1;
}

template <class D>
std::string fingerprint(const Series<D>& s) {
  std::string out;
  for (auto& [d, q] : s.c) {
    for (long long v : d.key) out += std::to_string(v) + ",";
    out += ":" + rat_str(q) + ";";
  }
  return out;
}

// push s unless empty or seen before
template <class D>
void emit(std::vector<Series<D>>& out, std::set<std::string>& seen, const Series<D>& s) {
  if (s.zero()) return;
  if (seen.insert(fingerprint(s)).second) out.push_back(s);
}

std::vector<int> all_but(int n, int skip) {
  std::vector<int> keep;
  for (int i = 0; i < n; i++)
    if (i != skip) keep.push_back(i);
  return keep;
}

// rotation r with position p of the rigid layout at (p+r) mod L in `to`;
// any automorphic choice serves equally
int match_rotation(const std::vector<Arrow>& arrows, const std::vector<Elt>& edges,
                   const ArrowDiagram& to) {
  int L = 2 * (int)arrows.size();
  for (int r = 0; r < L; r++) {
    std::vector<Arrow> rot;
    rot.reserve(arrows.size());
    for (auto& a : arrows) rot.push_back({(a.tail + r) % L, (a.head + r) % L, 0});
    std::sort(rot.begin(), rot.end(),
              [](const Arrow& a, const Arrow& b) { return a.tail < b.tail; });
    if (rot != to.arrows) continue;
    bool ok = true;
    for (int e = 0; e < L && ok; e++) ok = edges[e] == to.edges[(e + r) % L];
    if (ok) return r;
  }
  throw std::logic_error("no rotation matches the switched layout");
}

}  // namespace

RelFamily parse_family(const std::string& name) {
  for (auto& [f, s] : family_names)
    if (lower(name) == lower(s)) return f;
  throw std::invalid_argument("unknown relation family '" + name + "'");
}

std::string family_name(RelFamily f) {
  for (auto& [g, s] : family_names)
    if (g == f) return s;
  throw std::logic_error("unnamed relation family");
}

std::vector<GaussDiagram> all_gauss(GroupPtr g, int degree, int ball) {
  std::set<GaussDiagram> out;
  if (degree == 0) {
    for (const Elt& a : g->ball(ball)) out.insert(GaussDiagram::degree0(g, a));
    return {out.begin(), out.end()};
  }
  int L = 2 * degree;
  std::vector<Elt> elts = g->ball(ball);
  std::vector<Arrow> arrows(degree);
  std::vector<Elt> edges(L);
  for (auto& pairs : matchings(degree))
    for (unsigned om = 0; om < (1u << degree); om++)
      for (unsigned wm = 0; wm < (1u << degree); wm++) {
        for (int i = 0; i < degree; i++) {
          auto [p, q] = pairs[i];
          if (om & (1u << i)) std::swap(p, q);
          arrows[i] = {p, q, (wm & (1u << i)) ? -1 : 1};
        }
        std::vector<int> at(L, 0);
        do {
          for (int e = 0; e < L; e++) edges[e] = elts[at[e]];
          out.insert(GaussDiagram::make(g, degree, arrows, edges));
        } while (next_choice(at, (int)elts.size()));
      }
  return {out.begin(), out.end()};
}

std::vector<ArrowDiagram> all_arrow(GroupPtr g, int degree, int ball) {
  std::set<ArrowDiagram> out;
  if (degree == 0) {
    for (const Elt& a : g->ball(ball)) out.insert(ArrowDiagram::degree0(g, a));
    return {out.begin(), out.end()};
  }
  int L = 2 * degree;
  std::vector<Elt> elts = g->ball(ball);
  std::vector<Arrow> arrows(degree);
  std::vector<Elt> edges(L);
  for (auto& pairs : matchings(degree))
    for (unsigned om = 0; om < (1u << degree); om++) {
      for (int i = 0; i < degree; i++) {
        auto [p, q] = pairs[i];
        if (om & (1u << i)) std::swap(p, q);
        arrows[i] = {p, q, 0};
      }
      std::vector<int> at(L, 0);
      do {
        for (int e = 0; e < L; e++) edges[e] = elts[at[e]];
        out.insert(ArrowDiagram::make(g, degree, arrows, edges));
      } while (next_choice(at, (int)elts.size()));
    }
  return {out.begin(), out.end()};
}

std::vector<DegenerateArrowDiagram> all_degenerate(GroupPtr g, int degree, int ball) {
  if (degree < 2) throw std::domain_error("degenerate diagrams start at degree 2");
  // slot s sits at position max(s-1, 0); slots 0 and 1 share the double
  // position, so a matching may not pair them with each other
  int P = 2 * degree - 1;
  std::set<DegenerateArrowDiagram> out;
  std::vector<Elt> elts = g->ball(ball);
  std::vector<Arrow> arrows(degree);
  std::vector<Elt> edges(P);
  for (auto& pairs : matchings(degree)) {
    if (pairs[0] == std::pair{0, 1}) continue;
    for (unsigned om = 0; om < (1u << degree); om++) {
      for (int i = 0; i < degree; i++) {
        int p = std::max(pairs[i].first - 1, 0), q = std::max(pairs[i].second - 1, 0);
        if (om & (1u << i)) std::swap(p, q);
        arrows[i] = {p, q, 0};
      }
      std::vector<int> at(P, 0);
      do {
        for (int e = 0; e < P; e++) edges[e] = elts[at[e]];
        out.insert(DegenerateArrowDiagram::make(g, degree, arrows, edges));
      } while (next_choice(at, (int)elts.size()));
    }
  }
  return {out.begin(), out.end()};
}

bool ap1_site(const ArrowDiagram& d, int arrow) {
  if (arrow < 0 || arrow >= d.degree) throw std::domain_error("arrow index out of range");
  int L = 2 * d.degree;
  int t = d.arrows[arrow].tail, h = d.arrows[arrow].head;
  return ((t + 1) % L == h && d.group->is_id(d.edges[t])) ||
         ((h + 1) % L == t && d.group->is_id(d.edges[h]));
}

std::vector<std::pair<int, int>> ap2_sites(const ArrowDiagram& d) {
  int L = 2 * d.degree;
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < d.degree; i++)
    for (int j = i + 1; j < d.degree; j++) {
      int hp = adjacent_edge(d.arrows[i].head, d.arrows[j].head, L);
      int tp = adjacent_edge(d.arrows[i].tail, d.arrows[j].tail, L);
      if (hp < 0 || tp < 0) continue;
      if (!d.group->is_id(d.edges[hp]) || !d.group->is_id(d.edges[tp])) continue;
      out.push_back({i, j});
    }
  return out;
}

DegenerateArrowDiagram nabla_slide(const DegenerateArrowDiagram& d, int which) {
  if (which != 0 && which != 1) throw std::domain_error("slide index is 0 or 1");
  if (monotonic(d)) throw std::domain_error("slides act on non-monotonic diagrams");
  auto pe = d.ends_at(d.double_position());
  std::sort(pe.begin(), pe.end());
  auto [ai, ihead] = pe[which];
  auto [aj, jhead] = pe[1 - which];
  // the moving end keeps its kind and lands on the partner's free end,
  // which then carries the double position
  int q = jhead ? d.arrows[aj].tail : d.arrows[aj].head;
  std::vector<Arrow> arrows = d.arrows;
  (ihead ? arrows[ai].head : arrows[ai].tail) = q;
  return DegenerateArrowDiagram::make(d.group, d.degree, arrows, d.edges);
}

std::vector<GaussSeries> gauss_relations(RelFamily f, GroupPtr g, int degree, int ball) {
  std::vector<GaussSeries> out;
  std::set<std::string> seen;
  switch (f) {
    case RelFamily::p1:
    case RelFamily::p2x2: {
      unsigned kind = kind_bit(f == RelFamily::p1 ? MoveKind::r1_minus : MoveKind::r2_minus);
      for (auto& d : all_gauss(g, degree, ball))
        if (!enumerate_moves(d, 0, kind).empty()) emit(out, seen, GaussSeries(d));
      break;
    }
    case RelFamily::p2:
      for (auto& d : all_gauss(g, degree, ball))
        for (auto& m : enumerate_moves(d, 0, kind_bit(MoveKind::r2_minus))) {
          GaussSeries rel(d);
          rel.add(sub_keep(d, all_but(d.degree, m.at[0])), 1);
          rel.add(sub_keep(d, all_but(d.degree, m.at[1])), 1);
          emit(out, seen, rel);
        }
      break;
    case RelFamily::p3:
    case RelFamily::g2t:
      for (auto& d : all_gauss(g, degree, ball))
        for (auto& m : enumerate_moves(d, 0, kind_bit(MoveKind::r3))) {
          AppliedMove ap = apply_tracked(d, m);
          GaussSeries rel(d);
          rel.add(ap.result, -1);
          if (f == RelFamily::p3)
            for (int k : m.at) {
              rel.add(sub_keep(d, all_but(d.degree, k)), 1);
              rel.add(sub_keep(ap.result, all_but(d.degree, ap.arrow_to[k])), -1);
            }
          emit(out, seen, rel);
        }
      break;
    case RelFamily::g6t:
      for (auto& d : all_gauss(g, degree + 1, ball))
        for (auto& m : enumerate_moves(d, 0, kind_bit(MoveKind::r3))) {
          AppliedMove ap = apply_tracked(d, m);
          GaussSeries rel;
          for (int k : m.at) {
            rel.add(sub_keep(d, all_but(d.degree, k)), 1);
            rel.add(sub_keep(ap.result, all_but(d.degree, ap.arrow_to[k])), -1);
          }
          emit(out, seen, rel);
        }
      break;
    case RelFamily::w:
      for (auto& d : all_gauss(g, degree, ball))
        for (auto& m : enumerate_moves(d, ball, kind_bit(MoveKind::w))) {
          GaussSeries rel(d);
          rel.add(apply_move(d, m), -1);
          emit(out, seen, rel);
        }
      break;
    case RelFamily::p2x1:
      for (auto& d : all_gauss(g, degree, ball))
        for (int i = 0; i < d.degree; i++) {
          std::vector<Arrow> arrows = d.arrows;
          arrows[i].writhe = -arrows[i].writhe;
          GaussSeries rel(d);
          rel.add(GaussDiagram::make(g, d.degree, arrows, d.edges), 1);
          emit(out, seen, rel);
        }
      break;
    default:
      throw std::domain_error(family_name(f) + " is not a Gauss-level family");
  }
  return out;
}

std::vector<ArrowSeries> arrow_relations(RelFamily f, GroupPtr g, int degree, int ball) {
  std::vector<ArrowSeries> out;
  std::set<std::string> seen;
  switch (f) {
    case RelFamily::ap1:
      for (auto& d : all_arrow(g, degree, ball))
        for (int i = 0; i < d.degree; i++)
          if (ap1_site(d, i)) {
            emit(out, seen, ArrowSeries(d));
            break;
          }
      break;
    case RelFamily::ap2:
      for (auto& d : all_arrow(g, degree, ball))
        if (!ap2_sites(d).empty()) emit(out, seen, ArrowSeries(d));
      break;
    case RelFamily::a2t:
      for (auto& d : all_arrow(g, degree, ball))
        for (int i = 0; i < d.degree; i++)
          for (int j = i + 1; j < d.degree; j++)
            for (int k = j + 1; k < d.degree; k++)
              for (auto& site : r3_sites(d, i, j, k)) {
                ArrowSeries rel(d);
                rel.add(r3_switch(d, site), -1);
                emit(out, seen, rel);
              }
      break;
    case RelFamily::a6t:
      for (auto& d : all_arrow(g, degree + 1, ball)) {
        int L = 2 * d.degree;
        EndMap em = d.ends();
        for (int i = 0; i < d.degree; i++)
          for (int j = i + 1; j < d.degree; j++)
            for (int k = j + 1; k < d.degree; k++)
              for (auto& site : r3_sites(d, i, j, k)) {
                std::vector<Arrow> sw = d.arrows;
                for (int e : site) {
                  auto [a1, h1] = em[e];
                  auto [a2, h2] = em[(e + 1) % L];
                  (h1 ? sw[a1].head : sw[a1].tail) = (e + 1) % L;
                  (h2 ? sw[a2].head : sw[a2].tail) = e;
                }
                ArrowDiagram swd = ArrowDiagram::make(g, d.degree, sw, d.edges);
                int rot = match_rotation(sw, d.edges, swd);
                ArrowSeries rel;
                for (int x : {i, j, k}) {
                  int ex = -1;
                  for (int e : site)
                    if (em[e].first != x && em[(e + 1) % L].first != x) ex = e;
                  Rat eps = edge_eps(d, ex);
                  rel.add(sub_keep(d, all_but(d.degree, x)), eps);
                  int xt = (sw[x].tail + rot) % L, xi = -1;
                  for (int a = 0; a < swd.degree; a++)
                    if (swd.arrows[a].tail == xt) xi = a;
                  rel.add(sub_keep(swd, all_but(d.degree, xi)), -eps);
                }
                emit(out, seen, rel);
              }
      }
      break;
    case RelFamily::aw:
      for (auto& d : all_arrow(g, degree, ball))
        for (int i = 0; i < d.degree; i++)
          for (const Elt& c : g->ball(ball)) {
            ArrowSeries rel(d);
            rel.add(apply_w(d, i, c), -1);
            emit(out, seen, rel);
          }
      break;
    default:
      throw std::domain_error(family_name(f) + " is not an arrow-level family");
  }
  return out;
}

std::vector<DegenerateSeries> nabla_relations(GroupPtr g, int degree, int ball) {
  std::vector<DegenerateSeries> out;
  std::set<std::string> seen;
  for (auto& d : all_degenerate(g, degree, ball)) {
    if (monotonic(d)) continue;
    DegenerateSeries rel(d);
    rel.add(nabla_slide(d, 0), -1);
    rel.add(nabla_slide(d, 1), -1);
    emit(out, seen, rel);
  }
  return out;
}

}
