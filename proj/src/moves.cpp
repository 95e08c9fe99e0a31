#include "gdc/moves.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "gdc/textio.hpp"

namespace gdc {

namespace {

const char* kind_names[6] = {"R1-", "R1+", "R2-", "R2+", "R3", "W"};

int parse_small_int(const std::string& s) {
  size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(s, &pos);
  } catch (...) {
    throw std::invalid_argument("bad integer: " + s);
  }
  if (pos != s.size()) throw std::invalid_argument("bad integer: " + s);
  return v;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ',')) out.push_back(parse_small_int(cur));
  if (out.empty()) throw std::invalid_argument("empty index list");
  return out;
}

EndMap ends_of(const std::vector<Arrow>& arrows, int L) {
  EndMap em(L, {-1, false});
  for (int i = 0; i < (int)arrows.size(); i++) {
    em[arrows[i].tail] = {i, false};
    em[arrows[i].head] = {i, true};
  }
  return em;
}

// edge index between two cyclically adjacent positions, -1 otherwise
int adjacent_edge(int x, int y, int L) {
  if ((x + 1) % L == y) return x;
  if ((y + 1) % L == x) return y;
  return -1;
}

// lower positions q of 1-marked edges surrounded by the (isolated) arrow
std::vector<int> r1_edge_sites(const GaussDiagram& d, int i) {
  int L = 2 * d.degree;
  int t = d.arrows[i].tail, h = d.arrows[i].head;
  std::vector<int> out;
  if ((t + 1) % L == h && d.group->is_id(d.edges[t])) out.push_back(t);
  if ((h + 1) % L == t && d.group->is_id(d.edges[h])) out.push_back(h);
  std::sort(out.begin(), out.end());
  return out;
}

// position-level candidates, marking condition ignored
std::vector<int> r1_position_sites(const std::vector<Arrow>& arrows, int L, int i) {
  int t = arrows[i].tail, h = arrows[i].head;
  std::vector<int> out;
  if ((t + 1) % L == h) out.push_back(t);
  if ((h + 1) % L == t) out.push_back(h);
  std::sort(out.begin(), out.end());
  return out;
}

bool by_tail(const Arrow& a, const Arrow& b) { return a.tail < b.tail; }

struct Rigid {
  std::vector<Arrow> arrows;  // slots: kept arrows in old order, then inserted ones
  std::vector<Elt> edges;
  std::vector<int> old_of;  // slot -> old arrow index, -1 for inserted
};

int find_rotation_raw(const std::vector<Arrow>& arrows, const std::vector<Elt>& edges,
                      const GaussDiagram& canon) {
  int L = (int)edges.size();
  for (int r = 0; r < L; r++) {
    bool ok = true;
    for (int p = 0; p < L && ok; p++) ok = edges[p] == canon.edges[(p + r) % L];
    if (!ok) continue;
    std::vector<Arrow> rot;
    for (const Arrow& a : arrows)
      rot.push_back({(a.tail + r) % L, (a.head + r) % L, a.writhe});
    std::sort(rot.begin(), rot.end(), by_tail);
    if (rot == canon.arrows) return r;
  }
  throw std::logic_error("canonical rotation not found");
}

AppliedMove finish(GroupPtr g, const Rigid& rig, int n_old) {
  AppliedMove out;
  int n = (int)rig.arrows.size();
  out.arrow_to.assign(n_old, -1);
  if (n == 0) {
    Elt prod = g->id();
    for (const Elt& e : rig.edges) prod = g->mul(prod, e);
    out.result = GaussDiagram::degree0(g, prod);
    return out;
  }
  out.result = GaussDiagram::make(g, n, rig.arrows, rig.edges);
  out.rot = find_rotation_raw(rig.arrows, rig.edges, out.result);
  int L = 2 * n;
  std::vector<int> idx_at_tail(L, -1);
  for (int i = 0; i < n; i++) idx_at_tail[out.result.arrows[i].tail] = i;
  for (int s = 0; s < n; s++) {
    int to = idx_at_tail[(rig.arrows[s].tail + out.rot) % L];
    if (rig.old_of[s] >= 0)
      out.arrow_to[rig.old_of[s]] = to;
    else
      out.new_arrows.push_back(to);
  }
  return out;
}

AppliedMove remove_arrows_gauss(const GaussDiagram& d, const std::vector<int>& rm) {
  int n = d.degree, L = 2 * n;
  std::vector<char> gone(n, 0), gonepos(L, 0);
  for (int i : rm) {
    gone[i] = 1;
    gonepos[d.arrows[i].tail] = 1;
    gonepos[d.arrows[i].head] = 1;
  }
  std::vector<int> newpos(L, -1);
  int q = 0;
  for (int p = 0; p < L; p++)
    if (!gonepos[p]) newpos[p] = q++;
  Rigid rig;
  for (int i = 0; i < n; i++)
    if (!gone[i]) {
      rig.arrows.push_back(
          {newpos[d.arrows[i].tail], newpos[d.arrows[i].head], d.arrows[i].writhe});
      rig.old_of.push_back(i);
    }
  if (q == 0) {
    rig.edges = d.edges;  // degree 0: the full product survives as a class
  } else {
    rig.edges.assign(q, d.group->id());
    for (int p = 0; p < L; p++) {
      if (gonepos[p]) continue;
      Elt acc = d.edges[p];
      for (int t = (p + 1) % L; gonepos[t]; t = (t + 1) % L) acc = d.group->mul(acc, d.edges[t]);
      rig.edges[newpos[p]] = acc;
    }
  }
  return finish(d.group, rig, n);
}

// transforms the markings around one moved end at position p
void w_mark_end(std::vector<Elt>& edges, int p, const Elt& g, const Elt& gi, const Group& G) {
  int L = (int)edges.size();
  edges[(p - 1 + L) % L] = G.mul(edges[(p - 1 + L) % L], g);
  edges[p] = G.mul(gi, edges[p]);
}

Rigid w_rigid(const GaussDiagram& d, int arrow, const Elt& g) {
  const Group& G = *d.group;
  Rigid rig;
  rig.arrows = d.arrows;
  rig.edges = d.edges;
  for (int i = 0; i < d.degree; i++) rig.old_of.push_back(i);
  Elt gi = G.inv(g);
  w_mark_end(rig.edges, d.arrows[arrow].tail, g, gi, G);
  w_mark_end(rig.edges, d.arrows[arrow].head, g, gi, G);
  if (G.w(g) < 0) std::swap(rig.arrows[arrow].tail, rig.arrows[arrow].head);
  return rig;
}

std::vector<std::array<int, 3>> r3_sites_core(const std::vector<Arrow>& arrows, int L, int i,
                                              int j, int k, const std::vector<char>& edge_ok) {
  EndMap em = ends_of(arrows, L);
  auto trip_slot = [&](int a) { return a == i ? 0 : a == j ? 1 : a == k ? 2 : -1; };
  // unordered arrow pairs (0,1) (0,2) (1,2) -> candidate special edges
  std::array<std::vector<int>, 3> cand;
  for (int e = 0; e < L; e++) {
    if (!edge_ok[e]) continue;
    int u = trip_slot(em[e].first), v = trip_slot(em[(e + 1) % L].first);
    if (u < 0 || v < 0 || u == v) continue;
    cand[u + v - 1].push_back(e);
  }
  auto up_of = [&](int e) { return (em[e].second ? 1 : 0) + (em[(e + 1) % L].second ? 1 : 0); };
  auto weps = [&](int e) {
    int w = arrows[em[e].first].writhe * arrows[em[(e + 1) % L].first].writhe;
    int eps = edge_eta(em, arrows, e) * (up_of(e) % 2 == 0 ? 1 : -1);
    return w * eps;
  };
  std::vector<std::array<int, 3>> out;
  for (int e01 : cand[0])
    for (int e02 : cand[1])
      for (int e12 : cand[2]) {
        std::array<int, 6> ps = {e01, (e01 + 1) % L, e02, (e02 + 1) % L, e12, (e12 + 1) % L};
        std::sort(ps.begin(), ps.end());
        if (std::adjacent_find(ps.begin(), ps.end()) != ps.end()) continue;
        if (up_of(e01) == up_of(e02) || up_of(e01) == up_of(e12) || up_of(e02) == up_of(e12))
          continue;
        if (weps(e01) != weps(e02) || weps(e01) != weps(e12)) continue;
        std::array<int, 3> site = {e01, e02, e12};
        std::sort(site.begin(), site.end());
        out.push_back(site);
      }
  std::sort(out.begin(), out.end());
  return out;
}

void swap_site_ends(std::vector<Arrow>& arrows, const EndMap& em, int e, int L) {
  auto move_end = [&](int from, int to) {
    auto [a, is_head] = em[from];
    if (is_head)
      arrows[a].head = to;
    else
      arrows[a].tail = to;
  };
  move_end(e, (e + 1) % L);
  move_end((e + 1) % L, e);
}

std::string check_elt(const Group& G, const std::optional<Elt>& e, const char* what) {
  if (!e) return std::string(what) + " missing";
  try {
    G.check(*e);
  } catch (const std::exception&) {
    return std::string(what) + " malformed";
  }
  return "";
}

// shared by the pi-level and abelian R2 insertions: arrow layout of the
// result and the slot positions E1..E4
struct R2Slots {
  std::vector<Arrow> arrows;  // old arrows reindexed, then alpha, then beta
  int e1, e2, e3, e4;
  int alpha, beta;  // slots
};

R2Slots r2_plus_slots(const std::vector<Arrow>& old_arrows, int L, int j, int k, int pat,
                      int heads, int wsign) {
  R2Slots s;
  auto shift = [&](int p) {
    return j == k ? p + 4 * (j < p ? 1 : 0) : p + 2 * ((j < p ? 1 : 0) + (k < p ? 1 : 0));
  };
  for (const Arrow& a : old_arrows)
    s.arrows.push_back({shift(a.tail), shift(a.head), a.writhe});
  if (j == k) {
    s.e1 = j + 1, s.e2 = j + 2, s.e3 = j + 3, s.e4 = j + 4;
  } else {
    int bj = j + 2 * (k < j ? 1 : 0), bk = k + 2 * (j < k ? 1 : 0);
    s.e1 = bj + 1, s.e2 = bj + 2, s.e3 = bk + 1, s.e4 = bk + 2;
  }
  int pa = pat > 0 ? s.e4 : s.e3;  // partner of E1
  int pb = pat > 0 ? s.e3 : s.e4;  // partner of E2
  Arrow alpha, beta;
  if (heads > 0) {
    alpha = {pa, s.e1, wsign};
    beta = {pb, s.e2, -wsign};
  } else {
    alpha = {s.e1, pa, wsign};
    beta = {s.e2, pb, -wsign};
  }
  s.alpha = (int)s.arrows.size();
  s.arrows.push_back(alpha);
  s.beta = (int)s.arrows.size();
  s.arrows.push_back(beta);
  (void)L;
  return s;
}

Hom obstruction_r2_core(const std::vector<Arrow>& arrows, int i, int j) {
  int n = (int)arrows.size(), L = 2 * n;
  int hp = adjacent_edge(arrows[i].head, arrows[j].head, L);
  int tp = adjacent_edge(arrows[i].tail, arrows[j].tail, L);
  if (hp < 0 || tp < 0)
    throw std::domain_error("arrows do not bound a common head edge and tail edge");
  int alpha = arrows[i].head == hp ? i : j;  // head at the lower end of the head pair
  int beta = alpha == i ? j : i;
  Hom h = hom_zero(n);
  h.arrow[alpha] = 1;
  h.arrow[beta] = -1;
  h.edge[hp] = 1;
  int zt = arrows[i].tail == tp ? i : j;
  h.edge[tp] = zt == alpha ? -1 : 1;
  if (!is_cycle(arrows, h)) throw std::logic_error("pair obstruction is not a cycle");
  return h;
}

Hom obstruction_r3_core(const std::vector<Arrow>& arrows, const std::array<int, 3>& trip,
                        const std::array<int, 3>& site) {
  int n = (int)arrows.size(), L = 2 * n;
  EndMap em = ends_of(arrows, L);
  std::map<int, int> c;
  c[trip[0]] = 1;
  for (int sweep = 0; sweep < 3; sweep++)
    for (int e : site) {
      auto [x, xh] = em[e];
      auto [y, yh] = em[(e + 1) % L];
      int sx = xh ? 1 : -1, sy = yh ? 1 : -1;
      bool cx = c.count(x), cy = c.count(y);
      if (cx && !cy)
        c[y] = -sx * c[x] * sy;
      else if (!cx && cy)
        c[x] = -sy * c[y] * sx;
      else if (cx && cy && sx * c[x] != -sy * c[y])
        throw std::logic_error("switch obstruction does not close up");
    }
  Hom h = hom_zero(n);
  for (int a : trip) h.arrow[a] = c.at(a);
  for (int e : site) h.edge[e] = (em[e].second ? 1 : -1) * c.at(em[e].first);
  if (!is_cycle(arrows, h)) throw std::logic_error("switch obstruction is not a cycle");
  return h;
}

}  // namespace

std::string move_to_string(const Group& g, const Move& m) {
  std::ostringstream out;
  out << kind_names[(int)m.kind];
  const char* site_key =
      m.kind == MoveKind::r1_plus ? "edge"
      : m.kind == MoveKind::r2_plus ? "edges"
      : m.kind == MoveKind::r2_minus || m.kind == MoveKind::r3 ? "arrows"
                                                               : "arrow";
  out << " @" << site_key << "=";
  for (size_t i = 0; i < m.at.size(); i++) out << (i ? "," : "") << m.at[i];
  switch (m.kind) {
    case MoveKind::r1_plus:
      if (m.a) out << " a=" << elt_str(g, *m.a);
      out << " dir=" << (m.dir > 0 ? "th" : "ht") << " writhe=" << (m.writhe > 0 ? "+" : "-");
      break;
    case MoveKind::r2_plus:
      if (m.a) out << " p1=" << elt_str(g, *m.a);
      if (m.b) out << " p2=" << elt_str(g, *m.b);
      if (m.rest) out << " rest=" << elt_str(g, *m.rest);
      out << " pat=" << (m.pat > 0 ? "nested" : "crossing")
          << " heads=" << (m.heads > 0 ? "first" : "second")
          << " wsign=" << (m.writhe > 0 ? "+" : "-");
      break;
    case MoveKind::r3:
      out << " type=" << m.type;
      break;
    case MoveKind::w:
      out << " g=" << elt_str(g, m.a ? *m.a : g.id());
      break;
    default:
      break;
  }
  return out.str();
}

Move parse_move(const Group& g, const std::string& s) {
  std::vector<std::string> tok = split_ws(strip_comment(s));
  if (tok.empty()) throw std::invalid_argument("empty move");
  Move m;
  int kind = -1;
  for (int t = 0; t < 6; t++)
    if (tok[0] == kind_names[t]) kind = t;
  if (kind < 0) throw std::invalid_argument("unknown move kind: " + tok[0]);
  m.kind = (MoveKind)kind;
  bool is_r1p = m.kind == MoveKind::r1_plus, is_r2p = m.kind == MoveKind::r2_plus;
  const char* want_site =
      is_r1p ? "edge"
      : is_r2p ? "edges"
      : m.kind == MoveKind::r2_minus || m.kind == MoveKind::r3 ? "arrows"
                                                               : "arrow";
  bool dir_set = false, writhe_set = false, pat_set = false, heads_set = false, site_set = false;
  for (size_t t = 1; t < tok.size(); t++) {
    size_t eq = tok[t].find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("expected key=value, got: " + tok[t]);
    std::string key = tok[t].substr(0, eq), val = tok[t].substr(eq + 1);
    if (!key.empty() && key[0] == '@') {
      if (key.substr(1) != want_site)
        throw std::invalid_argument("move takes @" + std::string(want_site) + ", got " + key);
      m.at = parse_int_list(val);
      site_set = true;
    } else if (key == "a" && is_r1p) {
      m.a = parse_elt(g, val);
    } else if (key == "p1" && is_r2p) {
      m.a = parse_elt(g, val);
    } else if (key == "p2" && is_r2p) {
      m.b = parse_elt(g, val);
    } else if (key == "rest" && is_r2p) {
      m.rest = parse_elt(g, val);
    } else if (key == "g" && m.kind == MoveKind::w) {
      m.a = parse_elt(g, val);
    } else if (key == "dir" && is_r1p) {
      if (val == "th")
        m.dir = 1;
      else if (val == "ht")
        m.dir = -1;
      else
        throw std::invalid_argument("dir must be th or ht");
      dir_set = true;
    } else if (key == "writhe" && is_r1p) {
      m.writhe = val == "+" ? 1 : val == "-" ? -1 : 0;
      if (m.writhe == 0) throw std::invalid_argument("writhe must be + or -");
      writhe_set = true;
    } else if (key == "wsign" && is_r2p) {
      m.writhe = val == "+" ? 1 : val == "-" ? -1 : 0;
      if (m.writhe == 0) throw std::invalid_argument("wsign must be + or -");
      writhe_set = true;
    } else if (key == "pat" && is_r2p) {
      if (val == "nested")
        m.pat = 1;
      else if (val == "crossing")
        m.pat = -1;
      else
        throw std::invalid_argument("pat must be nested or crossing");
      pat_set = true;
    } else if (key == "heads" && is_r2p) {
      if (val == "first")
        m.heads = 1;
      else if (val == "second")
        m.heads = -1;
      else
        throw std::invalid_argument("heads must be first or second");
      heads_set = true;
    } else if (key == "type" && m.kind == MoveKind::r3) {
      m.type = parse_small_int(val);
    } else {
      throw std::invalid_argument("unexpected parameter " + key + " for " + tok[0]);
    }
  }
  if (!site_set) throw std::invalid_argument("missing @" + std::string(want_site));
  size_t want_n = m.kind == MoveKind::r2_minus || is_r2p ? 2 : m.kind == MoveKind::r3 ? 3 : 1;
  if (m.at.size() != want_n) throw std::invalid_argument("wrong number of site indices");
  if (is_r1p && (!dir_set || !writhe_set))
    throw std::invalid_argument("R1+ needs dir= and writhe=");
  if (is_r2p && (!pat_set || !heads_set || !writhe_set))
    throw std::invalid_argument("R2+ needs pat=, heads= and wsign=");
  if (m.kind == MoveKind::r3 && m.type < 1) throw std::invalid_argument("R3 needs type= >= 1");
  if (m.kind == MoveKind::w && !m.a) throw std::invalid_argument("W needs g=");
  return m;
}

std::string why_invalid(const GaussDiagram& d, const Move& m) {
  const Group& G = *d.group;
  int n = d.degree, L = 2 * n;
  auto arrows_in_range = [&] {
    for (int i : m.at)
      if (i < 0 || i >= n) return false;
    return true;
  };
  switch (m.kind) {
    case MoveKind::r1_minus:
      if (m.at.size() != 1 || !arrows_in_range()) return "arrow index out of range";
      if (r1_edge_sites(d, m.at[0]).empty())
        return "arrow is not isolated over a 1-marked edge";
      return "";
    case MoveKind::r1_plus: {
      if (m.dir == 0 || m.writhe == 0) return "dir/writhe not set";
      if (std::string bad = check_elt(G, m.a, "a"); !bad.empty()) return bad;
      if (n == 0) {
        if (m.at.size() != 1 || m.at[0] != 0) return "degree-0 insertion takes @edge=0";
        if (!G.same_class(*m.a, d.cls)) return "[a] differs from the diagram class";
        return "";
      }
      if (m.at.size() != 1 || m.at[0] < 0 || m.at[0] >= L) return "edge index out of range";
      return "";
    }
    case MoveKind::r2_minus: {
      if (m.at.size() != 2 || !arrows_in_range() || m.at[0] == m.at[1])
        return "need two distinct arrow indices";
      const Arrow &a = d.arrows[m.at[0]], &b = d.arrows[m.at[1]];
      int hp = adjacent_edge(a.head, b.head, L), tp = adjacent_edge(a.tail, b.tail, L);
      if (hp < 0) return "heads do not bound a common edge";
      if (tp < 0) return "tails do not bound a common edge";
      if (!G.is_id(d.edges[hp])) return "head edge not 1-marked";
      if (!G.is_id(d.edges[tp])) return "tail edge not 1-marked";
      if (a.writhe * b.writhe != -1) return "writhes are not opposite";
      return "";
    }
    case MoveKind::r2_plus: {
      if (m.pat == 0 || m.heads == 0 || m.writhe == 0) return "pat/heads/wsign not set";
      if (std::string bad = check_elt(G, m.a, "p1"); !bad.empty()) return bad;
      if (std::string bad = check_elt(G, m.b, "p2"); !bad.empty()) return bad;
      if (n == 0) {
        if (m.at.size() != 2 || m.at[0] != 0 || m.at[1] != 0)
          return "degree-0 insertion takes @edges=0,0";
        if (std::string bad = check_elt(G, m.rest, "rest"); !bad.empty()) return bad;
        if (!G.same_class(G.mul(G.mul(*m.a, *m.b), *m.rest), d.cls))
          return "[p1 p2 rest] differs from the diagram class";
        return "";
      }
      if (m.at.size() != 2 || m.at[0] < 0 || m.at[0] >= L || m.at[1] < 0 || m.at[1] >= L)
        return "edge index out of range";
      return "";
    }
    case MoveKind::r3: {
      if (m.at.size() != 3 || !arrows_in_range() || !(m.at[0] < m.at[1] && m.at[1] < m.at[2]))
        return "need three ascending arrow indices";
      auto sites = r3_sites(d, m.at[0], m.at[1], m.at[2]);
      if (m.type < 1 || m.type > (int)sites.size())
        return "no valid switch site with that type";
      return "";
    }
    case MoveKind::w:
      if (m.at.size() != 1 || !arrows_in_range()) return "arrow index out of range";
      if (std::string bad = check_elt(G, m.a, "g"); !bad.empty()) return bad;
      return "";
  }
  return "unknown move kind";
}

AppliedMove apply_tracked(const GaussDiagram& d, const Move& m) {
  if (std::string bad = why_invalid(d, m); !bad.empty())
    throw std::domain_error("move does not apply: " + bad);
  const Group& G = *d.group;
  int n = d.degree, L = 2 * n;
  switch (m.kind) {
    case MoveKind::r1_minus:
      return remove_arrows_gauss(d, {m.at[0]});
    case MoveKind::r2_minus:
      return remove_arrows_gauss(d, {std::min(m.at[0], m.at[1]), std::max(m.at[0], m.at[1])});
    case MoveKind::r1_plus: {
      Rigid rig;
      if (n == 0) {
        rig.arrows.push_back(m.dir > 0 ? Arrow{0, 1, m.writhe} : Arrow{1, 0, m.writhe});
        rig.old_of.push_back(-1);
        rig.edges = {G.id(), *m.a};
        return finish(d.group, rig, 0);
      }
      int j = m.at[0];
      auto shift = [&](int p) { return p + 2 * (j < p ? 1 : 0); };
      for (int i = 0; i < n; i++) {
        rig.arrows.push_back(
            {shift(d.arrows[i].tail), shift(d.arrows[i].head), d.arrows[i].writhe});
        rig.old_of.push_back(i);
      }
      rig.arrows.push_back(m.dir > 0 ? Arrow{j + 1, j + 2, m.writhe}
                                     : Arrow{j + 2, j + 1, m.writhe});
      rig.old_of.push_back(-1);
      rig.edges.assign(L + 2, G.id());
      for (int q = 0; q < L; q++)
        if (q != j) rig.edges[q + 2 * (j < q ? 1 : 0)] = d.edges[q];
      rig.edges[j] = *m.a;
      rig.edges[j + 1] = G.id();
      rig.edges[j + 2] = G.mul(G.inv(*m.a), d.edges[j]);
      return finish(d.group, rig, n);
    }
    case MoveKind::r2_plus: {
      Rigid rig;
      if (n == 0) {
        // j = k = -1 lands the four new positions at 0..3
        R2Slots s = r2_plus_slots({}, 0, -1, -1, m.pat, m.heads, m.writhe);
        rig.arrows = s.arrows;
        rig.old_of = {-1, -1};
        rig.edges = {G.id(), *m.b, G.id(), G.mul(*m.rest, *m.a)};
        return finish(d.group, rig, 0);
      }
      int j = m.at[0], k = m.at[1];
      R2Slots s = r2_plus_slots(d.arrows, L, j, k, m.pat, m.heads, m.writhe);
      rig.arrows = s.arrows;
      rig.old_of.resize(n + 2, -1);
      for (int i = 0; i < n; i++) rig.old_of[i] = i;
      rig.edges.assign(L + 4, G.id());
      if (j == k) {
        for (int q = 0; q < L; q++)
          if (q != j) rig.edges[q + 4 * (j < q ? 1 : 0)] = d.edges[q];
        rig.edges[j] = *m.a;
        rig.edges[j + 1] = G.id();
        rig.edges[j + 2] = *m.b;
        rig.edges[j + 3] = G.id();
        rig.edges[j + 4] = G.mul(G.inv(G.mul(*m.a, *m.b)), d.edges[j]);
      } else {
        for (int q = 0; q < L; q++)
          if (q != j && q != k)
            rig.edges[q + 2 * ((j < q ? 1 : 0) + (k < q ? 1 : 0))] = d.edges[q];
        int bj = j + 2 * (k < j ? 1 : 0), bk = k + 2 * (j < k ? 1 : 0);
        rig.edges[bj] = *m.a;
        rig.edges[bj + 1] = G.id();
        rig.edges[bj + 2] = G.mul(G.inv(*m.a), d.edges[j]);
        rig.edges[bk] = *m.b;
        rig.edges[bk + 1] = G.id();
        rig.edges[bk + 2] = G.mul(G.inv(*m.b), d.edges[k]);
      }
      return finish(d.group, rig, n);
    }
    case MoveKind::r3: {
      auto sites = r3_sites(d, m.at[0], m.at[1], m.at[2]);
      Rigid rig;
      rig.arrows = d.arrows;
      rig.edges = d.edges;
      for (int i = 0; i < n; i++) rig.old_of.push_back(i);
      EndMap em = d.ends();
      for (int e : sites[m.type - 1]) swap_site_ends(rig.arrows, em, e, L);
      return finish(d.group, rig, n);
    }
    case MoveKind::w: {
      Rigid rig = w_rigid(d, m.at[0], *m.a);
      return finish(d.group, rig, n);
    }
  }
  throw std::logic_error("unreachable move kind");
}

GaussDiagram apply_move(const GaussDiagram& d, const Move& m) { return apply_tracked(d, m).result; }

std::vector<std::array<int, 3>> r3_sites(const GaussDiagram& d, int i, int j, int k) {
  int n = d.degree, L = 2 * n;
  if (!(0 <= i && i < j && j < k && k < n))
    throw std::domain_error("switch sites need three ascending arrow indices");
  std::vector<char> ok(L);
  for (int e = 0; e < L; e++) ok[e] = d.group->is_id(d.edges[e]) ? 1 : 0;
  return r3_sites_core(d.arrows, L, i, j, k, ok);
}

std::vector<std::array<int, 3>> r3_sites(const ArrowDiagram& d, int i, int j, int k) {
  int n = d.degree, L = 2 * n;
  if (!(0 <= i && i < j && j < k && k < n))
    throw std::domain_error("switch sites need three ascending arrow indices");
  std::vector<char> ok(L);
  for (int e = 0; e < L; e++) ok[e] = d.group->is_id(d.edges[e]) ? 1 : 0;
  return r3_sites_core(d.arrows, L, i, j, k, ok);
}

ArrowDiagram r3_switch(const ArrowDiagram& d, const std::array<int, 3>& site) {
  int L = 2 * d.degree;
  EndMap em = d.ends();
  std::vector<Arrow> arrows = d.arrows;
  for (int e : site) swap_site_ends(arrows, em, e, L);
  return ArrowDiagram::make(d.group, d.degree, arrows, d.edges);
}

std::vector<std::array<int, 3>> r3_sites(const AbelianGaussDiagram& d, int i, int j, int k) {
  int n = d.degree, L = 2 * n;
  if (!(0 <= i && i < j && j < k && k < n))
    throw std::domain_error("switch sites need three ascending arrow indices");
  return r3_sites_core(d.arrows, L, i, j, k, std::vector<char>(L, 1));
}

std::vector<Move> enumerate_moves(const GaussDiagram& d, int ball_radius, unsigned allow) {
  const Group& G = *d.group;
  int n = d.degree, L = 2 * n;
  std::vector<Move> out;
  std::vector<Elt> ball;
  if (allow & (kind_bit(MoveKind::r1_plus) | kind_bit(MoveKind::r2_plus) | kind_bit(MoveKind::w)))
    ball = G.ball(ball_radius);
  if (allow & kind_bit(MoveKind::r1_minus))
    for (int i = 0; i < n; i++) {
      Move m{MoveKind::r1_minus, {i}};
      if (validates(d, m)) out.push_back(m);
    }
  if (allow & kind_bit(MoveKind::r1_plus)) {
    int gaps = n == 0 ? 1 : L;
    for (int j = 0; j < gaps; j++)
      for (const Elt& a : ball) {
        if (n == 0 && !G.same_class(a, d.cls)) continue;
        for (int dir : {1, -1})
          for (int wr : {1, -1}) {
            Move m{MoveKind::r1_plus, {j}, dir, wr};
            m.a = a;
            out.push_back(m);
          }
      }
  }
  if (allow & kind_bit(MoveKind::r2_minus))
    for (int i = 0; i < n; i++)
      for (int j = i + 1; j < n; j++) {
        Move m{MoveKind::r2_minus, {i, j}};
        if (validates(d, m)) out.push_back(m);
      }
  if (allow & kind_bit(MoveKind::r2_plus)) {
    if (n == 0) {
      for (const Elt& p1 : ball)
        for (const Elt& p2 : ball)
          for (const Elt& rest : ball) {
            if (!G.same_class(G.mul(G.mul(p1, p2), rest), d.cls)) continue;
            for (int pat : {1, -1})
              for (int heads : {1, -1})
                for (int wsign : {1, -1}) {
                  Move m{MoveKind::r2_plus, {0, 0}, 0, wsign, pat, heads};
                  m.a = p1;
                  m.b = p2;
                  m.rest = rest;
                  out.push_back(m);
                }
          }
    } else {
      for (int j = 0; j < L; j++)
        for (int k = j; k < L; k++)
          for (const Elt& p1 : ball)
            for (const Elt& p2 : ball)
              for (int pat : {1, -1})
                for (int heads : {1, -1})
                  for (int wsign : {1, -1}) {
                    Move m{MoveKind::r2_plus, {j, k}, 0, wsign, pat, heads};
                    m.a = p1;
                    m.b = p2;
                    out.push_back(m);
                  }
    }
  }
  if (allow & kind_bit(MoveKind::r3))
    for (int i = 0; i < n; i++)
      for (int j = i + 1; j < n; j++)
        for (int k = j + 1; k < n; k++) {
          int count = (int)r3_sites(d, i, j, k).size();
          for (int t = 1; t <= count; t++) {
            Move m{MoveKind::r3, {i, j, k}};
            m.type = t;
            out.push_back(m);
          }
        }
  if (allow & kind_bit(MoveKind::w))
    for (int i = 0; i < n; i++)
      for (const Elt& g : ball) {
        Move m{MoveKind::w, {i}};
        m.a = g;
        out.push_back(m);
      }
  return out;
}

std::optional<Move> random_move(const GaussDiagram& d, int ball_radius, Rng& rng,
                                unsigned allow) {
  const Group& G = *d.group;
  int n = d.degree, L = 2 * n;
  std::vector<MoveKind> kinds;
  for (int t = 0; t < 6; t++)
    if (allow & (1u << t)) kinds.push_back((MoveKind)t);
  if (kinds.empty()) return std::nullopt;
  std::vector<Elt> ball = G.ball(ball_radius);
  for (int attempt = 0; attempt < 400; attempt++) {
    Move m;
    m.kind = kinds[rng.below((int)kinds.size())];
    switch (m.kind) {
      case MoveKind::r1_minus:
        if (n == 0) continue;
        m.at = {rng.below(n)};
        break;
      case MoveKind::r1_plus:
        m.at = {n == 0 ? 0 : rng.below(L)};
        m.a = ball[rng.below((int)ball.size())];
        m.dir = rng.sign();
        m.writhe = rng.sign();
        break;
      case MoveKind::r2_minus: {
        if (n < 2) continue;
        int i = rng.below(n), j = rng.below(n);
        if (i == j) continue;
        m.at = {std::min(i, j), std::max(i, j)};
        break;
      }
      case MoveKind::r2_plus: {
        if (n == 0) {
          m.at = {0, 0};
          m.rest = ball[rng.below((int)ball.size())];
        } else {
          int j = rng.below(L), k = rng.below(L);
          m.at = {std::min(j, k), std::max(j, k)};
        }
        m.a = ball[rng.below((int)ball.size())];
        m.b = ball[rng.below((int)ball.size())];
        m.pat = rng.sign();
        m.heads = rng.sign();
        m.writhe = rng.sign();
        break;
      }
      case MoveKind::r3: {
        if (n < 3) continue;
        std::set<int> pick;
        while ((int)pick.size() < 3) pick.insert(rng.below(n));
        m.at.assign(pick.begin(), pick.end());
        auto sites = r3_sites(d, m.at[0], m.at[1], m.at[2]);
        if (sites.empty()) continue;
        m.type = 1 + rng.below((int)sites.size());
        break;
      }
      case MoveKind::w:
        if (n == 0) continue;
        m.at = {rng.below(n)};
        m.a = ball[rng.below((int)ball.size())];
        break;
    }
    if (validates(d, m)) return m;
  }
  return std::nullopt;
}

void apply_w_rigid(const Group& G, std::vector<Arrow>& arrows, std::vector<Elt>& edges,
                   int arrow, const Elt& g) {
  Elt gi = G.inv(g);
  w_mark_end(edges, arrows[arrow].tail, g, gi, G);
  w_mark_end(edges, arrows[arrow].head, g, gi, G);
  if (G.w(g) < 0) std::swap(arrows[arrow].tail, arrows[arrow].head);
}

void apply_w_rigid_degenerate(const Group& G, std::vector<Arrow>& arrows,
                              std::vector<Elt>& edges, int arrow, const Elt& g) {
  int P = (int)edges.size();
  std::vector<int> occ(P, 0);
  for (const Arrow& a : arrows) {
    occ[a.tail]++;
    occ[a.head]++;
  }
  int dp = -1;
  for (int p = 0; p < P; p++)
    if (occ[p] == 2) dp = p;
  Elt gi = G.inv(g);
  std::vector<int> moved{arrow};
  std::vector<int> end_positions;
  if (arrows[arrow].tail == dp || arrows[arrow].head == dp) {
    int partner = -1;
    for (int a = 0; a < (int)arrows.size(); a++)
      if (a != arrow && (arrows[a].tail == dp || arrows[a].head == dp)) partner = a;
    moved.push_back(partner);
    for (int a : moved)
      end_positions.push_back(arrows[a].tail == dp ? arrows[a].head : arrows[a].tail);
    end_positions.push_back(dp);  // the merged pair counts once
  } else {
    end_positions = {arrows[arrow].tail, arrows[arrow].head};
  }
  for (int p : end_positions) w_mark_end(edges, p, g, gi, G);
  if (G.w(g) < 0)
    for (int a : moved) std::swap(arrows[a].tail, arrows[a].head);
}

ArrowDiagram apply_w(const ArrowDiagram& d, int arrow, const Elt& g) {
  if (d.degree == 0 || arrow < 0 || arrow >= d.degree)
    throw std::domain_error("arrow index out of range");
  std::vector<Arrow> arrows = d.arrows;
  std::vector<Elt> edges = d.edges;
  apply_w_rigid(*d.group, arrows, edges, arrow, g);
  return ArrowDiagram::make(d.group, d.degree, arrows, edges);
}

BasedArrowDiagram apply_w(const BasedArrowDiagram& d, int arrow, const Elt& g) {
  if (arrow < 0 || arrow >= d.degree) throw std::domain_error("arrow index out of range");
  std::vector<Arrow> arrows = d.arrows;
  std::vector<Elt> edges = d.edges;
  apply_w_rigid(*d.group, arrows, edges, arrow, g);
  return BasedArrowDiagram::make(d.group, d.degree, arrows, edges, d.base);
}

BasedArrowDiagram apply_w_pair_at_base(const BasedArrowDiagram& d, const Elt& g) {
  const Group& G = *d.group;
  int L = 2 * d.degree;
  EndMap em = d.ends();
  int i = em[d.base].first, j = em[(d.base + 1) % L].first;
  if (i == j) throw std::domain_error("base edge is bounded by a single arrow");
  std::vector<Arrow> arrows = d.arrows;
  std::vector<Elt> edges = d.edges;
  Elt gi = G.inv(g);
  for (int a : {i, j}) {
    w_mark_end(edges, arrows[a].tail, g, gi, G);
    w_mark_end(edges, arrows[a].head, g, gi, G);
  }
  if (G.w(g) < 0) {
    std::swap(arrows[i].tail, arrows[i].head);
    std::swap(arrows[j].tail, arrows[j].head);
  }
  return BasedArrowDiagram::make(d.group, d.degree, arrows, edges, d.base);
}

DegenerateArrowDiagram apply_w(const DegenerateArrowDiagram& d, int arrow, const Elt& g) {
  if (arrow < 0 || arrow >= d.degree) throw std::domain_error("arrow index out of range");
  std::vector<Arrow> arrows = d.arrows;
  std::vector<Elt> edges = d.edges;
  apply_w_rigid_degenerate(*d.group, arrows, edges, arrow, g);
  return DegenerateArrowDiagram::make(d.group, d.degree, arrows, edges);
}

namespace {

template <class D, class Step>
std::vector<D> orbit_impl(const D& d, int ball_radius, size_t cap, Step step) {
  std::vector<Elt> ball = d.group->ball(ball_radius);
  std::set<D> seen{d};
  std::vector<D> queue{d};
  for (size_t qi = 0; qi < queue.size(); qi++) {
    D cur = queue[qi];
    for (int i = 0; i < cur.degree; i++)
      for (const Elt& g : ball) {
        if (d.group->is_id(g)) continue;
        D nxt = step(cur, i, g);
        if (seen.insert(nxt).second) {
          if (seen.size() > cap) throw std::domain_error("w-orbit exceeds the state cap");
          queue.push_back(nxt);
        }
      }
  }
  return {seen.begin(), seen.end()};
}

}  // namespace

std::vector<GaussDiagram> w_orbit(const GaussDiagram& d, int ball_radius, size_t cap) {
  if (d.degree == 0) return {d};
  return orbit_impl(d, ball_radius, cap, [](const GaussDiagram& g, int i, const Elt& e) {
    Rigid rig = w_rigid(g, i, e);
    return GaussDiagram::make(g.group, g.degree, rig.arrows, rig.edges);
  });
}

std::vector<ArrowDiagram> w_orbit(const ArrowDiagram& d, int ball_radius, size_t cap) {
  if (d.degree == 0) return {d};
  return orbit_impl(d, ball_radius, cap,
                    [](const ArrowDiagram& g, int i, const Elt& e) { return apply_w(g, i, e); });
}

std::vector<BasedArrowDiagram> w_orbit(const BasedArrowDiagram& d, int ball_radius, size_t cap) {
  return orbit_impl(d, ball_radius, cap, [](const BasedArrowDiagram& g, int i, const Elt& e) {
    return apply_w(g, i, e);
  });
}

std::vector<DegenerateArrowDiagram> w_orbit(const DegenerateArrowDiagram& d, int ball_radius,
                                            size_t cap) {
  return orbit_impl(d, ball_radius, cap, [](const DegenerateArrowDiagram& g, int i, const Elt& e) {
    return apply_w(g, i, e);
  });
}

std::optional<std::vector<Move>> equivalent(const GaussDiagram& a, const GaussDiagram& b,
                                            int ball_radius, long long budget, unsigned allow) {
  if (a.group->spec != b.group->spec)
    throw std::domain_error("diagrams live over different groups");
  if (a == b) return std::vector<Move>{};
  struct Node {
    GaussDiagram d;
    int parent;
    Move m;
  };
  std::vector<Node> nodes{{a, -1, {}}};
  std::set<std::vector<long long>> seen{a.key};
  auto path_to = [&](int at) {
    std::vector<Move> path;
    for (; at > 0; at = nodes[at].parent) path.push_back(nodes[at].m);
    std::reverse(path.begin(), path.end());
    return path;
  };
  long long expanded = 0;
  for (size_t qi = 0; qi < nodes.size(); qi++) {
    if (expanded++ >= budget) return std::nullopt;
    GaussDiagram cur = nodes[qi].d;
    for (const Move& m : enumerate_moves(cur, ball_radius, allow)) {
      GaussDiagram nxt = apply_move(cur, m);
      if (!seen.insert(nxt.key).second) continue;
      nodes.push_back({nxt, (int)qi, m});
      if (nxt == b) return path_to((int)nodes.size() - 1);
    }
  }
  return std::nullopt;
}

MoveSeq generalized_r1(const GaussDiagram& d, int edge, const Elt& a, int dir, int writhe,
                       const Elt& g) {
  Move ins{MoveKind::r1_plus, {edge}, dir, writhe};
  ins.a = a;
  AppliedMove s1 = apply_tracked(d, ins);
  Move conj{MoveKind::w, {s1.new_arrows[0]}};
  conj.a = g;
  MoveSeq out;
  out.moves = {ins, conj};
  out.result = apply_move(s1.result, conj);
  return out;
}

MoveSeq generalized_r2(const GaussDiagram& d, int j, int k, const Elt& p1, const Elt& p2,
                       int pat, int heads, int wsign, const Elt& g1, const Elt& g2) {
  Move ins{MoveKind::r2_plus, {j, k}, 0, wsign, pat, heads};
  ins.a = p1;
  ins.b = p2;
  AppliedMove s1 = apply_tracked(d, ins);
  Move c1{MoveKind::w, {s1.new_arrows[0]}};
  c1.a = g1;
  AppliedMove s2 = apply_tracked(s1.result, c1);
  Move c2{MoveKind::w, {s2.arrow_to[s1.new_arrows[1]]}};
  c2.a = g2;
  MoveSeq out;
  out.moves = {ins, c1, c2};
  out.result = apply_move(s2.result, c2);
  return out;
}

Hom obstruction_r1(const AbelianGaussDiagram& d, int arrow, int q) {
  int n = d.degree, L = 2 * n;
  if (arrow < 0 || arrow >= n) throw std::domain_error("arrow index out of range");
  int t = d.arrows[arrow].tail, h = d.arrows[arrow].head;
  bool tail_first = t == q && h == (q + 1) % L;
  bool head_first = h == q && t == (q + 1) % L;
  if (!tail_first && !head_first) throw std::domain_error("arrow does not surround that edge");
  Hom out = hom_zero(n);
  out.arrow[arrow] = 1;
  out.edge[q] = tail_first ? -1 : 1;
  return out;
}

Hom obstruction_r2(const AbelianGaussDiagram& d, int i, int j) {
  int n = d.degree;
  if (i < 0 || i >= n || j < 0 || j >= n || i == j)
    throw std::domain_error("need two distinct arrow indices");
  return obstruction_r2_core(d.arrows, i, j);
}

Hom obstruction_r3(const AbelianGaussDiagram& d, int i, int j, int k, int type) {
  auto sites = r3_sites(d, i, j, k);
  if (type < 1 || type > (int)sites.size())
    throw std::domain_error("no switch site with that type");
  return obstruction_r3_core(d.arrows, {i, j, k}, sites[type - 1]);
}

std::string why_inadmissible(const AbelianGaussDiagram& d, const Move& m) {
  const Group& G = *d.group;
  int n = d.degree, L = 2 * n;
  auto arrows_in_range = [&] {
    for (int i : m.at)
      if (i < 0 || i >= n) return false;
    return true;
  };
  switch (m.kind) {
    case MoveKind::r1_minus: {
      if (m.at.size() != 1 || !arrows_in_range()) return "arrow index out of range";
      auto sites = r1_position_sites(d.arrows, L, m.at[0]);
      if (sites.empty()) return "arrow is not isolated";
      for (int q : sites)
        if (G.is_id(mu_eval(d, obstruction_r1(d, m.at[0], q)))) return "";
      return "obstruction loop not in the kernel";
    }
    case MoveKind::r1_plus:
      if (m.dir == 0 || m.writhe == 0) return "dir/writhe not set";
      if (n == 0) {
        if (m.at.size() != 1 || m.at[0] != 0) return "degree-0 insertion takes @edge=0";
        return "";
      }
      if (m.at.size() != 1 || m.at[0] < 0 || m.at[0] >= L) return "edge index out of range";
      return "";
    case MoveKind::r2_minus: {
      if (m.at.size() != 2 || !arrows_in_range() || m.at[0] == m.at[1])
        return "need two distinct arrow indices";
      const Arrow &a = d.arrows[m.at[0]], &b = d.arrows[m.at[1]];
      if (adjacent_edge(a.head, b.head, L) < 0) return "heads do not bound a common edge";
      if (adjacent_edge(a.tail, b.tail, L) < 0) return "tails do not bound a common edge";
      if (a.writhe * b.writhe != -1) return "writhes are not opposite";
      if (!G.is_id(mu_eval(d, obstruction_r2(d, m.at[0], m.at[1]))))
        return "obstruction loop not in the kernel";
      return "";
    }
    case MoveKind::r2_plus: {
      if (m.pat == 0 || m.heads == 0 || m.writhe == 0) return "pat/heads/wsign not set";
      if (std::string bad = check_elt(G, m.a, "p1"); !bad.empty()) return bad;
      if (n == 0) {
        if (m.at.size() != 2 || m.at[0] != 0 || m.at[1] != 0)
          return "degree-0 insertion takes @edges=0,0";
        return "";
      }
      if (m.at.size() != 2 || m.at[0] < 0 || m.at[0] >= L || m.at[1] < 0 || m.at[1] >= L)
        return "edge index out of range";
      return "";
    }
    case MoveKind::r3: {
      if (m.at.size() != 3 || !arrows_in_range() || !(m.at[0] < m.at[1] && m.at[1] < m.at[2]))
        return "need three ascending arrow indices";
      auto sites = r3_sites(d, m.at[0], m.at[1], m.at[2]);
      if (m.type < 1 || m.type > (int)sites.size())
        return "no valid switch site with that type";
      if (!G.is_id(mu_eval(d, obstruction_r3(d, m.at[0], m.at[1], m.at[2], m.type))))
        return "obstruction loop not in the kernel";
      return "";
    }
    case MoveKind::w:
      if (m.at.size() != 1 || !arrows_in_range()) return "arrow index out of range";
      return "";
  }
  return "unknown move kind";
}

namespace {

AbelianGaussDiagram remove_arrows_abelian(const AbelianGaussDiagram& d,
                                          const std::vector<int>& rm) {
  int n = d.degree, L = 2 * n;
  if ((int)rm.size() == n) return AbelianGaussDiagram::degree0(d.group, d.global);
  std::vector<char> gone(n, 0), gonepos(L, 0);
  for (int i : rm) {
    gone[i] = 1;
    gonepos[d.arrows[i].tail] = 1;
    gonepos[d.arrows[i].head] = 1;
  }
  std::vector<int> newpos(L, -1);
  int q = 0;
  for (int p = 0; p < L; p++)
    if (!gonepos[p]) newpos[p] = q++;
  std::vector<Arrow> arrows;
  std::vector<Elt> decor;
  for (int i = 0; i < n; i++)
    if (!gone[i]) {
      arrows.push_back({newpos[d.arrows[i].tail], newpos[d.arrows[i].head], d.arrows[i].writhe});
      decor.push_back(d.decor[i]);
    }
  return AbelianGaussDiagram::make(d.group, n - (int)rm.size(), arrows, decor, d.global);
}

}  // namespace

AbelianGaussDiagram apply_move_abelian(const AbelianGaussDiagram& d, const Move& m) {
  if (std::string bad = why_inadmissible(d, m); !bad.empty())
    throw std::domain_error("move not admissible: " + bad);
  const Group& G = *d.group;
  int n = d.degree, L = 2 * n;
  switch (m.kind) {
    case MoveKind::r1_minus:
      return remove_arrows_abelian(d, {m.at[0]});
    case MoveKind::r2_minus:
      return remove_arrows_abelian(d, {std::min(m.at[0], m.at[1]), std::max(m.at[0], m.at[1])});
    case MoveKind::r1_plus: {
      Elt dec = m.dir > 0 ? d.global : G.id();
      if (n == 0) {
        std::vector<Arrow> arrows{m.dir > 0 ? Arrow{0, 1, m.writhe} : Arrow{1, 0, m.writhe}};
        return AbelianGaussDiagram::make(d.group, 1, arrows, {dec}, d.global);
      }
      int j = m.at[0];
      auto shift = [&](int p) { return p + 2 * (j < p ? 1 : 0); };
      std::vector<Arrow> arrows;
      for (const Arrow& a : d.arrows) arrows.push_back({shift(a.tail), shift(a.head), a.writhe});
      arrows.push_back(m.dir > 0 ? Arrow{j + 1, j + 2, m.writhe} : Arrow{j + 2, j + 1, m.writhe});
      std::vector<Elt> decor = d.decor;
      decor.push_back(dec);
      return AbelianGaussDiagram::make(d.group, n + 1, arrows, decor, d.global);
    }
    case MoveKind::r2_plus: {
      int j = n == 0 ? -1 : m.at[0], k = n == 0 ? -1 : m.at[1];
      R2Slots s = r2_plus_slots(d.arrows, L, j, k, m.pat, m.heads, m.writhe);
      Hom gamma = obstruction_r2_core(s.arrows, s.alpha, s.beta);
      long long E = energy(s.arrows, gamma);
      // mu(gamma) = 0 pins the second decoration
      Elt num = G.mul(G.pow(*m.a, gamma.arrow[s.alpha]), G.pow(d.global, E));
      Elt d_beta = G.pow(num, -gamma.arrow[s.beta]);
      std::vector<Elt> decor = d.decor;
      decor.push_back(*m.a);
      decor.push_back(d_beta);
      return AbelianGaussDiagram::make(d.group, n + 2, s.arrows, decor, d.global);
    }
    case MoveKind::r3: {
      auto sites = r3_sites(d, m.at[0], m.at[1], m.at[2]);
      std::vector<Arrow> arrows = d.arrows;
      EndMap em = d.ends();
      for (int e : sites[m.type - 1]) swap_site_ends(arrows, em, e, L);
      return AbelianGaussDiagram::make(d.group, n, arrows, d.decor, d.global);
    }
    case MoveKind::w:
      return d;  // trivial on loop sums
  }
  throw std::logic_error("unreachable move kind");
}

std::vector<Move> enumerate_abelian_moves(const AbelianGaussDiagram& d, int ball_radius) {
  const Group& G = *d.group;
  int n = d.degree, L = 2 * n;
  std::vector<Move> out;
  for (int i = 0; i < n; i++) {
    Move m{MoveKind::r1_minus, {i}};
    if (abelian_admissible(d, m)) out.push_back(m);
  }
  int gaps = n == 0 ? 1 : L;
  for (int j = 0; j < gaps; j++)
    for (int dir : {1, -1})
      for (int wr : {1, -1}) out.push_back(Move{MoveKind::r1_plus, {j}, dir, wr});
  for (int i = 0; i < n; i++)
    for (int j = i + 1; j < n; j++) {
      Move m{MoveKind::r2_minus, {i, j}};
      if (abelian_admissible(d, m)) out.push_back(m);
    }
  std::vector<Elt> ball = G.ball(ball_radius);
  if (n == 0) {
    for (const Elt& p : ball)
      for (int pat : {1, -1})
        for (int heads : {1, -1})
          for (int wsign : {1, -1}) {
            Move m{MoveKind::r2_plus, {0, 0}, 0, wsign, pat, heads};
            m.a = p;
            out.push_back(m);
          }
  } else {
    for (int j = 0; j < L; j++)
      for (int k = j; k < L; k++)
        for (const Elt& p : ball)
          for (int pat : {1, -1})
            for (int heads : {1, -1})
              for (int wsign : {1, -1}) {
                Move m{MoveKind::r2_plus, {j, k}, 0, wsign, pat, heads};
                m.a = p;
                out.push_back(m);
              }
  }
  for (int i = 0; i < n; i++)
    for (int j = i + 1; j < n; j++)
      for (int k = j + 1; k < n; k++) {
        int count = (int)r3_sites(d, i, j, k).size();
        for (int t = 1; t <= count; t++) {
          Move m{MoveKind::r3, {i, j, k}};
          m.type = t;
          if (abelian_admissible(d, m)) out.push_back(m);
        }
      }
  return out;
}

int abelianize_rotation(const GaussDiagram& d, const AbelianGaussDiagram& a) {
  if (d.degree == 0 || a.degree != d.degree)
    throw std::domain_error("degree mismatch between diagram and abelianization");
  const Group& G = *d.group;
  int n = d.degree, L = 2 * n;
  std::vector<Elt> dec(n);
  for (int i = 0; i < n; i++) {
    Elt acc = G.id();
    for (int p = d.arrows[i].head; p != d.arrows[i].tail; p = (p + 1) % L)
      acc = G.mul(acc, d.edges[p]);
    dec[i] = acc;
  }
  for (int r = 0; r < L; r++) {
    std::vector<std::pair<Arrow, Elt>> v(n);
    for (int i = 0; i < n; i++)
      v[i] = {{(d.arrows[i].tail + r) % L, (d.arrows[i].head + r) % L, d.arrows[i].writhe},
              dec[i]};
    std::sort(v.begin(), v.end(),
              [](const auto& x, const auto& y) { return x.first.tail < y.first.tail; });
    bool ok = true;
    for (int i = 0; i < n && ok; i++)
      ok = v[i].first == a.arrows[i] && v[i].second == a.decor[i];
    if (ok) return r;
  }
  throw std::domain_error("not an abelianization of the diagram");
}

}
