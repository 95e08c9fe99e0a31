#include "gdc/homology.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace gdc {

namespace {

int positions_of(const std::vector<Arrow>& arrows) {
  return arrows.empty() ? 1 : 2 * (int)arrows.size();
}

// position -> (arrow index, is_head)
std::vector<std::pair<int, bool>> end_map(const std::vector<Arrow>& arrows) {
  int L = 2 * (int)arrows.size();
  std::vector<std::pair<int, bool>> ends(L, {-1, false});
  for (int i = 0; i < (int)arrows.size(); i++) {
    ends[arrows[i].tail] = {i, false};
    ends[arrows[i].head] = {i, true};
  }
  return ends;
}

void check_dims(const std::vector<Arrow>& arrows, const Hom& h) {
  if ((int)h.edge.size() != positions_of(arrows) ||
      h.arrow.size() != arrows.size())
    throw std::invalid_argument("homology class has wrong dimensions");
}

long long jump_at(const std::vector<std::pair<int, bool>>& ends, const Hom& h,
                  int p) {
  auto [i, is_head] = ends[p];
  return is_head ? h.arrow[i] : -h.arrow[i];
}

// does the return arc of arrow i (head -> tail, forward) cover edge e
bool covers(const Arrow& a, int e, int L) {
  for (int k = a.head; k != a.tail; k = (k + 1) % L)
    if (k == e) return true;
  return false;
}

}  // namespace

Hom hom_zero(int n) {
  return {std::vector<long long>(n == 0 ? 1 : 2 * n, 0),
          std::vector<long long>(n, 0)};
}

Hom hom_add(const Hom& a, const Hom& b) {
  if (a.edge.size() != b.edge.size() || a.arrow.size() != b.arrow.size())
    throw std::invalid_argument("homology dimension mismatch");
  Hom r = a;
  for (size_t i = 0; i < r.edge.size(); i++) r.edge[i] += b.edge[i];
  for (size_t i = 0; i < r.arrow.size(); i++) r.arrow[i] += b.arrow[i];
  return r;
}

Hom hom_sub(const Hom& a, const Hom& b) { return hom_add(a, hom_scale(-1, b)); }

Hom hom_scale(long long c, const Hom& a) {
  Hom r = a;
  for (auto& v : r.edge) v *= c;
  for (auto& v : r.arrow) v *= c;
  return r;
}

bool is_cycle(const std::vector<Arrow>& arrows, const Hom& h) {
  check_dims(arrows, h);
  if (arrows.empty()) return true;
  int L = (int)h.edge.size();
  auto ends = end_map(arrows);
  for (int p = 0; p < L; p++)
    if (h.edge[p] - h.edge[(p + L - 1) % L] != jump_at(ends, h, p)) return false;
  return true;
}

Hom loop_of_arrow(const std::vector<Arrow>& arrows, int i) {
  if (i < 0 || i >= (int)arrows.size())
    throw std::invalid_argument("arrow index out of range");
  Hom h = hom_zero((int)arrows.size());
  int L = (int)h.edge.size();
  for (int k = arrows[i].head; k != arrows[i].tail; k = (k + 1) % L)
    h.edge[k] = 1;
  h.arrow[i] = 1;
  return h;
}

Hom loop_K(int n) {
  Hom h = hom_zero(n);
  for (auto& v : h.edge) v = 1;
  return h;
}

long long energy(const std::vector<Arrow>& arrows, const Hom& h) {
  if (!is_cycle(arrows, h)) throw std::domain_error("not a cycle");
  long long e = h.edge[0];
  int L = (int)h.edge.size();
  for (size_t i = 0; i < arrows.size(); i++)
    if (covers(arrows[i], 0, L)) e -= h.arrow[i];
  return e;
}

long long torsion(const std::vector<Arrow>& arrows, const Hom& h) {
  long long t = -energy(arrows, h);
  for (long long c : h.arrow)
    if (c < 0) t -= c;
  return t;
}

Decomposition decompose(const std::vector<Arrow>& arrows, const Hom& h) {
  return {h.arrow, energy(arrows, h)};
}

bool is_proper(const Hom& h) {
  return std::any_of(h.arrow.begin(), h.arrow.end(),
                     [](long long c) { return c != 0; });
}

bool is_simple(const Hom& h) {
  for (long long v : h.edge)
    if (v < 0 || v > 1) return false;
  for (long long v : h.arrow)
    if (v < -1 || v > 1) return false;
  return true;
}

bool is_er(const Hom& h) {
  return std::all_of(h.edge.begin(), h.edge.end(),
                     [](long long v) { return v >= 0; });
}

int ascents(const CirclePerm& s) {
  int a = 0;
  for (int i = 0; i < (int)s.size(); i++)
    if (s[i] > i) a++;
  return a;
}

// The marked points are the maximal runs of consecutive marked edges: edges
// separated only by endpoints of avoided arrows merge, matching the diagram
// where those arrows are deleted. Each run ends at a forced arrow jump.
CirclePerm sigma_of_loop(const std::vector<Arrow>& arrows, const Hom& h) {
  if (!is_cycle(arrows, h) || !is_proper(h) || !is_simple(h) || !is_er(h))
    throw std::domain_error("loop is not proper simple ER");
  int L = (int)h.edge.size();
  auto ends = end_map(arrows);
  std::map<int, int> starts;  // run start position -> marked index
  for (int p = 0; p < L; p++)
    if (h.edge[p] == 1 && h.edge[(p + L - 1) % L] == 0)
      starts[p] = (int)starts.size();
  if (starts.empty()) throw std::logic_error("proper loop without a run start");
  CirclePerm s(starts.size());
  for (auto [p, idx] : starts) {
    int q = p;
    while (h.edge[(q + 1) % L] == 1) q = (q + 1) % L;
    int v = (q + 1) % L;
    auto [i, is_head] = ends[v];
    int next;
    if (!is_head && h.arrow[i] == 1)
      next = arrows[i].head;
    else if (is_head && h.arrow[i] == -1)
      next = arrows[i].tail;
    else
      throw std::logic_error("run ends without an arrow to follow");
    auto it = starts.find(next);
    if (it == starts.end()) throw std::logic_error("arrow jump landed inside a run");
    s[idx] = it->second;
  }
  return s;
}

ErsParts ers_decompose(const std::vector<Arrow>& arrows, const Hom& h) {
  if (!is_cycle(arrows, h)) throw std::domain_error("not a cycle");
  if (!is_proper(h)) throw std::domain_error("loop avoids every arrow");
  int L = (int)h.edge.size();
  auto ends = end_map(arrows);
  ErsParts out;
  out.shift = -*std::min_element(h.edge.begin(), h.edge.end());
  Hom rem = hom_add(h, hom_scale(out.shift, loop_K((int)arrows.size())));
  // One extraction walks edges forward, exiting along any arrow whose
  // remaining coordinate points out of the current vertex, and closes as soon
  // as it returns to a vertex it already passed.  The steps before that vertex
  // are returned to the remainder; the closed suffix is the part.
  struct Step {
    int cell;      // edge position, or arrow index
    int dir;       // 0 for an edge, else the sign taken on the arrow
  };
  while (is_proper(rem)) {
    int start = -1;
    for (int p = 0; p < L && start < 0; p++)
      if (rem.edge[p] > 0) start = p;
    if (start < 0) throw std::logic_error("positive arrow coordinate without support");
    std::vector<Step> path;
    std::vector<int> vpos(L, -1);
    vpos[start] = 0;
    path.push_back({start, 0});
    rem.edge[start]--;
    int v = (start + 1) % L;
    int close = -1;
    while (close < 0) {
      if (vpos[v] >= 0) {
        close = vpos[v];
        break;
      }
      vpos[v] = (int)path.size();
      auto [i, is_head] = ends[v];
      if (!is_head && rem.arrow[i] > 0) {
        path.push_back({i, 1});
        rem.arrow[i]--;
        v = arrows[i].head;
      } else if (is_head && rem.arrow[i] < 0) {
        path.push_back({i, -1});
        rem.arrow[i]++;
        v = arrows[i].tail;
      } else {
        if (rem.edge[v] <= 0)
          throw std::logic_error("greedy walk ran out of edge coordinate");
        path.push_back({v, 0});
        rem.edge[v]--;
        v = (v + 1) % L;
      }
    }
    Hom part = hom_zero((int)arrows.size());
    for (int j = 0; j < (int)path.size(); j++) {
      auto [cell, dir] = path[j];
      if (j < close) {
        if (dir == 0) rem.edge[cell]++; else rem.arrow[cell] += dir;
      } else {
        if (dir == 0) part.edge[cell]++; else part.arrow[cell] += dir;
      }
    }
    if (!is_proper(part)) throw std::logic_error("extracted a plain circle");
    out.parts.push_back(std::move(part));
  }
  for (long long v : rem.edge)
    if (v != 0) throw std::logic_error("greedy left an unconsumed remainder");
  return out;
}

std::vector<Hom> enumerate_proper_ers(const std::vector<Arrow>& arrows) {
  int n = (int)arrows.size();
  std::vector<Hom> out;
  if (n == 0) return out;
  int L = 2 * n;
  auto ends = end_map(arrows);
  std::vector<long long> sign(n, -1);
  while (true) {
    if (std::any_of(sign.begin(), sign.end(), [](long long s) { return s != 0; })) {
      Hom h = hom_zero(n);
      h.arrow = sign;
      for (int p = 1; p < L; p++)
        h.edge[p] = h.edge[p - 1] + jump_at(ends, h, p);
      auto [lo, hi] = std::minmax_element(h.edge.begin(), h.edge.end());
      if (*hi - *lo == 1) {
        long long shift = -*lo;
        for (auto& v : h.edge) v += shift;
        out.push_back(std::move(h));
      }
    }
    int i = n - 1;
    while (i >= 0 && sign[i] == 1) sign[i--] = -1;
    if (i < 0) break;
    sign[i]++;
  }
  return out;
}

Elt mu_eval(const AbelianGaussDiagram& d, const Hom& h) {
  auto dec = decompose(d.arrows, h);
  const Group& g = *d.group;
  Elt r = g.pow(d.global, dec.k_coeff);
  for (size_t i = 0; i < d.arrows.size(); i++)
    r = g.mul(r, g.pow(d.decor[i], dec.arrow_coeff[i]));
  return r;
}

std::vector<Arrow> sigma_diagram(const CirclePerm& s) {
  int n = (int)s.size();
  std::vector<char> seen(n, 0);
  for (int v : s) {
    if (v < 0 || v >= n || seen[v]) throw std::invalid_argument("not a permutation");
    seen[v] = 1;
  }
  std::vector<Arrow> arrows;
  for (int i = 0; i < n; i++) arrows.push_back({2 * i + 1, 2 * s[i], 1});
  return arrows;
}

Hom sigma_loop(const CirclePerm& s) {
  int n = (int)s.size();
  Hom h = hom_zero(n);
  for (int i = 0; i < n; i++) {
    h.edge[2 * i] = 1;
    h.arrow[i] = 1;
  }
  return h;
}

long long lambda_edge(const std::vector<Arrow>& arrows, int e) {
  int L = 2 * (int)arrows.size();
  if (e < 0 || e >= L) throw std::invalid_argument("edge index out of range");
  long long l = 0;
  for (auto& a : arrows)
    if (covers(a, e, L)) l++;
  return l;
}

CirclePerm word_to_perm(const std::vector<int>& word) {
  int n = (int)word.size();
  CirclePerm s(n);
  std::vector<char> seen(n, 0);
  for (int v : word) {
    if (v < 0 || v >= n || seen[v]) throw std::invalid_argument("bad cycle word");
    seen[v] = 1;
  }
  for (int j = 0; j < n; j++) s[word[j]] = word[(j + 1) % n];
  return s;
}

std::vector<int> perm_to_word(const CirclePerm& s) {
  int n = (int)s.size();
  if (n == 0) return {};
  std::vector<int> word{0};
  for (int v = s[0]; v != 0; v = s[v]) {
    if ((int)word.size() > n) throw std::domain_error("permutation is not a cycle");
    word.push_back(v);
  }
  if ((int)word.size() != n) throw std::domain_error("permutation is not a cycle");
  return word;
}

std::vector<int> twist_apply(const std::vector<int>& word, int j) {
  int n = (int)word.size();
  if (n < 2) throw std::invalid_argument("twist needs at least two entries");
  auto w = word;
  std::swap(w[(j % n + n) % n], w[((j + 1) % n + n) % n]);
  return w;
}

TwistType twist_type(const std::vector<int>& word, int j) {
  int n = (int)word.size();
  if (n < 2) throw std::invalid_argument("twist needs at least two entries");
  if (n == 2) return TwistType::A;  // swapping both entries keeps the cycle
  auto at = [&](int k) { return word[(k % n + n) % n]; };
  int p = at(j - 1), x = at(j), y = at(j + 1), q = at(j + 2);
  std::vector<std::pair<int, char>> pts = {{p, 'p'}, {x, 'x'}, {y, 'y'}};
  if (q != p) pts.push_back({q, 'q'});
  std::sort(pts.begin(), pts.end());
  int i0 = 0;
  while (pts[i0].first != p) i0++;
  std::string c;
  for (size_t k = 0; k < pts.size(); k++) c += pts[(i0 + k) % pts.size()].second;
  if (c == "pxqy" || c == "pyqx") return TwistType::A;
  if (c == "pxyq" || c == "pxy") return TwistType::B;
  if (c == "pqxy") return TwistType::C;
  if (c == "pyxq" || c == "pyx") return TwistType::vB;
  if (c == "pqyx") return TwistType::vC;
  throw std::logic_error("unclassified twist configuration " + c);
}

}  // namespace gdc
