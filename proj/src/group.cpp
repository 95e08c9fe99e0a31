#include "gdc/group.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace gdc {

static void fail(const std::string& m) { throw std::invalid_argument(m); }

GroupPtr Group::trivial() {
  auto g = std::make_shared<Group>();
  g->kind = GroupKind::trivial;
  g->spec = "trivial";
  return g;
}

static std::string weight_suffix(const std::vector<int>& w) {
  bool nt = false;
  for (int x : w) nt |= (x != 1);
  if (!nt) return "";
  std::string s = " w";
  for (int x : w) s += x == 1 ? " 1" : " -1";
  return s;
}

GroupPtr Group::free_abelian(int k, std::vector<int> w) {
  if (k < 1) fail("free_abelian: rank must be >= 1");
  if (w.empty()) w.assign(k, 1);
  if ((int)w.size() != k) fail("free_abelian: weight count mismatch");
  for (int x : w)
    if (x != 1 && x != -1) fail("free_abelian: weights must be +-1");
  auto g = std::make_shared<Group>();
  g->kind = GroupKind::free_abelian;
  g->rank = k;
  g->gen_w = w;
  g->spec = (k == 1 ? std::string("Z") : "Z^" + std::to_string(k)) + weight_suffix(w);
  return g;
}

GroupPtr Group::free_group(int k, std::vector<int> w) {
  if (k < 1) fail("free: rank must be >= 1");
  if (w.empty()) w.assign(k, 1);
  if ((int)w.size() != k) fail("free: weight count mismatch");
  for (int x : w)
    if (x != 1 && x != -1) fail("free: weights must be +-1");
  auto g = std::make_shared<Group>();
  g->kind = GroupKind::free_group;
  g->rank = k;
  g->gen_w = w;
  g->spec = "free " + std::to_string(k) + weight_suffix(w);
  return g;
}

GroupPtr Group::finite(std::vector<int> mult, std::vector<int> w,
                       const std::string& spec_name) {
  size_t n2 = mult.size();
  int n = 0;
  while ((size_t)n * n < n2) ++n;
  if ((size_t)n * n != n2 || n == 0) fail("finite: mult table is not square");
  if (n > 512) fail("finite: order capped at 512");
  if (w.empty()) w.assign(n, 1);
  if ((int)w.size() != n) fail("finite: weight count mismatch");
  auto at = [&](int a, int b) { return mult[(size_t)a * n + b]; };
  for (int v : mult)
    if (v < 0 || v >= n) fail("finite: table entry out of range");
  for (int a = 0; a < n; ++a)
    if (at(0, a) != a || at(a, 0) != a) fail("finite: element 0 is not the identity");
  // Latin square
  for (int a = 0; a < n; ++a) {
    std::vector<char> row(n, 0), col(n, 0);
    for (int b = 0; b < n; ++b) {
      if (row[at(a, b)]++) fail("finite: duplicate in row");
      if (col[at(b, a)]++) fail("finite: duplicate in column");
    }
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (at(at(a, b), c) != at(a, at(b, c))) fail("finite: not associative");
  std::vector<int> inv(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (at(a, b) == 0) {
        if (at(b, a) != 0) fail("finite: one-sided inverse");
        inv[a] = b;
      }
  for (int a = 0; a < n; ++a)
    if (inv[a] < 0) fail("finite: missing inverse");
  for (int x : w)
    if (x != 1 && x != -1) fail("finite: weights must be +-1");
  if (w[0] != 1) fail("finite: w(identity) must be 1");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (w[at(a, b)] != w[a] * w[b]) fail("finite: w is not a homomorphism");
  auto g = std::make_shared<Group>();
  g->kind = GroupKind::finite;
  g->rank = n;
  g->mtab = std::move(mult);
  g->itab = std::move(inv);
  g->wtab = std::move(w);
  g->spec = spec_name.empty() ? "finite " + std::to_string(n) : spec_name;
  return g;
}

GroupPtr Group::cyclic(int m) {
  if (m < 1) fail("cyclic: order must be >= 1");
  std::vector<int> t((size_t)m * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) t[(size_t)a * m + b] = (a + b) % m;
  return finite(std::move(t), {}, "cyclic " + std::to_string(m));
}

Elt Group::id() const {
  switch (kind) {
    case GroupKind::trivial: return {};
    case GroupKind::free_abelian: return Elt(rank, 0);
    case GroupKind::free_group: return {};
    case GroupKind::finite: return {0};
  }
  return {};
}

bool Group::is_id(const Elt& a) const {
  return a == id();
}

static Elt reduce_word(Elt w) {
  Elt out;
  for (int t : w) {
    if (!out.empty() && out.back() == -t) out.pop_back();
    else out.push_back(t);
  }
  return out;
}

Elt Group::mul(const Elt& a, const Elt& b) const {
  switch (kind) {
    case GroupKind::trivial: return {};
    case GroupKind::free_abelian: {
      Elt c(rank);
      for (int i = 0; i < rank; ++i) c[i] = a[i] + b[i];
      return c;
    }
    case GroupKind::free_group: {
      Elt c = a;
      c.insert(c.end(), b.begin(), b.end());
      return reduce_word(std::move(c));
    }
    case GroupKind::finite: return {mtab[(size_t)a[0] * rank + b[0]]};
  }
  return {};
}

Elt Group::inv(const Elt& a) const {
  switch (kind) {
    case GroupKind::trivial: return {};
    case GroupKind::free_abelian: {
      Elt c(rank);
      for (int i = 0; i < rank; ++i) c[i] = -a[i];
      return c;
    }
    case GroupKind::free_group: {
      Elt c(a.rbegin(), a.rend());
      for (int& t : c) t = -t;
      return c;
    }
    case GroupKind::finite: return {itab[a[0]]};
  }
  return {};
}

Elt Group::pow(const Elt& a, long long e) const {
  if (kind == GroupKind::free_abelian) {
    Elt c(rank);
    for (int i = 0; i < rank; ++i) c[i] = (int)(a[i] * e);
    return c;
  }
  Elt base = e < 0 ? inv(a) : a;
  long long k = e < 0 ? -e : e;
  Elt acc = id();
  while (k--) acc = mul(acc, base);
  return acc;
}

Elt Group::conj(const Elt& a, const Elt& g) const {
  return mul(mul(inv(g), a), g);
}

int Group::w(const Elt& a) const {
  switch (kind) {
    case GroupKind::trivial: return 1;
    case GroupKind::free_abelian: {
      int s = 1;
      for (int i = 0; i < rank; ++i)
        if (gen_w[i] == -1 && (a[i] & 1)) s = -s;
      return s;
    }
    case GroupKind::free_group: {
      int s = 1;
      for (int t : a)
        if (gen_w[std::abs(t) - 1] == -1) s = -s;
      return s;
    }
    case GroupKind::finite: return wtab[a[0]];
  }
  return 1;
}

bool Group::abelian() const {
  switch (kind) {
    case GroupKind::trivial:
    case GroupKind::free_abelian: return true;
    case GroupKind::free_group: return false;
    case GroupKind::finite:
      for (int a = 0; a < rank; ++a)
        for (int b = 0; b < a; ++b)
          if (mtab[(size_t)a * rank + b] != mtab[(size_t)b * rank + a]) return false;
      return true;
  }
  return true;
}

bool Group::trivial_w() const {
  switch (kind) {
    case GroupKind::trivial: return true;
    case GroupKind::free_abelian:
    case GroupKind::free_group:
      for (int x : gen_w)
        if (x != 1) return false;
      return true;
    case GroupKind::finite:
      for (int x : wtab)
        if (x != 1) return false;
      return true;
  }
  return true;
}

void Group::check(const Elt& a) const {
  switch (kind) {
    case GroupKind::trivial:
      if (!a.empty()) fail("element of the trivial group must be empty");
      return;
    case GroupKind::free_abelian:
      if ((int)a.size() != rank) fail("vector length must equal the rank");
      return;
    case GroupKind::free_group:
      for (int t : a)
        if (t == 0 || std::abs(t) > rank) fail("word token out of range");
      if (reduce_word(a) != a) fail("word is not reduced");
      return;
    case GroupKind::finite:
      if (a.size() != 1 || a[0] < 0 || a[0] >= rank) fail("finite element index out of range");
      return;
  }
}

static Elt cyclic_reduce(Elt w) {
  w = reduce_word(std::move(w));
  while (w.size() >= 2 && w.front() == -w.back()) {
    w.erase(w.begin());
    w.pop_back();
  }
  return w;
}

Elt Group::class_rep(const Elt& a) const {
  switch (kind) {
    case GroupKind::trivial:
    case GroupKind::free_abelian: return a;
    case GroupKind::free_group: {
      Elt w = cyclic_reduce(a);
      if (w.empty()) return w;
      Elt best = w;
      Elt cur = w;
      for (size_t i = 1; i < w.size(); ++i) {
        std::rotate(cur.begin(), cur.begin() + 1, cur.end());
        if (cur < best) best = cur;
      }
      return best;
    }
    case GroupKind::finite: {
      int best = a[0];
      for (int g = 0; g < rank; ++g) {
        int c = mtab[(size_t)mtab[(size_t)itab[g] * rank + a[0]] * rank + g];
        best = std::min(best, c);
      }
      return {best};
    }
  }
  return a;
}

bool Group::same_class(const Elt& a, const Elt& b) const {
  return class_rep(a) == class_rep(b);
}

long long Group::norm(const Elt& a) const {
  switch (kind) {
    case GroupKind::trivial: return 0;
    case GroupKind::free_abelian: {
      long long s = 0;
      for (int c : a) s += std::abs((long long)c);
      return s;
    }
    case GroupKind::free_group: return (long long)a.size();
    case GroupKind::finite: return a[0] == 0 ? 0 : 1;
  }
  return 0;
}

int Group::cmp(const Elt& a, const Elt& b) const {
  long long na = norm(a), nb = norm(b);
  if (na != nb) return na < nb ? -1 : 1;
  if (a != b) return a < b ? -1 : 1;
  return 0;
}

std::vector<Elt> Group::ball(int r) const {
  if (r < 0) fail("ball radius must be >= 0");
  std::vector<Elt> out;
  switch (kind) {
    case GroupKind::trivial: out.push_back({}); break;
    case GroupKind::free_abelian: {
      Elt cur(rank, 0);
      // all vectors with L1 norm <= r
      auto rec = [&](auto&& self, int i, int left) -> void {
        if (i == rank) {
          out.push_back(cur);
          return;
        }
        for (int c = -left; c <= left; ++c) {
          cur[i] = c;
          self(self, i + 1, left - std::abs(c));
        }
        cur[i] = 0;
      };
      rec(rec, 0, r);
      break;
    }
    case GroupKind::free_group: {
      out.push_back({});
      size_t lo = 0;
      for (int len = 1; len <= r; ++len) {
        size_t hi = out.size();
        for (size_t i = lo; i < hi; ++i) {
          for (int t = -rank; t <= rank; ++t) {
            if (t == 0) continue;
            if (!out[i].empty() && out[i].back() == -t) continue;
            Elt w = out[i];
            w.push_back(t);
            out.push_back(std::move(w));
          }
        }
        lo = hi;
      }
      break;
    }
    case GroupKind::finite: {
      out.push_back({0});
      if (r >= 1)
        for (int a = 1; a < rank; ++a) out.push_back({a});
      break;
    }
  }
  std::sort(out.begin(), out.end(), [&](const Elt& a, const Elt& b) { return cmp(a, b) < 0; });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Elt> Group::elements() const {
  if (kind != GroupKind::finite) fail("elements(): finite groups only");
  std::vector<Elt> out;
  for (int a = 0; a < rank; ++a) out.push_back({a});
  return out;
}

std::vector<Elt> Group::class_reps() const {
  if (kind != GroupKind::finite) fail("class_reps(): finite groups only");
  std::vector<Elt> out;
  for (int a = 0; a < rank; ++a)
    if (class_rep({a}) == Elt{a}) out.push_back({a});
  return out;
}

}
