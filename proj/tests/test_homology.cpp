#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "gdc/homology.hpp"
#include "test_util.hpp"

using namespace gdc;

// reference energy at an explicit edge, straight from the defining formula
static long long energy_at(const std::vector<Arrow>& arrows, const Hom& h, int e) {
  long long v = h.edge[e];
  int L = (int)h.edge.size();
  for (size_t i = 0; i < arrows.size(); ++i) {
    for (int k = arrows[i].head; k != arrows[i].tail; k = (k + 1) % L)
      if (k == e) {
        v -= h.arrow[i];
        break;
      }
  }
  return v;
}

static Hom random_cycle(const std::vector<Arrow>& arrows, Rng& rng) {
  int n = (int)arrows.size();
  Hom h = hom_scale((long long)rng.below(5) - 2, loop_K(n));
  for (int i = 0; i < n; ++i)
    h = hom_add(h, hom_scale((long long)rng.below(5) - 2, loop_of_arrow(arrows, i)));
  return h;
}

TEST_CASE("fundamental loops satisfy the cycle condition") {
  Rng rng(31);
  for (int it = 0; it < 50; ++it) {
    int n = 1 + rng.below(7);
    auto arrows = random_pairing(n, rng, true);
    CHECK(is_cycle(arrows, loop_K(n)));
    for (int i = 0; i < n; ++i) CHECK(is_cycle(arrows, loop_of_arrow(arrows, i)));
  }
  // degree 1, arrow 0->1: the return arc is the single edge 1
  std::vector<Arrow> one{{0, 1, 1}};
  Hom a = loop_of_arrow(one, 0);
  CHECK(a.edge == std::vector<long long>{0, 1});
  CHECK(a.arrow == std::vector<long long>{1});
}

TEST_CASE("decomposition recovers basis coefficients exactly") {
  Rng rng(32);
  for (int it = 0; it < 80; ++it) {
    int n = 1 + rng.below(7);
    auto arrows = random_pairing(n, rng, true);
    std::vector<long long> c;
    for (int i = 0; i < n; ++i) c.push_back((long long)rng.below(7) - 3);
    long long ck = (long long)rng.below(7) - 3;
    Hom h = hom_scale(ck, loop_K(n));
    for (int i = 0; i < n; ++i)
      h = hom_add(h, hom_scale(c[i], loop_of_arrow(arrows, i)));
    REQUIRE(is_cycle(arrows, h));
    auto d = decompose(arrows, h);
    CHECK(d.arrow_coeff == c);
    CHECK(d.k_coeff == ck);
    // reconstruction is the identity
    Hom back = hom_scale(d.k_coeff, loop_K(n));
    for (int i = 0; i < n; ++i)
      back = hom_add(back, hom_scale(d.arrow_coeff[i], loop_of_arrow(arrows, i)));
    CHECK(back == h);
  }
}

TEST_CASE("energy is reference-edge independent and additive") {
  Rng rng(33);
  for (int it = 0; it < 60; ++it) {
    int n = 1 + rng.below(7);
    auto arrows = random_pairing(n, rng, true);
    Hom h = random_cycle(arrows, rng);
    long long e = energy(arrows, h);
    for (int ref = 0; ref < 2 * n; ++ref) CHECK(energy_at(arrows, h, ref) == e);
    Hom h2 = random_cycle(arrows, rng);
    CHECK(energy(arrows, hom_add(h, h2)) == e + energy(arrows, h2));
    CHECK(energy(arrows, loop_K(n)) == 1);
    for (int i = 0; i < n; ++i) CHECK(energy(arrows, loop_of_arrow(arrows, i)) == 0);
    CHECK(energy(arrows, hom_sub(hom_scale(2, loop_K(n)), loop_of_arrow(arrows, 0))) == 2);
  }
  // a non-cycle is rejected
  std::vector<Arrow> one{{0, 1, 1}};
  CHECK_THROWS_AS(energy(one, Hom{{1, 0}, {0}}), std::domain_error);
  // degree 0: the circle alone
  CHECK(energy({}, loop_K(0)) == 1);
  CHECK(torsion({}, loop_K(0)) == -1);
}

TEST_CASE("torsion pins and orientation independence") {
  Rng rng(34);
  for (int it = 0; it < 60; ++it) {
    int n = 1 + rng.below(7);
    auto arrows = random_pairing(n, rng, true);
    CHECK(torsion(arrows, loop_K(n)) == -1);
    for (int i = 0; i < n; ++i) CHECK(torsion(arrows, loop_of_arrow(arrows, i)) == 0);
    Hom h = random_cycle(arrows, rng);
    // reversing the arrows flips the arrow coordinates, nothing else
    auto rev = arrows;
    for (auto& a : rev) std::swap(a.tail, a.head);
    Hom hr = h;
    for (auto& c : hr.arrow) c = -c;
    REQUIRE(is_cycle(rev, hr));
    CHECK(torsion(rev, hr) == torsion(arrows, h));
    CHECK(energy(arrows, h) ==
          -torsion(arrows, h) -
              std::accumulate(h.arrow.begin(), h.arrow.end(), 0LL,
                              [](long long s, long long c) { return c < 0 ? s + c : s; }));
  }
}

TEST_CASE("ascent pins") {
  CHECK(ascents({0, 1, 2, 3}) == 0);
  CHECK(ascents({1, 0}) == 1);
  for (int n = 1; n <= 7; ++n) {
    CirclePerm s0(n);
    for (int i = 0; i < n; ++i) s0[i] = (i + 1) % n;
    CHECK(ascents(s0) == n - 1);
  }
  // invariance under conjugation by the full rotation
  Rng rng(35);
  for (int it = 0; it < 100; ++it) {
    int m = 1 + rng.below(8);
    std::vector<int> s(m);
    for (int i = 0; i < m; ++i) s[i] = i;
    for (int i = m - 1; i > 0; --i) std::swap(s[i], s[rng.below(i + 1)]);
    CirclePerm conj(m);
    for (int i = 0; i < m; ++i) conj[(i + 1) % m] = (s[i] + 1) % m;
    CHECK(ascents(conj) == ascents(CirclePerm(s.begin(), s.end())));
  }
}

TEST_CASE("proper ERS enumeration matches brute force on small degrees") {
  Rng rng(36);
  for (int it = 0; it < 20; ++it) {
    int n = 1 + rng.below(2);
    auto arrows = random_pairing(n, rng, true);
    std::set<std::vector<long long>> brute;
    int L = 2 * n;
    std::vector<long long> flat(L + n, 0);
    // every edge vector in {0,1}^L, arrow vector in {-1,0,1}^n
    for (int mask = 0; mask < (1 << L); ++mask) {
      std::vector<long long> ev(L);
      for (int p = 0; p < L; ++p) ev[p] = (mask >> p) & 1;
      int total = 1;
      for (int i = 0; i < n; ++i) total *= 3;
      for (int t = 0; t < total; ++t) {
        std::vector<long long> av(n);
        int x = t;
        for (int i = 0; i < n; ++i) {
          av[i] = x % 3 - 1;
          x /= 3;
        }
        Hom h{ev, av};
        if (is_cycle(arrows, h) && is_proper(h) && is_simple(h) && is_er(h)) {
          auto key = ev;
          key.insert(key.end(), av.begin(), av.end());
          brute.insert(key);
        }
      }
    }
    std::set<std::vector<long long>> fast;
    for (auto& h : enumerate_proper_ers(arrows)) {
      CHECK(is_cycle(arrows, h));
      CHECK(is_proper(h));
      CHECK(is_simple(h));
      CHECK(is_er(h));
      auto key = h.edge;
      key.insert(key.end(), h.arrow.begin(), h.arrow.end());
      fast.insert(key);
    }
    CHECK(fast == brute);
  }
}

TEST_CASE("torsion equals the ascent count of the induced permutation") {
  Rng rng(37);
  for (int it = 0; it < 40; ++it) {
    int n = 1 + rng.below(5);
    auto arrows = random_pairing(n, rng, true);
    for (auto& h : enumerate_proper_ers(arrows)) {
      auto s = sigma_of_loop(arrows, h);
      CHECK(torsion(arrows, h) == ascents(s));
    }
  }
}

TEST_CASE("greedy ERS decomposition meets its contract") {
  Rng rng(38);
  int proper_seen = 0;
  for (int it = 0; it < 120; ++it) {
    int n = 1 + rng.below(6);
    auto arrows = random_pairing(n, rng, true);
    Hom h = random_cycle(arrows, rng);
    if (!is_proper(h)) {
      CHECK_THROWS_AS(ers_decompose(arrows, h), std::domain_error);
      continue;
    }
    ++proper_seen;
    auto [m, parts] = ers_decompose(arrows, h);
    Hom sum = hom_zero(n);
    for (auto& p : parts) {
      CHECK(is_cycle(arrows, p));
      CHECK(is_proper(p));
      CHECK(is_simple(p));
      CHECK(is_er(p));
      sum = hom_add(sum, p);
    }
    CHECK(hom_add(h, hom_scale(m, loop_K(n))) == sum);
    // parts never disagree on an arrow's direction
    for (int i = 0; i < n; ++i)
      for (auto& p : parts)
        for (auto& q : parts) CHECK(p.arrow[i] * q.arrow[i] >= 0);
    // torsion adds over the parts
    long long tsum = 0;
    for (auto& p : parts) tsum += torsion(arrows, p);
    CHECK(torsion(arrows, hom_add(h, hom_scale(m, loop_K(n)))) == tsum);
    CHECK(torsion(arrows, h) - m == tsum);
  }
  CHECK(proper_seen > 60);
  // an ERS loop whose permutation is one cycle comes back unchanged
  Rng rng2(39);
  for (int it = 0; it < 10; ++it) {
    int n = 1 + rng2.below(4);
    auto arrows = random_pairing(n, rng2, true);
    for (auto& h : enumerate_proper_ers(arrows)) {
      auto [m, parts] = ers_decompose(arrows, h);
      CHECK(m == 0);
      auto s = sigma_of_loop(arrows, h);
      std::vector<char> seen(s.size(), 0);
      int cycles = 0;
      for (int i = 0; i < (int)s.size(); ++i) {
        if (seen[i]) continue;
        ++cycles;
        for (int v = i; !seen[v]; v = s[v]) seen[v] = 1;
      }
      CHECK((int)parts.size() == cycles);
      if (cycles == 1) {
        REQUIRE(parts.size() == 1);
        CHECK(parts[0] == h);
      }
    }
  }
}

TEST_CASE("decorating map evaluates through both routes") {
  Rng rng(40);
  auto z2 = Group::free_abelian(2);
  for (int it = 0; it < 60; ++it) {
    int n = 1 + rng.below(5);
    GaussDiagram g = random_gauss(z2, n, 2, rng);
    AbelianGaussDiagram d = abelianize(g);
    Hom h = random_cycle(d.arrows, rng);
    // d is canonical, so its positions may be a rotation of g's; find one
    // rotation that reproduces d's arrows and decorations
    int L = 2 * n;
    int rot = -1;
    for (int r = 0; r < L && rot < 0; ++r) {
      std::vector<std::pair<Arrow, Elt>> v;
      for (int i = 0; i < n; ++i) {
        Arrow a = g.arrows[i];
        a.tail = (a.tail + r) % L;
        a.head = (a.head + r) % L;
        Elt acc = z2->id();
        for (int j = g.arrows[i].head; j != g.arrows[i].tail; j = (j + 1) % L)
          acc = z2->mul(acc, g.edges[j]);
        v.push_back({a, acc});
      }
      std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) {
        return x.first.tail < y.first.tail;
      });
      bool ok = true;
      for (int i = 0; i < n; ++i)
        ok = ok && v[i].first.tail == d.arrows[i].tail &&
             v[i].first.head == d.arrows[i].head &&
             v[i].first.writhe == d.arrows[i].writhe && v[i].second == d.decor[i];
      if (ok) rot = r;
    }
    REQUIRE(rot >= 0);
    // direct route: edgewise evaluation on the diagram d came from
    Elt direct = z2->id();
    for (int p = 0; p < L; ++p)
      direct = z2->mul(direct, z2->pow(g.edges[p], h.edge[(p + rot) % L]));
    CHECK(mu_eval(d, h) == direct);
  }
  // pins on the basis
  auto z = Group::free_abelian(1);
  AbelianGaussDiagram d =
      AbelianGaussDiagram::make(z, 2, {{0, 2, 1}, {1, 3, -1}}, {{7}, {5}}, {10});
  CHECK(mu_eval(d, loop_K(2)) == Elt{10});
  CHECK(mu_eval(d, loop_of_arrow(d.arrows, 0)) == d.decor[0]);
  CHECK(mu_eval(d, loop_of_arrow(d.arrows, 1)) == d.decor[1]);
}

TEST_CASE("permutation diagrams: lambda lemma and twist table") {
  // sigma_0 pin: lambda(red) = n, lambda(blue) = n-1
  for (int n = 1; n <= 7; ++n) {
    std::vector<int> w0(n);
    for (int i = 0; i < n; ++i) w0[i] = i;
    auto arrows = sigma_diagram(word_to_perm(w0));
    for (int i = 0; i < n; ++i) {
      CHECK(lambda_edge(arrows, 2 * i) == n);
      CHECK(lambda_edge(arrows, 2 * i + 1) == n - 1);
    }
  }
  // all cycle words up to n = 6
  for (int n = 2; n <= 6; ++n) {
    std::vector<int> rest(n - 1);
    for (int i = 0; i < n - 1; ++i) rest[i] = i + 1;
    do {
      std::vector<int> word{0};
      word.insert(word.end(), rest.begin(), rest.end());
      auto s = word_to_perm(word);
      CHECK(perm_to_word(s) == word);
      auto arrows = sigma_diagram(s);
      Hom gamma = sigma_loop(s);
      REQUIRE(is_cycle(arrows, gamma));
      CHECK(sigma_of_loop(arrows, gamma) == s);
      long long a = ascents(s);
      for (int i = 0; i < n; ++i) {
        CHECK(lambda_edge(arrows, 2 * i) == a + 1);
        CHECK(lambda_edge(arrows, 2 * i + 1) == a);
      }
      long long t = torsion(arrows, gamma);
      CHECK(t == a);
      for (int j = 0; j < n; ++j) {
        auto w2 = twist_apply(word, j);
        auto s2 = word_to_perm(w2);
        long long dt = torsion(sigma_diagram(s2), sigma_loop(s2)) - t;
        long long dl = lambda_edge(sigma_diagram(s2), 0) - lambda_edge(arrows, 0);
        CHECK(dl == dt);
        switch (twist_type(word, j)) {
          case TwistType::A: CHECK(dt == 0); break;
          case TwistType::B:
          case TwistType::C: CHECK(dt == -1); break;
          case TwistType::vB:
          case TwistType::vC: CHECK(dt == 1); break;
        }
      }
    } while (std::next_permutation(rest.begin(), rest.end()));
  }
  CHECK_THROWS_AS(perm_to_word({1, 0, 2}), std::domain_error);
}
