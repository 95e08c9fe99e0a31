#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <set>

#include "gdc/homology.hpp"
#include "gdc/moves.hpp"
#include "gdc/textio.hpp"
#include "test_util.hpp"

using namespace gdc;

static Move mv(MoveKind k, std::vector<int> at) {
  Move m;
  m.kind = k;
  m.at = std::move(at);
  return m;
}

static Move r1p(int gap, int dir, int wr, const Elt& a) {
  Move m = mv(MoveKind::r1_plus, {gap});
  m.dir = dir;
  m.writhe = wr;
  m.a = a;
  return m;
}

static Move r2p(int j, int k, int pat, int heads, int ws, const Elt& p1, const Elt& p2) {
  Move m = mv(MoveKind::r2_plus, {j, k});
  m.pat = pat;
  m.heads = heads;
  m.writhe = ws;
  m.a = p1;
  m.b = p2;
  return m;
}

static Move wmove(int arrow, const Elt& g) {
  Move m = mv(MoveKind::w, {arrow});
  m.a = g;
  return m;
}

static GaussDiagram replay(GaussDiagram d, const std::vector<Move>& ms) {
  for (const Move& m : ms) d = apply_move(d, m);
  return d;
}

TEST_CASE("move text round-trips") {
  auto f2 = Group::free_group(2);
  auto z = Group::free_abelian(1);
  std::vector<Move> ms = {
      mv(MoveKind::r1_minus, {3}),
      r1p(2, 1, -1, Elt{1, -2}),
      mv(MoveKind::r2_minus, {0, 4}),
      r2p(1, 5, -1, 1, 1, Elt{2}, Elt{-1}),
      wmove(2, Elt{1, 1}),
  };
  Move r3 = mv(MoveKind::r3, {0, 2, 5});
  r3.type = 2;
  ms.push_back(r3);
  for (const Move& m : ms) {
    std::string s = move_to_string(*f2, m);
    CHECK(parse_move(*f2, s) == m);
  }
  CHECK(move_to_string(*f2, ms[0]) == "R1- @arrow=3");
  CHECK(move_to_string(*z, r1p(0, -1, 1, Elt{4})) == "R1+ @edge=0 a=[4] dir=ht writhe=+");
  CHECK(parse_move(*z, "R2+ @edges=0,0 p1=[1] p2=[2] rest=[3] pat=nested heads=second wsign=-")
            .rest == Elt{3});

  // shapes without the liftable decorations still parse (the abelian forms)
  Move ab = parse_move(*z, "R1+ @edge=1 dir=th writhe=-");
  CHECK(!ab.a.has_value());
  CHECK(ab.dir == 1);
  CHECK(!parse_move(*z, "R2+ @edges=2,2 p1=[1] pat=crossing heads=first wsign=+").b.has_value());

  CHECK_THROWS_AS(parse_move(*f2, "R5 @arrow=0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_move(*f2, "R1- @edge=0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_move(*f2, "R1- @arrow=x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_move(*f2, "R1+ @edge=0 a=x1"), std::invalid_argument);   // no dir/writhe
  CHECK_THROWS_AS(parse_move(*f2, "R1+ @edge=0 a=q9 dir=th writhe=+"), std::invalid_argument);
  CHECK_THROWS_AS(parse_move(*f2, "R2- @arrows=1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_move(*f2, "R3 @arrows=0,1,2"), std::invalid_argument);   // no type
  CHECK_THROWS_AS(parse_move(*f2, "W @arrow=0"), std::invalid_argument);         // no g
  CHECK_THROWS_AS(parse_move(*f2, "W @arrow=0 g=x1 junk=1"), std::invalid_argument);
}

TEST_CASE("r1 insertion and removal invert each other") {
  Rng rng(20260101);
  std::vector<GroupPtr> groups = {Group::trivial(), Group::free_abelian(2),
                                  Group::free_group(2, {1, -1}),
                                  load_table(GDC_DATA_DIR "/s3.table")};
  for (auto& g : groups) {
    auto ball = g->ball(1);
    for (int it = 0; it < 25; ++it) {
      int n = rng.below(3);
      GaussDiagram d = n == 0 ? GaussDiagram::degree0(g, g->class_rep(rng.pick(ball)))
                              : random_gauss(g, n, 1, rng);
      int gap = n == 0 ? 0 : (int)rng.below(2 * n);
      Elt a = n == 0 ? d.cls : rng.pick(ball);
      Move m = r1p(gap, rng.coin() ? 1 : -1, rng.sign(), a);
      REQUIRE(validates(d, m));
      AppliedMove t = apply_tracked(d, m);
      REQUIRE(t.result.degree == n + 1);
      REQUIRE(t.new_arrows.size() == 1);
      int idx = t.new_arrows[0];
      const Arrow& na = t.result.arrows[idx];
      CHECK(na.writhe == m.writhe);
      int L2 = 2 * (n + 1);
      int first = ((n == 0 ? 0 : gap + 1) + t.rot) % L2;
      int second = (first + 1) % L2;
      CHECK((m.dir > 0 ? na.tail : na.head) == first);
      CHECK((m.dir > 0 ? na.head : na.tail) == second);
      CHECK(g->is_id(t.result.edges[first]));

      Move back = mv(MoveKind::r1_minus, {idx});
      REQUIRE(validates(t.result, back));
      CHECK(apply_move(t.result, back) == d);
    }
  }
}

TEST_CASE("r2 insertion and removal invert each other") {
  Rng rng(20260102);
  std::vector<GroupPtr> groups = {Group::free_abelian(1), Group::free_group(2),
                                  load_table(GDC_DATA_DIR "/z2w.table")};
  for (auto& g : groups) {
    auto ball = g->ball(1);
    for (int it = 0; it < 30; ++it) {
      int n = rng.below(3);
      GaussDiagram d;
      Move m;
      if (n == 0) {
        Elt c = rng.pick(ball);
        d = GaussDiagram::degree0(g, g->class_rep(c));
        Elt p1 = rng.pick(ball), p2 = rng.pick(ball);
        m = r2p(0, 0, rng.sign(), rng.sign(), rng.sign(), p1, p2);
        m.rest = g->mul(g->inv(g->mul(p1, p2)), c);
      } else {
        d = random_gauss(g, n, 1, rng);
        m = r2p(rng.below(2 * n), rng.below(2 * n), rng.sign(), rng.sign(), rng.sign(),
                rng.pick(ball), rng.pick(ball));
        if (m.at[0] > m.at[1]) std::swap(m.at[0], m.at[1]);
      }
      REQUIRE(validates(d, m));
      AppliedMove t = apply_tracked(d, m);
      REQUIRE(t.result.degree == n + 2);
      REQUIRE(t.new_arrows.size() == 2);
      CHECK(t.result.arrows[t.new_arrows[0]].writhe == m.writhe);
      CHECK(t.result.arrows[t.new_arrows[1]].writhe == -m.writhe);

      Move back = mv(MoveKind::r2_minus,
                     {std::min(t.new_arrows[0], t.new_arrows[1]),
                      std::max(t.new_arrows[0], t.new_arrows[1])});
      REQUIRE(validates(t.result, back));
      CHECK(apply_move(t.result, back) == d);
    }
  }
}

TEST_CASE("r2 removal merges the side markings") {
  auto f4 = Group::free_group(4);
  Elt a{1}, b{2}, c{3}, dd{4};

  // pair over 1-marked tail and head edges, one spectator chord after it:
  // the three surviving arcs collapse to (c, d a b)
  GaussDiagram d = GaussDiagram::make(
      f4, 3, {{0, 2, 1}, {1, 3, -1}, {4, 5, 1}},
      {f4->id(), a, f4->id(), b, c, dd});
  std::vector<Move> removals;
  for (const Move& m : enumerate_moves(d, 0, kind_bit(MoveKind::r2_minus)))
    removals.push_back(m);
  REQUIRE(removals.size() == 1);
  GaussDiagram got = apply_move(d, removals[0]);
  GaussDiagram want = GaussDiagram::make(
      f4, 1, {{0, 1, 1}}, {c, f4->mul(f4->mul(dd, a), b)});
  CHECK(got == want);

  // removing the last two chords leaves the class of the full product
  GaussDiagram e = GaussDiagram::make(f4, 2, {{0, 2, 1}, {1, 3, -1}},
                                      {f4->id(), a, f4->id(), b});
  std::vector<Move> last = enumerate_moves(e, 0, kind_bit(MoveKind::r2_minus));
  REQUIRE(last.size() == 1);
  CHECK(apply_move(e, last[0]) == GaussDiagram::degree0(f4, f4->mul(a, b)));

  // same-writhe pairs never qualify
  GaussDiagram f = GaussDiagram::make(f4, 2, {{0, 2, 1}, {1, 3, 1}},
                                      {f4->id(), a, f4->id(), b});
  CHECK(enumerate_moves(f, 0, kind_bit(MoveKind::r2_minus)).empty());
}

// every triple of 1-marked edges whose boundaries pair the three chords off
// against each other, cover six distinct positions, and pass the side
// conditions; rebuilt here from the raw edge statistics
static std::vector<std::array<int, 3>> r3_sites_oracle(const GaussDiagram& d, int i, int j,
                                                       int k) {
  int L = 2 * d.degree;
  EndMap em = d.ends();
  std::vector<std::array<int, 3>> out;
  for (int e1 = 0; e1 < L; ++e1)
    for (int e2 = e1 + 1; e2 < L; ++e2)
      for (int e3 = e2 + 1; e3 < L; ++e3) {
        std::array<int, 3> es{e1, e2, e3};
        bool ok = true;
        std::set<int> pos;
        std::set<std::pair<int, int>> pairs;
        std::set<int> ups, weps;
        for (int e : es) {
          ok = ok && d.group->is_id(d.edges[e]);
          pos.insert(e);
          pos.insert((e + 1) % L);
          int x = em[e].first, y = em[(e + 1) % L].first;
          if (x > y) std::swap(x, y);
          bool of_triple = (x == i || x == j || x == k) && (y == i || y == j || y == k);
          ok = ok && of_triple && x != y;
          pairs.insert({x, y});
          ups.insert(edge_up(d, e));
          weps.insert(edge_w(d, e) * edge_eps(d, e));
        }
        if (ok && pos.size() == 6 && pairs.size() == 3 && ups.size() == 3 && weps.size() == 1)
          out.push_back(es);
      }
  return out;
}

TEST_CASE("r3 sites match a brute-force filter and switches are involutions") {
  Rng rng(20260103);
  auto triv = Group::trivial();
  auto z2 = load_table(GDC_DATA_DIR "/z2.table");
  int seen = 0;
  for (int it = 0; it < 260; ++it) {
    GroupPtr g = it % 2 == 0 ? triv : z2;
    int n = 3 + (int)rng.below(2);
    GaussDiagram d = random_gauss(g, n, 1, rng);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
          auto sites = r3_sites(d, i, j, k);
          REQUIRE(sites == r3_sites_oracle(d, i, j, k));
          for (int t = 1; t <= (int)sites.size(); ++t) {
            ++seen;
            Move m = mv(MoveKind::r3, {i, j, k});
            m.type = t;
            REQUIRE(validates(d, m));
            AppliedMove tr = apply_tracked(d, m);
            const GaussDiagram& r = tr.result;
            REQUIRE(r.degree == n);
            CHECK(diagram_sign(r) == diagram_sign(d));
            int L = 2 * n;
            for (int p = 0; p < L; ++p) CHECK(r.edges[(p + tr.rot) % L] == d.edges[p]);

            // the switched site, carried through the rotation, undoes the move
            std::array<int, 3> moved;
            for (int s = 0; s < 3; ++s) moved[s] = (sites[t - 1][s] + tr.rot) % L;
            std::sort(moved.begin(), moved.end());
            std::vector<int> trip = {tr.arrow_to[i], tr.arrow_to[j], tr.arrow_to[k]};
            std::sort(trip.begin(), trip.end());
            auto back_sites = r3_sites(r, trip[0], trip[1], trip[2]);
            auto hit = std::find(back_sites.begin(), back_sites.end(), moved);
            REQUIRE(hit != back_sites.end());
            Move back = mv(MoveKind::r3, trip);
            back.type = (int)(hit - back_sites.begin()) + 1;
            CHECK(apply_move(r, back) == d);
          }
        }
  }
  CHECK(seen > 25);
}

TEST_CASE("conjugacy moves compose and preserve the shadow") {
  Rng rng(20260104);
  std::vector<GroupPtr> groups = {Group::free_group(2, {-1, 1}),
                                  load_table(GDC_DATA_DIR "/z2w.table"),
                                  load_table(GDC_DATA_DIR "/s3.table")};
  for (auto& g : groups) {
    auto ball = g->ball(1);
    for (int it = 0; it < 20; ++it) {
      int n = 1 + (int)rng.below(3);
      GaussDiagram d = random_gauss(g, n, 1, rng);
      int i = (int)rng.below(n);
      Elt u = rng.pick(ball), v = rng.pick(ball);

      CHECK(apply_move(d, wmove(i, g->id())) == d);

      AppliedMove t = apply_tracked(d, wmove(i, u));
      CHECK(diagram_sign(t.result) == diagram_sign(d));
      int L = 2 * n;
      for (int j = 0; j < n; ++j) {
        Arrow a = d.arrows[j];
        a.tail = (a.tail + t.rot) % L;
        a.head = (a.head + t.rot) % L;
        if (j == i && g->w(u) < 0) std::swap(a.tail, a.head);
        CHECK(t.result.arrows[t.arrow_to[j]] == a);
      }

      CHECK(apply_move(t.result, wmove(t.arrow_to[i], g->inv(u))) == d);
      CHECK(apply_move(t.result, wmove(t.arrow_to[i], v)) ==
            apply_move(d, wmove(i, g->mul(u, v))));
    }
  }

  // one chord, both edges between its own ends: each marking is conjugated
  // and an orientation-reversing conjugator flips the chord
  auto fw = Group::free_group(2, {-1, 1});
  Elt x1{1}, x2{2};
  GaussDiagram d1 = GaussDiagram::make(fw, 1, {{0, 1, 1}}, {x1, x2});
  CHECK(apply_move(d1, wmove(0, x1)) ==
        GaussDiagram::make(fw, 1, {{1, 0, 1}}, {fw->conj(x1, x1), fw->conj(x2, x1)}));
  CHECK(apply_move(d1, wmove(0, x2)) ==
        GaussDiagram::make(fw, 1, {{0, 1, 1}}, {fw->conj(x1, x2), fw->conj(x2, x2)}));
}

TEST_CASE("enumeration is complete within bounds and deterministic") {
  auto f2 = Group::free_group(2);
  Elt x1{1};

  // trivial class, radius 0: the four decorations of a single kink
  GaussDiagram d0 = GaussDiagram::degree0(f2, f2->id());
  std::vector<Move> ins = enumerate_moves(d0, 0, kind_bit(MoveKind::r1_plus));
  REQUIRE(ins.size() == 4);
  std::set<std::pair<int, int>> combos;
  for (const Move& m : ins) {
    CHECK(m.a == f2->id());
    CHECK(validates(d0, m));
    combos.insert({m.dir, m.writhe});
  }
  CHECK(combos.size() == 4);

  // a nontrivial class needs the radius to reach its representative
  GaussDiagram dx = GaussDiagram::degree0(f2, x1);
  CHECK(enumerate_moves(dx, 0, kind_bit(MoveKind::r1_plus)).empty());
  std::vector<Move> ins1 = enumerate_moves(dx, 1, kind_bit(MoveKind::r1_plus));
  REQUIRE(ins1.size() == 4);
  for (const Move& m : ins1) CHECK(m.a == x1);

  // an isolated chord over a 1-marked edge is removable
  GaussDiagram iso = GaussDiagram::make(f2, 1, {{0, 1, 1}}, {f2->id(), x1});
  std::vector<Move> rem = enumerate_moves(iso, 0, kind_bit(MoveKind::r1_minus));
  REQUIRE(rem.size() == 1);
  CHECK(rem[0] == mv(MoveKind::r1_minus, {0}));
  CHECK(apply_move(iso, rem[0]) == dx);

  Rng rng(20260105);
  std::vector<GroupPtr> groups = {Group::trivial(), Group::free_abelian(1),
                                  load_table(GDC_DATA_DIR "/z2.table")};
  for (auto& g : groups) {
    for (int it = 0; it < 4; ++it) {
      GaussDiagram d = random_gauss(g, 1 + (int)rng.below(2), 1, rng);
      std::vector<Move> all = enumerate_moves(d, 1);
      CHECK(all == enumerate_moves(d, 1));
      std::set<std::string> texts;
      for (const Move& m : all) {
        REQUIRE_MESSAGE(validates(d, m), move_to_string(*g, m));
        GaussDiagram r = apply_move(d, m);
        CHECK(r.degree >= 0);
        texts.insert(move_to_string(*g, m));
      }
      CHECK(texts.size() == all.size());  // no duplicates

      for (int draw = 0; draw < 25; ++draw) {
        auto m = random_move(d, 1, rng);
        REQUIRE(m.has_value());
        CHECK(validates(d, *m));
      }
      auto wm = random_move(d, 1, rng, kind_bit(MoveKind::w));
      REQUIRE(wm.has_value());
      CHECK(wm->kind == MoveKind::w);
    }
  }
}

template <class D>
static void check_orbit_closed(const std::vector<D>& orb, const std::vector<Elt>& ball) {
  REQUIRE(!orb.empty());
  CHECK(std::is_sorted(orb.begin(), orb.end()));
  for (const D& x : orb)
    for (int i = 0; i < (int)x.arrows.size(); ++i)
      for (const Elt& u : ball)
        CHECK(std::binary_search(orb.begin(), orb.end(), apply_w(x, i, u)));
}

TEST_CASE("w-orbits close up") {
  Rng rng(20260106);
  auto triv = Group::trivial();
  GaussDiagram dt = random_gauss(triv, 2, 0, rng);
  std::vector<GaussDiagram> ot = w_orbit(dt, 1);
  REQUIRE(ot.size() == 1);
  CHECK(ot[0] == dt);

  auto s3 = load_table(GDC_DATA_DIR "/s3.table");
  auto ball = s3->ball(1);
  for (int it = 0; it < 6; ++it) {
    GaussDiagram d = random_gauss(s3, 1 + (int)rng.below(2), 1, rng);
    std::vector<GaussDiagram> orb = w_orbit(d, 1);
    CHECK(std::is_sorted(orb.begin(), orb.end()));
    CHECK(std::binary_search(orb.begin(), orb.end(), d));
    for (const GaussDiagram& x : orb) {
      CHECK(diagram_sign(x) == diagram_sign(d));
      for (int i = 0; i < x.degree; ++i)
        for (const Elt& u : ball)
          CHECK(std::binary_search(orb.begin(), orb.end(), apply_move(x, wmove(i, u))));
    }
  }

  // a class with several members gives an orbit a cap of 1 cannot hold
  GaussDiagram big = GaussDiagram::make(s3, 1, {{0, 1, 1}}, {Elt{1}, Elt{3}});
  REQUIRE(w_orbit(big, 2).size() > 1);
  CHECK_THROWS_AS(w_orbit(big, 2, 1), std::domain_error);

  auto z2w = load_table(GDC_DATA_DIR "/z2w.table");
  for (int it = 0; it < 4; ++it) {
    check_orbit_closed(w_orbit(random_arrow_diagram(z2w, 2, 1, rng), 1), z2w->ball(1));
    check_orbit_closed(w_orbit(random_arrow_diagram(s3, 2, 1, rng), 1), s3->ball(1));
  }
}

TEST_CASE("equivalence search replays its paths") {
  Rng rng(20260107);
  auto z2 = load_table(GDC_DATA_DIR "/z2.table");
  GaussDiagram d = random_gauss(z2, 1, 1, rng);

  auto self = equivalent(d, d, 1, 10);
  REQUIRE(self.has_value());
  CHECK(self->empty());

  for (int it = 0; it < 10; ++it) {
    auto m = random_move(d, 1, rng);
    REQUIRE(m.has_value());
    GaussDiagram e = apply_move(d, *m);
    auto path = equivalent(d, e, 1, 5000);
    REQUIRE(path.has_value());
    CHECK(path->size() <= 1);
    CHECK(replay(d, *path) == e);
  }

  GaussDiagram far = apply_move(d, *random_move(d, 1, rng, kind_bit(MoveKind::r1_plus)));
  CHECK(!equivalent(d, far, 1, 0).has_value());

  GaussDiagram other = random_gauss(Group::free_abelian(1), 1, 1, rng);
  CHECK_THROWS_AS(equivalent(d, other, 1, 10), std::domain_error);
}

TEST_CASE("based and degenerate conjugacy moves agree through shrink") {
  Rng rng(20260108);
  std::vector<GroupPtr> groups = {load_table(GDC_DATA_DIR "/s3.table"),
                                  load_table(GDC_DATA_DIR "/z2w.table")};
  for (auto& g : groups) {
    auto ball = g->ball(1);
    for (int it = 0; it < 12; ++it) {
      Elt a = rng.pick(ball), b = rng.pick(ball), c = rng.pick(ball);
      BasedArrowDiagram based = BasedArrowDiagram::make(
          g, 2, {{0, 2, 0}, {1, 3, 0}}, {g->id(), a, b, c}, 0);
      REQUIRE(nice(based));
      DegenerateArrowDiagram dd = shrink(based);
      for (const Elt& u : ball) {
        BasedArrowDiagram moved = apply_w_pair_at_base(based, u);
        REQUIRE(nice(moved));
        int dp = dd.double_position();
        DegenerateArrowDiagram lhs = shrink(moved);
        CHECK(lhs == apply_w(dd, dd.ends_at(dp)[0].first, u));
        CHECK(lhs == apply_w(dd, dd.ends_at(dp)[1].first, u));
      }

      // moving an arrow of the pair and then its inverse returns
      for (int i = 0; i < 2; ++i) {
        DegenerateArrowDiagram once = apply_w(dd, i, rng.pick(ball));
        bool found = false;
        for (int j = 0; j < 2 && !found; ++j)
          for (const Elt& u : ball)
            if (apply_w(once, j, u) == dd) { found = true; break; }
        CHECK(found);
      }
    }
  }

  // both chords meet the double position: every marking is conjugated
  auto s3 = load_table(GDC_DATA_DIR "/s3.table");
  Elt a{1}, b{2}, c{3}, u{4};
  DegenerateArrowDiagram pin =
      DegenerateArrowDiagram::make(s3, 2, {{0, 2, 0}, {1, 2, 0}}, {a, b, c});
  CHECK(apply_w(pin, 0, u) ==
        DegenerateArrowDiagram::make(
            s3, 2, {{0, 2, 0}, {1, 2, 0}},
            {s3->conj(a, u), s3->conj(b, u), s3->conj(c, u)}));

  // an orientation-reversing conjugator flips both chords of the pair
  auto z2w = load_table(GDC_DATA_DIR "/z2w.table");
  Elt e0 = z2w->id(), g1{1};
  REQUIRE(z2w->w(g1) == -1);
  DegenerateArrowDiagram flip =
      DegenerateArrowDiagram::make(z2w, 2, {{0, 2, 0}, {1, 2, 0}}, {g1, e0, e0});
  CHECK(apply_w(flip, 0, g1) ==
        DegenerateArrowDiagram::make(z2w, 2, {{2, 0, 0}, {2, 1, 0}}, {g1, e0, e0}));
}

TEST_CASE("degenerate moves away from the double position follow the plain rule") {
  auto s3 = load_table(GDC_DATA_DIR "/s3.table");
  Elt u{4};
  REQUIRE(s3->w(u) == 1);
  // a canonical form: the pair sits at position 4, the lone chord spans 0 -> 1
  std::vector<Arrow> arrows = {{0, 1, 0}, {2, 4, 0}, {3, 4, 0}};
  std::vector<Elt> edges = {Elt{4}, Elt{5}, Elt{1}, Elt{2}, Elt{3}};
  DegenerateArrowDiagram d = DegenerateArrowDiagram::make(s3, 3, arrows, edges);
  REQUIRE(d.arrows == arrows);
  REQUIRE(d.edges == edges);
  REQUIRE(d.double_position() == 4);
  int solo = -1;
  for (int i = 0; i < 3; ++i)
    if (d.arrows[i].tail != d.double_position() && d.arrows[i].head != d.double_position())
      solo = i;
  REQUIRE(solo == 0);
  std::vector<Elt> moved = {s3->conj(edges[0], u), s3->mul(s3->inv(u), edges[1]), edges[2],
                            edges[3], s3->mul(edges[4], u)};
  CHECK(apply_w(d, solo, u) == DegenerateArrowDiagram::make(s3, 3, arrows, moved));

  // an odd conjugator additionally flips the lone chord, the pair stays put
  Elt v{2};
  REQUIRE(s3->w(v) == -1);
  std::vector<Elt> moved2 = {s3->conj(edges[0], v), s3->mul(s3->inv(v), edges[1]), edges[2],
                             edges[3], s3->mul(edges[4], v)};
  CHECK(apply_w(d, solo, v) ==
        DegenerateArrowDiagram::make(s3, 3, {{1, 0, 0}, {2, 4, 0}, {3, 4, 0}}, moved2));
}

TEST_CASE("obstruction loops match hand-built cycles") {
  auto z = Group::free_abelian(1);
  Elt g2{2}, g3{3}, g5{5}, g6{6}, g7{7}, zero{0};

  // kink with the tail first: the loop is the chord minus the full circle
  AbelianGaussDiagram dt =
      AbelianGaussDiagram::make(z, 2, {{0, 1, -1}, {2, 3, 1}}, {g2, g3}, g5);
  REQUIRE(dt.arrows == std::vector<Arrow>{{0, 1, -1}, {2, 3, 1}});
  Hom ht = obstruction_r1(dt, 0, 0);
  CHECK(ht.arrow == std::vector<long long>{1, 0});
  CHECK(ht.edge == std::vector<long long>{-1, 0, 0, 0});
  REQUIRE(is_cycle(dt.arrows, ht));
  CHECK(energy(dt.arrows, ht) == -1);
  CHECK(mu_eval(dt, ht) == z->mul(g2, z->inv(g5)));
  // admissible exactly when the decoration matches the global one
  CHECK(!abelian_admissible(dt, mv(MoveKind::r1_minus, {0})));
  AbelianGaussDiagram dt2 =
      AbelianGaussDiagram::make(z, 2, {{0, 1, -1}, {2, 3, 1}}, {g5, g3}, g5);
  REQUIRE(dt2.arrows == dt.arrows);
  CHECK(abelian_admissible(dt2, mv(MoveKind::r1_minus, {0})));

  // head first: the loop is the chord with its short return path
  AbelianGaussDiagram dh =
      AbelianGaussDiagram::make(z, 2, {{0, 1, -1}, {3, 2, 1}}, {g3, g2}, g5);
  REQUIRE(dh.arrows == std::vector<Arrow>{{0, 1, -1}, {3, 2, 1}});
  Hom hh = obstruction_r1(dh, 1, 2);
  CHECK(hh.arrow == std::vector<long long>{0, 1});
  CHECK(hh.edge == std::vector<long long>{0, 0, 1, 0});
  CHECK(energy(dh.arrows, hh) == 0);
  CHECK(mu_eval(dh, hh) == g2);
  CHECK(!abelian_admissible(dh, mv(MoveKind::r1_minus, {1})));
  AbelianGaussDiagram dh2 =
      AbelianGaussDiagram::make(z, 2, {{0, 1, -1}, {3, 2, 1}}, {g3, zero}, g5);
  REQUIRE(dh2.arrows == dh.arrows);
  CHECK(abelian_admissible(dh2, mv(MoveKind::r1_minus, {1})));

  // parallel pair, heads over one edge and tails over the other
  AbelianGaussDiagram dp =
      AbelianGaussDiagram::make(z, 2, {{0, 2, -1}, {3, 1, 1}}, {g6, g5}, g7);
  REQUIRE(dp.arrows == std::vector<Arrow>{{0, 2, -1}, {3, 1, 1}});
  Hom hp = obstruction_r2(dp, 0, 1);
  CHECK(hp.arrow == std::vector<long long>{-1, 1});
  CHECK(hp.edge == std::vector<long long>{0, 1, 0, -1});
  REQUIRE(is_cycle(dp.arrows, hp));
  CHECK(energy(dp.arrows, hp) == 0);
  CHECK(mu_eval(dp, hp) == z->mul(g5, z->inv(g6)));
  CHECK(!abelian_admissible(dp, mv(MoveKind::r2_minus, {0, 1})));
  AbelianGaussDiagram dp2 =
      AbelianGaussDiagram::make(z, 2, {{0, 2, -1}, {3, 1, 1}}, {g5, g5}, g7);
  REQUIRE(dp2.arrows == dp.arrows);
  CHECK(abelian_admissible(dp2, mv(MoveKind::r2_minus, {0, 1})));

  // triangle: signs propagate around the three special edges
  Elt g1{1}, g4{4};
  AbelianGaussDiagram tri = AbelianGaussDiagram::make(
      z, 3, {{0, 2, 1}, {1, 4, 1}, {3, 5, 1}}, {g1, g2, g3}, g4);
  REQUIRE(tri.arrows == std::vector<Arrow>{{0, 2, 1}, {1, 4, 1}, {3, 5, 1}});
  auto sites = r3_sites(tri, 0, 1, 2);
  REQUIRE(sites == std::vector<std::array<int, 3>>{{0, 2, 4}});
  Hom h3 = obstruction_r3(tri, 0, 1, 2, 1);
  CHECK(h3.arrow == std::vector<long long>{1, -1, 1});
  CHECK(h3.edge == std::vector<long long>{-1, 0, 1, 0, -1, 0});
  REQUIRE(is_cycle(tri.arrows, h3));
  CHECK(energy(tri.arrows, h3) == -1);
  CHECK(mu_eval(tri, h3) == Elt{1 - 2 + 3 - 4});
  Move m3 = mv(MoveKind::r3, {0, 1, 2});
  m3.type = 1;
  CHECK(!abelian_admissible(tri, m3));
  AbelianGaussDiagram tri2 = AbelianGaussDiagram::make(
      z, 3, {{0, 2, 1}, {1, 4, 1}, {3, 5, 1}}, {g1, g2, g3}, g2);
  CHECK(abelian_admissible(tri2, m3));
}

// old arrow index -> index in the abelianization rotated by r
static int image_arrow(const GaussDiagram& d, const AbelianGaussDiagram& b, int r, int i) {
  int L = 2 * d.degree;
  int t = (d.arrows[i].tail + r) % L;
  for (int s = 0; s < b.degree; ++s)
    if (b.arrows[s].tail == t) return s;
  REQUIRE(false);
  return -1;
}

TEST_CASE("abelian moves mirror group-level moves") {
  Rng rng(20260109);
  std::vector<GroupPtr> groups = {Group::trivial(), Group::free_abelian(1),
                                  Group::free_abelian(2)};
  int applied = 0;
  for (int it = 0; it < 90; ++it) {
    auto& g = groups[rng.below(groups.size())];
    int n = 1 + (int)rng.below(3);
    GaussDiagram d = random_gauss(g, n, 1, rng);
    // thin the markings out so removals and switches show up
    std::vector<Elt> edges = d.edges;
    for (Elt& e : edges)
      if (rng.coin()) e = g->id();
    d = GaussDiagram::make(g, n, d.arrows, std::move(edges));

    AbelianGaussDiagram b = abelianize(d);
    int r = abelianize_rotation(d, b);
    int L = 2 * n;

    std::vector<Move> pool;
    for (MoveKind k : {MoveKind::r1_minus, MoveKind::r1_plus, MoveKind::r2_minus,
                       MoveKind::r2_plus, MoveKind::r3}) {
      std::vector<Move> ms = enumerate_moves(d, 1, kind_bit(k));
      for (int c = 0; c < 2 && !ms.empty(); ++c) pool.push_back(rng.pick(ms));
    }
    for (const Move& m : pool) {
      AppliedMove t = apply_tracked(d, m);
      AbelianGaussDiagram want = abelianize(t.result);

      Move ab = m;
      switch (m.kind) {
        case MoveKind::r1_minus:
          ab.at = {image_arrow(d, b, r, m.at[0])};
          break;
        case MoveKind::r2_minus: {
          ab.at = {image_arrow(d, b, r, m.at[0]), image_arrow(d, b, r, m.at[1])};
          std::sort(ab.at.begin(), ab.at.end());
          break;
        }
        case MoveKind::r1_plus:
          ab.at = {(m.at[0] + r) % L};
          ab.a.reset();
          break;
        case MoveKind::r2_plus: {
          ab.at = {(m.at[0] + r) % L, (m.at[1] + r) % L};
          std::sort(ab.at.begin(), ab.at.end());
          // the image of the chord at the first slot fixes the free decoration
          int r2 = abelianize_rotation(t.result, want);
          int ai = image_arrow(t.result, want, r2, t.new_arrows[0]);
          ab.a = want.decor[ai];
          ab.b.reset();
          ab.rest.reset();
          break;
        }
        case MoveKind::r3: {
          std::vector<int> trip = {image_arrow(d, b, r, m.at[0]),
                                   image_arrow(d, b, r, m.at[1]),
                                   image_arrow(d, b, r, m.at[2])};
          std::sort(trip.begin(), trip.end());
          std::array<int, 3> site = r3_sites(d, m.at[0], m.at[1], m.at[2])[m.type - 1];
          for (int& e : site) e = (e + r) % L;
          std::sort(site.begin(), site.end());
          auto bs = r3_sites(b, trip[0], trip[1], trip[2]);
          auto hit = std::find(bs.begin(), bs.end(), site);
          REQUIRE(hit != bs.end());
          ab.at = trip;
          ab.type = (int)(hit - bs.begin()) + 1;
          break;
        }
        default: break;
      }
      REQUIRE_MESSAGE(abelian_admissible(b, ab), move_to_string(*g, m));
      CHECK(apply_move_abelian(b, ab) == want);
      ++applied;
    }
  }
  CHECK(applied > 200);

  // removing the last chord lands on the degree-0 class
  auto z = Group::free_abelian(1);
  GaussDiagram solo = GaussDiagram::make(z, 1, {{0, 1, 1}}, {z->id(), Elt{3}});
  AbelianGaussDiagram bs = abelianize(solo);
  Move rm = mv(MoveKind::r1_minus, {0});
  REQUIRE(abelian_admissible(bs, rm));
  CHECK(apply_move_abelian(bs, rm) == abelianize(apply_move(solo, rm)));
  CHECK(apply_move_abelian(bs, rm) == AbelianGaussDiagram::degree0(z, Elt{3}));
}

TEST_CASE("abelian insertions invert their removals") {
  Rng rng(20260110);
  auto z = Group::free_abelian(1);
  auto ball = z->ball(2);
  for (int it = 0; it < 20; ++it) {
    int n = rng.below(3);
    AbelianGaussDiagram d;
    if (n == 0) {
      d = AbelianGaussDiagram::degree0(z, rng.pick(ball));
    } else {
      std::vector<Elt> decor;
      for (int i = 0; i < n; ++i) decor.push_back(rng.pick(ball));
      d = AbelianGaussDiagram::make(z, n, random_pairing(n, rng, true), std::move(decor),
                                    rng.pick(ball));
    }
    std::vector<Move> all = enumerate_abelian_moves(d, 1);
    CHECK(all == enumerate_abelian_moves(d, 1));
    for (const Move& m : all) {
      REQUIRE(abelian_admissible(d, m));
      CHECK(m.kind != MoveKind::w);
      AbelianGaussDiagram r = apply_move_abelian(d, m);

      if (m.kind == MoveKind::r1_plus) {
        bool back = false;
        for (int i = 0; i < r.degree && !back; ++i) {
          Move un = mv(MoveKind::r1_minus, {i});
          back = abelian_admissible(r, un) && apply_move_abelian(r, un) == d;
        }
        CHECK(back);
      }
      if (m.kind == MoveKind::r2_plus) {
        bool back = false;
        for (int i = 0; i < r.degree && !back; ++i)
          for (int j = i + 1; j < r.degree && !back; ++j) {
            Move un = mv(MoveKind::r2_minus, {i, j});
            back = abelian_admissible(r, un) && apply_move_abelian(r, un) == d;
          }
        CHECK(back);
      }
      if (m.kind == MoveKind::r3) {
        bool back = false;
        for (int i = 0; i < r.degree && !back; ++i)
          for (int j = i + 1; j < r.degree && !back; ++j)
            for (int k = j + 1; k < r.degree && !back; ++k) {
              int types = (int)r3_sites(r, i, j, k).size();
              for (int t = 1; t <= types && !back; ++t) {
                Move un = mv(MoveKind::r3, {i, j, k});
                un.type = t;
                back = abelian_admissible(r, un) && apply_move_abelian(r, un) == d;
              }
            }
        CHECK(back);
      }
    }
  }
}

TEST_CASE("generalized moves replay to their results") {
  Rng rng(20260111);
  auto g = load_table(GDC_DATA_DIR "/s3.table");
  auto ball = g->ball(1);
  for (int it = 0; it < 10; ++it) {
    GaussDiagram d = random_gauss(g, 1 + (int)rng.below(2), 1, rng);
    int L = 2 * d.degree;
    MoveSeq s1 = generalized_r1(d, (int)rng.below(L), rng.pick(ball),
                                rng.coin() ? 1 : -1, rng.sign(), rng.pick(ball));
    CHECK(replay(d, s1.moves) == s1.result);
    MoveSeq s2 = generalized_r2(d, (int)rng.below(L), (int)rng.below(L), rng.pick(ball),
                                rng.pick(ball), rng.sign(), rng.sign(), rng.sign(),
                                rng.pick(ball), rng.pick(ball));
    CHECK(replay(d, s2.moves) == s2.result);
  }

  // conjugating a fresh kink is the kink with the twisted decoration
  auto f2 = Group::free_group(2);
  Elt x1{1}, x2{2};
  GaussDiagram d = GaussDiagram::make(f2, 1, {{0, 1, 1}}, {x1, x2});
  for (int dir : {1, -1}) {
    MoveSeq s = generalized_r1(d, 1, x1, dir, 1, x2);
    CHECK(s.result == apply_move(d, r1p(1, dir, 1, f2->mul(x1, x2))));
  }

  // conjugating both fresh chords of a pair leaves arcs whose markings
  // multiply to 1 between the strands
  auto f4 = Group::free_group(4);
  Elt p1{1}, p2{2}, g1{3}, g2{4};
  GaussDiagram base = GaussDiagram::make(f4, 1, {{0, 1, 1}}, {f4->id(), f4->id()});
  MoveSeq s = generalized_r2(base, 0, 1, p1, p2, 1, 1, 1, g1, g2);
  GaussDiagram want = GaussDiagram::make(
      f4, 3, {{0, 3, 1}, {5, 1, 1}, {4, 2, -1}},
      {f4->mul(p1, g1), f4->mul(f4->inv(g1), g2), f4->inv(f4->mul(p1, g2)),
       f4->mul(p2, g2), f4->mul(f4->inv(g2), g1), f4->inv(f4->mul(p2, g1))});
  CHECK(s.result == want);
}
