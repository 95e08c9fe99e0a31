#pragma once
#include <utility>
#include <vector>

#include "gdc/group.hpp"

namespace gdc {

// Oriented chord; tail/head are positions on the circle, counterclockwise,
// 0..2n-1. writhe is +-1 on Gauss diagrams and 0 where writhes are absent.
struct Arrow {
  int tail = 0;
  int head = 0;
  int writhe = 0;
  friend bool operator==(const Arrow&, const Arrow&) = default;
};

// (arrow index, is_head) for each circle position
using EndMap = std::vector<std::pair<int, bool>>;

// Circle diagrams are value types stored in canonical rotation; equality,
// ordering and hashing all go through `key`. Positions are counterclockwise,
// edge j runs from position j to j+1 (mod 2n). Degree 0 keeps a conjugacy
// class instead of arrows/edges. Arrows of a canonical diagram are sorted by
// tail position; move and subdiagram indices refer to that order.

class GaussDiagram {
public:
  GroupPtr group;
  int degree = 0;
  std::vector<Arrow> arrows;
  std::vector<Elt> edges;
  Elt cls;  // degree 0 only
  int aut = 1;
  std::vector<long long> key;

  static GaussDiagram make(GroupPtr g, int degree, std::vector<Arrow> arrows,
                           std::vector<Elt> edges);
  static GaussDiagram degree0(GroupPtr g, const Elt& a);

  EndMap ends() const;
  friend bool operator==(const GaussDiagram& a, const GaussDiagram& b) { return a.key == b.key; }
  friend bool operator<(const GaussDiagram& a, const GaussDiagram& b) { return a.key < b.key; }
};

class ArrowDiagram {
public:
  GroupPtr group;
  int degree = 0;
  std::vector<Arrow> arrows;  // writhe fields all 0
  std::vector<Elt> edges;
  Elt cls;
  int aut = 1;
  std::vector<long long> key;

  static ArrowDiagram make(GroupPtr g, int degree, std::vector<Arrow> arrows,
                           std::vector<Elt> edges);
  static ArrowDiagram degree0(GroupPtr g, const Elt& a);

  EndMap ends() const;
  friend bool operator==(const ArrowDiagram& a, const ArrowDiagram& b) { return a.key == b.key; }
  friend bool operator<(const ArrowDiagram& a, const ArrowDiagram& b) { return a.key < b.key; }
};

class BasedArrowDiagram {
public:
  GroupPtr group;
  int degree = 0;  // >= 1
  std::vector<Arrow> arrows;
  std::vector<Elt> edges;
  int base = 0;  // marked edge index
  int aut = 1;
  std::vector<long long> key;

  static BasedArrowDiagram make(GroupPtr g, int degree, std::vector<Arrow> arrows,
                                std::vector<Elt> edges, int base);

  EndMap ends() const;
  friend bool operator==(const BasedArrowDiagram& a, const BasedArrowDiagram& b) { return a.key == b.key; }
  friend bool operator<(const BasedArrowDiagram& a, const BasedArrowDiagram& b) { return a.key < b.key; }
};

// 2n-1 circle positions, exactly one of them carrying two arrow ends (of two
// different arrows); the pair at that position is unordered. No writhes.
class DegenerateArrowDiagram {
public:
  GroupPtr group;
  int degree = 0;  // number of arrows, >= 2
  std::vector<Arrow> arrows;
  std::vector<Elt> edges;  // 2n-1
  int aut = 1;
  std::vector<long long> key;

  static DegenerateArrowDiagram make(GroupPtr g, int degree, std::vector<Arrow> arrows,
                                     std::vector<Elt> edges);

  int positions() const { return 2 * degree - 1; }
  int double_position() const;  // the position with two ends
  // ends at a position: one entry for ordinary positions, two for the double
  std::vector<std::pair<int, bool>> ends_at(int pos) const;
  friend bool operator==(const DegenerateArrowDiagram& a, const DegenerateArrowDiagram& b) { return a.key == b.key; }
  friend bool operator<(const DegenerateArrowDiagram& a, const DegenerateArrowDiagram& b) { return a.key < b.key; }
};

// Classical Gauss diagram with one group decoration per arrow plus a global
// decoration; requires an abelian group with trivial weight. Rotation moves
// arrows, decorations follow their arrows.
class AbelianGaussDiagram {
public:
  GroupPtr group;
  int degree = 0;
  std::vector<Arrow> arrows;
  std::vector<Elt> decor;  // aligned with arrows
  Elt global;
  int aut = 1;
  std::vector<long long> key;

  static AbelianGaussDiagram make(GroupPtr g, int degree, std::vector<Arrow> arrows,
                                  std::vector<Elt> decor, Elt global);
  static AbelianGaussDiagram degree0(GroupPtr g, const Elt& a);

  EndMap ends() const;
  friend bool operator==(const AbelianGaussDiagram& a, const AbelianGaussDiagram& b) { return a.key == b.key; }
  friend bool operator<(const AbelianGaussDiagram& a, const AbelianGaussDiagram& b) { return a.key < b.key; }
};

// incidence and edge signs; D is GaussDiagram or ArrowDiagram
template <class D>
int owner_at(const D& d, int pos) { return d.ends()[pos].first; }

// +1 iff the two bounding arrows interleave; -1 otherwise (also when both
// ends belong to one arrow)
int edge_eta(const EndMap& ends, const std::vector<Arrow>& arrows, int e);
int edge_up(const EndMap& ends, int e);  // arrowheads on the edge boundary
template <class D> int edge_eta(const D& d, int e) { return edge_eta(d.ends(), d.arrows, e); }
template <class D> int edge_up(const D& d, int e) { return edge_up(d.ends(), e); }
template <class D> int edge_eps(const D& d, int e) {
  return edge_eta(d, e) * (edge_up(d, e) % 2 == 0 ? 1 : -1);
}
int edge_w(const GaussDiagram& d, int e);  // product of the bounding writhes

int diagram_sign(const GaussDiagram& d);  // product of all writhes

// subdiagram on the arrows listed in `keep` (ascending indices into the
// canonical arrow order); removed ends merge their neighbouring edge
// decorations by multiplication
GaussDiagram sub_keep(const GaussDiagram& d, const std::vector<int>& keep);
ArrowDiagram sub_keep(const ArrowDiagram& d, const std::vector<int>& keep);
AbelianGaussDiagram sub_keep(const AbelianGaussDiagram& d, const std::vector<int>& keep);

// same, also reporting where each kept arrow landed: result.second[i] is the
// index of keep[i] in the canonical arrow order of the subdiagram
std::pair<GaussDiagram, std::vector<int>> sub_keep_tracked(const GaussDiagram& d,
                                                           const std::vector<int>& keep);

ArrowDiagram forget_writhes(const GaussDiagram& d);

// loop sums of the edge decorations: per arrow the return path from the head
// forward to the tail, plus the full circle; abelian group, trivial weight
AbelianGaussDiagram abelianize(const GaussDiagram& d);

BasedArrowDiagram with_base(const ArrowDiagram& d, int e);
ArrowDiagram forget_base(const BasedArrowDiagram& b);

// base edge is 1-marked and bounded by two different arrows
bool nice(const BasedArrowDiagram& b);
int eps_base(const BasedArrowDiagram& b);  // eta * (-1)^up at the base edge
DegenerateArrowDiagram shrink(const BasedArrowDiagram& b);  // PRE: nice

// the two ends at the double position are one head and one tail
bool monotonic(const DegenerateArrowDiagram& d);

}
