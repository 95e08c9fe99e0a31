#pragma once
#include <string>
#include <vector>

#include "gdc/series.hpp"

namespace gdc {

// Relator families. The p2x/ap2 suffix counts the arrows of the cancelling
// pair that are kept: x2 keeps both (one diagram, set to zero), x1 keeps one
// (the writhe-flip pairs). g6t/g2t and a6t/a2t are the six- and two-term
// homogeneous layers of the triple-switch relation, nabla the slide
// relations between degenerate diagrams.
enum class RelFamily {
  p1, p2, p3, w,
  p2x1, p2x2, g6t, g2t,
  ap1, ap2, a6t, a2t, aw,
  nabla,
};

// text names: P1 P2 P3 W P2x1 P2x2 G6T G2T AP1 AP2 A6T A2T AW nabla
// (case-insensitive); invalid_argument otherwise
RelFamily parse_family(const std::string& name);
std::string family_name(RelFamily f);

// every canonical diagram of the degree with decorations from ball(r); for
// degree 0 the classes of the ball. Sorted. Exponential in the degree.
std::vector<GaussDiagram> all_gauss(GroupPtr g, int degree, int ball);
std::vector<ArrowDiagram> all_arrow(GroupPtr g, int degree, int ball);
std::vector<DegenerateArrowDiagram> all_degenerate(GroupPtr g, int degree, int ball);

// forbidden-configuration sites on arrow diagrams: an isolated arrow over a
// 1-marked edge, and pairs with heads adjacent over a 1-marked edge and
// tails adjacent over a 1-marked edge (no writhe condition to put)
bool ap1_site(const ArrowDiagram& d, int arrow);
std::vector<std::pair<int, int>> ap2_sites(const ArrowDiagram& d);

// the two monotonic partners of a non-monotonic degenerate diagram: the
// point end of one point arrow moves to the free end of the other (which =
// 0 moves the end of the lower-indexed point arrow). The triangle relator
// is  d - slide(d,0) - slide(d,1).
DegenerateArrowDiagram nabla_slide(const DegenerateArrowDiagram& d, int which);

// Complete relator lists over all base diagrams of the matching degree with
// decorations from ball(r). `degree` is the maximal degree of the terms;
// the families whose bases sit one degree higher (g6t, a6t) enumerate those.
// Deterministic order: base diagram, then site, then decorations; exact
// duplicates pruned, empty relators dropped.
std::vector<GaussSeries> gauss_relations(RelFamily f, GroupPtr g, int degree, int ball);
std::vector<ArrowSeries> arrow_relations(RelFamily f, GroupPtr g, int degree, int ball);
std::vector<DegenerateSeries> nabla_relations(GroupPtr g, int degree, int ball);

}
