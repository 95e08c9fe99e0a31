#pragma once
#include <optional>
#include <string>

#include "gdc/series.hpp"

namespace gdc {

// The boundary chain d = delta . base_expand measures how pairings with an
// arrow series change under the third move; a series is invariant iff its
// boundary dies in the quotient by the slide relations, which
// triangle_reduce computes on the monotonic basis.

// every choice of base edge, one term each, merged canonically; degree 0
// gives the empty series
BasedSeries base_expand(const ArrowDiagram& d);
BasedSeries base_expand(const ArrowSeries& x);

// zero unless the base edge is 1-marked and bounded by ends of two different
// arrows; then the shrunk diagram, signed by the base edge
DegenerateSeries delta(const BasedArrowDiagram& d);
DegenerateSeries delta(const BasedSeries& x);

DegenerateSeries d_map(const ArrowDiagram& d);
DegenerateSeries d_map(const ArrowSeries& x);

// rewrites every non-monotonic term as the sum of its two slides; the result
// is supported on monotonic diagrams and equal to the input modulo the
// slide relators
DegenerateSeries triangle_reduce(const DegenerateSeries& y);

// order of the stabilizer of a conjugacy orbit class: rotations of the
// circle that land back in the orbit, decorations conjugated from ball(r).
// The plain symmetry group embeds, so d.aut divides the result. Orbits are
// explored rigidly; domain_error beyond cap, like w_orbit.
int aut_w(const ArrowDiagram& d, int ball_radius, std::size_t cap = 1u << 20);
int aut_w(const DegenerateArrowDiagram& d, int ball_radius, std::size_t cap = 1u << 20);

// least orbit member, the representative of the orbit class
ArrowDiagram w_min(const ArrowDiagram& d, int ball_radius);
DegenerateArrowDiagram w_min(const DegenerateArrowDiagram& d, int ball_radius);

// Series in the orbit-class basis are carried by the least members.
// check_w succeeds iff coeff * aut is constant on every orbit meeting the
// support (absent members count as zero), and returns the class series the
// input is the injection of. inject_w spreads a class over its orbit with
// the symmetry ratios aut_w(rep)/aut(member); both compose to the identity.
std::optional<ArrowSeries> check_w(const ArrowSeries& x, int ball_radius);
ArrowSeries inject_w(const ArrowSeries& xw, int ball_radius);
DegenerateSeries inject_w(const DegenerateSeries& yw, int ball_radius);

// orbit-level forbidden configurations: some conjugacy orbit member carries
// an ap1 site, respectively an ap2 site. Decided on the representative
// alone: an isolated arrow keeps its gap marking trivial or not; a pair
// adjacent along two disjoint gaps reaches double 1-marking iff the gap
// markings agree (crossing pair) or invert (nested pair), and then the end
// kinds at a gap match what the gap weight dictates.
bool r1_forbidden(const ArrowDiagram& d);
bool r2_forbidden(const ArrowDiagram& d);

// no term of the class series has a forbidden orbit
bool check_r1(const ArrowSeries& xw);
bool check_r2(const ArrowSeries& xw);

// pairing against every six-term relator of the supported degrees vanishes
bool a6t_orthogonal(const ArrowSeries& x, int ball_radius);

// the boundary criterion: triangle_reduce(d_map(x)) == 0. Only valid when no
// supported diagram carries an ap2 site; domain_error otherwise.
bool check_r3(const ArrowSeries& x);

// boundary chain on orbit classes: the base marking is pushed to 1 by a
// conjugacy move on the arrow entering the base edge from the front, then
// delta as usual and the class of the result. Independent of the chosen
// orbit member.
DegenerateSeries delta_w(const BasedArrowDiagram& d, int ball_radius);
DegenerateSeries d_w(const ArrowSeries& xw, int ball_radius);
DegenerateSeries triangle_reduce_w(const DegenerateSeries& yw, int ball_radius);

// the full invariance certificate: a conjugacy-invariant lift exists, no
// forbidden first- or second-move orbit is supported, the six-term pairings
// vanish, and the boundary dies modulo slides. notes carries the first
// witness of every failed condition.
struct Certificate {
  bool pass = false;
  bool w_lift = false, ap1 = false, ap2 = false, a6t = false, triangle = false;
  std::string notes;
};
Certificate certify_formula(const ArrowSeries& x, int ball_radius);

}
