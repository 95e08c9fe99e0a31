#pragma once
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "gdc/diagram.hpp"
#include "gdc/homology.hpp"
#include "gdc/rng.hpp"

namespace gdc {

enum class MoveKind { r1_minus, r1_plus, r2_minus, r2_plus, r3, w };

constexpr unsigned kind_bit(MoveKind k) { return 1u << (int)k; }
constexpr unsigned all_kinds = 63u;
constexpr unsigned removal_kinds =
    kind_bit(MoveKind::r1_minus) | kind_bit(MoveKind::r2_minus);

// One fully parametrized move site. Indices refer to the canonical arrow
// order of the diagram the move is applied to; edge j is the gap from
// position j to j+1.
//
// Text forms (parse_move / move_to_string):
//   R1- @arrow=i
//   R1+ @edge=j a=<elt> dir=th|ht writhe=+|-
//   R2- @arrows=i,j
//   R2+ @edges=j,k p1=<elt> p2=<elt> pat=nested|crossing heads=first|second wsign=+|-
//   R3  @arrows=i,j,k type=t
//   W   @arrow=i g=<elt>
//
// R1+ splits edge j (old marking m) into  a | 1 | a^-1 m  with the two new
// ends on the 1-marked arc; dir=th puts the tail on the first new position.
// On a degree-0 diagram use @edge=0; a becomes the non-surrounded edge and
// must satisfy [a] = class.
//
// R2+ splits strand j into  p1 | 1 | p1^-1 m_j  and strand k into
// p2 | 1 | p2^-1 m_k  (for j = k a single split  p1 | 1 | p2 | 1 | (p1 p2)^-1 m).
// pat says whether the two new chords nest or cross, heads puts both
// arrowheads on the first or the second strand, wsign is the writhe of the
// chord at the first new slot of strand j; the other chord gets -wsign.
// On a degree-0 diagram use @edges=0,0 with an extra rest=<elt>,
// [p1 p2 rest] = class.
//
// R3 type is the 1-based index into r3_sites of the (ascending) arrow triple.
//
// Abelian moves reuse the same shapes: R1+ drops a= and R2+ drops p2= (those
// decorations are forced by the obstruction condition).
struct Move {
  MoveKind kind = MoveKind::w;
  std::vector<int> at;  // arrow indices, or edge indices for insertions
  int dir = 0;          // R1+: +1 = th, -1 = ht
  int writhe = 0;       // R1+/R2+ (wsign)
  int pat = 0;          // R2+: +1 = nested, -1 = crossing
  int heads = 0;        // R2+: +1 = first, -1 = second
  int type = 0;         // R3
  std::optional<Elt> a, b, rest;  // R1+ a; R2+ p1,p2,rest; W g (in a)
  friend bool operator==(const Move&, const Move&) = default;
};

std::string move_to_string(const Group& g, const Move& m);
Move parse_move(const Group& g, const std::string& s);  // invalid_argument

// empty string when m applies to d, otherwise the reason it does not
std::string why_invalid(const GaussDiagram& d, const Move& m);
inline bool validates(const GaussDiagram& d, const Move& m) { return why_invalid(d, m).empty(); }

GaussDiagram apply_move(const GaussDiagram& d, const Move& m);  // domain_error

// apply with bookkeeping for composing moves across canonicalization:
// position p of the working frame lands at (p + rot) mod L in the result.
// The working frame is the original circle for R3/W, the circle with the new
// positions spliced in for insertions, and the compacted survivor circle for
// removals.
struct AppliedMove {
  GaussDiagram result;
  int rot = 0;
  std::vector<int> arrow_to;   // old arrow index -> result index, -1 if removed
  std::vector<int> new_arrows; // result indices of inserted arrows, first-slot chord first
};
AppliedMove apply_tracked(const GaussDiagram& d, const Move& m);

// valid R3 sites on an ascending arrow triple, sorted; a site lists the
// positions of its three special edges. Conditions: each edge is bounded by
// ends of two different arrows of the triple and marked 1, the six positions
// are distinct, the up-counts are pairwise different and w(e)eps(e) agree.
std::vector<std::array<int, 3>> r3_sites(const GaussDiagram& d, int i, int j, int k);

// writheless variant (the w(e)eps(e) matching is vacuous there), plus the
// switch itself: the two ends across each special edge swap places
std::vector<std::array<int, 3>> r3_sites(const ArrowDiagram& d, int i, int j, int k);
ArrowDiagram r3_switch(const ArrowDiagram& d, const std::array<int, 3>& site);

// complete within the bounds: all valid removals and R3 switches, insertions
// with decorations from ball(ball_radius), w-moves with conjugators from the
// ball. Deterministic order: kind, then site indices, then decorations in
// ball order. R2+ sites are restricted to j <= k (the j > k instances give no
// further results).
std::vector<Move> enumerate_moves(const GaussDiagram& d, int ball_radius,
                                  unsigned allow = all_kinds);

// uniform-ish single move by rejection sampling; nullopt when nothing valid
// was hit
std::optional<Move> random_move(const GaussDiagram& d, int ball_radius, Rng& rng,
                                unsigned allow = all_kinds);

// conjugacy moves on the writheless kinds; the degenerate overload moves the
// partner arrow at the double position simultaneously (the shrunk base edge
// keeps its 1-marking)
ArrowDiagram apply_w(const ArrowDiagram& d, int arrow, const Elt& g);
BasedArrowDiagram apply_w(const BasedArrowDiagram& d, int arrow, const Elt& g);
DegenerateArrowDiagram apply_w(const DegenerateArrowDiagram& d, int arrow, const Elt& g);

// simultaneous move of the two arrows bounding the base edge; its marking is
// conjugated, so a 1-marked base stays 1-marked
BasedArrowDiagram apply_w_pair_at_base(const BasedArrowDiagram& d, const Elt& g);

// rigid conjugacy steps: markings and orientations change in place, the
// circle positions stay put and nothing is canonicalized. Building blocks
// for orbit-stabilizer computations; the degenerate variant moves the
// partner at the double position along, like its canonicalizing counterpart.
void apply_w_rigid(const Group& G, std::vector<Arrow>& arrows, std::vector<Elt>& edges,
                   int arrow, const Elt& g);
void apply_w_rigid_degenerate(const Group& G, std::vector<Arrow>& arrows,
                              std::vector<Elt>& edges, int arrow, const Elt& g);

// closure under w-moves with conjugators from ball(ball_radius), sorted;
// throws domain_error when the closure exceeds cap states
std::vector<GaussDiagram> w_orbit(const GaussDiagram& d, int ball_radius,
                                  size_t cap = 1u << 20);
std::vector<ArrowDiagram> w_orbit(const ArrowDiagram& d, int ball_radius,
                                  size_t cap = 1u << 20);
std::vector<BasedArrowDiagram> w_orbit(const BasedArrowDiagram& d, int ball_radius,
                                       size_t cap = 1u << 20);
std::vector<DegenerateArrowDiagram> w_orbit(const DegenerateArrowDiagram& d, int ball_radius,
                                            size_t cap = 1u << 20);

// breadth-first search for a move path from a to b; sound semi-decision:
// a returned path replays to b, nullopt means the budget (number of expanded
// states) ran out, never "not equivalent"
std::optional<std::vector<Move>> equivalent(const GaussDiagram& a, const GaussDiagram& b,
                                            int ball_radius, long long budget,
                                            unsigned allow = all_kinds);

// generalized moves are compositions of primitive ones; these helpers build
// the sequence (insertion followed by conjugacy moves on the new chords) and
// return it together with the end diagram
struct MoveSeq {
  std::vector<Move> moves;
  GaussDiagram result;
};
MoveSeq generalized_r1(const GaussDiagram& d, int edge, const Elt& a, int dir,
                       int writhe, const Elt& g);
MoveSeq generalized_r2(const GaussDiagram& d, int j, int k, const Elt& p1, const Elt& p2,
                       int pat, int heads, int wsign, const Elt& g1, const Elt& g2);

// homological obstruction loops of candidate abelian removals; q is the
// lower position of the surrounded edge (R1) and the site is fixed by the
// arrow pair resp. triple + type otherwise
Hom obstruction_r1(const AbelianGaussDiagram& d, int arrow, int q);
Hom obstruction_r2(const AbelianGaussDiagram& d, int i, int j);
Hom obstruction_r3(const AbelianGaussDiagram& d, int i, int j, int k, int type);

// R3 sites without the marking condition
std::vector<std::array<int, 3>> r3_sites(const AbelianGaussDiagram& d, int i, int j, int k);

// a removal or switch is admissible iff the classical side conditions hold
// and the obstruction loop evaluates to 0; insertions are always admissible
// on a valid site (the forced decorations keep the inverse admissible)
std::string why_inadmissible(const AbelianGaussDiagram& d, const Move& m);
inline bool abelian_admissible(const AbelianGaussDiagram& d, const Move& m) {
  return why_inadmissible(d, m).empty();
}
AbelianGaussDiagram apply_move_abelian(const AbelianGaussDiagram& d, const Move& m);

std::vector<Move> enumerate_abelian_moves(const AbelianGaussDiagram& d, int ball_radius);

// rotation r with position p of d sitting at (p + r) mod 2n in a; a must be
// abelianize(d) (or any rotation-equal rebuild of it)
int abelianize_rotation(const GaussDiagram& d, const AbelianGaussDiagram& a);

}
