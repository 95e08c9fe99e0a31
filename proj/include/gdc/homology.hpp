#pragma once
#include "gdc/diagram.hpp"

namespace gdc {

// Homology class of the diagram 1-complex in cell coordinates. Edge p spans
// circle positions p -> p+1; the cycle condition at position p reads
// edge[p] - edge[p-1] = +arrow[A] if p is the head of A, -arrow[A] if its tail.
struct Hom {
  std::vector<long long> edge;   // 2n entries
  std::vector<long long> arrow;  // n entries
  friend bool operator==(const Hom& a, const Hom& b) = default;
};

Hom hom_zero(int n);
Hom hom_add(const Hom& a, const Hom& b);
Hom hom_sub(const Hom& a, const Hom& b);
Hom hom_scale(long long c, const Hom& a);

bool is_cycle(const std::vector<Arrow>& arrows, const Hom& h);

// [A_i]: along the arrow tail -> head, back along the circle; [K]: the circle
Hom loop_of_arrow(const std::vector<Arrow>& arrows, int i);
Hom loop_K(int n);

// E(h) = <h,e> - sum over arrows whose return arc covers e of <h,A>,
// independent of the reference edge; throws std::domain_error off cycles
long long energy(const std::vector<Arrow>& arrows, const Hom& h);

// -T = E + sum of the negative arrow coordinates
long long torsion(const std::vector<Arrow>& arrows, const Hom& h);

// h = sum arrow_coeff[i] * [A_i] + k_coeff * [K]
struct Decomposition {
  std::vector<long long> arrow_coeff;
  long long k_coeff = 0;
};
Decomposition decompose(const std::vector<Arrow>& arrows, const Hom& h);

bool is_proper(const Hom& h);  // runs along at least one arrow
// every cell traversed at most once: edges in {0,1}, arrows in {-1,0,1}
bool is_simple(const Hom& h);
bool is_er(const Hom& h);      // no negative edge coordinate

// permutation of the marked edges (nonzero coordinate, circle order);
// entry i is the index of the marked edge the loop visits next
using CirclePerm = std::vector<int>;
int ascents(const CirclePerm& s);
CirclePerm sigma_of_loop(const std::vector<Arrow>& arrows, const Hom& h);

// h + shift*[K] = sum of the parts; each part is a proper simple ER loop and
// parts never disagree on an arrow's sign
struct ErsParts {
  long long shift = 0;
  std::vector<Hom> parts;
};
ErsParts ers_decompose(const std::vector<Arrow>& arrows, const Hom& h);

// all proper simple ER cycles on the given diagram
std::vector<Hom> enumerate_proper_ers(const std::vector<Arrow>& arrows);

// value of the decorating map on h: product of arrow decorations to their
// coefficients times global^E
Elt mu_eval(const AbelianGaussDiagram& d, const Hom& h);

// diagram of a permutation: marked point i occupies positions 2i, 2i+1 and
// its arrow runs from tail 2i+1 to head 2*s[i]; red edge i is edge 2i
std::vector<Arrow> sigma_diagram(const CirclePerm& s);
// the tautological loop: red edges and all arrows with coordinate 1
Hom sigma_loop(const CirclePerm& s);
long long lambda_edge(const std::vector<Arrow>& arrows, int e);

// cycle word (a_0 ... a_{n-1}) meaning s(a_j) = a_{j+1}
CirclePerm word_to_perm(const std::vector<int>& word);
std::vector<int> perm_to_word(const CirclePerm& s);  // throws unless a cycle

// twist: swap entries j, j+1 of the cycle word; the type is read off the
// circular order of (word[j-1], word[j], word[j+1], word[j+2]):
//   A keeps (lambda, T), B and C lower both by 1, vB/vC are their inverses
enum class TwistType { A, B, C, vB, vC };
std::vector<int> twist_apply(const std::vector<int>& word, int j);
TwistType twist_type(const std::vector<int>& word, int j);

}
