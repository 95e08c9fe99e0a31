#pragma once
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace gdc {

// Group element; the representation depends on the group kind:
//   trivial:            {}
//   free abelian Z^k:   {c1,...,ck}
//   free of rank k:     reduced word, token +i = generator i, -i = its inverse (1-based)
//   finite (table):     {index}, index 0 is the identity
using Elt = std::vector<int>;

enum class GroupKind { trivial, free_abelian, free_group, finite };

class Group;
using GroupPtr = std::shared_ptr<const Group>;

// A weighted group (pi, w): w is a homomorphism pi -> {+1,-1}.
class Group {
public:
  GroupKind kind = GroupKind::trivial;
  int rank = 0;               // generator count (free kinds), order (finite)
  std::vector<int> gen_w;     // free kinds: weight of each generator
  std::vector<int> mtab;      // finite: rank*rank, mtab[a*rank+b] = a*b
  std::vector<int> itab;      // finite: inverse of each element
  std::vector<int> wtab;      // finite: weight of each element
  std::string spec;           // e.g. "Z^2 w 1 -1", "free 2", "table foo"

  static GroupPtr trivial();
  static GroupPtr free_abelian(int k, std::vector<int> w = {});
  static GroupPtr free_group(int k, std::vector<int> w = {});
  // mult is row-major order*order; validates group axioms and w
  static GroupPtr finite(std::vector<int> mult, std::vector<int> w = {},
                         const std::string& spec_name = "");
  static GroupPtr cyclic(int m);  // convenience: Z/m with trivial weights

  Elt id() const;
  bool is_id(const Elt& a) const;
  Elt mul(const Elt& a, const Elt& b) const;
  Elt inv(const Elt& a) const;
  Elt pow(const Elt& a, long long e) const;
  Elt conj(const Elt& a, const Elt& g) const;  // g^-1 a g
  int w(const Elt& a) const;
  bool abelian() const;
  bool trivial_w() const;
  void check(const Elt& a) const;  // throws std::invalid_argument if malformed

  // canonical conjugacy class representative:
  // abelian kinds: the element itself; free: cyclic reduction, then the
  // least rotation; finite: smallest index in the class
  Elt class_rep(const Elt& a) const;
  bool same_class(const Elt& a, const Elt& b) const;

  // norm-then-lex order; norm = |word| resp. sum |ci| resp. 0/1 for finite
  long long norm(const Elt& a) const;
  int cmp(const Elt& a, const Elt& b) const;

  // closed ball around the identity, sorted by (norm, lex); for finite
  // groups and r >= 1 this is the whole group
  std::vector<Elt> ball(int r) const;

  std::vector<Elt> elements() const;    // finite only
  std::vector<Elt> class_reps() const;  // finite only
};

// serialization fragment used by diagram keys: {len, values...}
inline void elt_key(const Elt& a, std::vector<long long>& out) {
  out.push_back((long long)a.size());
  for (int v : a) out.push_back(v);
}

}
