#pragma once
#include <string>

#include "gdc/diagram.hpp"

namespace gdc {

// group spec grammar:  trivial | Z | Z^<k> | free <k> | table <path>
// optionally followed by  w <s1> ... <sk>  with si = 1 or -1 (per generator;
// table groups carry weights in the table file instead)
GroupPtr parse_group(const std::string& spec);

// table file: optional '#' comments; "order <n>"; "mult" followed by n rows
// of n indices; optional "w" line with n signs; element 0 is the identity
GroupPtr load_table(const std::string& path);

// element syntax: trivial "e"; Z^k "[c1,...,ck]" (plain integer allowed for
// Z); free words "x1*x2'" with ' for inverse, "e" identity; finite "g<i>",
// identity also "e"
std::string elt_str(const Group& g, const Elt& a);
Elt parse_elt(const Group& g, const std::string& s);

// diagram text blocks, '#' comments and blank lines permitted:
//   gd 1                        (ad 1 / agd 1 for the other kinds)
//   group <spec>
//   degree <n>
//   arrows 0->2:+ 1->3:-        (no :sign on ad blocks)
//   edges m0 m1 ... m(2n-1)     (gd/ad, n >= 1)
//   decor d1 ... dn             (agd only)
//   global m                    (agd only)
//   class <elt>                 (degree 0, instead of the structure lines)
std::string print_gauss(const GaussDiagram& d);
std::string print_arrow(const ArrowDiagram& d);
std::string print_abelian(const AbelianGaussDiagram& d);

GaussDiagram parse_gauss(const std::string& text);
ArrowDiagram parse_arrow(const std::string& text);
AbelianGaussDiagram parse_abelian(const std::string& text);

enum class BlockKind { gauss, arrow, abelian };
BlockKind sniff_kind(const std::string& text);

// shared low-level helpers
std::vector<std::string> split_ws(const std::string& s);
std::string strip_comment(const std::string& line);

}
