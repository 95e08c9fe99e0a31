#include "gdc/textio.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gdc {

std::string strip_comment(const std::string& line) {
  auto h = line.find('#');
  return h == std::string::npos ? line : line.substr(0, h);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

static long long parse_int(const std::string& t) {
  if (t.empty()) throw std::invalid_argument("expected an integer");
  char* end = nullptr;
  errno = 0;
  long long v = std::strtoll(t.c_str(), &end, 10);
  if (errno != 0 || end != t.c_str() + t.size())
    throw std::invalid_argument("bad integer '" + t + "'");
  return v;
}

static int parse_sign_tok(const std::string& t) {
  if (t == "1" || t == "+1") return 1;
  if (t == "-1") return -1;
  throw std::invalid_argument("bad sign '" + t + "' (want 1 or -1)");
}

// ---------------------------------------------------------------- groups

static std::vector<int> parse_w_clause(const std::vector<std::string>& tok,
                                       size_t from, int rank) {
  if (from >= tok.size()) return {};
  if (tok[from] != "w")
    throw std::invalid_argument("unexpected token '" + tok[from] + "' in group spec");
  std::vector<int> w;
  for (size_t i = from + 1; i < tok.size(); i++) w.push_back(parse_sign_tok(tok[i]));
  if ((int)w.size() != rank)
    throw std::invalid_argument("w clause wants one sign per generator");
  return w;
}

GroupPtr load_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open table file: " + path);
  std::string line;
  int order = -1;
  std::vector<int> mult, w;
  bool in_mult = false;
  while (std::getline(in, line)) {
    auto tok = split_ws(strip_comment(line));
    if (tok.empty()) continue;
    if (tok[0] == "order") {
      if (tok.size() != 2) throw std::invalid_argument("table: bad order line");
      order = (int)parse_int(tok[1]);
      in_mult = false;
    } else if (tok[0] == "mult") {
      if (order < 0) throw std::invalid_argument("table: order must precede mult");
      in_mult = true;
    } else if (tok[0] == "w") {
      for (size_t i = 1; i < tok.size(); i++) w.push_back(parse_sign_tok(tok[i]));
      in_mult = false;
    } else if (in_mult) {
      for (auto& t : tok) mult.push_back((int)parse_int(t));
    } else {
      throw std::invalid_argument("table: unexpected line starting '" + tok[0] + "'");
    }
  }
  if (order < 0) throw std::invalid_argument("table: missing order line");
  if ((int)mult.size() != order * order)
    throw std::invalid_argument("table: mult needs order^2 entries");
  return Group::finite(mult, w, "table " + path);
}

GroupPtr parse_group(const std::string& spec) {
  auto tok = split_ws(strip_comment(spec));
  if (tok.empty()) throw std::invalid_argument("empty group spec");
  const std::string& head = tok[0];
  if (head == "trivial") {
    if (tok.size() != 1) throw std::invalid_argument("trivial group takes no options");
    return Group::trivial();
  }
  if (head == "Z" || head.rfind("Z^", 0) == 0) {
    int k = head == "Z" ? 1 : (int)parse_int(head.substr(2));
    return Group::free_abelian(k, parse_w_clause(tok, 1, k));
  }
  if (head == "free") {
    if (tok.size() < 2) throw std::invalid_argument("free group spec wants a rank");
    int k = (int)parse_int(tok[1]);
    return Group::free_group(k, parse_w_clause(tok, 2, k));
  }
  if (head == "table") {
    if (tok.size() != 2)
      throw std::invalid_argument("table spec wants exactly one path");
    return load_table(tok[1]);
  }
  throw std::invalid_argument("unknown group spec '" + head + "'");
}

// -------------------------------------------------------------- elements

std::string elt_str(const Group& g, const Elt& a) {
  g.check(a);
  switch (g.kind) {
    case GroupKind::trivial:
      return "e";
    case GroupKind::free_abelian: {
      std::string s = "[";
      for (int i = 0; i < g.rank; i++) {
        if (i) s += ",";
        s += std::to_string(a[i]);
      }
      return s + "]";
    }
    case GroupKind::free_group: {
      if (a.empty()) return "e";
      std::string s;
      for (size_t i = 0; i < a.size(); i++) {
        if (i) s += "*";
        s += "x" + std::to_string(a[i] > 0 ? a[i] : -a[i]);
        if (a[i] < 0) s += "'";
      }
      return s;
    }
    case GroupKind::finite:
      return a[0] == 0 ? "e" : "g" + std::to_string(a[0]);
  }
  throw std::logic_error("unreachable");
}

Elt parse_elt(const Group& g, const std::string& s0) {
  auto tok = split_ws(s0);
  if (tok.size() != 1) throw std::invalid_argument("bad element '" + s0 + "'");
  const std::string& s = tok[0];
  switch (g.kind) {
    case GroupKind::trivial:
      if (s == "e") return {};
      throw std::invalid_argument("trivial group element must be 'e'");
    case GroupKind::free_abelian: {
      if (s == "e") return Elt(g.rank, 0);
      if (s.front() == '[') {
        if (s.back() != ']') throw std::invalid_argument("unterminated vector '" + s + "'");
        Elt a;
        std::string body = s.substr(1, s.size() - 2);
        if (!body.empty()) {
          std::istringstream in(body);
          std::string part;
          while (std::getline(in, part, ',')) a.push_back((int)parse_int(part));
          if (!body.empty() && body.back() == ',')
            throw std::invalid_argument("trailing comma in '" + s + "'");
        }
        if ((int)a.size() != g.rank)
          throw std::invalid_argument("vector '" + s + "' wants " +
                                      std::to_string(g.rank) + " entries");
        return a;
      }
      if (g.rank == 1) return {(int)parse_int(s)};
      throw std::invalid_argument("bad vector '" + s + "'");
    }
    case GroupKind::free_group: {
      Elt acc = g.id();
      std::istringstream in(s);
      std::string part;
      while (std::getline(in, part, '*')) {
        if (part == "e") continue;
        bool inv = !part.empty() && part.back() == '\'';
        std::string core = inv ? part.substr(0, part.size() - 1) : part;
        if (core.size() < 2 || core[0] != 'x')
          throw std::invalid_argument("bad word letter '" + part + "'");
        int i = (int)parse_int(core.substr(1));
        if (i < 1 || i > g.rank)
          throw std::invalid_argument("generator x" + std::to_string(i) + " out of range");
        acc = g.mul(acc, {inv ? -i : i});
      }
      return acc;
    }
    case GroupKind::finite: {
      if (s == "e") return {0};
      if (s.size() < 2 || s[0] != 'g')
        throw std::invalid_argument("bad element '" + s + "' (want g<i> or e)");
      int i = (int)parse_int(s.substr(1));
      if (i < 0 || i >= g.rank)
        throw std::invalid_argument("element index " + std::to_string(i) + " out of range");
      return {i};
    }
  }
  throw std::logic_error("unreachable");
}

// -------------------------------------------------------------- diagrams

static std::string arrow_str(const Arrow& a, bool with_writhe) {
  std::string s = std::to_string(a.tail) + "->" + std::to_string(a.head);
  if (with_writhe) s += a.writhe > 0 ? ":+" : ":-";
  return s;
}

static Arrow parse_arrow_tok(const std::string& t, bool with_writhe) {
  auto arr = t.find("->");
  if (arr == std::string::npos) throw std::invalid_argument("bad arrow '" + t + "'");
  std::string rest = t.substr(arr + 2);
  int writhe = 1;
  if (with_writhe) {
    auto col = rest.find(':');
    if (col == std::string::npos || col + 2 != rest.size())
      throw std::invalid_argument("arrow '" + t + "' wants :+ or :-");
    char c = rest[col + 1];
    if (c != '+' && c != '-') throw std::invalid_argument("bad writhe in '" + t + "'");
    writhe = c == '+' ? 1 : -1;
    rest = rest.substr(0, col);
  } else if (rest.find(':') != std::string::npos) {
    throw std::invalid_argument("arrow '" + t + "' carries an unexpected writhe");
  }
  return {(int)parse_int(t.substr(0, arr)), (int)parse_int(rest), writhe};
}

template <class D>
static std::string print_block(const char* tag, const D& d, bool with_writhe) {
  std::string s = std::string(tag) + " 1\ngroup " + d.group->spec + "\ndegree " +
                  std::to_string(d.degree) + "\n";
  if (d.degree == 0) return s + "class " + elt_str(*d.group, d.cls) + "\n";
  s += "arrows";
  for (auto& a : d.arrows) s += " " + arrow_str(a, with_writhe);
  s += "\nedges";
  for (auto& m : d.edges) s += " " + elt_str(*d.group, m);
  return s + "\n";
}

std::string print_gauss(const GaussDiagram& d) { return print_block("gd", d, true); }
std::string print_arrow(const ArrowDiagram& d) { return print_block("ad", d, false); }

std::string print_abelian(const AbelianGaussDiagram& d) {
  std::string s = "agd 1\ngroup " + d.group->spec + "\ndegree " +
                  std::to_string(d.degree) + "\n";
  if (d.degree == 0) return s + "class " + elt_str(*d.group, d.global) + "\n";
  s += "arrows";
  for (auto& a : d.arrows) s += " " + arrow_str(a, true);
  s += "\ndecor";
  for (auto& m : d.decor) s += " " + elt_str(*d.group, m);
  return s + "\nglobal " + elt_str(*d.group, d.global) + "\n";
}

namespace {

struct Block {
  std::string tag;
  GroupPtr group;
  int degree = -1;
  std::vector<Arrow> arrows;
  std::vector<Elt> edges, decor;
  Elt cls, global;
  bool have_arrows = false, have_edges = false, have_decor = false,
       have_global = false, have_class = false;
};

Block read_block(const std::string& text, bool with_writhe) {
  Block b;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto tok = split_ws(strip_comment(line));
    if (tok.empty()) continue;
    const std::string& key = tok[0];
    if (b.tag.empty()) {
      if (tok.size() != 2 || tok[1] != "1")
        throw std::invalid_argument("bad diagram header");
      b.tag = key;
      continue;
    }
    if (key == "group") {
      std::string spec;
      for (size_t i = 1; i < tok.size(); i++) spec += (i > 1 ? " " : "") + tok[i];
      b.group = parse_group(spec);
    } else if (key == "degree") {
      if (tok.size() != 2) throw std::invalid_argument("bad degree line");
      b.degree = (int)parse_int(tok[1]);
    } else if (key == "arrows") {
      for (size_t i = 1; i < tok.size(); i++)
        b.arrows.push_back(parse_arrow_tok(tok[i], with_writhe));
      b.have_arrows = true;
    } else if (key == "edges" || key == "decor") {
      if (!b.group) throw std::invalid_argument("group must precede " + key);
      auto& dst = key == "edges" ? b.edges : b.decor;
      for (size_t i = 1; i < tok.size(); i++) dst.push_back(parse_elt(*b.group, tok[i]));
      (key == "edges" ? b.have_edges : b.have_decor) = true;
    } else if (key == "global" || key == "class") {
      if (!b.group || tok.size() != 2)
        throw std::invalid_argument("bad " + key + " line");
      (key == "global" ? b.global : b.cls) = parse_elt(*b.group, tok[1]);
      (key == "global" ? b.have_global : b.have_class) = true;
    } else {
      throw std::invalid_argument("unexpected line starting '" + key + "'");
    }
  }
  if (b.tag.empty()) throw std::invalid_argument("empty diagram block");
  if (!b.group) throw std::invalid_argument("diagram block lacks a group line");
  if (b.degree < 0) throw std::invalid_argument("diagram block lacks a degree line");
  if (b.degree == 0) {
    if (!b.have_class || b.have_arrows || b.have_edges || b.have_decor || b.have_global)
      throw std::invalid_argument("degree 0 block wants exactly a class line");
  } else if (!b.have_arrows || b.have_class) {
    throw std::invalid_argument("degree " + std::to_string(b.degree) +
                                " block wants arrows, not class");
  } else if ((int)b.arrows.size() != b.degree) {
    throw std::invalid_argument("degree line disagrees with the arrow count");
  }
  return b;
}

void expect_tag(const Block& b, const char* tag) {
  if (b.tag != tag)
    throw std::invalid_argument("expected a '" + std::string(tag) + " 1' block, got '" +
                                b.tag + "'");
}

}  // namespace

GaussDiagram parse_gauss(const std::string& text) {
  Block b = read_block(text, true);
  expect_tag(b, "gd");
  if (b.degree == 0) return GaussDiagram::degree0(b.group, b.cls);
  if (b.have_decor || b.have_global)
    throw std::invalid_argument("gd block does not take decor/global lines");
  return GaussDiagram::make(b.group, b.degree, b.arrows, b.edges);
}

ArrowDiagram parse_arrow(const std::string& text) {
  Block b = read_block(text, false);
  expect_tag(b, "ad");
  if (b.degree == 0) return ArrowDiagram::degree0(b.group, b.cls);
  if (b.have_decor || b.have_global)
    throw std::invalid_argument("ad block does not take decor/global lines");
  return ArrowDiagram::make(b.group, b.degree, b.arrows, b.edges);
}

AbelianGaussDiagram parse_abelian(const std::string& text) {
  Block b = read_block(text, true);
  expect_tag(b, "agd");
  if (b.degree == 0) return AbelianGaussDiagram::degree0(b.group, b.cls);
  if (b.have_edges || !b.have_decor || !b.have_global)
    throw std::invalid_argument("agd block wants decor and global lines");
  return AbelianGaussDiagram::make(b.group, b.degree, b.arrows, b.decor, b.global);
}

BlockKind sniff_kind(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto tok = split_ws(strip_comment(line));
    if (tok.empty()) continue;
    if (tok[0] == "gd") return BlockKind::gauss;
    if (tok[0] == "ad") return BlockKind::arrow;
    if (tok[0] == "agd") return BlockKind::abelian;
    throw std::invalid_argument("unknown diagram header '" + tok[0] + "'");
  }
  throw std::invalid_argument("empty diagram input");
}

}  // namespace gdc
