#include "gdc/series.hpp"

#include <sstream>
#include <stdexcept>

#include "gdc/textio.hpp"

namespace gdc {

namespace {

// subsets as sorted index lists, by size then lexicographic position
void each_subset(int n, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> pick;
  for (unsigned m = 0; m < (1u << n); m++) {
    pick.clear();
    for (int i = 0; i < n; i++)
      if (m & (1u << i)) pick.push_back(i);
    f(pick);
  }
}

GaussSeries subdiagram_sum(const GaussDiagram& d, bool signs) {
  GaussSeries out;
  each_subset(d.degree, [&](const std::vector<int>& keep) {
    int removed = d.degree - (int)keep.size();
    out.add(sub_keep(d, keep), (!signs || removed % 2 == 0) ? 1 : -1);
  });
  return out;
}

}  // namespace

GaussSeries imap(const GaussDiagram& d) { return subdiagram_sum(d, false); }
GaussSeries imap_inv(const GaussDiagram& d) { return subdiagram_sum(d, true); }

GaussSeries imap(const GaussSeries& x) {
  GaussSeries out;
  for (auto& [d, q] : x.c) {
    GaussSeries t = imap(d);
    t *= q;
    out += t;
  }
  return out;
}

GaussSeries imap_inv(const GaussSeries& x) {
  GaussSeries out;
  for (auto& [d, q] : x.c) {
    GaussSeries t = imap_inv(d);
    t *= q;
    out += t;
  }
  return out;
}

ArrowSeries forget_writhes_T(const GaussSeries& x) {
  ArrowSeries out;
  for (auto& [d, q] : x.c) out.add(forget_writhes(d), q);
  return out;
}

ArrowSeries arrow_T(const GaussSeries& x) {
  ArrowSeries out;
  for (auto& [d, q] : x.c) out.add(forget_writhes(d), diagram_sign(d) * q);
  return out;
}

namespace {

// Fiber sum over all rigid writhe patterns on the canonical layout of d.
// Patterns giving one canonical diagram G form a single orbit of Aut(d), of
// size |Aut(d)|/|Aut(G)|, which is exactly the injection weight.
GaussSeries writhe_fiber(const ArrowDiagram& d, bool signs) {
  if (d.degree == 0) return GaussSeries(GaussDiagram::degree0(d.group, d.cls));
  GaussSeries out;
  std::vector<Arrow> arrows = d.arrows;
  for (unsigned m = 0; m < (1u << d.degree); m++) {
    int sign = 1;
    for (int i = 0; i < d.degree; i++) {
      arrows[i].writhe = (m & (1u << i)) ? -1 : 1;
      sign *= arrows[i].writhe;
    }
    out.add(GaussDiagram::make(d.group, d.degree, arrows, d.edges),
            !signs ? 1 : sign);
  }
  return out;
}

}  // namespace

GaussSeries inject_writhes_S(const ArrowDiagram& d) { return writhe_fiber(d, false); }
GaussSeries arrow_S(const ArrowDiagram& d) { return writhe_fiber(d, true); }

GaussSeries inject_writhes_S(const ArrowSeries& x) {
  GaussSeries out;
  for (auto& [d, q] : x.c) {
    GaussSeries t = inject_writhes_S(d);
    t *= q;
    out += t;
  }
  return out;
}

GaussSeries arrow_S(const ArrowSeries& x) {
  GaussSeries out;
  for (auto& [d, q] : x.c) {
    GaussSeries t = arrow_S(d);
    t *= q;
    out += t;
  }
  return out;
}

namespace {

template <class D>
Series<D> decor_t(const Series<D>& x, GroupPtr target,
                  const std::function<Elt(const Elt&)>& f) {
  Series<D> out;
  for (auto& [d, q] : x.c) {
    if (d.degree == 0) {
      out.add(D::degree0(target, f(d.cls)), q);
      continue;
    }
    std::vector<Elt> edges;
    edges.reserve(d.edges.size());
    for (auto& m : d.edges) edges.push_back(f(m));
    out.add(D::make(target, d.degree, d.arrows, edges), q);
  }
  return out;
}

// all decoration patterns with edge j drawn from fib(edge j); the Aut-orbit
// argument of writhe_fiber applies verbatim
template <class D>
Series<D> decor_s(const Series<D>& x, GroupPtr source,
                  const std::function<std::vector<Elt>(const Elt&)>& fib) {
  Series<D> out;
  for (auto& [d, q] : x.c) {
    if (d.degree == 0) {
      for (auto& a : fib(d.cls)) out.add(D::degree0(source, a), q);
      continue;
    }
    std::vector<std::vector<Elt>> choice;
    for (auto& m : d.edges) {
      choice.push_back(fib(m));
      if (choice.back().empty())
        throw std::domain_error("empty decoration fiber");
    }
    int ne = (int)choice.size();
    std::vector<int> at(ne, 0);
    std::vector<Elt> edges(ne);
    for (;;) {
      for (int j = 0; j < ne; j++) edges[j] = choice[j][at[j]];
      out.add(D::make(source, d.degree, d.arrows, edges), q);
      int j = 0;
      while (j < ne && ++at[j] == (int)choice[j].size()) at[j++] = 0;
      if (j == ne) break;
    }
  }
  return out;
}

}  // namespace

GaussSeries decor_T(const GaussSeries& x, GroupPtr target,
                    const std::function<Elt(const Elt&)>& f) {
  return decor_t(x, target, f);
}
ArrowSeries decor_T(const ArrowSeries& x, GroupPtr target,
                    const std::function<Elt(const Elt&)>& f) {
  return decor_t(x, target, f);
}
GaussSeries decor_S(const GaussSeries& x, GroupPtr source,
                    const std::function<std::vector<Elt>(const Elt&)>& fib) {
  return decor_s(x, source, fib);
}
ArrowSeries decor_S(const ArrowSeries& x, GroupPtr source,
                    const std::function<std::vector<Elt>(const Elt&)>& fib) {
  return decor_s(x, source, fib);
}

std::string inline_code(const std::string& block) {
  std::string out, line;
  std::istringstream in(block);
  while (std::getline(in, line)) {
    line = strip_comment(line);
    if (line.empty()) continue;
    if (!out.empty()) out += "; ";
    out += line;
  }
  return out;
}

std::string block_code(const std::string& line) {
  std::string out;
  for (char ch : line) out += ch == ';' ? '\n' : ch;
  return out + "\n";
}

namespace {

template <class S, class P>
S parse_series(const std::string& text, P parse) {
  S out;
  std::istringstream in(text);
  std::string line;
  int ln = 0;
  while (std::getline(in, line)) {
    ln++;
    line = strip_comment(line);
    if (line.empty()) continue;
    auto bar = line.find('|');
    if (bar == std::string::npos)
      throw std::invalid_argument("series line " + std::to_string(ln) +
                                  " lacks '|'");
    auto tok = split_ws(line.substr(0, bar));
    if (tok.size() != 1)
      throw std::invalid_argument("series line " + std::to_string(ln) +
                                  " wants a single rational before '|'");
    out.add(parse(block_code(line.substr(bar + 1))), parse_rat(tok[0]));
  }
  return out;
}

template <class S, class P>
std::string print_series_of(const S& x, P print) {
  std::string out;
  for (auto& [d, q] : x.c)
    out += rat_str(q) + " | " + inline_code(print(d)) + "\n";
  return out;
}

}  // namespace

std::string print_series(const GaussSeries& x) {
  return print_series_of(x, [](const GaussDiagram& d) { return print_gauss(d); });
}
std::string print_series(const ArrowSeries& x) {
  return print_series_of(x, [](const ArrowDiagram& d) { return print_arrow(d); });
}
GaussSeries parse_gauss_series(const std::string& text) {
  return parse_series<GaussSeries>(text, parse_gauss);
}
ArrowSeries parse_arrow_series(const std::string& text) {
  return parse_series<ArrowSeries>(text, parse_arrow);
}

}
