#pragma once
#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace gdc {

using Rat = mpq_class;

inline std::string rat_str(const Rat& q) {
  Rat c = q;
  c.canonicalize();
  return c.get_str();
}

// accepts "p" and "p/q", q > 0 after canonicalization
inline Rat parse_rat(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational");
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (!(isdigit((unsigned char)c) || c == '-' || c == '+' || c == '/'))
      throw std::invalid_argument("bad rational: " + s);
  }
  Rat q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

}
