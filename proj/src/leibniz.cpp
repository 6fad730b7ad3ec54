#include "curvelab/leibniz.hpp"

#include <sstream>
#include <stdexcept>

namespace curvelab {

namespace {

std::string index_list(const std::vector<int>& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += "x" + std::to_string(v[i]);
  }
  return s + ")";
}

}  // namespace

std::string LeibnizFormula::to_text() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [ip, c] : terms) {
    if (!first) os << " + ";
    first = false;
    if (c != 1) os << c << "*";
    os << "b(g<" << ip.i.size() - 1 << ">" << index_list(ip.i) << ", e<" << ip.j.size() - 1
       << ">" << index_list(ip.j) << ")";
  }
  return os.str();
}

LeibnizFormula expand(int n) {
  if (n < 1) throw std::invalid_argument("expand: order must be >= 1");

  LeibnizFormula f;
  f.order = 1;
  f.terms[{{0, 1}, {1}}] = 1;  // b(g<1>(x0,x1), e(x1))
  f.terms[{{0}, {0, 1}}] = 1;  // b(g(x0), e<1>(x0,x1))

  for (int m = 1; m < n; ++m) {
    int nxt = m + 1;
    LeibnizFormula g;
    g.order = nxt;
    for (const auto& [ip, coeff] : f.terms) {
      bool i0 = !ip.i.empty() && ip.i.front() == 0;
      bool j0 = !ip.j.empty() && ip.j.front() == 0;
      if (!i0 && !j0) continue;  // the difference quotient of this term vanishes
      if (i0 && !j0) {
        IndexPair t = ip;
        t.i.push_back(nxt);
        g.terms[t] += coeff;
      } else if (!i0 && j0) {
        IndexPair t = ip;
        t.j.push_back(nxt);
        g.terms[t] += coeff;
      } else {
        IndexPair a = ip;  // quotient taken on the first factor
        a.i.push_back(nxt);
        a.j.erase(a.j.begin());
        a.j.push_back(nxt);
        g.terms[a] += coeff;
        IndexPair b = ip;  // quotient taken on the second factor
        b.j.push_back(nxt);
        g.terms[b] += coeff;
      }
    }
    f = std::move(g);
  }

  long bound = 1L << n;
  if (f.coefficient_sum() > bound)
    throw std::logic_error("expand: coefficient sum exceeds 2^n");
  for (const auto& [ip, c] : f.terms) {
    if (c < 1) throw std::logic_error("expand: nonpositive coefficient");
    if (static_cast<int>(ip.i.size() + ip.j.size()) != n + 2)
      throw std::logic_error("expand: index size invariant broken");
    for (int v : ip.i)
      if (v < 0 || v > n) throw std::logic_error("expand: index out of range");
    for (int v : ip.j)
      if (v < 0 || v > n) throw std::logic_error("expand: index out of range");
  }
  return f;
}

ProductConstants constants(const LeibnizFormula& f) {
  ProductConstants pc;
  pc.order = f.order;
  pc.C.assign(static_cast<size_t>(f.order) + 1, 0);
  for (const auto& [ip, c] : f.terms)
    pc.C[ip.i.size() - 1] += c;
  if (pc.sum() > (1L << f.order))
    throw std::logic_error("constants: sum exceeds 2^n");
  return pc;
}

}  // namespace curvelab
