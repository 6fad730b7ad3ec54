#pragma once

#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "curvelab/field.hpp"

namespace curvelab {

// The two scalar kinds the curve machinery runs over: exact field elements
// (archimedean or p-adic rationals) and plain doubles for the real case.

inline ExactScalar zero_like(const ExactScalar& x) { return ExactScalar::zero(x.context()); }
inline double zero_like(double) { return 0.0; }

inline double scalar_to_double(const ExactScalar& x) { return x.value().to_double(); }
inline double scalar_to_double(double x) { return x; }

inline std::string scalar_to_string(const ExactScalar& x) { return x.to_string(); }
inline std::string scalar_to_string(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// Finite coordinate vector in E = K^d (or a finitely supported l^p element).
template <class K>
struct VectorT {
  std::vector<K> coords;

  VectorT() = default;
  explicit VectorT(std::vector<K> c) : coords(std::move(c)) {}
  VectorT(std::initializer_list<K> c) : coords(c) {}

  int dim() const { return static_cast<int>(coords.size()); }

  static VectorT zero(int d, const K& like) {
    VectorT v;
    v.coords.assign(static_cast<size_t>(d), zero_like(like));
    return v;
  }

  bool is_zero() const {
    for (const auto& c : coords)
      if (!(c == zero_like(c))) return false;
    return true;
  }

  friend VectorT operator+(const VectorT& a, const VectorT& b) {
    if (a.coords.size() != b.coords.size())
      throw std::invalid_argument("VectorT: dimension mismatch");
    VectorT r;
    r.coords.reserve(a.coords.size());
    for (size_t i = 0; i < a.coords.size(); ++i) r.coords.push_back(a.coords[i] + b.coords[i]);
    return r;
  }

  friend VectorT operator-(const VectorT& a, const VectorT& b) {
    if (a.coords.size() != b.coords.size())
      throw std::invalid_argument("VectorT: dimension mismatch");
    VectorT r;
    r.coords.reserve(a.coords.size());
    for (size_t i = 0; i < a.coords.size(); ++i) r.coords.push_back(a.coords[i] - b.coords[i]);
    return r;
  }

  friend VectorT operator*(const K& t, const VectorT& a) {
    VectorT r;
    r.coords.reserve(a.coords.size());
    for (const auto& c : a.coords) r.coords.push_back(t * c);
    return r;
  }

  friend VectorT operator/(const VectorT& a, const K& t) {
    VectorT r;
    r.coords.reserve(a.coords.size());
    for (const auto& c : a.coords) r.coords.push_back(c / t);
    return r;
  }

  friend bool operator==(const VectorT& a, const VectorT& b) {
    if (a.coords.size() != b.coords.size()) return false;
    for (size_t i = 0; i < a.coords.size(); ++i)
      if (!(a.coords[i] == b.coords[i])) return false;
    return true;
  }

  std::string to_string() const {
    std::string s = "(";
    for (size_t i = 0; i < coords.size(); ++i) {
      if (i) s += ", ";
      s += scalar_to_string(coords[i]);
    }
    return s + ")";
  }
};

using VectorQ = VectorT<ExactScalar>;
using VectorR = VectorT<double>;

}  // namespace curvelab
