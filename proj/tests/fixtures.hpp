#pragma once

// Structures shared by several test binaries.

#include "diffalg/diffstruct.hpp"

namespace fx {

using namespace diffalg;

inline Derivation D(const FieldSpec& f, std::initializer_list<std::pair<const char*, const char*>> parts) {
  Derivation d{std::vector<RatFun>(f.size(), RatFun::constant(f.size(), 0))};
  for (const auto& [var, coeff] : parts) d.coeffs[f.index_of(var)] = parse_ratfun(coeff, f);
  return d;
}

inline const FieldSpec& xyz() {
  static const FieldSpec f({"x", "y", "z"});
  return f;
}

inline const FieldSpec& xy() {
  static const FieldSpec f({"x", "y"});
  return f;
}

/// Q(x,y,z) with basis {d/dx, d/dy, z d/dz}.
inline DiffStructure log_z_structure() {
  const auto& f = xyz();
  return build_structure(f, {D(f, {{"x", "1"}}), D(f, {{"y", "1"}}), D(f, {{"z", "z"}})});
}

/// Coordinate partials on a field.
inline DiffStructure coordinate_structure(const FieldSpec& f) {
  std::vector<Derivation> basis;
  for (const auto& v : f.variables()) basis.push_back(D(f, {{v.c_str(), "1"}}));
  return build_structure(f, basis);
}

/// Non-commuting structure on Q(x,y,z): {d/dx + y d/dz, d/dy, d/dz}.
inline DiffStructure twisted_structure() {
  const auto& f = xyz();
  return build_structure(f, {D(f, {{"x", "1"}, {"z", "y"}}), D(f, {{"y", "1"}}), D(f, {{"z", "1"}})});
}

/// Non-commuting structure on Q(x,y): {d/dx, x d/dy}.
inline DiffStructure scaled_structure() {
  const auto& f = xy();
  return build_structure(f, {D(f, {{"x", "1"}}), D(f, {{"y", "x"}})});
}

/// The quotient by z from Q(x,y,z) with {dx, dy, z dz} to Q(x,y), sending
/// (1/z)dz to f dx + g dy.
inline DiffMorphism quotient_by_z(const RatFun& f, const RatFun& g) {
  DiffStructure src = log_z_structure();
  DiffStructure dst = coordinate_structure(xy());
  Matrix w(2, 3);
  w(0, 0) = 1;
  w(1, 1) = 1;
  w(0, 2) = f;
  w(1, 2) = g;
  std::vector<RatFun> images{RatFun::variable(2, 0), RatFun::variable(2, 1), RatFun::constant(2, 0)};
  return DiffMorphism{src, dst, images, w};
}

}  // namespace fx
