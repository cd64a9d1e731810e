#pragma once

// Random parameterized structures and gauge-flat modules.

#include <memory>
#include <string>

#include "diffalg/conn.hpp"
#include "fixtures.hpp"
#include "gen.hpp"

namespace modgen {

using namespace diffalg;

/// Q(x1..xp, t1..tq) with coordinate partials; the t's are the constants.
inline StructurePtr coordinate_param_structure(std::size_t p, std::size_t q) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= p; ++i) names.push_back(p == 1 ? "x" : "x" + std::to_string(i));
  for (std::size_t j = 1; j <= q; ++j) names.push_back(q == 1 ? "t" : "t" + std::to_string(j));
  FieldSpec f(names);
  std::vector<Derivation> principal, parameter;
  std::vector<std::string> constants;
  for (std::size_t i = 0; i < p; ++i) principal.push_back(fx::D(f, {{names[i].c_str(), "1"}}));
  for (std::size_t j = 0; j < q; ++j) {
    parameter.push_back(fx::D(f, {{names[p + j].c_str(), "1"}}));
    constants.push_back(names[p + j]);
  }
  return std::make_shared<const ParamStructure>(build_param_structure(f, principal, parameter, constants));
}

inline Matrix derive(const DiffStructure& s, std::size_t i, const Matrix& m) {
  return m.map([&](const RatFun& x) { return s.apply(i, x); });
}

/// A_i = -T^{-1} delta_i(T): the trivial connection in the basis e-bar T.
inline DiffModule gauge_module(const StructurePtr& ps, const Matrix& t) {
  const Matrix inv = inverse(t);
  std::vector<Matrix> conn;
  for (std::size_t i = 0; i < ps->p; ++i) conn.push_back(-(inv * derive(ps->principal, i, t)));
  return make_module(ps, std::move(conn));
}

/// Gauge transform of an arbitrary module: A' = T^{-1} A T - T^{-1} delta(T).
inline DiffModule gauge_transform(const DiffModule& m, const Matrix& t) {
  const Matrix inv = inverse(t);
  std::vector<Matrix> conn;
  for (std::size_t i = 0; i < m.ps->p; ++i)
    conn.push_back(inv * m.conn[i] * t - inv * derive(m.ps->principal, i, t));
  return make_module(m.ps, std::move(conn));
}

/// Product of a unit lower and a unit upper triangular matrix with entries
/// of degree <= 1, times a diagonal of nonzero rationals: determinant is a
/// nonzero constant and all entries have degree <= 2.
inline Matrix unimodular(gen::Rng& rng, std::size_t m, std::size_t nvars) {
  Matrix lower = Matrix::identity(m), upper = Matrix::identity(m), diag = Matrix::identity(m);
  for (std::size_t r = 0; r < m; ++r) {
    diag(r, r) = RatFun::constant(nvars, rng.nonzero_rational(3));
    for (std::size_t c = 0; c < r; ++c) {
      lower(r, c) = RatFun(rng.poly(nvars, 1, 2));
      upper(c, r) = RatFun(rng.poly(nvars, 1, 2));
    }
  }
  return lower * diag * upper;
}

/// A gauge matrix that also has a rational pole: unimodular times
/// diag(x_1 + c + l, 1, ...) with l a random linear form.
inline Matrix with_pole(gen::Rng& rng, std::size_t m, std::size_t nvars) {
  Matrix s = Matrix::identity(m);
  RatFun pole = RatFun::variable(nvars, 0) + RatFun::constant(nvars, rng.integer(1, 3));
  RatFun shifted = pole + RatFun(rng.poly(nvars, 1));
  s(0, 0) = shifted.is_constant() ? pole : shifted;
  return unimodular(rng, m, nvars) * s;
}

inline Matrix random_matrix(gen::Rng& rng, std::size_t m, std::size_t nvars) {
  return rng.matrix(m, m, nvars, gen::Rng::all(nvars), 1, 0.5);
}

}  // namespace modgen
