#include "doctest.h"
#include "fixtures.hpp"
#include "gen.hpp"

using namespace diffalg;
using fx::D;

namespace {

RatFun P(std::string_view s, const FieldSpec& f) { return parse_ratfun(s, f); }

Derivation random_derivation(gen::Rng& rng, std::size_t n) {
  Derivation d;
  for (std::size_t v = 0; v < n; ++v) d.coeffs.push_back(rng.ratfun(n, 1));
  return d;
}

OmegaElement random_form(gen::Rng& rng, const DiffStructure& s) {
  OmegaElement w;
  for (std::size_t i = 0; i < s.dim(); ++i) w.coeffs.push_back(rng.ratfun(s.base().size(), 2));
  return w;
}

// L_u(w)(delta_j) = u(w(delta_j)) - w([u, delta_j]), with the bracket taken
// between honest derivations and only then expressed in the basis.
RatFun lie_oracle(const std::vector<RatFun>& u, const OmegaElement& w, std::size_t j, const DiffStructure& s) {
  const Derivation ud = s.combine(u);
  const auto coords = s.coordinates(bracket(ud, s.basis(j)));
  REQUIRE(coords.has_value());
  return ud.apply(w.coeffs[j]) - w.pair(*coords);
}

std::vector<DiffStructure> sample_structures() {
  return {fx::log_z_structure(), fx::twisted_structure(), fx::scaled_structure()};
}

}  // namespace

TEST_CASE("bracket examples") {
  const auto& f = fx::xyz();
  CHECK(bracket(D(f, {{"z", "z"}}), D(f, {{"x", "1"}})) == D(f, {}));
  CHECK(bracket(D(f, {{"x", "z"}, {"y", "1"}}), D(f, {{"z", "1"}})) == D(f, {{"x", "-1"}}));
  CHECK(bracket(D(f, {{"x", "1"}}), D(f, {{"y", "1"}})) == D(f, {}));
}

TEST_CASE("bracket agrees with operator commutator; Jacobi identity") {
  gen::Rng rng(21);
  for (int k = 0; k < 50; ++k) {
    Derivation a = random_derivation(rng, 3), b = random_derivation(rng, 3), c = random_derivation(rng, 3);
    RatFun probe = rng.ratfun(3, 2);
    CHECK(bracket(a, b).apply(probe) == a.apply(b.apply(probe)) - b.apply(a.apply(probe)));
    Derivation j1 = bracket(a, bracket(b, c)), j2 = bracket(b, bracket(c, a)), j3 = bracket(c, bracket(a, b));
    for (std::size_t v = 0; v < 3; ++v) CHECK((j1.coeffs[v] + j2.coeffs[v] + j3.coeffs[v]).is_zero());
  }
}

TEST_CASE("build_structure") {
  const auto& f = fx::xyz();
  DiffStructure s = fx::log_z_structure();
  CHECK(s.commuting());

  try {
    build_structure(f, {D(f, {{"x", "z"}, {"y", "1"}}), D(f, {{"z", "1"}})});
    FAIL("expected NotClosed");
  } catch (const NotClosed& e) {
    CHECK(e.i() == 0);
    CHECK(e.j() == 1);
    CHECK(e.witness() == D(f, {{"x", "-1"}}));
  }

  DiffStructure single = build_structure(f, {D(f, {{"x", "1"}})});
  CHECK(single.dim() == 1);
  CHECK(single.commuting());

  CHECK_THROWS_AS(build_structure(f, {D(f, {{"x", "1"}}), D(f, {{"x", "y"}})}), NotIndependent);

  DiffStructure sc = fx::scaled_structure();
  // [d/dx, x d/dy] = d/dy = (1/x) (x d/dy)
  CHECK(sc.c(0, 1, 0).is_zero());
  CHECK(sc.c(0, 1, 1) == P("1/x", fx::xy()));
  CHECK(sc.c(1, 0, 1) == P("-1/x", fx::xy()));

  DiffStructure tw = fx::twisted_structure();
  // [d/dx + y d/dz, d/dy] = -d/dz
  CHECK(tw.c(0, 1, 2) == P("-1", f));
}

TEST_CASE("de Rham examples") {
  const FieldSpec xt({"x", "t"});
  DiffStructure sxy = fx::coordinate_structure(fx::xy());
  DiffStructure sxt = fx::coordinate_structure(xt);
  CHECK(deRham_d0(P("x*y", fx::xy()), sxy) == OmegaElement{{P("y", fx::xy()), P("x", fx::xy())}});
  CHECK(deRham_d0(P("t", xt), sxt) == OmegaElement{{P("0", xt), P("1", xt)}});

  DiffStructure lz = fx::log_z_structure();
  const auto& f = fx::xyz();
  CHECK(deRham_d0(P("z", f), lz) == OmegaElement{{P("0", f), P("0", f), P("z", f)}});
  CHECK(deRham_d1(OmegaElement{{P("0", f), P("0", f), P("1", f)}}, lz).is_zero());

  CHECK(deRham_d1(deRham_d0(P("x^2*y", fx::xy()), sxy), sxy).is_zero());
  TwoForm dw = deRham_d1(OmegaElement{{P("0", fx::xy()), P("x", fx::xy())}}, sxy);
  CHECK(dw.at(0, 1) == P("1", fx::xy()));
  CHECK(dw.at(1, 0) == P("-1", fx::xy()));
}

TEST_CASE("d of d vanishes in several structures") {
  gen::Rng rng(22);
  for (const auto& s : sample_structures()) {
    for (int k = 0; k < 100; ++k) CHECK(deRham_d1(deRham_d0(rng.ratfun(s.base().size(), 3), s), s).is_zero());
  }
}

TEST_CASE("Leibniz for d0") {
  gen::Rng rng(23);
  DiffStructure s = fx::twisted_structure();
  for (int k = 0; k < 30; ++k) {
    RatFun a = rng.ratfun(3), b = rng.ratfun(3);
    CHECK(deRham_d0(a * b, s) == a * deRham_d0(b, s) + b * deRham_d0(a, s));
  }
}

TEST_CASE("Lie derivative examples") {
  const FieldSpec xt({"x", "t"});
  DiffStructure s = fx::coordinate_structure(xt);
  CHECK(lie_derivative(0, OmegaElement{{P("1", xt), P("0", xt)}}, s).is_zero());
  CHECK(lie_derivative(1, OmegaElement{{P("x", xt), P("0", xt)}}, s).is_zero());
  // weak Lie with a = x, delta = d/dx, w = omega_1
  OmegaElement w{{P("1", xt), P("0", xt)}};
  OmegaElement lhs = lie_derivative_general({P("x", xt), P("0", xt)}, w, s);
  OmegaElement rhs = P("x", xt) * lie_derivative(0, w, s) + w.coeffs[0] * deRham_d0(P("x", xt), s);
  CHECK(lhs == rhs);
}

TEST_CASE("Lie derivative against its characterization") {
  gen::Rng rng(24);
  for (const auto& s : sample_structures()) {
    for (int k = 0; k < 50; ++k) {
      OmegaElement w = random_form(rng, s);
      std::vector<RatFun> u(s.dim());
      if (k % 2 == 0) {
        u[static_cast<std::size_t>(rng.integer(0, static_cast<int>(s.dim()) - 1))] = 1;
      } else {
        for (auto& c : u) c = rng.ratfun(s.base().size(), 1);
      }
      OmegaElement l = lie_derivative_general(u, w, s);
      for (std::size_t j = 0; j < s.dim(); ++j) CHECK(l.coeffs[j] == lie_oracle(u, w, j, s));
    }
  }
}

TEST_CASE("weak Lie scaling law") {
  gen::Rng rng(25);
  for (const auto& s : sample_structures()) {
    for (int k = 0; k < 50; ++k) {
      OmegaElement w = random_form(rng, s);
      RatFun a = rng.ratfun(s.base().size(), 2);
      std::size_t i = static_cast<std::size_t>(rng.integer(0, static_cast<int>(s.dim()) - 1));
      std::vector<RatFun> u(s.dim());
      u[i] = a;
      OmegaElement lhs = lie_derivative_general(u, w, s);
      OmegaElement rhs = a * lie_derivative(i, w, s) + w.coeffs[i] * deRham_d0(a, s);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("morphism checks for the quotient by z") {
  const auto& f = fx::xy();
  MorphismCheck ok = check_morphism(fx::quotient_by_z(P("y", f), P("x", f)));
  CHECK(ok.ok());

  MorphismCheck bad = check_morphism(fx::quotient_by_z(P("y", f), P("0", f)));
  REQUIRE(bad.kind == MorphismCheck::Kind::IntegrabilityFail);
  CHECK(bad.index == 2);
  CHECK(bad.integrability_witness.at(0, 1) == P("-1", f));

  // wrong image of dx breaks d-compatibility on x
  DiffMorphism m = fx::quotient_by_z(P("0", f), P("0", f));
  m.omega_matrix(0, 0) = 2;
  MorphismCheck dc = check_morphism(m);
  REQUIRE(dc.kind == MorphismCheck::Kind::DCompatFail);
  CHECK(dc.index == 0);
  CHECK(dc.dcompat_witness == OmegaElement{{P("-1", f), P("0", f)}});

  for (const auto& s : sample_structures()) CHECK(check_morphism(identity_morphism(s)).ok());
}

TEST_CASE("integrability matches the closedness criterion on random f, g") {
  gen::Rng rng(26);
  const auto& f = fx::xy();
  for (int k = 0; k < 20; ++k) {
    RatFun a = rng.ratfun(2, 2), b = rng.ratfun(2, 2);
    MorphismCheck r = check_morphism(fx::quotient_by_z(a, b));
    const RatFun expected = b.derivative(0) - a.derivative(1);
    CHECK(r.ok() == expected.is_zero());
    if (!r.ok()) CHECK(r.integrability_witness.at(0, 1) == expected);
    (void)f;
  }
}

TEST_CASE("composition of valid morphisms is valid") {
  gen::Rng rng(27);
  const FieldSpec uw({"u", "w"});
  DiffStructure t = fx::coordinate_structure(uw);
  for (int k = 0; k < 20; ++k) {
    MultiPoly h = rng.poly(2, 3);
    DiffMorphism first = fx::quotient_by_z(RatFun(h.derivative(0)), RatFun(h.derivative(1)));
    REQUIRE(check_morphism(first).ok());
    std::vector<RatFun> images{RatFun(rng.poly(2, 2)), RatFun(rng.poly(2, 2))};
    Matrix jac(2, 2);
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t i = 0; i < 2; ++i) jac(a, i) = images[i].derivative(a);
    DiffMorphism second{fx::coordinate_structure(fx::xy()), t, images, jac};
    REQUIRE(check_morphism(second).ok());
    CHECK(check_morphism(compose(first, second)).ok());
  }
}

TEST_CASE("parameterized structures") {
  const FieldSpec xt({"x", "t"});
  ParamStructure ps = build_param_structure(xt, {D(xt, {{"x", "1"}})}, {D(xt, {{"t", "1"}})}, {"t"});
  CHECK(ps.p == 1);
  CHECK(ps.q == 1);
  CHECK(ps.full.dim() == 2);
  CHECK(ps.principal.dim() == 1);

  const FieldSpec x2t({"x1", "x2", "t"});
  ParamStructure ps2 =
      build_param_structure(x2t, {D(x2t, {{"x1", "1"}}), D(x2t, {{"x2", "1"}})}, {D(x2t, {{"t", "1"}})}, {"t"});
  CHECK(ps2.p == 2);

  CHECK_THROWS_AS(build_param_structure(xt, {D(xt, {{"t", "1"}})}, {}, {"t"}), PrincipalMovesConstants);
  CHECK_THROWS_AS(build_param_structure(xt, {D(xt, {{"x", "1"}})}, {D(xt, {{"t", "1"}, {"x", "x"}})}, {"t"}),
                  NotCommuting);
  CHECK_THROWS_AS(build_param_structure(xt, {D(xt, {{"x", "1"}})}, {D(xt, {{"x", "t"}})}, {"t"}), NotIndependent);
  CHECK_THROWS_AS(build_param_structure(xt, {D(xt, {{"x", "1"}})}, {}, {"s"}), UnknownVariable);
}
