#include "diffalg/jet.hpp"

namespace diffalg {

namespace {

Matrix outer(const OmegaElement& a, const OmegaElement& b) {
  Matrix m(a.coeffs.size(), b.coeffs.size());
  for (std::size_t i = 0; i < a.coeffs.size(); ++i)
    for (std::size_t k = 0; k < b.coeffs.size(); ++k) m(i, k) = a.coeffs[i] * b.coeffs[k];
  return m;
}

// D(w)_{ik} = delta_i(w_k)
Matrix jacobian(const OmegaElement& w, const DiffStructure& s) {
  Matrix m(s.dim(), s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t k = 0; k < s.dim(); ++k) m(i, k) = s.apply(i, w.coeffs[k]);
  return m;
}

}  // namespace

Jet1Element jet1_add(const Jet1Element& x, const Jet1Element& y) { return {x.a + y.a, x.w + y.w}; }

Jet1Element jet1_mul(const Jet1Element& x, const Jet1Element& y) { return {x.a * y.a, x.a * y.w + y.a * x.w}; }

Jet1Element jet1_l(const RatFun& a, const DiffStructure& s) { return {a, OmegaElement::zero(s.dim())}; }

Jet1Element jet1_r(const RatFun& a, const DiffStructure& s) { return {a, deRham_d0(a, s)}; }

RatFun jet1_e(const Jet1Element& x) { return x.a; }

Jet1Element jet1_antipode(const Jet1Element& x) { return {x.a, -x.w}; }

Jet11Element Jet11Element::zero(std::size_t d) {
  return {RatFun(), OmegaElement::zero(d), OmegaElement::zero(d), Matrix(d, d)};
}

Jet11Element jet11_add(const Jet11Element& x, const Jet11Element& y) {
  return {x.a + y.a, x.wl + y.wl, x.wr + y.wr, x.eta + y.eta};
}

Jet11Element jet11_sub(const Jet11Element& x, const Jet11Element& y) {
  return {x.a - y.a, x.wl - y.wl, x.wr - y.wr, x.eta - y.eta};
}

Jet11Element jet11_scale(const RatFun& c, const Jet11Element& x) { return {c * x.a, c * x.wl, c * x.wr, c * x.eta}; }

Jet11Element jet11_mul(const Jet11Element& x, const Jet11Element& y) {
  // (w_i(x)1)(1(x)w_k) = w_i(x)w_k; products inside one tensor factor of two
  // forms vanish, as does anything times w_i(x)w_k apart from scalars.
  return {x.a * y.a, x.a * y.wl + y.a * x.wl, x.a * y.wr + y.a * x.wr,
          x.a * y.eta + y.a * x.eta + outer(x.wl, y.wr) + outer(y.wl, x.wr)};
}

Jet11Element jet11_tensor(const Jet1Element& x, const Jet1Element& y, const DiffStructure& s) {
  // x (x) b = x r(b) (x) 1 and x (x) c w_k = x r(c) (x) w_k.
  const std::size_t d = s.dim();
  Jet11Element out = Jet11Element::zero(d);
  Jet1Element xb = jet1_mul(x, jet1_r(y.a, s));
  out.a = xb.a;
  out.wl = xb.w;
  for (std::size_t k = 0; k < d; ++k) {
    if (y.w.coeffs[k].is_zero()) continue;
    Jet1Element xc = jet1_mul(x, jet1_r(y.w.coeffs[k], s));
    out.wr.coeffs[k] += xc.a;
    for (std::size_t i = 0; i < d; ++i) out.eta(i, k) += xc.w.coeffs[i];
  }
  return out;
}

Jet1Element jet11_e_left(const Jet11Element& x) { return {x.a, x.wr}; }

Jet1Element jet11_e_right(const Jet11Element& x) { return {x.a, x.wl}; }

bool jet2_is_member(const Jet2Element& x, const DiffStructure& s) {
  try {
    jet2_require_member(x, s);
    return true;
  } catch (const MembershipViolated&) {
    return false;
  }
}

void jet2_require_member(const Jet2Element& x, const DiffStructure& s) {
  const std::size_t d = s.dim();
  if (x.w.coeffs.size() != d || x.eta.rows() != d || x.eta.cols() != d)
    throw StructureMismatch("jet element does not match the structure");
  const TwoForm dw = deRham_d1(x.w, s);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      if (x.eta(i, j) - x.eta(j, i) != dw.at(i, j)) throw MembershipViolated(i, j);
}

Jet2Element jet2_zero(std::size_t d) { return {RatFun(), OmegaElement::zero(d), Matrix(d, d)}; }

Jet2Element jet2_add(const Jet2Element& x, const Jet2Element& y) { return {x.a + y.a, x.w + y.w, x.eta + y.eta}; }

Jet2Element jet2_sub(const Jet2Element& x, const Jet2Element& y) { return {x.a - y.a, x.w - y.w, x.eta - y.eta}; }

Jet2Element jet2_mul(const Jet2Element& x, const Jet2Element& y, const DiffStructure& s) {
  jet2_require_member(x, s);
  jet2_require_member(y, s);
  return jet2_from_jet11(jet11_mul(jet2_Delta(x, s), jet2_Delta(y, s)), s);
}

Jet2Element jet2_l(const RatFun& a, const DiffStructure& s) { return {a, OmegaElement::zero(s.dim()), Matrix(s.dim(), s.dim())}; }

Jet2Element jet2_r(const RatFun& a, const DiffStructure& s) { return {a, deRham_d0(a, s), Matrix(s.dim(), s.dim())}; }

RatFun jet2_e(const Jet2Element& x) { return x.a; }

Jet1Element jet2_proj1(const Jet2Element& x) { return {x.a, x.w}; }

Jet11Element jet2_Delta(const Jet2Element& x, const DiffStructure& s) {
  return {x.a, x.w, x.w, jacobian(x.w, s) - x.eta};
}

Jet2Element jet2_from_jet11(const Jet11Element& x, const DiffStructure& s) {
  if (x.wl != x.wr) throw Error("tensor element is not in the image of the second jet ring");
  Jet2Element out{x.a, x.wl, jacobian(x.wl, s) - x.eta};
  jet2_require_member(out, s);
  return out;
}

Jet2Element jet2_symmetric_lift(const OmegaElement& w, const DiffStructure& s) {
  const std::size_t d = s.dim();
  const TwoForm dw = deRham_d1(w, s);
  Matrix eta(d, d);
  const RatFun half = Rational(1, 2);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (i != j) eta(i, j) = half * dw.at(i, j);
  return {RatFun(), w, eta};
}

Matrix jet2_gamma(const Jet2Element& x) {
  if (!x.a.is_zero()) throw NotInAugmentationIdeal();
  return outer(x.w, x.w);
}

Matrix jet2_sym2_value(const Jet2Element& x) {
  if (!x.a.is_zero() || !x.w.is_zero()) throw Error("element does not lie in Sym^2 Omega");
  if (!(x.eta == x.eta.transpose())) throw Error("element does not lie in Sym^2 Omega");
  return -x.eta;
}

}  // namespace diffalg
