#pragma once

// First and second jet rings of a differential structure.
//
// P^1 = R + Omega with Omega . Omega = 0.  P^1 (x)_R P^1 is free as a left
// R-module on 1(x)1, w_i(x)1, 1(x)w_k, w_i(x)w_k; a Jet11Element stores the
// coordinates in that basis, all scalars moved to the left with
// 1 (x) c.g = c (1 (x) g) + dc (x) g.
//
// A Jet2Element (a, w, eta) stands for a(x)1 + 1(x)w + w(x)1 - eta with
// eta = sum eta_ik w_i (x) w_k.  It is a member of P^2 when the
// antisymmetric part of eta is dw.

#include "diffalg/diffstruct.hpp"

namespace diffalg {

class MembershipViolated : public Error {
 public:
  MembershipViolated(std::size_t i, std::size_t j)
      : Error("eta_ij - eta_ji differs from dw at (" + std::to_string(i) + ", " + std::to_string(j) + ")") {}
};

class NotInAugmentationIdeal : public Error {
 public:
  NotInAugmentationIdeal() : Error("element has nonzero scalar part") {}
};

struct Jet1Element {
  RatFun a;
  OmegaElement w;

  bool operator==(const Jet1Element&) const = default;
};

Jet1Element jet1_add(const Jet1Element& x, const Jet1Element& y);
Jet1Element jet1_mul(const Jet1Element& x, const Jet1Element& y);
Jet1Element jet1_l(const RatFun& a, const DiffStructure& s);
Jet1Element jet1_r(const RatFun& a, const DiffStructure& s);
RatFun jet1_e(const Jet1Element& x);
/// a + w -> a - w, in the coordinates of the interchanged splitting.
Jet1Element jet1_antipode(const Jet1Element& x);

struct Jet11Element {
  RatFun a;
  OmegaElement wl;  // coefficients of w_i (x) 1
  OmegaElement wr;  // coefficients of 1 (x) w_k
  Matrix eta;       // coefficients of w_i (x) w_k

  static Jet11Element zero(std::size_t d);
  bool operator==(const Jet11Element&) const = default;
};

Jet11Element jet11_add(const Jet11Element& x, const Jet11Element& y);
Jet11Element jet11_sub(const Jet11Element& x, const Jet11Element& y);
/// Left multiplication by a scalar.
Jet11Element jet11_scale(const RatFun& c, const Jet11Element& x);
Jet11Element jet11_mul(const Jet11Element& x, const Jet11Element& y);
/// x (x)_R y for first-jet elements, rewritten into the left canonical form.
Jet11Element jet11_tensor(const Jet1Element& x, const Jet1Element& y, const DiffStructure& s);
/// (e . id): x (x) y -> e(x) y
Jet1Element jet11_e_left(const Jet11Element& x);
/// (id . e): x (x) y -> x e(y)
Jet1Element jet11_e_right(const Jet11Element& x);

struct Jet2Element {
  RatFun a;
  OmegaElement w;
  Matrix eta;

  bool operator==(const Jet2Element&) const = default;
};

bool jet2_is_member(const Jet2Element& x, const DiffStructure& s);
/// Throws MembershipViolated with the first offending pair.
void jet2_require_member(const Jet2Element& x, const DiffStructure& s);

Jet2Element jet2_zero(std::size_t d);
Jet2Element jet2_add(const Jet2Element& x, const Jet2Element& y);
Jet2Element jet2_sub(const Jet2Element& x, const Jet2Element& y);
Jet2Element jet2_mul(const Jet2Element& x, const Jet2Element& y, const DiffStructure& s);
Jet2Element jet2_l(const RatFun& a, const DiffStructure& s);
Jet2Element jet2_r(const RatFun& a, const DiffStructure& s);
RatFun jet2_e(const Jet2Element& x);
Jet1Element jet2_proj1(const Jet2Element& x);
Jet11Element jet2_Delta(const Jet2Element& x, const DiffStructure& s);
/// Inverse of jet2_Delta on its image; throws MembershipViolated otherwise.
Jet2Element jet2_from_jet11(const Jet11Element& x, const DiffStructure& s);

/// 1(x)w + w(x)1 - lift(dw), lift being the half-antisymmetric section.
Jet2Element jet2_symmetric_lift(const OmegaElement& w, const DiffStructure& s);
/// Divided square: the matrix w_i w_j.  Throws NotInAugmentationIdeal.
Matrix jet2_gamma(const Jet2Element& x);
/// Value in Sym^2 Omega of an element with a = 0, w = 0 (requires symmetric eta).
Matrix jet2_sym2_value(const Jet2Element& x);

}  // namespace diffalg
