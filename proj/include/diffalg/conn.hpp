#pragma once

// Differential modules over (K, D_{K/k}) given by connection matrices.
//
// Convention: delta_i(e-bar) = -e-bar . A_i, so a coordinate vector v is
// horizontal iff delta_i(v) = A_i v, and the matrix of nabla_{delta_i} on
// coordinates is v -> delta_i(v) - A_i v.  A morphism M -> N is an n x m
// matrix T whose column j is the image of e_j; it commutes with the
// connections iff delta_i(T) = A_i^N T - T A_i^M.

#include <memory>
#include <optional>

#include "diffalg/diffstruct.hpp"

namespace diffalg {

class NotFlat : public Error {
 public:
  NotFlat() : Error("module is not integrable") {}
};

class MorphismInvalid : public Error {
 public:
  explicit MorphismInvalid(const std::string& what) : Error("invalid morphism: " + what) {}
};

using StructurePtr = std::shared_ptr<const ParamStructure>;

bool same_structure(const StructurePtr& a, const StructurePtr& b);

struct DiffModule {
  StructurePtr ps;
  std::vector<Matrix> conn;  // one per principal derivation

  std::size_t rank() const { return conn.empty() ? 0 : conn.front().rows(); }
  const FieldSpec& field() const { return ps->full.base(); }
  /// Matrix of nabla_{delta_i} acting on e-bar from the right (= -A_i).
  Matrix nabla_matrix(std::size_t i) const { return -conn.at(i); }
  bool operator==(const DiffModule& o) const { return same_structure(ps, o.ps) && conn == o.conn; }
};

/// Validates shapes (p square matrices of one size).  Throws StructureMismatch.
DiffModule make_module(StructurePtr ps, std::vector<Matrix> conn);
DiffModule trivial_module(StructurePtr ps, std::size_t rank);

struct IntegrabilityCheck {
  bool flat = true;
  std::size_t i = 0, j = 0;
  Matrix witness;  // the curvature residual at (i, j)
};

/// Residual delta_i(A_j) - delta_j(A_i) - [A_i, A_j] - sum_q c_ij^q A_q; first nonzero pair i < j.
IntegrabilityCheck check_integrability(const DiffModule& m);

DiffModule tensor(const DiffModule& a, const DiffModule& b);
DiffModule dual(const DiffModule& a);
/// Hom(M, N) on n x m matrices, vectorized row-major: Psi(r, c) sits at r * m + c.
DiffModule hom(const DiffModule& m, const DiffModule& n);
DiffModule direct_sum(const DiffModule& a, const DiffModule& b);

/// Transport of a module along a morphism of structures phi: source -> target
/// (the full structures of the two parameterized structures).  Throws
/// MorphismInvalid when the structure map is incompatible with d, DenominatorVanishes.
DiffModule extend_scalars(const DiffMorphism& phi, StructurePtr target, const DiffModule& m);

struct ModMorphism {
  DiffModule src;
  DiffModule dst;
  Matrix t;
};

struct MorphismResidual {
  bool ok = true;
  std::size_t i = 0;
  Matrix residual;  // delta_i(T) - (A_i^N T - T A_i^M)
};

MorphismResidual morphism_check(const Matrix& t, const DiffModule& src, const DiffModule& dst);
inline MorphismResidual morphism_check(const ModMorphism& f) { return morphism_check(f.t, f.src, f.dst); }

/// Element of P^1 (x) M, or of M (x) P^1, in split coordinates: a scalar
/// coordinate vector and one coordinate vector per basis 1-form.
struct JetVector {
  std::vector<RatFun> scalar;
  std::vector<std::vector<RatFun>> omega;
  bool operator==(const JetVector&) const = default;
};

/// 1 (x) e_j - nabla(e_j) in P^1 (x) M, over the principal structure.
JetVector phi1(const DiffModule& m, std::size_t j);

struct MembershipCheck {
  bool ok = true;
  std::size_t i = 0, j = 0;
  Matrix witness;  // defect (dw - [eta]) at (i, j), entry (l, c) for the e_l-coefficient of basis vector c
};

/// Whether (id (x) phi1)(phi1(e_j)) lies in P^2 (x) M for every j, computed
/// in P^1 (x)_K P^1 through first-jet tensors.
MembershipCheck phi2_membership(const DiffModule& m);

/// lambda: M (x) P^1_K -> Omega_{K/k} (x) M, with `x.omega` indexed by the full
/// basis; component i is delta_i(s) - A_i s - w_i.
std::vector<std::vector<RatFun>> lambda(const DiffModule& m, const JetVector& x);

/// Horizontal vectors with entries N / D, D the coprime base of the
/// connection denominators raised to `degree_bound`, N polynomial in the
/// non-constant variables of degree <= degree_bound + deg D.  Returns a basis
/// over k = Q(constant variables) of the solutions of that shape.
std::vector<std::vector<RatFun>> horizontal_space(const DiffModule& m, unsigned degree_bound);

bool constants_check(const RatFun& a, const ParamStructure& ps);

/// Pairwise coprime, squarefree polynomials whose products generate the same
/// radical as the inputs (factors free of `keep` variables are dropped when
/// `keep` is nonempty).
std::vector<MultiPoly> coprime_base(const std::vector<MultiPoly>& polys, const std::vector<std::size_t>& keep = {});

}  // namespace diffalg
