#pragma once

// Differential structures on Q(v_1..v_N): a basis of derivations closed
// under the bracket, the module of differentials Omega (coordinates over the
// dual basis), the de Rham differential in degrees 0 and 1, Lie
// derivatives, and morphisms between such structures.

#include <optional>
#include <string>
#include <vector>

#include "diffalg/field.hpp"
#include "diffalg/matrix.hpp"

namespace diffalg {

/// sum_i coeffs[i] * d/dv_i.
struct Derivation {
  std::vector<RatFun> coeffs;

  RatFun apply(const RatFun& a) const;
  bool operator==(const Derivation&) const = default;
};

Derivation bracket(const Derivation& a, const Derivation& b);

class NotIndependent : public Error {
 public:
  NotIndependent() : Error("basis derivations are linearly dependent") {}
};

class NotClosed : public Error {
 public:
  NotClosed(std::size_t i, std::size_t j, Derivation witness)
      : Error("bracket of basis elements " + std::to_string(i) + " and " + std::to_string(j) +
              " leaves the span of the basis"),
        i_(i), j_(j), witness_(std::move(witness)) {}
  std::size_t i() const { return i_; }
  std::size_t j() const { return j_; }
  /// The bracket itself, which has no expression in the basis.
  const Derivation& witness() const { return witness_; }

 private:
  std::size_t i_, j_;
  Derivation witness_;
};

class NotCommuting : public Error {
 public:
  NotCommuting(std::size_t i, std::size_t j)
      : Error("basis derivations " + std::to_string(i) + " and " + std::to_string(j) + " do not commute") {}
};

class PrincipalMovesConstants : public Error {
 public:
  PrincipalMovesConstants(std::size_t i, const std::string& var)
      : Error("principal derivation " + std::to_string(i) + " does not annihilate constant '" + var + "'") {}
};

class DiffStructure {
 public:
  DiffStructure() = default;

  const FieldSpec& base() const { return base_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Derivation>& basis() const { return basis_; }
  const Derivation& basis(std::size_t i) const { return basis_.at(i); }
  /// c_{ij}^q with [delta_i, delta_j] = sum_q c_{ij}^q delta_q, for any i, j.
  const RatFun& c(std::size_t i, std::size_t j, std::size_t q) const { return constants_[(i * dim() + j) * dim() + q]; }
  bool commuting() const;

  /// delta_i(a)
  RatFun apply(std::size_t i, const RatFun& a) const { return basis_[i].apply(a); }
  /// Derivation with the given coordinates in the basis.
  Derivation combine(const std::vector<RatFun>& coords) const;
  /// Coordinates of a derivation in the basis, if it lies in the span.
  std::optional<std::vector<RatFun>> coordinates(const Derivation& x) const;

 private:
  friend DiffStructure build_structure(FieldSpec, std::vector<Derivation>);
  FieldSpec base_;
  std::vector<Derivation> basis_;
  std::vector<RatFun> constants_;
};

/// Throws NotIndependent or NotClosed.
DiffStructure build_structure(FieldSpec base, std::vector<Derivation> basis);

/// Coordinates over the dual basis omega_1..omega_d.
struct OmegaElement {
  std::vector<RatFun> coeffs;

  static OmegaElement zero(std::size_t d) { return {std::vector<RatFun>(d)}; }
  bool is_zero() const;
  OmegaElement& operator+=(const OmegaElement& o);
  OmegaElement& operator-=(const OmegaElement& o);
  friend OmegaElement operator+(OmegaElement a, const OmegaElement& b) { return a += b; }
  friend OmegaElement operator-(OmegaElement a, const OmegaElement& b) { return a -= b; }
  OmegaElement operator-() const;
  friend OmegaElement operator*(const RatFun& s, const OmegaElement& w);
  bool operator==(const OmegaElement&) const = default;
  /// Pairing with a derivation given in basis coordinates.
  RatFun pair(const std::vector<RatFun>& u) const;
};

/// Alternating 2-form, stored on pairs i < j (coefficient of omega_i ^ omega_j,
/// i.e. the value on (delta_i, delta_j)).
class TwoForm {
 public:
  TwoForm() = default;
  explicit TwoForm(std::size_t d) : d_(d), upper_(d * d) {}

  std::size_t dim() const { return d_; }
  /// Value on (delta_i, delta_j); antisymmetric, zero on the diagonal.
  RatFun at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, RatFun v);
  bool is_zero() const;

  TwoForm& operator+=(const TwoForm& o);
  TwoForm& operator-=(const TwoForm& o);
  friend TwoForm operator+(TwoForm a, const TwoForm& b) { return a += b; }
  friend TwoForm operator-(TwoForm a, const TwoForm& b) { return a -= b; }
  friend TwoForm operator*(const RatFun& s, const TwoForm& w);
  bool operator==(const TwoForm&) const = default;

 private:
  std::size_t d_ = 0;
  std::vector<RatFun> upper_;  // d*d, only i<j used
};

TwoForm wedge(const OmegaElement& a, const OmegaElement& b);

OmegaElement deRham_d0(const RatFun& a, const DiffStructure& s);
TwoForm deRham_d1(const OmegaElement& w, const DiffStructure& s);
/// L_{delta_k}(w).
OmegaElement lie_derivative(std::size_t k, const OmegaElement& w, const DiffStructure& s);
/// L_u(w) for u given in basis coordinates.
OmegaElement lie_derivative_general(const std::vector<RatFun>& u, const OmegaElement& w, const DiffStructure& s);

/// A morphism source -> target: v -> gen_images[v] on the base fields and
/// phi_*(omega_i) = column i of omega_matrix (d_target x d_source).
struct DiffMorphism {
  DiffStructure source;
  DiffStructure target;
  std::vector<RatFun> gen_images;
  Matrix omega_matrix;

  /// phi(a); throws DenominatorVanishes.
  RatFun map(const RatFun& a) const;
  Matrix map(const Matrix& m) const;
  /// phi_* of a source 1-form.
  OmegaElement push(const OmegaElement& w) const;
  /// D_phi(delta_k of the target) in source basis coordinates (over the target field).
  std::vector<RatFun> structure_map(std::size_t k) const;
};

DiffMorphism identity_morphism(const DiffStructure& s);
/// second after first.
DiffMorphism compose(const DiffMorphism& first, const DiffMorphism& second);

struct MorphismCheck {
  enum class Kind { Ok, DCompatFail, IntegrabilityFail };
  Kind kind = Kind::Ok;
  /// Source variable (DCompatFail) or source dual-basis index (IntegrabilityFail).
  std::size_t index = 0;
  OmegaElement dcompat_witness;
  TwoForm integrability_witness;

  bool ok() const { return kind == Kind::Ok; }
};

MorphismCheck check_morphism(const DiffMorphism& m);

struct ParamStructure {
  DiffStructure full;       // principal derivations first, then parameters
  DiffStructure principal;  // the principal derivations alone
  std::size_t p = 0;
  std::size_t q = 0;
  std::vector<std::size_t> constant_variables;
};

/// Throws NotCommuting, PrincipalMovesConstants, NotIndependent, UnknownVariable.
ParamStructure build_param_structure(const FieldSpec& base, std::vector<Derivation> principal,
                                     std::vector<Derivation> parameter,
                                     const std::vector<std::string>& constant_variables);

std::vector<std::string> render(const std::vector<RatFun>& v, const FieldSpec& field);
/// Upper-triangle entries (i<j) in row-major order.
std::vector<std::string> render(const TwoForm& w, const FieldSpec& field);

}  // namespace diffalg
