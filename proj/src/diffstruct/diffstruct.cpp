#include "diffalg/diffstruct.hpp"

#include <algorithm>

namespace diffalg {

RatFun Derivation::apply(const RatFun& a) const {
  RatFun out;
  for (std::size_t v = 0; v < coeffs.size(); ++v)
    if (!coeffs[v].is_zero()) out += coeffs[v] * a.derivative(v);
  return out;
}

Derivation bracket(const Derivation& a, const Derivation& b) {
  if (a.coeffs.size() != b.coeffs.size()) throw FieldMismatch("bracket of derivations over different fields");
  Derivation out{std::vector<RatFun>(a.coeffs.size())};
  for (std::size_t k = 0; k < a.coeffs.size(); ++k) out.coeffs[k] = a.apply(b.coeffs[k]) - b.apply(a.coeffs[k]);
  return out;
}

namespace {

Matrix coefficient_matrix(const std::vector<Derivation>& basis, std::size_t n) {
  Matrix m(n, basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].coeffs.size() != n) throw FieldMismatch("derivation has the wrong number of coefficients");
    for (std::size_t v = 0; v < n; ++v) m(v, i) = basis[i].coeffs[v];
  }
  return m;
}

}  // namespace

bool DiffStructure::commuting() const {
  return std::all_of(constants_.begin(), constants_.end(), [](const RatFun& x) { return x.is_zero(); });
}

Derivation DiffStructure::combine(const std::vector<RatFun>& coords) const {
  Derivation out{std::vector<RatFun>(base_.size())};
  for (std::size_t i = 0; i < dim(); ++i) {
    if (coords.at(i).is_zero()) continue;
    for (std::size_t v = 0; v < base_.size(); ++v) out.coeffs[v] += coords[i] * basis_[i].coeffs[v];
  }
  return out;
}

std::optional<std::vector<RatFun>> DiffStructure::coordinates(const Derivation& x) const {
  return solve(coefficient_matrix(basis_, base_.size()), x.coeffs);
}

DiffStructure build_structure(FieldSpec base, std::vector<Derivation> basis) {
  if (basis.empty()) throw Error("a differential structure needs at least one derivation");
  for (auto& b : basis)
    for (auto& c : b.coeffs) c = c.promoted(c.nvars() == 0 ? base.size() : c.nvars());
  const std::size_t d = basis.size();
  const Matrix coeffs = coefficient_matrix(basis, base.size());
  if (rank(coeffs) != d) throw NotIndependent();

  DiffStructure s;
  s.base_ = std::move(base);
  s.basis_ = std::move(basis);
  s.constants_.assign(d * d * d, RatFun());
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      Derivation br = bracket(s.basis_[i], s.basis_[j]);
      auto coords = solve(coeffs, br.coeffs);
      if (!coords) throw NotClosed(i, j, br);
      for (std::size_t q = 0; q < d; ++q) {
        s.constants_[(i * d + j) * d + q] = (*coords)[q];
        s.constants_[(j * d + i) * d + q] = -(*coords)[q];
      }
    }
  return s;
}

bool OmegaElement::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const RatFun& x) { return x.is_zero(); });
}

OmegaElement& OmegaElement::operator+=(const OmegaElement& o) {
  if (coeffs.size() != o.coeffs.size()) throw StructureMismatch("1-forms of different rank");
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
  return *this;
}

OmegaElement& OmegaElement::operator-=(const OmegaElement& o) { return *this += -o; }

OmegaElement OmegaElement::operator-() const {
  OmegaElement out = *this;
  for (auto& c : out.coeffs) c = -c;
  return out;
}

OmegaElement operator*(const RatFun& s, const OmegaElement& w) {
  OmegaElement out = w;
  for (auto& c : out.coeffs) c *= s;
  return out;
}

RatFun OmegaElement::pair(const std::vector<RatFun>& u) const {
  if (u.size() != coeffs.size()) throw StructureMismatch("pairing with a derivation of the wrong rank");
  RatFun out;
  for (std::size_t i = 0; i < coeffs.size(); ++i) out += coeffs[i] * u[i];
  return out;
}

RatFun TwoForm::at(std::size_t i, std::size_t j) const {
  if (i == j) return RatFun();
  return i < j ? upper_[i * d_ + j] : -upper_[j * d_ + i];
}

void TwoForm::set(std::size_t i, std::size_t j, RatFun v) {
  if (i == j) throw StructureMismatch("2-forms vanish on the diagonal");
  if (i < j) {
    upper_[i * d_ + j] = std::move(v);
  } else {
    upper_[j * d_ + i] = -v;
  }
}

bool TwoForm::is_zero() const {
  return std::all_of(upper_.begin(), upper_.end(), [](const RatFun& x) { return x.is_zero(); });
}

TwoForm& TwoForm::operator+=(const TwoForm& o) {
  if (d_ != o.d_) throw StructureMismatch("2-forms of different rank");
  for (std::size_t k = 0; k < upper_.size(); ++k) upper_[k] += o.upper_[k];
  return *this;
}

TwoForm& TwoForm::operator-=(const TwoForm& o) {
  if (d_ != o.d_) throw StructureMismatch("2-forms of different rank");
  for (std::size_t k = 0; k < upper_.size(); ++k) upper_[k] -= o.upper_[k];
  return *this;
}

TwoForm operator*(const RatFun& s, const TwoForm& w) {
  TwoForm out = w;
  for (auto& c : out.upper_) c *= s;
  return out;
}

TwoForm wedge(const OmegaElement& a, const OmegaElement& b) {
  const std::size_t d = a.coeffs.size();
  if (b.coeffs.size() != d) throw StructureMismatch("wedge of 1-forms of different rank");
  TwoForm out(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) out.set(i, j, a.coeffs[i] * b.coeffs[j] - a.coeffs[j] * b.coeffs[i]);
  return out;
}

OmegaElement deRham_d0(const RatFun& a, const DiffStructure& s) {
  OmegaElement out = OmegaElement::zero(s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i) out.coeffs[i] = s.apply(i, a);
  return out;
}

TwoForm deRham_d1(const OmegaElement& w, const DiffStructure& s) {
  const std::size_t d = s.dim();
  if (w.coeffs.size() != d) throw StructureMismatch("1-form does not match the structure");
  TwoForm out(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      RatFun v = s.apply(i, w.coeffs[j]) - s.apply(j, w.coeffs[i]);
      for (std::size_t q = 0; q < d; ++q)
        if (!s.c(i, j, q).is_zero()) v -= s.c(i, j, q) * w.coeffs[q];
      out.set(i, j, std::move(v));
    }
  return out;
}

OmegaElement lie_derivative_general(const std::vector<RatFun>& u, const OmegaElement& w, const DiffStructure& s) {
  // Cartan: L_u = d i_u + i_u d.
  OmegaElement out = deRham_d0(w.pair(u), s);
  const TwoForm dw = deRham_d1(w, s);
  for (std::size_t j = 0; j < s.dim(); ++j)
    for (std::size_t i = 0; i < s.dim(); ++i)
      if (!u[i].is_zero()) out.coeffs[j] += u[i] * dw.at(i, j);
  return out;
}

OmegaElement lie_derivative(std::size_t k, const OmegaElement& w, const DiffStructure& s) {
  std::vector<RatFun> u(s.dim());
  u.at(k) = 1;
  return lie_derivative_general(u, w, s);
}

RatFun DiffMorphism::map(const RatFun& a) const { return a.substitute(gen_images, target.base().size()); }

Matrix DiffMorphism::map(const Matrix& m) const {
  return m.map([this](const RatFun& a) { return map(a); });
}

OmegaElement DiffMorphism::push(const OmegaElement& w) const {
  if (w.coeffs.size() != source.dim()) throw StructureMismatch("1-form does not match the source structure");
  OmegaElement out = OmegaElement::zero(target.dim());
  for (std::size_t i = 0; i < source.dim(); ++i) {
    if (w.coeffs[i].is_zero()) continue;
    const RatFun c = map(w.coeffs[i]);
    for (std::size_t k = 0; k < target.dim(); ++k) out.coeffs[k] += c * omega_matrix(k, i);
  }
  return out;
}

std::vector<RatFun> DiffMorphism::structure_map(std::size_t k) const {
  std::vector<RatFun> out(source.dim());
  for (std::size_t i = 0; i < source.dim(); ++i) out[i] = omega_matrix(k, i);
  return out;
}

DiffMorphism identity_morphism(const DiffStructure& s) {
  DiffMorphism m{s, s, {}, Matrix::identity(s.dim())};
  for (std::size_t v = 0; v < s.base().size(); ++v) m.gen_images.push_back(RatFun::variable(s.base().size(), v));
  return m;
}

DiffMorphism compose(const DiffMorphism& first, const DiffMorphism& second) {
  if (!(first.target.base() == second.source.base()) || first.target.dim() != second.source.dim())
    throw StructureMismatch("morphisms are not composable");
  DiffMorphism out{first.source, second.target, {}, {}};
  for (const auto& img : first.gen_images) out.gen_images.push_back(second.map(img));
  out.omega_matrix = second.omega_matrix * second.map(first.omega_matrix);
  return out;
}

MorphismCheck check_morphism(const DiffMorphism& m) {
  const DiffStructure& S = m.source;
  const DiffStructure& T = m.target;
  if (m.gen_images.size() != S.base().size()) throw StructureMismatch("morphism needs one image per source variable");
  if (m.omega_matrix.rows() != T.dim() || m.omega_matrix.cols() != S.dim())
    throw StructureMismatch("omega matrix must be d_target x d_source");

  MorphismCheck result;
  for (std::size_t v = 0; v < S.base().size(); ++v) {
    const RatFun var = RatFun::variable(S.base().size(), v);
    OmegaElement diff = deRham_d0(m.map(var), T) - m.push(deRham_d0(var, S));
    if (!diff.is_zero()) {
      result.kind = MorphismCheck::Kind::DCompatFail;
      result.index = v;
      result.dcompat_witness = std::move(diff);
      return result;
    }
  }

  std::vector<OmegaElement> images;
  for (std::size_t i = 0; i < S.dim(); ++i) images.push_back(OmegaElement{m.omega_matrix.col(i)});
  for (std::size_t i = 0; i < S.dim(); ++i) {
    // d(omega_i) = -sum_{j<k} c_{jk}^i omega_j ^ omega_k
    TwoForm rhs(T.dim());
    for (std::size_t j = 0; j < S.dim(); ++j)
      for (std::size_t k = j + 1; k < S.dim(); ++k)
        if (!S.c(j, k, i).is_zero()) rhs -= m.map(S.c(j, k, i)) * wedge(images[j], images[k]);
    TwoForm diff = deRham_d1(images[i], T) - rhs;
    if (!diff.is_zero()) {
      result.kind = MorphismCheck::Kind::IntegrabilityFail;
      result.index = i;
      result.integrability_witness = std::move(diff);
      return result;
    }
  }
  return result;
}

ParamStructure build_param_structure(const FieldSpec& base, std::vector<Derivation> principal,
                                     std::vector<Derivation> parameter,
                                     const std::vector<std::string>& constant_variables) {
  ParamStructure ps;
  ps.p = principal.size();
  ps.q = parameter.size();
  for (const auto& name : constant_variables) ps.constant_variables.push_back(base.index_of(name));
  std::vector<Derivation> all = principal;
  all.insert(all.end(), parameter.begin(), parameter.end());
  try {
    ps.full = build_structure(base, std::move(all));
  } catch (const NotClosed& e) {
    throw NotCommuting(e.i(), e.j());
  }
  for (std::size_t i = 0; i < ps.full.dim(); ++i)
    for (std::size_t j = i + 1; j < ps.full.dim(); ++j)
      for (std::size_t q = 0; q < ps.full.dim(); ++q)
        if (!ps.full.c(i, j, q).is_zero()) throw NotCommuting(i, j);
  for (std::size_t i = 0; i < ps.p; ++i)
    for (std::size_t v : ps.constant_variables)
      if (!ps.full.apply(i, RatFun::variable(base.size(), v)).is_zero())
        throw PrincipalMovesConstants(i, base.name(v));
  if (ps.p > 0) ps.principal = build_structure(base, std::move(principal));
  return ps;
}

std::vector<std::string> render(const std::vector<RatFun>& v, const FieldSpec& field) {
  std::vector<std::string> out;
  for (const auto& x : v) out.push_back(to_string(x.promoted(x.nvars() == 0 ? field.size() : x.nvars()), field));
  return out;
}

std::vector<std::string> render(const TwoForm& w, const FieldSpec& field) {
  std::vector<RatFun> flat;
  for (std::size_t i = 0; i < w.dim(); ++i)
    for (std::size_t j = i + 1; j < w.dim(); ++j) flat.push_back(w.at(i, j));
  return render(flat, field);
}

}  // namespace diffalg
