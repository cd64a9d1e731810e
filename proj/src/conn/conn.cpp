#include "diffalg/conn.hpp"

#include <algorithm>

#include "diffalg/jet.hpp"

namespace diffalg {

bool same_structure(const StructurePtr& a, const StructurePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->p == b->p && a->q == b->q && a->full.base() == b->full.base() && a->full.basis() == b->full.basis() &&
         a->constant_variables == b->constant_variables;
}

namespace {

void require_same(const DiffModule& a, const DiffModule& b) {
  if (!same_structure(a.ps, b.ps)) throw StructureMismatch("modules over different structures");
}

Matrix apply_derivation(const DiffStructure& s, std::size_t i, const Matrix& m) {
  return m.map([&](const RatFun& x) { return s.apply(i, x); });
}

}  // namespace

DiffModule make_module(StructurePtr ps, std::vector<Matrix> conn) {
  if (!ps) throw StructureMismatch("module without a structure");
  if (conn.size() != ps->p)
    throw StructureMismatch("expected " + std::to_string(ps->p) + " connection matrices, got " +
                            std::to_string(conn.size()));
  const std::size_t n = ps->full.base().size();
  for (auto& a : conn) {
    if (!a.is_square() || a.rows() != conn.front().rows())
      throw StructureMismatch("connection matrices must be square of one size");
    a = a.map([n](const RatFun& x) { return x.nvars() == 0 ? x.promoted(n) : x; });
  }
  return DiffModule{std::move(ps), std::move(conn)};
}

DiffModule trivial_module(StructurePtr ps, std::size_t rank) {
  std::vector<Matrix> conn(ps->p, Matrix(rank, rank));
  return make_module(std::move(ps), std::move(conn));
}

IntegrabilityCheck check_integrability(const DiffModule& m) {
  const DiffStructure& s = m.ps->principal;
  IntegrabilityCheck out;
  for (std::size_t i = 0; i < m.conn.size(); ++i)
    for (std::size_t j = i + 1; j < m.conn.size(); ++j) {
      Matrix r = apply_derivation(s, i, m.conn[j]) - apply_derivation(s, j, m.conn[i]) -
                 commutator(m.conn[i], m.conn[j]);
      for (std::size_t q = 0; q < m.conn.size(); ++q)
        if (!s.c(i, j, q).is_zero()) r -= s.c(i, j, q) * m.conn[q];
      if (!r.is_zero()) {
        out.flat = false;
        out.i = i;
        out.j = j;
        out.witness = std::move(r);
        return out;
      }
    }
  return out;
}

DiffModule tensor(const DiffModule& a, const DiffModule& b) {
  require_same(a, b);
  std::vector<Matrix> conn;
  const Matrix ia = Matrix::identity(a.rank()), ib = Matrix::identity(b.rank());
  for (std::size_t i = 0; i < a.conn.size(); ++i) conn.push_back(kron(a.conn[i], ib) + kron(ia, b.conn[i]));
  return DiffModule{a.ps, std::move(conn)};
}

DiffModule dual(const DiffModule& a) {
  std::vector<Matrix> conn;
  for (const auto& x : a.conn) conn.push_back(-x.transpose());
  return DiffModule{a.ps, std::move(conn)};
}

DiffModule hom(const DiffModule& m, const DiffModule& n) {
  require_same(m, n);
  std::vector<Matrix> conn;
  const Matrix im = Matrix::identity(m.rank()), in = Matrix::identity(n.rank());
  for (std::size_t i = 0; i < m.conn.size(); ++i)
    conn.push_back(kron(n.conn[i], im) - kron(in, m.conn[i].transpose()));
  return DiffModule{m.ps, std::move(conn)};
}

DiffModule direct_sum(const DiffModule& a, const DiffModule& b) {
  require_same(a, b);
  std::vector<Matrix> conn;
  for (std::size_t i = 0; i < a.conn.size(); ++i) conn.push_back(diffalg::direct_sum(a.conn[i], b.conn[i]));
  return DiffModule{a.ps, std::move(conn)};
}

DiffModule extend_scalars(const DiffMorphism& phi, StructurePtr target, const DiffModule& m) {
  const ParamStructure& src = *m.ps;
  if (!(phi.source.base() == src.full.base()) || !(phi.source.basis() == src.full.basis()))
    throw MorphismInvalid("source structure differs from the module's structure");
  if (!(phi.target.base() == target->full.base()) || !(phi.target.basis() == target->full.basis()))
    throw MorphismInvalid("target structure differs from the requested structure");
  // An integrability failure of phi only shows up as curvature downstream.
  if (check_morphism(phi).kind == MorphismCheck::Kind::DCompatFail)
    throw MorphismInvalid("structure map is not compatible with d");
  for (std::size_t k = 0; k < target->p; ++k)
    for (std::size_t i = src.p; i < src.full.dim(); ++i)
      if (!phi.omega_matrix(k, i).is_zero())
        throw MorphismInvalid("a principal target derivation maps onto a parameter direction");
  std::vector<Matrix> mapped;
  for (const auto& a : m.conn) mapped.push_back(phi.map(a));
  std::vector<Matrix> conn;
  for (std::size_t k = 0; k < target->p; ++k) {
    Matrix a(m.rank(), m.rank());
    for (std::size_t i = 0; i < src.p; ++i)
      if (!phi.omega_matrix(k, i).is_zero()) a += phi.omega_matrix(k, i) * mapped[i];
    conn.push_back(std::move(a));
  }
  return make_module(std::move(target), std::move(conn));
}

MorphismResidual morphism_check(const Matrix& t, const DiffModule& src, const DiffModule& dst) {
  require_same(src, dst);
  if (t.rows() != dst.rank() || t.cols() != src.rank())
    throw StructureMismatch("morphism matrix must be " + std::to_string(dst.rank()) + "x" + std::to_string(src.rank()));
  const DiffStructure& s = src.ps->principal;
  MorphismResidual out;
  for (std::size_t i = 0; i < src.conn.size(); ++i) {
    Matrix r = apply_derivation(s, i, t) - (dst.conn[i] * t - t * src.conn[i]);
    if (!r.is_zero()) {
      out.ok = false;
      out.i = i;
      out.residual = std::move(r);
      return out;
    }
  }
  return out;
}

JetVector phi1(const DiffModule& m, std::size_t j) {
  const std::size_t r = m.rank();
  JetVector out{std::vector<RatFun>(r), {}};
  out.scalar.at(j) = 1;
  for (const auto& a : m.conn) out.omega.push_back(a.col(j));
  return out;
}

MembershipCheck phi2_membership(const DiffModule& m) {
  const DiffStructure& s = m.ps->principal;
  const std::size_t r = m.rank(), p = m.conn.size();
  // phi1(e_j) = sum_k Phi[k][j] (x) e_k with Phi[k][j] a first jet.
  std::vector<std::vector<Jet1Element>> phi(r, std::vector<Jet1Element>(r));
  for (std::size_t j = 0; j < r; ++j) {
    JetVector v = phi1(m, j);
    for (std::size_t k = 0; k < r; ++k) {
      OmegaElement w = OmegaElement::zero(p);
      for (std::size_t i = 0; i < p; ++i) w.coeffs[i] = v.omega[i][k];
      phi[k][j] = {v.scalar[k], std::move(w)};
    }
  }
  // defect[(i,k)] collects dw - (eta_ik - eta_ki) for each (l, j).
  std::vector<Matrix> defect(p * p, Matrix(r, r));
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t l = 0; l < r; ++l) {
      Jet11Element x = Jet11Element::zero(p);
      for (std::size_t k = 0; k < r; ++k) x = jet11_add(x, jet11_tensor(phi[k][j], phi[l][k], s));
      if (x.wl != x.wr) throw Error("first-jet tensor left the diagonal");
      // Re-read as (a, w, eta) with eta = D(w) - eta_L and test eta_ik - eta_ki = dw_ik.
      const TwoForm dw = deRham_d1(x.wl, s);
      for (std::size_t i = 0; i < p; ++i)
        for (std::size_t k = i + 1; k < p; ++k) {
          const RatFun eta_ik = s.apply(i, x.wl.coeffs[k]) - x.eta(i, k);
          const RatFun eta_ki = s.apply(k, x.wl.coeffs[i]) - x.eta(k, i);
          defect[i * p + k](l, j) = dw.at(i, k) - (eta_ik - eta_ki);
        }
    }
  MembershipCheck out;
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t k = i + 1; k < p; ++k)
      if (!defect[i * p + k].is_zero()) {
        out.ok = false;
        out.i = i;
        out.j = k;
        out.witness = defect[i * p + k];
        return out;
      }
  return out;
}

std::vector<std::vector<RatFun>> lambda(const DiffModule& m, const JetVector& x) {
  const DiffStructure& s = m.ps->full;
  if (x.scalar.size() != m.rank() || x.omega.size() != s.dim()) throw StructureMismatch("element of M (x) P1 has the wrong shape");
  std::vector<std::vector<RatFun>> out;
  for (std::size_t i = 0; i < m.ps->p; ++i) {
    std::vector<RatFun> ai = m.conn[i].apply(x.scalar);
    std::vector<RatFun> c(m.rank());
    for (std::size_t l = 0; l < m.rank(); ++l) c[l] = s.apply(i, x.scalar[l]) - ai[l] - x.omega[i][l];
    out.push_back(std::move(c));
  }
  return out;
}

bool constants_check(const RatFun& a, const ParamStructure& ps) {
  for (std::size_t i = 0; i < ps.p; ++i)
    if (!ps.full.apply(i, a).is_zero()) return false;
  return true;
}

namespace {

MultiPoly squarefree(const MultiPoly& f) {
  MultiPoly g = f;
  for (std::size_t v = 0; v < f.nvars(); ++v) {
    if (!g.depends_on(v)) continue;
    MultiPoly h = gcd(g, g.derivative(v));
    if (!h.is_constant()) g = divide_exact(g, h);
  }
  return g.monic();
}

bool depends_on_any(const MultiPoly& f, const std::vector<std::size_t>& vars) {
  for (auto v : vars)
    if (f.depends_on(v)) return true;
  return false;
}

}  // namespace

std::vector<MultiPoly> coprime_base(const std::vector<MultiPoly>& polys, const std::vector<std::size_t>& keep) {
  std::vector<MultiPoly> base;
  auto admit = [&](const MultiPoly& f) {
    return !f.is_zero() && !f.is_constant() && (keep.empty() || depends_on_any(f, keep));
  };
  for (const auto& f : polys)
    if (admit(f)) base.push_back(squarefree(f));
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t a = 0; a < base.size() && !changed; ++a)
      for (std::size_t b = a + 1; b < base.size() && !changed; ++b) {
        if (base[a] == base[b]) {
          base.erase(base.begin() + static_cast<std::ptrdiff_t>(b));
          changed = true;
          break;
        }
        MultiPoly g = gcd(base[a], base[b]);
        if (g.is_constant()) continue;
        std::vector<MultiPoly> parts{divide_exact(base[a], g), divide_exact(base[b], g), g};
        base.erase(base.begin() + static_cast<std::ptrdiff_t>(b));
        base.erase(base.begin() + static_cast<std::ptrdiff_t>(a));
        for (auto& f : parts)
          if (admit(f)) base.push_back(f.monic());
        changed = true;
      }
  }
  return base;
}

namespace {

// Monomials of total degree <= deg in the given variables, in ascending
// graded order.
std::vector<Exponents> monomials_up_to(std::size_t nvars, const std::vector<std::size_t>& vars, unsigned deg) {
  std::vector<Exponents> out{Exponents(nvars, 0)};
  std::vector<Exponents> layer = out;
  for (unsigned d = 1; d <= deg; ++d) {
    std::vector<Exponents> next;
    for (const auto& e : layer)
      for (std::size_t k = 0; k < vars.size(); ++k) {
        // extend only with variables at or after the last one used, to avoid duplicates
        bool ok = true;
        for (std::size_t later = k + 1; later < vars.size(); ++later)
          if (e[vars[later]] > 0) ok = false;
        if (!ok) continue;
        Exponents f = e;
        ++f[vars[k]];
        next.push_back(std::move(f));
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

MultiPoly lcm(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_constant()) return b;
  if (b.is_constant()) return a;
  return divide_exact(a * b, gcd(a, b)).monic();
}

}  // namespace

std::vector<std::vector<RatFun>> horizontal_space(const DiffModule& m, unsigned degree_bound) {
  const ParamStructure& ps = *m.ps;
  const std::size_t n = m.field().size(), r = m.rank();
  std::vector<std::size_t> principal_vars;
  for (std::size_t v = 0; v < n; ++v)
    if (std::find(ps.constant_variables.begin(), ps.constant_variables.end(), v) == ps.constant_variables.end())
      principal_vars.push_back(v);

  std::vector<MultiPoly> dens;
  for (const auto& a : m.conn)
    for (const auto& x : a.data()) dens.push_back(x.den());
  for (const auto& d : ps.principal.basis())
    for (const auto& c : d.coeffs) dens.push_back(c.den());
  MultiPoly denom = MultiPoly::constant(n, 1);
  for (const auto& f : coprime_base(dens, principal_vars)) denom *= f.pow(degree_bound);
  unsigned denom_degree = 0;
  for (const auto& t : denom.terms()) {
    unsigned dt = 0;
    for (auto v : principal_vars) dt += t.exp[v];
    denom_degree = std::max(denom_degree, dt);
  }
  const auto monos = monomials_up_to(n, principal_vars, degree_bound + denom_degree);
  const RatFun D(denom);

  // Unknown (alpha, c): coefficient of monos[alpha] / D in coordinate c.
  const std::size_t unknowns = monos.size() * r;
  std::vector<std::vector<RatFun>> residual(unknowns);  // per unknown: p*r components
  for (std::size_t alpha = 0; alpha < monos.size(); ++alpha) {
    const RatFun basis_fn = RatFun(MultiPoly::monomial(monos[alpha], 1)) / D;
    for (std::size_t c = 0; c < r; ++c) {
      auto& res = residual[alpha * r + c];
      for (std::size_t i = 0; i < ps.p; ++i) {
        const RatFun dv = ps.principal.apply(i, basis_fn);
        for (std::size_t l = 0; l < r; ++l) {
          RatFun e = -m.conn[i](l, c) * basis_fn;
          if (l == c) e += dv;
          res.push_back(std::move(e));
        }
      }
    }
  }

  // Clear denominators per equation, then split by principal monomials.
  std::map<std::pair<std::size_t, Exponents>, std::map<std::size_t, MultiPoly>> rows;
  const std::size_t components = ps.p * r;
  for (std::size_t comp = 0; comp < components; ++comp) {
    MultiPoly common = MultiPoly::constant(n, 1);
    for (std::size_t u = 0; u < unknowns; ++u)
      if (!residual[u][comp].is_zero()) common = lcm(common, residual[u][comp].den());
    const RatFun scale(common);
    for (std::size_t u = 0; u < unknowns; ++u) {
      if (residual[u][comp].is_zero()) continue;
      const RatFun cleared = residual[u][comp] * scale;
      if (!cleared.is_polynomial()) throw Error("horizontal solver: denominator clearing failed");
      const Rational inv = 1 / cleared.den().constant_value();
      for (const auto& t : cleared.num().terms()) {
        Exponents key(n, 0), rest = t.exp;
        for (auto v : principal_vars) {
          key[v] = t.exp[v];
          rest[v] = 0;
        }
        rows[{comp, key}][u] += MultiPoly::monomial(rest, t.coeff * inv);
      }
    }
  }
  Matrix system(rows.size(), unknowns);
  std::size_t row = 0;
  for (const auto& [key, entries] : rows) {
    for (const auto& [u, coeff] : entries) system(row, u) = RatFun(coeff);
    ++row;
  }
  std::vector<std::vector<RatFun>> out;
  for (const auto& sol : nullspace(system)) {
    std::vector<RatFun> v(r);
    for (std::size_t alpha = 0; alpha < monos.size(); ++alpha)
      for (std::size_t c = 0; c < r; ++c)
        if (!sol[alpha * r + c].is_zero())
          v[c] += sol[alpha * r + c] * RatFun(MultiPoly::monomial(monos[alpha], 1)) / D;
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace diffalg
