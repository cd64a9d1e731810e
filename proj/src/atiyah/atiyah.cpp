#include "diffalg/atiyah.hpp"

#include <map>

namespace diffalg {

namespace {

Matrix derive(const DiffStructure& s, std::size_t i, const Matrix& m) {
  return m.map([&](const RatFun& x) { return s.apply(i, x); });
}

void require_flat(const DiffModule& m) {
  if (!check_integrability(m).flat) throw NotFlat();
}

}  // namespace

Matrix prolongation_block(const DiffStructure& full, std::size_t p, const std::vector<Matrix>& conn, std::size_t i,
                          std::size_t j) {
  const std::size_t t = p + j;
  Matrix b = -derive(full, t, conn.at(i));
  for (std::size_t q = 0; q < full.dim(); ++q) {
    const RatFun& c = full.c(i, t, q);
    if (c.is_zero()) continue;
    if (q >= p) throw StructureMismatch("bracket of a principal and a parameter derivation leaves the principal span");
    b -= c * conn[q];
  }
  return b;
}

Matrix ProlongedModule::block(std::size_t i, std::size_t j) const {
  return core.conn.at(i).block((j + 1) * parent_rank, 0, parent_rank, parent_rank);
}

DiffModule parameter_forms(const DiffModule& m) {
  std::vector<Matrix> conn;
  for (const auto& a : m.conn) {
    Matrix d(m.rank() * m.ps->q, m.rank() * m.ps->q);
    for (std::size_t j = 0; j < m.ps->q; ++j) d.set_block(j * m.rank(), j * m.rank(), a);
    conn.push_back(std::move(d));
  }
  return make_module(m.ps, std::move(conn));
}

ProlongedModule prolong_module(const DiffModule& m) {
  require_flat(m);
  const std::size_t r = m.rank(), q = m.ps->q, n = r * (1 + q);
  std::vector<Matrix> conn;
  for (std::size_t i = 0; i < m.ps->p; ++i) {
    Matrix a(n, n);
    for (std::size_t s = 0; s <= q; ++s) a.set_block(s * r, s * r, m.conn[i]);
    for (std::size_t j = 0; j < q; ++j)
      a.set_block((j + 1) * r, 0, prolongation_block(m.ps->full, m.ps->p, m.conn, i, j));
    conn.push_back(std::move(a));
  }
  Matrix incl(n, r * q), proj(r, n);
  incl.set_block(r, 0, Matrix::identity(r * q));
  proj.set_block(0, 0, Matrix::identity(r));
  return ProlongedModule{make_module(m.ps, std::move(conn)), r, q, std::move(incl), std::move(proj)};
}

ModMorphism prolong_morphism(const ModMorphism& f) {
  if (!morphism_check(f).ok) throw MorphismInvalid("matrix does not commute with the connections");
  const ParamStructure& ps = *f.src.ps;
  const std::size_t q = ps.q, m = f.t.cols(), n = f.t.rows();
  Matrix t(n * (1 + q), m * (1 + q));
  for (std::size_t s = 0; s <= q; ++s) t.set_block(s * n, s * m, f.t);
  for (std::size_t j = 0; j < q; ++j) t.set_block((j + 1) * n, 0, -derive(ps.full, ps.p + j, f.t));
  return ModMorphism{prolong_module(f.src).core, prolong_module(f.dst).core, std::move(t)};
}

At2Module at2_module(const DiffModule& m) {
  const ProlongedModule once = prolong_module(m);
  const ProlongedModule twice = prolong_module(once.core);
  const std::size_t r = m.rank(), q = m.ps->q, slots = 1 + q, n = r * slots * slots;
  auto index = [&](std::size_t s, std::size_t t, std::size_t e) { return (s * slots + t) * r + e; };

  Matrix sigma(n, n);
  for (std::size_t s = 0; s < slots; ++s)
    for (std::size_t t = 0; t < slots; ++t)
      for (std::size_t e = 0; e < r; ++e) sigma(index(t, s, e), index(s, t, e)) = 1;

  // Invariant basis: (0,0); (0,j)+(j,0); (i,j)+(j,i) for 1 <= i <= j.
  std::vector<std::pair<std::size_t, std::size_t>> pairs{{0, 0}};
  for (std::size_t j = 1; j < slots; ++j) pairs.emplace_back(0, j);
  for (std::size_t i = 1; i < slots; ++i)
    for (std::size_t j = i; j < slots; ++j) pairs.emplace_back(i, j);
  Matrix incl(n, pairs.size() * r);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto [s, t] = pairs[k];
    for (std::size_t e = 0; e < r; ++e) {
      incl(index(s, t, e), k * r + e) = 1;
      incl(index(t, s, e), k * r + e) = 1;
    }
  }
  const Matrix left = inverse(incl.transpose() * incl) * incl.transpose();

  std::vector<Matrix> conn;
  for (const auto& a : twice.core.conn) {
    const Matrix image = a * incl;
    Matrix c = left * image;
    if (!(image - incl * c).is_zero()) throw RestrictionFails();
    conn.push_back(std::move(c));
  }
  return At2Module{make_module(m.ps, std::move(conn)), twice.core, std::move(sigma), std::move(incl)};
}

Extension make_extension(const DiffModule& quotient, const DiffModule& sub, const std::vector<Matrix>& off) {
  if (!same_structure(quotient.ps, sub.ps)) throw StructureMismatch("extension of modules over different structures");
  if (off.size() != quotient.conn.size()) throw ShapeMismatch("one off-diagonal block per principal derivation");
  const std::size_t a = quotient.rank(), b = sub.rank();
  std::vector<Matrix> conn;
  for (std::size_t i = 0; i < off.size(); ++i) {
    if (off[i].rows() != b || off[i].cols() != a) throw ShapeMismatch("off-diagonal block must be sub x quotient");
    Matrix c(a + b, a + b);
    c.set_block(0, 0, quotient.conn[i]);
    c.set_block(a, a, sub.conn[i]);
    c.set_block(a, 0, off[i]);
    conn.push_back(std::move(c));
  }
  return Extension{make_module(quotient.ps, std::move(conn)), a, b};
}

std::vector<Matrix> off_blocks(const Extension& e) {
  std::vector<Matrix> out;
  for (const auto& c : e.module.conn) out.push_back(c.block(e.quotient_rank, 0, e.sub_rank, e.quotient_rank));
  return out;
}

Extension baer_sum(const Extension& a, const Extension& b) {
  if (a.quotient_rank != b.quotient_rank || a.sub_rank != b.sub_rank) throw ShapeMismatch("ranks differ");
  if (!same_structure(a.module.ps, b.module.ps)) throw StructureMismatch("extensions over different structures");
  const std::size_t qr = a.quotient_rank, sr = a.sub_rank;
  std::vector<Matrix> sum;
  for (std::size_t i = 0; i < a.module.conn.size(); ++i) {
    const Matrix &x = a.module.conn[i], &y = b.module.conn[i];
    if (!(x.block(0, 0, qr, qr) == y.block(0, 0, qr, qr)) || !(x.block(qr, qr, sr, sr) == y.block(qr, qr, sr, sr)))
      throw ShapeMismatch("sub or quotient connections differ");
    if (!x.block(0, qr, qr, sr).is_zero() || !y.block(0, qr, qr, sr).is_zero())
      throw ShapeMismatch("extension is not block lower triangular");
    Matrix c = x;
    c.set_block(qr, 0, x.block(qr, 0, sr, qr) + y.block(qr, 0, sr, qr));
    sum.push_back(std::move(c));
  }
  return Extension{make_module(a.module.ps, std::move(sum)), qr, sr};
}

bool check_tensor_compat(const DiffModule& m, const DiffModule& n) {
  const ProlongedModule pm = prolong_module(m), pn = prolong_module(n), pt = prolong_module(tensor(m, n));
  const Matrix im = Matrix::identity(m.rank()), in = Matrix::identity(n.rank());
  for (std::size_t i = 0; i < m.ps->p; ++i)
    for (std::size_t j = 0; j < m.ps->q; ++j)
      if (!(pt.block(i, j) == kron(pm.block(i, j), in) + kron(im, pn.block(i, j)))) return false;
  return true;
}

Closure generate_closure(const DiffModule& m, const ClosureLimits& limits) {
  require_flat(m);
  Closure out;
  auto admit = [&](std::string label, DiffModule mod, unsigned prolongations) {
    if (mod.rank() > limits.rank_cap || out.entries.size() >= limits.max_entries) {
      out.truncated = true;
      return;
    }
    for (const auto& e : out.entries)
      if (e.module.conn == mod.conn) return;
    out.entries.push_back({std::move(label), std::move(mod), prolongations});
  };
  admit("M", m, 0);
  for (unsigned round = 0; round < limits.max_rounds; ++round) {
    const std::size_t known = out.entries.size();
    for (std::size_t a = 0; a < known; ++a) {
      const ClosureEntry x = out.entries[a];
      admit("dual(" + x.label + ")", dual(x.module), x.prolongations);
      if (x.prolongations < limits.depth && x.module.ps->q > 0) {
        if (x.module.rank() * (1 + x.module.ps->q) > limits.rank_cap)
          out.truncated = true;
        else
          admit("At1(" + x.label + ")", prolong_module(x.module).core, x.prolongations + 1);
      }
      for (std::size_t b = a; b < known; ++b) {
        const ClosureEntry y = out.entries[b];
        const unsigned depth = std::max(x.prolongations, y.prolongations);
        if (x.module.rank() * y.module.rank() > limits.rank_cap)
          out.truncated = true;
        else
          admit("tensor(" + x.label + "," + y.label + ")", tensor(x.module, y.module), depth);
        if (x.module.rank() + y.module.rank() > limits.rank_cap)
          out.truncated = true;
        else
          admit("sum(" + x.label + "," + y.label + ")", direct_sum(x.module, y.module), depth);
      }
    }
  }
  return out;
}

}  // namespace diffalg
