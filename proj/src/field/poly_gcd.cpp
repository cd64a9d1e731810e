// Multivariate gcd over Q.
//
// First attempt: the heuristic gcd of Char, Geddes and Gonnet.  Both inputs
// are scaled to primitive integer polynomials, one variable at a time is
// evaluated at a large integer xi, the gcd of the images is computed
// recursively, and a candidate is rebuilt from the xi-adic digits of the
// image gcd.  A candidate is accepted only after it divides both inputs.
//
// Fallback: content / primitive-part recursion where the main variable is
// the first FieldSpec variable present in either operand, and the
// primitive parts are combined through the subresultant remainder sequence.

#include <algorithm>

#include "diffalg/field.hpp"

namespace diffalg {

namespace {

MultiPoly gcd_impl(const MultiPoly& a, const MultiPoly& b, bool heuristic);

MultiPoly leading_coeff_in(const MultiPoly& p, std::size_t var) {
  auto coeffs = p.coefficients_in(var);
  return coeffs.rbegin()->second;
}

MultiPoly content_in(const MultiPoly& p, std::size_t var) {
  MultiPoly g(p.nvars());
  for (const auto& [d, c] : p.coefficients_in(var)) {
    g = gcd(g, c);
    if (g.is_constant() && !g.is_zero()) break;
  }
  return g;
}

MultiPoly primitive_part_in(const MultiPoly& p, std::size_t var) {
  if (p.is_zero()) return p;
  return divide_exact(p, content_in(p, var));
}

MultiPoly var_power(std::size_t nvars, std::size_t var, std::uint32_t e) {
  Exponents ex(nvars, 0);
  ex[var] = e;
  return MultiPoly::monomial(std::move(ex), 1);
}

// Last nonzero element of the subresultant sequence of a and b in `var`
// (deg a >= deg b > 0), up to a factor from the coefficient ring.
MultiPoly subresultant_gcd(MultiPoly a, MultiPoly b, std::size_t var) {
  const std::size_t n = a.nvars();
  MultiPoly g = MultiPoly::constant(n, 1);
  MultiPoly h = MultiPoly::constant(n, 1);
  while (true) {
    const std::uint32_t delta = a.degree(var) - b.degree(var);
    MultiPoly r = pseudo_remainder(a, b, var);
    if (r.is_zero()) return b;
    if (r.degree(var) == 0) return MultiPoly::constant(n, 1);
    a = std::move(b);
    b = divide_exact(r, g * h.pow(delta));
    g = leading_coeff_in(a, var);
    if (delta == 0) {
      // h unchanged
    } else if (delta == 1) {
      h = g;
    } else {
      h = divide_exact(g.pow(delta), h.pow(delta - 1));
    }
  }
}

using Integer = mpz_class;

// Scales p by a rational so that its coefficients are coprime integers.
MultiPoly integer_primitive(const MultiPoly& p) {
  Integer den = 1, content = 0;
  for (const auto& t : p.terms()) den = lcm(den, Integer(t.coeff.get_den()));
  for (const auto& t : p.terms()) content = gcd(content, Integer(t.coeff.get_num() * (den / t.coeff.get_den())));
  Rational scale(den, content);
  scale.canonicalize();
  return p * scale;
}

Integer max_norm(const MultiPoly& p) {
  Integer m = 0;
  for (const auto& t : p.terms()) m = std::max(m, Integer(abs(t.coeff.get_num())));
  return m;
}

MultiPoly evaluate_at(const MultiPoly& p, std::size_t var, const Integer& xi) {
  std::vector<MultiPoly::Term> terms;
  terms.reserve(p.terms().size());
  for (const auto& t : p.terms()) {
    Integer scale;
    mpz_pow_ui(scale.get_mpz_t(), xi.get_mpz_t(), t.exp[var]);
    MultiPoly::Term s{t.exp, t.coeff * scale};
    s.exp[var] = 0;
    terms.push_back(std::move(s));
  }
  return MultiPoly::from_terms(p.nvars(), std::move(terms));
}

// Inverse of evaluate_at for a polynomial whose coefficients are small
// compared to xi: each integer coefficient is split into symmetric xi-adic
// digits, digit i becoming the coefficient of var^i.
MultiPoly interpolate_at(const MultiPoly& h, std::size_t var, const Integer& xi) {
  std::vector<MultiPoly::Term> terms;
  const Integer half = xi / 2;
  for (const auto& t : h.terms()) {
    Integer c = t.coeff.get_num();
    std::uint32_t i = 0;
    while (c != 0) {
      Integer g = c % xi;
      if (g > half) g -= xi;
      if (g < -half) g += xi;
      if (g != 0) {
        Exponents e = t.exp;
        e[var] = i;
        terms.push_back({std::move(e), Rational(g)});
      }
      c = (c - g) / xi;
      ++i;
    }
  }
  return MultiPoly::from_terms(h.nvars(), std::move(terms));
}

Integer integer_content(const MultiPoly& p) {
  Integer c = 0;
  for (const auto& t : p.terms()) c = gcd(c, Integer(t.coeff.get_num()));
  return c;
}

// Integer gcd (up to sign) of nonzero integer polynomials, or nullopt when
// the heuristic gives up.
std::optional<MultiPoly> heuristic_gcd(const MultiPoly& a_in, const MultiPoly& b_in, int depth) {
  const Integer ca = integer_content(a_in);
  const Integer cb = integer_content(b_in);
  const Rational content = Rational(gcd(ca, cb));
  const MultiPoly a = a_in * Rational(1 / Rational(ca));
  const MultiPoly b = b_in * Rational(1 / Rational(cb));
  std::optional<std::size_t> var;
  for (std::size_t v = a.nvars(); v-- > 0;)
    if (a.depends_on(v) || b.depends_on(v)) {
      var = v;
      break;
    }
  if (!var) return MultiPoly::constant(a.nvars(), content);
  if (depth > 12) return std::nullopt;
  Integer xi = 2 * std::min(max_norm(a), max_norm(b)) + 29;
  for (int attempt = 0; attempt < 4; ++attempt) {
    MultiPoly ea = evaluate_at(a, *var, xi);
    MultiPoly eb = evaluate_at(b, *var, xi);
    if (!ea.is_zero() && !eb.is_zero()) {
      if (auto h = heuristic_gcd(ea, eb, depth + 1)) {
        MultiPoly g = interpolate_at(*h, *var, xi);
        if (!g.is_zero()) {
          g = integer_primitive(g);
          if (try_divide(a, g) && try_divide(b, g)) return g * content;
        }
      }
    }
    xi = xi * 73794 / 27011;
  }
  return std::nullopt;
}

}  // namespace

MultiPoly pseudo_remainder(const MultiPoly& a, const MultiPoly& b, std::size_t var) {
  if (b.is_zero()) throw DivisionByZero();
  const std::uint32_t db = b.degree(var);
  if (a.degree(var) < db) return a;
  const std::uint32_t steps = a.degree(var) - db + 1;
  const MultiPoly lb = leading_coeff_in(b, var);
  MultiPoly r = a;
  std::uint32_t done = 0;
  while (!r.is_zero() && r.degree(var) >= db) {
    const std::uint32_t dr = r.degree(var);
    MultiPoly lr = leading_coeff_in(r, var);
    r = lb * r - lr * var_power(r.nvars(), var, dr - db) * b;
    ++done;
  }
  if (done < steps) r *= lb.pow(steps - done);
  return r;
}

MultiPoly gcd(const MultiPoly& a, const MultiPoly& b) { return gcd_impl(a, b, true); }

MultiPoly gcd_prs(const MultiPoly& a, const MultiPoly& b) { return gcd_impl(a, b, false); }

namespace {

MultiPoly gcd_impl(const MultiPoly& a_in, const MultiPoly& b_in, bool heuristic) {
  std::size_t n = std::max(a_in.nvars(), b_in.nvars());
  MultiPoly a = a_in.promoted(a_in.nvars() == 0 ? n : a_in.nvars());
  MultiPoly b = b_in.promoted(b_in.nvars() == 0 ? n : b_in.nvars());
  if (a.nvars() != b.nvars()) throw FieldMismatch("gcd of polynomials over different fields");
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return MultiPoly::constant(n, 1);
  if (a.terms().size() <= b.terms().size()) {
    if (try_divide(b, a)) return a.monic();
  } else if (try_divide(a, b)) {
    return b.monic();
  }

  if (heuristic)
    if (auto h = heuristic_gcd(integer_primitive(a), integer_primitive(b), 0)) return h->monic();

  auto va = a.first_variable();
  auto vb = b.first_variable();
  const std::size_t var = std::min(*va, *vb);
  if (!a.depends_on(var)) return gcd_impl(a, content_in(b, var), heuristic);
  if (!b.depends_on(var)) return gcd_impl(content_in(a, var), b, heuristic);

  MultiPoly ca = content_in(a, var);
  MultiPoly cb = content_in(b, var);
  MultiPoly c = gcd_impl(ca, cb, heuristic);
  MultiPoly pa = divide_exact(a, ca);
  MultiPoly pb = divide_exact(b, cb);
  if (pa.degree(var) < pb.degree(var)) std::swap(pa, pb);
  MultiPoly g = primitive_part_in(subresultant_gcd(pa, pb, var), var);
  return (c * g).monic();
}

}  // namespace

}  // namespace diffalg
