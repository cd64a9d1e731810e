#include <algorithm>
#include <numeric>

#include "diffalg/field.hpp"

namespace diffalg {

namespace {

struct GrlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const { return grlex_greater(a, b); }
};

std::uint32_t total(const Exponents& e) { return std::accumulate(e.begin(), e.end(), std::uint32_t{0}); }

// Brings two operands to a common variable count, promoting unbound constants.
std::size_t common_nvars(const MultiPoly& a, const MultiPoly& b) {
  if (a.nvars() == b.nvars()) return a.nvars();
  if (a.nvars() == 0) return b.nvars();
  if (b.nvars() == 0) return a.nvars();
  throw FieldMismatch("polynomials over " + std::to_string(a.nvars()) + " and " + std::to_string(b.nvars()) +
                      " variables");
}

}  // namespace

bool grlex_greater(const Exponents& a, const Exponents& b) {
  auto ta = total(a);
  auto tb = total(b);
  if (ta != tb) return ta > tb;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

MultiPoly MultiPoly::constant(std::size_t nvars, const Rational& c) {
  MultiPoly p(nvars);
  if (c != 0) p.terms_.push_back({Exponents(nvars, 0), c});
  return p;
}

MultiPoly MultiPoly::variable(std::size_t nvars, std::size_t index) {
  Exponents e(nvars, 0);
  e.at(index) = 1;
  return monomial(std::move(e), 1);
}

MultiPoly MultiPoly::monomial(Exponents exp, const Rational& c) {
  MultiPoly p(exp.size());
  if (c != 0) p.terms_.push_back({std::move(exp), c});
  return p;
}

MultiPoly MultiPoly::from_terms(std::size_t nvars, std::vector<Term> terms) {
  std::map<Exponents, Rational, GrlexGreater> acc;
  for (auto& t : terms) {
    if (t.exp.size() != nvars) throw FieldMismatch("term arity does not match polynomial");
    acc[t.exp] += t.coeff;
  }
  MultiPoly p(nvars);
  for (auto& [e, c] : acc)
    if (c != 0) p.terms_.push_back({e, c});
  return p;
}

bool MultiPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  return total(terms_.front().exp) == 0;
}

Rational MultiPoly::constant_value() const {
  if (terms_.empty()) return 0;
  return terms_.front().coeff;
}

std::uint32_t MultiPoly::degree(std::size_t var) const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.exp[var]);
  return d;
}

std::uint32_t MultiPoly::total_degree() const { return terms_.empty() ? 0 : total(terms_.front().exp); }

bool MultiPoly::depends_on(std::size_t var) const {
  if (var >= nvars_) return false;
  return std::any_of(terms_.begin(), terms_.end(), [var](const Term& t) { return t.exp[var] > 0; });
}

std::optional<std::size_t> MultiPoly::first_variable() const {
  for (std::size_t v = 0; v < nvars_; ++v)
    if (depends_on(v)) return v;
  return std::nullopt;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

MultiPoly MultiPoly::promoted(std::size_t nvars) const {
  if (nvars == nvars_) return *this;
  if (nvars_ != 0) throw FieldMismatch("cannot promote a bound polynomial");
  return constant(nvars, constant_value());
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
  const std::size_t n = common_nvars(*this, other);
  if (nvars_ != n) *this = promoted(n);
  const MultiPoly& rhs = other.nvars() == n ? other : other.promoted(n);
  if (rhs.terms_.empty()) return *this;
  std::vector<Term> out;
  out.reserve(terms_.size() + rhs.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < rhs.terms_.size()) {
    const auto& a = terms_[i];
    const auto& b = rhs.terms_[j];
    if (a.exp == b.exp) {
      Rational c = a.coeff + b.coeff;
      if (c != 0) out.push_back({a.exp, c});
      ++i;
      ++j;
    } else if (grlex_greater(a.exp, b.exp)) {
      out.push_back(a);
      ++i;
    } else {
      out.push_back(b);
      ++j;
    }
  }
  for (; i < terms_.size(); ++i) out.push_back(terms_[i]);
  for (; j < rhs.terms_.size(); ++j) out.push_back(rhs.terms_[j]);
  terms_ = std::move(out);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& other) { return *this += -other; }

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  const std::size_t n = common_nvars(a, b);
  if (a.is_zero() || b.is_zero()) return MultiPoly(n);
  if (a.is_constant() && a.nvars() != n) return b * a.constant_value();
  if (b.is_constant() && b.nvars() != n) return a * b.constant_value();
  std::map<Exponents, Rational, GrlexGreater> acc;
  Exponents e(n);
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      for (std::size_t v = 0; v < n; ++v) e[v] = ta.exp[v] + tb.exp[v];
      auto [it, inserted] = acc.try_emplace(e, ta.coeff * tb.coeff);
      if (!inserted) it->second += ta.coeff * tb.coeff;
    }
  }
  MultiPoly r(n);
  r.terms_.reserve(acc.size());
  for (auto& [ex, c] : acc)
    if (c != 0) r.terms_.push_back({ex, c});
  return r;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& other) { return *this = *this * other; }

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  if (a.nvars_ != b.nvars_) {
    if (a.nvars_ != 0 && b.nvars_ != 0) return false;
    return a.is_constant() && b.is_constant() && a.constant_value() == b.constant_value();
  }
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].exp != b.terms_[i].exp || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  return true;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly result = constant(nvars_, 1);
  MultiPoly base = *this;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base *= base;
  }
  return result;
}

MultiPoly MultiPoly::derivative(std::size_t var) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.exp[var] == 0) continue;
    Term d = t;
    d.coeff *= t.exp[var];
    d.exp[var] -= 1;
    out.push_back(std::move(d));
  }
  return from_terms(nvars_, std::move(out));
}

MultiPoly MultiPoly::monic() const {
  if (terms_.empty()) return *this;
  MultiPoly r = *this;
  Rational inv = 1 / terms_.front().coeff;
  r *= inv;
  return r;
}

std::map<std::uint32_t, MultiPoly> MultiPoly::coefficients_in(std::size_t var) const {
  std::map<std::uint32_t, std::vector<Term>> buckets;
  for (const auto& t : terms_) {
    Term s = t;
    s.exp[var] = 0;
    buckets[t.exp[var]].push_back(std::move(s));
  }
  std::map<std::uint32_t, MultiPoly> out;
  for (auto& [d, ts] : buckets) out.emplace(d, from_terms(nvars_, std::move(ts)));
  return out;
}

MultiPoly MultiPoly::from_coefficients(std::size_t nvars, std::size_t var,
                                       const std::map<std::uint32_t, MultiPoly>& coeffs) {
  std::vector<Term> out;
  for (const auto& [d, c] : coeffs) {
    for (const auto& t : c.promoted(nvars).terms()) {
      Term s = t;
      s.exp[var] += d;
      out.push_back(std::move(s));
    }
  }
  return from_terms(nvars, std::move(out));
}

MultiPoly MultiPoly::substitute(const std::vector<MultiPoly>& images, std::size_t target_nvars) const {
  if (nvars_ != 0 && images.size() != nvars_)
    throw FieldMismatch("substitution needs one image per variable");
  MultiPoly result(target_nvars);
  // Cache powers of each image; exponents are small in practice.
  std::vector<std::vector<MultiPoly>> powers(images.size());
  for (const auto& t : terms_) {
    MultiPoly term = constant(target_nvars, t.coeff);
    for (std::size_t v = 0; v < t.exp.size(); ++v) {
      const std::uint32_t e = t.exp[v];
      if (e == 0) continue;
      auto& cache = powers[v];
      if (cache.empty()) cache.push_back(constant(target_nvars, 1));
      while (cache.size() <= e) cache.push_back(cache.back() * images[v].promoted(target_nvars));
      term *= cache[e];
    }
    result += term;
  }
  return result;
}

std::optional<MultiPoly> try_divide(const MultiPoly& a, const MultiPoly& b) {
  if (b.is_zero()) throw DivisionByZero();
  const std::size_t n = common_nvars(a, b);
  MultiPoly rem = a.promoted(n);
  const MultiPoly divisor = b.promoted(n);
  if (divisor.is_constant()) return rem * (1 / divisor.constant_value());
  for (std::size_t v = 0; v < n; ++v)
    if (divisor.degree(v) > rem.degree(v)) return std::nullopt;
  const auto& lead = divisor.leading();
  const auto& dterms = divisor.terms();
  std::vector<MultiPoly::Term> quotient;
  std::vector<MultiPoly::Term> cur = rem.terms(), next;
  Exponents shifted(n);
  // rem -= c x^e * divisor as one ordered merge (monomial shifts keep grlex order).
  while (!cur.empty()) {
    const auto& lt = cur.front();
    Exponents e(n);
    for (std::size_t v = 0; v < n; ++v) {
      if (lt.exp[v] < lead.exp[v]) return std::nullopt;
      e[v] = lt.exp[v] - lead.exp[v];
    }
    const Rational c = lt.coeff / lead.coeff;
    next.clear();
    next.reserve(cur.size() + dterms.size());
    std::size_t i = 1, j = 1;  // leading terms cancel
    while (i < cur.size() || j < dterms.size()) {
      if (j < dterms.size())
        for (std::size_t v = 0; v < n; ++v) shifted[v] = dterms[j].exp[v] + e[v];
      if (j >= dterms.size() || (i < cur.size() && grlex_greater(cur[i].exp, shifted))) {
        next.push_back(std::move(cur[i++]));
      } else if (i >= cur.size() || shifted != cur[i].exp) {
        next.push_back({shifted, -(c * dterms[j++].coeff)});
      } else {
        Rational d = cur[i].coeff - c * dterms[j++].coeff;
        if (d != 0) next.push_back({std::move(cur[i].exp), std::move(d)});
        ++i;
      }
    }
    quotient.push_back({std::move(e), c});
    std::swap(cur, next);
  }
  return MultiPoly::from_terms(n, std::move(quotient));
}

MultiPoly divide_exact(const MultiPoly& a, const MultiPoly& b) {
  auto q = try_divide(a, b);
  if (!q) throw Error("inexact polynomial division");
  return *std::move(q);
}

}  // namespace diffalg
