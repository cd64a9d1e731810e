#include <algorithm>

#include "diffalg/field.hpp"

namespace diffalg {

FieldSpec::FieldSpec(std::vector<std::string> variables) : variables_(std::move(variables)) {
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (variables_[i].empty()) throw Error("empty variable name");
    for (std::size_t j = 0; j < i; ++j)
      if (variables_[i] == variables_[j]) throw Error("duplicate variable name '" + variables_[i] + "'");
  }
}

std::optional<std::size_t> FieldSpec::find(std::string_view name) const {
  for (std::size_t i = 0; i < variables_.size(); ++i)
    if (variables_[i] == name) return i;
  return std::nullopt;
}

std::size_t FieldSpec::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw UnknownVariable(std::string(name));
}

RatFun::RatFun(long value) : num_(MultiPoly::constant(0, value)) {}

RatFun::RatFun(const Rational& value) : num_(MultiPoly::constant(0, value)) {}

RatFun::RatFun(MultiPoly num) : num_(std::move(num)), den_(MultiPoly::constant(num_.nvars(), 1)) {}

RatFun::RatFun(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DivisionByZero();
  normalize();
}

RatFun RatFun::variable(std::size_t nvars, std::size_t index) { return RatFun(MultiPoly::variable(nvars, index)); }

RatFun RatFun::constant(std::size_t nvars, const Rational& c) { return RatFun(MultiPoly::constant(nvars, c)); }

void RatFun::normalize() {
  const std::size_t n = std::max(num_.nvars(), den_.nvars());
  if (num_.nvars() != n) num_ = num_.promoted(n);
  if (den_.nvars() != n) den_ = den_.promoted(n);
  if (num_.is_zero()) {
    den_ = MultiPoly::constant(n, 1);
    return;
  }
  if (!den_.is_constant()) {
    MultiPoly g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = divide_exact(num_, g);
      den_ = divide_exact(den_, g);
    }
  }
  const Rational lc = den_.leading().coeff;
  if (lc != 1) {
    Rational inv = 1 / lc;
    num_ *= inv;
    den_ *= inv;
  }
}

void RatFun::normalize_against(const MultiPoly& factor) {
  if (num_.is_zero()) {
    den_ = MultiPoly::constant(num_.nvars(), 1);
    return;
  }
  if (!factor.is_constant()) {
    MultiPoly g = gcd(num_, factor);
    if (!g.is_constant()) {
      num_ = divide_exact(num_, g);
      den_ = divide_exact(den_, g);
    }
  }
  const Rational lc = den_.leading().coeff;
  if (lc != 1) {
    Rational inv = 1 / lc;
    num_ *= inv;
    den_ *= inv;
  }
}

RatFun RatFun::promoted(std::size_t nvars) const {
  RatFun r;
  r.num_ = num_.promoted(nvars);
  r.den_ = den_.promoted(nvars);
  return r;
}

RatFun RatFun::operator-() const {
  RatFun r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFun& RatFun::operator+=(const RatFun& other) {
  if (other.is_zero()) return *this;
  if (is_zero()) return *this = (nvars() == 0 || other.nvars() != 0) ? other : other.promoted(nvars());
  if (den_ == other.den_) {
    num_ += other.num_;
    normalize();
    return *this;
  }
  MultiPoly g = gcd(den_, other.den_);
  MultiPoly a = divide_exact(den_, g);
  MultiPoly b = divide_exact(other.den_, g);
  num_ = num_ * b + other.num_ * a;
  den_ = den_ * b;
  // a and b are coprime to each other and to the new numerator.
  normalize_against(g);
  return *this;
}

RatFun& RatFun::operator-=(const RatFun& other) { return *this += -other; }

RatFun& RatFun::operator*=(const RatFun& other) {
  if (is_zero() || other.is_zero()) {
    const std::size_t n = std::max(nvars(), other.nvars());
    num_ = MultiPoly(n);
    den_ = MultiPoly::constant(n, 1);
    return *this;
  }
  MultiPoly g1 = gcd(num_, other.den_);
  MultiPoly g2 = gcd(other.num_, den_);
  MultiPoly n = divide_exact(num_, g1) * divide_exact(other.num_, g2);
  MultiPoly d = divide_exact(den_, g2) * divide_exact(other.den_, g1);
  num_ = std::move(n);
  den_ = std::move(d);
  const Rational lc = den_.leading().coeff;
  if (lc != 1) {
    Rational inv = 1 / lc;
    num_ *= inv;
    den_ *= inv;
  }
  return *this;
}

RatFun& RatFun::operator/=(const RatFun& other) { return *this *= other.inverse(); }

RatFun RatFun::inverse() const {
  if (is_zero()) throw DivisionByZero();
  return RatFun(den_, num_);
}

RatFun RatFun::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  RatFun r;
  r.num_ = num_.pow(static_cast<unsigned>(e));
  r.den_ = den_.pow(static_cast<unsigned>(e));
  return r;
}

RatFun RatFun::derivative(std::size_t var) const {
  if (nvars() == 0) return RatFun();
  if (var >= nvars()) throw FieldMismatch("derivative by a variable outside the field");
  MultiPoly dn = num_.derivative(var);
  if (den_.is_constant()) return RatFun(dn, den_);
  MultiPoly dd = den_.derivative(var);
  return RatFun(dn * den_ - num_ * dd, den_ * den_);
}

RatFun RatFun::substitute(const std::vector<RatFun>& images, std::size_t target_nvars) const {
  if (nvars() == 0) return RatFun::constant(target_nvars, num_.constant_value());
  if (images.size() != nvars()) throw FieldMismatch("substitution needs one image per variable");
  // Evaluate numerator and denominator over a common denominator of the images.
  auto eval = [&](const MultiPoly& p) {
    RatFun acc = RatFun::constant(target_nvars, 0);
    for (const auto& t : p.terms()) {
      RatFun term = RatFun::constant(target_nvars, t.coeff);
      for (std::size_t v = 0; v < t.exp.size(); ++v)
        if (t.exp[v] > 0) term *= images[v].pow(static_cast<int>(t.exp[v]));
      acc += term;
    }
    return acc;
  };
  RatFun d = eval(den_);
  if (d.is_zero()) throw DenominatorVanishes("denominator maps to zero under the substitution");
  return eval(num_) / d;
}

RatFun ratfun_arith(ArithOp op, const RatFun& x, const RatFun& y) {
  switch (op) {
    case ArithOp::Add:
      return x + y;
    case ArithOp::Sub:
      return x - y;
    case ArithOp::Mul:
      return x * y;
    case ArithOp::Div:
      if (y.is_zero()) throw DivisionByZero();
      return x / y;
  }
  throw Error("unknown arithmetic operation");
}

RatFun partial_derivative(const RatFun& x, const FieldSpec& field, std::string_view var) {
  return x.derivative(field.index_of(var));
}

RatFun substitute(const RatFun& x, const FieldSpec& source, const std::map<std::string, RatFun>& assignment,
                  const FieldSpec& target) {
  for (const auto& [name, _] : assignment) source.index_of(name);
  std::vector<RatFun> images;
  images.reserve(source.size());
  for (std::size_t v = 0; v < source.size(); ++v) {
    auto it = assignment.find(source.name(v));
    if (it != assignment.end()) {
      images.push_back(it->second.promoted(it->second.nvars() == 0 ? target.size() : it->second.nvars()));
      continue;
    }
    if (x.num().depends_on(v) || x.den().depends_on(v))
      throw Error("substitution does not assign variable '" + source.name(v) + "'");
    images.push_back(RatFun::constant(target.size(), 0));
  }
  return x.promoted(x.nvars() == 0 ? source.size() : x.nvars()).substitute(images, target.size());
}

}  // namespace diffalg
