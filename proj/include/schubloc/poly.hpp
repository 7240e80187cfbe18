#ifndef SCHUBLOC_POLY_HPP
#define SCHUBLOC_POLY_HPP

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "errors.hpp"

namespace schubloc {

using Integer = mpz_class;
using Rational = mpq_class;
using Exponent = std::vector<unsigned>;

// Callers may build mpq values such as Rational(2, 4) that GMP leaves
// unreduced; every coefficient is canonicalized on entry.
inline Rational canonical(Rational q) {
  q.canonicalize();
  return q;
}

inline unsigned total_degree(const Exponent& e) {
  unsigned d = 0;
  for (unsigned x : e) d += x;
  return d;
}

/*
  Sparse polynomial in the simple-root symbols a1..ar with exact rational
  coefficients. Terms are kept in a std::map ordered lexicographically on the
  exponent vector (ascending), which is also the canonical output order. The
  last term is the leading term for division.
*/
class Polynomial {
 public:
  using Terms = std::map<Exponent, Rational>;

  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const Rational& c) {
    Polynomial p(nvars);
    p.add_term(Exponent(nvars, 0), c);
    return p;
  }

  static Polynomial one(std::size_t nvars) { return constant(nvars, 1); }

  static Polynomial variable(std::size_t nvars, std::size_t i) {
    if (i >= nvars) throw InvalidArgument("variable index " + std::to_string(i) + " out of range");
    Exponent e(nvars, 0);
    e[i] = 1;
    Polynomial p(nvars);
    p.add_term(std::move(e), 1);
    return p;
  }

  // Linear form sum_i coeffs[i] * a_{i+1}; used for roots.
  static Polynomial linear(std::span<const int> coeffs) {
    Polynomial p(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      if (coeffs[i] == 0) continue;
      Exponent e(coeffs.size(), 0);
      e[i] = 1;
      p.add_term(std::move(e), coeffs[i]);
    }
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t num_terms() const { return terms_.size(); }

  void add_term(Exponent e, const Rational& c) {
    if (e.size() != nvars_) throw RankMismatch("exponent length does not match polynomial rank");
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.try_emplace(std::move(e), canonical(c));
    if (!inserted) {
      it->second += canonical(c);
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  // Largest total degree; -1 for the zero polynomial.
  int degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(total_degree(e)));
    return d;
  }

  // Zero counts as homogeneous of every degree.
  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    unsigned d = total_degree(terms_.begin()->first);
    return std::all_of(terms_.begin(), terms_.end(),
                       [d](const auto& t) { return total_degree(t.first) == d; });
  }

  bool is_homogeneous_of_degree(int d) const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [d](const auto& t) { return static_cast<int>(total_degree(t.first)) == d; });
  }

  std::optional<Rational> constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0) return terms_.begin()->second;
    return std::nullopt;
  }

  Polynomial& operator+=(const Polynomial& o) {
    check_rank(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }

  Polynomial& operator-=(const Polynomial& o) {
    check_rank(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }

  Polynomial& operator*=(const Rational& s) {
    if (sgn(s) == 0) {
      terms_.clear();
      return *this;
    }
    const Rational f = canonical(s);
    for (auto& [e, c] : terms_) c *= f;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
  friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_rank(b);
    Polynomial r(a.nvars_);
    if (a.is_zero() || b.is_zero()) return r;
    Exponent e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    }
    return r;
  }

  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  void check_rank(const Polynomial& o) const {
    if (nvars_ != o.nvars_)
      throw RankMismatch("polynomial rank mismatch: " + std::to_string(nvars_) + " vs " +
                         std::to_string(o.nvars_));
  }

 private:
  std::size_t nvars_ = 0;
  Terms terms_;
};

// Univariate polynomial in the Peterson parameter t; coeffs[k] multiplies t^k.
class PolyT {
 public:
  PolyT() = default;
  explicit PolyT(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static PolyT monomial(const Rational& c, std::size_t power) {
    std::vector<Rational> v(power + 1);
    v[power] = c;
    return PolyT(std::move(v));
  }

  static PolyT constant(const Rational& c) { return monomial(c, 0); }

  const std::vector<Rational>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  Rational coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }

  // Lowest power with a nonzero coefficient; -1 for zero.
  int low_degree() const {
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
      if (sgn(coeffs_[k]) != 0) return static_cast<int>(k);
    return -1;
  }

  bool is_monomial() const { return !is_zero() && low_degree() == degree(); }

  bool is_homogeneous_of_degree(int d) const { return is_zero() || (is_monomial() && degree() == d); }

  bool is_nonnegative() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return sgn(c) >= 0; });
  }

  bool is_integral() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c.get_den() == 1; });
  }

  PolyT& operator+=(const PolyT& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    trim();
    return *this;
  }

  PolyT& operator-=(const PolyT& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    trim();
    return *this;
  }

  PolyT& operator*=(const Rational& s) {
    const Rational f = canonical(s);
    for (auto& c : coeffs_) c *= f;
    trim();
    return *this;
  }

  friend PolyT operator+(PolyT a, const PolyT& b) { return a += b; }
  friend PolyT operator-(PolyT a, const PolyT& b) { return a -= b; }
  friend PolyT operator*(PolyT a, const Rational& s) { return a *= s; }
  friend PolyT operator*(const Rational& s, PolyT a) { return a *= s; }

  friend PolyT operator*(const PolyT& a, const PolyT& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> r(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (sgn(a.coeffs_[i]) == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return PolyT(std::move(r));
  }

  PolyT& operator*=(const PolyT& o) { return *this = *this * o; }

  friend bool operator==(const PolyT& a, const PolyT& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void trim() {
    for (auto& c : coeffs_) c.canonicalize();
    while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
  }

  std::vector<Rational> coeffs_;
};

// Every simple-root symbol goes to t.
inline PolyT specialize_to_t(const Polynomial& p) {
  std::vector<Rational> v;
  for (const auto& [e, c] : p.terms()) {
    unsigned d = total_degree(e);
    if (v.size() <= d) v.resize(d + 1);
    v[d] += c;
  }
  return PolyT(std::move(v));
}

// Nonnegativity in the simple-root monomial basis; a certificate for Graham
// positivity.
inline bool is_graham_positive(const Polynomial& p) {
  return std::all_of(p.terms().begin(), p.terms().end(),
                     [](const auto& t) { return sgn(t.second) >= 0; });
}

inline bool is_integral(const Polynomial& p) {
  return std::all_of(p.terms().begin(), p.terms().end(),
                     [](const auto& t) { return t.second.get_den() == 1; });
}

template <class P>
struct NotDivisibleError : Error {
  NotDivisibleError(P rem, const std::string& what) : Error(what), remainder(std::move(rem)) {}
  P remainder;
};

using NotDivisible = NotDivisibleError<Polynomial>;
using NotDivisibleT = NotDivisibleError<PolyT>;

struct DivisionResult {
  Polynomial quotient;
  Polynomial remainder;
};

// Multivariate division by a single polynomial under lex order. For a single
// divisor the remainder is zero exactly when den divides num.
inline DivisionResult divide(const Polynomial& num, const Polynomial& den) {
  num.check_rank(den);
  if (den.is_zero()) throw DivisionByZero("division by the zero polynomial");
  const auto& [lead_e, lead_c] = *den.terms().rbegin();
  const std::size_t n = num.nvars();
  DivisionResult out{Polynomial(n), Polynomial(n)};
  Polynomial rem = num;
  Exponent q_e(n);
  while (!rem.is_zero()) {
    auto [e, c] = *rem.terms().rbegin();
    bool divisible = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (e[i] < lead_e[i]) {
        divisible = false;
        break;
      }
      q_e[i] = e[i] - lead_e[i];
    }
    if (!divisible) {
      out.remainder.add_term(e, c);
      rem.add_term(e, -c);
      continue;
    }
    Rational q_c = c / lead_c;
    Polynomial step(n);
    step.add_term(q_e, q_c);
    out.quotient += step;
    rem -= step * den;
  }
  return out;
}

inline Polynomial divide_exact(const Polynomial& num, const Polynomial& den) {
  auto r = divide(num, den);
  if (!r.remainder.is_zero()) throw NotDivisible(std::move(r.remainder), "polynomial is not divisible");
  return std::move(r.quotient);
}

inline PolyT divide_exact(const PolyT& num, const PolyT& den) {
  if (den.is_zero()) throw DivisionByZero("division by the zero polynomial");
  std::vector<Rational> rem = num.coeffs();
  const int dd = den.degree();
  const Rational& lead = den.coeffs().back();
  if (num.degree() < dd) {
    if (num.is_zero()) return {};
    throw NotDivisibleT(num, "polynomial in t is not divisible");
  }
  std::vector<Rational> q(num.degree() - dd + 1);
  for (int k = num.degree(); k >= dd; --k) {
    if (sgn(rem[k]) == 0) continue;
    Rational f = rem[k] / lead;
    q[k - dd] = f;
    for (int j = 0; j <= dd; ++j) rem[k - dd + j] -= f * den.coeffs()[j];
  }
  PolyT r(std::move(rem));
  if (!r.is_zero()) throw NotDivisibleT(std::move(r), "polynomial in t is not divisible");
  return PolyT(std::move(q));
}

// ---------------------------------------------------------------------------
// Canonical renderings.

inline std::string to_string(const Rational& q) { return q.get_str(); }

namespace detail {

inline std::string monomial_text(const Exponent& e) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += 'a' + std::to_string(i + 1);
    if (e[i] > 1) s += '^' + std::to_string(e[i]);
  }
  return s;
}

inline void append_term(std::string& out, const Rational& c, const std::string& mono) {
  bool neg = sgn(c) < 0;
  Rational a = abs(c);
  if (out.empty()) {
    if (neg) out += '-';
  } else {
    out += neg ? " - " : " + ";
  }
  if (mono.empty()) {
    out += to_string(a);
  } else if (a == 1) {
    out += mono;
  } else {
    out += to_string(a) + '*' + mono;
  }
}

inline nlohmann::json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

inline Integer integer_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
  if (j.is_string()) return Integer(j.get<std::string>());
  throw InvalidArgument("expected an integer in polynomial JSON");
}

inline Rational rational_from_json(const nlohmann::json& num, const nlohmann::json& den) {
  Integer d = integer_from_json(den);
  if (d == 0) throw InvalidArgument("zero denominator in polynomial JSON");
  Rational q(integer_from_json(num), d);
  q.canonicalize();
  return q;
}

}  // namespace detail

// "a1*a2 + a1^2": ascending lex order on exponent vectors.
inline std::string to_text(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [e, c] : p.terms()) detail::append_term(out, c, detail::monomial_text(e));
  return out;
}

// "2*t^1": ascending powers, the exponent is always written for t.
inline std::string to_text(const PolyT& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (std::size_t k = 0; k < p.coeffs().size(); ++k) {
    const Rational& c = p.coeffs()[k];
    if (sgn(c) == 0) continue;
    detail::append_term(out, c, k == 0 ? std::string() : "t^" + std::to_string(k));
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << to_text(p); }
inline std::ostream& operator<<(std::ostream& os, const PolyT& p) { return os << to_text(p); }

// [[exponent-vector, numerator, denominator], ...]
inline nlohmann::json to_json(const Polynomial& p) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [e, c] : p.terms())
    arr.push_back({e, detail::integer_json(c.get_num()), detail::integer_json(c.get_den())});
  return arr;
}

// [[power, numerator, denominator], ...]
inline nlohmann::json to_json(const PolyT& p) {
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t k = 0; k < p.coeffs().size(); ++k) {
    const Rational& c = p.coeffs()[k];
    if (sgn(c) == 0) continue;
    arr.push_back({k, detail::integer_json(c.get_num()), detail::integer_json(c.get_den())});
  }
  return arr;
}

inline Polynomial polynomial_from_json(const nlohmann::json& j, std::size_t nvars) {
  if (!j.is_array()) throw InvalidArgument("polynomial JSON must be an array");
  Polynomial p(nvars);
  for (const auto& term : j) {
    if (!term.is_array() || term.size() != 3 || !term[0].is_array())
      throw InvalidArgument("polynomial term must be [exponents, numerator, denominator]");
    Exponent e;
    for (const auto& x : term[0]) {
      if (!x.is_number_unsigned()) throw InvalidArgument("exponents must be nonnegative integers");
      e.push_back(x.get<unsigned>());
    }
    if (e.size() != nvars) throw RankMismatch("exponent vector length does not match rank");
    p.add_term(std::move(e), detail::rational_from_json(term[1], term[2]));
  }
  return p;
}

inline PolyT polyt_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw InvalidArgument("polynomial JSON must be an array");
  std::vector<Rational> v;
  for (const auto& term : j) {
    if (!term.is_array() || term.size() != 3 || !term[0].is_number_unsigned())
      throw InvalidArgument("t-polynomial term must be [power, numerator, denominator]");
    auto k = term[0].get<std::size_t>();
    if (v.size() <= k) v.resize(k + 1);
    v[k] += detail::rational_from_json(term[1], term[2]);
  }
  return PolyT(std::move(v));
}

}  // namespace schubloc

#endif  // SCHUBLOC_POLY_HPP
