#ifndef SCHUBLOC_GKM_HPP
#define SCHUBLOC_GKM_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "errors.hpp"
#include "parallel.hpp"
#include "poly.hpp"
#include "rootsys.hpp"

namespace schubloc {

inline Polynomial root_polynomial(const RootSystem& rs, int root_idx) {
  return Polynomial::linear(rs.root(root_idx).coeffs);
}

/*
  Billey's formula. With word = (i_1, ..., i_m) a reduced word for w, sum over
  the subwords that are reduced words of v of the product of the roots
  r(j) = s_{i_1} ... s_{i_{j-1}}(alpha_{i_j}).

  The subword sum is run as a dynamic program over partial products; a partial
  product x survives only while it is a prefix of v in right weak order, which
  is exactly the condition for extending it to a reduced word of v.
*/
inline Polynomial billey_restriction(const WeylGroup& g, std::size_t v, std::span<const int> word) {
  const RootSystem& rs = g.root_system();
  const std::size_t n = rs.rank();

  std::size_t w = g.identity();
  for (int i : word) {
    if (i < 0 || i >= rs.rank()) throw InvalidArgument("simple reflection index out of range");
    std::size_t y = g.right_mul(w, i);
    if (g.length(y) != g.length(w) + 1) throw InvalidArgument("word is not reduced");
    w = y;
  }
  if (g.length(v) > g.length(w)) return Polynomial(n);

  // Prefixes of v: strip right descents.
  std::vector<char> prefix(g.size(), 0);
  std::vector<std::size_t> stack{v};
  prefix[v] = 1;
  while (!stack.empty()) {
    std::size_t x = stack.back();
    stack.pop_back();
    for (int i = 0; i < rs.rank(); ++i) {
      std::size_t y = g.right_mul(x, i);
      if (g.length(y) < g.length(x) && !prefix[y]) {
        prefix[y] = 1;
        stack.push_back(y);
      }
    }
  }

  std::map<std::size_t, Polynomial> states;
  states.emplace(g.identity(), Polynomial::one(n));
  std::size_t partial_w = g.identity();
  for (int i : word) {
    Polynomial r = root_polynomial(rs, g.element(partial_w).act(rs.simple_index(i)));
    std::vector<std::pair<std::size_t, Polynomial>> grown;
    for (const auto& [x, p] : states) {
      std::size_t y = g.right_mul(x, i);
      if (prefix[y] && g.length(y) == g.length(x) + 1) grown.emplace_back(y, p * r);
    }
    for (auto& [y, p] : grown) {
      auto [it, inserted] = states.try_emplace(y, std::move(p));
      if (!inserted) it->second += p;
    }
    partial_w = g.right_mul(partial_w, i);
  }
  auto it = states.find(v);
  return it == states.end() ? Polynomial(n) : it->second;
}

// Uses the canonical reduced word of w.
inline Polynomial billey_restriction(const WeylGroup& g, std::size_t v, std::size_t w) {
  return billey_restriction(g, v, g.element(w).word());
}

inline Polynomial billey_restriction(const WeylGroup& g, const WeylElt& v, const WeylElt& w) {
  return billey_restriction(g, g.index_of(v), g.index_of(w));
}

// Memoized restrictions keyed by (v, w) positions. Concurrent readers share
// the lock; a racing insert of the same key keeps the first value, which is
// identical to the second.
class RestrictionCache {
 public:
  std::optional<Polynomial> find(std::uint64_t key) const {
    std::shared_lock lock(mutex_);
    auto it = map_.find(key);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }

  const Polynomial* find_ref(std::uint64_t key) const {
    std::shared_lock lock(mutex_);
    auto it = map_.find(key);
    return it == map_.end() ? nullptr : &it->second;
  }

  const Polynomial& insert(std::uint64_t key, Polynomial p) {
    std::unique_lock lock(mutex_);
    return map_.try_emplace(key, std::move(p)).first->second;
  }

  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return map_.size();
  }

  // Sorted snapshot for serialization.
  std::vector<std::pair<std::uint64_t, Polynomial>> snapshot() const {
    std::shared_lock lock(mutex_);
    std::vector<std::pair<std::uint64_t, Polynomial>> out(map_.begin(), map_.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
  }

 private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::uint64_t, Polynomial> map_;
};

// ---------------------------------------------------------------------------

/*
  A class in H_T^*(G/B) given by its restrictions to the fixed points. The
  value vector is indexed by the group enumeration; zero restrictions are
  empty polynomials. Construction rejects inhomogeneous data.
*/
class LocalizedClass {
 public:
  LocalizedClass(std::shared_ptr<const WeylGroup> g, std::vector<Polynomial> values,
                 std::optional<int> degree = std::nullopt)
      : group_(std::move(g)), values_(std::move(values)) {
    const std::size_t r = group_->root_system().rank();
    if (values_.size() != group_->size()) throw InvalidArgument("class needs one value per Weyl group element");
    int d = -1;
    for (auto& p : values_) {
      if (p.nvars() != r) {
        if (p.is_zero()) {
          p = Polynomial(r);
        } else {
          throw RankMismatch("restriction rank does not match the root system");
        }
      }
      if (p.is_zero()) continue;
      if (!p.is_homogeneous()) throw NotInSpan("class has an inhomogeneous restriction");
      if (d < 0) d = p.degree();
      if (p.degree() != d) throw NotInSpan("class restrictions have different degrees");
    }
    if (degree && d >= 0 && *degree != d) throw NotInSpan("class degree does not match its restrictions");
    degree_ = d >= 0 ? d : degree.value_or(0);
  }

  static LocalizedClass constant(std::shared_ptr<const WeylGroup> g, const Rational& c) {
    std::size_t r = g->root_system().rank();
    std::vector<Polynomial> v(g->size(), Polynomial::constant(r, c));
    return LocalizedClass(std::move(g), std::move(v), 0);
  }

  const WeylGroup& group() const { return *group_; }
  std::shared_ptr<const WeylGroup> group_ptr() const { return group_; }
  const std::vector<Polynomial>& values() const { return values_; }
  const Polynomial& value(std::size_t w) const { return values_.at(w); }
  int degree() const { return degree_; }
  bool is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](const Polynomial& p) { return p.is_zero(); });
  }

  friend bool operator==(const LocalizedClass& a, const LocalizedClass& b) {
    return a.group_->root_system() == b.group_->root_system() && a.values_ == b.values_;
  }

 private:
  std::shared_ptr<const WeylGroup> group_;
  std::vector<Polynomial> values_;
  int degree_ = 0;
};

// Coefficients in the Schubert basis, keyed by group position; zero entries
// are absent.
using SchubertExpansion = std::map<std::size_t, Polynomial>;

/*
  Equivariant Schubert calculus on one G/B: owns the group enumeration and the
  restriction cache shared by every computation on it.
*/
class FlagVariety {
 public:
  explicit FlagVariety(std::shared_ptr<const WeylGroup> g) : group_(std::move(g)) {}
  explicit FlagVariety(const RootSystem& rs, std::uint64_t max_weyl = WeylGroup::kDefaultMaxSize)
      : group_(std::make_shared<const WeylGroup>(rs, max_weyl)) {}

  const WeylGroup& group() const { return *group_; }
  std::shared_ptr<const WeylGroup> group_ptr() const { return group_; }
  const RootSystem& root_system() const { return group_->root_system(); }
  RestrictionCache& cache() { return cache_; }
  const RestrictionCache& cache() const { return cache_; }

  std::uint64_t key(std::size_t v, std::size_t w) const { return static_cast<std::uint64_t>(v) * group_->size() + w; }

  // sigma_v|_w, memoized. Zero whenever v is not below w.
  const Polynomial& restriction(std::size_t v, std::size_t w) {
    if (!group_->bruhat_leq(v, w)) return zero();
    const std::uint64_t k = key(v, w);
    if (const Polynomial* p = cache_.find_ref(k)) return *p;
    return cache_.insert(k, billey_restriction(*group_, v, w));
  }

  LocalizedClass schubert_class(std::size_t v) {
    std::vector<Polynomial> values(group_->size(), Polynomial(root_system().rank()));
    for (std::size_t w = 0; w < group_->size(); ++w) values[w] = restriction(v, w);
    return LocalizedClass(group_, std::move(values), group_->length(v));
  }

  LocalizedClass schubert_class(const WeylElt& v) { return schubert_class(group_->index_of(v)); }

  void warm_diagonal() {
    for (std::size_t w = 0; w < group_->size(); ++w) restriction(w, w);
  }

 private:
  const Polynomial& zero() {
    std::call_once(zero_once_, [this] { zero_ = Polynomial(root_system().rank()); });
    return zero_;
  }

  std::shared_ptr<const WeylGroup> group_;
  RestrictionCache cache_;
  std::once_flag zero_once_;
  Polynomial zero_;
};

// Free-function form over a transient context.
inline LocalizedClass schubert_class(const RootSystem& rs, const WeylElt& v) {
  FlagVariety fv(rs);
  return fv.schubert_class(v);
}

// GKM condition: for every w and positive root beta, f(w) - f(w s_beta) is
// divisible by w(beta).
inline bool gkm_verify(const LocalizedClass& f) {
  const WeylGroup& g = f.group();
  const RootSystem& rs = g.root_system();
  for (std::size_t w = 0; w < g.size(); ++w) {
    for (int b = 0; b < rs.num_positive(); ++b) {
      std::size_t ws = g.multiply(w, g.reflection(b));
      if (ws < w) continue;  // each edge once
      Polynomial diff = f.value(w) - f.value(ws);
      if (diff.is_zero()) continue;
      if (!divide(diff, root_polynomial(rs, g.element(w).act(b))).remainder.is_zero()) return false;
    }
  }
  return true;
}

inline void check_same_space(const LocalizedClass& f, const LocalizedClass& g) {
  if (&f.group() != &g.group() && !(f.group().root_system() == g.group().root_system()))
    throw RankMismatch("classes live on different flag varieties");
}

inline LocalizedClass class_product(const LocalizedClass& f, const LocalizedClass& g) {
  check_same_space(f, g);
  std::vector<Polynomial> values(f.values().size());
  for (std::size_t w = 0; w < values.size(); ++w) values[w] = f.value(w) * g.value(w);
  return LocalizedClass(f.group_ptr(), std::move(values), f.degree() + g.degree());
}

inline LocalizedClass class_sum(const LocalizedClass& f, const LocalizedClass& g) {
  check_same_space(f, g);
  std::vector<Polynomial> values(f.values().size());
  for (std::size_t w = 0; w < values.size(); ++w) values[w] = f.value(w) + g.value(w);
  return LocalizedClass(f.group_ptr(), std::move(values));
}

inline LocalizedClass class_scale(const LocalizedClass& f, const Polynomial& c) {
  std::vector<Polynomial> values(f.values().size());
  for (std::size_t w = 0; w < values.size(); ++w) values[w] = f.value(w) * c;
  return LocalizedClass(f.group_ptr(), std::move(values));
}

/*
  Bruhat-triangular back substitution. The enumeration is length-graded, so
  the first position with a nonzero residual is Bruhat-minimal among them;
  its coefficient is residual(w) / sigma_w|_w and sigma_w is subtracted.
*/
inline SchubertExpansion expand_in_schubert_basis(FlagVariety& fv, const LocalizedClass& f) {
  const WeylGroup& g = fv.group();
  if (!(f.group().root_system() == fv.root_system())) throw RankMismatch("class is not on this flag variety");
  std::vector<Polynomial> residual = f.values();
  SchubertExpansion out;
  for (std::size_t w = 0; w < g.size(); ++w) {
    if (residual[w].is_zero()) continue;
    Polynomial d;
    try {
      d = divide_exact(residual[w], fv.restriction(w, w));
    } catch (const NotDivisible&) {
      throw NotInSpan("residual at " + word_text(g.element(w)) + " is not divisible by sigma_w|_w");
    }
    for (std::size_t x = w; x < g.size(); ++x) {
      const Polynomial& s = fv.restriction(w, x);
      if (!s.is_zero()) residual[x] -= d * s;
    }
    out.emplace(w, std::move(d));
  }
  for (const auto& p : residual)
    if (!p.is_zero()) throw NotInSpan("nonzero residual after exhausting the Schubert basis");
  return out;
}

// Problems with c_{uv}^w: grading, support, positivity. Empty when clean.
inline std::vector<std::string> audit_structure_constants(const WeylGroup& g, std::size_t u, std::size_t v,
                                                          const SchubertExpansion& c) {
  std::vector<std::string> issues;
  auto name = [&](std::size_t w) {
    return "c[" + word_text(g.element(u)) + ", " + word_text(g.element(v)) + " -> " + word_text(g.element(w)) + "]";
  };
  for (const auto& [w, p] : c) {
    int deg = g.length(u) + g.length(v) - g.length(w);
    if (deg < 0 || !p.is_homogeneous_of_degree(deg))
      issues.push_back(name(w) + " = " + to_text(p) + " is not homogeneous of degree " + std::to_string(deg));
    if (!g.bruhat_leq(u, w) || !g.bruhat_leq(v, w))
      issues.push_back(name(w) + " is nonzero outside u <= w, v <= w");
    if (!is_graham_positive(p)) issues.push_back(name(w) + " = " + to_text(p) + " is not Graham positive");
    if (!is_integral(p)) issues.push_back(name(w) + " = " + to_text(p) + " is not integral");
  }
  return issues;
}

inline std::string join_issues(const std::vector<std::string>& issues) {
  std::string s;
  for (const auto& i : issues) s += (s.empty() ? "" : "; ") + i;
  return s;
}

// c_{uv}^w for all w. Throws VerificationFailure if any coefficient breaks
// grading, support or positivity.
inline SchubertExpansion structure_constants(FlagVariety& fv, std::size_t u, std::size_t v) {
  SchubertExpansion c = expand_in_schubert_basis(fv, class_product(fv.schubert_class(u), fv.schubert_class(v)));
  auto issues = audit_structure_constants(fv.group(), u, v, c);
  if (!issues.empty()) throw VerificationFailure(join_issues(issues));
  return c;
}

// Product of all positive roots.
inline Polynomial positive_root_product(const RootSystem& rs) {
  Polynomial p = Polynomial::one(rs.rank());
  for (int b = 0; b < rs.num_positive(); ++b) p *= root_polynomial(rs, b);
  return p;
}

// Sign s(w) with e(w) = prod_{beta > 0} (-w(beta)) = s(w) * prod_{beta > 0} beta;
// each w(beta) is +-gamma for a distinct positive gamma.
inline int euler_sign(const WeylGroup& g, std::size_t w) {
  const RootSystem& rs = g.root_system();
  int sign = 1;
  for (int b = 0; b < rs.num_positive(); ++b)
    if (rs.is_positive_index(g.element(w).act(b))) sign = -sign;
  return sign;
}

// ABBV: sum_w f(w) / e(w). All Euler classes are +- the product of positive
// roots, so the sum is a single exact division.
inline Polynomial integrate(const LocalizedClass& f) {
  const WeylGroup& g = f.group();
  const RootSystem& rs = g.root_system();
  Polynomial num(rs.rank());
  for (std::size_t w = 0; w < g.size(); ++w) {
    if (f.value(w).is_zero()) continue;
    if (euler_sign(g, w) > 0) num += f.value(w);
    else num -= f.value(w);
  }
  if (num.is_zero()) return num;
  try {
    return divide_exact(num, positive_root_product(rs));
  } catch (const NotDivisible&) {
    throw NonPolynomialResult("fixed-point sum is not a polynomial; the class does not satisfy GKM");
  }
}

// ---------------------------------------------------------------------------

struct StructEntry {
  std::size_t u, v, w;
  Polynomial coeff;
};

// Nonzero c_{uv}^w, ordered by (u, v, w) positions.
struct StructTable {
  std::shared_ptr<const WeylGroup> group;
  std::vector<StructEntry> entries;
};

// All pairs (u, v); pairs are independent and run on `jobs` threads.
inline StructTable structure_table(FlagVariety& fv, unsigned jobs = 1) {
  const std::size_t n = fv.group().size();
  fv.warm_diagonal();
  std::vector<SchubertExpansion> rows(n * n);
  parallel_for(n * n, jobs, [&](std::size_t k) { rows[k] = structure_constants(fv, k / n, k % n); });
  StructTable t{fv.group_ptr(), {}};
  for (std::size_t k = 0; k < rows.size(); ++k)
    for (auto& [w, c] : rows[k]) t.entries.push_back({k / n, k % n, w, std::move(c)});
  return t;
}

// The degree-zero entries, i.e. the ordinary structure constants.
inline std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Integer> forget_to_ordinary(const StructTable& t) {
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Integer> out;
  for (const auto& e : t.entries) {
    if (t.group->length(e.u) + t.group->length(e.v) != t.group->length(e.w)) continue;
    auto c = e.coeff.constant_value();
    if (!c || c->get_den() != 1 || sgn(*c) < 0)
      throw VerificationFailure("ordinary structure constant is not a nonnegative integer: " + to_text(e.coeff));
    if (sgn(*c) != 0) out.emplace(std::make_tuple(e.u, e.v, e.w), c->get_num());
  }
  return out;
}

}  // namespace schubloc

#endif  // SCHUBLOC_GKM_HPP
