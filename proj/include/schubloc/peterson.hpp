#ifndef SCHUBLOC_PETERSON_HPP
#define SCHUBLOC_PETERSON_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "errors.hpp"
#include "gkm.hpp"
#include "parallel.hpp"
#include "poly.hpp"
#include "rootsys.hpp"

namespace schubloc {

// The Peterson fixed point indexed by K is w_K.
inline WeylElt peterson_fixed_point(const RootSystem& rs, SubsetK k) { return longest_element(rs, k); }

/*
  A class in H_S^*(Pet) given by its restrictions to the fixed points w_J,
  one polynomial in t per subset J (indexed by the subset mask).
*/
class PetersonClass {
 public:
  PetersonClass(int rank, std::vector<PolyT> values, std::optional<int> degree = std::nullopt)
      : rank_(rank), values_(std::move(values)) {
    if (values_.size() != (std::size_t{1} << rank_)) throw InvalidArgument("Peterson class needs 2^rank values");
    int d = -1;
    for (const auto& p : values_) {
      if (p.is_zero()) continue;
      if (!p.is_monomial()) throw NotInSpan("Peterson class has an inhomogeneous restriction");
      if (d < 0) d = p.degree();
      if (p.degree() != d) throw NotInSpan("Peterson class restrictions have different degrees");
    }
    if (degree && d >= 0 && *degree != d) throw NotInSpan("Peterson class degree does not match its restrictions");
    degree_ = d >= 0 ? d : degree.value_or(0);
  }

  int rank() const { return rank_; }
  int degree() const { return degree_; }
  const std::vector<PolyT>& values() const { return values_; }
  const PolyT& value(SubsetK j) const { return values_.at(j.mask()); }

  friend PetersonClass operator*(const PetersonClass& a, const PetersonClass& b) {
    if (a.rank_ != b.rank_) throw RankMismatch("Peterson classes of different rank");
    std::vector<PolyT> v(a.values_.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = a.values_[k] * b.values_[k];
    return PetersonClass(a.rank_, std::move(v), a.degree_ + b.degree_);
  }

  friend bool operator==(const PetersonClass&, const PetersonClass&) = default;

 private:
  int rank_ = 0;
  std::vector<PolyT> values_;
  int degree_ = 0;
};

// Coefficients in the basis {p_K}, keyed by subset mask; zero entries absent.
using PetersonExpansion = std::map<std::uint32_t, PolyT>;

inline std::string expansion_text(const PetersonExpansion& e) {
  std::string s = "{";
  for (const auto& [k, c] : e) {
    if (s.size() > 1) s += ", ";
    s += "{" + SubsetK(k).to_string() + "}: " + to_text(c);
  }
  return s + "}";
}

/*
  Peterson Schubert calculus on top of a flag variety. p_K is the pullback of
  the Schubert class of the Coxeter element v_K; the Coxeter order is fixed per
  instance. All p-classes are built lazily and shared between threads.
*/
class PetersonCalculus {
 public:
  explicit PetersonCalculus(std::shared_ptr<FlagVariety> fv, CoxeterOrder order = CoxeterOrder::increasing)
      : fv_(std::move(fv)),
        order_(order),
        rank_(fv_->root_system().rank()),
        p_once_(std::size_t{1} << rank_),
        p_(std::size_t{1} << rank_) {
    if (rank_ > 20) throw ResourceCapExceeded("Peterson tables are limited to rank 20");
    const RootSystem& rs = fv_->root_system();
    for (std::uint32_t m = 0; m < (1u << rank_); ++m) {
      fixed_.push_back(fv_->group().index_of(peterson_fixed_point(rs, SubsetK(m))));
      coxeter_.push_back(m == 0 ? fv_->group().identity() : fv_->group().index_of(coxeter_element(rs, SubsetK(m), order_)));
    }
    order_by_size_ = subsets_by_size(rank_);
  }

  FlagVariety& flag_variety() { return *fv_; }
  const WeylGroup& group() const { return fv_->group(); }
  int rank() const { return rank_; }
  CoxeterOrder coxeter_order() const { return order_; }
  std::size_t fixed_point(SubsetK k) const { return fixed_.at(k.mask()); }
  std::size_t coxeter(SubsetK k) const { return coxeter_.at(k.mask()); }

  // Restriction of a G/B Schubert class to the Peterson fixed points.
  PetersonClass pullback(std::size_t w) {
    std::vector<PolyT> v(fixed_.size());
    for (std::size_t j = 0; j < fixed_.size(); ++j) v[j] = specialize_to_t(fv_->restriction(w, fixed_[j]));
    return PetersonClass(rank_, std::move(v), group().length(w));
  }

  // p_K; p_{empty} is the constant class 1.
  const PetersonClass& p_class(SubsetK k) {
    check(k);
    std::call_once(p_once_[k.mask()], [&] { p_[k.mask()] = std::make_unique<PetersonClass>(pullback(coxeter_[k.mask()])); });
    return *p_[k.mask()];
  }

  /*
    Inclusion-triangular back substitution: p_K vanishes at w_J unless
    K is contained in J, so visiting subsets by size finds an
    inclusion-minimal nonzero residual first.
  */
  PetersonExpansion expand_in_p_basis(const PetersonClass& f) {
    if (f.rank() != rank_) throw RankMismatch("Peterson class of the wrong rank");
    std::vector<PolyT> residual = f.values();
    PetersonExpansion out;
    for (SubsetK k : order_by_size_) {
      if (residual[k.mask()].is_zero()) continue;
      const PetersonClass& p = p_class(k);
      PolyT d;
      try {
        d = divide_exact(residual[k.mask()], p.value(k));
      } catch (const NotDivisibleT&) {
        throw NotInSpan("residual at K={" + k.to_string() + "} is not divisible by p_K(w_K)");
      }
      for (std::uint32_t j = 0; j < residual.size(); ++j)
        if (k.is_subset_of(SubsetK(j)) && !p.value(SubsetK(j)).is_zero()) residual[j] -= d * p.value(SubsetK(j));
      out.emplace(k.mask(), std::move(d));
    }
    for (const auto& r : residual)
      if (!r.is_zero()) throw NotInSpan("nonzero residual after exhausting the p-basis");
    return out;
  }

  // Problems with c_{I,J}^K: grading, support, positivity, integrality (type A).
  std::vector<std::string> audit_structure_constants(SubsetK i, SubsetK j, const PetersonExpansion& c) const {
    std::vector<std::string> issues;
    const bool type_a = fv_->root_system().is_type_a();
    for (const auto& [km, p] : c) {
      SubsetK k(km);
      std::string name = "c[{" + i.to_string() + "}, {" + j.to_string() + "} -> {" + k.to_string() + "}] = " + to_text(p);
      int deg = i.size() + j.size() - k.size();
      if (deg < 0 || !p.is_homogeneous_of_degree(deg))
        issues.push_back(name + " is not homogeneous of degree " + std::to_string(deg));
      if (!(i | j).is_subset_of(k)) issues.push_back(name + " is nonzero outside K containing I and J");
      if (!p.is_nonnegative()) issues.push_back(name + " has a negative coefficient");
      if (type_a && !p.is_integral()) issues.push_back(name + " is not integral");
    }
    return issues;
  }

  // c_{I,J}^K for all K; throws VerificationFailure on a positivity, grading
  // or support violation.
  PetersonExpansion structure_constants(SubsetK i, SubsetK j) {
    PetersonExpansion c = expand_in_p_basis(p_class(i) * p_class(j));
    auto issues = audit_structure_constants(i, j, c);
    if (!issues.empty()) throw VerificationFailure(join_issues(issues));
    return c;
  }

  std::vector<std::string> audit_pullback(std::size_t w, const PetersonExpansion& b) const {
    std::vector<std::string> issues;
    for (const auto& [km, p] : b) {
      SubsetK k(km);
      std::string name = "b[" + word_text(group().element(w)) + " -> {" + k.to_string() + "}] = " + to_text(p);
      int deg = group().length(w) - k.size();
      if (!p.is_monomial()) issues.push_back(name + " is not a monomial in t");
      if (deg < 0 || !p.is_homogeneous_of_degree(deg))
        issues.push_back(name + " does not have degree " + std::to_string(deg));
      if (!p.is_nonnegative()) issues.push_back(name + " has a negative coefficient");
    }
    return issues;
  }

  // b_w^K: the pullback of sigma_w expanded in the p-basis.
  PetersonExpansion pullback_expansion(std::size_t w) {
    PetersonExpansion b = expand_in_p_basis(pullback(w));
    auto issues = audit_pullback(w, b);
    if (!issues.empty()) throw VerificationFailure(join_issues(issues));
    return b;
  }

  // c_{I,J}^K recomputed as sum_w c_{v_I,v_J}^w|_S * b_w^K, through the G/B
  // structure constants.
  PetersonExpansion structure_constants_via_flag(SubsetK i, SubsetK j) {
    SchubertExpansion c = schubloc::structure_constants(*fv_, coxeter(i), coxeter(j));
    PetersonExpansion out;
    for (const auto& [w, cw] : c) {
      PolyT ct = specialize_to_t(cw);
      for (const auto& [k, b] : pullback_expansion(w)) {
        auto [it, inserted] = out.try_emplace(k, ct * b);
        if (!inserted) it->second += ct * b;
      }
    }
    std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
    return out;
  }

 private:
  void check(SubsetK k) const {
    if (!k.within_rank(rank_)) throw InvalidArgument("subset {" + k.to_string() + "} exceeds the rank");
  }

  std::shared_ptr<FlagVariety> fv_;
  CoxeterOrder order_;
  int rank_;
  std::vector<std::size_t> fixed_;
  std::vector<std::size_t> coxeter_;
  std::vector<SubsetK> order_by_size_;
  std::vector<std::once_flag> p_once_;
  std::vector<std::unique_ptr<PetersonClass>> p_;
};

// ---------------------------------------------------------------------------
// Closed form for consecutive I, J, K in type A.

// n! / (a! b! c!) when a + b + c = n and all parts are nonnegative, else 0.
inline Integer multinomial(long n, long a, long b, long c) {
  if (a < 0 || b < 0 || c < 0 || n < 0 || a + b + c != n) return 0;
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  for (long part : {a, b, c}) {
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(part));
    r /= f;
  }
  return r;
}

inline bool closed_form_admissible(SubsetK i, SubsetK j, SubsetK k) {
  return i.is_consecutive() && j.is_consecutive() && k.is_consecutive() && (i | j).is_subset_of(k) &&
         k.size() <= i.size() + j.size();
}

/*
  c_{I,J}^K = a! * multinomial(H_I - T_J + 1; a, T_I - T_K, H_K - H_J)
                 * multinomial(H_J - T_I + 1; a, T_J - T_K, H_K - H_I) * t^a
  with a = |I| + |J| - |K|, H the largest and T the smallest member.
*/
inline PolyT closed_form_cIJK(SubsetK i, SubsetK j, SubsetK k) {
  if (i.empty() || j.empty() || k.empty()) throw InvalidArgument("closed form needs nonempty subsets");
  if (!i.is_consecutive() || !j.is_consecutive() || !k.is_consecutive())
    throw InvalidArgument("closed form needs consecutive subsets");
  if (!(i | j).is_subset_of(k)) throw InvalidArgument("closed form needs K to contain I and J");
  if (k.size() > i.size() + j.size()) throw InvalidArgument("closed form needs |K| <= |I| + |J|");
  const long a = i.size() + j.size() - k.size();
  Integer fa;
  mpz_fac_ui(fa.get_mpz_t(), static_cast<unsigned long>(a));
  Integer value = fa * multinomial(i.head() - j.tail() + 1, a, i.tail() - k.tail(), k.head() - j.head()) *
                  multinomial(j.head() - i.tail() + 1, a, j.tail() - k.tail(), k.head() - i.head());
  return PolyT::monomial(Rational(value), static_cast<std::size_t>(a));
}

struct CrossValidationEntry {
  SubsetK i, j, k;
  PolyT closed_form;
  PolyT localization;
};

struct CrossValidationReport {
  std::string type;
  int rank = 0;
  std::size_t checked = 0;
  std::size_t passed = 0;
  std::vector<CrossValidationEntry> failures;

  bool ok() const { return failures.empty(); }

  nlohmann::json to_json() const {
    nlohmann::json f = nlohmann::json::array();
    for (const auto& e : failures)
      f.push_back({{"I", e.i.to_string()},
                   {"J", e.j.to_string()},
                   {"K", e.k.to_string()},
                   {"closed_form", to_text(e.closed_form)},
                   {"localization", to_text(e.localization)}});
    return {{"type", type}, {"rank", rank}, {"checked", checked}, {"passed", passed}, {"ok", ok()}, {"failures", f}};
  }
};

// Every admissible consecutive triple, in subset-mask order.
inline CrossValidationReport cross_validate(PetersonCalculus& pc, int bound, unsigned jobs = 1) {
  const RootSystem& rs = pc.flag_variety().root_system();
  if (!rs.is_type_a()) throw InvalidArgument("closed-form cross-validation requires type A");
  if (rs.rank() > bound) throw InvalidArgument("rank exceeds the cross-validation bound");
  const std::uint32_t n = 1u << rs.rank();
  std::vector<std::pair<SubsetK, SubsetK>> pairs;
  for (std::uint32_t i = 1; i < n; ++i)
    for (std::uint32_t j = 1; j < n; ++j)
      if (SubsetK(i).is_consecutive() && SubsetK(j).is_consecutive()) pairs.emplace_back(SubsetK(i), SubsetK(j));
  std::vector<PetersonExpansion> computed(pairs.size());
  parallel_for(pairs.size(), jobs, [&](std::size_t p) { computed[p] = pc.expand_in_p_basis(pc.p_class(pairs[p].first) * pc.p_class(pairs[p].second)); });

  CrossValidationReport rep{rs.key(), rs.rank(), 0, 0, {}};
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    auto [i, j] = pairs[p];
    for (std::uint32_t km = 1; km < n; ++km) {
      SubsetK k(km);
      if (!closed_form_admissible(i, j, k)) continue;
      ++rep.checked;
      PolyT expected = closed_form_cIJK(i, j, k);
      auto it = computed[p].find(km);
      PolyT actual = it == computed[p].end() ? PolyT() : it->second;
      if (expected == actual) ++rep.passed;
      else rep.failures.push_back({i, j, k, expected, actual});
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------

struct PetersonEntry {
  SubsetK i, j, k;
  PolyT coeff;
};

// All c_{I,J}^K over ordered pairs (I, J), in mask order.
inline std::vector<PetersonEntry> peterson_table(PetersonCalculus& pc, unsigned jobs = 1) {
  const std::size_t n = std::size_t{1} << pc.rank();
  for (std::uint32_t m = 0; m < n; ++m) pc.p_class(SubsetK(m));
  std::vector<PetersonExpansion> rows(n * n);
  parallel_for(n * n, jobs, [&](std::size_t p) {
    rows[p] = pc.structure_constants(SubsetK(static_cast<std::uint32_t>(p / n)), SubsetK(static_cast<std::uint32_t>(p % n)));
  });
  std::vector<PetersonEntry> out;
  for (std::size_t p = 0; p < rows.size(); ++p)
    for (auto& [k, c] : rows[p])
      out.push_back({SubsetK(static_cast<std::uint32_t>(p / n)), SubsetK(static_cast<std::uint32_t>(p % n)), SubsetK(k), std::move(c)});
  return out;
}

}  // namespace schubloc

#endif  // SCHUBLOC_PETERSON_HPP
