#ifndef SCHUBLOC_VERIFY_HPP
#define SCHUBLOC_VERIFY_HPP

#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gkm.hpp"
#include "peterson.hpp"

namespace schubloc {

struct CheckResult {
  std::string name;
  std::size_t checked = 0;
  std::vector<std::string> failures;
  std::string note;

  bool ok() const { return failures.empty(); }
};

struct VerifyReport {
  std::string type;
  std::vector<CheckResult> checks;

  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.ok(); });
  }

  nlohmann::json to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks) {
      nlohmann::json j = {{"name", c.name}, {"checked", c.checked}, {"ok", c.ok()}, {"failures", c.failures}};
      if (!c.note.empty()) j["note"] = c.note;
      arr.push_back(j);
    }
    return {{"type", type}, {"ok", ok()}, {"checks", arr}};
  }

  void write_text(std::ostream& os, std::size_t max_failures = 10) const {
    for (const auto& c : checks) {
      os << c.name << ": " << (c.ok() ? "PASS" : "FAIL") << " (" << c.checked << " checked";
      if (!c.ok()) os << ", " << c.failures.size() << " failed";
      os << ")";
      if (!c.note.empty()) os << " [" << c.note << "]";
      os << '\n';
      for (std::size_t k = 0; k < c.failures.size() && k < max_failures; ++k) os << "  " << c.failures[k] << '\n';
    }
    os << "summary: " << (ok() ? "PASS" : "FAIL") << '\n';
  }
};

namespace checks {

inline std::string elt(const WeylGroup& g, std::size_t w) { return word_text(g.element(w)); }

// Every sigma_v|_w has nonnegative coefficients.
inline CheckResult restriction_positivity(FlagVariety& fv) {
  CheckResult r{"restriction-positivity", 0, {}, {}};
  const WeylGroup& g = fv.group();
  for (std::size_t v = 0; v < g.size(); ++v)
    for (std::size_t w = 0; w < g.size(); ++w) {
      ++r.checked;
      const Polynomial& p = fv.restriction(v, w);
      if (!is_graham_positive(p)) r.failures.push_back("sigma_" + elt(g, v) + "|_" + elt(g, w) + " = " + to_text(p));
    }
  return r;
}

// Every c_{uv}^w passes grading, support and Graham positivity.
inline CheckResult structure_positivity(FlagVariety& fv, unsigned jobs) {
  CheckResult r{"structure-constant-positivity", 0, {}, {}};
  const std::size_t n = fv.group().size();
  fv.warm_diagonal();
  std::vector<std::vector<std::string>> issues(n * n);
  std::vector<std::size_t> counts(n * n);
  parallel_for(n * n, jobs, [&](std::size_t k) {
    std::size_t u = k / n, v = k % n;
    try {
      auto c = expand_in_schubert_basis(fv, class_product(fv.schubert_class(u), fv.schubert_class(v)));
      issues[k] = audit_structure_constants(fv.group(), u, v, c);
      counts[k] = c.size();
      // commutativity
      if (v < u) return;
      auto c2 = expand_in_schubert_basis(fv, class_product(fv.schubert_class(v), fv.schubert_class(u)));
      if (!(c == c2)) issues[k].push_back("c[" + elt(fv.group(), u) + ", " + elt(fv.group(), v) + "] is not symmetric");
    } catch (const Error& e) {
      issues[k].push_back(e.what());
    }
  });
  for (std::size_t k = 0; k < n * n; ++k) {
    r.checked += counts[k];
    for (auto& s : issues[k]) r.failures.push_back(std::move(s));
  }
  return r;
}

inline CheckResult gkm_condition(FlagVariety& fv) {
  CheckResult r{"gkm-divisibility", 0, {}, {}};
  const WeylGroup& g = fv.group();
  for (std::size_t v = 0; v < g.size(); ++v) {
    ++r.checked;
    if (!gkm_verify(fv.schubert_class(v))) r.failures.push_back("sigma_" + elt(g, v) + " fails GKM");
  }
  return r;
}

// expand(sigma_v) is the indicator of v.
inline CheckResult schubert_roundtrip(FlagVariety& fv) {
  CheckResult r{"schubert-roundtrip", 0, {}, {}};
  const WeylGroup& g = fv.group();
  const std::size_t rank = g.root_system().rank();
  for (std::size_t v = 0; v < g.size(); ++v) {
    ++r.checked;
    SchubertExpansion want{{v, Polynomial::one(rank)}};
    try {
      if (expand_in_schubert_basis(fv, fv.schubert_class(v)) != want)
        r.failures.push_back("expand(sigma_" + elt(g, v) + ") is not an indicator");
    } catch (const Error& e) {
      r.failures.push_back(std::string("expand(sigma_") + elt(g, v) + "): " + e.what());
    }
  }
  return r;
}

// The subword sum does not depend on the reduced word chosen for w.
inline CheckResult billey_word_independence(FlagVariety& fv) {
  CheckResult r{"billey-word-independence", 0, {}, {}};
  const WeylGroup& g = fv.group();
  for (std::size_t w = 0; w < g.size(); ++w) {
    auto words = g.reduced_words(w);
    for (std::size_t v = 0; v < g.size(); ++v) {
      Polynomial base = billey_restriction(g, v, words.front());
      for (std::size_t k = 1; k < words.size(); ++k) {
        ++r.checked;
        if (!(billey_restriction(g, v, words[k]) == base))
          r.failures.push_back("sigma_" + elt(g, v) + "|_" + elt(g, w) + " depends on the word " + word_text(words[k]));
      }
    }
  }
  return r;
}

// sigma_v|_w vanishes exactly off the Bruhat interval above v.
inline CheckResult billey_support(FlagVariety& fv) {
  CheckResult r{"billey-support", 0, {}, {}};
  const WeylGroup& g = fv.group();
  for (std::size_t v = 0; v < g.size(); ++v)
    for (std::size_t w = 0; w < g.size(); ++w) {
      ++r.checked;
      bool zero = billey_restriction(g, v, w).is_zero();
      if (zero == g.bruhat_leq(v, w))
        r.failures.push_back("sigma_" + elt(g, v) + "|_" + elt(g, w) + " support disagrees with Bruhat order");
    }
  return r;
}

// sigma_w|_w is the product of the positive roots beta with w^{-1}(beta) < 0.
inline CheckResult billey_diagonal(FlagVariety& fv) {
  CheckResult r{"billey-diagonal", 0, {}, {}};
  const WeylGroup& g = fv.group();
  const RootSystem& rs = g.root_system();
  for (std::size_t w = 0; w < g.size(); ++w) {
    ++r.checked;
    const WeylElt& winv = g.element(g.inverse(w));
    Polynomial want = Polynomial::one(rs.rank());
    for (int b = 0; b < rs.num_positive(); ++b)
      if (!rs.is_positive_index(winv.act(b))) want *= root_polynomial(rs, b);
    if (!(fv.restriction(w, w) == want)) r.failures.push_back("sigma_" + elt(g, w) + "|_" + elt(g, w) + " != " + to_text(want));
  }
  return r;
}

// p_K(J) = 0 unless K is inside J, and p_K(K) != 0.
inline CheckResult p_triangularity(PetersonCalculus& pc) {
  CheckResult r{"p-basis-triangularity", 0, {}, {}};
  const std::uint32_t n = 1u << pc.rank();
  for (std::uint32_t k = 0; k < n; ++k)
    for (std::uint32_t j = 0; j < n; ++j) {
      ++r.checked;
      const PolyT& v = pc.p_class(SubsetK(k)).value(SubsetK(j));
      bool inside = SubsetK(k).is_subset_of(SubsetK(j));
      if (!inside && !v.is_zero())
        r.failures.push_back("p_{" + SubsetK(k).to_string() + "}({" + SubsetK(j).to_string() + "}) = " + to_text(v));
      if (k == j && v.is_zero()) r.failures.push_back("p_{" + SubsetK(k).to_string() + "} vanishes at its own fixed point");
    }
  return r;
}

// Grading, support, positivity and symmetry of c_{I,J}^K.
inline CheckResult peterson_constants(PetersonCalculus& pc, unsigned jobs) {
  CheckResult r{"peterson-structure-constants", 0, {}, {}};
  const std::size_t n = std::size_t{1} << pc.rank();
  for (std::uint32_t m = 0; m < n; ++m) pc.p_class(SubsetK(m));
  std::vector<PetersonExpansion> rows(n * n);
  std::vector<std::vector<std::string>> issues(n * n);
  parallel_for(n * n, jobs, [&](std::size_t p) {
    SubsetK i(static_cast<std::uint32_t>(p / n)), j(static_cast<std::uint32_t>(p % n));
    try {
      rows[p] = pc.expand_in_p_basis(pc.p_class(i) * pc.p_class(j));
      issues[p] = pc.audit_structure_constants(i, j, rows[p]);
    } catch (const Error& e) {
      issues[p].push_back(e.what());
    }
  });
  for (std::size_t p = 0; p < n * n; ++p) {
    r.checked += rows[p].size();
    for (auto& s : issues[p]) r.failures.push_back(std::move(s));
    std::size_t q = (p % n) * n + p / n;
    if (q > p && rows[p] != rows[q])
      r.failures.push_back("c[{" + SubsetK(static_cast<std::uint32_t>(p / n)).to_string() + "}, {" +
                           SubsetK(static_cast<std::uint32_t>(p % n)).to_string() + "}] is not symmetric");
  }
  return r;
}

// Each b_w^K is a single nonnegative monomial of degree l(w) - |K|.
inline CheckResult pullback_monomials(PetersonCalculus& pc) {
  CheckResult r{"pullback-monomials", 0, {}, {}};
  for (std::size_t w = 0; w < pc.group().size(); ++w) {
    try {
      auto b = pc.expand_in_p_basis(pc.pullback(w));
      r.checked += b.size();
      for (auto& s : pc.audit_pullback(w, b)) r.failures.push_back(std::move(s));
    } catch (const Error& e) {
      r.failures.push_back(e.what());
    }
  }
  return r;
}

inline CheckResult closed_form(PetersonCalculus& pc, unsigned jobs) {
  CheckResult r{"closed-form", 0, {}, {}};
  if (!pc.flag_variety().root_system().is_type_a()) {
    r.note = "skipped: type A only";
    return r;
  }
  auto rep = cross_validate(pc, pc.rank(), jobs);
  r.checked = rep.checked;
  for (const auto& f : rep.failures)
    r.failures.push_back("c[{" + f.i.to_string() + "}, {" + f.j.to_string() + "} -> {" + f.k.to_string() +
                         "}]: closed form " + to_text(f.closed_form) + ", localization " + to_text(f.localization));
  return r;
}

// c_{I,J}^K == sum_w c_{v_I,v_J}^w b_w^K.
inline CheckResult flag_consistency(PetersonCalculus& pc) {
  CheckResult r{"peterson-flag-consistency", 0, {}, {}};
  const std::uint32_t n = 1u << pc.rank();
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) {
      ++r.checked;
      try {
        auto direct = pc.structure_constants(SubsetK(i), SubsetK(j));
        auto via = pc.structure_constants_via_flag(SubsetK(i), SubsetK(j));
        if (direct != via)
          r.failures.push_back("c[{" + SubsetK(i).to_string() + "}, {" + SubsetK(j).to_string() + "}]: " +
                               expansion_text(direct) + " vs " + expansion_text(via));
      } catch (const Error& e) {
        r.failures.push_back(e.what());
      }
    }
  return r;
}

}  // namespace checks

inline const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names{"positivity", "gkm", "billey", "peterson", "closed-form", "consistency", "all"};
  return names;
}

inline VerifyReport run_verify_suite(PetersonCalculus& pc, const std::string& suite, unsigned jobs = 1) {
  FlagVariety& fv = pc.flag_variety();
  VerifyReport rep{fv.root_system().key(), {}};
  auto want = [&](const char* s) { return suite == s || suite == "all"; };
  if (std::find(verify_suites().begin(), verify_suites().end(), suite) == verify_suites().end())
    throw InvalidArgument("unknown verify suite '" + suite + "'");
  if (want("billey")) {
    rep.checks.push_back(checks::billey_word_independence(fv));
    rep.checks.push_back(checks::billey_support(fv));
    rep.checks.push_back(checks::billey_diagonal(fv));
  }
  if (want("gkm")) {
    rep.checks.push_back(checks::gkm_condition(fv));
    rep.checks.push_back(checks::schubert_roundtrip(fv));
  }
  if (want("positivity")) {
    rep.checks.push_back(checks::restriction_positivity(fv));
    rep.checks.push_back(checks::structure_positivity(fv, jobs));
  }
  if (want("positivity") || want("peterson")) {
    rep.checks.push_back(checks::peterson_constants(pc, jobs));
    rep.checks.push_back(checks::pullback_monomials(pc));
  }
  if (want("peterson")) rep.checks.push_back(checks::p_triangularity(pc));
  if (want("closed-form")) rep.checks.push_back(checks::closed_form(pc, jobs));
  if (want("consistency")) rep.checks.push_back(checks::flag_consistency(pc));
  return rep;
}

}  // namespace schubloc

#endif  // SCHUBLOC_VERIFY_HPP
