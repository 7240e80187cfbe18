// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "schubloc/cli.hpp"
#include "schubloc/gkm.hpp"
#include "schubloc/peterson.hpp"
#include "schubloc/verify.hpp"

using namespace schubloc;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(const std::string& id, const std::string& what, bool ok, double seconds, const std::string& detail = "") {
  std::ostringstream t;
  t.setf(std::ios::fixed);
  t.precision(3);
  t << seconds;
  std::cout << (ok ? "PASS" : "FAIL") << "  " << id << "  " << what << "  (" << t.str() << " s)";
  if (!detail.empty()) std::cout << "  " << detail;
  std::cout << std::endl;
  if (!ok) ++failures;
}

// Runs `body`, which returns ok plus an optional detail; exceptions count as FAIL.
void criterion(const std::string& id, const std::string& what, double limit_s,
               const std::function<std::pair<bool, std::string>()>& body) {
  auto start = Clock::now();
  std::pair<bool, std::string> r;
  try {
    r = body();
  } catch (const std::exception& e) {
    r = {false, std::string("exception: ") + e.what()};
  }
  double s = std::chrono::duration<double>(Clock::now() - start).count();
  if (r.first && limit_s > 0 && s >= limit_s) r = {false, "over the " + std::to_string(limit_s) + " s limit"};
  report(id, what, r.first, s, r.second);
}

std::shared_ptr<FlagVariety> flag(const std::string& label) {
  return std::make_shared<FlagVariety>(RootSystem::from_label(label));
}

std::size_t at(const WeylGroup& g, const char* text) { return g.index_of(parse_element(g.root_system(), text)); }

Polynomial a(std::size_t i) { return Polynomial::variable(2, i - 1); }

std::pair<bool, std::string> from_checks(const std::vector<CheckResult>& checks) {
  std::size_t n = 0;
  for (const auto& c : checks) {
    n += c.checked;
    if (!c.ok()) return {false, c.name + ": " + c.failures.front()};
  }
  return {true, std::to_string(n) + " checked"};
}

std::string cli_bytes(std::vector<std::string> args) {
  args.insert(args.begin(), "schubloc");
  std::vector<const char*> argv;
  for (const auto& s : args) argv.push_back(s.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  if (code != 0) throw std::runtime_error("cli exit " + std::to_string(code) + ": " + err.str());
  return out.str();
}

}  // namespace

int main() {
  criterion("1", "A2 restriction table of sigma_[231]", 1.0, [] {
    auto fv = flag("A2");
    const WeylGroup& g = fv->group();
    Polynomial a1a3 = a(1) * (a(1) + a(2));
    std::size_t v = at(g, "231");
    for (const char* w : {"123", "213", "132", "312"})
      if (!fv->restriction(v, at(g, w)).is_zero()) return std::pair{false, std::string("nonzero at ") + w};
    for (const char* w : {"231", "321"})
      if (!(fv->restriction(v, at(g, w)) == a1a3)) return std::pair{false, std::string("wrong value at ") + w};
    return std::pair{true, std::string()};
  });

  criterion("2", "expand(sigma_[213]^2) = a1 sigma_[213] + sigma_[312]", 0, [] {
    auto fv = flag("A2");
    const WeylGroup& g = fv->group();
    auto s = fv->schubert_class(at(g, "213"));
    SchubertExpansion want{{at(g, "213"), a(1)}, {at(g, "312"), Polynomial::one(2)}};
    return std::pair{expand_in_schubert_basis(*fv, class_product(s, s)) == want, std::string()};
  });

  criterion("3", "gamma expansion and integral of gamma * sigma_[231]", 0, [] {
    auto fv = flag("A2");
    const WeylGroup& g = fv->group();
    std::vector<Polynomial> values(g.size(), Polynomial(2));
    values[at(g, "213")] = -(a(1) * a(2));
    values[at(g, "231")] = -(a(1) * a(2));
    LocalizedClass gamma(fv->group_ptr(), values);
    SchubertExpansion want{{at(g, "213"), -a(2)}, {at(g, "312"), Polynomial::one(2)}};
    bool expand_ok = expand_in_schubert_basis(*fv, gamma) == want;
    bool integral_ok = integrate(class_product(gamma, fv->schubert_class(at(g, "231")))) == a(1);
    return std::pair{expand_ok && integral_ok, std::string(expand_ok ? "" : "expansion ") + (integral_ok ? "" : "integral")};
  });

  criterion("4", "integral of sigma_w0 = 1 in A1, A2, A3", 0, [] {
    for (const char* label : {"A1", "A2", "A3"}) {
      auto fv = flag(label);
      const std::size_t r = fv->root_system().rank();
      if (!(integrate(fv->schubert_class(fv->group().longest())) == Polynomial::one(r)))
        return std::pair{false, std::string(label)};
    }
    return std::pair{true, std::string()};
  });

  criterion("5", "closed form = localization on consecutive triples, A1..A4; spot values", 60.0, [] {
    std::size_t n = 0;
    for (int r = 1; r <= 4; ++r) {
      PetersonCalculus pc(flag("A" + std::to_string(r)));
      auto rep = cross_validate(pc, 4);
      n += rep.checked;
      if (!rep.ok()) return std::pair{false, rep.to_json().dump()};
    }
    PetersonCalculus pc(flag("A2"));
    auto s = [](std::initializer_list<int> m) { return SubsetK::of(m); };
    auto c11 = pc.structure_constants(s({1}), s({1}));
    auto c12 = pc.structure_constants(s({1}), s({2}));
    bool spots = c11.at(s({1}).mask()) == PolyT::monomial(1, 1) && c12.at(s({1, 2}).mask()) == PolyT::constant(2) &&
                 c11.at(s({1, 2}).mask()) == PolyT::constant(1);
    return std::pair{spots, std::to_string(n) + " triples"};
  });

  criterion("6a", "sigma_v|_w Graham positive in A2, A3", 0, [] {
    std::vector<CheckResult> c;
    for (const char* label : {"A2", "A3"}) c.push_back(checks::restriction_positivity(*flag(label)));
    return from_checks(c);
  });

  criterion("6b", "c_uv^w Graham positive in A2, A3", 0, [] {
    std::vector<CheckResult> c;
    for (const char* label : {"A2", "A3"}) c.push_back(checks::structure_positivity(*flag(label), 1));
    return from_checks(c);
  });

  criterion("6c", "c_IJ^K nonnegative, graded, supported in A1..A4", 0, [] {
    std::vector<CheckResult> c;
    for (int r = 1; r <= 4; ++r) {
      PetersonCalculus pc(flag("A" + std::to_string(r)));
      c.push_back(checks::peterson_constants(pc, 1));
    }
    return from_checks(c);
  });

  criterion("6d", "b_w^K single nonnegative monomials in A1..A3", 0, [] {
    std::vector<CheckResult> c;
    for (int r = 1; r <= 3; ++r) {
      PetersonCalculus pc(flag("A" + std::to_string(r)));
      c.push_back(checks::pullback_monomials(pc));
    }
    return from_checks(c);
  });

  criterion("7", "word independence (A3), GKM and round trip (A2, A3), p-triangularity (rank <= 4)", 0, [] {
    std::vector<CheckResult> c;
    c.push_back(checks::billey_word_independence(*flag("A3")));
    for (const char* label : {"A2", "A3"}) {
      auto fv = flag(label);
      c.push_back(checks::gkm_condition(*fv));
      c.push_back(checks::schubert_roundtrip(*fv));
    }
    for (const char* label : {"A1", "A2", "A3", "A4", "B2", "G2", "B3", "C3", "B4", "C4", "D4", "F4"}) {
      PetersonCalculus pc(flag(label));
      c.push_back(checks::p_triangularity(pc));
    }
    return from_checks(c);
  });

  criterion("8", "c_IJ^K = sum_w c_{v_I v_J}^w b_w^K in A2, A3", 0, [] {
    std::vector<CheckResult> c;
    for (const char* label : {"A2", "A3"}) {
      PetersonCalculus pc(flag(label));
      c.push_back(checks::flag_consistency(pc));
    }
    return from_checks(c);
  });

  criterion("9a", "full G/B structure-constant table for A3", 10.0, [] {
    auto t = structure_table(*flag("A3"), 1);
    return std::pair{true, std::to_string(t.entries.size()) + " nonzero entries"};
  });

  criterion("9b", "full Peterson table for A5", 60.0, [] {
    PetersonCalculus pc(flag("A5"));
    auto t = peterson_table(pc, 1);
    return std::pair{true, std::to_string(t.size()) + " nonzero entries"};
  });

  criterion("9c", "table bytes identical for 1 and 4 workers (A3 gb, A4 peterson)", 0, [] {
    for (auto [type, kind] : {std::pair{"A3", "gb"}, std::pair{"A4", "peterson"}}) {
      auto one = cli_bytes({"table", type, "--kind", kind, "--out", "csv", "--jobs", "1"});
      auto four = cli_bytes({"table", type, "--kind", kind, "--out", "csv", "--jobs", "4"});
      if (one != four || one.empty()) return std::pair{false, std::string(type) + " " + kind};
    }
    return std::pair{true, std::string()};
  });

  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
