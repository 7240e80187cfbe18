#ifndef SCHUBLOC_CLI_HPP
#define SCHUBLOC_CLI_HPP

#include <algorithm>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "errors.hpp"
#include "gkm.hpp"
#include "io.hpp"
#include "peterson.hpp"
#include "rootsys.hpp"
#include "verify.hpp"

namespace schubloc::cli {

enum class Format { text, csv, json };

enum Exit : int { kOk = 0, kVerification = 1, kUsage = 2, kResourceCap = 3 };

struct JobConfig {
  std::string type_positional;
  std::string type_flag;
  std::string cartan_file;
  std::string out = "text";
  std::string cache_dir;
  unsigned jobs = 1;
  std::uint64_t max_weyl = WeylGroup::kDefaultMaxSize;
  std::string coxeter_order = "increasing";

  Format format() const {
    if (out == "csv") return Format::csv;
    if (out == "json") return Format::json;
    return Format::text;
  }
  unsigned workers() const { return jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : jobs; }
};

// Rows sorted lexicographically by rendered strings; emitted as CSV, TSV-like
// text or a JSON array of objects keyed by the header.
struct Rows {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void write(std::ostream& os, Format f, const nlohmann::json& meta) {
    std::sort(rows.begin(), rows.end());
    if (f == Format::csv) {
      write_csv(os, header, rows);
    } else if (f == Format::json) {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& r : rows) {
        nlohmann::json o = nlohmann::json::object();
        for (std::size_t k = 0; k < header.size(); ++k) o[header[k]] = r[k];
        arr.push_back(o);
      }
      nlohmann::json doc = meta;
      doc["rows"] = arr;
      os << doc.dump(2) << '\n';
    } else {
      auto line = [&](const std::vector<std::string>& r) {
        for (std::size_t k = 0; k < r.size(); ++k) os << (k ? "\t" : "") << r[k];
        os << '\n';
      };
      line(header);
      for (const auto& r : rows) line(r);
    }
  }
};

class Session {
 public:
  Session(const JobConfig& cfg, std::optional<RootSystem> fallback = std::nullopt) : cfg_(cfg) {
    auto rs = std::make_shared<const RootSystem>(resolve(cfg, std::move(fallback)));
    fv_ = std::make_shared<FlagVariety>(std::make_shared<const WeylGroup>(rs, cfg.max_weyl));
    if (!cfg.cache_dir.empty()) {
      cache_.emplace(cfg.cache_dir);
      cache_->load(*fv_);
      loaded_ = fv_->cache().size();
    }
  }

  static RootSystem resolve(const JobConfig& cfg, std::optional<RootSystem> fallback) {
    if (!cfg.type_positional.empty() && !cfg.type_flag.empty() && cfg.type_positional != cfg.type_flag)
      throw InvalidArgument("conflicting root system types '" + cfg.type_positional + "' and '" + cfg.type_flag + "'");
    std::string label = cfg.type_flag.empty() ? cfg.type_positional : cfg.type_flag;
    if (!label.empty() && !cfg.cartan_file.empty()) throw InvalidArgument("give either a type label or --cartan, not both");
    if (!cfg.cartan_file.empty()) return root_system_from_json(read_json_file(cfg.cartan_file));
    if (!label.empty()) return RootSystem::from_label(label);
    if (fallback) return std::move(*fallback);
    throw InvalidArgument("no root system given (use a type label, --type or --cartan)");
  }

  FlagVariety& fv() { return *fv_; }
  const WeylGroup& group() const { return fv_->group(); }
  const RootSystem& rs() const { return fv_->root_system(); }

  PetersonCalculus& peterson() {
    if (!pc_) {
      CoxeterOrder order;
      if (cfg_.coxeter_order == "increasing") order = CoxeterOrder::increasing;
      else if (cfg_.coxeter_order == "decreasing") order = CoxeterOrder::decreasing;
      else throw InvalidArgument("unknown Coxeter order '" + cfg_.coxeter_order + "'");
      pc_.emplace(fv_, order);
    }
    return *pc_;
  }

  std::size_t element(const std::string& text) const { return group().index_of(parse_element(rs(), text)); }
  std::string name(std::size_t w) const { return word_text(group().element(w)); }

  nlohmann::json meta(const std::string& kind) const {
    nlohmann::json j;
    if (rs().label()) j["type"] = *rs().label();
    else j["cartan"] = rs().cartan();
    j["kind"] = kind;
    return j;
  }

  // Persists new entries; the bytes written to `out` never depend on it.
  void finish() {
    if (cache_ && fv_->cache().size() != loaded_) cache_->save(*fv_);
  }

 private:
  JobConfig cfg_;
  std::shared_ptr<FlagVariety> fv_;
  std::optional<PetersonCalculus> pc_;
  std::optional<DiskCache> cache_;
  std::size_t loaded_ = 0;
};

inline SubsetK parse_subset(const std::string& s, int rank) {
  try {
    return SubsetK::parse(s, rank);
  } catch (const std::logic_error&) {
    throw InvalidArgument("bad subset '" + s + "'");
  }
}

inline void add_common(CLI::App* sub, JobConfig& cfg) {
  sub->add_option("TYPE", cfg.type_positional, "Root system label, e.g. A3, B2, G2");
  sub->add_option("--type", cfg.type_flag, "Root system label");
  sub->add_option("--cartan", cfg.cartan_file, "JSON file {\"cartan\": [[...]]}");
  sub->add_option("--out", cfg.out, "Output format")->check(CLI::IsMember({"text", "csv", "json"}));
  sub->add_option("--cache", cfg.cache_dir, "Directory for the restriction cache");
  sub->add_option("--jobs", cfg.jobs, "Worker threads (0 = all cores)");
  sub->add_option("--max-weyl", cfg.max_weyl, "Abort if |W| exceeds this");
  sub->add_option("--coxeter-order", cfg.coxeter_order, "Coxeter element word order for Peterson classes")
      ->check(CLI::IsMember({"increasing", "decreasing"}));
}

inline int cmd_restrict(const JobConfig& cfg, const std::string& cls, const std::string& at, std::ostream& out) {
  Session s(cfg);
  std::size_t v = s.element(cls);
  Format f = cfg.format();
  if (!at.empty()) {
    std::size_t w = s.element(at);
    const Polynomial& p = s.fv().restriction(v, w);
    if (f == Format::text) {
      out << to_text(p) << '\n';
    } else if (f == Format::csv) {
      write_csv(out, {"v", "w", "restriction"}, {{s.name(v), s.name(w), to_text(p)}});
    } else {
      nlohmann::json j = s.meta("restriction");
      j["v"] = s.name(v);
      j["w"] = s.name(w);
      j["restriction"] = to_text(p);
      j["polynomial"] = to_json(p);
      out << j.dump(2) << '\n';
    }
  } else if (f == Format::json) {
    out << class_to_json(s.fv().schubert_class(v)).dump(2) << '\n';
  } else {
    Rows r{{"v", "w", "restriction"}, {}};
    for (std::size_t w = 0; w < s.group().size(); ++w) {
      const Polynomial& p = s.fv().restriction(v, w);
      if (!p.is_zero()) r.rows.push_back({s.name(v), s.name(w), to_text(p)});
    }
    r.write(out, f, {});
  }
  s.finish();
  return kOk;
}

inline int cmd_mult(const JobConfig& cfg, const std::string& u_text, const std::string& v_text, std::ostream& out) {
  Session s(cfg);
  std::size_t u = s.element(u_text), v = s.element(v_text);
  Rows r{{"u", "v", "w", "coefficient"}, {}};
  for (const auto& [w, c] : structure_constants(s.fv(), u, v)) r.rows.push_back({s.name(u), s.name(v), s.name(w), to_text(c)});
  r.write(out, cfg.format(), s.meta("gb"));
  s.finish();
  return kOk;
}

inline int cmd_expand(const JobConfig& cfg, const std::string& input, std::ostream& out) {
  nlohmann::json doc = read_json_file(input);
  std::optional<RootSystem> declared;
  if (doc.contains("type") || doc.contains("cartan")) declared = root_system_from_json(doc);
  Session s(cfg, declared);
  if (declared && declared->cartan() != s.rs().cartan())
    throw InvalidArgument("class document is for " + declared->key() + ", not " + s.rs().key());
  LocalizedClass f = class_from_json(doc, s.fv().group_ptr());
  Rows r{{"w", "coefficient"}, {}};
  for (const auto& [w, c] : expand_in_schubert_basis(s.fv(), f)) r.rows.push_back({s.name(w), to_text(c)});
  r.write(out, cfg.format(), s.meta("expansion"));
  s.finish();
  return kOk;
}

inline int cmd_peterson_mult(const JobConfig& cfg, const std::string& i_text, const std::string& j_text, std::ostream& out) {
  Session s(cfg);
  PetersonCalculus& pc = s.peterson();
  SubsetK i = parse_subset(i_text, pc.rank()), j = parse_subset(j_text, pc.rank());
  Rows r{{"I", "J", "K", "coefficient"}, {}};
  for (const auto& [k, c] : pc.structure_constants(i, j)) r.rows.push_back({i.to_string(), j.to_string(), SubsetK(k).to_string(), to_text(c)});
  r.write(out, cfg.format(), s.meta("peterson"));
  s.finish();
  return kOk;
}

inline int cmd_pullback(const JobConfig& cfg, const std::string& w_text, std::ostream& out) {
  Session s(cfg);
  PetersonCalculus& pc = s.peterson();
  std::size_t w = s.element(w_text);
  Rows r{{"w", "K", "coefficient"}, {}};
  for (const auto& [k, c] : pc.pullback_expansion(w)) r.rows.push_back({s.name(w), SubsetK(k).to_string(), to_text(c)});
  r.write(out, cfg.format(), s.meta("pullback"));
  s.finish();
  return kOk;
}

inline int cmd_verify(const JobConfig& cfg, const std::string& suite, std::ostream& out) {
  Session s(cfg);
  VerifyReport rep = run_verify_suite(s.peterson(), suite, cfg.workers());
  Format f = cfg.format();
  if (f == Format::json) {
    out << rep.to_json().dump(2) << '\n';
  } else if (f == Format::csv) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& c : rep.checks)
      rows.push_back({c.name, std::to_string(c.checked), std::to_string(c.failures.size()), c.ok() ? "PASS" : "FAIL"});
    write_csv(out, {"check", "checked", "failed", "status"}, rows);
  } else {
    rep.write_text(out);
  }
  s.finish();
  return rep.ok() ? kOk : kVerification;
}

inline int cmd_table(const JobConfig& cfg, const std::string& kind, std::ostream& out) {
  Session s(cfg);
  Rows r;
  if (kind == "gb") {
    r.header = {"u", "v", "w", "coefficient"};
    for (const auto& e : structure_table(s.fv(), cfg.workers()).entries)
      r.rows.push_back({s.name(e.u), s.name(e.v), s.name(e.w), to_text(e.coeff)});
  } else if (kind == "peterson") {
    r.header = {"I", "J", "K", "coefficient"};
    for (const auto& e : peterson_table(s.peterson(), cfg.workers()))
      r.rows.push_back({e.i.to_string(), e.j.to_string(), e.k.to_string(), to_text(e.coeff)});
  } else {
    r.header = {"w", "K", "coefficient"};
    PetersonCalculus& pc = s.peterson();
    const std::size_t n = s.group().size();
    std::vector<PetersonExpansion> rows(n);
    parallel_for(n, cfg.workers(), [&](std::size_t w) { rows[w] = pc.pullback_expansion(w); });
    for (std::size_t w = 0; w < n; ++w)
      for (const auto& [k, c] : rows[w]) r.rows.push_back({s.name(w), SubsetK(k).to_string(), to_text(c)});
  }
  r.write(out, cfg.format(), s.meta(kind));
  s.finish();
  return kOk;
}

// Exit statuses: 0 success, 1 mathematical failure, 2 usage error,
// 3 resource cap. Data goes to `out`, diagnostics to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Equivariant and Peterson Schubert calculus by localization", "schubloc"};
  app.require_subcommand(1);
  JobConfig cfg;
  std::string cls, at, u, v, input, i_set, j_set, w, suite = "all", kind = "gb";

  auto* restrict_cmd = app.add_subcommand("restrict", "Restrictions of a Schubert class to fixed points");
  add_common(restrict_cmd, cfg);
  restrict_cmd->add_option("--class", cls, "Weyl element v of sigma_v")->required();
  restrict_cmd->add_option("--at", at, "Fixed point w (all fixed points if omitted)");

  auto* mult_cmd = app.add_subcommand("mult", "Expand sigma_u * sigma_v in the Schubert basis");
  add_common(mult_cmd, cfg);
  mult_cmd->add_option("--u", u, "Weyl element u")->required();
  mult_cmd->add_option("--v", v, "Weyl element v")->required();

  auto* expand_cmd = app.add_subcommand("expand", "Expand a class given as restriction JSON");
  add_common(expand_cmd, cfg);
  expand_cmd->add_option("--input", input, "Class JSON file")->required();

  auto* pmult_cmd = app.add_subcommand("peterson-mult", "Expand p_I * p_J in the Peterson basis");
  add_common(pmult_cmd, cfg);
  pmult_cmd->add_option("--I", i_set, "Subset such as 1,2")->required();
  pmult_cmd->add_option("--J", j_set, "Subset such as 2")->required();

  auto* pull_cmd = app.add_subcommand("pullback", "Expand the pullback of sigma_w in the Peterson basis");
  add_common(pull_cmd, cfg);
  pull_cmd->add_option("--w", w, "Weyl element w")->required();

  auto* verify_cmd = app.add_subcommand("verify", "Run an exhaustive verification suite");
  add_common(verify_cmd, cfg);
  verify_cmd->add_option("--suite", suite, "Suite name")->check(CLI::IsMember(verify_suites()));

  auto* table_cmd = app.add_subcommand("table", "Full structure-constant or pullback table");
  add_common(table_cmd, cfg);
  table_cmd->add_option("--kind", kind, "gb, peterson or pullback")->check(CLI::IsMember({"gb", "peterson", "pullback"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (restrict_cmd->parsed()) return cmd_restrict(cfg, cls, at, out);
    if (mult_cmd->parsed()) return cmd_mult(cfg, u, v, out);
    if (expand_cmd->parsed()) return cmd_expand(cfg, input, out);
    if (pmult_cmd->parsed()) return cmd_peterson_mult(cfg, i_set, j_set, out);
    if (pull_cmd->parsed()) return cmd_pullback(cfg, w, out);
    if (verify_cmd->parsed()) return cmd_verify(cfg, suite, out);
    return cmd_table(cfg, kind, out);
  } catch (const ResourceCapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kResourceCap;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kVerification;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace schubloc::cli

#endif  // SCHUBLOC_CLI_HPP
