#ifndef SCHUBLOC_IO_HPP
#define SCHUBLOC_IO_HPP

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "errors.hpp"
#include "gkm.hpp"
#include "poly.hpp"
#include "rootsys.hpp"

namespace schubloc {

// RFC 4180 field: quoted when it contains a comma, quote or line break.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

// Header plus rows, LF line endings.
inline void write_csv(std::ostream& os, const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t k = 0; k < r.size(); ++k) {
      if (k) os << ',';
      os << csv_field(r[k]);
    }
    os << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

// ---------------------------------------------------------------------------
// Root system documents: {"cartan": [[2,-1],[-1,2]]}, optionally with "type".

inline RootSystem root_system_from_json(const nlohmann::json& j) {
  if (j.contains("cartan")) {
    CartanMatrix a;
    try {
      a = j.at("cartan").get<CartanMatrix>();
    } catch (const nlohmann::json::exception&) {
      throw InvalidCartan("\"cartan\" must be a matrix of integers");
    }
    return RootSystem::from_cartan(std::move(a));
  }
  if (j.contains("type") && j.at("type").is_string()) return RootSystem::from_label(j.at("type").get<std::string>());
  throw InvalidArgument("root system document needs \"cartan\" or \"type\"");
}

inline nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument(path.string() + ": " + e.what());
  }
}

// {"type": "A2", "degree": 2, "values": {"<canonical word>": <polynomial>}}
inline nlohmann::json class_to_json(const LocalizedClass& f) {
  const WeylGroup& g = f.group();
  const RootSystem& rs = g.root_system();
  nlohmann::json values = nlohmann::json::object();
  for (std::size_t w = 0; w < g.size(); ++w)
    if (!f.value(w).is_zero()) values[word_text(g.element(w))] = to_json(f.value(w));
  nlohmann::json j;
  if (rs.label()) j["type"] = *rs.label();
  else j["cartan"] = rs.cartan();
  j["degree"] = f.degree();
  j["values"] = values;
  return j;
}

inline LocalizedClass class_from_json(const nlohmann::json& j, std::shared_ptr<const WeylGroup> g) {
  const RootSystem& rs = g->root_system();
  if (!j.contains("values") || !j.at("values").is_object()) throw InvalidArgument("class JSON needs a \"values\" object");
  std::vector<Polynomial> values(g->size(), Polynomial(rs.rank()));
  std::vector<char> seen(g->size(), 0);
  for (const auto& [key, poly] : j.at("values").items()) {
    std::size_t w = g->index_of(parse_element(rs, key));
    if (seen[w]) throw InvalidArgument("class JSON lists " + key + " twice");
    seen[w] = 1;
    values[w] = polynomial_from_json(poly, rs.rank());
  }
  std::optional<int> degree;
  if (j.contains("degree")) degree = j.at("degree").get<int>();
  return LocalizedClass(std::move(g), std::move(values), degree);
}

// ---------------------------------------------------------------------------

/*
  Disk cache of Billey restrictions, one file per root system:

    schubloc-billey-cache 1
    type<TAB><root system key>
    <v word><TAB><w word><TAB><polynomial JSON><TAB><fnv1a-64 hex of the first three fields>

  Lines that fail to parse, fail the checksum or name elements that do not
  exist are skipped; the value is then recomputed.
*/
class DiskCache {
 public:
  static constexpr const char* kMagic = "schubloc-billey-cache 1";

  explicit DiskCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  std::filesystem::path file_for(const RootSystem& rs) const {
    std::string key = rs.key();
    std::string safe;
    for (char c : key) safe += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
    std::ostringstream name;
    name << "billey-" << safe << '-' << std::hex << std::setw(16) << std::setfill('0') << fnv1a(key) << ".tsv";
    return dir_ / name.str();
  }

  // Returns the number of entries accepted.
  std::size_t load(FlagVariety& fv) const {
    const WeylGroup& g = fv.group();
    const RootSystem& rs = g.root_system();
    std::ifstream in(file_for(rs));
    if (!in) return 0;
    std::string line;
    if (!std::getline(in, line) || line != kMagic) return 0;
    if (!std::getline(in, line) || line != "type\t" + rs.key()) return 0;
    std::size_t accepted = 0;
    while (std::getline(in, line)) {
      auto fields = split_tabs(line);
      if (fields.size() != 4) continue;
      if (hex(fnv1a(fields[0] + '\t' + fields[1] + '\t' + fields[2])) != fields[3]) continue;
      try {
        std::size_t v = g.index_of(parse_element(rs, fields[0]));
        std::size_t w = g.index_of(parse_element(rs, fields[1]));
        Polynomial p = polynomial_from_json(nlohmann::json::parse(fields[2]), rs.rank());
        if (!p.is_zero() && !p.is_homogeneous_of_degree(g.length(v))) continue;
        fv.cache().insert(fv.key(v, w), std::move(p));
        ++accepted;
      } catch (const std::exception&) {
        continue;
      }
    }
    return accepted;
  }

  void save(const FlagVariety& fv) const {
    const WeylGroup& g = fv.group();
    const RootSystem& rs = g.root_system();
    std::filesystem::create_directories(dir_);
    auto path = file_for(rs);
    auto tmp = path;
    tmp += ".tmp";
    {
      std::ofstream out(tmp, std::ios::trunc);
      if (!out) throw InvalidArgument("cannot write cache file " + tmp.string());
      out << kMagic << '\n' << "type\t" << rs.key() << '\n';
      for (const auto& [key, p] : fv.cache().snapshot()) {
        std::string body = word_text(g.element(key / g.size())) + '\t' + word_text(g.element(key % g.size())) + '\t' +
                           to_json(p).dump();
        out << body << '\t' << hex(fnv1a(body)) << '\n';
      }
    }
    std::filesystem::rename(tmp, path);
  }

  static std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
    return h;
  }

 private:
  static std::string hex(std::uint64_t x) {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << x;
    return os.str();
  }

  static std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out(1);
    for (char c : line) {
      if (c == '\t') out.emplace_back();
      else out.back() += c;
    }
    return out;
  }

  std::filesystem::path dir_;
};

}  // namespace schubloc

#endif  // SCHUBLOC_IO_HPP
