#ifndef SCHUBLOC_ROOTSYS_HPP
#define SCHUBLOC_ROOTSYS_HPP

#include <algorithm>
#include <atomic>
#include <bit>
#include <cctype>
#include <compare>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "errors.hpp"

namespace schubloc {

using CartanMatrix = std::vector<std::vector<int>>;

// Coordinates in the simple-root basis.
struct Root {
  std::vector<int> coeffs;

  int height() const {
    int h = 0;
    for (int c : coeffs) h += c;
    return h;
  }
  bool is_positive() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](int c) { return c >= 0; }) &&
           std::any_of(coeffs.begin(), coeffs.end(), [](int c) { return c != 0; });
  }
  Root operator-() const {
    Root r = *this;
    for (int& c : r.coeffs) c = -c;
    return r;
  }
  friend bool operator==(const Root&, const Root&) = default;
  friend auto operator<=>(const Root&, const Root&) = default;
};

struct VectorHash {
  template <class T>
  std::size_t operator()(const std::vector<T>& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (const T& x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

/*
  Finite crystallographic root system built from a Cartan matrix.

  Convention: cartan[i][j] = <alpha_i^vee, alpha_j>, so the simple reflection
  s_i acts by s_i(alpha_j) = alpha_j - cartan[i][j] * alpha_i.

  Roots are indexed 0..2N-1: index k < N is positive_roots()[k], index k >= N
  is the negative of positive_roots()[k - N]. Positive roots are ordered by
  height, then by descending coefficient vector, so alpha_1..alpha_r occupy
  indices 0..r-1.
*/
class RootSystem {
 public:
  static constexpr std::size_t kDefaultMaxRoots = 4096;

  static RootSystem from_cartan(CartanMatrix cartan, std::optional<std::string> label = std::nullopt,
                                std::size_t max_positive_roots = kDefaultMaxRoots) {
    validate_cartan(cartan);
    RootSystem rs;
    rs.rank_ = static_cast<int>(cartan.size());
    rs.cartan_ = std::move(cartan);
    rs.label_ = std::move(label);
    rs.build_roots(max_positive_roots);
    return rs;
  }

  // "A3", "B2", "G2", "E6", ...; also accepts "A_3".
  static RootSystem from_label(std::string_view label) {
    std::string l;
    for (char c : label)
      if (c != '_' && c != ' ') l += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (l.size() < 2 || !std::isalpha(static_cast<unsigned char>(l[0])))
      throw InvalidArgument("unknown root system label '" + std::string(label) + "'");
    int n = 0;
    try {
      std::size_t pos = 0;
      n = std::stoi(l.substr(1), &pos);
      if (pos != l.size() - 1) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw InvalidArgument("unknown root system label '" + std::string(label) + "'");
    }
    return from_cartan(standard_cartan(l[0], n), l);
  }

  static CartanMatrix standard_cartan(char family, int n) {
    auto bad = [&] {
      return InvalidArgument("unknown root system label '" + std::string(1, family) + std::to_string(n) + "'");
    };
    if (n < 1 || n > 32) throw bad();
    CartanMatrix a(n, std::vector<int>(n, 0));
    auto chain = [&](int len) {
      for (int i = 0; i < len; ++i) {
        a[i][i] = 2;
        if (i + 1 < len) a[i][i + 1] = a[i + 1][i] = -1;
      }
    };
    switch (family) {
      case 'A':
        chain(n);
        break;
      case 'B':
        if (n < 2) throw bad();
        chain(n);
        a[n - 1][n - 2] = -2;  // alpha_n short
        break;
      case 'C':
        if (n < 2) throw bad();
        chain(n);
        a[n - 2][n - 1] = -2;  // alpha_n long
        break;
      case 'D':
        if (n < 4) throw bad();
        chain(n - 1);
        a[n - 1][n - 1] = 2;
        a[n - 1][n - 3] = a[n - 3][n - 1] = -1;
        break;
      case 'E':
        if (n < 6 || n > 8) throw bad();
        // Bourbaki: 1-3-4-5-6-(7-8), 2 attached to 4.
        for (int i = 0; i < n; ++i) a[i][i] = 2;
        {
          auto link = [&](int i, int j) { a[i - 1][j - 1] = a[j - 1][i - 1] = -1; };
          link(1, 3);
          link(3, 4);
          link(2, 4);
          for (int i = 4; i < n; ++i) link(i, i + 1);
        }
        break;
      case 'F':
        if (n != 4) throw bad();
        chain(4);
        a[2][1] = -2;
        break;
      case 'G':
        if (n != 2) throw bad();
        chain(2);
        a[1][0] = -3;
        break;
      default:
        throw bad();
    }
    return a;
  }

  int rank() const { return rank_; }
  const CartanMatrix& cartan() const { return cartan_; }
  const std::optional<std::string>& label() const { return label_; }
  int num_positive() const { return static_cast<int>(positive_.size()); }
  int num_roots() const { return 2 * num_positive(); }
  const std::vector<Root>& positive_roots() const { return positive_; }

  Root root(int idx) const {
    return idx < num_positive() ? positive_[idx] : -positive_[idx - num_positive()];
  }
  bool is_positive_index(int idx) const { return idx < num_positive(); }
  int negate_index(int idx) const { return idx < num_positive() ? idx + num_positive() : idx - num_positive(); }
  int simple_index(int i) const { return i; }
  Root simple_root(int i) const { return positive_.at(i); }

  int root_index(const Root& r) const {
    bool neg = !r.coeffs.empty() && std::any_of(r.coeffs.begin(), r.coeffs.end(), [](int c) { return c < 0; });
    auto it = index_.find(neg ? (-r).coeffs : r.coeffs);
    if (it == index_.end()) throw InvalidArgument("vector is not a root of this system");
    return neg ? it->second + num_positive() : it->second;
  }

  // Index of s_i(root idx).
  int reflect_index(int i, int idx) const { return reflect_[static_cast<std::size_t>(i) * num_roots() + idx]; }

  Root reflect(int i, const Root& r) const {
    Root out = r;
    int pairing = 0;
    for (int j = 0; j < rank_; ++j) pairing += cartan_[i][j] * r.coeffs[j];
    out.coeffs[i] -= pairing;
    return out;
  }

  bool is_type_a() const { return cartan_ == standard_cartan('A', rank_); }

  // Label when known, otherwise a canonical rendering of the Cartan matrix.
  std::string key() const {
    if (label_) return *label_;
    std::string s = "cartan[";
    for (int i = 0; i < rank_; ++i) {
      if (i) s += ';';
      for (int j = 0; j < rank_; ++j) {
        if (j) s += ',';
        s += std::to_string(cartan_[i][j]);
      }
    }
    return s + "]";
  }

  // |W| from the root heights: the exponents m_i are the dual partition of the
  // height counts and |W| = prod (m_i + 1).
  std::uint64_t weyl_order() const {
    std::vector<int> count_by_height;
    for (const Root& r : positive_) {
      auto h = static_cast<std::size_t>(r.height());
      if (count_by_height.size() <= h) count_by_height.resize(h + 1, 0);
      ++count_by_height[h];
    }
    std::vector<int> exponents(rank_, 0);
    for (std::size_t h = 1; h < count_by_height.size(); ++h)
      for (int k = 0; k < count_by_height[h] && k < rank_; ++k) ++exponents[k];
    std::uint64_t order = 1;
    for (int m : exponents) order *= static_cast<std::uint64_t>(m + 1);
    return order;
  }

  friend bool operator==(const RootSystem& a, const RootSystem& b) { return a.cartan_ == b.cartan_; }

 private:
  static void validate_cartan(const CartanMatrix& a) {
    const std::size_t n = a.size();
    if (n == 0) throw InvalidCartan("Cartan matrix must be nonempty");
    for (const auto& row : a)
      if (row.size() != n) throw InvalidCartan("Cartan matrix must be square");
    for (std::size_t i = 0; i < n; ++i) {
      if (a[i][i] != 2) throw InvalidCartan("Cartan matrix must have 2 on the diagonal");
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        if (a[i][j] > 0) throw InvalidCartan("Cartan matrix off-diagonal entries must be nonpositive");
        if ((a[i][j] == 0) != (a[j][i] == 0)) throw InvalidCartan("Cartan matrix zero pattern must be symmetric");
        if (a[i][j] * a[j][i] >= 4) throw NotFiniteType("Cartan matrix is not of finite type");
      }
    }
  }

  void build_roots(std::size_t max_positive) {
    std::unordered_set<std::vector<int>, VectorHash> seen;
    std::vector<Root> frontier;
    for (int i = 0; i < rank_; ++i) {
      Root r{std::vector<int>(rank_, 0)};
      r.coeffs[i] = 1;
      seen.insert(r.coeffs);
      frontier.push_back(r);
    }
    std::vector<Root> all = frontier;
    while (!frontier.empty()) {
      std::vector<Root> next;
      for (const Root& r : frontier) {
        for (int i = 0; i < rank_; ++i) {
          Root s = reflect(i, r);
          bool pos = std::all_of(s.coeffs.begin(), s.coeffs.end(), [](int c) { return c >= 0; });
          bool neg = std::all_of(s.coeffs.begin(), s.coeffs.end(), [](int c) { return c <= 0; });
          if (!pos && !neg) throw NotFiniteType("reflection produced a root of mixed sign");
          if (neg) continue;
          if (seen.insert(s.coeffs).second) {
            next.push_back(s);
            all.push_back(s);
            if (all.size() > max_positive)
              throw NotFiniteType("positive-root closure exceeds " + std::to_string(max_positive) +
                                  " roots; not of finite type");
          }
        }
      }
      frontier = std::move(next);
    }
    std::sort(all.begin(), all.end(), [](const Root& a, const Root& b) {
      if (a.height() != b.height()) return a.height() < b.height();
      return a.coeffs > b.coeffs;
    });
    positive_ = std::move(all);
    for (int k = 0; k < num_positive(); ++k) index_.emplace(positive_[k].coeffs, k);

    reflect_.assign(static_cast<std::size_t>(rank_) * num_roots(), -1);
    for (int i = 0; i < rank_; ++i)
      for (int idx = 0; idx < num_roots(); ++idx)
        reflect_[static_cast<std::size_t>(i) * num_roots() + idx] = root_index(reflect(i, root(idx)));
  }

  int rank_ = 0;
  CartanMatrix cartan_;
  std::optional<std::string> label_;
  std::vector<Root> positive_;
  std::unordered_map<std::vector<int>, int, VectorHash> index_;
  std::vector<int> reflect_;
};

// ---------------------------------------------------------------------------

// Subset of the simple roots; bit i stands for simple index i (rendered i+1).
class SubsetK {
 public:
  SubsetK() = default;
  explicit SubsetK(std::uint32_t mask) : mask_(mask) {}

  // 1-based members, as written by users.
  static SubsetK of(std::initializer_list<int> one_based) {
    std::uint32_t m = 0;
    for (int i : one_based) m |= 1u << (i - 1);
    return SubsetK(m);
  }

  // "1,2", "1 2", "{1,2}", "" (empty set).
  static SubsetK parse(std::string_view s, int rank) {
    std::uint32_t m = 0;
    std::string num;
    auto flush = [&] {
      if (num.empty()) return;
      int i = std::stoi(num);
      if (i < 1 || i > rank)
        throw InvalidArgument("subset member " + num + " outside 1.." + std::to_string(rank));
      m |= 1u << (i - 1);
      num.clear();
    };
    for (char c : s) {
      if (std::isdigit(static_cast<unsigned char>(c))) {
        num += c;
      } else if (c == ',' || c == ' ' || c == '{' || c == '}') {
        flush();
      } else {
        throw InvalidArgument("cannot parse subset '" + std::string(s) + "'");
      }
    }
    flush();
    return SubsetK(m);
  }

  std::uint32_t mask() const { return mask_; }
  int size() const { return std::popcount(mask_); }
  bool empty() const { return mask_ == 0; }
  bool contains(int i) const { return (mask_ >> i) & 1u; }
  bool is_subset_of(SubsetK o) const { return (mask_ & ~o.mask_) == 0; }
  SubsetK operator|(SubsetK o) const { return SubsetK(mask_ | o.mask_); }

  // 0-based members in increasing order.
  std::vector<int> members() const {
    std::vector<int> v;
    for (int i = 0; i < 32; ++i)
      if (contains(i)) v.push_back(i);
    return v;
  }

  bool within_rank(int rank) const { return rank >= 32 || (mask_ >> rank) == 0; }

  bool is_consecutive() const {
    if (mask_ == 0) return false;
    std::uint32_t shifted = mask_ >> std::countr_zero(mask_);
    return (shifted & (shifted + 1)) == 0;
  }

  // Smallest and largest 1-based members.
  int tail() const { return std::countr_zero(mask_) + 1; }
  int head() const { return 32 - std::countl_zero(mask_); }

  std::string to_string() const {
    std::string s;
    for (int i : members()) {
      if (!s.empty()) s += ',';
      s += std::to_string(i + 1);
    }
    return s;
  }

  friend bool operator==(SubsetK, SubsetK) = default;

 private:
  std::uint32_t mask_ = 0;
};

// All subsets of {1..rank} ordered by size, then by mask; a linear extension of
// inclusion.
inline std::vector<SubsetK> subsets_by_size(int rank) {
  std::vector<SubsetK> out;
  for (std::uint32_t m = 0; m < (1u << rank); ++m) out.emplace_back(m);
  std::stable_sort(out.begin(), out.end(), [](SubsetK a, SubsetK b) { return a.size() < b.size(); });
  return out;
}

// ---------------------------------------------------------------------------

/*
  A Weyl group element. The identity key is the induced permutation of the
  root indices; the lexicographically smallest reduced word is carried along
  as derived data.
*/
class WeylElt {
 public:
  WeylElt() = default;

  static WeylElt identity(const RootSystem& rs) {
    std::vector<std::int16_t> p(rs.num_roots());
    for (int k = 0; k < rs.num_roots(); ++k) p[k] = static_cast<std::int16_t>(k);
    return from_perm(rs, std::move(p));
  }

  static WeylElt simple(const RootSystem& rs, int i) {
    if (i < 0 || i >= rs.rank()) throw InvalidArgument("simple reflection index out of range");
    const int one = i;
    return from_word(rs, std::span<const int>(&one, 1));
  }

  // Product s_{w[0]} s_{w[1]} ... (any word, not necessarily reduced).
  static WeylElt from_word(const RootSystem& rs, std::span<const int> word) {
    std::vector<std::int16_t> p(rs.num_roots());
    for (int k = 0; k < rs.num_roots(); ++k) p[k] = static_cast<std::int16_t>(k);
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
      if (*it < 0 || *it >= rs.rank()) throw InvalidArgument("simple reflection index out of range");
      for (auto& x : p) x = static_cast<std::int16_t>(rs.reflect_index(*it, x));
    }
    return from_perm(rs, std::move(p));
  }

  static WeylElt from_perm(const RootSystem& rs, std::vector<std::int16_t> perm) {
    WeylElt w;
    w.perm_ = std::move(perm);
    w.length_ = 0;
    for (int k = 0; k < rs.num_positive(); ++k)
      if (!rs.is_positive_index(w.perm_[k])) ++w.length_;
    w.word_ = lex_min_word(rs, w.perm_);
    return w;
  }

  const std::vector<std::int16_t>& perm() const { return perm_; }
  const std::vector<int>& word() const { return word_; }
  int length() const { return length_; }
  int act(int root_idx) const { return perm_[root_idx]; }

  friend bool operator==(const WeylElt& a, const WeylElt& b) { return a.perm_ == b.perm_; }

 private:
  // Repeatedly strip the smallest left descent: s_i is a left descent of x iff
  // x^{-1}(alpha_i) < 0.
  static std::vector<int> lex_min_word(const RootSystem& rs, const std::vector<std::int16_t>& perm) {
    const int n = rs.num_roots();
    std::vector<int> inv(n);
    for (int k = 0; k < n; ++k) inv[perm[k]] = k;
    std::vector<int> word;
    for (;;) {
      int d = -1;
      for (int i = 0; i < rs.rank(); ++i) {
        if (!rs.is_positive_index(inv[rs.simple_index(i)])) {
          d = i;
          break;
        }
      }
      if (d < 0) break;
      word.push_back(d);
      // (s_d x)^{-1} = x^{-1} s_d
      std::vector<int> next(n);
      for (int k = 0; k < n; ++k) next[k] = inv[rs.reflect_index(d, k)];
      inv = std::move(next);
    }
    return word;
  }

  std::vector<std::int16_t> perm_;
  std::vector<int> word_;
  int length_ = 0;
};

struct WeylEltHash {
  std::size_t operator()(const WeylElt& w) const noexcept { return VectorHash{}(w.perm()); }
};

inline WeylElt multiply(const RootSystem& rs, const WeylElt& u, const WeylElt& v) {
  std::vector<std::int16_t> p(v.perm().size());
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = u.perm()[v.perm()[k]];
  return WeylElt::from_perm(rs, std::move(p));
}

inline WeylElt inverse(const RootSystem& rs, const WeylElt& w) {
  std::vector<std::int16_t> p(w.perm().size());
  for (std::size_t k = 0; k < p.size(); ++k) p[w.perm()[k]] = static_cast<std::int16_t>(k);
  return WeylElt::from_perm(rs, std::move(p));
}

inline Root act_on_root(const RootSystem& rs, const WeylElt& w, const Root& r) {
  return rs.root(w.act(rs.root_index(r)));
}

// Indices appearing in a reduced word (the same for every reduced word).
inline SubsetK support(const WeylElt& w) {
  std::uint32_t m = 0;
  for (int i : w.word()) m |= 1u << i;
  return SubsetK(m);
}

// Bruhat order through the subword property, one letter of a fixed reduced
// word of w at a time: if s w < w then u <= w iff min(u, s u) <= s w.
inline bool bruhat_leq(const RootSystem& rs, const WeylElt& u, const WeylElt& w) {
  if (u.length() > w.length()) return false;
  std::vector<std::int16_t> x = u.perm();
  const int n = rs.num_roots();
  std::vector<int> inv(n);
  for (int letter : w.word()) {
    for (int k = 0; k < n; ++k) inv[x[k]] = k;
    if (!rs.is_positive_index(inv[rs.simple_index(letter)])) {
      for (auto& y : x) y = static_cast<std::int16_t>(rs.reflect_index(letter, y));
    }
  }
  for (int k = 0; k < n; ++k)
    if (x[k] != k) return false;
  return true;
}

// Longest element of the parabolic subgroup W_K: climb by left
// multiplication with s_i, i in K, while the length grows.
inline WeylElt longest_element(const RootSystem& rs, SubsetK k) {
  if (!k.within_rank(rs.rank())) throw InvalidArgument("subset exceeds the rank");
  std::vector<int> word;
  WeylElt x = WeylElt::identity(rs);
  for (bool grew = true; grew;) {
    grew = false;
    for (int i : k.members()) {
      WeylElt y = multiply(rs, WeylElt::simple(rs, i), x);
      if (y.length() > x.length()) {
        x = std::move(y);
        grew = true;
      }
    }
  }
  return x;
}

enum class CoxeterOrder { increasing, decreasing };

// Product of s_i over i in K, in the requested index order.
inline WeylElt coxeter_element(const RootSystem& rs, SubsetK k, CoxeterOrder order = CoxeterOrder::increasing) {
  if (k.empty()) throw InvalidArgument("Coxeter element of the empty subset is undefined");
  if (!k.within_rank(rs.rank())) throw InvalidArgument("subset exceeds the rank");
  std::vector<int> word = k.members();
  if (order == CoxeterOrder::decreasing) std::reverse(word.begin(), word.end());
  return WeylElt::from_word(rs, word);
}

// ---------------------------------------------------------------------------

/*
  The full group with a fixed enumeration: graded by length, then by the
  lexicographically smallest reduced word. Elements are addressed by their
  position in this enumeration, and multiplication by simple reflections is
  tabulated in both directions.
*/
class WeylGroup {
 public:
  static constexpr std::uint64_t kDefaultMaxSize = 50000;
  static constexpr std::size_t kBruhatMemoLimit = 2048;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  explicit WeylGroup(std::shared_ptr<const RootSystem> rs, std::uint64_t max_size = kDefaultMaxSize)
      : rs_(std::move(rs)) {
    const std::uint64_t order = rs_->weyl_order();
    if (order > max_size)
      throw ResourceCapExceeded("|W| = " + std::to_string(order) + " exceeds the cap of " +
                                std::to_string(max_size));
    enumerate();
  }

  explicit WeylGroup(const RootSystem& rs, std::uint64_t max_size = kDefaultMaxSize)
      : WeylGroup(std::make_shared<const RootSystem>(rs), max_size) {}

  const RootSystem& root_system() const { return *rs_; }
  std::shared_ptr<const RootSystem> root_system_ptr() const { return rs_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<WeylElt>& elements() const { return elements_; }
  const WeylElt& element(std::size_t idx) const { return elements_.at(idx); }
  int length(std::size_t idx) const { return elements_[idx].length(); }
  std::size_t identity() const { return 0; }
  std::size_t longest() const { return size() - 1; }

  std::size_t index_of(const WeylElt& w) const {
    auto it = index_.find(w.perm());
    if (it == index_.end()) throw InvalidArgument("element does not belong to this Weyl group");
    return it->second;
  }

  std::size_t index_of_word(std::span<const int> word) const {
    return index_of(WeylElt::from_word(*rs_, word));
  }

  std::size_t left_mul(std::size_t i, std::size_t idx) const { return left_[idx * rank() + i]; }
  std::size_t right_mul(std::size_t idx, std::size_t i) const { return right_[idx * rank() + i]; }

  std::size_t multiply(std::size_t u, std::size_t v) const {
    std::size_t x = u;
    for (int i : elements_[v].word()) x = right_mul(x, i);
    return x;
  }

  std::size_t inverse(std::size_t w) const {
    std::size_t x = identity();
    for (int i : elements_[w].word()) x = left_mul(i, x);
    return x;
  }

  bool bruhat_leq(std::size_t u, std::size_t w) const {
    if (length(u) > length(w)) return false;
    if (!bruhat_memo_.empty()) {
      auto& slot = bruhat_memo_[u * size() + w];
      std::uint8_t s = slot.load(std::memory_order_relaxed);
      if (s != 0) return s == 2;
      bool r = bruhat_subword(u, w);
      slot.store(r ? 2 : 1, std::memory_order_relaxed);
      return r;
    }
    return bruhat_subword(u, w);
  }

  // All reduced words of w, lexicographically sorted.
  std::vector<std::vector<int>> reduced_words(std::size_t w) const {
    std::vector<std::vector<int>> out;
    std::vector<int> suffix;
    collect_words(w, suffix, out);
    for (auto& word : out) std::reverse(word.begin(), word.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  // Reflection s_beta for positive root index b.
  std::size_t reflection(int b) const {
    std::call_once(reflections_once_, [this] { build_reflections(); });
    return reflections_.at(b);
  }

 private:
  int rank() const { return rs_->rank(); }

  void enumerate() {
    const RootSystem& rs = *rs_;
    const int r = rs.rank();
    std::vector<std::vector<std::int16_t>> perms;
    std::vector<int> lengths;
    std::unordered_map<std::vector<std::int16_t>, std::size_t, VectorHash> tmp;
    std::vector<std::int16_t> id(rs.num_roots());
    for (int k = 0; k < rs.num_roots(); ++k) id[k] = static_cast<std::int16_t>(k);
    perms.push_back(id);
    lengths.push_back(0);
    tmp.emplace(id, 0);
    // Breadth-first by left multiplication; s_i w > w iff w^{-1}(alpha_i) > 0.
    std::size_t level_begin = 0;
    int len = 0;
    while (level_begin < perms.size()) {
      std::size_t level_end = perms.size();
      for (std::size_t k = level_begin; k < level_end; ++k) {
        for (int i = 0; i < r; ++i) {
          std::vector<std::int16_t> p = perms[k];
          for (auto& x : p) x = static_cast<std::int16_t>(rs.reflect_index(i, x));
          int l = 0;
          for (int j = 0; j < rs.num_positive(); ++j)
            if (!rs.is_positive_index(p[j])) ++l;
          if (l != len + 1) continue;
          if (tmp.emplace(p, perms.size()).second) {
            perms.push_back(std::move(p));
            lengths.push_back(l);
          }
        }
      }
      level_begin = level_end;
      ++len;
    }

    elements_.reserve(perms.size());
    for (auto& p : perms) elements_.push_back(WeylElt::from_perm(rs, std::move(p)));
    std::stable_sort(elements_.begin(), elements_.end(), [](const WeylElt& a, const WeylElt& b) {
      if (a.length() != b.length()) return a.length() < b.length();
      return a.word() < b.word();
    });
    for (std::size_t k = 0; k < elements_.size(); ++k) index_.emplace(elements_[k].perm(), k);

    left_.resize(elements_.size() * r);
    right_.resize(elements_.size() * r);
    std::vector<std::int16_t> p(rs.num_roots());
    for (std::size_t k = 0; k < elements_.size(); ++k) {
      const auto& w = elements_[k].perm();
      for (int i = 0; i < r; ++i) {
        for (int j = 0; j < rs.num_roots(); ++j) p[j] = static_cast<std::int16_t>(rs.reflect_index(i, w[j]));
        left_[k * r + i] = index_.at(p);
        for (int j = 0; j < rs.num_roots(); ++j) p[j] = w[rs.reflect_index(i, j)];
        right_[k * r + i] = index_.at(p);
      }
    }
    if (elements_.size() <= kBruhatMemoLimit)
      bruhat_memo_ = std::vector<std::atomic<std::uint8_t>>(elements_.size() * elements_.size());
  }

  bool bruhat_subword(std::size_t u, std::size_t w) const {
    std::size_t x = u;
    for (int letter : elements_[w].word()) {
      std::size_t y = left_mul(letter, x);
      if (length(y) < length(x)) x = y;
    }
    return x == identity();
  }

  void collect_words(std::size_t w, std::vector<int>& suffix, std::vector<std::vector<int>>& out) const {
    if (w == identity()) {
      out.push_back(suffix);
      return;
    }
    for (int i = 0; i < rank(); ++i) {
      std::size_t y = right_mul(w, i);
      if (length(y) < length(w)) {
        suffix.push_back(i);
        collect_words(y, suffix, out);
        suffix.pop_back();
      }
    }
  }

  void build_reflections() const {
    const RootSystem& rs = *rs_;
    reflections_.assign(rs.num_positive(), npos);
    int found = 0;
    for (std::size_t u = 0; u < size() && found < rs.num_positive(); ++u) {
      for (int i = 0; i < rank(); ++i) {
        int b = elements_[u].act(rs.simple_index(i));
        if (!rs.is_positive_index(b) || reflections_[b] != npos) continue;
        // s_beta = u s_i u^{-1}
        reflections_[b] = multiply(right_mul(u, i), inverse(u));
        ++found;
      }
    }
  }

  std::shared_ptr<const RootSystem> rs_;
  std::vector<WeylElt> elements_;
  std::unordered_map<std::vector<std::int16_t>, std::size_t, VectorHash> index_;
  std::vector<std::size_t> left_;
  std::vector<std::size_t> right_;
  mutable std::vector<std::atomic<std::uint8_t>> bruhat_memo_;
  mutable std::once_flag reflections_once_;
  mutable std::vector<std::size_t> reflections_;
};

// Every element of W once, length-graded then lexicographic on the canonical
// reduced word.
inline std::vector<WeylElt> weyl_enumerate(const RootSystem& rs,
                                           std::uint64_t max_size = WeylGroup::kDefaultMaxSize) {
  return WeylGroup(rs, max_size).elements();
}

// ---------------------------------------------------------------------------
// Text forms of Weyl elements.

// "s1 s2 s1"; the identity is "e".
inline std::string word_text(std::span<const int> word) {
  if (word.empty()) return "e";
  std::string s;
  for (int i : word) {
    if (!s.empty()) s += ' ';
    s += 's' + std::to_string(i + 1);
  }
  return s;
}

inline std::string word_text(const WeylElt& w) { return word_text(w.word()); }

// One-line notation [w(1) ... w(n+1)] for type A_n, where s_i swaps i, i+1.
inline std::vector<int> one_line(const RootSystem& rs, const WeylElt& w) {
  if (!rs.is_type_a()) throw InvalidArgument("one-line notation requires type A");
  std::vector<int> pos(rs.rank() + 1);
  for (int k = 0; k <= rs.rank(); ++k) pos[k] = k + 1;
  // w = s_{i1} ... s_{im}; apply right to left to each point.
  std::vector<int> out(pos.size());
  for (std::size_t k = 0; k < pos.size(); ++k) {
    int x = pos[k];
    for (auto it = w.word().rbegin(); it != w.word().rend(); ++it) {
      if (x == *it + 1) x = *it + 2;
      else if (x == *it + 2) x = *it + 1;
    }
    out[k] = x;
  }
  return out;
}

inline std::string one_line_text(const RootSystem& rs, const WeylElt& w) {
  auto v = one_line(rs, w);
  std::string s;
  bool sep = v.size() > 9;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (sep && k) s += ',';
    s += std::to_string(v[k]);
  }
  return s;
}

/*
  Accepts a reduced or unreduced word ("s1 s2 s1", "s1s2", "1 2 1" is not
  accepted), the identity ("e" or ""), or in type A a one-line permutation
  ("231", "[231]", or "2,3,1" when the rank needs two-digit entries).
*/
inline WeylElt parse_element(const RootSystem& rs, std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != '[' && c != ']') s += c;
  auto trimmed = [](std::string x) {
    while (!x.empty() && std::isspace(static_cast<unsigned char>(x.front()))) x.erase(x.begin());
    while (!x.empty() && std::isspace(static_cast<unsigned char>(x.back()))) x.pop_back();
    return x;
  };
  s = trimmed(s);
  if (s.empty() || s == "e" || s == "id") return WeylElt::identity(rs);

  if (s[0] == 's' || s[0] == 'S') {
    std::vector<int> word;
    std::size_t k = 0;
    while (k < s.size()) {
      if (std::isspace(static_cast<unsigned char>(s[k])) || s[k] == '*' || s[k] == '.') {
        ++k;
        continue;
      }
      if (s[k] != 's' && s[k] != 'S') throw InvalidArgument("cannot parse Weyl element '" + std::string(text) + "'");
      ++k;
      std::size_t start = k;
      while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
      if (start == k) throw InvalidArgument("cannot parse Weyl element '" + std::string(text) + "'");
      int i = std::stoi(s.substr(start, k - start));
      if (i < 1 || i > rs.rank())
        throw InvalidArgument("simple reflection s" + std::to_string(i) + " outside 1.." + std::to_string(rs.rank()));
      word.push_back(i - 1);
    }
    return WeylElt::from_word(rs, word);
  }

  if (!rs.is_type_a()) throw InvalidArgument("one-line notation '" + s + "' requires type A");
  std::vector<int> perm;
  if (s.find(',') != std::string::npos || s.find(' ') != std::string::npos) {
    std::string num;
    for (char c : s + ",") {
      if (std::isdigit(static_cast<unsigned char>(c))) {
        num += c;
      } else if (c == ',' || c == ' ') {
        if (!num.empty()) perm.push_back(std::stoi(num));
        num.clear();
      } else {
        throw InvalidArgument("cannot parse Weyl element '" + std::string(text) + "'");
      }
    }
  } else {
    for (char c : s) {
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw InvalidArgument("cannot parse Weyl element '" + std::string(text) + "'");
      perm.push_back(c - '0');
    }
  }
  const int n = rs.rank() + 1;
  if (static_cast<int>(perm.size()) != n) throw InvalidArgument("one-line permutation has the wrong size");
  {
    std::vector<int> sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    for (int k = 0; k < n; ++k)
      if (sorted[k] != k + 1) throw InvalidArgument("'" + s + "' is not a permutation");
  }
  // Bubble sort the one-line vector; recording the swaps gives a reduced
  // word of w read right to left (w s_i swaps positions i, i+1).
  std::vector<int> word;
  std::vector<int> v = perm;
  for (bool swapped = true; swapped;) {
    swapped = false;
    for (int i = 0; i + 1 < n; ++i) {
      if (v[i] > v[i + 1]) {
        std::swap(v[i], v[i + 1]);
        word.push_back(i);
        swapped = true;
      }
    }
  }
  std::reverse(word.begin(), word.end());
  return WeylElt::from_word(rs, word);
}

}  // namespace schubloc

#endif  // SCHUBLOC_ROOTSYS_HPP
