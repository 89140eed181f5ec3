#pragma once

// Build configuration files: one `key = value` pair per line, `#` comments.
//
//   family  = coset | cayley
//   p       = <prime>
//
// coset family:
//   group       = PSL2 | PSL2xPSL2 | DET4
//   H, K        = subgroup generators (omitted or empty: trivial)
//   g_omega     = w-labeled generators
//   g_omega_bar = W-labeled generators
//
// cayley family:
//   g_plus, g_minus = one matrix each
//
// A matrix is four integers `[a b c d]` (row major, reduced mod p); an element
// of PSL2xPSL2 is two matrices joined by `x`; lists are comma separated.

#include <array>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qldpc/cayley_construction.hpp"
#include "qldpc/coset_construction.hpp"
#include "qldpc/errors.hpp"
#include "qldpc/matgroup.hpp"

namespace qldpc {

using RawMatrix = std::array<std::int64_t, 4>;
using RawElement = std::vector<RawMatrix>;

struct CosetConfig {
  GroupKind group = GroupKind::PSL2xPSL2;
  std::uint32_t p = 0;
  std::vector<RawElement> H, K, g_omega, g_omega_bar;
};

struct CayleyConfig {
  std::uint32_t p = 13;
  RawMatrix g_plus{}, g_minus{};
};

using BuildConfig = std::variant<CosetConfig, CayleyConfig>;

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

class ElementParser {
 public:
  ElementParser(std::string_view text, std::string key) : s_(text), key_(std::move(key)) {}

  std::vector<RawElement> list() {
    std::vector<RawElement> out;
    skip();
    if (pos_ == s_.size()) return out;
    for (;;) {
      out.push_back(element());
      skip();
      if (pos_ == s_.size()) return out;
      expect(',');
    }
  }

  RawMatrix single() {
    auto m = matrix();
    skip();
    if (pos_ != s_.size()) fail("trailing characters");
    return m;
  }

 private:
  RawElement element() {
    RawElement e{matrix()};
    skip();
    while (pos_ < s_.size() && s_[pos_] == 'x') {
      ++pos_;
      e.push_back(matrix());
      skip();
    }
    return e;
  }

  RawMatrix matrix() {
    skip();
    expect('[');
    RawMatrix m{};
    for (auto& v : m) v = integer();
    skip();
    expect(']');
    return m;
  }

  std::int64_t integer() {
    skip();
    std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    std::size_t digits = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == digits || pos_ - digits > 9) fail("expected an integer");
    return std::stoll(std::string(s_.substr(start, pos_ - start)));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  void expect(char c) {
    skip();
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("config key '" + key_ + "': " + what + " at column " + std::to_string(pos_ + 1));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::string key_;
};

inline GroupKind parse_group_kind(const std::string& s) {
  if (s == "PSL2") return GroupKind::PSL2;
  if (s == "PSL2xPSL2") return GroupKind::PSL2xPSL2;
  if (s == "DET4") return GroupKind::DET4;
  throw ParseError("unknown group '" + s + "' (expected PSL2, PSL2xPSL2 or DET4)");
}

inline std::uint32_t parse_prime(const std::string& s) {
  std::size_t used = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty() || v > 100000) throw ParseError("config key 'p': expected a small integer");
  return static_cast<std::uint32_t>(v);
}

}  // namespace detail

inline BuildConfig parse_config(std::string_view text) {
  std::map<std::string, std::string> kv;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::string t = detail::trim(line);
    if (t.empty()) continue;
    auto eq = t.find('=');
    if (eq == std::string::npos) throw ParseError("config line " + std::to_string(line_no) + ": expected key = value");
    std::string key = detail::trim(std::string_view(t).substr(0, eq));
    std::string value = detail::trim(std::string_view(t).substr(eq + 1));
    if (key.empty()) throw ParseError("config line " + std::to_string(line_no) + ": empty key");
    if (!kv.emplace(key, value).second) throw ParseError("config: duplicate key '" + key + "'");
  }

  auto take = [&](const std::string& key, bool required) -> std::optional<std::string> {
    auto it = kv.find(key);
    if (it == kv.end()) {
      if (required) throw ParseError("config: missing key '" + key + "'");
      return std::nullopt;
    }
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  auto finish = [&] {
    if (!kv.empty()) throw ParseError("config: unknown key '" + kv.begin()->first + "'");
  };

  std::string family = *take("family", true);
  if (family == "coset") {
    CosetConfig c;
    c.group = detail::parse_group_kind(*take("group", true));
    c.p = detail::parse_prime(*take("p", true));
    auto list = [&](const std::string& key, bool required) {
      auto v = take(key, required);
      return v ? detail::ElementParser(*v, key).list() : std::vector<RawElement>{};
    };
    c.H = list("H", false);
    c.K = list("K", false);
    c.g_omega = list("g_omega", true);
    c.g_omega_bar = list("g_omega_bar", true);
    finish();
    return c;
  }
  if (family == "cayley") {
    CayleyConfig c;
    c.p = detail::parse_prime(*take("p", true));
    c.g_plus = detail::ElementParser(*take("g_plus", true), "g_plus").single();
    c.g_minus = detail::ElementParser(*take("g_minus", true), "g_minus").single();
    finish();
    return c;
  }
  throw ParseError("config: unknown family '" + family + "' (expected coset or cayley)");
}

inline BuildConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

// ---------------------------------------------------------------------------
// Resolution against enumerated groups

inline GroupIndex resolve_element(const GroupTable& G, const RawElement& e) {
  if (e.size() != G.arity())
    throw PreconditionError("element has " + std::to_string(e.size()) + " factor(s), group needs " +
                            std::to_string(G.arity()));
  auto mat = [&](const RawMatrix& m) { return Mat2::from_ints(m[0], m[1], m[2], m[3], G.prime()); };
  GroupElement g = e.size() == 1 ? GroupElement::single(mat(e[0])) : GroupElement::pair(mat(e[0]), mat(e[1]));
  auto idx = G.find(g);
  if (!idx) {
    std::ostringstream os;
    os << "element " << g << " is not in " << to_string(G.kind()) << "(" << G.prime() << ")";
    throw PreconditionError(os.str());
  }
  return *idx;
}

inline std::vector<GroupIndex> resolve_elements(const GroupTable& G, const std::vector<RawElement>& es) {
  std::vector<GroupIndex> out;
  out.reserve(es.size());
  for (const auto& e : es) out.push_back(resolve_element(G, e));
  return out;
}

inline GenericSpec to_spec(const CosetConfig& c) {
  GenericSpec s;
  s.group = std::make_shared<const GroupTable>(GroupTable::enumerate(c.group, c.p));
  const GroupTable& G = *s.group;
  auto h = resolve_elements(G, c.H);
  auto k = resolve_elements(G, c.K);
  s.H = Subgroup::generated_by(G, h);
  s.K = Subgroup::generated_by(G, k);
  s.g_omega = resolve_elements(G, c.g_omega);
  s.g_omega_bar = resolve_elements(G, c.g_omega_bar);
  return s;
}

inline CayleySpec to_spec(const CayleyConfig& c) {
  auto mat = [&](const RawMatrix& m) { return Mat2::from_ints(m[0], m[1], m[2], m[3], c.p); };
  return {c.p, mat(c.g_plus), mat(c.g_minus)};
}

}  // namespace qldpc
