#pragma once

// Plain-text instance format:
//
//   n <vertex-count> root <vertex-id>
//   edge <u> <v>                 (n-1 lines)
//   link <u> <v> <raw-cost>      (costs as integers, p/q, or decimals)
//   request <s> <t>
//
// '#' starts a comment; blank lines are ignored.

#include <cctype>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "wtap/instance.hpp"

namespace wtap {

inline constexpr const char* kInstanceFormatVersion = "wtap-instance-v1";

inline Rational parse_rational(const std::string& text) {
  auto parse_int = [&](const std::string& s) -> std::int64_t {
    if (s.empty()) throw InputError("empty number in cost '" + text + "'");
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      throw InputError("bad number in cost '" + text + "'");
    }
    if (used != s.size()) throw InputError("bad number in cost '" + text + "'");
    return v;
  };
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    const auto q = parse_int(text.substr(slash + 1));
    if (q == 0) throw InputError("zero denominator in cost '" + text + "'");
    return Rational(parse_int(text.substr(0, slash)), q);
  }
  if (const auto dot = text.find('.'); dot != std::string::npos) {
    const std::string frac = text.substr(dot + 1);
    if (frac.size() > 15) throw InputError("too many decimal digits in cost '" + text + "'");
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    const std::string whole = text.substr(0, dot);
    const std::int64_t w = whole.empty() ? 0 : parse_int(whole);
    const std::int64_t f = frac.empty() ? 0 : parse_int(frac);
    if (f < 0) throw InputError("bad decimal in cost '" + text + "'");
    return Rational(w) + Rational(f, den);
  }
  return Rational(parse_int(text));
}

inline std::string format_rational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline TreeInstance parse_instance(std::istream& in) {
  int n = -1;
  Vertex root = 0;
  std::vector<std::pair<Vertex, Vertex>> edges, link_ends;
  std::vector<Rational> costs;
  std::vector<Request> requests;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    auto fail = [&](const std::string& why) {
      throw InputError("line " + std::to_string(lineno) + ": " + why);
    };
    auto read_int = [&]() {
      long long v;
      if (!(ls >> v)) fail("expected integer");
      return static_cast<int>(v);
    };
    if (kw == "n") {
      if (n >= 0) fail("duplicate header");
      n = read_int();
      std::string r;
      if (!(ls >> r) || r != "root") fail("expected 'root'");
      root = read_int();
    } else {
      if (n < 0) fail("header 'n <count> root <id>' must come first");
      if (kw == "edge") {
        const int a = read_int();
        const int b = read_int();
        edges.push_back({a, b});
      } else if (kw == "link") {
        const int a = read_int();
        const int b = read_int();
        std::string c;
        if (!(ls >> c)) fail("expected link cost");
        link_ends.push_back({a, b});
        costs.push_back(parse_rational(c));
      } else if (kw == "request") {
        const int s = read_int();
        const int t = read_int();
        requests.push_back(Request::pair(s, t));
      } else {
        fail("unknown keyword '" + kw + "'");
      }
    }
    std::string extra;
    if (ls >> extra) fail("trailing tokens");
  }
  if (n < 0) throw InputError("missing header line");
  return TreeInstance(n, root, std::move(edges), std::move(link_ends), std::move(costs),
                      std::move(requests));
}

inline TreeInstance parse_instance_string(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

inline TreeInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open instance file: " + path);
  return parse_instance(in);
}

inline std::string format_instance(const TreeInstance& inst) {
  std::ostringstream out;
  out << "n " << inst.n() << " root " << inst.root() << "\n";
  for (const auto& [a, b] : inst.edges()) out << "edge " << a << " " << b << "\n";
  for (std::size_t i = 0; i < inst.links().size(); ++i) {
    const auto& l = inst.links()[i];
    out << "link " << l.u << " " << l.v << " " << format_rational(inst.raw_costs()[i]) << "\n";
  }
  for (const auto& r : inst.requests()) {
    if (r.is_elementary()) {
      const auto [a, b] = inst.edges()[*r.edge];
      out << "request " << a << " " << b << "\n";
    } else {
      out << "request " << r.s << " " << r.t << "\n";
    }
  }
  return out.str();
}

// FNV-1a over the canonical text form.
inline std::uint64_t instance_digest(const TreeInstance& inst) {
  std::uint64_t h = 1469598103934665603ull;
  for (const unsigned char c : format_instance(inst)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace wtap
