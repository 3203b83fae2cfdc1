#include "ellconn/io.hpp"

#include <cctype>
#include <sstream>

namespace ellconn {

// ---------------------------------------------------------------------------
// Polynomial text

std::string to_text(const Poly<Rational>& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int i = p.degree(); i >= 0; --i) {
    Rational c = p.coeff(i);
    if (c.is_zero()) continue;
    bool first = out.empty();
    Rational a = abs(c);
    if (first) {
      if (c.sign() < 0) out += "-";
    } else {
      out += c.sign() < 0 ? " - " : " + ";
    }
    bool unit = a.is_one() && i > 0;
    if (!unit) out += a.str();
    if (i > 0) {
      if (!unit) out += "*";
      out += "x";
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

namespace {

struct PolyParser {
  std::string_view s;
  size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail() const {
    throw DomainError("poly: cannot parse \"" + std::string(s) + "\"");
  }

  Rational number() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() &&
           (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/'))
      ++pos;
    if (pos == start) fail();
    return Rational::parse(s.substr(start, pos - start));
  }

  // term := [number '*'?]? 'x' ('^' int)?  |  number
  Poly<Rational> term(int sign) {
    skip_ws();
    Rational coef(1);
    bool have_coef = false;
    if (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])))) {
      coef = number();
      have_coef = true;
      (void)eat('*');
    }
    skip_ws();
    int deg = 0;
    if (pos < s.size() && s[pos] == 'x') {
      ++pos;
      deg = 1;
      if (eat('^')) {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) fail();
        deg = std::stoi(std::string(s.substr(start, pos - start)));
      }
    } else if (!have_coef) {
      fail();
    }
    if (sign < 0) coef = -coef;
    return Poly<Rational>::monomial(coef, deg);
  }

  Poly<Rational> parse() {
    Poly<Rational> acc;
    int sign = 1;
    skip_ws();
    if (eat('-')) sign = -1;
    else (void)eat('+');
    acc = acc + term(sign);
    while (true) {
      skip_ws();
      if (pos >= s.size()) break;
      if (eat('+'))
        sign = 1;
      else if (eat('-'))
        sign = -1;
      else
        fail();
      acc = acc + term(sign);
    }
    return acc;
  }
};

}  // namespace

Poly<Rational> parse_poly(std::string_view text) {
  PolyParser p{text};
  return p.parse();
}

std::string to_text(const RatFunc<Rational>& r) {
  if (r.den().degree() == 0 && r.den().coeff(0).is_one()) return to_text(r.num());
  return "(" + to_text(r.num()) + ")/(" + to_text(r.den()) + ")";
}

RatFunc<Rational> parse_ratfunc(std::string_view text) {
  // Either "poly" or "(poly)/(poly)".
  size_t open = text.find('(');
  if (open == std::string_view::npos) return RatFunc<Rational>(parse_poly(text));
  size_t close = text.find(')', open);
  if (close == std::string_view::npos) throw DomainError("ratfunc: unbalanced parentheses");
  size_t slash = text.find('/', close);
  if (slash == std::string_view::npos) throw DomainError("ratfunc: missing denominator");
  size_t open2 = text.find('(', slash);
  size_t close2 = text.rfind(')');
  if (open2 == std::string_view::npos || close2 == std::string_view::npos || close2 <= open2)
    throw DomainError("ratfunc: malformed denominator");
  Poly<Rational> num = parse_poly(text.substr(open + 1, close - open - 1));
  Poly<Rational> den = parse_poly(text.substr(open2 + 1, close2 - open2 - 1));
  return RatFunc<Rational>(num, den);
}

std::string to_text(const CurveElement<Rational>& g) {
  return to_text(g.a) + "|" + to_text(g.b);
}

CurveElement<Rational> parse_element(std::string_view text) {
  size_t bar = text.find('|');
  if (bar == std::string_view::npos)
    return CurveElement<Rational>::from_ratfunc(parse_ratfunc(text));
  return CurveElement<Rational>(parse_ratfunc(text.substr(0, bar)),
                                parse_ratfunc(text.substr(bar + 1)));
}

std::string to_text(const CurvePoint<Rational>& p) {
  if (p.is_infinity()) return "inf";
  return p.x().str() + "," + p.y().str();
}

CurvePoint<Rational> parse_point(std::string_view text) {
  if (text == "inf" || text == "winf") return CurvePoint<Rational>::infinity();
  size_t comma = text.find(',');
  if (comma == std::string_view::npos) throw DomainError("point: expected \"x,y\" or \"inf\"");
  return CurvePoint<Rational>::affine(Rational::parse(text.substr(0, comma)),
                                      Rational::parse(text.substr(comma + 1)));
}

CurvePoint<Rational> resolve_point(const CurveInstance<Rational>& inst, std::string_view text) {
  if (text == "w0") return inst.w0();
  if (text == "w1") return inst.w1();
  if (text == "wl" || text == "wlambda") return inst.w_lambda();
  if (text == "t1") return inst.t1();
  if (text == "t2") return inst.t2();
  return parse_point(text);
}

std::array<Rational, 3> normalize_projective(const Vec3<Rational>& v) {
  if (v.is_zero()) throw DomainError("projective: zero tuple");
  mpz_class den_lcm(1);
  for (const Rational* r : {&v.a0, &v.a1, &v.a2}) {
    mpz_class d = r->raw().get_den();
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
    den_lcm = den_lcm / g * d;
  }
  std::array<Rational, 3> out{v.a0, v.a1, v.a2};
  Rational scale{mpq_class(den_lcm)};
  mpz_class content(0);
  for (auto& r : out) {
    r *= scale;
    mpz_class n = r.raw().get_num();
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), n.get_mpz_t());
  }
  if (content != 0) {
    Rational c{mpq_class(content)};
    for (auto& r : out) r /= c;
  }
  for (const auto& r : out) {
    if (r.is_zero()) continue;
    if (r.sign() < 0)
      for (auto& s : out) s = -s;
    break;
  }
  return out;
}

std::string projective_text(const Vec3<Rational>& v) {
  auto n = normalize_projective(v);
  return "(" + n[0].str() + " : " + n[1].str() + " : " + n[2].str() + ")";
}

// ---------------------------------------------------------------------------
// Config

std::map<std::string, std::string> load_config(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    size_t eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      size_t b = s.find_first_not_of(" \t\r");
      size_t e = s.find_last_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      return s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (!key.empty()) out[key] = value;
  }
  return out;
}

CurveInstance<Rational> instance_from_options(const std::map<std::string, std::string>& config,
                                              const std::map<std::string, std::string>& overrides) {
  auto get = [&](const std::string& key) -> std::string {
    auto io = overrides.find(key);
    if (io != overrides.end()) return io->second;
    auto ic = config.find(key);
    if (ic != config.end()) return ic->second;
    throw DomainError("instance: missing parameter " + key);
  };
  return CurveInstance<Rational>(
      Rational::parse(get("lambda")), Rational::parse(get("t")), Rational::parse(get("r")),
      Rational::parse(get("nu1")), Rational::parse(get("nu2")));
}

// ---------------------------------------------------------------------------
// JSON

Json to_json(const Report& rep) {
  Json checks = Json::array();
  for (const auto& c : rep.checks) {
    Json jc{{"name", c.name}, {"pass", c.pass}};
    if (!c.detail.empty()) jc["detail"] = c.detail;
    checks.push_back(jc);
  }
  return Json{{"checks", checks}, {"all_pass", rep.all_pass()}};
}

Json to_json(const CurvePoint<Rational>& p) { return Json(to_text(p)); }

Json to_json(const Divisor<Rational>& d) {
  Json points = Json::array();
  for (const auto& [p, m] : d.points)
    points.push_back(Json{{"point", to_text(p)}, {"mult", m}});
  Json out{{"points", points}, {"degree", d.degree()}};
  if (d.has_blocks()) {
    Json blocks = Json::array();
    for (const auto& b : d.blocks)
      blocks.push_back(Json{{"factor", to_text(b.factor)}, {"total", b.total}});
    out["blocks"] = blocks;
  }
  return out;
}

Json to_json(const ExponentLedger<Rational>& ledger) {
  Json exps = Json::array();
  for (const auto& [p, nu] : ledger.exponents)
    exps.push_back(Json{{"point", to_text(p)}, {"plus", nu.first.str()}, {"minus", nu.second.str()}});
  return Json{{"exponents", exps},
              {"bundle_degree", ledger.bundle_degree},
              {"bundle_class",
               Json{{"degree", ledger.bundle_class.degree}, {"sum", to_text(ledger.bundle_class.sum)}}}};
}

Json to_json(const LogConnection<Rational>& conn) {
  return Json{{"matrix",
               Json::array({Json::array({to_text(conn.mat.a), to_text(conn.mat.b)}),
                            Json::array({to_text(conn.mat.c), to_text(conn.mat.d)})})},
              {"polar", to_json(conn.polar)},
              {"ledger", to_json(conn.ledger)}};
}

Json to_json(const ParData<Rational>& par) {
  auto dir = [](const ProjDir<Rational>& d) {
    return "(" + d.u().str() + ":" + d.v().str() + ")";
  };
  return Json{{"p1_plus", dir(par.p1_plus)},
              {"p1_minus", dir(par.p1_minus)},
              {"p2_plus", dir(par.p2_plus)},
              {"p2_minus", dir(par.p2_minus)}};
}

Json projective_json(const Vec3<Rational>& v) {
  auto n = normalize_projective(v);
  return Json::array({n[0].str(), n[1].str(), n[2].str()});
}

LogConnection<Rational> connection_from_json(const CurveInstance<Rational>& inst, const Json& j) {
  LogConnection<Rational> conn;
  const Json& m = j.at("matrix");
  conn.mat.a = parse_element(m.at(0).at(0).get<std::string>());
  conn.mat.b = parse_element(m.at(0).at(1).get<std::string>());
  conn.mat.c = parse_element(m.at(1).at(0).get<std::string>());
  conn.mat.d = parse_element(m.at(1).at(1).get<std::string>());
  if (j.contains("polar")) {
    for (const auto& jp : j.at("polar").at("points"))
      conn.polar.add(resolve_point(inst, jp.at("point").get<std::string>()),
                     jp.at("mult").get<int>());
  }
  if (j.contains("ledger")) {
    const Json& jl = j.at("ledger");
    conn.ledger.bundle_degree = jl.at("bundle_degree").get<int>();
    conn.ledger.bundle_class.degree = jl.at("bundle_class").at("degree").get<int>();
    conn.ledger.bundle_class.sum =
        resolve_point(inst, jl.at("bundle_class").at("sum").get<std::string>());
    for (const auto& je : jl.at("exponents"))
      conn.ledger.set(resolve_point(inst, je.at("point").get<std::string>()),
                      Rational::parse(je.at("plus").get<std::string>()),
                      Rational::parse(je.at("minus").get<std::string>()));
  }
  return conn;
}

FlatInput flat_input_from_json(const CurveInstance<Rational>& inst, const Json& j) {
  FlatInput in;
  std::string kind = j.at("kind").get<std::string>();
  using Kind = ParabolicBundleDesc<Rational>::Kind;
  if (kind == "decomposable")
    in.desc.kind = Kind::Decomposable;
  else if (kind == "e1")
    in.desc.kind = Kind::IndecomposableE1;
  else if (kind == "e0_all_on_max")
    in.desc.kind = Kind::E0AllOnMax;
  else
    throw DomainError("flat: unknown kind \"" + kind + "\"");

  const Json& jn = j.at("nu");
  in.nu.bundle_degree = jn.at("degree").get<int>();
  for (const auto& jp : jn.at("pairs"))
    in.nu.pairs.push_back({Rational::parse(jp.at("plus").get<std::string>()),
                           Rational::parse(jp.at("minus").get<std::string>())});

  in.det_class = {1, inst.w_infinity()};
  if (j.contains("det_sum"))
    in.det_class.sum = resolve_point(inst, j.at("det_sum").get<std::string>());

  if (in.desc.kind == Kind::Decomposable) {
    auto parse_flag = [](const std::string& s) {
      if (s == "in_l") return ParabolicFlag::InL;
      if (s == "in_m") return ParabolicFlag::InM;
      if (s == "generic") return ParabolicFlag::Generic;
      throw DomainError("flat: unknown flag \"" + s + "\"");
    };
    const Json& jf = j.at("flags");
    if (jf.size() != 2) throw DomainError("flat: expected two parabolic flags");
    in.desc.flags = {parse_flag(jf.at(0).get<std::string>()),
                     parse_flag(jf.at(1).get<std::string>())};
    if (j.contains("l_degree")) in.desc.l_class.degree = j.at("l_degree").get<int>();
    if (j.contains("l_sum"))
      in.desc.l_class.sum = resolve_point(inst, j.at("l_sum").get<std::string>());
    if (j.contains("m_degree")) in.desc.m_class.degree = j.at("m_degree").get<int>();
    if (j.contains("m_sum"))
      in.desc.m_class.sum = resolve_point(inst, j.at("m_sum").get<std::string>());
    if (j.contains("base_point"))
      in.desc.base_point = resolve_point(inst, j.at("base_point").get<std::string>());
  }
  return in;
}

// Declared in ratfunc.hpp; the epsilon variable prints as "e".
std::string FieldTraits<QEps>::str(const QEps& v) {
  auto poly_text = [](const Poly<Rational>& p) {
    std::string t = to_text(p);
    for (auto& ch : t)
      if (ch == 'x') ch = 'e';
    return t;
  };
  if (v.den().degree() == 0 && v.den().coeff(0).is_one()) return poly_text(v.num());
  return "(" + poly_text(v.num()) + ")/(" + poly_text(v.den()) + ")";
}

}  // namespace ellconn
