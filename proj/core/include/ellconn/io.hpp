#pragma once

#include <array>
#include <istream>
#include <map>
#include <string>
#include <string_view>

#include "json.hpp"

#include "ellconn/connection.hpp"
#include "ellconn/maps.hpp"
#include "ellconn/parabolic.hpp"
#include "ellconn/report.hpp"

namespace ellconn {

using Json = nlohmann::json;

// Text forms ---------------------------------------------------------------

std::string to_text(const Poly<Rational>& p);
Poly<Rational> parse_poly(std::string_view text);

std::string to_text(const RatFunc<Rational>& r);  // "p" or "(p)/(q)"
RatFunc<Rational> parse_ratfunc(std::string_view text);

std::string to_text(const CurveElement<Rational>& g);  // "a|b"
CurveElement<Rational> parse_element(std::string_view text);

std::string to_text(const CurvePoint<Rational>& p);  // "inf" or "x,y"
CurvePoint<Rational> parse_point(std::string_view text);
/// Accepts the named points w0, w1, wl, t1, t2, inf as well as "x,y".
CurvePoint<Rational> resolve_point(const CurveInstance<Rational>& inst, std::string_view text);

/// Cleared denominators, content gcd 1, first nonzero entry positive.
std::array<Rational, 3> normalize_projective(const Vec3<Rational>& v);
std::string projective_text(const Vec3<Rational>& v);

// Config -------------------------------------------------------------------

/// Flat key=value file ('#' comments, blank lines ignored).
std::map<std::string, std::string> load_config(std::istream& in);

/// Builds an instance from config values plus command-line overrides (the
/// overrides win); throws DomainError naming any violated constraint.
CurveInstance<Rational> instance_from_options(const std::map<std::string, std::string>& config,
                                              const std::map<std::string, std::string>& overrides);

// JSON ---------------------------------------------------------------------

Json to_json(const Report& rep);
Json to_json(const CurvePoint<Rational>& p);
Json to_json(const Divisor<Rational>& d);
Json to_json(const ExponentLedger<Rational>& ledger);
Json to_json(const LogConnection<Rational>& conn);
Json to_json(const ParData<Rational>& par);
Json projective_json(const Vec3<Rational>& v);

LogConnection<Rational> connection_from_json(const CurveInstance<Rational>& inst, const Json& j);

/// Parses the flatness-description record used by the CLI.
struct FlatInput {
  ParabolicBundleDesc<Rational> desc;
  ExponentSet<Rational> nu;
  DivisorClass<Rational> det_class;
};
FlatInput flat_input_from_json(const CurveInstance<Rational>& inst, const Json& j);

}  // namespace ellconn
