#include "json_io.hpp"

#include <charconv>

#include "tphk/error.hpp"

namespace tphk::cli {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidInput, what); }

LaurentPolynomial parse_laurent(const Json& j) {
  if (!j.is_object() || !j.contains("coeffs")) bad("laurent polynomial needs \"coeffs\"");
  const int lo = j.value("lo", 0);
  std::vector<cplx> c;
  for (const auto& x : j.at("coeffs")) c.push_back(parse_complex(x));
  return LaurentPolynomial(lo, std::move(c));
}

int parse_exponent(std::string_view s, std::string_view token) {
  if (s.empty()) return 1;
  if (s.front() != '^') bad("malformed shorthand \"" + std::string(token) + "\"");
  s.remove_prefix(1);
  int k = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), k);
  if (ec != std::errc() || ptr != s.data() + s.size()) bad("bad exponent in \"" + std::string(token) + "\"");
  return k;
}

RationalSymbol parse_shorthand(std::string_view token, const ShiftParams& shift) {
  std::string_view s = token;
  cplx sign = 1.0;
  if (!s.empty() && s.front() == '-') {
    sign = -1.0;
    s.remove_prefix(1);
  }
  auto take = [&](std::string_view name) {
    if (s.substr(0, name.size()) != name) return false;
    s.remove_prefix(name.size());
    return true;
  };
  if (s == "1") return RationalSymbol::constant(sign);
  if (take("psi_cap")) return sign * power(shift.psi_cap, parse_exponent(s, token));
  if (take("chi")) return sign * chi_power(shift, parse_exponent(s, token));
  if (take("alpha_plus")) return sign * power(shift.alpha_plus, parse_exponent(s, token));
  if (take("alpha_minus")) return sign * power(shift.alpha_minus, parse_exponent(s, token));
  if (take("t")) return sign * RationalSymbol::monomial(parse_exponent(s, token));
  bad("unknown symbol shorthand \"" + std::string(token) + "\"");
}

FixedPoint parse_fixed_point(const Json& j) {
  const auto s = j.get<std::string>();
  if (s == "t_plus") return FixedPoint::Plus;
  if (s == "t_minus") return FixedPoint::Minus;
  bad("psi factor \"at\" must be t_plus or t_minus");
}

}  // namespace

cplx parse_complex(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  bad("complex number must be a number or [re, im]");
}

Json to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

ShiftParams parse_shift(const Json& j) {
  if (j.is_object() && j.contains("beta")) return make_shift(parse_complex(j.at("beta")));
  return make_shift(parse_complex(j));
}

RationalSymbol parse_rational(const Json& j, const ShiftParams& shift) {
  if (j.is_number()) return RationalSymbol::constant(j.get<double>());
  if (j.is_string()) return parse_shorthand(j.get<std::string>(), shift);
  if (j.is_array()) {
    RationalSymbol r = RationalSymbol::constant(1.0);
    for (const auto& f : j) r = r * parse_rational(f, shift);
    return r;
  }
  if (!j.is_object()) bad("unrecognized symbol");
  if (j.contains("constant")) return RationalSymbol::constant(parse_complex(j.at("constant")));
  if (j.contains("laurent")) return RationalSymbol::from_laurent(parse_laurent(j.at("laurent")));
  if (j.contains("rational")) {
    const auto& r = j.at("rational");
    return RationalSymbol::from_laurent(parse_laurent(r.at("num")),
                                        r.contains("den") ? parse_laurent(r.at("den")) : LaurentPolynomial::constant(1.0));
  }
  if (j.contains("roots")) {
    const auto& r = j.at("roots");
    std::vector<Root> roots;
    for (const auto& x : r.at("roots")) roots.push_back({parse_complex(x.at("z")), x.at("mult").get<int>()});
    return RationalSymbol::from_roots(parse_complex(r.at("gain")), std::move(roots));
  }
  if (j.contains("base")) bad("piecewise-continuous symbol given where a rational symbol is required");
  bad("unrecognized symbol object");
}

bool is_pc_json(const Json& j) { return j.is_object() && j.contains("base"); }

PCSymbol parse_pc(const Json& j, const ShiftParams& shift) {
  if (!is_pc_json(j)) return PCSymbol::from_rational(parse_rational(j, shift));
  PCSymbol s;
  s.base = parse_rational(j.at("base"), shift);
  if (j.contains("jumps"))
    for (const auto& x : j.at("jumps")) {
      const cplx tau = parse_complex(x.at("tau"));
      if (std::abs(std::abs(tau) - 1.0) > 1e-12) bad("jump point must lie on the unit circle");
      s.jumps.push_back({tau, parse_complex(x.at("beta"))});
    }
  if (j.contains("psi"))
    for (const auto& x : j.at("psi")) s.psi.push_back({parse_fixed_point(x.at("at")), parse_complex(x.at("beta"))});
  return s;
}

Json to_json(const RationalSymbol& s) {
  Json roots = Json::array();
  for (const auto& r : s.roots()) roots.push_back({{"z", to_json(r.z)}, {"mult", r.mult}});
  return {{"roots", {{"gain", to_json(s.gain())}, {"roots", roots}}}};
}

Json to_json(const TruncatedSeries& s) {
  Json c = Json::array();
  for (const auto& z : s.coeffs()) c.push_back(to_json(z));
  return {{"lo", s.lo()}, {"coeffs", c}};
}

}  // namespace tphk::cli
