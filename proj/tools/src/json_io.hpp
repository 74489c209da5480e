#pragma once

#include <json.hpp>

#include "tphk/laurent.hpp"
#include "tphk/pc.hpp"
#include "tphk/rational.hpp"
#include "tphk/shift.hpp"

namespace tphk::cli {

using Json = nlohmann::ordered_json;

cplx parse_complex(const Json& j);
Json to_json(cplx z);

ShiftParams parse_shift(const Json& j);

/// Rational grammar: number, {"constant": z}, {"laurent": L},
/// {"rational": {"num": L, "den": L}}, {"roots": {"gain": z, "roots": [...]}},
/// shorthand strings ("chi^k", "psi_cap^k", "alpha_plus", "alpha_minus",
/// "t^k", optional leading "-"), and arrays meaning products.
RationalSymbol parse_rational(const Json& j, const ShiftParams& shift);

/// Rational grammar plus {"base": ..., "jumps": [...], "psi": [...]}.
PCSymbol parse_pc(const Json& j, const ShiftParams& shift);
bool is_pc_json(const Json& j);

Json to_json(const RationalSymbol& s);
Json to_json(const TruncatedSeries& s);

}  // namespace tphk::cli
