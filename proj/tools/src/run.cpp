#include "run.hpp"

#include "tphk/error.hpp"
#include "tphk/kernel.hpp"
#include "tphk/matching.hpp"
#include "tphk/wiener_hopf.hpp"

namespace tphk::cli {

namespace {

struct Context {
  std::string command;
  ShiftParams shift;
  double p = 2.0;
  int N = 256;
  bool oracle = true;
  NullSpaceOptions ns;
};

int exit_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotFredholm:
    case ErrorCode::NotFredholmPair:
    case ErrorCode::NotInvertible:
    case ErrorCode::NotInvertibleOnCircle:
      return kNotFredholm;
    case ErrorCode::CrossCheckMismatch:
      return kMismatch;
    default:
      return kInputError;
  }
}

Json dims_json(int kp, int cp, int km, int cm) {
  return {{"ker_plus", kp}, {"coker_plus", cp}, {"ker_minus", km}, {"coker_minus", cm}};
}

Json oracle_json(const OracleCheck& o) {
  Json j = {{"N", o.N}};
  if (!o.error.empty()) {
    j["error"] = o.error;
    return j;
  }
  j["dims"] = dims_json(o.ker_plus, o.coker_plus, o.ker_minus, o.coker_minus);
  return j;
}

Json basis_json(const KernelBasis& kb) {
  Json fs = Json::array();
  for (const auto& f : kb.functions) {
    Json e = {{"tag", std::string(to_string(f.tag))}, {"residual", f.residual}, {"series", to_json(f.series.trimmed(1e-15))}};
    e["rational"] = f.exact ? to_json(*f.exact) : Json(nullptr);
    fs.push_back(std::move(e));
  }
  return {{"space", kb.cokernel ? "coker" : "ker"}, {"sign", kb.sign > 0 ? "+" : "-"}, {"functions", fs}};
}

RationalSymbol require_rational(const Json& problem, const char* key, const Context& cx) {
  if (!problem.contains(key)) throw Error(ErrorCode::InvalidInput, std::string("missing \"") + key + "\"");
  return parse_rational(problem.at(key), cx.shift);
}

void pair_header(Json& out, const MatchingPair& pair, double residual) {
  out["matching_residual"] = residual;
  out["kappa"] = Json::array({pair.kappa1, pair.kappa2});
  out["signatures"] = {{"c", pair.sigma_c}, {"d", pair.sigma_d}};
}

int analyze(const Json& problem, const Context& cx, Json& out, bool with_bases) {
  const auto a = require_rational(problem, "a", cx);
  const auto b = require_rational(problem, "b", cx);
  const double residual = check_matching(a, b, cx.shift);
  const auto pair = make_matching_pair(a, b, cx.shift);
  pair_header(out, pair, residual);
  DefectOptions dopt;
  dopt.with_bases = true;
  dopt.with_oracle = cx.oracle;
  dopt.oracle_N = cx.N;
  dopt.null_space = cx.ns;
  const auto rep = defect_numbers(pair, cx.shift, dopt);
  out["regime"] = std::string(to_string(rep.regime));
  out["defects"] = dims_json(rep.ker_plus, rep.coker_plus, rep.ker_minus, rep.coker_minus);
  out["index"] = (rep.ker_plus - rep.coker_plus) + (rep.ker_minus - rep.coker_minus);
  out["max_residual"] = rep.max_residual;
  if (with_bases) {
    Json bs = Json::array();
    for (const auto& kb : rep.bases) bs.push_back(basis_json(kb));
    out["bases"] = bs;
  }
  if (!cx.oracle) return kOk;
  Json o = oracle_json(rep.oracle);
  o["agree"] = rep.oracle.agree;
  out["oracle"] = o;
  if (!rep.oracle.error.empty()) {
    out["warnings"].push_back("oracle could not decide: " + rep.oracle.error);
    return kOk;
  }
  return rep.oracle.agree ? kOk : kMismatch;
}

int verify(const Json& problem, const Context& cx, Json& out) {
  const auto a = require_rational(problem, "a", cx);
  const auto b = require_rational(problem, "b", cx);
  const auto o = oracle_defects(a, b, cx.shift, cx.N, cx.ns);
  out["oracle"] = oracle_json(o);
  if (!o.error.empty()) {
    out["warnings"].push_back("oracle could not decide: " + o.error);
    return kOk;
  }
  const double residual = check_matching(a, b, cx.shift);
  out["matching_residual"] = residual;
  if (!(residual < kMatchingTol)) {
    out["warnings"].push_back("not a matching pair; no analytic comparison");
    return kOk;
  }
  const auto pair = make_matching_pair(a, b, cx.shift);
  pair_header(out, pair, residual);
  const auto rep = defect_numbers(pair, cx.shift);
  out["regime"] = std::string(to_string(rep.regime));
  out["defects"] = dims_json(rep.ker_plus, rep.coker_plus, rep.ker_minus, rep.coker_minus);
  const bool agree = o.ker_plus == rep.ker_plus && o.coker_plus == rep.coker_plus && o.ker_minus == rep.ker_minus &&
                     o.coker_minus == rep.coker_minus;
  out["agree"] = agree;
  return agree ? kOk : kMismatch;
}

int signature(const Json& problem, const Context& cx, Json& out) {
  if (problem.contains("g")) {
    const auto& g = problem.at("g");
    if (is_pc_json(g)) {
      out["method"] = "pc";
      out["sigma"] = pc_alpha_signature(parse_pc(g, cx.shift), cx.p, cx.shift);
    } else {
      const auto r = parse_rational(g, cx.shift);
      out["method"] = "rational";
      out["kappa"] = factorize(r).kappa;
      out["sigma"] = alpha_signature(r, cx.shift);
    }
    return kOk;
  }
  const auto a = require_rational(problem, "a", cx);
  const auto b = require_rational(problem, "b", cx);
  const double residual = check_matching(a, b, cx.shift);
  pair_header(out, make_matching_pair(a, b, cx.shift), residual);
  return kOk;
}

int fredholm(const Json& problem, const Context& cx, Json& out) {
  if (!problem.contains("a")) throw Error(ErrorCode::InvalidInput, "missing \"a\"");
  const auto a = parse_pc(problem.at("a"), cx.shift);
  const auto b = problem.contains("b") ? parse_pc(problem.at("b"), cx.shift)
                                    : PCSymbol::from_rational(RationalSymbol::constant(0.0));
  const auto r = fredholm_symbol_check(a, b, cx.p, cx.shift);
  out["min_det"] = r.min_det;
  out["min_scalar"] = r.min_scalar;
  out["argmin"] = {{"t", to_json(r.argmin_t)}, {"y", std::isinf(r.argmin_y) ? Json(r.argmin_y > 0 ? "+inf" : "-inf")
                                                                              : Json(r.argmin_y)}};
  out["fredholm"] = r.fredholm;
  return r.fredholm ? kOk : kNotFredholm;
}

}  // namespace

Outcome run(const Json& problem, const RunOptions& opt) {
  Outcome res;
  Json& out = res.report;
  out["command"] = nullptr;
  out["warnings"] = Json::array();
  try {
    if (!problem.is_object()) throw Error(ErrorCode::InvalidInput, "problem problem must be a JSON object");
    Context cx;
    cx.command = problem.value("command", std::string("analyze"));
    out["command"] = cx.command;
    if (!problem.contains("shift")) throw Error(ErrorCode::InvalidInput, "missing \"shift\"");
    cx.shift = parse_shift(problem.at("shift"));
    out["shift"] = {{"beta", to_json(cx.shift.beta)}};
    cx.p = problem.value("p", 2.0);
    if (!(cx.p > 1.0)) throw Error(ErrorCode::InvalidInput, "p must lie in (1, inf)");
    cx.N = opt.oracle_size.value_or(problem.value("N", 256));
    if (cx.N < 8) throw Error(ErrorCode::InvalidInput, "oracle size must be at least 8");
    cx.oracle = !opt.no_oracle;
    if (opt.tol) cx.ns.tol = *opt.tol;
    out["p"] = cx.p;
    out["N"] = cx.N;

    if (cx.command == "analyze") res.exit_code = analyze(problem, cx, out, false);
    else if (cx.command == "basis") res.exit_code = analyze(problem, cx, out, true);
    else if (cx.command == "signature") res.exit_code = signature(problem, cx, out);
    else if (cx.command == "fredholm") res.exit_code = fredholm(problem, cx, out);
    else if (cx.command == "verify") res.exit_code = verify(problem, cx, out);
    else throw Error(ErrorCode::InvalidInput, "unknown command \"" + cx.command + "\"");
  } catch (const Error& e) {
    out["error"] = {{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
    res.exit_code = exit_for(e.code());
  } catch (const Json::exception& e) {
    out["error"] = {{"code", "InvalidInput"}, {"message", e.what()}};
    res.exit_code = kInputError;
  }
  out["exit_code"] = res.exit_code;
  return res;
}

Outcome run_text(const std::string& text, const RunOptions& opt) {
  Json problem;
  try {
    problem = Json::parse(text);
  } catch (const Json::parse_error& e) {
    Outcome res;
    res.report = {{"command", nullptr},
                  {"warnings", Json::array()},
                  {"error", {{"code", "InvalidInput"}, {"message", e.what()}}},
                  {"exit_code", kInputError}};
    res.exit_code = kInputError;
    return res;
  }
  return run(problem, opt);
}

std::string dump_report(const Json& report) { return report.dump(2) + "\n"; }

}  // namespace tphk::cli
