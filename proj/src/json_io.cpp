#include "ncalg/json_io.hpp"

namespace ncalg {

using nlohmann::json;

namespace {

json exp_map_to_json(const ExpMap& em) {
  json out = json::array();
  for (const auto& [id, mult] : em) out.push_back({id, mult});
  return out;
}

ExpMap exp_map_from_json(const json& j) {
  ExpMap em;
  for (const auto& entry : j)
    em.emplace_back(entry.at(0).get<uint32_t>(), entry.at(1).get<uint32_t>());
  return em;
}

template <class C, class CoeffOut>
json normal_form_to_json(const NormalFormT<C>& a, const char* coeff_key,
                         CoeffOut&& coeff_out) {
  json terms = json::array();
  for (const auto& [em, c] : a.terms())
    terms.push_back({{"basis", exp_map_to_json(em)}, {coeff_key, coeff_out(c)}});
  return {{"n", a.n()}, {"d", a.d()}, {"terms", terms}};
}

template <class C, class CoeffIn>
NormalFormT<C> normal_form_from(const json& j, const char* coeff_key,
                                CoeffIn&& coeff_in) {
  NormalFormT<C> a(j.at("n").get<unsigned>(), j.at("d").get<unsigned>());
  for (const auto& term : j.at("terms"))
    a.add_term(exp_map_from_json(term.at("basis")),
               coeff_in(term.at(coeff_key)));
  return a;
}

}  // namespace

json to_json(const MultiPoly& p) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back({e, rat_to_string(c)});
  return {{"arity", p.arity()}, {"terms", terms}};
}

MultiPoly multipoly_from_json(const json& j) {
  MultiPoly p(j.at("arity").get<unsigned>());
  for (const auto& term : j.at("terms"))
    p.add_term(term.at(0).get<ExpVec>(),
               rat_from_string(term.at(1).get<std::string>()));
  return p;
}

json to_json(const RatFunc& f) {
  return {{"num", to_json(f.num())}, {"den", to_json(f.den())}};
}

RatFunc ratfunc_from_json(const json& j) {
  return {multipoly_from_json(j.at("num")), multipoly_from_json(j.at("den"))};
}

json to_json(const NormalForm& a) {
  return normal_form_to_json(a, "coeff",
                             [](const MultiPoly& c) { return to_json(c); });
}

NormalForm normal_form_from_json(const json& j) {
  return normal_form_from<MultiPoly>(
      j, "coeff", [](const json& c) { return multipoly_from_json(c); });
}

json to_json(const RatNormalForm& a) {
  return normal_form_to_json(a, "coeff",
                             [](const RatFunc& c) { return to_json(c); });
}

RatNormalForm rat_normal_form_from_json(const json& j) {
  return normal_form_from<RatFunc>(
      j, "coeff", [](const json& c) { return ratfunc_from_json(c); });
}

json to_json(const LeftFraction& f) {
  const LocalizationContext& ctx = *f.context();
  return {{"n", ctx.n},
          {"d", ctx.d},
          {"g", to_json(ctx.g)},
          {"lift", to_json(ctx.lift)},
          {"denom_exp", f.denominator_exponent()},
          {"numerator", to_json(f.numerator())}};
}

LeftFraction fraction_from_json(const json& j) {
  LocalizationPtr ctx = make_localization(
      j.at("n").get<unsigned>(), j.at("d").get<unsigned>(),
      multipoly_from_json(j.at("g")), normal_form_from_json(j.at("lift")));
  return {ctx, j.at("denom_exp").get<unsigned>(),
          normal_form_from_json(j.at("numerator"))};
}

}  // namespace ncalg
