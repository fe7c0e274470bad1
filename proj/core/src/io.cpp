#include "abmod/io.hpp"

#include <algorithm>
#include <json.hpp>
#include <utility>
#include <vector>

#include "abmod/errors.hpp"
#include "abmod/parser.hpp"

namespace abm {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) {
  fail(errc::syntax_error, what);
}

json parsed(const std::string& text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) bad("malformed JSON document");
  return j;
}

long int_field(const json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
  return j.get<long>();
}

Scalar scalar_from(const json& j) {
  if (j.is_number_integer()) return Scalar(j.get<long>());
  if (!j.is_string()) bad("scalar coefficients must be strings");
  return parse_scalar(j.get<std::string>());
}

Rational rational_from(const json& j, const char* what) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) bad(std::string(what) + " must be a \"p/q\" string");
  return Rational::from_string(j.get<std::string>());
}

// "precision" member, exact when absent.
int prec_of(const json& j) {
  if (!j.is_object() || !j.contains("precision")) return kExactPrec;
  long p = int_field(j.at("precision"), "precision");
  if (p < 0) bad("precision must be nonnegative");
  return p >= kExactPrec ? kExactPrec : static_cast<int>(p);
}

void put_prec(json& j, int prec) {
  if (prec < kExactPrec) j["precision"] = prec;
}

json series_json(const TruncatedSeries& s) {
  json terms = json::array();
  for (int i = 0; i < s.stored_size(); ++i) {
    Scalar c = s.coeff(i);
    if (!c.is_zero()) terms.push_back(json::array({i, c.str()}));
  }
  json j;
  j["terms"] = std::move(terms);
  put_prec(j, s.precision());
  return j;
}

TruncatedSeries series_from(const json& j) {
  const json* terms = &j;
  int prec = kExactPrec;
  if (j.is_object()) {
    if (!j.contains("terms")) bad("series object needs a \"terms\" array");
    terms = &j.at("terms");
    prec = prec_of(j);
  }
  if (!terms->is_array()) bad("series terms must be an array");
  std::vector<Scalar> coeffs;
  for (const json& t : *terms) {
    if (!t.is_array() || t.size() != 2)
      bad("series terms are [exponent, coefficient] pairs");
    long e = int_field(t.at(0), "series exponent");
    if (e < 0) bad("series exponents must be nonnegative");
    if (e >= prec) bad("series exponent at or beyond the precision");
    if (static_cast<std::size_t>(e) >= coeffs.size())
      coeffs.resize(static_cast<std::size_t>(e) + 1, Scalar(0));
    if (!coeffs[static_cast<std::size_t>(e)].is_zero())
      bad("duplicate series exponent");
    coeffs[static_cast<std::size_t>(e)] = scalar_from(t.at(1));
  }
  return TruncatedSeries::from_coeffs(std::move(coeffs), prec);
}

json expansion_json(const XiElement& x) {
  json terms = json::array();
  for (const XiElement::Term& t : x.terms()) {
    json c = json::array();
    for (const Scalar& v : t.c) c.push_back(v.str());
    terms.push_back(json{{"lambda", t.lambda.str()},
                         {"m", t.m},
                         {"j", t.j},
                         {"coeff", std::move(c)}});
  }
  json j;
  j["terms"] = std::move(terms);
  put_prec(j, x.precision());
  return j;
}

FundamentalData fundamental_from(const json& j) {
  if (!j.is_object() || !j.contains("lambda1") || !j.contains("p"))
    bad("fundamental data needs \"lambda1\" and \"p\"");
  FundamentalData d;
  d.lambda1 = rational_from(j.at("lambda1"), "lambda1");
  if (!j.at("p").is_array()) bad("\"p\" must be an array of integers");
  for (const json& v : j.at("p")) {
    long p = int_field(v, "p entry");
    if (p < 0) bad("p entries must be nonnegative");
    d.p.push_back(static_cast<int>(p));
  }
  return d;
}

XiElement expansion_from(const json& j) {
  const json* terms = &j;
  int prec = kExactPrec;
  if (j.is_object()) {
    if (!j.contains("terms")) bad("expansion object needs a \"terms\" array");
    terms = &j.at("terms");
    prec = prec_of(j);
  }
  if (!terms->is_array()) bad("expansion terms must be an array");
  int dim = 1;
  int n_log = 0;
  struct Raw {
    Rational lambda;
    int m, jlog;
    std::vector<Scalar> c;
  };
  std::vector<Raw> raw;
  for (const json& t : *terms) {
    if (!t.is_object()) bad("expansion terms are objects");
    for (const char* key : {"lambda", "m", "j", "coeff"})
      if (!t.contains(key))
        bad(std::string("expansion term needs \"") + key + "\"");
    Raw r;
    r.lambda = rational_from(t.at("lambda"), "lambda");
    long m = int_field(t.at("m"), "shift m");
    long jl = int_field(t.at("j"), "log degree j");
    if (m < 0 || jl < 0) bad("shift and log degree must be nonnegative");
    if (m >= prec) bad("term shift at or beyond the precision");
    r.m = static_cast<int>(m);
    r.jlog = static_cast<int>(jl);
    const json& cj = t.at("coeff");
    if (!cj.is_array() || cj.empty())
      bad("coeff must be a nonempty array");
    for (const json& v : cj) r.c.push_back(scalar_from(v));
    if (raw.empty())
      dim = static_cast<int>(r.c.size());
    else if (static_cast<int>(r.c.size()) != dim)
      bad("inconsistent coeff dimensions");
    n_log = std::max(n_log, r.jlog);
    raw.push_back(std::move(r));
  }
  XiElement x(dim, n_log, prec);
  for (Raw& r : raw) x.add_term(r.lambda, r.jlog, r.m, std::move(r.c));
  return x;
}

}  // namespace

std::string series_to_json(const TruncatedSeries& s) {
  return series_json(s).dump();
}

TruncatedSeries series_from_json(const std::string& text) {
  return series_from(parsed(text));
}

std::string polynomial_to_json(const Polynomial& p) {
  json coeffs = json::array();
  for (const Scalar& c : p.coeffs()) coeffs.push_back(c.str());
  return json{{"coeffs", std::move(coeffs)}}.dump();
}

Polynomial polynomial_from_json(const std::string& text) {
  json j = parsed(text);
  if (!j.is_object() || !j.contains("coeffs") || !j.at("coeffs").is_array())
    bad("polynomial needs a \"coeffs\" array");
  std::vector<Scalar> c;
  for (const json& v : j.at("coeffs")) c.push_back(scalar_from(v));
  return Polynomial(std::move(c));
}

std::string ab_element_to_json(const AbElement& x) {
  json terms = json::array();
  for (const auto& [key, c] : x.terms()) {
    const auto& [d, m] = key;
    terms.push_back(json::array({m, d, c.str()}));
  }
  json j;
  j["terms"] = std::move(terms);
  put_prec(j, x.precision());
  return j.dump();
}

AbElement ab_element_from_json(const std::string& text) {
  json j = parsed(text);
  const json* terms = &j;
  int prec = kExactPrec;
  if (j.is_object()) {
    if (!j.contains("terms")) bad("element object needs a \"terms\" array");
    terms = &j.at("terms");
    prec = prec_of(j);
  }
  if (!terms->is_array()) bad("element terms must be an array");
  AbElement x(prec);
  for (const json& t : *terms) {
    if (!t.is_array() || t.size() != 3)
      bad("element terms are [m, d, coefficient] triples");
    long m = int_field(t.at(0), "b-exponent m");
    long d = int_field(t.at(1), "a-degree d");
    if (m < 0 || d < 0) bad("exponents must be nonnegative");
    if (m >= prec) bad("term at or beyond the precision");
    x += AbElement::monomial(static_cast<int>(m), static_cast<int>(d),
                             scalar_from(t.at(2)), prec);
  }
  return x;
}

std::string module_to_json(const AbModule& e) {
  int k = e.rank();
  json rows = json::array();
  for (int i = 0; i < k; ++i) {
    json row = json::array();
    for (int jcol = 0; jcol < k; ++jcol)
      row.push_back(series_json(e.action_column(jcol)[i]));
    rows.push_back(std::move(row));
  }
  json j;
  j["rank"] = k;
  j["matrix"] = std::move(rows);
  put_prec(j, e.precision());
  return j.dump();
}

AbModule module_from_json(const std::string& text) {
  json j = parsed(text);
  if (!j.is_object()) bad("module files are JSON objects");
  if (!j.contains("rank") || !j.contains("matrix"))
    bad("module needs \"rank\" and \"matrix\"");
  long k = int_field(j.at("rank"), "rank");
  if (k < 0) bad("rank must be nonnegative");
  int prec = prec_of(j);
  const json& rows = j.at("matrix");
  if (!rows.is_array() || rows.size() != static_cast<std::size_t>(k))
    bad("matrix must have one row per basis element");
  std::vector<std::vector<TruncatedSeries>> cols(
      static_cast<std::size_t>(k),
      std::vector<TruncatedSeries>(static_cast<std::size_t>(k)));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array() || rows[i].size() != static_cast<std::size_t>(k))
      bad("matrix rows must have one series per basis element");
    for (std::size_t c = 0; c < rows[i].size(); ++c)
      cols[c][i] = series_from(rows[i][c]);
  }
  return AbModule(std::move(cols), prec);
}

std::string presentation_to_json(const FrescoPresentation& pi) {
  json factors = json::array();
  for (int j = 0; j < pi.rank(); ++j) {
    if (j > 0) factors.push_back(json{{"inv", series_json(pi.s[j - 1])}});
    factors.push_back(json{{"lambda", pi.lambda[j].str()}});
  }
  return json{{"factors", std::move(factors)}}.dump();
}

FrescoPresentation presentation_from_json(const std::string& text) {
  json j = parsed(text);
  if (!j.is_object() || !j.contains("factors") ||
      !j.at("factors").is_array())
    bad("presentation needs a \"factors\" array");
  const json& factors = j.at("factors");
  std::vector<Rational> lambda;
  std::vector<TruncatedSeries> s;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const json& f = factors[i];
    if (!f.is_object()) bad("presentation factors are objects");
    bool linear = (i % 2 == 0);
    if (linear) {
      if (!f.contains("lambda"))
        bad("expected a {\"lambda\": ...} factor");
      lambda.push_back(rational_from(f.at("lambda"), "lambda"));
    } else {
      if (!f.contains("inv"))
        bad("expected an {\"inv\": series} factor between linear ones");
      s.push_back(series_from(f.at("inv")));
    }
  }
  if (lambda.empty() || factors.size() % 2 == 0)
    bad("factors must alternate linear, inverse unit, linear, ...");
  return make_presentation(std::move(lambda), std::move(s));
}

std::string expansion_to_json(const XiElement& x) {
  return expansion_json(x).dump();
}

XiElement expansion_from_json(const std::string& text) {
  return expansion_from(parsed(text));
}

std::string fundamental_data_to_json(const FundamentalData& d) {
  return json{{"lambda1", d.lambda1.str()}, {"p", d.p}}.dump();
}

FundamentalData fundamental_data_from_json(const std::string& text) {
  return fundamental_from(parsed(text));
}

std::string canonical_form_to_json(const CanonicalForm& cf) {
  json s = json::array();
  for (const TruncatedSeries& u : cf.s) s.push_back(series_json(u));
  return json{{"lambda1", cf.data.lambda1.str()},
              {"p", cf.data.p},
              {"s", std::move(s)}}
      .dump();
}

CanonicalForm canonical_form_from_json(const std::string& text) {
  json j = parsed(text);
  if (!j.is_object() || !j.contains("s") || !j.at("s").is_array())
    bad("canonical form needs an \"s\" array of series");
  CanonicalForm cf;
  cf.data = fundamental_from(j);
  for (const json& u : j.at("s")) cf.s.push_back(series_from(u));
  return cf;
}

}  // namespace abm
