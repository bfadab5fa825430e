#include "ramlock/descriptor.hpp"

#include <fstream>
#include <sstream>

namespace ramlock {

namespace {

Json w_to_json(const LocalField& k, const WElt& w) {
  std::vector<i64> v;
  for (u64 c : w) v.push_back(k.zmod().to_signed(c));
  while (v.size() > 1 && v.back() == 0) v.pop_back();
  if (v.size() == 1) return v[0];
  return v;
}

std::vector<i64> int_poly(const Json& j) {
  if (j.is_number_integer()) return {j.get<i64>()};
  require(j.is_array(), ErrorKind::ParseError, "coefficient must be an integer or integer list");
  std::vector<i64> out;
  for (const auto& x : j) {
    require(x.is_number_integer(), ErrorKind::ParseError, "coefficient entries must be integers");
    out.push_back(x.get<i64>());
  }
  return out;
}

WElt w_from_ints(const LocalField& k, const std::vector<i64>& v) {
  require(static_cast<int>(v.size()) <= k.f(), ErrorKind::ParseError,
          "unramified coefficient longer than f");
  WElt w = k.w_zero();
  for (size_t i = 0; i < v.size(); ++i) w[i] = k.zmod().from_signed(v[i]);
  return w;
}

i64 get_int(const Json& j, const char* key) {
  require(j.contains(key), ErrorKind::ParseError, std::string("missing key '") + key + "'");
  require(j[key].is_number_integer(), ErrorKind::ParseError,
          std::string("key '") + key + "' must be an integer");
  return j[key].get<i64>();
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

int default_prec(u64 p, int e) { return std::min(kDefaultPrec, LocalField::max_prec(p, e)); }

Json field_to_json(const LocalField& k) {
  Json j;
  j["p"] = k.p();
  j["f"] = k.f();
  Json eis = Json::array();
  for (const auto& c : k.data().eis) eis.push_back(w_to_json(k, c));
  eis.push_back(1);
  j["eisenstein"] = eis;
  j["prec"] = k.prec();
  return j;
}

LocalField field_from_json(const Json& j) {
  require(j.is_object(), ErrorKind::ParseError, "field descriptor must be an object");
  const i64 p = get_int(j, "p");
  require(p > 0, ErrorKind::InvalidArgument, "p must be positive");
  const i64 f = j.contains("f") ? get_int(j, "f") : 1;
  require(j.contains("eisenstein") && j["eisenstein"].is_array(), ErrorKind::ParseError,
          "missing 'eisenstein' coefficient list");
  std::vector<std::vector<i64>> eis;
  for (const auto& c : j["eisenstein"]) eis.push_back(int_poly(c));
  const int e = std::max<int>(1, static_cast<int>(eis.size()) - 1);
  const i64 prec = j.contains("prec") ? get_int(j, "prec") : default_prec(static_cast<u64>(p), e);
  return LocalField::make(static_cast<u64>(p), static_cast<int>(f), eis, static_cast<int>(prec));
}

Json element_to_json(const FieldElement& x) {
  const LocalField& k = x.field();
  if (x.is_zero()) return 0;
  const bool integral = x.val() >= 0;
  const OElt a = integral ? x.integral() : x.unit();
  Json coeffs = Json::array();
  for (int j = 0; j < k.e(); ++j) coeffs.push_back(w_to_json(k, k.coeff(a, j)));
  while (coeffs.size() > 1 && coeffs.back() == Json(0)) coeffs.erase(coeffs.end() - 1);
  if (integral) {
    if (coeffs.size() == 1 && coeffs[0].is_number_integer()) return coeffs[0];
    return coeffs;
  }
  Json o;
  o["pi_power"] = x.val();
  o["coeffs"] = coeffs;
  return o;
}

FieldElement element_from_json(const LocalField& k, const Json& j) {
  if (j.is_number_integer()) return FieldElement::from_int(k, j.get<i64>());
  int shift = 0;
  const Json* coeffs = &j;
  if (j.is_object()) {
    shift = static_cast<int>(get_int(j, "pi_power"));
    require(j.contains("coeffs"), ErrorKind::ParseError, "element object needs 'coeffs'");
    coeffs = &j["coeffs"];
  }
  if (coeffs->is_number_integer())
    return FieldElement::from_int(k, coeffs->get<i64>()).mul_pi_power(shift);
  require(coeffs->is_array(), ErrorKind::ParseError, "element must be an integer or a list");
  FieldElement acc = FieldElement::zero(k);
  FieldElement pw = FieldElement::one(k);
  const FieldElement pi = FieldElement::uniformizer(k);
  for (const auto& c : *coeffs) {
    acc = acc + FieldElement(k, k.from_w(w_from_ints(k, int_poly(c)))) * pw;
    pw = pw * pi;
  }
  return acc.mul_pi_power(shift);
}

Json parse_document(const std::string& text) {
  const std::string t = trim(text);
  if (!t.empty() && t[0] == '{') {
    try {
      return Json::parse(t);
    } catch (const std::exception& e) {
      fail(ErrorKind::ParseError, e.what());
    }
  }
  Json root = Json::object();
  Json* table = &root;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      require(line.back() == ']', ErrorKind::ParseError, "bad table header on line " + std::to_string(lineno));
      Json* cur = &root;
      std::string path = line.substr(1, line.size() - 2);
      std::istringstream ps(path);
      std::string part;
      while (std::getline(ps, part, '.')) {
        part = trim(part);
        if (!cur->contains(part)) (*cur)[part] = Json::object();
        cur = &(*cur)[part];
      }
      table = cur;
      continue;
    }
    const auto eq = line.find('=');
    require(eq != std::string::npos, ErrorKind::ParseError, "expected key = value on line " + std::to_string(lineno));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      (*table)[key] = Json::parse(value);
    } catch (const std::exception&) {
      fail(ErrorKind::ParseError, "cannot parse value on line " + std::to_string(lineno));
    }
  }
  return root;
}

std::string to_toml(const Json& j) {
  std::ostringstream out;
  std::vector<std::pair<std::string, const Json*>> tables;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.value().is_object())
      tables.emplace_back(it.key(), &it.value());
    else
      out << it.key() << " = " << it.value().dump() << "\n";
  }
  for (const auto& [name, t] : tables) {
    out << "\n[" << name << "]\n";
    for (auto it = t->begin(); it != t->end(); ++it) out << it.key() << " = " << it.value().dump() << "\n";
  }
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::InvalidArgument, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace ramlock
