#include "heintze/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "heintze/errors.hpp"

namespace heintze {

namespace {

double number(const Json& j, const char* what) {
  if (!j.is_number()) throw SpecError(std::string(what) + " must be a number");
  return j.get<double>();
}

}  // namespace

JordanSpec parse_jordan_spec(const Json& j) {
  if (!j.is_object() || !j.contains("blocks") || !j.at("blocks").is_array())
    throw SpecError("spec: expected an object with a \"blocks\" array");
  std::vector<EigenBlocks> blocks;
  for (const auto& b : j.at("blocks")) {
    if (!b.is_object() || !b.contains("alpha") || !b.contains("sizes"))
      throw SpecError("spec: each block needs \"alpha\" and \"sizes\"");
    EigenBlocks eb;
    const auto& a = b.at("alpha");
    if (a.is_array()) {
      if (a.size() != 2) throw SpecError("spec: complex alpha must be [re, im]");
      if (number(a[1], "imaginary part") != 0.0)
        throw SpecError("spec: complex eigenvalues are not supported");
      eb.alpha = number(a[0], "alpha");
    } else {
      eb.alpha = number(a, "alpha");
    }
    if (b.contains("imag") && number(b.at("imag"), "imag") != 0.0)
      throw SpecError("spec: complex eigenvalues are not supported");
    if (!b.at("sizes").is_array()) throw SpecError("spec: sizes must be an array");
    for (const auto& s : b.at("sizes")) {
      if (!s.is_number_integer()) throw SpecError("spec: block sizes must be integers");
      eb.sizes.push_back(s.get<int>());
    }
    blocks.push_back(std::move(eb));
  }
  return JordanSpec::make(std::move(blocks));
}

Json to_json(const JordanSpec& spec) {
  Json blocks = Json::array();
  for (const auto& b : spec.blocks()) blocks.push_back({{"alpha", b.alpha}, {"sizes", b.sizes}});
  return {{"blocks", blocks}};
}

Level parse_level_text(std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != '(' && c != ')' && c != ' ' && c != '[' && c != ']') s.push_back(c);
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw SpecError("level must be written as alpha,ell");
  try {
    std::size_t used = 0;
    const std::string ell_text = s.substr(comma + 1);
    const double alpha = std::stod(s.substr(0, comma));
    const int ell = std::stoi(ell_text, &used);
    if (used != ell_text.size()) throw SpecError("level: ell must be an integer");
    return Level{alpha, ell};
  } catch (const std::logic_error&) {
    throw SpecError("level must be written as alpha,ell");
  }
}

Level parse_level(const Json& j) {
  if (j.is_string()) return parse_level_text(j.get_ref<const std::string&>());
  if (j.is_array() && j.size() == 2 && j[1].is_number_integer())
    return Level{number(j[0], "alpha"), j[1].get<int>()};
  if (j.is_object() && j.contains("alpha") && j.contains("ell") && j.at("ell").is_number_integer())
    return Level{number(j.at("alpha"), "alpha"), j.at("ell").get<int>()};
  throw SpecError("level must be [alpha, ell]");
}

Vector parse_vector_text(std::string_view text) {
  std::string s(text);
  for (char& c : s)
    if (c == ',' || c == '[' || c == ']' || c == '(' || c == ')') c = ' ';
  std::istringstream is(s);
  std::vector<double> values;
  std::string tok;
  while (is >> tok) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw SpecError("bad number: " + tok);
    } catch (const std::logic_error&) {
      throw SpecError("bad number: " + tok);
    }
  }
  return Eigen::Map<Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

Vector parse_vector(const Json& j) {
  if (j.is_string()) return parse_vector_text(j.get_ref<const std::string&>());
  if (!j.is_array()) throw SpecError("expected an array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = number(j[i], "entry");
  return v;
}

Matrix parse_matrix(const Json& j) {
  if (!j.is_array()) throw SpecError("expected a matrix (array of rows)");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows == 0 ? 0 : static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Vector row = parse_vector(j[static_cast<std::size_t>(r)]);
    if (row.size() != cols) throw SpecError("matrix rows must have equal length");
    m.row(r) = row.transpose();
  }
  return m;
}

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json to_json(const Level& level) { return Json::array({level.alpha, level.ell}); }

MapDescriptor parse_map(const OrderedBasis& basis, const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    throw SpecError("map: expected an object with a \"kind\"");
  const auto kind = j.at("kind").get<std::string>();
  const int n = basis.n();
  const auto need = [&](const char* key) -> const Json& {
    if (!j.contains(key)) throw SpecError("map " + kind + ": missing \"" + key + "\"");
    return j.at(key);
  };
  if (kind == "identity") return identity_triangular(basis);
  if (kind == "dilation") return dilation_map(basis, number(need("t"), "t"));
  if (kind == "translation") return translation_map(basis, parse_vector(need("v")));
  if (kind == "affine_qsim") {
    const Matrix rotation = j.contains("rotation") ? parse_matrix(j.at("rotation")) : Matrix::Identity(n, n);
    const Vector translation = j.contains("translation") ? parse_vector(j.at("translation")) : Vector::Zero(n);
    const Vector scale = j.contains("scale") ? parse_vector(j.at("scale")) : Vector{};
    const double s = j.contains("s") ? number(j.at("s"), "s") : 0.0;
    return make_affine_qsim(basis, s, rotation, translation, scale);
  }
  if (kind == "linear") {
    Matrix m = parse_matrix(need("matrix"));
    if (m.rows() != n || m.cols() != n) throw SpecError("map linear: matrix must be n x n");
    return linear_map(std::move(m));
  }
  if (kind == "unipotent_shear") {
    std::vector<std::vector<PolyTerm>> terms(basis.ranges().size());
    for (const auto& b : need("B")) {
      if (!b.contains("i") || !b.at("i").is_number_integer())
        throw SpecError("map unipotent_shear: each entry needs an integer \"i\"");
      const int i = b.at("i").get<int>();
      if (i < 1 || i > static_cast<int>(terms.size()))
        throw SpecError("map unipotent_shear: level index out of range");
      if (b.value("expr", std::string("poly")) != "poly")
        throw SpecError("map unipotent_shear: only \"poly\" expressions are supported");
      for (const auto& c : b.value("coeffs", Json::array())) {
        PolyTerm t;
        t.out = c.value("out", 0);
        t.coef = number(c.at("coef"), "coef");
        t.powers = c.value("powers", std::vector<int>{});
        terms[static_cast<std::size_t>(i - 1)].push_back(std::move(t));
      }
    }
    try {
      return polynomial_shear(basis, std::move(terms));
    } catch (const DomainError& e) {
      throw SpecError(e.what());
    }
  }
  throw SpecError("map: unknown kind \"" + kind + "\"");
}

namespace {

void dump(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::object: {
      out.push_back('{');
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out.push_back(',');
        first = false;
        out += Json(key).dump();
        out.push_back(':');
        dump(value, out);
      }
      out.push_back('}');
      break;
    }
    case Json::value_t::array: {
      out.push_back('[');
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out.push_back(',');
        dump(j[i], out);
      }
      out.push_back(']');
      break;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (std::isnan(v)) {
        out += "\"nan\"";
      } else if (std::isinf(v)) {
        out += v > 0 ? "\"inf\"" : "\"-inf\"";
      } else {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.12e", v);
        out += buf;
      }
      break;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string canonical_dump(const Json& j) {
  std::string out;
  dump(j, out);
  return out;
}

}  // namespace heintze
