#include "coherelab/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "coherelab/error.hpp"
#include "coherelab/format.hpp"
#include "json.hpp"

namespace coherelab {

namespace {

using Json = nlohmann::json;

Json parse_json(std::string_view text, const char* what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InvalidInput(std::string(what) + ": malformed JSON: " + e.what());
  }
}

std::string at(const char* name, std::size_t j, std::size_t k) {
  return std::string(name) + "[" + std::to_string(j) + "][" + std::to_string(k) + "]";
}

Complex parse_entry(const Json& e, const std::string& where) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
    throw InvalidInput(where + ": expected a [re, im] pair");
  return {e[0].get<double>(), e[1].get<double>()};
}

ComplexMatrix parse_matrix(const Json& m, std::size_t dim, const char* name) {
  if (!m.is_array() || m.size() != dim)
    throw InvalidInput(std::string(name) + ": expected " + std::to_string(dim) + " rows");
  ComplexMatrix out(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    if (!m[j].is_array() || m[j].size() != dim)
      throw InvalidInput(std::string(name) + "[" + std::to_string(j) + "]: expected " + std::to_string(dim) +
                         " entries");
    for (std::size_t k = 0; k < dim; ++k) {
      const Complex z = parse_entry(m[j][k], at(name, j, k));
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw InvalidInput(at(name, j, k) + ": non-finite entry");
      out(j, k) = z;
    }
  }
  return out;
}

// Names the worst entry before HermitianMatrix rejects the matrix.
void check_hermitian(const ComplexMatrix& m, const char* name) {
  const double tol = 1e-12 * std::max(1.0, m.frobenius_norm());
  for (std::size_t j = 0; j < m.dim(); ++j)
    for (std::size_t k = j; k < m.dim(); ++k)
      if (std::abs(m(j, k) - std::conj(m(k, j))) > tol)
        throw InvalidInput(at(name, j, k) + " and " + at(name, k, j) + ": matrix is not Hermitian");
}

std::size_t parse_dim(const Json& j, const char* what) {
  if (!j.is_object()) throw InvalidInput(std::string(what) + ": expected a JSON object");
  if (!j.contains("dim") || !j["dim"].is_number_integer() || j["dim"].get<long long>() < 1)
    throw InvalidInput(std::string(what) + ": 'dim' must be a positive integer");
  return j["dim"].get<std::size_t>();
}

Json matrix_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (std::size_t j = 0; j < m.dim(); ++j) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.dim(); ++k)
      row.push_back(Json::array({round_to_12_digits(m(j, k).real()), round_to_12_digits(m(j, k).imag())}));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

DensityMatrix parse_state_json(std::string_view text) {
  const Json j = parse_json(text, "state");
  const std::size_t dim = parse_dim(j, "state");
  if (!j.contains("matrix")) throw InvalidInput("state: missing 'matrix'");
  const ComplexMatrix m = parse_matrix(j["matrix"], dim, "matrix");
  check_hermitian(m, "matrix");
  return DensityMatrix(m);
}

DensityMatrix read_state_file(const std::string& path) { return parse_state_json(read_text_file(path)); }

std::string state_to_json(const DensityMatrix& rho) {
  Json j;
  j["dim"] = rho.dim();
  j["matrix"] = matrix_json(rho.matrix());
  return j.dump() + "\n";
}

void write_state_file(const std::string& path, const DensityMatrix& rho) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path);
  out << state_to_json(rho);
}

Povm parse_povm_json(std::string_view text) {
  const Json j = parse_json(text, "povm");
  const std::size_t dim = parse_dim(j, "povm");
  if (!j.contains("elements") || !j["elements"].is_array() || j["elements"].empty())
    throw InvalidInput("povm: 'elements' must be a nonempty array");
  std::vector<std::string> labels;
  std::vector<HermitianMatrix> elements;
  for (std::size_t i = 0; i < j["elements"].size(); ++i) {
    const Json& e = j["elements"][i];
    const std::string name = "elements[" + std::to_string(i) + "].matrix";
    if (!e.is_object() || !e.contains("matrix")) throw InvalidInput(name + ": missing");
    labels.push_back(e.contains("label") && e["label"].is_string() ? e["label"].get<std::string>()
                                                                     : std::to_string(i));
    const ComplexMatrix m = parse_matrix(e["matrix"], dim, name.c_str());
    check_hermitian(m, name.c_str());
    elements.emplace_back(m);
  }
  return Povm(std::move(labels), std::move(elements));
}

Povm parse_povm_spec(std::string_view spec, std::size_t dim) {
  if (spec == "fourier") return Povm::fourier(dim);
  constexpr std::string_view prefix = "basis:";
  if (spec.substr(0, prefix.size()) == prefix) {
    const Json j = parse_json(spec.substr(prefix.size()), "basis");
    if (!j.is_array() || j.size() != dim)
      throw InvalidInput("basis: expected " + std::to_string(dim) + " vectors");
    std::vector<std::vector<Complex>> basis;
    for (std::size_t v = 0; v < dim; ++v) {
      if (!j[v].is_array() || j[v].size() != dim)
        throw InvalidInput("basis[" + std::to_string(v) + "]: expected " + std::to_string(dim) + " entries");
      std::vector<Complex> vec;
      for (std::size_t k = 0; k < dim; ++k) vec.push_back(parse_entry(j[v][k], at("basis", v, k)));
      basis.push_back(std::move(vec));
    }
    for (std::size_t a = 0; a < dim; ++a)
      for (std::size_t b = a; b < dim; ++b) {
        Complex ip = 0.0;
        for (std::size_t k = 0; k < dim; ++k) ip += std::conj(basis[a][k]) * basis[b][k];
        if (std::abs(ip - (a == b ? 1.0 : 0.0)) > kPovmTolerance)
          throw InvalidInput("basis: vectors " + std::to_string(a) + " and " + std::to_string(b) +
                             " are not orthonormal");
      }
    return Povm::from_basis(basis);
  }
  const Povm p = parse_povm_json(read_text_file(std::string(spec)));
  if (p.dim() != dim) throw InvalidInput("povm: dimension does not match the state");
  return p;
}

}  // namespace coherelab
