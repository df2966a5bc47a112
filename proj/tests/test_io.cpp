#include <cstdio>
#include <filesystem>

#include "coherelab/error.hpp"
#include "coherelab/format.hpp"
#include "coherelab/io.hpp"
#include "doctest.h"

using namespace coherelab;

namespace {

double max_entry_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  double m = 0.0;
  for (std::size_t j = 0; j < a.dim(); ++j)
    for (std::size_t k = 0; k < a.dim(); ++k) m = std::max(m, std::abs(a(j, k) - b(j, k)));
  return m;
}

}  // namespace

TEST_CASE("state JSON round trip") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const DensityMatrix rho = random_density(2 + seed % 4, 1 + seed % 2, seed);
    const DensityMatrix back = parse_state_json(state_to_json(rho));
    CHECK(max_entry_diff(back.matrix(), rho.matrix()) < 1e-12);
  }
  const auto path = (std::filesystem::temp_directory_path() / "coherelab_io_test.json").string();
  const DensityMatrix rho = random_density(3, 3, 7);
  write_state_file(path, rho);
  CHECK(max_entry_diff(read_state_file(path).matrix(), rho.matrix()) < 1e-12);
  std::remove(path.c_str());
}

TEST_CASE("state JSON validation names the offending entry") {
  auto message = [](const char* text) {
    try {
      parse_state_json(text);
    } catch (const Error& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("{\"dim\": 2, \"matrix\": [[[1,0],[0,0]],[[0,0]]]}").find("matrix[1]") != std::string::npos);
  CHECK(message("{\"dim\": 2, \"matrix\": [[[1,0],[0,0]],[[0,0],\"x\"]]}").find("matrix[1][1]") != std::string::npos);
  CHECK(message("{\"dim\": 2, \"matrix\": [[[0.5,0],[0.2,0]],[[0.1,0],[0.5,0]]]}").find("matrix[0][1]") !=
        std::string::npos);
  CHECK(message("{\"dim\": 2, \"matrix\": [[[0.5,0],[0,0]],[[0,0],[0.6,0]]]}").find("trace") != std::string::npos);
  CHECK(message("{\"dim\": 0, \"matrix\": []}").find("dim") != std::string::npos);
  CHECK(message("not json").find("malformed") != std::string::npos);
  CHECK_THROWS_AS(parse_state_json("{\"dim\": 2, \"matrix\": [[[0.5,0],[0.9,0]],[[0.9,0],[0.5,0]]]}"), NotPsd);
  // Real entries may be plain numbers.
  CHECK_NOTHROW(parse_state_json("{\"dim\": 2, \"matrix\": [[0.5, 0.5], [0.5, 0.5]]}"));
}

TEST_CASE("POVM specs") {
  CHECK(parse_povm_spec("fourier", 3).size() == 3);
  const Povm b = parse_povm_spec("basis:[[0.6,0.8],[0.8,-0.6]]", 2);
  CHECK(b[0](0, 1).real() == doctest::Approx(0.48));
  const Povm c = parse_povm_spec("basis:[[[0.70710678118654752,0],[0,0.70710678118654752]],"
                                 "[[0.70710678118654752,0],[0,-0.70710678118654752]]]",
                                 2);
  CHECK(std::abs(c[0](0, 1) - Complex(0.0, -0.5)) < 1e-12);
  CHECK_THROWS_AS(parse_povm_spec("basis:[[1,1],[0,1]]", 2), InvalidInput);
  CHECK_THROWS_AS(parse_povm_spec("basis:[[1,0]]", 2), InvalidInput);
  CHECK_THROWS_AS(parse_povm_spec("/nonexistent/povm.json", 2), InvalidInput);

  const Povm f = parse_povm_json(
      R"({"dim": 2, "elements": [{"label": "a", "matrix": [[[0.5,0],[0,0]],[[0,0],[0.5,0]]]},
                                  {"label": "b", "matrix": [[[0.5,0],[0,0]],[[0,0],[0.5,0]]]}]})");
  CHECK(f.labels() == std::vector<std::string>{"a", "b"});
  CHECK_THROWS_AS(parse_povm_json(R"({"dim": 2, "elements": [{"label": "a", "matrix": [[[0.5,0],[0,0]],[[0,0],[0.5,0]]]}]})"),
                  InvalidInput);
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(2.0 / 3.0) == "0.666666666667");
  CHECK(format_number(-1e-20) == "-1e-20");
  CHECK(round_to_12_digits(1.0 / 3.0) == 0.333333333333);
}
