#include "doctest.h"

#include <random>
#include <string>

#include "spinspec/catalog.hpp"
#include "spinspec/errors.hpp"
#include "spinspec/problem.hpp"

using namespace spinspec;

namespace {

const std::string kS1 = R"({"k": [0,0,0], "re": [[0,1],[1,0]], "im": [[0,0],[0,0]]})";
const std::string kS2 = R"({"k": [0,0,0], "re": [[0,0],[0,0]], "im": [[0,-1],[1,0]]})";
const std::string kS3 = R"({"k": [0,0,0], "re": [[1,0],[0,-1]], "im": [[0,0],[0,0]]})";

std::string with_components(const std::string& c1, const std::string& extra = "") {
  return R"({"name": "t", "symbol": [[)" + c1 + "], [" + kS2 + "], [" + kS3 + "]]" + extra + "}";
}

void check_same(const ProblemSpec& a, const ProblemSpec& b) {
  for (int alpha = 0; alpha < 3; ++alpha) {
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) CHECK(a.symbol[alpha](r, c).coefficients() == b.symbol[alpha](r, c).coefficients());
    }
  }
  CHECK(a.weight.coefficients() == b.weight.coefficients());
  CHECK(a.reference.has_value() == b.reference.has_value());
  CHECK(a.truncation == b.truncation);
  CHECK(a.grid == b.grid);
  CHECK(a.name == b.name);
}

}  // namespace

TEST_CASE("standard spec parses with defaults") {
  const ProblemSpec p = parse_problem(with_components(kS1));
  CHECK(p.truncation == 4);
  CHECK(p.grid == 32);
  CHECK(p.weight.coefficients().size() == 1);
  CHECK_FALSE(p.reference.has_value());
  const PrincipalSymbol ref = p.reference_symbol(-1);
  CHECK(ref[1].at({0, 0, 0}).isApprox(Mat2(-pauli_matrices()[1])));
}

TEST_CASE("Hermitian closure fills in the -k partner") {
  const std::string e = R"({"k": [0,0,2], "re": [[0,1],[0,0]], "im": [[0,0],[0,0]]})";
  const ProblemSpec p = parse_problem(with_components(e));
  CHECK(p.symbol[0](0, 1).coefficient({0, 0, 2}) == cd(1.0));
  CHECK(p.symbol[0](1, 0).coefficient({0, 0, -2}) == cd(1.0));
  CHECK(p.symbol[0].is_hermitian());

  // Stating the partner consistently is fine; inconsistently is not.
  const std::string good = e + R"(, {"k": [0,0,-2], "re": [[0,0],[1,0]], "im": [[0,0],[0,0]]})";
  CHECK_NOTHROW(parse_problem(with_components(good)));
  const std::string bad = e + R"(, {"k": [0,0,-2], "re": [[0,0],[2,0]], "im": [[0,0],[0,0]]})";
  CHECK_THROWS_AS(parse_problem(with_components(bad)), ValidationError);
}

TEST_CASE("round trip through canonical JSON") {
  for (const ProblemSpec& p : {catalog::double_turn_problem(), catalog::mirrored_problem(), catalog::standard_problem()}) {
    check_same(p, parse_problem(serialize_problem(p)));
  }
  std::mt19937_64 rng(3);
  const auto rc = catalog::random_case(rng);
  ProblemSpec p;
  p.name = "random";
  p.symbol = rc.symbol.components();
  p.reference = rc.reference.components();
  p.weight = rc.weight;
  p.truncation = 6;
  const ProblemSpec q = parse_problem(serialize_problem(p));
  check_same(p, q);
  for (int alpha = 0; alpha < 3; ++alpha) CHECK(max_coefficient_difference((*q.reference)[alpha], (*p.reference)[alpha]) == 0.0);
  CHECK(serialize_problem(q) == serialize_problem(p));
}

TEST_CASE("validation failures") {
  CHECK_THROWS_AS(parse_problem("{not json"), ValidationError);
  CHECK_THROWS_AS(parse_problem(R"({"name": "x"})"), ValidationError);
  // traced component
  const std::string traced = R"({"k": [0,0,0], "re": [[1,0],[0,1]], "im": [[0,0],[0,0]]})";
  CHECK_THROWS_AS(parse_problem(with_components(traced)), ValidationError);
  // non-Hermitian constant term
  const std::string skew = R"({"k": [0,0,0], "re": [[0,1],[-1,0]], "im": [[0,0],[0,0]]})";
  CHECK_THROWS_AS(parse_problem(with_components(skew)), ValidationError);
  // duplicate frequency
  CHECK_THROWS_AS(parse_problem(with_components(kS1 + ", " + kS1)), ValidationError);
  // non-finite entry
  const std::string inf = R"({"k": [0,0,0], "re": [[0,1e400],[1e400,0]], "im": [[0,0],[0,0]]})";
  CHECK_THROWS_AS(parse_problem(with_components(inf)), ValidationError);
  // weight must be positive on the grid
  CHECK_THROWS_AS(parse_problem(with_components(kS1, R"(, "weight": [{"k": [0,0,0], "re": -1, "im": 0}])")),
                  ValidationError);
  CHECK_THROWS_AS(parse_problem(with_components(
                      kS1, R"(, "weight": [{"k": [0,0,0], "re": 1, "im": 0}, {"k": [1,0,0], "re": 0.8, "im": 0}])")),
                  ValidationError);
  // grid below the 2·degree + 1 rule
  const std::string high = R"({"k": [0,0,5], "re": [[0,1],[0,0]], "im": [[0,0],[0,0]]})";
  CHECK_THROWS_AS(parse_problem(with_components(high, R"(, "grid": 8)")), ValidationError);
  CHECK_NOTHROW(parse_problem(with_components(high, R"(, "grid": 11)")));
}

TEST_CASE("tolerance overrides") {
  const ProblemSpec p = parse_problem(with_components(kS1, R"(, "tolerances": {"lift": 1e-7})"));
  CHECK(p.tol.lift == 1e-7);
  CHECK(p.tol.ellip == Tolerances{}.ellip);
}
