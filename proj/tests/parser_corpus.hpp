#pragma once

#include <vector>

namespace testing_support {

struct MalformedCase {
  const char* name;
  const char* text;
  int line;
  int column;
  const char* needle;  // substring of the message
};

inline const std::vector<MalformedCase>& malformed_corpus() {
  static const std::vector<MalformedCase> cases = {
      {"missing dims", "L = y[1];", 1, 1, "expected 'dims"},
      {"dims non-integer", "dims 1 1.5 1;\nL = y[1];", 1, 8, "expected an integer n"},
      {"dims zero m", "dims 0 1 1;\nL = y[1];", 1, 1, "invalid dims"},
      {"missing semicolon after dims", "dims 1 1 1\nL = y[1];", 2, 1, "expected ';'"},
      {"order overflow", "dims 2 1 2;\nL = z[1;1 1 1];", 2, 1, "jet order 3 > k = 2"},
      {"field index out of range", "dims 1 1 1;\nL = y[2];", 2, 7, "field index 2 out of range"},
      {"derivative index out of range", "dims 2 1 1;\nL = z[1;3];", 2, 9, "derivative index 3"},
      {"unknown character", "dims 1 1 1;\nL = y[1] $ 2;", 2, 10, "unexpected character"},
      {"unbalanced paren", "dims 1 1 1;\nL = (y[1] + 1;", 2, 14, "expected ')'"},
      {"division by jet", "dims 1 1 1;\nL = 1 / z[1;1];", 2, 7, "division only by a constant"},
      {"division by zero", "dims 1 1 1;\nL = y[1] / (2 - 2);", 2, 10, "division by zero"},
      {"asymmetric metric", "dims 2 1 1;\nmetric g = [[1, 2], [3, 1]];\nL = z[1;1]^2;", 2, 8,
       "not symmetric"},
      {"singular metric", "dims 2 1 1;\nmetric g = [[1, 1], [1, 1]];\nL = z[1;1]^2;", 2, 8,
       "not invertible"},
      {"non-square metric", "dims 2 1 1;\nmetric g = [[1, 0], [0]];\nL = z[1;1]^2;", 2, 8,
       "not square"},
      {"duplicate metric", "dims 1 1 1;\nmetric g = diag(1);\nmetric g = diag(2);\nL = y[1];", 3, 8,
       "duplicate metric"},
      {"duplicate L", "dims 1 1 1;\nL = y[1];\nL = y[1];", 3, 1, "duplicate 'L'"},
      {"metric after L", "dims 1 1 1;\nL = y[1];\nmetric g = diag(1);", 3, 1, "out of order"},
      {"missing L", "dims 1 1 1;\n", 2, 1, "missing Lagrangian"},
      {"field before L", "dims 1 1 1;\nfield Y = { x[1] -> 1 };", 2, 1, "before the Lagrangian"},
      {"non-projectable field", "dims 1 1 1;\nL = z[1;1]^2;\nfield Y = { x[1] -> y[1] };", 3, 21,
       "not allowed in a base component"},
      {"duplicate field component", "dims 1 1 1;\nL = z[1;1]^2;\nfield Y = { x[1] -> 1, x[1] -> 2 };", 3,
       24, "duplicate component"},
      {"duplicate field", "dims 1 1 1;\nL = z[1;1]^2;\nfield Y = { x[1] -> 1 };\nfield Y = { y[1] -> 1 };",
       4, 7, "duplicate field"},
      {"skewQ single index", "dims 2 1 2;\nL = z[1;1 1]^2;\nskewQ[1; 1] = y[1];", 3, 1,
       "between 2 and k"},
      {"duplicate skewQ", "dims 2 1 2;\nL = z[1;1 1]^2;\nskewQ[1; 1 2] = y[1];\nskewQ[1; 1 2] = y[1];", 4,
       1, "duplicate skewQ"},
      {"unbound sum variable", "dims 2 1 1;\nL = z[1;i]^2;", 2, 9, "unbound index variable 'i'"},
      {"shadowed sum variable", "dims 2 1 1;\nL = sum(i, 1, 2, sum(i, 1, 2, z[1;i]));", 2, 18, "shadows"},
      {"sum with reserved name", "dims 1 1 1;\nL = sum(x, 1, 1, y[1]);", 2, 9, "reserved word"},
      {"unknown name", "dims 1 1 1;\nL = g[1,1] * y[1];", 2, 5, "unknown name"},
      {"pi in Lagrangian", "dims 1 1 1;\nL = pi * y[1];", 2, 5, "'pi' is only allowed"},
      {"grid too coarse", "dims 1 1 1;\nL = z[1;1]^2;\ngrid (0, 1, 4, open);", 3, 13, "at least 8 points"},
      {"grid wrong dimension count", "dims 2 1 1;\nL = z[1;1]^2;\ngrid (0, 1, 16, open);", 3, 22,
       "one (lo, hi, n, periodic|open) group per base dimension"},
      {"grid bad flag", "dims 1 1 1;\nL = z[1;1]^2;\ngrid (0, 1, 16, closed);", 3, 17,
       "expected 'periodic' or 'open'"},
      {"grid inverted bounds", "dims 1 1 1;\nL = z[1;1]^2;\ngrid (1, 0, 16, open);", 3, 7, "lo < hi"},
      {"evolve backwards", "dims 2 1 2;\nL = z[1;1 1]^2;\nevolve 1 0 10;", 3, 1, "t1 > t0"},
      {"section with jet", "dims 1 1 1;\nL = z[1;1]^2;\nsection s = { y[1] -> z[1;1] };", 3, 23,
       "not allowed in a section component"},
      {"z without derivative index", "dims 1 1 1;\nL = z[1;];", 2, 5, "at least one derivative index"},
      {"chained power", "dims 1 1 1;\nL = y[1]^2^2;", 2, 11, "chained '^'"},
      {"malformed number", "dims 1 1 1;\nL = 1.2.3 * y[1];", 2, 5, "malformed number"},
      {"unknown statement", "dims 1 1 1;\nL = y[1];\nfoo = 1;", 3, 1, "unknown statement 'foo'"},
      {"trailing operator", "dims 1 1 1;\nL = y[1] + ;", 2, 12, "expected a number, variable"},
  };
  return cases;
}

// Inputs that must parse; rendered and reparsed in the round-trip property.
inline const std::vector<const char*>& valid_inline_corpus() {
  static const std::vector<const char*> cases = {
      "dims 1 1 1; L = (1/2)*z[1;1]^2;",
      "dims 2 1 1; metric h = [[2, 1/3], [1/3, -1]]; L = sum(i,1,2,sum(j,1,2,h[i,j]*z[1;i]*z[1;j])) + x[1]*y[1];",
      "dims 2 2 2; L = 0.25*z[1;2 1]*z[2;1 2] - 1e-2*y[2]^3; skewQ[2; 2 1] = x[1]*y[1]; skewQ[2; 1 2] = -x[1]*y[1];",
      "dims 1 2 1; L = z[1;1]*z[2;1] - y[1]*y[2]; field rot = { y[1] -> y[2], y[2] -> -y[1] }; section s = { y[1] -> x[1]^2 };",
      "dims 2 1 2; L = z[1;1 1]^2 - z[1;2 2]^2; grid (0, 1, 12, open) (-pi, pi, 32, periodic); evolve -0.5 2.5 7;",
      "# comment only line\ndims 1 1 2;\nL = -z[1;1 1]^2 + 3*x[1]^2*y[1]; # trailing\n",
  };
  return cases;
}

}  // namespace testing_support
