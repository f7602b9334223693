#pragma once

#include <string>
#include <vector>

namespace corpus {

// Round-trip corpus for the expression parser.
inline const std::vector<std::string>& expressions() {
  static const std::vector<std::string> list{
      "x",
      "1",
      "0.5",
      ".25",
      "3.",
      "1e-3",
      "2.5E+2",
      "x^2",
      "x^2^3",
      "(x^2)^3",
      "-x",
      "--x",
      "-x^2",
      "(-x)^2",
      "2^-x",
      "2^-x^2",
      "x - 1 - 2",
      "x - (1 - 2)",
      "x/2/3",
      "x/(2/3)",
      "x*2 + 3*x",
      "2 + 3*x^2",
      "(2 + 3)*x",
      "1/(1 + 25*(x - 0.5)^2)",
      "sin(3.141592653589793*x)",
      "cos(5*x)",
      "exp(x)",
      "exp(-x^2)",
      "log(1 + x)",
      "sqrt(x)",
      "sqrt(1 - x^2)",
      "abs(x - 0.5)",
      "min(x, 1 - x)",
      "max(x, 0.3)",
      "max(min(x, 0.7), 0.2)",
      "x^3 - 2*x + 1",
      "x*(1 - x)*(x - 0.25)",
      "sin(x)^2 + cos(x)^2",
      "exp(sin(x))*log(2 + x)",
      "-(x + 1)",
      "-(x*2)",
      "3 - -x",
      "x*-2",
      "((((x))))",
      "  x  +  1  ",
      "abs(sin(10*x))",
      "sqrt(abs(x - 0.3))",
      "x^0.5 + x^1.5",
      "1/(2 + cos(x))",
      "min(exp(x), 2)*max(x^2, 0.1) - 0.5/(1 + x)",
  };
  return list;
}

}  // namespace corpus
