#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "bernprim/real_function.hpp"

namespace bernprim::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,    // bad arguments or unparsable expression
  kExitNumeric = 3,  // evaluation failure or a failed check
};

/// Sup-norm errors of f_n and F_n along an ascending degree schedule.
struct ConvergenceReport {
  std::string function_text;
  std::vector<int> degrees;
  std::vector<double> sup_errors_fn;  // grid sup |f_n - f|
  std::vector<double> sup_errors_Fn;  // grid sup |F_n - Simpson antiderivative|
  /// log(err_k / err_{k+1}) / log(n_{k+1} / n_k); equals log2 of the error
  /// ratio when degrees double. NaN when an error is zero.
  std::vector<double> empirical_rates;
};

ConvergenceReport convergence_report(const std::string& function_text, const RealFunction& f,
                                     std::span<const int> degrees, int grid_size, int simpson_panels);

/// Runs the command line (arguments without the program name). Reports go
/// to `out` (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bernprim::cli
