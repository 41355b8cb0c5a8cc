#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace lqss {

enum class ErrorKind {
  validation,          // malformed input: shapes, schema, non-Hermitian M
  structure,           // matrix lacks doubled-up / Bogoliubov structure
  unsupported,         // Jordan blocks > 2, degenerate N with PP♭ != 0
  degeneracy,          // zero degenerate singular value and similar
  numerical,           // ill-conditioned inversions, failed reconstructions
  pole,                // transfer function evaluated on a pole
  unit_eigenvalue,     // feedback matrix has eigenvalue 1
};

const char* to_string(ErrorKind kind);

// Process exit code used by the command line tool for each error kind.
int exit_code(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class UnitEigenvalueError : public Error {
 public:
  explicit UnitEigenvalueError(std::complex<double> eigenvalue);
  std::complex<double> eigenvalue() const { return eigenvalue_; }

 private:
  std::complex<double> eigenvalue_;
};

}  // namespace lqss
