#include "lqss/errors.hpp"

#include <sstream>

namespace lqss {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::validation: return "validation";
    case ErrorKind::structure: return "structure";
    case ErrorKind::unsupported: return "unsupported_structure";
    case ErrorKind::degeneracy: return "degeneracy";
    case ErrorKind::numerical: return "numerical";
    case ErrorKind::pole: return "pole";
    case ErrorKind::unit_eigenvalue: return "unit_eigenvalue";
  }
  return "unknown";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::validation:
    case ErrorKind::structure:
      return 2;
    case ErrorKind::unsupported:
      return 3;
    default:
      return 4;
  }
}

namespace {
std::string unit_eigenvalue_message(std::complex<double> ev) {
  std::ostringstream os;
  os.precision(12);
  os << "feedback matrix has eigenvalue " << ev.real() << (ev.imag() < 0 ? "-" : "+")
     << std::abs(ev.imag()) << "i within tolerance of 1; the Cayley transform is undefined";
  return os.str();
}
}  // namespace

UnitEigenvalueError::UnitEigenvalueError(std::complex<double> eigenvalue)
    : Error(ErrorKind::unit_eigenvalue, unit_eigenvalue_message(eigenvalue)),
      eigenvalue_(eigenvalue) {}

}  // namespace lqss
