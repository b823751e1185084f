#pragma once

#include <Eigen/Dense>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace tmm {

using cplx = std::complex<double>;
using Mat4 = Eigen::Matrix<cplx, 4, 4>;
using Vec4 = Eigen::Matrix<cplx, 4, 1>;
using RowVec4 = Eigen::Matrix<cplx, 1, 4>;
using Mat2 = Eigen::Matrix<cplx, 2, 2>;
using Vec2 = Eigen::Matrix<cplx, 2, 1>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

enum class ErrorCode {
  NoRootOnBranch,
  DegenerateRoots,
  PathOnCut,
  OutsideSupport,
  QuadratureFailure,
  OutOfDomain,
  IntegrationFailure,
  ConditioningWarning,
  BranchCutHit,
  DomainRestriction,
  SingularMinor,
  PrecisionExhausted,
  ConfigError
};

const char* to_string(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode c, const std::string& what) : std::runtime_error(what), code_(c) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// max |entry|
template <class M>
double maxabs(const M& m) {
  return m.cwiseAbs().maxCoeff();
}

}  // namespace tmm
