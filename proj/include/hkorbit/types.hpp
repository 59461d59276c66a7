#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hkorbit {

template <typename Scalar>
using Complex = std::complex<Scalar>;

template <typename Scalar>
using CMatrix = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using CVector = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, 1>;

template <typename Scalar>
using RMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using RVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

enum class ErrorKind {
  InvalidArgument,
  DimensionMismatch,
  NotInSubspace,
  CertificateFailure,
  NotConverged,
  SingularSystem,
  NegativeSpectrum,
  Io,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::DimensionMismatch: return "dimension mismatch";
    case ErrorKind::NotInSubspace: return "not in subspace";
    case ErrorKind::CertificateFailure: return "certificate failure";
    case ErrorKind::NotConverged: return "not converged";
    case ErrorKind::SingularSystem: return "singular system";
    case ErrorKind::NegativeSpectrum: return "negative spectrum";
    case ErrorKind::Io: return "i/o";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Subspaces of gl(n, C) that an Element can be tagged with.
enum class SpaceTag { gC, g, k0, m0, mPlus, mMinus };

inline std::string_view to_string(SpaceTag tag) {
  switch (tag) {
    case SpaceTag::gC: return "gC";
    case SpaceTag::g: return "g";
    case SpaceTag::k0: return "k0";
    case SpaceTag::m0: return "m0";
    case SpaceTag::mPlus: return "mPlus";
    case SpaceTag::mMinus: return "mMinus";
  }
  return "gC";
}

inline SpaceTag space_tag_from_string(std::string_view name) {
  if (name == "gC") return SpaceTag::gC;
  if (name == "g") return SpaceTag::g;
  if (name == "k0") return SpaceTag::k0;
  if (name == "m0") return SpaceTag::m0;
  if (name == "mPlus") return SpaceTag::mPlus;
  if (name == "mMinus") return SpaceTag::mMinus;
  throw Error(ErrorKind::InvalidArgument, "unknown space tag '" + std::string(name) + "'");
}

/// An n x n complex matrix together with the subspace it lives in.
template <typename Scalar>
struct Element {
  CMatrix<Scalar> mat;
  SpaceTag tag = SpaceTag::gC;
};

template <typename Scalar>
Complex<Scalar> imag_unit() {
  return Complex<Scalar>(Scalar(0), Scalar(1));
}

/// Relative residual with an absolute floor of one: |r| / max(1, scale).
template <typename Scalar>
Scalar mixed_residual(Scalar r, Scalar scale) {
  using std::abs;
  using std::max;
  return abs(r) / max(Scalar(1), abs(scale));
}

}  // namespace hkorbit
