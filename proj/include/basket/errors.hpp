#pragma once

#include <stdexcept>
#include <string>

namespace basket {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exact-enumeration and shape errors.
class AssortmentTooLarge : public Error { public: using Error::Error; };
class DimensionMismatch : public Error { public: using Error::Error; };
class ProductNotOffered : public Error { public: using Error::Error; };
class WrongDomain : public Error { public: using Error::Error; };
class EmptyAssortment : public Error { public: using Error::Error; };
class TooLarge : public Error { public: using Error::Error; };

// Estimation preconditions.
class DegenerateColumn : public Error { public: using Error::Error; };
class MomentOutOfRange : public Error { public: using Error::Error; };
class SingularSigma : public Error { public: using Error::Error; };

// Iterative solvers.
class NonConvergence : public Error { public: using Error::Error; };
class InnerSolveFailed : public Error { public: using Error::Error; };

// File ingestion.
class ParseError : public Error { public: using Error::Error; };

}  // namespace basket
