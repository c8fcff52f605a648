#pragma once

#include <stdexcept>
#include <string>

namespace extopo {

/// Which module raised an error. The CLI maps each domain to a fixed exit code.
enum class ErrorDomain {
  ingest,
  augment,
  noise,
  filtration,
  persistence,
  vectorize,
  metric,
  loss,
};

const char* to_string(ErrorDomain domain) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorDomain domain, std::string reason, const std::string& message)
      : std::runtime_error(message), domain_(domain), reason_(std::move(reason)) {}

  ErrorDomain domain() const noexcept { return domain_; }
  /// Short machine-readable reason tag, e.g. "missing_file" or "too_large".
  const std::string& reason() const noexcept { return reason_; }

 private:
  ErrorDomain domain_;
  std::string reason_;
};

namespace detail {
template <ErrorDomain D, typename Kind>
class DomainError : public Error {
 public:
  DomainError(Kind kind, const std::string& message)
      : Error(D, kind_name(kind), message), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};
}  // namespace detail

enum class IngestErrorKind { missing_file, cross_graph_edge, parse };
enum class AugmentErrorKind { empty, ratio };
enum class NoiseErrorKind { no_features, fraction };
enum class FiltrationErrorKind { too_large, unknown, duplicate, empty, shape, non_finite };
enum class PersistenceErrorKind { shape, too_large, parse };
enum class VectorizeErrorKind { grid, sigma, resolution, params };
enum class MetricErrorKind { grid, essential_mismatch, parameter };
enum class LossErrorKind { degenerate, alignment, shape, config };

const char* kind_name(IngestErrorKind k) noexcept;
const char* kind_name(AugmentErrorKind k) noexcept;
const char* kind_name(NoiseErrorKind k) noexcept;
const char* kind_name(FiltrationErrorKind k) noexcept;
const char* kind_name(PersistenceErrorKind k) noexcept;
const char* kind_name(VectorizeErrorKind k) noexcept;
const char* kind_name(MetricErrorKind k) noexcept;
const char* kind_name(LossErrorKind k) noexcept;

using IngestError = detail::DomainError<ErrorDomain::ingest, IngestErrorKind>;
using AugmentError = detail::DomainError<ErrorDomain::augment, AugmentErrorKind>;
using NoiseError = detail::DomainError<ErrorDomain::noise, NoiseErrorKind>;
using FiltrationError = detail::DomainError<ErrorDomain::filtration, FiltrationErrorKind>;
using PersistenceError = detail::DomainError<ErrorDomain::persistence, PersistenceErrorKind>;
using VectorizeError = detail::DomainError<ErrorDomain::vectorize, VectorizeErrorKind>;
using MetricError = detail::DomainError<ErrorDomain::metric, MetricErrorKind>;
using LossError = detail::DomainError<ErrorDomain::loss, LossErrorKind>;

}  // namespace extopo
