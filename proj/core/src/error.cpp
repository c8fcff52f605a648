#include "extopo/error.hpp"

namespace extopo {

const char* to_string(ErrorDomain domain) noexcept {
  switch (domain) {
    case ErrorDomain::ingest: return "IngestError";
    case ErrorDomain::augment: return "AugmentError";
    case ErrorDomain::noise: return "NoiseError";
    case ErrorDomain::filtration: return "FiltrationError";
    case ErrorDomain::persistence: return "PersistenceError";
    case ErrorDomain::vectorize: return "VectorizeError";
    case ErrorDomain::metric: return "MetricError";
    case ErrorDomain::loss: return "LossError";
  }
  return "Error";
}

const char* kind_name(IngestErrorKind k) noexcept {
  switch (k) {
    case IngestErrorKind::missing_file: return "missing_file";
    case IngestErrorKind::cross_graph_edge: return "cross_graph_edge";
    case IngestErrorKind::parse: return "parse";
  }
  return "unknown";
}

const char* kind_name(AugmentErrorKind k) noexcept {
  switch (k) {
    case AugmentErrorKind::empty: return "empty";
    case AugmentErrorKind::ratio: return "ratio";
  }
  return "unknown";
}

const char* kind_name(NoiseErrorKind k) noexcept {
  switch (k) {
    case NoiseErrorKind::no_features: return "no_features";
    case NoiseErrorKind::fraction: return "fraction";
  }
  return "unknown";
}

const char* kind_name(FiltrationErrorKind k) noexcept {
  switch (k) {
    case FiltrationErrorKind::too_large: return "too_large";
    case FiltrationErrorKind::unknown: return "unknown";
    case FiltrationErrorKind::duplicate: return "duplicate";
    case FiltrationErrorKind::empty: return "empty";
    case FiltrationErrorKind::shape: return "shape";
    case FiltrationErrorKind::non_finite: return "non_finite";
  }
  return "unknown";
}

const char* kind_name(PersistenceErrorKind k) noexcept {
  switch (k) {
    case PersistenceErrorKind::shape: return "shape";
    case PersistenceErrorKind::too_large: return "too_large";
    case PersistenceErrorKind::parse: return "parse";
  }
  return "unknown";
}

const char* kind_name(VectorizeErrorKind k) noexcept {
  switch (k) {
    case VectorizeErrorKind::grid: return "grid";
    case VectorizeErrorKind::sigma: return "sigma";
    case VectorizeErrorKind::resolution: return "resolution";
    case VectorizeErrorKind::params: return "params";
  }
  return "unknown";
}

const char* kind_name(MetricErrorKind k) noexcept {
  switch (k) {
    case MetricErrorKind::grid: return "grid";
    case MetricErrorKind::essential_mismatch: return "essential_mismatch";
    case MetricErrorKind::parameter: return "parameter";
  }
  return "unknown";
}

const char* kind_name(LossErrorKind k) noexcept {
  switch (k) {
    case LossErrorKind::degenerate: return "degenerate";
    case LossErrorKind::alignment: return "alignment";
    case LossErrorKind::shape: return "shape";
    case LossErrorKind::config: return "config";
  }
  return "unknown";
}

}  // namespace extopo
