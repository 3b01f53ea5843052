#pragma once

#include <string>
#include <string_view>

namespace tfbm {

enum class ProcessKind { TFBM_I, TFBM_II, TFBM_III, FBM };

/// Process family with its Hurst index and tempering rate (1/time).
/// `lambda` is ignored for FBM.
struct ProcessSpec {
  ProcessKind kind = ProcessKind::FBM;
  double hurst = 0.5;
  double lambda = 0.0;

  /// Throws DomainError naming the violated constraint.
  void validate() const;

  bool operator==(const ProcessSpec&) const = default;
};

/// Validated constructor.
ProcessSpec make_spec(ProcessKind kind, double hurst, double lambda = 0.0);

/// "tfbm1", "tfbm2", "tfbm3", "fbm".
std::string_view to_string(ProcessKind kind);

/// Inverse of to_string; also accepts "TFBM_I" style names. Throws DomainError.
ProcessKind parse_kind(std::string_view name);

/// Human-readable one-liner, e.g. "tfbm1(H=0.3, lambda=0.3)".
std::string describe(const ProcessSpec& spec);

}  // namespace tfbm
