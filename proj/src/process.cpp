#include "tfbm/process.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "tfbm/error.hpp"

namespace tfbm {

void ProcessSpec::validate() const {
  if (!std::isfinite(hurst) || !std::isfinite(lambda)) {
    throw DomainError("process parameters must be finite");
  }
  switch (kind) {
    case ProcessKind::TFBM_I:
    case ProcessKind::TFBM_II:
      if (!(hurst > 0.0)) throw DomainError(std::string(to_string(kind)) + " requires H > 0");
      if (!(lambda > 0.0)) {
        throw DomainError(std::string(to_string(kind)) + " requires lambda > 0");
      }
      if (kind == ProcessKind::TFBM_II && hurst == std::floor(hurst)) {
        throw DomainError("tfbm2 requires a non-integer H (the closed form has a pole)");
      }
      break;
    case ProcessKind::TFBM_III:
      if (!(hurst > 0.5 && hurst < 1.0)) {
        throw DomainError("tfbm3 requires 0.5 < H < 1 (H > 0.5 strictly)");
      }
      if (!(lambda > 0.0)) throw DomainError("tfbm3 requires lambda > 0");
      break;
    case ProcessKind::FBM:
      if (!(hurst > 0.0 && hurst < 1.0)) throw DomainError("fbm requires 0 < H < 1");
      break;
  }
}

ProcessSpec make_spec(ProcessKind kind, double hurst, double lambda) {
  ProcessSpec spec{kind, hurst, lambda};
  spec.validate();
  return spec;
}

std::string_view to_string(ProcessKind kind) {
  switch (kind) {
    case ProcessKind::TFBM_I:
      return "tfbm1";
    case ProcessKind::TFBM_II:
      return "tfbm2";
    case ProcessKind::TFBM_III:
      return "tfbm3";
    case ProcessKind::FBM:
      return "fbm";
  }
  return "unknown";
}

ProcessKind parse_kind(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (s == "tfbm1" || s == "tfbm_i" || s == "tfbmi") return ProcessKind::TFBM_I;
  if (s == "tfbm2" || s == "tfbm_ii" || s == "tfbmii") return ProcessKind::TFBM_II;
  if (s == "tfbm3" || s == "tfbm_iii" || s == "tfbmiii") return ProcessKind::TFBM_III;
  if (s == "fbm") return ProcessKind::FBM;
  throw DomainError("unknown process kind '" + std::string(name) + "'");
}

std::string describe(const ProcessSpec& spec) {
  std::ostringstream os;
  os << to_string(spec.kind) << "(H=" << spec.hurst;
  if (spec.kind != ProcessKind::FBM) os << ", lambda=" << spec.lambda;
  os << ")";
  return os.str();
}

}  // namespace tfbm
