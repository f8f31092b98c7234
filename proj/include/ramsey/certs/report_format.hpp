#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "ramsey/deduction/certificate.hpp"
#include "ramsey/report.hpp"

namespace ramsey::certs {

struct EmitOptions {
  bool json = false;
  /// Include wall time; off by default so output is reproducible.
  bool timing = false;
};

nlohmann::ordered_json report_json(const VerificationReport& r, bool timing);

std::string emit_report(const VerificationReport& r, const EmitOptions& opts);

/// Several reports: a JSON array, or tables separated by blank lines.
std::string emit_reports(const std::vector<VerificationReport>& rs,
                         const EmitOptions& opts);

/// Step list with decimal renderings of the certificate's quantities.
std::string explain(const deduction::Certificate& cert, int digits);

}  // namespace ramsey::certs
