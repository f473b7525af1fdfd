#pragma once

#include "gbv/verify.hpp"

#include <json.hpp>

namespace gbv {

/// Stable serialization of the verification report: fixed key order, no
/// timestamps, shortest-roundtrip number formatting. Byte-identical across
/// runs of the same experiment.
nlohmann::ordered_json report_to_json(const VerificationReport& report);

/// Serialization of per-singularity flux ladders (shared by the local-patch
/// report path).
nlohmann::ordered_json flux_records_json(const std::vector<FluxRecord>& records);

/// RFC-4180 CSV (CRLF, dot decimals, 17 significant digits) with header
/// "epsilon,value".
std::string ladder_csv(const std::vector<LadderEntry>& ladder);

std::string format_double(double x); ///< %.17g

} // namespace gbv
