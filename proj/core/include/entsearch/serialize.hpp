#pragma once

#include <string>
#include <vector>

#include "entsearch/copies.hpp"
#include "entsearch/detect.hpp"
#include "entsearch/qsim.hpp"
#include "entsearch/search.hpp"

namespace entsearch {

// Shortest round-trip decimal form (std::to_chars); deterministic across
// runs, which the byte-identity guarantees rely on.
std::string format_double(double value);

// Amplitudes as a row-major array of [re, im] pairs plus the layout.
std::string state_to_json(const PureState& psi);

// {"dims": [dA, dB], "matrix": [[[re, im], ...], ...]} row-major.
std::string density_to_json(const DensityOp& rho);
DensityOp density_from_json(const std::string& text);

std::string verdict_to_json(const DetectionVerdict& v);
std::string outcome_to_json(const SearchOutcome& outcome, int variable_count);
std::string cost_report_to_json(const CostReport& report);

// Header "depth,lo,hi,verdict,copies"; one row per trace event.
std::string trace_to_csv(const SearchTrace& trace);

// Header "L,N,delta,log10_deltaN,deltaN,bound".
std::string grid_to_csv(const std::vector<DistinguishabilityPoint>& grid);

// Writes to a sibling temp file and renames it into place, so readers never
// observe partial content. Throws std::runtime_error on I/O failure.
void write_file_atomic(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

} // namespace entsearch
