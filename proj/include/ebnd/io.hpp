#pragma once

#include <string>
#include <vector>

#include "ebnd/distribution.hpp"
#include "ebnd/spectrum.hpp"
#include "ebnd/verify.hpp"

namespace ebnd {

// Spectrum JSON schema: { "levels": [numbers, required],
//   "generator": {"kind":"linear","slope":s,"offset":d}
//              | {"kind":"power","exponent":p,"scale":c}   (optional),
//   "name": string (optional) }
Spectrum parse_spectrum_json(const std::string& text);
Spectrum load_spectrum_file(const std::string& path);

// index,probability rows over the absolute support.
std::string distribution_to_csv(const Distribution& d);
// Dense probability array from absolute index 0, plus the certified tail.
std::string distribution_to_json(const Distribution& d, int indent = -1);

std::string report_to_json(const VerificationReport& r, int indent = -1);

// Shortest round-trip decimal formatting used by every CSV emitter, so
// identical configurations produce byte-identical files.
std::string format_double(double x);

// Grid specs: a plain number, "start:stop:count" (inclusive, linear) or
// "log:start:stop:count" (log-spaced). Result is finite, strictly increasing.
std::vector<double> parse_grid(const std::string& spec);

}  // namespace ebnd
