#ifndef LOGCOH_PIPELINE_HPP
#define LOGCOH_PIPELINE_HPP

#include <iosfwd>
#include <optional>
#include <string>

#include "json.hpp"

namespace logcoh {

// One front-end invocation. `full` runs the resolution pipeline end to end
// (free basis, Spencer resolution, b-function, stable truncation, transfer),
// `saito` stops after the certified basis, `h2` runs the direct quotient
// algorithm, `bfun` reports the integration b-function only.
enum class Command { Full, Saito, H2, Bfun };

struct ComputeRequest {
  Command command = Command::Full;
  std::string f;                          // polynomial in x and y
  std::optional<std::string> basis_file;  // fallback when no graded basis
  std::string format = "text";            // "text" | "json"
  int check_level = 1;  // 0 results, 1 verify certificates, 2 + stability
  long degree_cap = -1; // preimage solver cap; -1 = library default
};

struct RunOutcome {
  // 0 ok; 2 not reduced; 3 free basis not found (supply --basis-file);
  // 4 quotient-algorithm conditions violated; 5 parse/input error;
  // 6 internal invariant failure
  int exit_code = 0;
  nlohmann::json report;
};

// Orchestrates one pipeline. Never throws: failures are mapped to the exit
// code and recorded under report["error"]. Every polynomial and rational in
// the report is serialized as a string that re-parses to the same value.
RunOutcome run(const ComputeRequest& req);

// Human-readable rendering of a report; bases are written in ω-coordinates
// (w1, w2 the frame forms, w1^w2 their wedge). Timing is included but is
// never part of golden comparisons.
std::string render_text(const nlohmann::json& report);

// request deserialization for corpus files: {"command": "...", "f": "...",
// "basis_file"?, "check_level"?, "degree_cap"?}
ComputeRequest request_from_json(const nlohmann::json& j);

// Batch mode: process every *.json request file in `dir` (sorted), isolating
// failures per file, rendering each report to `out` in the given format.
// Returns the maximum exit code seen.
int run_corpus(const std::string& dir, const std::string& format,
               std::ostream& out);

// --degree-cap resolution: an explicit flag wins, otherwise the environment
// variable LOGCOH_DEGREE_CAP when set, otherwise the library default (-1)
long resolve_degree_cap(long flag_value);

} // namespace logcoh

#endif
