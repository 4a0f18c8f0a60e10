#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "ttb/sim.hpp"

namespace ttb {

/// Parse one probe token: "body:acc", "bridge:disp@15", "rail:vel@wheel"
/// or "contact_force". Beam positions are absolute abscissae in metres.
Probe parse_probe(const std::string& token, const Mesh& mesh);

/// Canonical token for a probe, inverse of parse_probe.
std::string render_probe(const Probe& probe);

/// Load a simulation configuration from a sectioned key = value text
/// file and apply "section.key=value" overrides on top. Unknown keys,
/// unknown sections and malformed values are hard errors carrying the
/// offending line.
SimConfig load_config(const std::string& path, const std::vector<std::string>& overrides = {});

/// Same, from in-memory text. `origin` labels error messages; relative
/// track-file paths resolve against `base_dir`.
SimConfig parse_config_text(const std::string& text, const std::string& origin,
                            const std::string& base_dir,
                            const std::vector<std::string>& overrides = {});

/// Every resolved configuration key, in canonical order, with the value
/// rendered the way the output header echoes it.
std::vector<std::pair<std::string, std::string>> echo_config(const SimConfig& config);

/// Shortest round-trippable decimal rendering (%.17g).
std::string format_double(double value);

/// Write the run output: "#"-prefixed metadata echoing every config
/// key, a header row with column names and SI units, then one
/// comma-separated row per time step at 17 significant digits.
void write_output_table(std::ostream& out, const SimConfig& config, const TimeHistory& history);

/// The built-in benchmark crossing: a 30 m simply supported span
/// traversed at 27.78 m/s by a 5750 kg sprung mass, massless rail tied
/// to the deck by a very stiff bed, smooth surface, zero damping.
SimConfig benchmark_config();

}  // namespace ttb
