#pragma once

// Command-line surface: resource-file ingestion, report emission, curve
// plotting, and the randomized verification suite.

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <lorenz/core.hpp>
#include <lorenz/entangle.hpp>
#include <lorenz/thermo.hpp>

namespace lorenz::cli {

// Flat JSON document: {"name": text, "p": [...], "q": [...]} or
// {"name": text, "energies": [...], "beta": real, "population": [...]}.
// Exactly one of the two shapes; throws std::runtime_error with the
// offending field path.
thermo::resource parse_resource(const std::string& text);

// Canonical document in the p/q shape; parse_resource reproduces the
// resource exactly.
std::string serialize_resource(const thermo::resource& a);

// Same document format; only the "p" list is read, as Schmidt coefficients.
entangle::schmidt_vector parse_schmidt(const std::string& text);

// Standalone SVG (viewBox 0 0 1000 1000): one polyline per pair through the
// origin and its elbows, markers on the elbows, cumulative q rightward and
// cumulative p upward.
std::string render_lorenz(
    const std::vector<std::pair<std::string, core::vpair>>& curves);

// Dispatches a subcommand; writes reports to out and diagnostics to err.
// Returns 0 on success, 1 on computation or input-data errors, 2 on usage
// errors.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace lorenz::cli
