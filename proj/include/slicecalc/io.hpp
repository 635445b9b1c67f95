#pragma once

// File formats.
//
// Operator JSON: {"n": 2, "d": 2, "components": {"0": [[..],..], "1": .., "12": ..}}
// Keys name blades by their digits ("0" or "" is the scalar blade); a
// missing key is a zero matrix.

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "slicecalc/unbounded.hpp"

namespace slicecalc {

/// Upper bound on n: SLICECALC_MAX_N when set (clamped to 8), else 8.
int max_algebra_dim();

CliffordMatrix parse_operator(const nlohmann::json& doc);
/// Parse errors report line and column; schema errors name the field.
CliffordMatrix parse_operator_text(std::string_view text);
CliffordMatrix parse_operator_file(const std::string& path);

nlohmann::json operator_to_json(const CliffordMatrix& t);

/// Shortest decimal that round-trips.
std::string format_double(double x);

/// Header u,r,multiplicity,method; rows in ascending (u, r).
void write_spectrum_csv(std::ostream& os, const SpectrumReport& spec);
/// Plane points (u, v) = (u, +-r) of every component, header u,v.
void write_plot_csv(std::ostream& os, const SpectrumReport& spec);

/// "e2" or a comma-separated direction "0.6,0.8" (padded with zeros to n).
ImagUnit parse_plane(std::string_view text, int n);

struct FunctionSpec {
  SliceSeriesFunction f;
  /// Set when f is regular at infinity with a pole (ratpole, Laurent
  /// literals without positive powers).
  std::optional<ExtendedFunction> extended;
};

/// one | exp | sin | cos | geom | poly:m=<int> | ratpole:c=<real>[,m=<int>]
/// | JSON literal {"center": c, "coeffs": ["1", "e1"], "laurent": [...]}
FunctionSpec parse_function_spec(std::string_view text, int n);

}  // namespace slicecalc
