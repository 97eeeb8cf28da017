#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "leglab/causality.hpp"
#include "leglab/genfun.hpp"
#include "leglab/hodograph.hpp"
#include "leglab/order.hpp"
#include "leglab/scalar_field.hpp"

namespace leglab::io {

using nlohmann::json;

// Generating function document:
//   { "base": {"kind": "circle"|"sphere", "dim": n, "resolution": N},
//     "qform": {"plus": [...], "minus": [...]},
//     "sigma": {"kind": "zero"|"expr"|"grid", "payload": ..., "axes": [...]},
//     "support_radius": R,
//     "box": {"halfwidth": W, "points_per_axis": m},
//     "potential": "<expr>" | {"values": [...]},
//     "constant": c }
// Only "base" is required. Expression payloads see q1..qn, theta, xi1..xik
// (the sigma axes in order) and r. Grid payloads hold one row per base
// sample over the sigma-axis box grid, last axis fastest.
GeneratingFunction parse_genfun(const std::string& text);
GeneratingFunction parse_genfun(const json& doc);

BaseDomain parse_base(const json& base);

json to_json(const MinimaxPair& pair);
json to_json(const OrderVerdict& v);
json to_json(const SeparationWitness& w);
json to_json(const MonotonicityReport& r);
json to_json(const CircleDemoReport& r);
json to_json(const ContactFormReport& r);
json to_json(const SkyDescriptor& s);
json to_json(const SkyOrderReport& r);
json to_json(const CurvePositivityReport& r);
json to_json(const AlexandrovProbeReport& r);

// Field from rows (sample_index, value); a non-numeric first row is taken
// as a header. Every index 0..N-1 must appear exactly once. Without a domain
// the circle grid with N samples (ambient_dim 2) or the default sphere
// lattice of that size is used.
ScalarField read_field_csv(std::istream& in, int ambient_dim = 2);
ScalarField read_field_csv(std::istream& in, const BaseDomain& domain);

// Field from an expression over q1..qn / theta.
ScalarField field_from_expression(const std::string& expr, const BaseDomain& domain);

// Rows (time, sample_index, value).
IsotopyPath read_isotopy_csv(std::istream& in, int ambient_dim = 2);

// Rows (t, y1..yn).
std::vector<MinkowskiEvent> read_events_csv(std::istream& in);

// Rows (s, t, y1..yn).
SampledCurve read_curve_csv(std::istream& in);

// {"center": [...], "t": t}
std::pair<CoorientedSphere, double> parse_sphere(const std::string& text);

void write_contact_elements_csv(std::ostream& out, const std::vector<ContactElement>& elements);
void write_escape_csv(std::ostream& out, const EscapeReport& report);

// Events from a CLI literal "t y1 ... yn" or "t,y1,...,yn".
MinkowskiEvent parse_event_literal(const std::string& text);

}  // namespace leglab::io
