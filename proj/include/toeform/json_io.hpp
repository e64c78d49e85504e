#pragma once

// JSON schemas for measures, vectors and reports.
//
// Circle measure:
//   {"ac": {"kind": "builtin", "name": "constant" | "two_plus_two_cos" | "power",
//           "scale": 1.0, "alpha": 0.5}
//        | {"kind": "fourier", "coeffs": [c0, c1 | [re, im], ...]}
//        | {"kind": "grid", "samples": [...]},
//    "atoms": [{"angle": float, "mass": float}],
//    "cantor": {"mass": float}}
// Line measure:
//   {"ac": {"a": float, "b": float, "samples": [...]},
//    "atoms": [{"x": float, "mass": float}]}
// Complex numbers are plain numbers or [re, im] pairs.

#include <json.hpp>

#include "toeform/closability.hpp"
#include "toeform/closure_weights.hpp"
#include "toeform/hankel.hpp"
#include "toeform/measures.hpp"

namespace toeform::io {

using json = nlohmann::json;

CircleMeasure circle_measure_from_json(const json& j, std::size_t grid_size = kDefaultGridSize);
json to_json(const CircleMeasure& m);

LineMeasure line_measure_from_json(const json& j);
json to_json(const LineMeasure& m);

cplx complex_from_json(const json& j);
json to_json(cplx z);
FiniteVector vector_from_json(const json& j);
json to_json(std::span<const cplx> v);

json to_json(const ClosabilityVerdict& v);
json to_json(const WitnessReport& w);
json to_json(const AdjointResult& a);
json to_json(const MuckenhouptReport& r);
json to_json(const RadialLadder& r);
json to_json(const PsdResult& p);

}  // namespace toeform::io
