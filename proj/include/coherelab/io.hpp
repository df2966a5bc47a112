// JSON state and POVM files.
//
// State file:  {"dim": d, "matrix": [[[re, im], ...], ...]}  (row-major)
// POVM file:   {"dim": d, "elements": [{"label": "0", "matrix": <as above>}, ...]}
//
// Parse and validation errors throw InvalidInput (or NotPsd) with the
// offending row/column in the message.

#pragma once

#include <string>
#include <string_view>

#include "coherelab/quantum.hpp"

namespace coherelab {

DensityMatrix parse_state_json(std::string_view text);
DensityMatrix read_state_file(const std::string& path);

std::string state_to_json(const DensityMatrix& rho);
void write_state_file(const std::string& path, const DensityMatrix& rho);

Povm parse_povm_json(std::string_view text);

// "fourier", "basis:<vectors>" or a path to a POVM file. <vectors> is a JSON
// array of basis vectors whose entries are numbers or [re, im] pairs, e.g.
// basis:[[1,0],[0,1]].
Povm parse_povm_spec(std::string_view spec, std::size_t dim);

std::string read_text_file(const std::string& path);

}  // namespace coherelab
