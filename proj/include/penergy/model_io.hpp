#pragma once

#include <string>

#include "penergy/domain.hpp"

namespace penergy::io {

// Model persistence: a small JSON document with format_version 1 and
// coefficients in joules. Doubles are serialized with shortest round-trip
// formatting, so reading a written model reproduces predictions bit for bit.
std::string model_to_json(const ModelCoefficients& model);
void write_model_json(const std::string& path, const ModelCoefficients& model);

ModelCoefficients model_from_json(const std::string& text,
                                  const std::string& source_name = "<input>");
ModelCoefficients read_model_json(const std::string& path);

}  // namespace penergy::io
