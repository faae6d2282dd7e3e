#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "orlicz/algebra.hpp"
#include "orlicz/multipliers.hpp"

namespace orlicz::io {

using json = nlohmann::json;

/// Malformed input: bad JSON, unknown kinds, missing fields, shape mismatch.
/// The CLI maps it to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses text, reporting "line L, column C" on syntax errors. `origin`
/// names the source in messages.
json parse_json(const std::string& text, const std::string& origin);
json read_json_file(const std::string& path);

/// A number, or one of the strings "inf" / "-inf".
double number_from_json(const json& j);
json number_to_json(double x);

OrliczFunction function_from_json(const json& j);
json function_to_json(const OrliczFunction& phi);

/// {"algebra":{"blocks":[{"dim":d,"weight":w},...]},"mats":[...]}, or the
/// commutative shorthand {"weights":[...],"diag":[...]}.
AlgebraElement element_from_json(const json& j);
json element_to_json(const AlgebraElement& x);

/// A bare array, or an object holding it under "values" or "weights".
std::vector<double> vector_from_json(const json& j);

/// "M,alpha,beta,gamma"
ConstantWitness witness_from_string(const std::string& s);
json witness_to_json(const ConstantWitness& w);

json step_function_to_json(const StepFunction& m);
/// Header "t_start,t_end,value" then one row per step.
void write_rearrangement_csv(std::ostream& os, const StepFunction& m);

/// Shortest round-trip decimal; "inf", "-inf", "nan" for non-finite values.
std::string format_number(double x);

}  // namespace orlicz::io
