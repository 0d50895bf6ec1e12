#pragma once

// JSON documents for instances and reduction reports.
//
//   {"problem": tag, "data": {...}, "threshold": "p/q" (optional)}
//
// Rationals are "p/q" or "p" strings; plain JSON integers are accepted on
// input. Graph-weighted problems list edges as [u, v, "weight"].

#include <optional>
#include <string>

#include "json.hpp"
#include "kernelsmith/problems.hpp"
#include "kernelsmith/weight_reduction.hpp"

namespace kernelsmith {

struct InstanceDocument {
  ProblemInstance instance;
  std::optional<Rational> threshold;
  bool operator==(const InstanceDocument&) const = default;
};

// Throws InputError with line/column for syntax errors and a JSON path for
// structural ones; validates the instance.
InstanceDocument parse_instance(const std::string& text);
std::string serialize_instance(const InstanceDocument& doc);

InstanceDocument read_instance_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// Every number is a decimal string. The bound is written in full when it
// has at most `max_bound_bits` bits.
nlohmann::ordered_json report_to_json(const ReductionReport& report,
                                      std::size_t max_bound_bits = 100000);
std::string report_to_text(const ReductionReport& report);

}  // namespace kernelsmith
