#pragma once

#include <span>
#include <string>
#include <vector>

#include "types.hpp"

namespace reprometry {

// Line-oriented bundle document:
//
//   # comment
//   study <id>
//   system <id> [<id> ...]
//   experiment <id>
//     qc <name>
//     scale <min> <max|unbounded>
//     time <timestamp>
//     property <key> <value>
//     labelset <label> [<label> ...]
//     score <system> <value>
//     label <system> <item> [<start>..<end>] <label>
//     finding <system> <|=|> <system>
//   end
//
// Tokens with whitespace are double-quoted. The result kind of an experiment
// is inferred from its first score/label/finding line. Property keys must be
// schema keys, HEDS codes, or x.* extensions. A scale declaration is
// required when the sheet names a rating instrument; otherwise scores
// default to a zero-based open-ended scale.
StudyBundle parse_bundle(const std::string& document);
StudyBundle parse_bundle_file(const std::string& path);

// Canonical text form; parse(serialize(parse(d))) == parse(d).
std::string serialize_bundle(const StudyBundle& bundle);

// Shifts instrument-scale values to start at 0 (value - scale_min), required
// before any CV* computation. Throws DomainError when a value lies below the
// scale minimum.
std::vector<double> shift_to_zero(std::span<const double> values, double scale_min);

}  // namespace reprometry
