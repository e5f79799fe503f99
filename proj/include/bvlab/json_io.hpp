#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "bvlab/matrix.hpp"

namespace bvlab {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

/// Integers stay JSON integers when they fit in int64; everything else becomes "p/q".
ordered_json rational_to_json(const Rational& q);
Rational rational_from_json(const json& j);

/// {"rows": r, "cols": c, "entries": [...]} with entries row-major.
ordered_json matrix_to_json(const RatMatrix& m);
RatMatrix matrix_from_json(const json& j);

ordered_json rationals_to_json(const std::vector<Rational>& v);

/// 1-based row images, e.g. [2, 1] for the 2x2 swap.
ordered_json perm_to_json(const PermMatrix& p);
PermMatrix perm_from_json(const json& j);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace bvlab
