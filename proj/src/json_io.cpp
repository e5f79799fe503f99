#include "bvlab/json_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bvlab {

ordered_json rational_to_json(const Rational& q) {
  if (is_integer(q) && q.get_num().fits_slong_p()) return q.get_num().get_si();
  return to_string(q);
}

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw std::invalid_argument("rational must be an integer or a \"p/q\" string, got " + j.dump());
}

ordered_json matrix_to_json(const RatMatrix& m) {
  ordered_json out;
  out["rows"] = m.rows();
  out["cols"] = m.cols();
  ordered_json entries = ordered_json::array();
  for (const auto& e : m.entries()) entries.push_back(rational_to_json(e));
  out["entries"] = std::move(entries);
  return out;
}

RatMatrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries")) {
    throw std::invalid_argument("matrix JSON needs rows, cols and entries");
  }
  const auto rows = j.at("rows").get<std::size_t>();
  const auto cols = j.at("cols").get<std::size_t>();
  const auto& entries = j.at("entries");
  if (!entries.is_array() || entries.size() != rows * cols) {
    throw std::invalid_argument("matrix JSON: entries length differs from rows*cols");
  }
  std::vector<Rational> values;
  values.reserve(entries.size());
  for (const auto& e : entries) values.push_back(rational_from_json(e));
  return RatMatrix(rows, cols, std::move(values));
}

ordered_json rationals_to_json(const std::vector<Rational>& v) {
  ordered_json out = ordered_json::array();
  for (const auto& q : v) out.push_back(rational_to_json(q));
  return out;
}

ordered_json perm_to_json(const PermMatrix& p) {
  ordered_json out = ordered_json::array();
  for (std::size_t i = 0; i < p.size(); ++i) out.push_back(p[i] + 1);
  return out;
}

PermMatrix perm_from_json(const json& j) {
  std::vector<std::size_t> image;
  for (const auto& v : j) {
    const auto one_based = v.get<std::size_t>();
    if (one_based == 0) throw std::invalid_argument("permutation images are 1-based");
    image.push_back(one_based - 1);
  }
  return PermMatrix(std::move(image));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace bvlab
