#include "surprisal/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace surprisal {

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

nlohmann::json parse_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::bad_input_file, path + ": cannot open");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    fail(errc::bad_input_file, path + ": " + e.what());
  }
}

std::vector<double> number_list(const nlohmann::json& doc, const std::string& path,
                                const std::string& field) {
  if (!doc.contains(field)) fail(errc::bad_input_file, path + ": missing field \"" + field + "\"");
  const auto& node = doc.at(field);
  if (!node.is_array())
    fail(errc::bad_input_file, path + ": field \"" + field + "\" must be a list of numbers");
  std::vector<double> out;
  out.reserve(node.size());
  for (const auto& v : node) {
    if (!v.is_number())
      fail(errc::bad_input_file, path + ": field \"" + field + "\" must be a list of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

Dichotomy read_dichotomy_file(const std::string& path) {
  nlohmann::json doc = parse_document(path);
  Spectrum p = validate_spectrum(number_list(doc, path, "p"));
  if (!doc.contains("s")) return uniform_reference(std::move(p));
  Spectrum s = validate_spectrum(number_list(doc, path, "s"));
  return make_dichotomy(std::move(p), std::move(s));
}

Spectrum read_spectrum_file(const std::string& path) {
  nlohmann::json doc = parse_document(path);
  return validate_spectrum(number_list(doc, path, "p"));
}

std::vector<double> read_renyi_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::bad_input_file, path + ": cannot open");
  std::vector<double> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream ss(line);
    double v;
    if (!(ss >> v))
      fail(errc::bad_input_file, path + ":" + std::to_string(lineno) + ": not a number");
    out.push_back(v);
  }
  return out;
}

}  // namespace surprisal
