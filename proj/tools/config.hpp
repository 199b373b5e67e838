#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "voafin/lattice.hpp"
#include "voafin/model.hpp"
#include "voafin/rational.hpp"
#include "voafin/virasoro.hpp"

namespace voafin::cli {

using nlohmann::json;

/// Config problem; the message starts with a JSON pointer to the offending field.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(const std::string& pointer, const std::string& what) : std::runtime_error(pointer + ": " + what) {}
};

/// Parses the TOML subset used by config files: tables, key = value pairs,
/// strings, integers, booleans and (nested, possibly multiline) arrays.
json parse_toml(const std::string& text);

/// Reads a JSON or TOML (by extension) config file.
json load_config_file(const std::string& path);

/// A --model argument: a preset name, inline JSON, or a config file path.
json model_argument(const std::string& arg);

long get_int(const json& cfg, const std::string& key, const std::string& at);
long get_int_or(const json& cfg, const std::string& key, const std::string& at, long fallback);
Rational get_rational(const json& value, const std::string& at);
Rational get_rational_field(const json& cfg, const std::string& key, const std::string& at);
std::vector<Rational> get_rational_list(const json& cfg, const std::string& key, const std::string& at);
std::vector<std::vector<long>> get_int_matrix(const json& cfg, const std::string& key, const std::string& at);
std::string get_string_or(const json& cfg, const std::string& key, const std::string& at, const std::string& fallback);

/// Expands preset names ("ising", "ising-sigma", "ising-epsilon", "lee-yang",
/// "a1", "a1-half", "heisenberg") into descriptors.
json expand_model(const json& descriptor, const std::string& at);

/// Builds a model from a descriptor, validating it against the schema.
ModelPtr build_model(const json& descriptor, int cutoff, const std::string& at);

/// SHA-256 of the canonical dump, hex encoded.
std::string config_hash(const json& cfg);

}  // namespace voafin::cli
