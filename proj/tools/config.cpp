#include "config.hpp"

#include <openssl/evp.h>

#include <cctype>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>

namespace voafin::cli {

namespace {

class TomlReader {
 public:
  explicit TomlReader(const std::string& text) : s_(text) {}

  json parse() {
    json root = json::object();
    json* table = &root;
    while (true) {
      skip_blank_lines();
      if (pos_ >= s_.size()) break;
      if (s_[pos_] == '[') {
        ++pos_;
        std::string name = read_key();
        expect(']');
        json* t = &root;
        std::stringstream parts(name);
        std::string part;
        while (std::getline(parts, part, '.')) {
          json& next = (*t)[part];
          if (next.is_null()) next = json::object();
          if (!next.is_object()) fail("table name collides with a value");
          t = &next;
        }
        table = t;
      } else {
        std::string key = read_key();
        skip_spaces();
        expect('=');
        skip_spaces();
        if (table->contains(key)) fail("duplicate key '" + key + "'");
        (*table)[key] = read_value();
      }
      skip_spaces();
      skip_comment();
      if (pos_ < s_.size() && s_[pos_] != '\n') fail("unexpected text after value");
    }
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    long line = 1 + std::count(s_.begin(), s_.begin() + static_cast<long>(std::min(pos_, s_.size())), '\n');
    throw SchemaError("/", "TOML line " + std::to_string(line) + ": " + what);
  }

  void skip_spaces() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\r')) ++pos_;
  }
  void skip_comment() {
    if (pos_ < s_.size() && s_[pos_] == '#') {
      while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
    }
  }
  void skip_blank_lines() {
    while (pos_ < s_.size()) {
      skip_spaces();
      skip_comment();
      if (pos_ < s_.size() && s_[pos_] == '\n') {
        ++pos_;
        continue;
      }
      break;
    }
  }
  void expect(char c) {
    skip_spaces();
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string read_key() {
    skip_spaces();
    if (pos_ < s_.size() && s_[pos_] == '"') return read_string();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' ||
                                s_[pos_] == '-' || s_[pos_] == '.')) {
      ++pos_;
    }
    if (start == pos_) fail("expected a key");
    return s_.substr(start, pos_ - start);
  }

  std::string read_string() {
    ++pos_;
    std::string out;
    while (pos_ < s_.size() && s_[pos_] != '"') {
      if (s_[pos_] == '\n') fail("unterminated string");
      if (s_[pos_] == '\\' && pos_ + 1 < s_.size()) {
        char e = s_[++pos_];
        out += e == 'n' ? '\n' : e == 't' ? '\t' : e;
      } else {
        out += s_[pos_];
      }
      ++pos_;
    }
    if (pos_ >= s_.size()) fail("unterminated string");
    ++pos_;
    return out;
  }

  json read_value() {
    skip_spaces();
    if (pos_ >= s_.size()) fail("missing value");
    char c = s_[pos_];
    if (c == '"') return read_string();
    if (c == '[') return read_array();
    if (s_.compare(pos_, 4, "true") == 0) {
      pos_ += 4;
      return true;
    }
    if (s_.compare(pos_, 5, "false") == 0) {
      pos_ += 5;
      return false;
    }
    std::size_t start = pos_;
    if (c == '+' || c == '-') ++pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    std::string digits;
    for (std::size_t i = start; i < pos_; ++i) {
      if (s_[i] != '_') digits += s_[i];
    }
    if (digits.empty() || digits == "+" || digits == "-") fail("unsupported value");
    if (pos_ < s_.size() && (s_[pos_] == '.' || s_[pos_] == 'e' || s_[pos_] == 'E')) {
      fail("floating-point values are not accepted; write rationals as strings");
    }
    return std::stol(digits);
  }

  json read_array() {
    ++pos_;
    json arr = json::array();
    while (true) {
      skip_blank_lines();
      if (pos_ < s_.size() && s_[pos_] == ']') {
        ++pos_;
        return arr;
      }
      arr.push_back(read_value());
      skip_blank_lines();
      if (pos_ < s_.size() && s_[pos_] == ',') {
        ++pos_;
        continue;
      }
      skip_blank_lines();
      expect(']');
      return arr;
    }
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

std::string child(const std::string& at, const std::string& key) { return (at == "/" ? "" : at) + "/" + key; }

const json& require(const json& cfg, const std::string& key, const std::string& at) {
  if (!cfg.is_object()) throw SchemaError(at, "expected an object");
  if (!cfg.contains(key)) throw SchemaError(child(at, key), "missing required field");
  return cfg.at(key);
}

long as_int(const json& v, const std::string& at) {
  if (v.is_number_integer()) return v.get<long>();
  if (v.is_string()) {
    try {
      Rational r = parse_rational(v.get<std::string>());
      if (is_integer(r)) return to_long(r);
    } catch (const std::exception&) {
    }
  }
  throw SchemaError(at, "expected an integer");
}

}  // namespace

json parse_toml(const std::string& text) { return TomlReader(text).parse(); }

json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("/", "cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  bool toml = path.size() >= 5 && path.compare(path.size() - 5, 5, ".toml") == 0;
  if (toml) return parse_toml(text);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError("/", std::string("invalid JSON: ") + e.what());
  }
}

json model_argument(const std::string& arg) {
  if (!arg.empty() && arg.front() == '{') {
    try {
      return json::parse(arg);
    } catch (const json::parse_error& e) {
      throw SchemaError("/model", std::string("invalid JSON: ") + e.what());
    }
  }
  std::ifstream probe(arg);
  if (probe.good() && (arg.find('.') != std::string::npos || arg.find('/') != std::string::npos)) {
    return load_config_file(arg);
  }
  return arg;
}

long get_int(const json& cfg, const std::string& key, const std::string& at) {
  return as_int(require(cfg, key, at), child(at, key));
}

long get_int_or(const json& cfg, const std::string& key, const std::string& at, long fallback) {
  if (!cfg.is_object() || !cfg.contains(key)) return fallback;
  return as_int(cfg.at(key), child(at, key));
}

Rational get_rational(const json& v, const std::string& at) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (!v.is_string()) throw SchemaError(at, "expected an exact rational string like \"1/2\"");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const std::exception&) {
    throw SchemaError(at, "not a rational: '" + v.get<std::string>() + "'");
  }
}

Rational get_rational_field(const json& cfg, const std::string& key, const std::string& at) {
  return get_rational(require(cfg, key, at), child(at, key));
}

std::vector<Rational> get_rational_list(const json& cfg, const std::string& key, const std::string& at) {
  const json& v = require(cfg, key, at);
  std::string here = child(at, key);
  if (!v.is_array()) throw SchemaError(here, "expected an array");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(get_rational(v[i], child(here, std::to_string(i))));
  return out;
}

std::vector<std::vector<long>> get_int_matrix(const json& cfg, const std::string& key, const std::string& at) {
  const json& v = require(cfg, key, at);
  std::string here = child(at, key);
  if (!v.is_array() || v.empty()) throw SchemaError(here, "expected a nonempty array of rows");
  std::vector<std::vector<long>> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::string row_at = child(here, std::to_string(i));
    if (!v[i].is_array()) throw SchemaError(row_at, "expected an array");
    std::vector<long> row;
    if (v[i].size() != v.size()) throw SchemaError(row_at, "expected a square matrix");
    for (std::size_t j = 0; j < v[i].size(); ++j) row.push_back(as_int(v[i][j], child(row_at, std::to_string(j))));
    out.push_back(std::move(row));
  }
  return out;
}

std::string get_string_or(const json& cfg, const std::string& key, const std::string& at, const std::string& fallback) {
  if (!cfg.is_object() || !cfg.contains(key)) return fallback;
  const json& v = cfg.at(key);
  if (!v.is_string()) throw SchemaError(child(at, key), "expected a string");
  return v.get<std::string>();
}

json expand_model(const json& descriptor, const std::string& at) {
  if (descriptor.is_object()) return descriptor;
  if (!descriptor.is_string()) throw SchemaError(at, "expected a model name or descriptor object");
  std::string name = descriptor.get<std::string>();
  auto vir = [](int p, int q, int r, int s) {
    return json{{"family", "virasoro"}, {"kind", "irreducible"}, {"p", p}, {"q", q}, {"r", r}, {"s", s}};
  };
  if (name == "ising" || name == "ising-1") return vir(4, 3, 1, 1);
  if (name == "ising-sigma") return vir(4, 3, 1, 2);
  if (name == "ising-epsilon") return vir(4, 3, 2, 1);
  if (name == "lee-yang") return vir(5, 2, 1, 1);
  if (name == "a1") return json{{"family", "lattice"}, {"gram", {{2}}}, {"lambda", {"0"}}};
  if (name == "a1-half") return json{{"family", "lattice"}, {"gram", {{2}}}, {"lambda", {"1"}}};
  if (name == "heisenberg") return json{{"family", "heisenberg"}, {"gram", {{1}}}, {"momentum", {"0"}}};
  throw SchemaError(at, "unknown model preset '" + name + "'");
}

ModelPtr build_model(const json& raw, int cutoff, const std::string& at) {
  json d = expand_model(raw, at);
  std::string family = get_string_or(d, "family", at, "");
  if (family.empty()) throw SchemaError(child(at, "family"), "missing required field");
  try {
    if (family == "virasoro") {
      std::string kind = get_string_or(d, "kind", at, "irreducible");
      if (kind == "irreducible") {
        MinimalParams mp{get_int(d, "p", at), get_int(d, "q", at), get_int_or(d, "r", at, 1), get_int_or(d, "s", at, 1)};
        if (mp.p < 2) throw SchemaError(child(at, "p"), "expected an integer >= 2");
        if (mp.q < 2 || std::gcd(mp.p, mp.q) != 1) throw SchemaError(child(at, "q"), "expected q >= 2 coprime to p");
        if (mp.r < 1 || mp.r >= mp.q) throw SchemaError(child(at, "r"), "expected 1 <= r < q");
        if (mp.s < 1 || mp.s >= mp.p) throw SchemaError(child(at, "s"), "expected 1 <= s < p");
        return VirasoroModel::irreducible(mp, cutoff);
      }
      Rational c = get_rational_field(d, "c", at);
      if (kind == "universal") return VirasoroModel::universal_voa(c, cutoff);
      if (kind == "verma") return VirasoroModel::verma(c, get_rational_field(d, "h", at), cutoff);
      throw SchemaError(child(at, "kind"), "expected irreducible, verma or universal");
    }
    if (family == "lattice") {
      auto gram = get_int_matrix(d, "gram", at);
      RatVec lambda = d.contains("lambda") ? get_rational_list(d, "lambda", at) : RatVec(gram.size(), Rational(0));
      if (lambda.size() != gram.size()) throw SchemaError(child(at, "lambda"), "length must equal the lattice rank");
      return FockModel::lattice_module(gram, lambda, cutoff);
    }
    if (family == "heisenberg") {
      auto gram = get_int_matrix(d, "gram", at);
      RatVec p = d.contains("momentum") ? get_rational_list(d, "momentum", at) : RatVec(gram.size(), Rational(0));
      if (p.size() != gram.size()) throw SchemaError(child(at, "momentum"), "length must equal the rank");
      return FockModel::heisenberg(gram, p, cutoff);
    }
  } catch (const std::invalid_argument& e) {
    throw SchemaError(at, e.what());
  }
  throw SchemaError(child(at, "family"), "expected virasoro, lattice or heisenberg");
}

std::string config_hash(const json& cfg) {
  std::string text = cfg.dump();
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr);
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return out.str();
}

}  // namespace voafin::cli
