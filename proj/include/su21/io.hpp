// File formats: the group input file and the report output file.
//
// Group files are parsed strictly: the format version gates parsing,
// unknown fields are rejected by name, and every malformed entry is
// reported with its path.  Reports are serialized with insertion-ordered
// keys and full-precision numbers, so identical runs produce byte-identical
// output (modulo the timing field) and every report parses back
// field-for-field.  Complex numbers serialize as [re, im] arrays.

#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "su21/classify.hpp"
#include "su21/complexmat.hpp"
#include "su21/errors.hpp"
#include "su21/form.hpp"
#include "su21/fuchsian.hpp"
#include "su21/irreducible.hpp"
#include "su21/normalize.hpp"
#include "su21/parabolic.hpp"
#include "su21/tracefield.hpp"
#include "su21/words.hpp"

namespace su21 {

using json = nlohmann::ordered_json;

/// 64-bit FNV-1a of a byte string, as 16 lowercase hex digits.
[[nodiscard]] inline std::string fnv1a_digest(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (const char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

// ============================================================================
// Strict JSON access helpers
// ============================================================================

namespace detail {

[[noreturn]] inline void parse_fail(const std::string& where,
                                    const std::string& what) {
  throw Error(ErrorTag::ParseError, where + ": " + what);
}

inline void require_keys(const json& j, const std::string& where,
                         std::initializer_list<const char*> allowed) {
  if (!j.is_object()) parse_fail(where, "expected an object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : allowed) {
      if (item.key() == k) {
        known = true;
        break;
      }
    }
    if (!known) parse_fail(where, "unknown field '" + item.key() + "'");
  }
}

[[nodiscard]] inline double number_at(const json& j, const std::string& where) {
  if (!j.is_number()) parse_fail(where, "expected a number");
  return j.get<double>();
}

[[nodiscard]] inline cx complex_at(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) {
    parse_fail(where, "expected a [re, im] pair");
  }
  return {number_at(j[0], where + "[0]"), number_at(j[1], where + "[1]")};
}

[[nodiscard]] inline Mat3C matrix_at(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) {
    parse_fail(where, "expected 3 rows");
  }
  Mat3C m;
  for (std::size_t r = 0; r < 3; ++r) {
    const json& row = j[r];
    const std::string rw = where + "[" + std::to_string(r) + "]";
    if (!row.is_array() || row.size() != 3) parse_fail(rw, "expected 3 entries");
    for (std::size_t c = 0; c < 3; ++c) {
      m(r, c) = complex_at(row[c], rw + "[" + std::to_string(c) + "]");
    }
  }
  return m;
}

}  // namespace detail

// ============================================================================
// Group files
// ============================================================================

/// Parsed group input: the validated spec plus the sampler bound.
struct GroupFile {
  GroupSpec spec;
  int max_length = 6;
};

[[nodiscard]] inline GroupFile parse_group_file(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorTag::ParseError, std::string("invalid JSON: ") + e.what());
  }
  detail::require_keys(
      j, "group file",
      {"format_version", "generators", "flags", "tolerances", "sampler"});
  if (!j.contains("format_version") || !j["format_version"].is_number_integer()) {
    detail::parse_fail("format_version", "required integer field");
  }
  if (j["format_version"].get<long>() != 1) {
    detail::parse_fail("format_version",
                       "unsupported version " + j["format_version"].dump() +
                           " (this reader handles version 1)");
  }

  Tolerances tol{};
  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    detail::require_keys(t, "tolerances",
                         {"eps_form", "eps_class", "eps_field", "eps_solve"});
    if (t.contains("eps_form")) {
      tol.eps_form = detail::number_at(t["eps_form"], "tolerances.eps_form");
    }
    if (t.contains("eps_class")) {
      tol.eps_class = detail::number_at(t["eps_class"], "tolerances.eps_class");
    }
    if (t.contains("eps_field")) {
      tol.eps_field = detail::number_at(t["eps_field"], "tolerances.eps_field");
    }
    if (t.contains("eps_solve")) {
      tol.eps_solve = detail::number_at(t["eps_solve"], "tolerances.eps_solve");
    }
    tol.validate();
  }

  if (!j.contains("flags")) detail::parse_fail("flags", "required field");
  detail::require_keys(j["flags"], "flags", {"assumed_discrete"});
  if (!j["flags"].contains("assumed_discrete") ||
      !j["flags"]["assumed_discrete"].is_boolean()) {
    detail::parse_fail("flags.assumed_discrete", "required boolean field");
  }
  const bool discrete = j["flags"]["assumed_discrete"].get<bool>();

  if (!j.contains("generators") || !j["generators"].is_array() ||
      j["generators"].empty()) {
    detail::parse_fail("generators", "required non-empty array");
  }
  std::vector<Su21Element> gens;
  for (std::size_t i = 0; i < j["generators"].size(); ++i) {
    const std::string where = "generators[" + std::to_string(i) + "]";
    const Mat3C m = detail::matrix_at(j["generators"][i], where);
    try {
      gens.push_back(validate_su21(m, tol));
    } catch (const Error& e) {
      throw Error(e.tag(), where + ": " + e.message(), e.value(), e.count());
    }
  }

  GroupFile out;
  out.spec = GroupSpec(std::move(gens), discrete, tol);
  if (j.contains("sampler")) {
    detail::require_keys(j["sampler"], "sampler", {"max_length"});
    if (!j["sampler"].contains("max_length") ||
        !j["sampler"]["max_length"].is_number_integer()) {
      detail::parse_fail("sampler.max_length", "required integer field");
    }
    const long n = j["sampler"]["max_length"].get<long>();
    if (n < 1 || n > 24) {
      detail::parse_fail("sampler.max_length", "must be between 1 and 24");
    }
    out.max_length = static_cast<int>(n);
  }
  return out;
}

// ============================================================================
// JSON views of library values
// ============================================================================

[[nodiscard]] inline json json_of(cx z) {
  return json::array({z.real(), z.imag()});
}

[[nodiscard]] inline json json_of(const Vec3C& v) {
  return json::array({json_of(v[0]), json_of(v[1]), json_of(v[2])});
}

[[nodiscard]] inline json json_of(const Mat3C& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < 3; ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < 3; ++c) row.push_back(json_of(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Serializes a group spec in the input-file format, so generated corpora
/// are directly consumable by every other command.
[[nodiscard]] inline std::string serialize_group_file(
    const GroupSpec& spec, std::optional<int> max_length = std::nullopt) {
  json j;
  j["format_version"] = 1;
  json gens = json::array();
  for (const Su21Element& g : spec.generators) gens.push_back(json_of(g.matrix()));
  j["generators"] = std::move(gens);
  j["flags"] = json{{"assumed_discrete", spec.assumed_discrete}};
  if (max_length) j["sampler"] = json{{"max_length", *max_length}};
  return j.dump(2) + "\n";
}

[[nodiscard]] inline json json_of(const ElementClass& c) {
  return json{{"tag", to_string(c.tag)}, {"margin", c.margin}};
}

[[nodiscard]] inline json json_of(const LoxodromicData& d) {
  return json{{"lambda", d.lambda}, {"phi", d.phi}};
}

[[nodiscard]] inline json json_of(const ParabolicForm& p) {
  json j{{"kind", to_string(p.kind)}};
  if (p.kind == ParabolicForm::Kind::EllipticRotational) {
    j["phi"] = p.phi;
    j["r"] = p.r;
  } else {
    j["s"] = p.s;
  }
  j["lift_index"] = p.lift_index;
  j["conjugator"] = json_of(p.conjugator.matrix());
  j["residual"] = p.residual;
  return j;
}

[[nodiscard]] inline json json_of(const Certificate& c) {
  json j{{"kind", to_string(c.kind)}};
  j["conjugator"] = json_of(c.conjugator.matrix());
  json gens = json::array();
  for (const Mat3C& g : c.transformed_generators) gens.push_back(json_of(g));
  j["transformed_generators"] = std::move(gens);
  j["residual"] = c.residual;  // always present: certificates carry evidence
  if (c.basis_words) {
    json ws = json::array();
    for (const Word& w : *c.basis_words) ws.push_back(w.str());
    j["basis_words"] = std::move(ws);
  }
  return j;
}

[[nodiscard]] inline json json_of(const TraceSample& s) {
  return json{{"word", s.word.str()}, {"trace", json_of(s.tr)}};
}

[[nodiscard]] inline json json_of(const std::vector<TraceSample>& samples) {
  json arr = json::array();
  for (const TraceSample& s : samples) arr.push_back(json_of(s));
  return arr;
}

/// Verdict view of a trace report (samples are serialized separately).
[[nodiscard]] inline json json_of(const TraceReport& r) {
  json j{{"is_real", r.is_real}, {"max_imag", r.max_imag}};
  if (r.lambda_witness) j["lambda_witness"] = *r.lambda_witness;
  if (r.witness_word) j["witness_word"] = r.witness_word->str();
  return j;
}

[[nodiscard]] inline json json_of(const IrreducibilityReport& r) {
  json j{{"irreducible", r.irreducible}};
  if (r.witness) {
    j["witness"] = json_of(*r.witness);
    j["witness_type"] = to_string(*r.witness_type);
  }
  if (r.dual_witness) {
    j["dual_witness"] = json_of(*r.dual_witness);
    j["dual_witness_type"] = to_string(*r.dual_witness_type);
  }
  return j;
}

[[nodiscard]] inline json json_of(const FuchsianVerdict& v) {
  json j{{"verdict", to_string(v.verdict)},
         {"assumed_discrete", v.assumed_discrete}};
  if (v.polar_witness) j["polar_witness"] = json_of(*v.polar_witness);
  if (!v.cause.empty()) j["cause"] = v.cause;
  return j;
}

// ============================================================================
// Report files
// ============================================================================

/// Machine-readable run record.  `verdicts` is the command-specific result
/// object; `certificates` and `trace_samples` hold the evidence.
struct ReportFile {
  std::string command;
  std::string input_digest;
  json verdicts = json::object();
  json certificates = json::array();
  json trace_samples = json::array();
  double timing_seconds = 0.0;

  bool operator==(const ReportFile&) const = default;

  [[nodiscard]] std::string serialize() const {
    json j;
    j["command"] = command;
    j["input_digest"] = input_digest;
    j["verdicts"] = verdicts;
    j["certificates"] = certificates;
    j["trace_samples"] = trace_samples;
    j["timing_seconds"] = timing_seconds;
    return j.dump(2) + "\n";
  }

  [[nodiscard]] static ReportFile parse(const std::string& text) {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      throw Error(ErrorTag::ParseError,
                  std::string("invalid JSON: ") + e.what());
    }
    detail::require_keys(j, "report file",
                         {"command", "input_digest", "verdicts",
                          "certificates", "trace_samples", "timing_seconds"});
    for (const char* k :
         {"command", "input_digest", "verdicts", "certificates",
          "trace_samples", "timing_seconds"}) {
      if (!j.contains(k)) {
        detail::parse_fail(std::string("report file"),
                           std::string("missing field '") + k + "'");
      }
    }
    ReportFile r;
    if (!j["command"].is_string() || !j["input_digest"].is_string()) {
      detail::parse_fail("report file", "command and input_digest must be strings");
    }
    r.command = j["command"].get<std::string>();
    r.input_digest = j["input_digest"].get<std::string>();
    r.verdicts = j["verdicts"];
    r.certificates = j["certificates"];
    r.trace_samples = j["trace_samples"];
    r.timing_seconds = detail::number_at(j["timing_seconds"], "timing_seconds");
    return r;
  }
};

// ============================================================================
// File helpers
// ============================================================================

[[nodiscard]] inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorTag::ParseError, "cannot open input file '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorTag::ParseError, "cannot open output file '" + path + "'");
  }
  out << text;
  if (!out) {
    throw Error(ErrorTag::ParseError, "write failed for '" + path + "'");
  }
}

}  // namespace su21
