#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qst/protocol.hpp"
#include "qst/randomizer.hpp"
#include "qst/state.hpp"

namespace qst::io {

/// Insertion-ordered JSON value with deterministic text output: objects keep
/// the order keys were added, doubles print with 17 significant digits.
/// Output bytes are stable across runs, platforms and thread counts.
class Json {
 public:
  static Json null();
  static Json boolean(bool v);
  static Json integer(std::int64_t v);
  static Json number(double v);
  static Json string(std::string v);
  static Json array();
  static Json object();

  Json& push(Json v);                     // arrays
  Json& set(std::string key, Json v);     // objects

  std::string dump(int indent = 2) const;

 private:
  enum class Kind { null, boolean, integer, number, string, array, object };
  Kind kind_ = Kind::null;
  bool bool_ = false;
  std::int64_t int_ = 0;
  double num_ = 0.0;
  std::string str_;
  std::vector<Json> items_;
  std::vector<std::pair<std::string, Json>> fields_;

  void write(std::string& out, int indent, int depth) const;
};

/// 17-significant-digit decimal text for a double; round-trips exactly.
std::string format_double(double v);

/// FNV-1a 64-bit over the raw bytes, as 16 lowercase hex digits.
std::string fnv1a64_hex(std::string_view bytes);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);
std::string file_hash(const std::string& path);

struct KeySetFile {
  KeySet set;
  std::optional<double> epsilon;
  bool certified = false;
  std::optional<double> beta_max;
};

Json key_set_to_json(const KeySetFile& file);
std::string key_set_to_text(const KeySetFile& file);

/// Loads either the JSON form or the plain-text form (one hex key per line,
/// '#' comments, a leading `n=<int>` directive). Throws std::runtime_error
/// with a parse message on malformed input.
KeySetFile load_key_set(const std::string& path);
KeySetFile parse_key_set(std::string_view contents);

Json pure_state_to_json(const PureState& state);
PureState parse_pure_state(std::string_view contents);
PureState load_pure_state(const std::string& path);

Json epsilon_report_to_json(const EpsilonReport& report);
Json protocol_security_to_json(const ProtocolSecurityReport& report);

/// The module-level security report: {"chi", "bound", "base", "d",
/// "epsilon", "pass"}.
Json chi_report_to_json(double chi, double bound, LogBase base, int d,
                        double epsilon, bool pass);

Json transcript_to_json(const Transcript& transcript,
                        const ProtocolConfig& config,
                        const ProtocolSecurityReport& security,
                        const std::string& state_source);

}  // namespace qst::io
